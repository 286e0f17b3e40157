#pragma once

#include <vector>

#include "tdpair/tdcore.hpp"

namespace tdpair {

struct SplitData {
    TDSystem phi;
    std::vector<Subspace> u;  // U_0..U_d
    std::vector<Matrix> f;    // F_0..F_d
    std::vector<std::size_t> rho;
};

// U_i = (E*_0V + ... + E*_iV) ∩ (E_iV + ... + E_dV). Throws InternalError if
// the result is not a direct sum with the raising/lowering actions.
std::vector<Subspace> split_subspaces(const TDSystem& phi);

// The three structural facts about a candidate split decomposition, exposed
// separately so that perturbed inputs can be tested.
bool is_direct_sum(const std::vector<Subspace>& u);
// (A - th_i I) U_i ⊆ U_{i+1}, (A - th_d I) U_d = 0, and dually downward.
bool check_split_action(const TDSystem& phi, const std::vector<Subspace>& u);
// U_0 + ... + U_i = E*_0V + ... + E*_iV and U_i + ... + U_d = E_iV + ... + E_dV.
bool check_split_telescoping(const TDSystem& phi, const std::vector<Subspace>& u);

// F_i is the identity on U_i and zero on U_j for j != i.
std::vector<Matrix> split_projections(const TDSystem& phi, const std::vector<Subspace>& u);

SplitData build_split(const TDSystem& phi);

// rho_i = dim U_i; throws InternalError unless it also equals dim E_iV and
// dim E*_iV, is symmetric, unimodal and positive.
std::vector<std::size_t> shape(const SplitData& sp);

bool is_symmetric_unimodal(const std::vector<std::size_t>& rho);

// F_iF_j = delta_ij F_i, sum F_i = I.
bool check_projection_identities(const SplitData& sp);
// E_iF_j, F_iE_j, E*_jF_i, F_jE*_i vanish for i < j.
bool check_triangularity(const SplitData& sp);
// F_iE_iF_i = F_i, E_iF_iE_i = E_i, and the same with E*_i.
bool check_sandwich_identities(const SplitData& sp);
// v -> E_iv on U_i and v -> F_iv on E_iV are mutually inverse.
bool check_eigen_split_bijections(const SplitData& sp);

// V_ij for -1 <= i, j <= d+1 with the out-of-range conventions:
// sum_{h<=i} E*_hV is 0 for i < 0 and V for i > d; sum_{k>=j} E_kV is V for
// j < 0 and 0 for j > d.
class VijLattice {
public:
    explicit VijLattice(const TDSystem& phi);
    const Subspace& at(long i, long j) const;
    std::size_t d() const noexcept { return d_; }
    // (A - th_j I) V_ij ⊆ V_{i+1,j+1} and (A* - th*_i I) V_ij ⊆ V_{i-1,j-1}
    // for 0 <= i, j <= d.
    bool check_inclusions(const TDSystem& phi) const;
    bool vanishes_below_diagonal() const;  // V_ij = 0 for i < j

private:
    std::size_t d_;
    std::vector<Subspace> cells_;
};

}  // namespace tdpair
