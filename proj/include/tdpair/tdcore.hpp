#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdpair/spectra.hpp"

namespace tdpair {

// (A; E_0..E_d; A*; E*_0..E*_delta) with the idempotents in a fixed order.
struct TDSystem {
    Matrix a;
    Matrix a_star;
    std::vector<EigenData> eigens;
    std::vector<EigenData> dual_eigens;

    const Field& field() const noexcept { return a.field(); }
    std::size_t dim() const noexcept { return a.rows(); }
    std::size_t d() const noexcept { return eigens.size() - 1; }
    std::size_t delta() const noexcept { return dual_eigens.size() - 1; }
    std::vector<Scalar> theta() const;
    std::vector<Scalar> theta_star() const;
    const Matrix& e(std::size_t i) const { return eigens.at(i).idempotent; }
    const Matrix& e_star(std::size_t i) const { return dual_eigens.at(i).idempotent; }

    // Same operators and the same idempotents in the same order.
    bool operator==(const TDSystem& o) const;
};

// Block-tridiagonality both ways, nonvanishing adjacent blocks, distinct
// eigenvalues, d = delta.
bool satisfies_td_system_axioms(const TDSystem& phi);

// Each ordering is a permutation of indices into sd.eigens. Empty when the
// support graph of E_i A* E_j is not a Hamiltonian path.
std::vector<std::vector<std::size_t>> find_tridiagonal_orderings(const SpectralDecomposition& sd,
                                                                 const Matrix& a_star);

enum class IrreducibilityCertificate { None, BurnsideFullAlgebra, NortonTest, ExhaustiveInvariantSubspaceSearch };
const char* to_string(IrreducibilityCertificate c);

struct IrreducibilityOptions {
    unsigned word_degree_cap = 6;
    unsigned trials = 64;
    std::uint64_t seed = 0x7d1a2c3bULL;
    // Algebra closure is attempted up to this matrix size.
    std::size_t burnside_max_dim = 12;
    // Finite fields: enumerate every line of a space with at most this many.
    std::uint64_t exhaustive_max_lines = 1u << 16;
};

struct IrreducibilityResult {
    bool irreducible;
    IrreducibilityCertificate certificate;
    // A proper nonzero invariant subspace when reducible.
    std::optional<Subspace> witness;
};

// Throws Inconclusive when no method settles the question.
IrreducibilityResult is_irreducible(const Matrix& a, const Matrix& a_star, const IrreducibilityOptions& opts = {});

// Smallest subspace containing v and invariant under every generator.
Subspace invariant_closure(const Vector& v, const std::vector<const Matrix*>& generators);

enum class FailureReason {
    None,
    NotDiagonalizableA,
    NotDiagonalizableAStar,
    NotSplitA,
    NotSplitAStar,
    NoTridiagonalOrderingA,
    NoTridiagonalOrderingAStar,
    Reducible,
    Inconclusive,
};
const char* to_string(FailureReason r);

struct VerificationReport {
    bool is_td_pair = false;
    FailureReason failure_reason = FailureReason::None;
    std::string detail;
    // Index k: bit 0 reverses the E order, bit 1 reverses the E* order
    // (only the existing ones are listed; 1 system when d = 0).
    std::vector<TDSystem> orderings;
    IrreducibilityCertificate irreducibility_certificate = IrreducibilityCertificate::None;
};

VerificationReport verify_td_pair(const Matrix& a, const Matrix& a_star, const IrreducibilityOptions& opts = {});

enum class Relative { Id, Down, Dbl, DownDbl, Star, DownStar, DblStar, DownDblStar };
const char* to_string(Relative r);

TDSystem reverse_eigens(const TDSystem& phi);       // Phi^(double down arrow)
TDSystem reverse_dual_eigens(const TDSystem& phi);  // Phi^(down arrow)
TDSystem dual(const TDSystem& phi);                 // Phi^*
TDSystem relative(const TDSystem& phi, Relative r);
// Phi, Phi^down, Phi^dbl, Phi^downdbl, Phi^*, Phi^down*, Phi^dbl*, Phi^downdbl*.
std::array<TDSystem, 8> relatives(const TDSystem& phi);

// A -> alpha A + beta I, A* -> alpha* A* + beta* I, idempotents unchanged.
TDSystem affine_transform(const TDSystem& phi, const Scalar& alpha, const Scalar& beta, const Scalar& alpha_star,
                          const Scalar& beta_star);

// A* E_i V within E_{i-1}V + E_iV + E_{i+1}V, and the dual statement.
bool check_eigenspace_spread(const TDSystem& phi);

}  // namespace tdpair
