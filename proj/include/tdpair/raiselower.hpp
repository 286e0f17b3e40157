#pragma once

#include <map>
#include <string>
#include <vector>

#include "tdpair/split.hpp"

namespace tdpair {

struct RaiseLowerData {
    SplitData sp;
    Matrix r;                    // A - sum th_h F_h
    Matrix l;                    // A* - sum th*_h F_h
    std::vector<Scalar> epsilon;  // eps_0..eps_{d-2}
};

// eps_i = (th_i - th_{i+2})(th*_{i+1} - th*_{i+2}) - (th*_{i+2} - th*_i)(th_{i+1} - th_i)
std::vector<Scalar> epsilon_sequence(const std::vector<Scalar>& theta, const std::vector<Scalar>& theta_star);

// Throws InternalError if any structural identity of R and L fails.
RaiseLowerData build_rl(const SplitData& sp);

// R U_i ⊆ U_{i+1}, R U_d = 0, L U_i ⊆ U_{i-1}, L U_0 = 0, R F_i = F_{i+1} R,
// L F_i = F_{i-1} L, R^{d+1} = L^{d+1} = 0, R^{j-i}F_i != 0, L^{j-i}F_j != 0.
bool check_rl_structure(const RaiseLowerData& rl);

struct RankProfileEntry {
    std::size_t i, j;  // i <= j
    std::size_t rank_r, rank_l;
    bool r_injective, r_surjective;  // R^{j-i}: U_i -> U_j
    bool l_injective, l_surjective;  // L^{j-i}: U_j -> U_i
};

std::vector<RankProfileEntry> rank_profile(const RaiseLowerData& rl);
// R^{j-i} is injective if i+j <= d and surjective if i+j >= d; L^{j-i} is
// injective if i+j >= d and surjective if i+j <= d.
bool rank_profile_matches(const std::vector<RankProfileEntry>& profile, std::size_t d);

// ---- word rewriting

enum class Letter { A, AStar };

// A theta or theta* symbol with a concrete index.
struct ThetaSymbol {
    bool star;
    std::size_t index;
    auto operator<=>(const ThetaSymbol&) const = default;
};

// Product of symbols, kept sorted.
using SymMonomial = std::vector<ThetaSymbol>;
// Integer combination of monomials.
using SymCoefficient = std::map<SymMonomial, long long>;

// sum_w c_w W F_s with W a word over {R, L} (written as a string of 'R'/'L').
struct RLExpression {
    std::size_t s_index;
    std::map<std::string, SymCoefficient> terms;

    bool is_zero() const { return terms.empty(); }
    // Terms ordered by decreasing word length, then lexicographically.
    std::vector<std::string> ordered_words() const;
    // E.g. "RLR + (θ_2θ*_2 + θ_1θ*_1)·R", applied to F_s; "0" when empty.
    std::string render() const;
    // Numeric coefficients once theta and theta* are known; zeros dropped.
    std::map<std::string, Scalar> instantiate(const std::vector<Scalar>& theta,
                                              const std::vector<Scalar>& theta_star) const;
    // Sum of c_w W F_s with concrete R, L, F_s.
    Matrix evaluate(const RaiseLowerData& rl) const;
};

// Expands F_r B_1 ... B_n F_s over lattice paths r = i_0, ..., i_n = s in
// [0, d]: an A step moves by 0 or -1 and an A* step by 0 or +1; a step of
// -1 contributes R, +1 contributes L, and a stay contributes th_{i_j} or
// th*_{i_j}.
RLExpression rewrite_word(const std::vector<Letter>& word, std::size_t r, std::size_t s, std::size_t d);

// Parses "A,A*,A" (whitespace tolerant).
std::vector<Letter> parse_word(const std::string& text);

// Direct matrix product F_r B_1 ... B_n F_s.
Matrix word_product(const RaiseLowerData& rl, const std::vector<Letter>& word, std::size_t r, std::size_t s);

// ---- R/L relations

// With explicit eps values (for negative controls).
bool check_cubic_vanishing(const RaiseLowerData& rl, const Scalar& beta, const std::vector<Scalar>& epsilon);
bool check_cubic_vanishing(const RaiseLowerData& rl, const Scalar& beta);

// [R, R^2L - (q+q^-1)RLR + LR^2] = 0 and [L, L^2R - (q+q^-1)LRL + RL^2] = 0.
bool check_quantum_serre_rl(const RaiseLowerData& rl, const Scalar& q);

}  // namespace tdpair
