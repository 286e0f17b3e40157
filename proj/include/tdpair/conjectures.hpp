#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdpair/raiselower.hpp"

namespace tdpair {

// rho_i <= C(d, i) for all i.
bool check_rho_bound(const std::vector<std::size_t>& rho);

// Exponent sequences 0 <= i_1 < ... < i_n <= d with n even, ordered by n and
// then lexicographically; 2^d of them.
std::vector<std::vector<std::size_t>> spanning_word_exponents(std::size_t d);
// "v", "Rv", "R^2v", "LR^2v", "RL^2R^3v", ...
std::string render_spanning_word(const std::vector<std::size_t>& exponents);
// L^{i_1} R^{i_2} L^{i_3} ... R^{i_n} v
Vector apply_spanning_word(const RaiseLowerData& rl, const std::vector<std::size_t>& exponents, const Vector& v);
bool words_span(const RaiseLowerData& rl, const Vector& v);

struct SpanningReport {
    std::vector<std::string> words;
    // One entry per RREF basis vector of U_0.
    std::vector<bool> per_basis_vector;
    // Pseudo-random combinations of the U_0 basis (only when dim U_0 > 1).
    std::vector<bool> random_combinations;
    // Set only when every tested vector agrees.
    std::optional<bool> verdict;
    // Only finitely many vectors of U_0 are tested when dim U_0 > 1.
    bool quantifier_caveat = false;
};

SpanningReport check_spanning(const RaiseLowerData& rl, std::uint64_t seed = 0x5a17);

// Lexicographically greatest partition d_1 >= d_2 >= ... of d with
// prod (1 + t + ... + t^{d_k}) = sum rho_i t^i; nullopt if none.
std::optional<std::vector<std::size_t>> check_factorization(const std::vector<std::size_t>& rho);

struct ConjectureReport {
    bool rho_bound_holds = false;
    SpanningReport spanning;
    std::optional<std::vector<std::size_t>> factorization;
    // factorization => bound and spanning => bound.
    bool implications_consistent = false;

    bool all_hold() const {
        return rho_bound_holds && spanning.verdict == true && factorization.has_value() && implications_consistent;
    }
};

ConjectureReport check_conjectures(const RaiseLowerData& rl);

}  // namespace tdpair
