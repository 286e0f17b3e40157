#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdpair/conjectures.hpp"
#include "tdpair/relations.hpp"

namespace tdpair {

// One named structural check run on a TD system.
struct Check {
    std::string name;
    bool applicable = true;
    bool passed = true;
};

struct AnalysisOptions {
    // Compare every symbolic word expansion against the direct matrix
    // product (words of length <= rewrite_max_len, only when d <= rewrite_max_d).
    bool word_rewriting = true;
    std::size_t rewrite_max_d = 4;
    std::size_t rewrite_max_len = 4;
    // Also check the eight relatives.
    bool relatives = true;
};

struct OrderingAnalysis {
    OrderingAnalysis(std::size_t index, RaiseLowerData data) : ordering_index(index), rl(std::move(data)) {}

    std::size_t ordering_index = 0;
    RaiseLowerData rl;
    std::vector<Scalar> theta, theta_star;
    RecurrenceClass recurrence, recurrence_star;
    RelationReport relations;
    std::vector<RankProfileEntry> profile;
    ConjectureReport conjectures;
    // q with th_i = a + b q^i and th*_i = a* + c* q^-i, when d >= 2 and such a
    // form exists.
    std::optional<Scalar> qform_q;
    std::vector<Check> checks;

    bool all_checks_pass() const;
    std::vector<std::string> failed_checks() const;
};

// th_i = a + b q^i, th*_i = a* + c* q^-i with b, c* != 0 and q != 1. Needs d >= 2
// (q is otherwise not determined).
std::optional<Scalar> detect_qform(const std::vector<Scalar>& theta, const std::vector<Scalar>& theta_star);

// Full pipeline on one TD system: split decomposition, R/L maps, recurrence
// classification, relations, conjectures and the structural checks.
// Throws InternalError when the split or R/L construction itself fails.
OrderingAnalysis analyze_ordering(const TDSystem& phi, std::size_t index, const AnalysisOptions& opts = {});

// Symbolic expansion against the direct product for all words of length
// <= max_len and all 0 <= r, s <= d.
bool check_word_rewriting(const RaiseLowerData& rl, std::size_t max_len);
// "RLR + (θ_{i+1}θ*_{i+1} + θ_iθ*_i)·R" for A A* A between F_{i+1} and F_i,
// as text and as a matrix identity, for every 0 <= i < d.
bool check_rewrite_example(const RaiseLowerData& rl);
std::string expected_rewrite_example(std::size_t i);

// Relatives satisfy the TD system axioms, the involution identities hold and
// the eigenvalue sequences follow the reversal/swap table.
bool check_relatives(const TDSystem& phi);

}  // namespace tdpair
