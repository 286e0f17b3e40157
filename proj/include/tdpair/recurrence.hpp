#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tdpair/tdcore.hpp"

namespace tdpair {

// How a recurrence parameter is pinned down by a sequence.
struct LevelValue {
    enum class Status { Unique, NonUnique, Inconsistent };
    Status status = Status::Inconsistent;
    // The unique value, or the canonical representative when NonUnique.
    std::optional<Scalar> value;

    bool holds() const noexcept { return status != Status::Inconsistent; }
};
const char* to_string(LevelValue::Status s);

struct RecurrenceClass {
    std::size_t d = 0;
    // th_{i-1} != th_i for 2 <= i <= d-1.
    bool distinct_where_required = true;
    // Indices 1 <= i <= d with th_{i-1} = th_i (informational).
    std::vector<std::size_t> repeated_consecutive;
    bool is_recurrent = false;
    // Common value of (th_{i-2} - th_{i+1}) / (th_{i-1} - th_i), d >= 3.
    std::optional<Scalar> ratio;
    LevelValue beta;
    LevelValue gamma;
    LevelValue varrho;
    // Whether some (beta, gamma, varrho) satisfies the three-term quadratic
    // equations directly, without going through beta- and gamma-recurrence.
    bool raw_three_term_solvable = false;
};

RecurrenceClass classify_sequence(const std::vector<Scalar>& theta);

// Index ranges over which each level is checked.
bool is_beta_recurrent(const std::vector<Scalar>& theta, const Scalar& beta);
bool is_beta_gamma_recurrent(const std::vector<Scalar>& theta, const Scalar& beta, const Scalar& gamma);
bool is_beta_gamma_varrho_recurrent(const std::vector<Scalar>& theta, const Scalar& beta, const Scalar& gamma,
                                    const Scalar& varrho);

enum class ClosedFormCase { QGeneric, Beta2, BetaMinus2, Char2Beta0 };
const char* to_string(ClosedFormCase c);

struct ClosedFormFit {
    ClosedFormCase kase;
    std::optional<Scalar> q;         // QGeneric only
    std::array<Scalar, 3> alpha;     // in the same field as q (or the input field)
    bool extension_used = false;

    // Reconstructed th_i, in the fit's field.
    Scalar evaluate(std::size_t i) const;
    const Field& field() const { return alpha[0].field(); }
};

// Throws InvalidArgument if theta is not beta-recurrent or the fitted form
// does not reproduce every term; Unsupported for characteristic 2 with
// beta != 0.
ClosedFormFit fit_closed_form(const std::vector<Scalar>& theta, const Scalar& beta);

// Case-specific constraints on the ground field for a sequence of diameter d.
bool field_constraints_check(const ClosedFormFit& fit, std::size_t d, std::uint64_t characteristic);

struct ParameterSet {
    Scalar beta, gamma, gamma_star, varrho, varrho_star;
    bool unique = false;
};

// For d >= 3 the values are forced and unique. For d <= 2 the canonical
// representative is beta = 2, gamma = gamma* = 0 when both sequences admit
// it (always for d <= 1, arithmetic sequences for d = 2), otherwise beta = 0
// with gamma, gamma* forced; varrho, varrho* then follow (0 when d = 0).
ParameterSet derive_parameters(const std::vector<Scalar>& theta, const std::vector<Scalar>& theta_star);
ParameterSet derive_parameters(const TDSystem& phi);

// Quadratic extension in which x^2 - beta x + 1 splits, or the base field
// itself when it already splits there.
const Field& splitting_field_for(const Scalar& beta);

}  // namespace tdpair
