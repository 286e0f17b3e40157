#pragma once

#include <optional>
#include <utility>

#include "tdpair/recurrence.hpp"

namespace tdpair {

// [A, A^2A* - beta AA*A + A*A^2 - gamma(AA* + A*A) - varrho A*]
Matrix relation_commutator(const Matrix& a, const Matrix& a_star, const Scalar& beta, const Scalar& gamma,
                           const Scalar& varrho);

// (relation for A holds, relation for A* holds); the A* relation swaps the
// roles of A and A* and uses gamma*, varrho*.
std::pair<bool, bool> check_tridiagonal_relations(const Matrix& a, const Matrix& a_star, const ParameterSet& p);

enum class Specialization { DolanGrady, QuantumSerre, General };
const char* to_string(Specialization s);

struct RelationReport {
    ParameterSet params;
    bool relation_a_holds = false;
    bool relation_a_star_holds = false;
    Specialization specialization = Specialization::General;
    // DolanGrady: square roots of varrho, varrho* when they exist in the field.
    std::optional<Scalar> b, b_star;
    // QuantumSerre: q with q + 1/q = beta (possibly in a quadratic extension).
    std::optional<Scalar> q;
};

// DolanGrady: beta = 2, gamma = gamma* = 0, varrho and varrho* nonzero.
// QuantumSerre: gamma = gamma* = varrho = varrho* = 0 and beta != +-2, with q
// taken from the closed-form fit of theta. Anything else is General.
RelationReport classify_relations(const TDSystem& phi, const ParameterSet& p);

// Parameters via derive_parameters, both relations evaluated; throws
// InternalError if either fails on a verified TD system.
RelationReport solve_parameters_and_verify(const TDSystem& phi);

struct RelationSolution {
    // Some solution of both relations, if any.
    std::optional<ParameterSet> particular;
    // Dimension of the affine solution space in (beta, gamma, gamma*, varrho, varrho*).
    std::size_t solution_dim = 0;
};

// Both relations are linear in the five parameters; solves that system.
RelationSolution solve_relation_parameters(const Matrix& a, const Matrix& a_star);

struct GeneralizedResult {
    bool is_generalized = false;
    bool relations_solvable = false;
    bool irreducible = false;
    IrreducibilityCertificate certificate = IrreducibilityCertificate::None;
    // Dimension of the affine solution space in (beta, gamma, gamma*, varrho, varrho*).
    std::size_t solution_dim = 0;
    std::optional<ParameterSet> witness;
};

// Solves the linear system in the five parameters that the two relation
// matrices impose. Throws Inconclusive when irreducibility is undecided.
GeneralizedResult is_generalized_td_pair(const Matrix& a, const Matrix& a_star, const IrreducibilityOptions& opts = {});

// span{E_iA*E_j - E_jA*E_i} = span{L_iA* - A*L_i}, L_i = E_0 + ... + E_i.
bool check_commutator_span_identity(const TDSystem& phi);

}  // namespace tdpair
