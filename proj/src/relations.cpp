#include "tdpair/relations.hpp"

#include "tdpair/errors.hpp"

namespace tdpair {

Matrix relation_commutator(const Matrix& a, const Matrix& as, const Scalar& beta, const Scalar& gamma,
                           const Scalar& varrho) {
    Matrix aa = a * a;
    Matrix inner = aa * as - a * as * a * beta + as * aa - (a * as + as * a) * gamma - as * varrho;
    return commutator(a, inner);
}

std::pair<bool, bool> check_tridiagonal_relations(const Matrix& a, const Matrix& a_star, const ParameterSet& p) {
    return {relation_commutator(a, a_star, p.beta, p.gamma, p.varrho).is_zero(),
            relation_commutator(a_star, a, p.beta, p.gamma_star, p.varrho_star).is_zero()};
}

const char* to_string(Specialization s) {
    switch (s) {
        case Specialization::DolanGrady: return "DolanGrady";
        case Specialization::QuantumSerre: return "QuantumSerre";
        case Specialization::General: return "General";
    }
    return "?";
}

RelationReport classify_relations(const TDSystem& phi, const ParameterSet& p) {
    RelationReport rep;
    rep.params = p;
    auto [ra, rs] = check_tridiagonal_relations(phi.a, phi.a_star, p);
    rep.relation_a_holds = ra;
    rep.relation_a_star_holds = rs;
    const Field& f = phi.field();
    Scalar two = f.from_int(2);
    bool gammas_zero = p.gamma.is_zero() && p.gamma_star.is_zero();
    if (p.beta == two && gammas_zero && !p.varrho.is_zero() && !p.varrho_star.is_zero()) {
        rep.specialization = Specialization::DolanGrady;
        rep.b = p.varrho.sqrt();
        rep.b_star = p.varrho_star.sqrt();
        return rep;
    }
    if (gammas_zero && p.varrho.is_zero() && p.varrho_star.is_zero() && !(p.beta == two) && !(p.beta == -two)) {
        try {
            ClosedFormFit fit = fit_closed_form(phi.theta(), p.beta);
            if (fit.q) {
                rep.specialization = Specialization::QuantumSerre;
                rep.q = fit.q;
            }
        } catch (const Unsupported&) {
        }
    }
    return rep;
}

RelationReport solve_parameters_and_verify(const TDSystem& phi) {
    RelationReport rep = classify_relations(phi, derive_parameters(phi));
    if (!rep.relation_a_holds || !rep.relation_a_star_holds)
        throw InternalError("tridiagonal relations fail for the derived parameters");
    return rep;
}

RelationSolution solve_relation_parameters(const Matrix& a, const Matrix& as) {
    if (!a.is_square() || !as.is_square() || a.rows() != as.rows() || a.field() != as.field())
        throw InvalidArgument("relation parameters: need square matrices of one size over one field");
    const Field& f = a.field();
    std::size_t n = a.rows();
    Scalar zero = f.zero(), one = f.one();
    // Each relation matrix is C0 + beta*Cb + gamma*Cg + varrho*Cr.
    Matrix c0 = relation_commutator(a, as, zero, zero, zero);
    Matrix cb = relation_commutator(a, as, one, zero, zero) - c0;
    Matrix cg = relation_commutator(a, as, zero, one, zero) - c0;
    Matrix cr = relation_commutator(a, as, zero, zero, one) - c0;
    Matrix d0 = relation_commutator(as, a, zero, zero, zero);
    Matrix db = relation_commutator(as, a, one, zero, zero) - d0;
    Matrix dg = relation_commutator(as, a, zero, one, zero) - d0;
    Matrix dr = relation_commutator(as, a, zero, zero, one) - d0;
    // Unknowns: beta, gamma, gamma*, varrho, varrho*.
    std::size_t m = n * n;
    Matrix sys(f, 2 * m, 5);
    Vector rhs(2 * m, zero);
    for (std::size_t k = 0; k < m; ++k) {
        sys(k, 0) = cb.entries()[k];
        sys(k, 1) = cg.entries()[k];
        sys(k, 3) = cr.entries()[k];
        rhs[k] = -c0.entries()[k];
        sys(m + k, 0) = db.entries()[k];
        sys(m + k, 2) = dg.entries()[k];
        sys(m + k, 4) = dr.entries()[k];
        rhs[m + k] = -d0.entries()[k];
    }
    RelationSolution out;
    auto sol = solve(sys, rhs);
    if (!sol) return out;
    out.solution_dim = 5 - rank(sys);
    out.particular = ParameterSet{(*sol)[0], (*sol)[1], (*sol)[2], (*sol)[3], (*sol)[4], out.solution_dim == 0};
    return out;
}

GeneralizedResult is_generalized_td_pair(const Matrix& a, const Matrix& as, const IrreducibilityOptions& opts) {
    RelationSolution sol = solve_relation_parameters(a, as);
    GeneralizedResult res;
    res.relations_solvable = sol.particular.has_value();
    auto irr = is_irreducible(a, as, opts);
    res.irreducible = irr.irreducible;
    res.certificate = irr.certificate;
    if (!sol.particular) return res;
    res.solution_dim = sol.solution_dim;
    ParameterSet witness = *sol.particular;
    if (res.solution_dim > 0) {
        // Prefer the canonical representative when the pair is a TD pair.
        try {
            auto rep = verify_td_pair(a, as, opts);
            if (rep.is_td_pair) {
                ParameterSet canon = derive_parameters(rep.orderings.front());
                auto [x, y] = check_tridiagonal_relations(a, as, canon);
                if (x && y) witness = canon;
            }
        } catch (const Error&) {
        }
    }
    res.witness = witness;
    res.is_generalized = res.relations_solvable && res.irreducible;
    return res;
}

bool check_commutator_span_identity(const TDSystem& phi) {
    const Field& f = phi.field();
    std::size_t n = phi.dim();
    std::size_t d = phi.d();
    std::vector<Vector> lhs, rhs;
    Matrix li(f, n, n);
    for (std::size_t i = 0; i <= d; ++i) {
        for (std::size_t j = 0; j <= d; ++j) {
            Matrix x = phi.e(i) * phi.a_star * phi.e(j) - phi.e(j) * phi.a_star * phi.e(i);
            lhs.push_back(x.entries());
        }
        li += phi.e(i);
        rhs.push_back(commutator(li, phi.a_star).entries());
    }
    return Subspace::span(f, n * n, lhs) == Subspace::span(f, n * n, rhs);
}

}  // namespace tdpair
