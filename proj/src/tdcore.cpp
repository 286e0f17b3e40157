#include "tdpair/tdcore.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "tdpair/errors.hpp"

namespace tdpair {

std::vector<Scalar> TDSystem::theta() const {
    std::vector<Scalar> out;
    for (const auto& e : eigens) out.push_back(e.eigenvalue);
    return out;
}

std::vector<Scalar> TDSystem::theta_star() const {
    std::vector<Scalar> out;
    for (const auto& e : dual_eigens) out.push_back(e.eigenvalue);
    return out;
}

namespace {

bool same_eigens(const std::vector<EigenData>& x, const std::vector<EigenData>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(x[i].eigenvalue == y[i].eigenvalue) || !(x[i].idempotent == y[i].idempotent)) return false;
    return true;
}

// M_ij = E_i X E_j for all i, j.
std::vector<std::vector<Matrix>> sandwiches(const std::vector<EigenData>& eigens, const Matrix& x) {
    std::vector<Matrix> xe;
    for (const auto& e : eigens) xe.push_back(x * e.idempotent);
    std::vector<std::vector<Matrix>> out(eigens.size());
    for (std::size_t i = 0; i < eigens.size(); ++i)
        for (std::size_t j = 0; j < eigens.size(); ++j) out[i].push_back(eigens[i].idempotent * xe[j]);
    return out;
}

bool tridiagonal_blocks(const std::vector<EigenData>& eigens, const Matrix& x) {
    auto s = sandwiches(eigens, x);
    for (std::size_t i = 0; i < eigens.size(); ++i)
        for (std::size_t j = 0; j < eigens.size(); ++j) {
            std::size_t gap = i > j ? i - j : j - i;
            if (gap > 1 && !s[i][j].is_zero()) return false;
            if (gap == 1 && s[i][j].is_zero()) return false;
        }
    return true;
}

bool distinct_eigenvalues(const std::vector<EigenData>& eigens) {
    for (std::size_t i = 0; i < eigens.size(); ++i)
        for (std::size_t j = i + 1; j < eigens.size(); ++j)
            if (eigens[i].eigenvalue == eigens[j].eigenvalue) return false;
    return true;
}

}  // namespace

bool TDSystem::operator==(const TDSystem& o) const {
    return a == o.a && a_star == o.a_star && same_eigens(eigens, o.eigens) && same_eigens(dual_eigens, o.dual_eigens);
}

bool satisfies_td_system_axioms(const TDSystem& phi) {
    return phi.d() == phi.delta() && distinct_eigenvalues(phi.eigens) && distinct_eigenvalues(phi.dual_eigens) &&
           tridiagonal_blocks(phi.eigens, phi.a_star) && tridiagonal_blocks(phi.dual_eigens, phi.a);
}

std::vector<std::vector<std::size_t>> find_tridiagonal_orderings(const SpectralDecomposition& sd,
                                                                 const Matrix& a_star) {
    std::size_t k = sd.eigens.size();
    if (k == 1) return {{0}};
    auto s = sandwiches(sd.eigens, a_star);
    std::vector<std::vector<std::size_t>> adj(k);
    std::size_t edges = 0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (!s[i][j].is_zero() || !s[j][i].is_zero()) {
                adj[i].push_back(j);
                adj[j].push_back(i);
                ++edges;
            }
    if (edges != k - 1) return {};
    std::vector<std::size_t> ends;
    for (std::size_t i = 0; i < k; ++i) {
        if (adj[i].empty() || adj[i].size() > 2) return {};
        if (adj[i].size() == 1) ends.push_back(i);
    }
    if (ends.size() != 2) return {};
    std::vector<std::size_t> path{ends.front()};
    std::size_t prev = k, cur = ends.front();
    while (path.size() < k) {
        std::size_t next = adj[cur][0] == prev ? (adj[cur].size() > 1 ? adj[cur][1] : k) : adj[cur][0];
        if (next == k) return {};  // disconnected (a path plus a cycle)
        path.push_back(next);
        prev = cur;
        cur = next;
    }
    std::vector<std::size_t> rev(path.rbegin(), path.rend());
    return {path, rev};
}

namespace {

// A disconnected support graph means the eigenspaces in one component sum to
// a proper subspace invariant under both operators.
bool support_graph_connected(const SpectralDecomposition& sd, const Matrix& other) {
    std::size_t k = sd.eigens.size();
    auto s = sandwiches(sd.eigens, other);
    std::vector<bool> seen(k, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        std::size_t i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < k; ++j)
            if (!seen[j] && (!s[i][j].is_zero() || !s[j][i].is_zero())) {
                seen[j] = true;
                ++count;
                stack.push_back(j);
            }
    }
    return count == k;
}

}  // namespace

const char* to_string(IrreducibilityCertificate c) {
    switch (c) {
        case IrreducibilityCertificate::None: return "None";
        case IrreducibilityCertificate::BurnsideFullAlgebra: return "BurnsideFullAlgebra";
        case IrreducibilityCertificate::NortonTest: return "NortonTest";
        case IrreducibilityCertificate::ExhaustiveInvariantSubspaceSearch: return "ExhaustiveInvariantSubspaceSearch";
    }
    return "?";
}

Subspace invariant_closure(const Vector& v, const std::vector<const Matrix*>& generators) {
    const Field& f = generators.front()->field();
    std::size_t n = v.size();
    EchelonBasis basis(f, n);
    if (!basis.insert(v)) return Subspace::zero(f, n);
    std::deque<Vector> queue{v};
    while (!queue.empty() && basis.size() < n) {
        Vector w = std::move(queue.front());
        queue.pop_front();
        for (const Matrix* g : generators) {
            Vector gw = g->apply(w);
            if (basis.insert(gw)) queue.push_back(std::move(gw));
        }
    }
    if (basis.size() == n) return Subspace::full(f, n);
    return Subspace::span(f, n, basis.originals());
}

namespace {

std::size_t algebra_dimension(const Matrix& a, const Matrix& b) {
    const Field& f = a.field();
    std::size_t n = a.rows();
    EchelonBasis basis(f, n * n);
    Matrix id = Matrix::identity(f, n);
    basis.insert(id.entries());
    std::deque<Matrix> queue{id};
    while (!queue.empty() && basis.size() < n * n) {
        Matrix m = std::move(queue.front());
        queue.pop_front();
        for (const Matrix* g : {&a, &b}) {
            Matrix gm = *g * m;
            if (basis.insert(gm.entries())) queue.push_back(std::move(gm));
        }
    }
    return basis.size();
}

// Lines of F^k as normalized representatives (first nonzero entry 1), only
// for finite prime fields; nullopt if there are more than `limit`.
std::optional<std::vector<Vector>> enumerate_lines(const Field& f, const std::vector<Vector>& basis,
                                                   std::uint64_t limit) {
    if (f.kind() != FieldKind::Prime) return std::nullopt;
    std::uint64_t q = f.characteristic();
    std::size_t k = basis.size();
    mpz_class count = 0, qk = 1;
    for (std::size_t i = 0; i < k; ++i) qk *= q;
    count = (qk - 1) / (q - 1);
    if (count > limit) return std::nullopt;
    std::vector<Vector> out;
    std::size_t n = basis.empty() ? 0 : basis.front().size();
    // Coefficient vectors with leading 1 at position lead.
    for (std::size_t lead = 0; lead < k; ++lead) {
        std::vector<std::uint64_t> coef(k - lead - 1, 0);
        for (;;) {
            Vector v = basis[lead];
            for (std::size_t t = 0; t < coef.size(); ++t)
                if (coef[t]) v = v + scale(basis[lead + 1 + t], f.from_int(static_cast<long long>(coef[t])));
            out.push_back(std::move(v));
            std::size_t t = 0;
            while (t < coef.size() && ++coef[t] == q) coef[t++] = 0;
            if (t == coef.size()) break;
        }
    }
    (void)n;
    return out;
}

Subspace annihilator(const Subspace& s) {
    // {u : w . u = 0 for all w in s}
    if (s.is_zero()) return Subspace::full(s.field(), s.ambient_dim());
    return Subspace::kernel_of(s.basis());
}

Matrix random_algebra_element(const Matrix& a, const Matrix& b, unsigned cap, std::mt19937_64& rng) {
    const Field& f = a.field();
    std::size_t n = a.rows();
    Matrix out(f, n, n);
    std::uniform_int_distribution<int> coef(1, 9);
    std::uniform_int_distribution<unsigned> len(1, std::max(1u, cap));
    for (int term = 0; term < 3; ++term) {
        Matrix w = Matrix::identity(f, n);
        unsigned l = len(rng);
        for (unsigned i = 0; i < l; ++i) w = (rng() & 1 ? a : b) * w;
        out += w * f.from_int(coef(rng));
    }
    return out;
}

}  // namespace

IrreducibilityResult is_irreducible(const Matrix& a, const Matrix& a_star, const IrreducibilityOptions& opts) {
    if (!a.is_square() || !a_star.is_square() || a.rows() != a_star.rows())
        throw InvalidArgument("is_irreducible: matrices must be square of the same size");
    if (a.field() != a_star.field()) throw InvalidArgument("is_irreducible: field mismatch");
    std::size_t n = a.rows();
    if (n == 0) throw InvalidArgument("is_irreducible: 0x0 matrices");
    const Field& f = a.field();
    if (n == 1) return {true, IrreducibilityCertificate::BurnsideFullAlgebra, std::nullopt};

    if (n <= opts.burnside_max_dim && algebra_dimension(a, a_star) == n * n)
        return {true, IrreducibilityCertificate::BurnsideFullAlgebra, std::nullopt};

    std::vector<const Matrix*> gens{&a, &a_star};
    Matrix at = a.transpose(), ast = a_star.transpose();
    std::vector<const Matrix*> tgens{&at, &ast};

    // Norton: for x in the algebra with nonzero kernel, every nonzero v in
    // ker x generating V plus one w in ker x^T generating V* proves
    // irreducibility; any proper closure found along the way disproves it.
    std::vector<Matrix> seeds;
    auto add_eigen_seeds = [&](const Matrix& x) {
        try {
            for (const auto& [theta, m] : roots_in_field(char_poly(x)).roots) seeds.push_back(x.plus_identity(-theta));
        } catch (const Unsupported&) {
        }
    };
    add_eigen_seeds(a);
    add_eigen_seeds(a_star);
    std::mt19937_64 rng(opts.seed);
    for (unsigned t = 0; t < opts.trials; ++t) seeds.push_back(random_algebra_element(a, a_star, opts.word_degree_cap, rng));

    for (std::size_t si = 0; si < seeds.size(); ++si) {
        Matrix x = seeds[si];
        if (si >= seeds.size() - opts.trials) {
            // Random element: shift by an in-field eigenvalue to get a kernel.
            std::optional<Scalar> root;
            try {
                auto rr = roots_in_field(char_poly(x));
                if (!rr.roots.empty()) root = rr.roots.front().first;
            } catch (const Unsupported&) {
            }
            if (!root) continue;
            x = x.plus_identity(-*root);
        }
        auto ker = kernel(x);
        if (ker.empty()) continue;
        bool all_generate = true;
        for (const auto& v : ker) {
            Subspace c = invariant_closure(v, gens);
            if (!c.is_full()) return {false, IrreducibilityCertificate::NortonTest, c};
        }
        if (ker.size() > 1) {
            auto lines = enumerate_lines(f, ker, opts.exhaustive_max_lines);
            if (!lines) {
                all_generate = false;
            } else {
                for (const auto& v : *lines) {
                    Subspace c = invariant_closure(v, gens);
                    if (!c.is_full()) return {false, IrreducibilityCertificate::NortonTest, c};
                }
            }
        }
        bool dual_generates = false;
        for (const auto& w : kernel(x.transpose())) {
            Subspace c = invariant_closure(w, tgens);
            if (!c.is_full()) return {false, IrreducibilityCertificate::NortonTest, annihilator(c)};
            dual_generates = true;
        }
        if (all_generate && dual_generates) return {true, IrreducibilityCertificate::NortonTest, std::nullopt};
    }

    if (auto lines = enumerate_lines(f, Subspace::full(f, n).vectors(), opts.exhaustive_max_lines)) {
        for (const auto& v : *lines) {
            Subspace c = invariant_closure(v, gens);
            if (!c.is_full()) return {false, IrreducibilityCertificate::ExhaustiveInvariantSubspaceSearch, c};
        }
        return {true, IrreducibilityCertificate::ExhaustiveInvariantSubspaceSearch, std::nullopt};
    }
    throw Inconclusive("irreducibility over " + f.describe() + " not settled by algebra closure or Norton test");
}

const char* to_string(FailureReason r) {
    switch (r) {
        case FailureReason::None: return "None";
        case FailureReason::NotDiagonalizableA: return "NotDiagonalizable(A)";
        case FailureReason::NotDiagonalizableAStar: return "NotDiagonalizable(A*)";
        case FailureReason::NotSplitA: return "NotSplit(A)";
        case FailureReason::NotSplitAStar: return "NotSplit(A*)";
        case FailureReason::NoTridiagonalOrderingA: return "NoTridiagonalOrdering(A)";
        case FailureReason::NoTridiagonalOrderingAStar: return "NoTridiagonalOrdering(A*)";
        case FailureReason::Reducible: return "Reducible";
        case FailureReason::Inconclusive: return "Inconclusive";
    }
    return "?";
}

VerificationReport verify_td_pair(const Matrix& a, const Matrix& a_star, const IrreducibilityOptions& opts) {
    if (!a.is_square() || !a_star.is_square() || a.rows() != a_star.rows())
        throw InvalidArgument("A and A* must be square matrices of the same size");
    if (a.rows() == 0) throw InvalidArgument("A and A* must have positive dimension");
    if (a.field() != a_star.field()) throw InvalidArgument("A and A* are over different fields");

    VerificationReport rep;
    auto fail = [&](FailureReason r, std::string detail) {
        rep.failure_reason = r;
        rep.detail = std::move(detail);
        return rep;
    };

    std::optional<SpectralDecomposition> sa, ss;
    try {
        sa = diagonalize(a);
    } catch (const NotSplit& e) {
        return fail(FailureReason::NotSplitA, e.what());
    } catch (const NotDiagonalizable& e) {
        return fail(FailureReason::NotDiagonalizableA, e.what());
    }
    try {
        ss = diagonalize(a_star);
    } catch (const NotSplit& e) {
        return fail(FailureReason::NotSplitAStar, e.what());
    } catch (const NotDiagonalizable& e) {
        return fail(FailureReason::NotDiagonalizableAStar, e.what());
    }

    if (!support_graph_connected(*sa, a_star))
        return fail(FailureReason::Reducible, "support graph of E_i A* E_j is disconnected");
    if (!support_graph_connected(*ss, a))
        return fail(FailureReason::Reducible, "support graph of E*_i A E*_j is disconnected");
    auto oa = find_tridiagonal_orderings(*sa, a_star);
    if (oa.empty()) return fail(FailureReason::NoTridiagonalOrderingA, "support graph of E_i A* E_j is not a path");
    auto os = find_tridiagonal_orderings(*ss, a);
    if (os.empty()) return fail(FailureReason::NoTridiagonalOrderingAStar, "support graph of E*_i A E*_j is not a path");

    try {
        auto irr = is_irreducible(a, a_star, opts);
        rep.irreducibility_certificate = irr.certificate;
        if (!irr.irreducible)
            return fail(FailureReason::Reducible,
                        "invariant subspace of dimension " + std::to_string(irr.witness ? irr.witness->dim() : 0));
    } catch (const Inconclusive& e) {
        return fail(FailureReason::Inconclusive, e.what());
    }

    if (sa->eigens.size() != ss->eigens.size())
        throw InternalError("verified pair has d != delta (" + std::to_string(sa->eigens.size() - 1) + " vs " +
                            std::to_string(ss->eigens.size() - 1) + ")");

    auto pick = [](const SpectralDecomposition& sd, const std::vector<std::size_t>& order) {
        std::vector<EigenData> out;
        for (auto i : order) out.push_back(sd.eigens[i]);
        return out;
    };
    for (std::size_t k = 0; k < 4; ++k) {
        std::size_t ia = k & 1, is = (k >> 1) & 1;
        if (ia >= oa.size() || is >= os.size()) continue;
        TDSystem phi{a, a_star, pick(*sa, oa[ia]), pick(*ss, os[is])};
        if (!satisfies_td_system_axioms(phi)) throw InternalError("accepted ordering violates the TD system axioms");
        rep.orderings.push_back(std::move(phi));
    }
    rep.is_td_pair = true;
    return rep;
}

const char* to_string(Relative r) {
    switch (r) {
        case Relative::Id: return "Phi";
        case Relative::Down: return "Phi^down";
        case Relative::Dbl: return "Phi^Down";
        case Relative::DownDbl: return "Phi^downDown";
        case Relative::Star: return "Phi^*";
        case Relative::DownStar: return "Phi^down*";
        case Relative::DblStar: return "Phi^Down*";
        case Relative::DownDblStar: return "Phi^downDown*";
    }
    return "?";
}

TDSystem reverse_eigens(const TDSystem& phi) {
    TDSystem out = phi;
    std::reverse(out.eigens.begin(), out.eigens.end());
    return out;
}

TDSystem reverse_dual_eigens(const TDSystem& phi) {
    TDSystem out = phi;
    std::reverse(out.dual_eigens.begin(), out.dual_eigens.end());
    return out;
}

TDSystem dual(const TDSystem& phi) { return {phi.a_star, phi.a, phi.dual_eigens, phi.eigens}; }

TDSystem relative(const TDSystem& phi, Relative r) {
    switch (r) {
        case Relative::Id: return phi;
        case Relative::Down: return reverse_dual_eigens(phi);
        case Relative::Dbl: return reverse_eigens(phi);
        case Relative::DownDbl: return reverse_eigens(reverse_dual_eigens(phi));
        case Relative::Star: return dual(phi);
        case Relative::DownStar: return dual(reverse_dual_eigens(phi));
        case Relative::DblStar: return dual(reverse_eigens(phi));
        case Relative::DownDblStar: return dual(reverse_eigens(reverse_dual_eigens(phi)));
    }
    throw InvalidArgument("unknown relative");
}

std::array<TDSystem, 8> relatives(const TDSystem& phi) {
    return {relative(phi, Relative::Id),      relative(phi, Relative::Down),     relative(phi, Relative::Dbl),
            relative(phi, Relative::DownDbl), relative(phi, Relative::Star),     relative(phi, Relative::DownStar),
            relative(phi, Relative::DblStar), relative(phi, Relative::DownDblStar)};
}

TDSystem affine_transform(const TDSystem& phi, const Scalar& alpha, const Scalar& beta, const Scalar& alpha_star,
                          const Scalar& beta_star) {
    if (alpha.is_zero() || alpha_star.is_zero()) throw InvalidArgument("affine_transform: zero scale factor");
    TDSystem out = phi;
    out.a = (phi.a * alpha).plus_identity(beta);
    out.a_star = (phi.a_star * alpha_star).plus_identity(beta_star);
    for (auto& e : out.eigens) e.eigenvalue = alpha * e.eigenvalue + beta;
    for (auto& e : out.dual_eigens) e.eigenvalue = alpha_star * e.eigenvalue + beta_star;
    return out;
}

bool check_eigenspace_spread(const TDSystem& phi) {
    std::size_t n = phi.dim();
    auto spread = [n](const std::vector<EigenData>& eigens, const Matrix& x) {
        for (std::size_t i = 0; i < eigens.size(); ++i) {
            long li = static_cast<long>(i);
            Subspace target = eigenspace_sum(eigens, li - 1, li + 1, n);
            if (!target.contains(eigens[i].eigenspace.mapped_by(x))) return false;
        }
        return true;
    };
    return spread(phi.eigens, phi.a_star) && spread(phi.dual_eigens, phi.a);
}

}  // namespace tdpair
