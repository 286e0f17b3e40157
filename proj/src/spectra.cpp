#include "tdpair/spectra.hpp"

#include <algorithm>

#include "tdpair/errors.hpp"

namespace tdpair {

SpectralDecomposition diagonalize(const Matrix& a) {
    if (!a.is_square()) throw InvalidArgument("diagonalize: matrix is not square");
    if (a.rows() == 0) throw InvalidArgument("diagonalize: 0x0 matrix");
    const Field& f = a.field();
    std::size_t n = a.rows();
    Polynomial cp = char_poly(a);
    RootsResult roots = roots_in_field(cp);
    if (!roots.fully_split) throw NotSplit(cp.to_string(), static_cast<std::size_t>(roots.cofactor.degree()));

    std::vector<Subspace> spaces;
    for (const auto& [theta, mult] : roots.roots) {
        Subspace ker = Subspace::kernel_of(a.plus_identity(-theta));
        if (ker.dim() != mult)
            throw NotDiagonalizable("eigenvalue " + theta.to_string() + " has algebraic multiplicity " +
                                    std::to_string(mult) + " but geometric multiplicity " +
                                    std::to_string(ker.dim()));
        spaces.push_back(std::move(ker));
    }

    SpectralDecomposition sd{a, {}};
    for (std::size_t i = 0; i < roots.roots.size(); ++i) {
        const Scalar& ti = roots.roots[i].first;
        Matrix e = Matrix::identity(f, n);
        for (std::size_t j = 0; j < roots.roots.size(); ++j) {
            if (j == i) continue;
            const Scalar& tj = roots.roots[j].first;
            e = e * a.plus_identity(-tj);
            e *= (ti - tj).inverse();
        }
        sd.eigens.push_back({ti, std::move(spaces[i]), std::move(e), roots.roots[i].second});
    }
    return sd;
}

bool verify_idempotent_identities(const SpectralDecomposition& sd) {
    const Matrix& a = sd.op;
    const Field& f = a.field();
    std::size_t n = a.rows();
    Matrix sum(f, n, n);
    for (std::size_t i = 0; i < sd.eigens.size(); ++i) {
        const auto& ei = sd.eigens[i];
        sum += ei.idempotent;
        Matrix ae = a * ei.idempotent;
        Matrix expected = ei.idempotent * ei.eigenvalue;
        if (!(ae == expected) || !(ei.idempotent * a == expected)) return false;
        for (std::size_t j = 0; j < sd.eigens.size(); ++j) {
            Matrix prod = ei.idempotent * sd.eigens[j].idempotent;
            if (i == j ? !(prod == ei.idempotent) : !prod.is_zero()) return false;
        }
    }
    return sum == Matrix::identity(f, n);
}

Subspace eigenspace_sum(const std::vector<EigenData>& eigens, long lo, long hi, std::size_t n) {
    const Field& f = eigens.front().idempotent.field();
    std::vector<Vector> vs;
    for (long k = std::max(lo, 0L); k <= hi && k < static_cast<long>(eigens.size()); ++k) {
        auto more = eigens[static_cast<std::size_t>(k)].eigenspace.vectors();
        vs.insert(vs.end(), more.begin(), more.end());
    }
    return Subspace::span(f, n, vs);
}

}  // namespace tdpair
