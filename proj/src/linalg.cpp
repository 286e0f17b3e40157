#include "tdpair/linalg.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "tdpair/errors.hpp"

namespace tdpair {

RrefResult rref(const Matrix& m) {
    Matrix r = m;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
        std::size_t sel = row;
        while (sel < r.rows() && r(sel, col).is_zero()) ++sel;
        if (sel == r.rows()) continue;
        if (sel != row)
            for (std::size_t c = col; c < r.cols(); ++c) std::swap(r(sel, c), r(row, c));
        Scalar inv = r(row, col).inverse();
        for (std::size_t c = col; c < r.cols(); ++c) r(row, c) *= inv;
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == row || r(i, col).is_zero()) continue;
            Scalar factor = r(i, col);
            for (std::size_t c = col; c < r.cols(); ++c)
                if (!r(row, c).is_zero()) r(i, c) -= factor * r(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(r), std::move(pivots), row};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

std::vector<Vector> kernel(const Matrix& m) {
    auto [r, pivots, rk] = rref(m);
    const Field& f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector> out;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols(), f.zero());
        v[free] = f.one();
        for (std::size_t i = 0; i < rk; ++i) v[pivots[i]] = -r(i, free);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<Matrix> try_inverse(const Matrix& m) {
    if (!m.is_square()) throw InvalidArgument("inverse of a non-square matrix");
    std::size_t n = m.rows();
    Matrix aug(m.field(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = m.field().one();
    }
    auto r = rref(aug);
    if (r.rank < n || r.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.matrix(i, n + j);
    return inv;
}

Matrix inverse(const Matrix& m) {
    auto inv = try_inverse(m);
    if (!inv) throw InvalidArgument("matrix is singular");
    return *inv;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
    if (b.size() != m.rows()) throw InvalidArgument("solve: size mismatch");
    Matrix aug(m.field(), m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto [r, pivots, rk] = rref(aug);
    if (rk > 0 && pivots[rk - 1] == m.cols()) return std::nullopt;
    Vector x(m.cols(), m.field().zero());
    for (std::size_t i = 0; i < rk; ++i) x[pivots[i]] = r(i, m.cols());
    return x;
}

// ---------------------------------------------------------------- Subspace

namespace {

Matrix nonzero_rows(const RrefResult& r) {
    Matrix out(r.matrix.field(), r.rank, r.matrix.cols());
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t j = 0; j < r.matrix.cols(); ++j) out(i, j) = r.matrix(i, j);
    return out;
}

void require_same_space(const Subspace& u, const Subspace& w) {
    if (u.field() != w.field()) throw InvalidArgument("subspaces over different fields");
    if (u.ambient_dim() != w.ambient_dim()) throw InvalidArgument("subspaces of different ambient dimension");
}

}  // namespace

Subspace Subspace::zero(const Field& f, std::size_t n) { return Subspace(Matrix(f, 0, n)); }

Subspace Subspace::full(const Field& f, std::size_t n) { return Subspace(Matrix::identity(f, n)); }

Subspace Subspace::span(const Field& f, std::size_t n, const std::vector<Vector>& vectors) {
    Matrix m(f, vectors.size(), n);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != n) throw InvalidArgument("span: vector length mismatch");
        for (std::size_t j = 0; j < n; ++j) m(i, j) = vectors[i][j];
    }
    return row_space(m);
}

Subspace Subspace::row_space(const Matrix& m) { return Subspace(nonzero_rows(rref(m))); }

Subspace Subspace::image(const Matrix& m) { return row_space(m.transpose()); }

Subspace Subspace::kernel_of(const Matrix& m) { return span(m.field(), m.cols(), kernel(m)); }

std::vector<Vector> Subspace::vectors() const {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row(i));
    return out;
}

bool Subspace::contains(const Vector& v) const {
    if (v.size() != ambient_dim()) throw InvalidArgument("contains: vector length mismatch");
    // Reduce v against the RREF basis; pivots are the leading nonzero columns.
    Vector r = v;
    for (std::size_t i = 0; i < dim(); ++i) {
        std::size_t p = 0;
        while (basis_(i, p).is_zero()) ++p;
        if (r[p].is_zero()) continue;
        Scalar c = r[p];
        for (std::size_t j = p; j < ambient_dim(); ++j)
            if (!basis_(i, j).is_zero()) r[j] -= c * basis_(i, j);
    }
    return tdpair::is_zero(r);
}

bool Subspace::contains(const Subspace& o) const {
    require_same_space(*this, o);
    for (std::size_t i = 0; i < o.dim(); ++i)
        if (!contains(o.basis_.row(i))) return false;
    return true;
}

Subspace Subspace::mapped_by(const Matrix& m) const {
    if (m.cols() != ambient_dim()) throw InvalidArgument("mapped_by: dimension mismatch");
    std::vector<Vector> imgs;
    for (std::size_t i = 0; i < dim(); ++i) imgs.push_back(m.apply(basis_.row(i)));
    return span(field(), m.rows(), imgs);
}

Subspace subspace_sum(const Subspace& u, const Subspace& w) {
    require_same_space(u, w);
    auto vs = u.vectors();
    auto ws = w.vectors();
    vs.insert(vs.end(), ws.begin(), ws.end());
    return Subspace::span(u.field(), u.ambient_dim(), vs);
}

// Zassenhaus: row-reduce [[U, U], [W, 0]]; rows whose left half vanishes span U ∩ W.
Subspace subspace_intersect(const Subspace& u, const Subspace& w) {
    require_same_space(u, w);
    const Field& f = u.field();
    std::size_t n = u.ambient_dim();
    if (u.is_zero() || w.is_zero()) return Subspace::zero(f, n);
    Matrix block(f, u.dim() + w.dim(), 2 * n);
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            block(i, j) = u.basis()(i, j);
            block(i, n + j) = u.basis()(i, j);
        }
    for (std::size_t i = 0; i < w.dim(); ++i)
        for (std::size_t j = 0; j < n; ++j) block(u.dim() + i, j) = w.basis()(i, j);
    auto r = rref(block);
    std::vector<Vector> out;
    for (std::size_t i = 0; i < r.rank; ++i) {
        if (r.pivots[i] < n) continue;
        Vector v(n, f.zero());
        for (std::size_t j = 0; j < n; ++j) v[j] = r.matrix(i, n + j);
        out.push_back(std::move(v));
    }
    return Subspace::span(f, n, out);
}

// ---------------------------------------------------------------- EchelonBasis

void EchelonBasis::reduce(Vector& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        std::size_t p = pivots_[i];
        if (v[p].is_zero()) continue;
        Scalar c = v[p];
        for (std::size_t j = p; j < n_; ++j)
            if (!rows_[i][j].is_zero()) v[j] -= c * rows_[i][j];
    }
}

bool EchelonBasis::insert(Vector v) {
    if (v.size() != n_) throw InvalidArgument("EchelonBasis: vector length mismatch");
    Vector orig = v;
    reduce(v);
    std::size_t p = 0;
    while (p < n_ && v[p].is_zero()) ++p;
    if (p == n_) return false;
    Scalar inv = v[p].inverse();
    for (std::size_t j = p; j < n_; ++j) v[j] *= inv;
    // Keep rows fully reduced so that reduce() is a single pass.
    for (auto& row : rows_) {
        if (row[p].is_zero()) continue;
        Scalar c = row[p];
        for (std::size_t j = p; j < n_; ++j)
            if (!v[j].is_zero()) row[j] -= c * v[j];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    originals_.push_back(std::move(orig));
    return true;
}

bool EchelonBasis::contains(Vector v) const {
    if (v.size() != n_) throw InvalidArgument("EchelonBasis: vector length mismatch");
    reduce(v);
    return tdpair::is_zero(v);
}

// ---------------------------------------------------------------- char_poly

// Similarity-reduce to upper Hessenberg form, then expand along the
// subdiagonal with the standard recurrence.
Polynomial char_poly(const Matrix& m) {
    if (!m.is_square()) throw InvalidArgument("char_poly of a non-square matrix");
    if (m.rows() == 0) throw InvalidArgument("char_poly of a 0x0 matrix");
    const Field& f = m.field();
    std::size_t n = m.rows();
    Matrix h = m;
    for (std::size_t k = 0; k + 2 <= n; ++k) {
        std::size_t piv = k + 1;
        while (piv < n && h(piv, k).is_zero()) ++piv;
        if (piv == n) continue;
        if (piv != k + 1) {
            for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(k + 1, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, k + 1));
        }
        Scalar inv = h(k + 1, k).inverse();
        for (std::size_t i = k + 2; i < n; ++i) {
            if (h(i, k).is_zero()) continue;
            Scalar t = h(i, k) * inv;
            // row_i -= t row_{k+1}; col_{k+1} += t col_i
            for (std::size_t j = 0; j < n; ++j)
                if (!h(k + 1, j).is_zero()) h(i, j) -= t * h(k + 1, j);
            for (std::size_t r = 0; r < n; ++r)
                if (!h(r, i).is_zero()) h(r, k + 1) += t * h(r, i);
        }
    }
    Polynomial x = Polynomial::monomial(f, f.one(), 1);
    std::vector<Polynomial> p;
    p.emplace_back(f, std::vector<Scalar>{f.one()});
    for (std::size_t k = 0; k < n; ++k) {
        Polynomial next = (x - Polynomial(f, {h(k, k)})) * p[k];
        Scalar sub = f.one();
        for (std::size_t i = k; i-- > 0;) {
            sub *= h(i + 1, i);
            if (sub.is_zero()) break;
            Scalar c = h(i, k) * sub;
            if (!c.is_zero()) next -= p[i] * c;
        }
        p.push_back(std::move(next));
    }
    return p[n];
}

// ---------------------------------------------------------------- roots

namespace {

// Divides p by (x - r) as often as possible.
unsigned deflate(Polynomial& p, const Scalar& r) {
    unsigned mult = 0;
    Polynomial lin = Polynomial::linear(r);
    while (p.degree() >= 1) {
        auto [q, rem] = p.divmod(lin);
        if (!rem.is_zero()) break;
        p = std::move(q);
        ++mult;
    }
    return mult;
}

// --- integer factoring for the rational root test

mpz_class gcd_mpz(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

mpz_class pollard_rho(const mpz_class& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        mpz_class x = 2, y = 2, d = 1;
        auto step = [&](mpz_class& v) {
            v = v * v + c;
            v %= n;
        };
        while (d == 1) {
            step(x);
            step(y);
            step(y);
            mpz_class diff = x - y;
            d = gcd_mpz(abs(diff), n);
        }
        if (d != n) return d;
    }
}

void factor_into(mpz_class n, std::map<mpz_class, unsigned>& out) {
    if (n == 1) return;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++out[mpz_class(p)];
            n /= p;
        }
    }
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
        ++out[n];
        return;
    }
    mpz_class d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

std::vector<mpz_class> positive_divisors(const mpz_class& n) {
    std::map<mpz_class, unsigned> fac;
    factor_into(abs(n), fac);
    std::vector<mpz_class> divs{1};
    for (const auto& [p, e] : fac) {
        std::size_t base = divs.size();
        mpz_class pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

std::vector<std::pair<Scalar, unsigned>> rational_roots(Polynomial& p) {
    const Field& f = p.field();
    std::vector<std::pair<Scalar, unsigned>> roots;
    if (unsigned m = deflate(p, f.zero())) roots.emplace_back(f.zero(), m);
    if (p.degree() < 1) return roots;
    // Clear denominators.
    mpz_class lcm = 1;
    for (const auto& c : p.coefficients()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.rational().get_den_mpz_t());
    std::vector<mpz_class> ints;
    for (const auto& c : p.coefficients()) ints.emplace_back(c.rational().get_num() * (lcm / c.rational().get_den()));
    auto nums = positive_divisors(ints.front());
    auto dens = positive_divisors(ints.back());
    std::vector<mpq_class> cands;
    for (const auto& a : nums)
        for (const auto& b : dens) {
            if (gcd_mpz(a, b) != 1) continue;
            mpq_class q(a, b);
            q.canonicalize();
            cands.push_back(q);
            cands.push_back(-q);
        }
    for (const auto& q : cands) {
        if (p.degree() < 1) break;
        Scalar r = f.from_rational(q);
        if (!p(r).is_zero()) continue;
        roots.emplace_back(r, deflate(p, r));
    }
    return roots;
}

// --- finite fields

std::vector<Scalar> enumerate_field(const Field& f) {
    std::vector<Scalar> all;
    std::uint64_t p = f.characteristic();
    if (f.kind() == FieldKind::Prime) {
        for (std::uint64_t a = 0; a < p; ++a) all.push_back(Scalar::from_coords(f, a, std::uint64_t{0}));
    } else {
        for (std::uint64_t a = 0; a < p; ++a)
            for (std::uint64_t b = 0; b < p; ++b) all.push_back(Scalar::from_coords(f, a, b));
    }
    return all;
}

Polynomial powmod(Polynomial base, mpz_class e, const Polynomial& mod) {
    const Field& f = mod.field();
    Polynomial result(f, {f.one()});
    base = base.divmod(mod).second;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = (result * base).divmod(mod).second;
        e >>= 1;
        if (e > 0) base = (base * base).divmod(mod).second;
    }
    return result;
}

Scalar random_element(const Field& f, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> dist(0, f.characteristic() - 1);
    if (f.kind() == FieldKind::Prime) return Scalar::from_coords(f, dist(rng), std::uint64_t{0});
    return Scalar::from_coords(f, dist(rng), dist(rng));
}

// Distinct roots of a squarefree product of linear factors g (odd order q).
void equal_degree_split(const Polynomial& g, const mpz_class& q, std::mt19937_64& rng, std::vector<Scalar>& out) {
    const Field& f = g.field();
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        Polynomial m = g.monic();
        out.push_back(-m.coefficient(0));
        return;
    }
    mpz_class half = (q - 1) / 2;
    for (;;) {
        Polynomial shift(f, {random_element(f, rng), f.one()});
        Polynomial h = powmod(shift, half, g) - Polynomial(f, {f.one()});
        Polynomial d = gcd(g, h);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            equal_degree_split(d, q, rng, out);
            equal_degree_split(g.divmod(d).first, q, rng, out);
            return;
        }
    }
}

std::vector<Scalar> finite_field_distinct_roots(const Polynomial& p) {
    const Field& f = p.field();
    mpz_class q = f.order();
    if (q <= 65536) {
        std::vector<Scalar> out;
        for (const auto& x : enumerate_field(f))
            if (p(x).is_zero()) out.push_back(x);
        return out;
    }
    if (f.characteristic() == 2) throw Unsupported("root finding over large fields of characteristic 2");
    Polynomial x = Polynomial::monomial(f, f.one(), 1);
    Polynomial g = gcd(p, powmod(x, q, p.monic()) - x);
    std::vector<Scalar> out;
    std::mt19937_64 rng(0x5eed);
    equal_degree_split(g, q, rng, out);
    return out;
}

// Q(sqrt D): rational roots when the coefficients are rational, then the
// quadratic formula on what is left.
std::vector<std::pair<Scalar, unsigned>> extension_roots(Polynomial& p) {
    const Field& f = p.field();
    const Field& base = f.base();
    std::vector<std::pair<Scalar, unsigned>> roots;
    bool rational_coeffs = true;
    for (const auto& c : p.coefficients())
        if (std::get<mpq_class>(c.im()) != 0) rational_coeffs = false;
    if (rational_coeffs) {
        std::vector<Scalar> cs;
        for (const auto& c : p.coefficients()) cs.push_back(base.from_rational(std::get<mpq_class>(c.re())));
        Polynomial bp(base, cs);
        for (const auto& [r, m] : rational_roots(bp)) {
            Scalar lifted = r.lift(f);
            roots.emplace_back(lifted, deflate(p, lifted));
        }
    }
    if (p.degree() == 2) {
        Polynomial m = p.monic();
        Scalar b = m.coefficient(1), c = m.coefficient(0);
        Scalar disc = b * b - f.from_int(4) * c;
        if (auto s = disc.sqrt()) {
            Scalar two_inv = f.from_int(2).inverse();
            for (const Scalar& r : {(-b + *s) * two_inv, (-b - *s) * two_inv}) {
                if (p.degree() < 1) break;
                if (!p(r).is_zero()) continue;
                roots.emplace_back(r, deflate(p, r));
            }
        }
    } else if (p.degree() > 2) {
        throw Unsupported("root finding over " + f.describe() + " beyond degree 2 after removing rational roots");
    }
    return roots;
}

}  // namespace

RootsResult roots_in_field(const Polynomial& poly) {
    if (poly.is_zero()) throw InvalidArgument("roots of the zero polynomial");
    const Field& f = poly.field();
    Polynomial p = poly.monic();
    std::vector<std::pair<Scalar, unsigned>> roots;
    switch (f.kind()) {
        case FieldKind::Rational:
            roots = rational_roots(p);
            break;
        case FieldKind::Prime:
            for (const auto& r : finite_field_distinct_roots(p)) roots.emplace_back(r, deflate(p, r));
            break;
        case FieldKind::Quadratic:
            if (f.is_finite()) {
                for (const auto& r : finite_field_distinct_roots(p)) roots.emplace_back(r, deflate(p, r));
            } else {
                roots = extension_roots(p);
            }
            break;
    }
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    bool split = p.degree() == 0;
    return {std::move(roots), split, p.monic()};
}

}  // namespace tdpair
