#include "tdpair/split.hpp"

#include "tdpair/errors.hpp"

namespace tdpair {

namespace {

Subspace dual_prefix(const TDSystem& phi, long i) {
    return eigenspace_sum(phi.dual_eigens, 0, i, phi.dim());
}

Subspace eigen_suffix(const TDSystem& phi, long j) {
    return eigenspace_sum(phi.eigens, j, static_cast<long>(phi.d()), phi.dim());
}

Subspace sum_range(const std::vector<Subspace>& u, std::size_t lo, std::size_t hi) {
    Subspace s = Subspace::zero(u.front().field(), u.front().ambient_dim());
    for (std::size_t k = lo; k <= hi && k < u.size(); ++k) s = subspace_sum(s, u[k]);
    return s;
}

}  // namespace

bool is_direct_sum(const std::vector<Subspace>& u) {
    if (u.empty()) return false;
    std::size_t total = 0;
    for (const auto& s : u) total += s.dim();
    std::size_t n = u.front().ambient_dim();
    return total == n && sum_range(u, 0, u.size() - 1).dim() == n;
}

bool check_split_action(const TDSystem& phi, const std::vector<Subspace>& u) {
    std::size_t d = phi.d();
    if (u.size() != d + 1) return false;
    auto th = phi.theta();
    auto ts = phi.theta_star();
    for (std::size_t i = 0; i <= d; ++i) {
        Subspace up = u[i].mapped_by(phi.a.plus_identity(-th[i]));
        if (i == d ? !up.is_zero() : !u[i + 1].contains(up)) return false;
        Subspace down = u[i].mapped_by(phi.a_star.plus_identity(-ts[i]));
        if (i == 0 ? !down.is_zero() : !u[i - 1].contains(down)) return false;
    }
    return true;
}

bool check_split_telescoping(const TDSystem& phi, const std::vector<Subspace>& u) {
    std::size_t d = phi.d();
    if (u.size() != d + 1) return false;
    for (std::size_t i = 0; i <= d; ++i) {
        long li = static_cast<long>(i);
        if (!(sum_range(u, 0, i) == dual_prefix(phi, li))) return false;
        if (!(sum_range(u, i, d) == eigen_suffix(phi, li))) return false;
    }
    return true;
}

std::vector<Subspace> split_subspaces(const TDSystem& phi) {
    std::vector<Subspace> u;
    for (std::size_t i = 0; i <= phi.d(); ++i) {
        long li = static_cast<long>(i);
        u.push_back(subspace_intersect(dual_prefix(phi, li), eigen_suffix(phi, li)));
    }
    if (!is_direct_sum(u)) throw InternalError("split subspaces do not form a direct sum");
    if (!check_split_action(phi, u)) throw InternalError("split subspaces violate the raising/lowering actions");
    if (!check_split_telescoping(phi, u)) throw InternalError("split subspaces violate the telescoping sums");
    return u;
}

std::vector<Matrix> split_projections(const TDSystem& phi, const std::vector<Subspace>& u) {
    const Field& f = phi.field();
    std::size_t n = phi.dim();
    // Columns of B are the concatenated U-bases; F_i = B P_i B^{-1} where P_i
    // keeps only the coordinates belonging to U_i.
    std::vector<Vector> cols;
    std::vector<std::size_t> owner;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (auto& v : u[i].vectors()) {
            cols.push_back(std::move(v));
            owner.push_back(i);
        }
    if (cols.size() != n) throw InternalError("split subspaces do not span V");
    Matrix b = Matrix::from_columns(f, n, cols);
    Matrix binv = inverse(b);
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < u.size(); ++i) {
        Matrix fi(f, n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                Scalar acc = f.zero();
                for (std::size_t k = 0; k < n; ++k)
                    if (owner[k] == i && !b(r, k).is_zero() && !binv(k, c).is_zero()) acc += b(r, k) * binv(k, c);
                fi(r, c) = acc;
            }
        out.push_back(std::move(fi));
    }
    return out;
}

bool is_symmetric_unimodal(const std::vector<std::size_t>& rho) {
    std::size_t d = rho.size() - 1;
    for (std::size_t i = 0; i <= d; ++i) {
        if (rho[i] == 0 || rho[i] != rho[d - i]) return false;
        if (i >= 1 && 2 * i <= d && rho[i - 1] > rho[i]) return false;
    }
    return true;
}

std::vector<std::size_t> shape(const SplitData& sp) {
    std::vector<std::size_t> rho;
    for (std::size_t i = 0; i < sp.u.size(); ++i) {
        std::size_t r = sp.u[i].dim();
        if (r != sp.phi.eigens[i].eigenspace.dim() || r != sp.phi.dual_eigens[i].eigenspace.dim())
            throw InternalError("dim U_i, dim E_iV and dim E*_iV disagree at i = " + std::to_string(i));
        rho.push_back(r);
    }
    if (!is_symmetric_unimodal(rho)) throw InternalError("shape is not symmetric and unimodal");
    return rho;
}

SplitData build_split(const TDSystem& phi) {
    SplitData sp{phi, split_subspaces(phi), {}, {}};
    sp.f = split_projections(phi, sp.u);
    sp.rho = shape(sp);
    return sp;
}

bool check_projection_identities(const SplitData& sp) {
    const Field& f = sp.phi.field();
    std::size_t n = sp.phi.dim();
    Matrix sum(f, n, n);
    for (std::size_t i = 0; i < sp.f.size(); ++i) {
        sum += sp.f[i];
        for (std::size_t j = 0; j < sp.f.size(); ++j) {
            Matrix p = sp.f[i] * sp.f[j];
            if (i == j ? !(p == sp.f[i]) : !p.is_zero()) return false;
        }
    }
    return sum == Matrix::identity(f, n);
}

bool check_triangularity(const SplitData& sp) {
    std::size_t d = sp.phi.d();
    for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t j = i + 1; j <= d; ++j) {
            if (!(sp.phi.e(i) * sp.f[j]).is_zero()) return false;
            if (!(sp.f[i] * sp.phi.e(j)).is_zero()) return false;
            if (!(sp.phi.e_star(j) * sp.f[i]).is_zero()) return false;
            if (!(sp.f[j] * sp.phi.e_star(i)).is_zero()) return false;
        }
    return true;
}

bool check_sandwich_identities(const SplitData& sp) {
    for (std::size_t i = 0; i <= sp.phi.d(); ++i) {
        const Matrix& fi = sp.f[i];
        for (const Matrix* e : {&sp.phi.e(i), &sp.phi.e_star(i)}) {
            if (!(fi * *e * fi == fi)) return false;
            if (!(*e * fi * *e == *e)) return false;
        }
    }
    return true;
}

bool check_eigen_split_bijections(const SplitData& sp) {
    for (std::size_t i = 0; i <= sp.phi.d(); ++i) {
        const Matrix& ei = sp.phi.e(i);
        const Matrix& fi = sp.f[i];
        for (const auto& v : sp.u[i].vectors()) {
            Vector ev = ei.apply(v);
            if (!sp.phi.eigens[i].eigenspace.contains(ev) || !(fi.apply(ev) == v)) return false;
        }
        for (const auto& v : sp.phi.eigens[i].eigenspace.vectors()) {
            Vector fv = fi.apply(v);
            if (!sp.u[i].contains(fv) || !(ei.apply(fv) == v)) return false;
        }
    }
    return true;
}

VijLattice::VijLattice(const TDSystem& phi) : d_(phi.d()) {
    long d = static_cast<long>(d_);
    for (long i = -1; i <= d + 1; ++i)
        for (long j = -1; j <= d + 1; ++j)
            cells_.push_back(subspace_intersect(dual_prefix(phi, i), eigen_suffix(phi, j)));
}

const Subspace& VijLattice::at(long i, long j) const {
    long w = static_cast<long>(d_) + 3;
    if (i < -1 || j < -1 || i >= w - 1 || j >= w - 1) throw InvalidArgument("V_ij index out of range");
    return cells_[static_cast<std::size_t>((i + 1) * w + (j + 1))];
}

bool VijLattice::check_inclusions(const TDSystem& phi) const {
    auto th = phi.theta();
    auto ts = phi.theta_star();
    long d = static_cast<long>(d_);
    for (long i = 0; i <= d; ++i)
        for (long j = 0; j <= d; ++j) {
            const Subspace& v = at(i, j);
            if (!at(i + 1, j + 1).contains(v.mapped_by(phi.a.plus_identity(-th[static_cast<std::size_t>(j)]))))
                return false;
            if (!at(i - 1, j - 1).contains(v.mapped_by(phi.a_star.plus_identity(-ts[static_cast<std::size_t>(i)]))))
                return false;
        }
    return true;
}

bool VijLattice::vanishes_below_diagonal() const {
    long d = static_cast<long>(d_);
    for (long i = -1; i <= d + 1; ++i)
        for (long j = i + 1; j <= d + 1; ++j)
            if (i >= 0 && j <= d && !at(i, j).is_zero()) return false;
    return true;
}

}  // namespace tdpair
