#include "tdpair/conjectures.hpp"

#include <functional>
#include <random>

#include <gmpxx.h>

namespace tdpair {

bool check_rho_bound(const std::vector<std::size_t>& rho) {
    if (rho.empty()) return false;
    std::size_t d = rho.size() - 1;
    mpz_class c = 1;  // C(d, i)
    for (std::size_t i = 0; i <= d; ++i) {
        if (mpz_class(static_cast<unsigned long>(rho[i])) > c) return false;
        c = c * static_cast<unsigned long>(d - i) / static_cast<unsigned long>(i + 1);
    }
    return true;
}

std::vector<std::vector<std::size_t>> spanning_word_exponents(std::size_t d) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    // All increasing sequences of a given length, in lexicographic order.
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t len) {
        if (cur.size() == len) {
            out.push_back(cur);
            return;
        }
        for (std::size_t x = start; x <= d; ++x) {
            cur.push_back(x);
            rec(x + 1, len);
            cur.pop_back();
        }
    };
    for (std::size_t len = 0; len <= d + 1; len += 2) rec(0, len);
    return out;
}

std::string render_spanning_word(const std::vector<std::size_t>& ex) {
    std::string s;
    for (std::size_t k = 0; k < ex.size(); ++k) {
        if (ex[k] == 0) continue;
        s += k % 2 == 0 ? "L" : "R";
        if (ex[k] > 1) s += "^" + std::to_string(ex[k]);
    }
    return s + "v";
}

Vector apply_spanning_word(const RaiseLowerData& rl, const std::vector<std::size_t>& ex, const Vector& v) {
    Vector w = v;
    for (std::size_t k = ex.size(); k-- > 0;) {
        const Matrix& m = k % 2 == 0 ? rl.l : rl.r;
        for (std::size_t t = 0; t < ex[k]; ++t) w = m.apply(w);
    }
    return w;
}

bool words_span(const RaiseLowerData& rl, const Vector& v) {
    const Field& f = rl.sp.phi.field();
    std::size_t n = rl.sp.phi.dim();
    EchelonBasis basis(f, n);
    for (const auto& ex : spanning_word_exponents(rl.sp.phi.d())) {
        basis.insert(apply_spanning_word(rl, ex, v));
        if (basis.size() == n) return true;
    }
    return false;
}

SpanningReport check_spanning(const RaiseLowerData& rl, std::uint64_t seed) {
    SpanningReport rep;
    for (const auto& ex : spanning_word_exponents(rl.sp.phi.d())) rep.words.push_back(render_spanning_word(ex));
    const Subspace& u0 = rl.sp.u.front();
    auto basis = u0.vectors();
    for (const auto& v : basis) rep.per_basis_vector.push_back(words_span(rl, v));
    if (basis.size() > 1) {
        rep.quantifier_caveat = true;
        const Field& f = u0.field();
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> coef(-7, 7);
        while (rep.random_combinations.size() < 16) {
            Vector v = zero_vector(f, u0.ambient_dim());
            for (const auto& b : basis) v = v + scale(b, f.from_int(coef(rng)));
            if (is_zero(v)) continue;
            rep.random_combinations.push_back(words_span(rl, v));
        }
    }
    bool any_true = false, any_false = false;
    for (const auto* vec : {&rep.per_basis_vector, &rep.random_combinations})
        for (bool b : *vec) (b ? any_true : any_false) = true;
    if (any_true != any_false) rep.verdict = any_true;
    return rep;
}

namespace {

std::vector<unsigned long long> truncated_geometric_product(const std::vector<std::size_t>& parts) {
    std::vector<unsigned long long> poly{1};
    for (std::size_t p : parts) {
        std::vector<unsigned long long> next(poly.size() + p, 0);
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (std::size_t j = 0; j <= p; ++j) next[i + j] += poly[i];
        poly = std::move(next);
    }
    return poly;
}

}  // namespace

std::optional<std::vector<std::size_t>> check_factorization(const std::vector<std::size_t>& rho) {
    if (rho.empty()) return std::nullopt;
    std::size_t d = rho.size() - 1;
    std::optional<std::vector<std::size_t>> found;
    std::vector<std::size_t> cur;
    // Partitions with parts in non-increasing order, largest first, so the
    // first match is the lexicographically greatest.
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t remaining, std::size_t max_part) {
        if (remaining == 0) {
            auto poly = truncated_geometric_product(cur);
            bool eq = poly.size() == rho.size();
            for (std::size_t i = 0; eq && i < rho.size(); ++i) eq = poly[i] == rho[i];
            if (eq) found = cur;
            return eq;
        }
        for (std::size_t p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            if (rec(remaining - p, p)) return true;
            cur.pop_back();
        }
        return false;
    };
    rec(d, d);
    return found;
}

ConjectureReport check_conjectures(const RaiseLowerData& rl) {
    ConjectureReport rep;
    const auto& rho = rl.sp.rho;
    rep.rho_bound_holds = check_rho_bound(rho);
    rep.spanning = check_spanning(rl);
    rep.factorization = check_factorization(rho);
    bool f_ok = !rep.factorization || rep.rho_bound_holds;
    bool s_ok = rep.spanning.verdict != true || rep.rho_bound_holds;
    rep.implications_consistent = f_ok && s_ok;
    return rep;
}

}  // namespace tdpair
