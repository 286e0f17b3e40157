#pragma once

#include <random>
#include <vector>

#include "tdpair/generators.hpp"

namespace testsupport {

using namespace tdpair;

inline const Field& Q() { return Field::rational(); }

inline Scalar q(long num, long den = 1) {
    mpq_class v(num, den);
    v.canonicalize();
    return Q().from_rational(v);
}

inline std::vector<Scalar> ints(const Field& f, std::initializer_list<long long> xs) {
    std::vector<Scalar> out;
    for (long long x : xs) out.push_back(f.from_int(x));
    return out;
}

inline Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng, int lo = -3,
                            int hi = 3) {
    std::uniform_int_distribution<int> dist(lo, hi);
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(dist(rng));
    return m;
}

// The TD system of a verified pair with the given ordering index.
inline TDSystem system_of(const Matrix& a, const Matrix& as, std::size_t k = 0) {
    auto rep = verify_td_pair(a, as);
    if (!rep.is_td_pair) throw std::runtime_error("not a TD pair");
    return rep.orderings.at(k);
}

inline TDSystem sl2_system(std::size_t d, std::size_t k = 0) {
    auto [a, as] = sl2_module(Sl2Spec(d));
    return system_of(a, as, k);
}

}  // namespace testsupport

namespace testsupport {

// First split-form TD pair over GF(p) with th_i = a + b q^i, th*_i = a* + c q^-i,
// searching the off-diagonal entries exhaustively.
inline std::optional<std::pair<Matrix, Matrix>> find_split_qform(std::uint64_t p, std::size_t d, long long qq,
                                                                 long long a = 0, long long b = 1, long long as = 0,
                                                                 long long c = 1) {
    const Field& f = Field::prime(p);
    Scalar qs = f.from_int(qq);
    std::vector<Scalar> th, ts;
    for (std::size_t i = 0; i <= d; ++i) {
        th.push_back(f.from_int(a) + f.from_int(b) * qs.pow(long(i)));
        ts.push_back(f.from_int(as) + f.from_int(c) * qs.pow(-long(i)));
    }
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= p - 1;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<Scalar> phi;
        std::uint64_t x = code;
        for (std::size_t i = 0; i < d; ++i) {
            phi.push_back(f.from_int(long(x % (p - 1)) + 1));
            x /= p - 1;
        }
        auto pair = split_form_pair(th, ts, phi);
        if (verify_td_pair(pair.first, pair.second).is_td_pair) return pair;
    }
    return std::nullopt;
}

}  // namespace testsupport
