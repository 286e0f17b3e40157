#include "tdpair/field.hpp"

#include <deque>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>

#include "tdpair/errors.hpp"

namespace tdpair {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 mpz_mod_u64(const mpz_class& v, u64 p) { return mpz_fdiv_ui(v.get_mpz_t(), p); }

// Arithmetic on a single coordinate of a rational or prime field.
struct BaseOps {
    const Field& f;

    bool prime() const { return f.kind() == FieldKind::Prime; }
    u64 p() const { return f.characteristic(); }

    BaseValue zero() const { return prime() ? BaseValue(u64{0}) : BaseValue(mpq_class(0)); }
    BaseValue from_int(long long v) const {
        if (prime()) {
            long long m = static_cast<long long>(v % static_cast<long long>(p()));
            if (m < 0) m += static_cast<long long>(p());
            return u64(m);
        }
        return mpq_class(static_cast<long>(v));
    }
    bool is_zero(const BaseValue& a) const {
        return prime() ? std::get<u64>(a) == 0 : sgn(std::get<mpq_class>(a)) == 0;
    }
    bool eq(const BaseValue& a, const BaseValue& b) const {
        return prime() ? std::get<u64>(a) == std::get<u64>(b)
                       : std::get<mpq_class>(a) == std::get<mpq_class>(b);
    }
    int cmp(const BaseValue& a, const BaseValue& b) const {
        if (prime()) {
            u64 x = std::get<u64>(a), y = std::get<u64>(b);
            return x < y ? -1 : (x > y ? 1 : 0);
        }
        int c = ::cmp(std::get<mpq_class>(a), std::get<mpq_class>(b));
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    BaseValue add(const BaseValue& a, const BaseValue& b) const {
        if (prime()) {
            u64 s = std::get<u64>(a) + std::get<u64>(b);
            return s >= p() ? s - p() : s;
        }
        return mpq_class(std::get<mpq_class>(a) + std::get<mpq_class>(b));
    }
    BaseValue neg(const BaseValue& a) const {
        if (prime()) {
            u64 x = std::get<u64>(a);
            return x == 0 ? u64{0} : p() - x;
        }
        return mpq_class(-std::get<mpq_class>(a));
    }
    BaseValue sub(const BaseValue& a, const BaseValue& b) const { return add(a, neg(b)); }
    BaseValue mul(const BaseValue& a, const BaseValue& b) const {
        if (prime()) return mulmod(std::get<u64>(a), std::get<u64>(b), p());
        return mpq_class(std::get<mpq_class>(a) * std::get<mpq_class>(b));
    }
    BaseValue inv(const BaseValue& a) const {
        if (is_zero(a)) throw InvalidArgument("division by zero");
        if (prime()) return powmod(std::get<u64>(a), p() - 2, p());
        return mpq_class(1 / std::get<mpq_class>(a));
    }
    std::string str(const BaseValue& a) const {
        return prime() ? std::to_string(std::get<u64>(a)) : std::get<mpq_class>(a).get_str();
    }
    bool is_negative_rational(const BaseValue& a) const {
        return !prime() && sgn(std::get<mpq_class>(a)) < 0;
    }

    std::optional<BaseValue> sqrt(const BaseValue& a) const {
        if (!prime()) {
            const mpq_class& q = std::get<mpq_class>(a);
            if (sgn(q) < 0) return std::nullopt;
            if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
                return std::nullopt;
            mpz_class n, d;
            mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
            mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
            return mpq_class(n, d);
        }
        u64 x = std::get<u64>(a), m = p();
        if (x == 0 || m == 2) return x;
        if (powmod(x, (m - 1) / 2, m) != 1) return std::nullopt;
        // Tonelli-Shanks.
        u64 q = m - 1, s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        u64 z = 2;
        while (powmod(z, (m - 1) / 2, m) != m - 1) ++z;
        u64 c = powmod(z, q, m), r = powmod(x, (q + 1) / 2, m), t = powmod(x, q, m), mm = s;
        while (t != 1) {
            u64 i = 0, tt = t;
            while (tt != 1) {
                tt = mulmod(tt, tt, m);
                ++i;
            }
            u64 b = c;
            for (u64 j = 0; j + i + 1 < mm; ++j) b = mulmod(b, b, m);
            r = mulmod(r, b, m);
            c = mulmod(b, b, m);
            t = mulmod(t, c, m);
            mm = i;
        }
        return std::min(r, m - r);
    }
};

BaseValue base_parse(const Field& f, std::string_view text, bool strict) {
    auto fail = [&](const char* why) -> ParseError {
        return ParseError("cannot parse '" + std::string(text) + "' in " + f.describe() + ": " + why);
    };
    auto digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || (!strict && body.front() == '+'))) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (f.kind() == FieldKind::Rational) {
        auto slash = body.find('/');
        std::string_view num = body.substr(0, slash);
        std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
        if (!digits(num) || !digits(den)) throw fail("expected an integer or a/b");
        mpz_class n{std::string(num)}, d{std::string(den)};
        if (d == 0) throw fail("zero denominator");
        mpq_class q(negative ? mpz_class(-n) : n, d);
        q.canonicalize();
        return q;
    }
    if (!digits(body)) throw fail("expected a decimal residue");
    mpz_class v{std::string(body)};
    if (strict && (negative || v >= mpz_class(static_cast<unsigned long>(f.characteristic()))))
        throw fail("residue out of range [0, p)");
    if (negative) v = -v;
    return mpz_mod_u64(v, f.characteristic());
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (u64 sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % sp == 0) return n == sp;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

class FieldRegistry {
public:
    static FieldRegistry& instance() {
        static FieldRegistry r;
        return r;
    }

    const Field& rational() {
        std::lock_guard lock(mu_);
        for (auto& f : fields_)
            if (f->kind_ == FieldKind::Rational) return *f;
        fields_.emplace_back(new Field(FieldKind::Rational, 0, nullptr, mpq_class(0)));
        return *fields_.back();
    }

    const Field& prime(u64 p) {
        std::lock_guard lock(mu_);
        for (auto& f : fields_)
            if (f->kind_ == FieldKind::Prime && f->modulus_ == p) return *f;
        fields_.emplace_back(new Field(FieldKind::Prime, p, nullptr, u64{0}));
        return *fields_.back();
    }

    const Field& quadratic(const Field& base, const BaseValue& disc) {
        std::lock_guard lock(mu_);
        BaseOps ops{base};
        for (auto& f : fields_)
            if (f->kind_ == FieldKind::Quadratic && f->base_ == &base && ops.eq(f->disc_, disc)) return *f;
        fields_.emplace_back(new Field(FieldKind::Quadratic, base.characteristic(), &base, disc));
        return *fields_.back();
    }

private:
    std::mutex mu_;
    std::deque<std::unique_ptr<Field>> fields_;
};

const Field& Field::rational() {
    static const Field& q = FieldRegistry::instance().rational();
    return q;
}

const Field& Field::prime(std::uint64_t p) {
    if (p >= (u64{1} << 62) || !is_prime(p))
        throw InvalidArgument("GF(p) requires a prime p < 2^62, got " + std::to_string(p));
    return FieldRegistry::instance().prime(p);
}

const Field& Field::quadratic(const Field& base, const Scalar& discriminant) {
    if (base.kind() == FieldKind::Quadratic) throw Unsupported("towers of quadratic extensions are not supported");
    if (discriminant.field() != base) throw InvalidArgument("discriminant must lie in the base field");
    if (base.characteristic() == 2) throw Unsupported("quadratic extensions in characteristic 2 are not supported");
    if (discriminant.sqrt()) throw InvalidArgument("discriminant " + discriminant.to_string() + " is a square in " + base.describe());
    return FieldRegistry::instance().quadratic(base, discriminant.re());
}

mpz_class Field::order() const {
    if (!is_finite()) return 0;
    mpz_class p(static_cast<unsigned long>(modulus_));
    return kind_ == FieldKind::Quadratic ? mpz_class(p * p) : p;
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }
Scalar Field::from_int(long long v) const { return Scalar(*this, v); }

Scalar Field::from_mpz(const mpz_class& v) const { return from_rational(mpq_class(v)); }

Scalar Field::from_rational(const mpq_class& v) const {
    const Field& b = base();
    BaseValue coord;
    if (b.kind() == FieldKind::Rational) {
        coord = v;
    } else {
        u64 n = mpz_mod_u64(v.get_num(), b.characteristic());
        u64 d = mpz_mod_u64(v.get_den(), b.characteristic());
        if (d == 0) throw InvalidArgument("denominator vanishes in " + b.describe());
        coord = mulmod(n, powmod(d, b.characteristic() - 2, b.characteristic()), b.characteristic());
    }
    return Scalar::from_coords(*this, coord, BaseOps{b}.zero());
}

std::string Field::describe() const {
    switch (kind_) {
        case FieldKind::Rational: return "Q";
        case FieldKind::Prime: return "GF(" + std::to_string(modulus_) + ")";
        case FieldKind::Quadratic: return base().describe() + "(sqrt(" + BaseOps{base()}.str(disc_) + "))";
    }
    return "?";
}

Scalar::Scalar() : Scalar(Field::rational(), 0) {}

Scalar::Scalar(const Field& f, long long v) : field_(&f) {
    BaseOps ops{f.base()};
    re_ = ops.from_int(v);
    im_ = ops.zero();
}

Scalar Scalar::from_coords(const Field& f, BaseValue re, BaseValue im) {
    BaseOps ops{f.base()};
    auto check = [&](const BaseValue& v) {
        bool ok = ops.prime() ? std::holds_alternative<u64>(v) && std::get<u64>(v) < ops.p()
                              : std::holds_alternative<mpq_class>(v);
        if (!ok) throw InvalidArgument("coordinate does not belong to " + f.describe());
    };
    check(re);
    check(im);
    if (f.kind() != FieldKind::Quadratic && !ops.is_zero(im))
        throw InvalidArgument("nonzero second coordinate outside a quadratic extension");
    if (std::holds_alternative<mpq_class>(re)) std::get<mpq_class>(re).canonicalize();
    if (std::holds_alternative<mpq_class>(im)) std::get<mpq_class>(im).canonicalize();
    return Scalar(&f, std::move(re), std::move(im));
}

Scalar Scalar::parse(const Field& f, std::string_view text, bool strict) {
    if (f.kind() == FieldKind::Quadratic) throw Unsupported("parsing elements of quadratic extensions");
    return Scalar(&f, base_parse(f, text, strict), BaseOps{f}.zero());
}

const mpq_class& Scalar::rational() const {
    if (field_->kind() != FieldKind::Rational) throw InvalidArgument("not a rational scalar");
    return std::get<mpq_class>(re_);
}

std::uint64_t Scalar::residue() const {
    if (field_->kind() != FieldKind::Prime) throw InvalidArgument("not a prime-field scalar");
    return std::get<u64>(re_);
}

bool Scalar::is_zero() const {
    BaseOps ops{field_->base()};
    return ops.is_zero(re_) && ops.is_zero(im_);
}

bool Scalar::is_one() const { return *this == field_->one(); }

void Scalar::require_same(const Scalar& o) const {
    if (field_ != o.field_)
        throw InvalidArgument("field mismatch: " + field_->describe() + " vs " + o.field_->describe());
}

Scalar Scalar::operator-() const {
    BaseOps ops{field_->base()};
    return Scalar(field_, ops.neg(re_), ops.neg(im_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
    require_same(o);
    BaseOps ops{field_->base()};
    re_ = ops.add(re_, o.re_);
    if (field_->kind() == FieldKind::Quadratic) im_ = ops.add(im_, o.im_);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    require_same(o);
    BaseOps ops{field_->base()};
    re_ = ops.sub(re_, o.re_);
    if (field_->kind() == FieldKind::Quadratic) im_ = ops.sub(im_, o.im_);
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    require_same(o);
    BaseOps ops{field_->base()};
    if (field_->kind() != FieldKind::Quadratic) {
        re_ = ops.mul(re_, o.re_);
        return *this;
    }
    const BaseValue& D = field_->discriminant();
    BaseValue re = ops.add(ops.mul(re_, o.re_), ops.mul(D, ops.mul(im_, o.im_)));
    BaseValue im = ops.add(ops.mul(re_, o.im_), ops.mul(im_, o.re_));
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    require_same(o);
    return *this *= o.inverse();
}

Scalar Scalar::inverse() const {
    BaseOps ops{field_->base()};
    if (field_->kind() != FieldKind::Quadratic) return Scalar(field_, ops.inv(re_), ops.zero());
    const BaseValue& D = field_->discriminant();
    BaseValue norm = ops.sub(ops.mul(re_, re_), ops.mul(D, ops.mul(im_, im_)));
    BaseValue ninv = ops.inv(norm);
    return Scalar(field_, ops.mul(re_, ninv), ops.neg(ops.mul(im_, ninv)));
}

Scalar Scalar::pow(long long e) const {
    Scalar base = e < 0 ? inverse() : *this;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1 : static_cast<unsigned long long>(e);
    Scalar r = field_->one();
    while (k) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

bool Scalar::operator==(const Scalar& o) const {
    require_same(o);
    BaseOps ops{field_->base()};
    return ops.eq(re_, o.re_) && ops.eq(im_, o.im_);
}

std::strong_ordering Scalar::operator<=>(const Scalar& o) const {
    require_same(o);
    BaseOps ops{field_->base()};
    int c = ops.cmp(re_, o.re_);
    if (c == 0) c = ops.cmp(im_, o.im_);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Scalar Scalar::lift(const Field& ext) const {
    if (&ext == field_) return *this;
    if (ext.kind() != FieldKind::Quadratic || &ext.base() != field_)
        throw InvalidArgument("cannot lift " + field_->describe() + " into " + ext.describe());
    return Scalar(&ext, re_, BaseOps{ext.base()}.zero());
}

std::optional<Scalar> Scalar::sqrt() const {
    BaseOps ops{field_->base()};
    if (field_->kind() != FieldKind::Quadratic) {
        auto r = ops.sqrt(re_);
        if (!r) return std::nullopt;
        return Scalar(field_, *r, ops.zero());
    }
    // (x + y s)^2 = a + b s with s^2 = D: x^2 + D y^2 = a, 2 x y = b.
    const BaseValue& D = field_->discriminant();
    if (ops.is_zero(im_)) {
        if (auto x = ops.sqrt(re_)) return Scalar(field_, *x, ops.zero());
        if (auto y = ops.sqrt(ops.mul(re_, ops.inv(D)))) return Scalar(field_, ops.zero(), *y);
        return std::nullopt;
    }
    auto n = ops.sqrt(ops.sub(ops.mul(re_, re_), ops.mul(D, ops.mul(im_, im_))));
    if (!n) return std::nullopt;
    BaseValue half = ops.inv(ops.from_int(2));
    for (const BaseValue& cand : {ops.add(re_, *n), ops.sub(re_, *n)}) {
        auto x = ops.sqrt(ops.mul(cand, half));
        if (!x || ops.is_zero(*x)) continue;
        BaseValue y = ops.mul(im_, ops.inv(ops.mul(ops.from_int(2), *x)));
        return Scalar(field_, *x, y);
    }
    return std::nullopt;
}

std::optional<std::uint64_t> Scalar::multiplicative_order(std::uint64_t cap) const {
    if (!field_->is_finite()) {
        // Over Q only +-1 have finite order.
        if (is_one()) return 1;
        if (*this == -field_->one()) return 2;
        return std::nullopt;
    }
    if (is_zero()) return 0;
    Scalar x = *this;
    for (std::uint64_t k = 1; k <= cap; ++k) {
        if (x.is_one()) return k;
        x *= *this;
    }
    return std::nullopt;
}

std::string Scalar::to_string() const {
    BaseOps ops{field_->base()};
    if (field_->kind() != FieldKind::Quadratic || ops.is_zero(im_)) return ops.str(re_);
    std::string root = "sqrt(" + ops.str(field_->discriminant()) + ")";
    std::string imag = ops.str(im_) + "*" + root;
    if (ops.is_zero(re_)) return imag;
    if (ops.is_negative_rational(im_)) return ops.str(re_) + imag;
    return ops.str(re_) + "+" + imag;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace tdpair
