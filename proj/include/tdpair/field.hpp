#pragma once

// Exact scalars over Q, GF(p), and quadratic extensions F(sqrt(D)).
//
// Fields are interned: Field::rational(), Field::prime(p) and
// Field::quadratic(base, D) always return the same object for the same
// arguments, so fields compare by address. Scalars carry a pointer to their
// field and are plain values.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace tdpair {

// One coordinate: a residue in [0, p) or a reduced rational.
using BaseValue = std::variant<std::uint64_t, mpq_class>;

enum class FieldKind { Rational, Prime, Quadratic };

class Scalar;

class Field {
public:
    static const Field& rational();
    // Throws InvalidArgument unless p is a prime below 2^62.
    static const Field& prime(std::uint64_t p);
    // F(sqrt(D)) over a rational or prime base. D must be a non-square in base.
    static const Field& quadratic(const Field& base, const Scalar& discriminant);

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

    FieldKind kind() const noexcept { return kind_; }
    std::uint64_t characteristic() const noexcept { return modulus_; }
    bool is_finite() const noexcept { return modulus_ != 0; }
    // p for GF(p), p^2 for GF(p^2); zero in characteristic 0.
    mpz_class order() const;
    // Base field of a quadratic extension; *this otherwise.
    const Field& base() const noexcept { return base_ ? *base_ : *this; }
    const BaseValue& discriminant() const noexcept { return disc_; }

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(long long v) const;
    Scalar from_mpz(const mpz_class& v) const;
    // Maps num/den into the field; throws if den vanishes in the field.
    Scalar from_rational(const mpq_class& v) const;

    std::string describe() const;

    bool operator==(const Field& other) const noexcept { return this == &other; }

private:
    friend class FieldRegistry;
    Field(FieldKind kind, std::uint64_t modulus, const Field* base, BaseValue disc)
        : kind_(kind), modulus_(modulus), base_(base), disc_(std::move(disc)) {}

    FieldKind kind_;
    std::uint64_t modulus_;
    const Field* base_;
    BaseValue disc_;
};

class Scalar {
public:
    // Zero in Q.
    Scalar();
    Scalar(const Field& f, long long v);

    static Scalar from_coords(const Field& f, BaseValue re, BaseValue im);
    // Strict mode accepts "a", "-a", "a/b" over Q and residues in [0, p) over
    // GF(p). Lenient mode also accepts any signed integer over GF(p).
    static Scalar parse(const Field& f, std::string_view text, bool strict = true);

    const Field& field() const noexcept { return *field_; }
    const BaseValue& re() const noexcept { return re_; }
    const BaseValue& im() const noexcept { return im_; }
    const mpq_class& rational() const;  // Rational fields only.
    std::uint64_t residue() const;      // Prime fields only.

    bool is_zero() const;
    bool is_one() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar inverse() const;
    Scalar pow(long long e) const;

    // Fields must match; throws otherwise.
    bool operator==(const Scalar& o) const;
    // Total order used for canonical sorting: numeric over Q, residue order
    // over GF(p), lexicographic on (re, im) over extensions.
    std::strong_ordering operator<=>(const Scalar& o) const;

    // Embeds a base-field element into a quadratic extension of that base.
    Scalar lift(const Field& ext) const;
    // A square root inside the same field, if one exists. Over Q the
    // non-negative root is returned; over GF(p) the smaller residue.
    std::optional<Scalar> sqrt() const;
    // Multiplicative order over a finite field (0 for zero); nullopt when the
    // order is infinite or exceeds the cap.
    std::optional<std::uint64_t> multiplicative_order(std::uint64_t cap = 1u << 20) const;

    std::string to_string() const;

private:
    Scalar(const Field* f, BaseValue re, BaseValue im)
        : field_(f), re_(std::move(re)), im_(std::move(im)) {}
    void require_same(const Scalar& o) const;

    const Field* field_;
    BaseValue re_;
    BaseValue im_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

bool is_prime(std::uint64_t n);

}  // namespace tdpair
