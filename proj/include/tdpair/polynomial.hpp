#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tdpair/field.hpp"

namespace tdpair {

// Univariate polynomial, coefficients in ascending degree, no trailing zeros.
class Polynomial {
public:
    explicit Polynomial(const Field& f) : field_(&f) {}
    Polynomial(const Field& f, std::vector<Scalar> coeffs);

    static Polynomial monomial(const Field& f, const Scalar& c, std::size_t degree);
    // x - r
    static Polynomial linear(const Scalar& root);

    const Field& field() const noexcept { return *field_; }
    const std::vector<Scalar>& coefficients() const noexcept { return coeffs_; }
    // -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    Scalar coefficient(std::size_t i) const;
    Scalar leading() const;

    Scalar operator()(const Scalar& x) const;
    Polynomial derivative() const;
    Polynomial monic() const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial operator*(const Scalar& s) const;

    // Quotient and remainder; divisor must be nonzero.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;

    bool operator==(const Polynomial& o) const;

    // Rendered in descending degree, e.g. "x^2 - 3*x + 2".
    std::string to_string(const std::string& var = "x") const;

private:
    void trim();

    const Field* field_;
    std::vector<Scalar> coeffs_;
};

Polynomial gcd(Polynomial a, Polynomial b);

}  // namespace tdpair
