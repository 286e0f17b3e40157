#include "tdpair/polynomial.hpp"

#include <sstream>

#include "tdpair/errors.hpp"

namespace tdpair {

Polynomial::Polynomial(const Field& f, std::vector<Scalar> coeffs) : field_(&f), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_)
        if (c.field() != f) throw InvalidArgument("polynomial coefficient outside " + f.describe());
    trim();
}

Polynomial Polynomial::monomial(const Field& f, const Scalar& c, std::size_t degree) {
    std::vector<Scalar> cs(degree + 1, f.zero());
    cs[degree] = c;
    return Polynomial(f, std::move(cs));
}

Polynomial Polynomial::linear(const Scalar& root) {
    const Field& f = root.field();
    return Polynomial(f, {-root, f.one()});
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Scalar Polynomial::coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : field_->zero(); }

Scalar Polynomial::leading() const {
    if (is_zero()) throw InvalidArgument("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

Scalar Polynomial::operator()(const Scalar& x) const {
    Scalar acc = field_->zero();
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    std::vector<Scalar> cs;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) cs.push_back(coeffs_[i] * field_->from_int(static_cast<long long>(i)));
    return Polynomial(*field_, std::move(cs));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    return *this * leading().inverse();
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (field_ != o.field_) throw InvalidArgument("polynomial field mismatch");
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), field_->zero());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (field_ != o.field_) throw InvalidArgument("polynomial field mismatch");
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), field_->zero());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.field_ != b.field_) throw InvalidArgument("polynomial field mismatch");
    if (a.is_zero() || b.is_zero()) return Polynomial(*a.field_);
    std::vector<Scalar> cs(a.coeffs_.size() + b.coeffs_.size() - 1, a.field_->zero());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) cs[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(*a.field_, std::move(cs));
}

Polynomial Polynomial::operator*(const Scalar& s) const {
    std::vector<Scalar> cs = coeffs_;
    for (auto& c : cs) c *= s;
    return Polynomial(*field_, std::move(cs));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw InvalidArgument("polynomial division by zero");
    if (field_ != divisor.field_) throw InvalidArgument("polynomial field mismatch");
    if (degree() < divisor.degree()) return {Polynomial(*field_), *this};
    std::vector<Scalar> rem = coeffs_;
    std::size_t dd = divisor.coeffs_.size() - 1;
    std::vector<Scalar> quot(coeffs_.size() - dd, field_->zero());
    Scalar lead_inv = divisor.leading().inverse();
    for (std::size_t k = quot.size(); k-- > 0;) {
        Scalar c = rem[k + dd] * lead_inv;
        quot[k] = c;
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= c * divisor.coeffs_[j];
    }
    rem.resize(dd, field_->zero());
    return {Polynomial(*field_, std::move(quot)), Polynomial(*field_, std::move(rem))};
}

bool Polynomial::operator==(const Polynomial& o) const { return field_ == o.field_ && coeffs_ == o.coeffs_; }

std::string Polynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const Scalar& c = coeffs_[k];
        if (c.is_zero()) continue;
        std::string s = c.to_string();
        bool negative = field_->kind() == FieldKind::Rational && sgn(c.rational()) < 0;
        if (negative) s = (-c).to_string();
        if (!first) os << (negative ? " - " : " + ");
        else if (negative) os << "-";
        first = false;
        bool unit = s == "1";
        bool compound = s.find_first_of("+-") != std::string::npos && s.front() != '-';
        if (k == 0) {
            os << s;
            continue;
        }
        if (!unit) os << (compound ? "(" + s + ")" : s) << "*";
        os << var;
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

}  // namespace tdpair
