#include "tdpair/recurrence.hpp"

#include "tdpair/errors.hpp"
#include "tdpair/linalg.hpp"

namespace tdpair {

const char* to_string(LevelValue::Status s) {
    switch (s) {
        case LevelValue::Status::Unique: return "Unique";
        case LevelValue::Status::NonUnique: return "NonUnique";
        case LevelValue::Status::Inconsistent: return "Inconsistent";
    }
    return "?";
}

const char* to_string(ClosedFormCase c) {
    switch (c) {
        case ClosedFormCase::QGeneric: return "QGeneric";
        case ClosedFormCase::Beta2: return "Beta2";
        case ClosedFormCase::BetaMinus2: return "BetaMinus2";
        case ClosedFormCase::Char2Beta0: return "Char2Beta0";
    }
    return "?";
}

namespace {

// All values equal -> Unique; no values -> NonUnique with the fallback.
LevelValue constant_level(const std::vector<Scalar>& values, const Scalar& fallback) {
    if (values.empty()) return {LevelValue::Status::NonUnique, fallback};
    for (const auto& v : values)
        if (!(v == values.front())) return {LevelValue::Status::Inconsistent, std::nullopt};
    return {LevelValue::Status::Unique, values.front()};
}

std::vector<Scalar> gamma_terms(const std::vector<Scalar>& th, const Scalar& beta) {
    std::vector<Scalar> out;
    for (std::size_t i = 1; i + 1 < th.size(); ++i) out.push_back(th[i - 1] - beta * th[i] + th[i + 1]);
    return out;
}

std::vector<Scalar> varrho_terms(const std::vector<Scalar>& th, const Scalar& beta, const Scalar& gamma) {
    std::vector<Scalar> out;
    for (std::size_t i = 1; i < th.size(); ++i) {
        const Scalar& x = th[i - 1];
        const Scalar& y = th[i];
        out.push_back(x * x - beta * x * y + y * y - gamma * (x + y));
    }
    return out;
}

LevelValue beta_level(const std::vector<Scalar>& th) {
    const Field& f = th.front().field();
    std::optional<Scalar> beta;
    bool consistent = true;
    std::size_t d = th.size() - 1;
    for (std::size_t i = 2; i + 1 <= d; ++i) {
        Scalar den = th[i - 1] - th[i];
        Scalar num = th[i - 2] - th[i + 1];
        if (den.is_zero()) {
            if (!num.is_zero()) consistent = false;
            continue;
        }
        Scalar b = num / den - f.one();
        if (beta && !(*beta == b)) consistent = false;
        if (!beta) beta = b;
    }
    if (!consistent) return {LevelValue::Status::Inconsistent, std::nullopt};
    if (beta) return {LevelValue::Status::Unique, beta};
    return {LevelValue::Status::NonUnique, std::nullopt};
}

bool all_zero(const std::vector<Scalar>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

}  // namespace

RecurrenceClass classify_sequence(const std::vector<Scalar>& th) {
    if (th.empty()) throw InvalidArgument("classify_sequence: empty sequence");
    const Field& f = th.front().field();
    RecurrenceClass rc;
    rc.d = th.size() - 1;
    std::size_t d = rc.d;
    for (std::size_t i = 1; i <= d; ++i) {
        if (th[i - 1] == th[i]) {
            rc.repeated_consecutive.push_back(i);
            if (i >= 2 && i + 1 <= d) rc.distinct_where_required = false;
        }
    }
    bool ratio_constant = true;
    if (d >= 3) {
        for (std::size_t i = 2; i + 1 <= d; ++i) {
            Scalar den = th[i - 1] - th[i];
            if (den.is_zero()) {
                ratio_constant = false;
                break;
            }
            Scalar r = (th[i - 2] - th[i + 1]) / den;
            if (rc.ratio && !(*rc.ratio == r)) ratio_constant = false;
            if (!rc.ratio) rc.ratio = r;
        }
        if (!ratio_constant) rc.ratio.reset();
    }
    rc.is_recurrent = rc.distinct_where_required && ratio_constant;

    rc.beta = beta_level(th);
    if (rc.beta.status == LevelValue::Status::NonUnique) {
        // Prefer beta = 2 with gamma = 0 when the sequence allows it.
        Scalar two = f.from_int(2);
        rc.beta.value = all_zero(gamma_terms(th, two)) ? two : f.zero();
    }
    if (rc.beta.holds()) {
        rc.gamma = constant_level(gamma_terms(th, *rc.beta.value), f.zero());
        if (rc.gamma.holds()) {
            rc.varrho = constant_level(varrho_terms(th, *rc.beta.value, *rc.gamma.value), f.zero());
            if (rc.gamma.status == LevelValue::Status::NonUnique && rc.varrho.holds())
                rc.varrho.status = LevelValue::Status::NonUnique;
        }
        if (rc.beta.status == LevelValue::Status::NonUnique) {
            if (rc.gamma.holds()) rc.gamma.status = LevelValue::Status::NonUnique;
            if (rc.varrho.holds()) rc.varrho.status = LevelValue::Status::NonUnique;
        }
    }

    if (d == 0) {
        rc.raw_three_term_solvable = true;
    } else {
        Matrix m(f, d, 3);
        Vector rhs;
        for (std::size_t i = 1; i <= d; ++i) {
            const Scalar& x = th[i - 1];
            const Scalar& y = th[i];
            m(i - 1, 0) = -(x * y);
            m(i - 1, 1) = -(x + y);
            m(i - 1, 2) = -f.one();
            rhs.push_back(-(x * x + y * y));
        }
        rc.raw_three_term_solvable = solve(m, rhs).has_value();
    }
    return rc;
}

bool is_beta_recurrent(const std::vector<Scalar>& th, const Scalar& beta) {
    Scalar b1 = beta + beta.field().one();
    for (std::size_t i = 2; i + 1 < th.size(); ++i)
        if (!(th[i - 2] - b1 * th[i - 1] + b1 * th[i] - th[i + 1]).is_zero()) return false;
    return true;
}

bool is_beta_gamma_recurrent(const std::vector<Scalar>& th, const Scalar& beta, const Scalar& gamma) {
    for (const auto& g : gamma_terms(th, beta))
        if (!(g == gamma)) return false;
    return true;
}

bool is_beta_gamma_varrho_recurrent(const std::vector<Scalar>& th, const Scalar& beta, const Scalar& gamma,
                                    const Scalar& varrho) {
    for (const auto& r : varrho_terms(th, beta, gamma))
        if (!(r == varrho)) return false;
    return true;
}

// ---------------------------------------------------------------- closed forms

namespace {

// Strips square factors p^2 for small p; the result differs from the input
// by a rational square, so Q(sqrt(result)) = Q(sqrt(input)).
mpz_class reduce_squares(mpz_class n) {
    for (unsigned long p = 2; p < 100000; ++p) {
        mpz_class p2 = mpz_class(p) * p;
        if (p2 > abs(n)) break;
        while (mpz_divisible_p(n.get_mpz_t(), p2.get_mpz_t())) n /= p2;
    }
    return n;
}

bool char2_binom_parity(std::size_t i) { return (i % 4) >= 2; }

}  // namespace

const Field& splitting_field_for(const Scalar& beta) {
    const Field& f = beta.field();
    Scalar disc = beta * beta - f.from_int(4);
    if (disc.sqrt()) return f;
    switch (f.kind()) {
        case FieldKind::Rational: {
            const mpq_class& q = disc.rational();
            mpz_class n = reduce_squares(q.get_num() * q.get_den());
            return Field::quadratic(f, f.from_mpz(n));
        }
        case FieldKind::Prime:
            if (f.characteristic() == 2) throw Unsupported("quadratic extensions in characteristic 2");
            return Field::quadratic(f, disc);
        case FieldKind::Quadratic:
            break;
    }
    throw Unsupported("towers of quadratic extensions");
}

Scalar ClosedFormFit::evaluate(std::size_t i) const {
    const Field& f = field();
    long long li = static_cast<long long>(i);
    switch (kase) {
        case ClosedFormCase::QGeneric:
            return alpha[0] + alpha[1] * q->pow(li) + alpha[2] * q->pow(-li);
        case ClosedFormCase::Beta2:
            return alpha[0] + alpha[1] * f.from_int(li) + alpha[2] * f.from_int(li * li);
        case ClosedFormCase::BetaMinus2: {
            Scalar sign = f.from_int(i % 2 ? -1 : 1);
            return alpha[0] + alpha[1] * sign + alpha[2] * f.from_int(li) * sign;
        }
        case ClosedFormCase::Char2Beta0:
            return alpha[0] + alpha[1] * f.from_int(li) + alpha[2] * f.from_int(char2_binom_parity(i) ? 1 : 0);
    }
    throw InternalError("unknown closed-form case");
}

namespace {

// Fits alpha against the first three terms (fewer if the sequence is short;
// free coefficients are set to zero) and checks every term.
std::optional<ClosedFormFit> fit_with(ClosedFormFit fit, const std::vector<Scalar>& th) {
    const Field& f = fit.field();
    std::size_t rows = std::min<std::size_t>(3, th.size());
    Matrix m(f, rows, 3);
    Vector rhs;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < 3; ++k) {
            ClosedFormFit unit = fit;
            unit.alpha = {f.zero(), f.zero(), f.zero()};
            unit.alpha[k] = f.one();
            m(i, k) = unit.evaluate(i);
        }
        rhs.push_back(th[i]);
    }
    auto sol = solve(m, rhs);
    if (!sol) return std::nullopt;
    fit.alpha = {(*sol)[0], (*sol)[1], (*sol)[2]};
    for (std::size_t i = 0; i < th.size(); ++i)
        if (!(fit.evaluate(i) == th[i])) return std::nullopt;
    return fit;
}

}  // namespace

ClosedFormFit fit_closed_form(const std::vector<Scalar>& theta, const Scalar& beta) {
    if (theta.empty()) throw InvalidArgument("fit_closed_form: empty sequence");
    const Field& f = theta.front().field();
    if (!is_beta_recurrent(theta, beta)) throw InvalidArgument("sequence is not beta-recurrent for beta = " + beta.to_string());
    Scalar zero = f.zero();
    auto mismatch = [] { return InvalidArgument("closed form does not reproduce the sequence"); };

    if (f.characteristic() == 2) {
        if (!beta.is_zero()) throw Unsupported("characteristic 2 with beta != 0 needs GF(4)");
        auto fit = fit_with({ClosedFormCase::Char2Beta0, std::nullopt, {zero, zero, zero}, false}, theta);
        if (!fit) throw mismatch();
        return *fit;
    }
    if (beta == f.from_int(2)) {
        auto fit = fit_with({ClosedFormCase::Beta2, std::nullopt, {zero, zero, zero}, false}, theta);
        if (!fit) throw mismatch();
        return *fit;
    }
    if (beta == f.from_int(-2)) {
        auto fit = fit_with({ClosedFormCase::BetaMinus2, std::nullopt, {zero, zero, zero}, false}, theta);
        if (!fit) throw mismatch();
        return *fit;
    }

    const Field& k = splitting_field_for(beta);
    bool ext = &k != &f;
    auto lift = [&](const Scalar& x) { return ext ? x.lift(k) : x; };
    Scalar b = lift(beta);
    Scalar s = *(b * b - k.from_int(4)).sqrt();
    Scalar half = k.from_int(2).inverse();
    std::vector<Scalar> th;
    for (const auto& t : theta) th.push_back(lift(t));
    Scalar kz = k.zero();

    std::optional<ClosedFormFit> best;
    for (const Scalar& q : {(b + s) * half, (b - s) * half}) {
        auto fit = fit_with({ClosedFormCase::QGeneric, q, {kz, kz, kz}, ext}, th);
        if (!fit) continue;
        if (!best) {
            best = fit;
            continue;
        }
        bool cur_nz = !best->alpha[1].is_zero(), new_nz = !fit->alpha[1].is_zero();
        if (new_nz != cur_nz) {
            if (new_nz) best = fit;
        } else if (*fit->q < *best->q) {
            best = fit;
        }
    }
    if (!best) throw mismatch();
    return *best;
}

bool field_constraints_check(const ClosedFormFit& fit, std::size_t d, std::uint64_t ch) {
    switch (fit.kase) {
        case ClosedFormCase::QGeneric:
            for (std::size_t i = 1; i <= d; ++i)
                if (fit.q->pow(static_cast<long long>(i)).is_one()) return false;
            return true;
        case ClosedFormCase::Beta2:
            return ch == 0 || ch > d;
        case ClosedFormCase::BetaMinus2:
            return ch == 0 || 2 * ch > d;
        case ClosedFormCase::Char2Beta0:
            return d <= 3;
    }
    return false;
}

// ---------------------------------------------------------------- parameters

ParameterSet derive_parameters(const std::vector<Scalar>& th, const std::vector<Scalar>& ts) {
    if (th.empty() || th.size() != ts.size())
        throw InvalidArgument("derive_parameters: sequences must be nonempty and of equal length");
    const Field& f = th.front().field();
    std::size_t d = th.size() - 1;
    if (d >= 3) {
        RecurrenceClass a = classify_sequence(th), b = classify_sequence(ts);
        if (!a.is_recurrent || !b.is_recurrent || a.beta.status != LevelValue::Status::Unique ||
            b.beta.status != LevelValue::Status::Unique)
            throw InternalError("eigenvalue sequences are not recurrent");
        if (!(*a.beta.value == *b.beta.value))
            throw InternalError("eigenvalue and dual eigenvalue sequences give different beta (" +
                                a.beta.value->to_string() + " vs " + b.beta.value->to_string() + ")");
        for (const LevelValue* l : {&a.gamma, &a.varrho, &b.gamma, &b.varrho})
            if (l->status != LevelValue::Status::Unique) throw InternalError("gamma or varrho depends on i");
        return {*a.beta.value, *a.gamma.value, *b.gamma.value, *a.varrho.value, *b.varrho.value, true};
    }
    Scalar two = f.from_int(2);
    auto gamma_at = [&](const std::vector<Scalar>& s, const Scalar& beta) {
        auto g = gamma_terms(s, beta);
        return g.empty() ? f.zero() : g.front();
    };
    Scalar beta = f.zero();
    if (gamma_at(th, two).is_zero() && gamma_at(ts, two).is_zero()) beta = two;
    Scalar g = gamma_at(th, beta), gs = gamma_at(ts, beta);
    auto varrho_at = [&](const std::vector<Scalar>& s, const Scalar& gamma) {
        auto r = varrho_terms(s, beta, gamma);
        return r.empty() ? f.zero() : r.front();
    };
    return {beta, g, gs, varrho_at(th, g), varrho_at(ts, gs), false};
}

ParameterSet derive_parameters(const TDSystem& phi) { return derive_parameters(phi.theta(), phi.theta_star()); }

}  // namespace tdpair
