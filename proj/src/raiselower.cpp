#include "tdpair/raiselower.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include "tdpair/errors.hpp"

namespace tdpair {

std::vector<Scalar> epsilon_sequence(const std::vector<Scalar>& th, const std::vector<Scalar>& ts) {
    std::vector<Scalar> eps;
    for (std::size_t i = 0; i + 2 < th.size(); ++i)
        eps.push_back((th[i] - th[i + 2]) * (ts[i + 1] - ts[i + 2]) - (ts[i + 2] - ts[i]) * (th[i + 1] - th[i]));
    return eps;
}

bool check_rl_structure(const RaiseLowerData& rl) {
    const auto& sp = rl.sp;
    std::size_t d = sp.phi.d();
    std::size_t n = sp.phi.dim();
    const Field& fld = sp.phi.field();
    for (std::size_t i = 0; i <= d; ++i) {
        Subspace ru = sp.u[i].mapped_by(rl.r);
        if (i == d ? !ru.is_zero() : !sp.u[i + 1].contains(ru)) return false;
        Subspace lu = sp.u[i].mapped_by(rl.l);
        if (i == 0 ? !lu.is_zero() : !sp.u[i - 1].contains(lu)) return false;
        Matrix rf = rl.r * sp.f[i];
        if (i == d ? !rf.is_zero() : !(rf == sp.f[i + 1] * rl.r)) return false;
        Matrix lf = rl.l * sp.f[i];
        if (i == 0 ? !lf.is_zero() : !(lf == sp.f[i - 1] * rl.l)) return false;
    }
    if (!rl.r.pow(static_cast<unsigned>(d + 1)).is_zero() || !rl.l.pow(static_cast<unsigned>(d + 1)).is_zero())
        return false;
    std::vector<Matrix> rp{Matrix::identity(fld, n)}, lp{Matrix::identity(fld, n)};
    for (std::size_t k = 1; k <= d; ++k) {
        rp.push_back(rp.back() * rl.r);
        lp.push_back(lp.back() * rl.l);
    }
    for (std::size_t i = 0; i <= d; ++i)
        for (std::size_t j = i; j <= d; ++j) {
            if ((rp[j - i] * sp.f[i]).is_zero()) return false;
            if ((lp[j - i] * sp.f[j]).is_zero()) return false;
        }
    return true;
}

RaiseLowerData build_rl(const SplitData& sp) {
    const TDSystem& phi = sp.phi;
    Matrix r = phi.a, l = phi.a_star;
    auto th = phi.theta();
    auto ts = phi.theta_star();
    for (std::size_t h = 0; h <= phi.d(); ++h) {
        r -= sp.f[h] * th[h];
        l -= sp.f[h] * ts[h];
    }
    RaiseLowerData rl{sp, std::move(r), std::move(l), epsilon_sequence(th, ts)};
    if (!check_rl_structure(rl)) throw InternalError("raising/lowering maps violate their structural identities");
    return rl;
}

std::vector<RankProfileEntry> rank_profile(const RaiseLowerData& rl) {
    const auto& sp = rl.sp;
    std::size_t d = sp.phi.d();
    std::vector<RankProfileEntry> out;
    for (std::size_t i = 0; i <= d; ++i) {
        for (std::size_t j = i; j <= d; ++j) {
            unsigned e = static_cast<unsigned>(j - i);
            Matrix rp = rl.r.pow(e), lp = rl.l.pow(e);
            std::size_t rr = sp.u[i].mapped_by(rp).dim();
            std::size_t lr = sp.u[j].mapped_by(lp).dim();
            out.push_back({i, j, rr, lr, rr == sp.u[i].dim(), rr == sp.u[j].dim(), lr == sp.u[j].dim(),
                           lr == sp.u[i].dim()});
        }
    }
    return out;
}

bool rank_profile_matches(const std::vector<RankProfileEntry>& profile, std::size_t d) {
    for (const auto& e : profile) {
        std::size_t s = e.i + e.j;
        if (s <= d && !(e.r_injective && e.l_surjective)) return false;
        if (s >= d && !(e.r_surjective && e.l_injective)) return false;
    }
    return true;
}

// ---------------------------------------------------------------- rewriting

std::vector<std::string> RLExpression::ordered_words() const {
    std::vector<std::string> words;
    for (const auto& [w, c] : terms) words.push_back(w);
    std::sort(words.begin(), words.end(), [](const std::string& a, const std::string& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    return words;
}

namespace {

std::string render_symbol(const ThetaSymbol& s) {
    return std::string(s.star ? "θ*_" : "θ_") + std::to_string(s.index);
}

std::string render_monomial(const SymMonomial& m) {
    std::string out;
    for (const auto& s : m) out += render_symbol(s);
    return out;
}

// Monomials rendered highest index first, so "θ_2θ*_2 + θ_1θ*_1".
std::vector<std::pair<SymMonomial, long long>> ordered_monomials(const SymCoefficient& c) {
    std::vector<std::pair<SymMonomial, long long>> v(c.begin(), c.end());
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
        auto key = [](const SymMonomial& m) {
            std::vector<std::pair<std::size_t, bool>> k;
            for (const auto& s : m) k.emplace_back(s.index, s.star);
            std::sort(k.rbegin(), k.rend());
            return k;
        };
        auto kx = key(x.first), ky = key(y.first);
        if (x.first.size() != y.first.size()) return x.first.size() > y.first.size();
        return kx > ky;
    });
    return v;
}

std::string render_coefficient(const SymCoefficient& c) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, k] : ordered_monomials(c)) {
        long long mag = k < 0 ? -k : k;
        if (first) {
            if (k < 0) os << "-";
        } else {
            os << (k < 0 ? " - " : " + ");
        }
        first = false;
        if (m.empty()) {
            os << mag;
        } else {
            if (mag != 1) os << mag;
            os << render_monomial(m);
        }
    }
    return os.str();
}

}  // namespace

std::string RLExpression::render() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& w : ordered_words()) {
        const SymCoefficient& c = terms.at(w);
        if (!first) os << " + ";
        first = false;
        bool unit = c.size() == 1 && c.begin()->first.empty() && c.begin()->second == 1;
        std::string word = w.empty() ? "1" : w;
        if (unit) {
            os << word;
            continue;
        }
        std::string coeff = render_coefficient(c);
        bool single = c.size() == 1 && c.begin()->second == 1;
        os << (single ? coeff : "(" + coeff + ")");
        if (!w.empty()) os << "·" << w;
    }
    return os.str();
}

std::map<std::string, Scalar> RLExpression::instantiate(const std::vector<Scalar>& theta,
                                                        const std::vector<Scalar>& theta_star) const {
    if (theta.empty()) throw InvalidArgument("instantiate: empty eigenvalue sequence");
    const Field& f = theta.front().field();
    std::map<std::string, Scalar> out;
    for (const auto& [w, c] : terms) {
        Scalar total = f.zero();
        for (const auto& [m, k] : c) {
            Scalar prod = f.from_int(k);
            for (const auto& s : m) {
                const auto& seq = s.star ? theta_star : theta;
                if (s.index >= seq.size()) throw InvalidArgument("instantiate: symbol index out of range");
                prod *= seq[s.index];
            }
            total += prod;
        }
        if (!total.is_zero()) out.emplace(w, total);
    }
    return out;
}

Matrix RLExpression::evaluate(const RaiseLowerData& rl) const {
    const TDSystem& phi = rl.sp.phi;
    const Field& f = phi.field();
    std::size_t n = phi.dim();
    Matrix out(f, n, n);
    for (const auto& [w, c] : instantiate(phi.theta(), phi.theta_star())) {
        Matrix m = rl.sp.f.at(s_index);
        for (auto it = w.rbegin(); it != w.rend(); ++it) m = (*it == 'R' ? rl.r : rl.l) * m;
        out += m * c;
    }
    return out;
}

namespace {

void expand(const std::vector<Letter>& word, std::size_t pos, long cur, long s, long d, std::string& letters,
            SymMonomial& mono, std::map<std::string, SymCoefficient>& terms) {
    if (pos == word.size()) {
        if (cur != s) return;
        SymMonomial m = mono;
        std::sort(m.begin(), m.end());
        auto& coef = terms[letters];
        if (++coef[m] == 0) coef.erase(m);
        return;
    }
    long remaining = static_cast<long>(word.size() - pos);
    if (std::abs(s - cur) > remaining) return;
    bool is_a = word[pos] == Letter::A;
    for (long step : {0L, is_a ? -1L : 1L}) {
        long next = cur + step;
        if (next < 0 || next > d) continue;
        if (step == 0) {
            mono.push_back({!is_a, static_cast<std::size_t>(next)});
            expand(word, pos + 1, next, s, d, letters, mono, terms);
            mono.pop_back();
        } else {
            letters.push_back(is_a ? 'R' : 'L');
            expand(word, pos + 1, next, s, d, letters, mono, terms);
            letters.pop_back();
        }
    }
}

}  // namespace

RLExpression rewrite_word(const std::vector<Letter>& word, std::size_t r, std::size_t s, std::size_t d) {
    if (r > d || s > d) throw InvalidArgument("rewrite_word: index out of range [0, d]");
    RLExpression e{s, {}};
    std::string letters;
    SymMonomial mono;
    expand(word, 0, static_cast<long>(r), static_cast<long>(s), static_cast<long>(d), letters, mono, e.terms);
    for (auto it = e.terms.begin(); it != e.terms.end();) it = it->second.empty() ? e.terms.erase(it) : std::next(it);
    return e;
}

std::vector<Letter> parse_word(const std::string& text) {
    std::vector<Letter> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); }), tok.end());
        if (tok == "A") out.push_back(Letter::A);
        else if (tok == "A*") out.push_back(Letter::AStar);
        else throw ParseError("word token '" + tok + "' is neither A nor A*");
    }
    return out;
}

Matrix word_product(const RaiseLowerData& rl, const std::vector<Letter>& word, std::size_t r, std::size_t s) {
    const auto& sp = rl.sp;
    Matrix m = sp.f.at(r);
    for (Letter b : word) m = m * (b == Letter::A ? sp.phi.a : sp.phi.a_star);
    return m * sp.f.at(s);
}

// ---------------------------------------------------------------- relations

bool check_cubic_vanishing(const RaiseLowerData& rl, const Scalar& beta, const std::vector<Scalar>& epsilon) {
    const auto& sp = rl.sp;
    std::size_t d = sp.phi.d();
    if (d < 2) return true;
    if (epsilon.size() < d - 1) throw InvalidArgument("check_cubic_vanishing: need d-1 epsilon values");
    const Matrix& r = rl.r;
    const Matrix& l = rl.l;
    Scalar b1 = beta + beta.field().one();
    Matrix r2 = r * r, l2 = l * l;
    Matrix x = r2 * r * l - (r2 * l * r) * b1 + (r * l * r2) * b1 - l * r2 * r;
    Matrix y = r * l2 * l - (l * r * l2) * b1 + (l2 * r * l) * b1 - l2 * l * r;
    for (std::size_t i = 0; i + 2 <= d; ++i) {
        Matrix xi = x + r2 * (b1 * epsilon[i]);
        Matrix yi = y + l2 * (b1 * epsilon[i]);
        if (!(xi * sp.f[i]).is_zero()) return false;
        if (!(yi * sp.f[i + 2]).is_zero()) return false;
    }
    return true;
}

bool check_cubic_vanishing(const RaiseLowerData& rl, const Scalar& beta) {
    return check_cubic_vanishing(rl, beta, rl.epsilon);
}

bool check_quantum_serre_rl(const RaiseLowerData& rl, const Scalar& q) {
    Scalar b = q + q.inverse();
    const Matrix& r = rl.r;
    const Matrix& l = rl.l;
    Matrix inner_r = r * r * l - r * l * r * b + l * r * r;
    Matrix inner_l = l * l * r - l * r * l * b + r * l * l;
    return commutator(r, inner_r).is_zero() && commutator(l, inner_l).is_zero();
}

}  // namespace tdpair
