#include "tdpair/generators.hpp"

#include <algorithm>
#include <cstdlib>

#include <omp.h>

#include "tdpair/errors.hpp"

namespace tdpair {

Sl2Spec::Sl2Spec(std::size_t d_)
    : d(d_),
      a_scale(Field::rational().one()),
      c_e(Field::rational().one()),
      c_f(Field::rational().one()),
      c_h(Field::rational().zero()) {}

std::pair<Matrix, Matrix> sl2_module(const Sl2Spec& spec) {
    const Field& q = Field::rational();
    for (const Scalar* s : {&spec.a_scale, &spec.c_e, &spec.c_f, &spec.c_h})
        if (s->field() != q) throw InvalidArgument("sl2_module: coefficients must be rational");
    if (spec.a_scale.is_zero()) throw InvalidArgument("sl2_module: a_scale must be nonzero");
    if (spec.c_e.is_zero() || spec.c_f.is_zero()) throw InvalidArgument("sl2_module: c_e and c_f must be nonzero");
    std::size_t n = spec.d + 1;
    long long d = static_cast<long long>(spec.d);
    Matrix h(q, n, n), e(q, n, n), f(q, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        long long ii = static_cast<long long>(i);
        h(i, i) = q.from_int(d - 2 * ii);
        if (i + 1 < n) f(i + 1, i) = q.from_int(ii + 1);  // f v_i = (i+1) v_{i+1}
        if (i >= 1) e(i - 1, i) = q.from_int(d - ii + 1);  // e v_i = (d-i+1) v_{i-1}
    }
    return {h * spec.a_scale, e * spec.c_e + f * spec.c_f + h * spec.c_h};
}

std::pair<Matrix, Matrix> conjugate_pair(const Matrix& a, const Matrix& a_star, const Matrix& p) {
    auto pinv = try_inverse(p);
    if (!pinv) throw InvalidArgument("conjugate_pair: p is singular");
    return {p * a * *pinv, p * a_star * *pinv};
}

namespace {

Scalar random_element(const Field& f, std::mt19937_64& rng) {
    if (f.is_finite()) {
        std::uniform_int_distribution<std::uint64_t> dist(0, f.characteristic() - 1);
        return f.from_int(static_cast<long long>(dist(rng)));
    }
    std::uniform_int_distribution<int> dist(-3, 3);
    return f.from_int(dist(rng));
}

Scalar random_nonzero(const Field& f, std::mt19937_64& rng) {
    for (;;) {
        Scalar s = random_element(f, rng);
        if (!s.is_zero()) return s;
    }
}

}  // namespace

Matrix random_invertible(const Field& f, std::size_t n, std::mt19937_64& rng) {
    for (;;) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = random_element(f, rng);
        if (rank(m) == n) return m;
    }
}

std::pair<Matrix, Matrix> qform_instance(std::uint64_t p_prime, std::size_t d, long long q, long long a, long long b,
                                         long long a_star, long long c_star) {
    const Field& f = Field::prime(p_prime);
    Scalar qs = f.from_int(q);
    if (qs.is_zero()) throw InvalidArgument("qform_instance: q must be nonzero");
    auto ord = qs.multiplicative_order();
    if (!ord || *ord <= d) throw InvalidArgument("qform_instance: multiplicative order of q must exceed d");
    Scalar bs = f.from_int(b), cs = f.from_int(c_star);
    if (bs.is_zero() || cs.is_zero()) throw InvalidArgument("qform_instance: b and c* must be nonzero");
    std::size_t n = d + 1;
    Matrix am(f, n, n), asm_(f, n, n);
    Scalar qi = qs.inverse(), qp = f.one(), qn = f.one();
    for (std::size_t i = 0; i < n; ++i) {
        am(i, i) = f.from_int(a) + bs * qp;
        asm_(i, i) = f.from_int(a_star) + cs * qn;
        if (i + 1 < n) asm_(i, i + 1) = asm_(i + 1, i) = f.one();
        qp *= qs;
        qn *= qi;
    }
    return {am, asm_};
}

std::pair<Matrix, Matrix> split_form_pair(const std::vector<Scalar>& theta, const std::vector<Scalar>& theta_star,
                                          const std::vector<Scalar>& phi) {
    if (theta.empty() || theta.size() != theta_star.size() || phi.size() + 1 != theta.size())
        throw InvalidArgument("split_form_pair: need d+1 eigenvalues of each kind and d off-diagonal values");
    const Field& f = theta.front().field();
    std::size_t n = theta.size();
    Matrix a(f, n, n), as(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = theta[i];
        as(i, i) = theta_star[i];
        if (i + 1 < n) {
            a(i + 1, i) = f.one();
            as(i, i + 1) = phi[i];
        }
    }
    return {a, as};
}

std::size_t max_dim_from_env() {
    if (const char* s = std::getenv("TDPAIR_MAX_DIM")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(s, &end, 10);
        if (end != s && *end == '\0' && v > 0) return v;
    }
    return 64;
}

void ScanConfig::validate() const {
    if (!is_prime(p)) throw InvalidArgument("scan: p must be prime");
    if (n == 0) throw InvalidArgument("scan: n must be positive");
    if (n > max_dim_from_env()) throw InvalidArgument("scan: n exceeds TDPAIR_MAX_DIM");
    if (trials == 0) throw InvalidArgument("scan: trials must be positive");
    if (mode == ScanMode::QFormInstances) {
        Scalar qs = Field::prime(p).from_int(q);
        auto ord = qs.is_zero() ? std::nullopt : qs.multiplicative_order();
        if (!ord || *ord <= n) throw InvalidArgument("scan: multiplicative order of q must exceed n");
    }
}

bool ScanInstance::all_checks_pass() const {
    if (pipeline_error) return false;
    for (const auto& a : analyses)
        if (!a.all_checks_pass()) return false;
    return true;
}

bool ScanInstance::conjecture_failure() const {
    for (const auto& a : analyses)
        if (!a.conjectures.all_hold()) return true;
    return false;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    // splitmix64 finalizer over a seed/trial mix
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

// Diagonal with random distinct eigenvalues in random contiguous blocks and a
// random matrix that is block-tridiagonal for those blocks.
std::pair<Matrix, Matrix> random_block_candidate(const Field& f, std::size_t n, std::mt19937_64& rng) {
    std::size_t max_k = std::min<std::uint64_t>(n, f.characteristic());
    std::size_t k = std::uniform_int_distribution<std::size_t>(1, max_k)(rng);
    std::vector<std::uint64_t> values(f.characteristic());
    for (std::uint64_t i = 0; i < values.size(); ++i) values[i] = i;
    std::shuffle(values.begin(), values.end(), rng);
    values.resize(k);
    std::sort(values.begin(), values.end());
    // Block sizes: a random composition of n into k parts.
    std::vector<std::size_t> cuts(n - 1);
    for (std::size_t i = 0; i < cuts.size(); ++i) cuts[i] = i + 1;
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(k - 1);
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(n);
    std::vector<std::size_t> block(n);
    std::size_t start = 0;
    for (std::size_t b = 0; b < k; ++b) {
        for (std::size_t i = start; i < cuts[b]; ++i) block[i] = b;
        start = cuts[b];
    }
    Matrix d(f, n, n), t(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        d(i, i) = f.from_int(static_cast<long long>(values[block[i]]));
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t gap = block[i] > block[j] ? block[i] - block[j] : block[j] - block[i];
            if (gap <= 1) t(i, j) = random_element(f, rng);
        }
    }
    return {d, t};
}

std::pair<Matrix, Matrix> qform_candidate(const Field& f, std::size_t n, long long q, std::mt19937_64& rng) {
    Scalar qs = f.from_int(q), qi = qs.inverse();
    Scalar a = random_element(f, rng), b = random_nonzero(f, rng);
    Scalar as = random_element(f, rng), cs = random_nonzero(f, rng);
    std::vector<Scalar> theta, theta_star, phi;
    Scalar qp = f.one(), qn = f.one();
    for (std::size_t i = 0; i < n; ++i) {
        theta.push_back(a + b * qp);
        theta_star.push_back(as + cs * qn);
        qp *= qs;
        qn *= qi;
        if (i + 1 < n) phi.push_back(random_nonzero(f, rng));
    }
    return split_form_pair(theta, theta_star, phi);
}

struct TrialOutcome {
    bool diagonalizable = false;
    bool path_ordered = false;
    bool irreducible = false;
    bool inconclusive = false;
    bool error = false;
    std::optional<ScanInstance> instance;
    std::optional<GeneralizedWitness> generalized;
};

TrialOutcome run_trial(const ScanConfig& config, std::uint64_t trial) {
    TrialOutcome out;
    auto [a, as] = scan_candidate(config, trial);
    VerificationReport rep;
    try {
        rep = verify_td_pair(a, as);
    } catch (const Error&) {
        out.error = true;
        return out;
    }
    switch (rep.failure_reason) {
        case FailureReason::None:
            out.diagonalizable = out.path_ordered = out.irreducible = true;
            break;
        case FailureReason::Reducible:
            out.diagonalizable = out.path_ordered = true;
            break;
        case FailureReason::Inconclusive:
            out.diagonalizable = out.path_ordered = out.inconclusive = true;
            break;
        case FailureReason::NoTridiagonalOrderingA:
        case FailureReason::NoTridiagonalOrderingAStar:
            out.diagonalizable = true;
            break;
        default:
            break;
    }
    if (!out.diagonalizable) {
        // Irreducible pairs satisfying both relations without being TD pairs.
        try {
            RelationSolution sol = solve_relation_parameters(a, as);
            if (sol.particular && is_irreducible(a, as).irreducible)
                out.generalized = GeneralizedWitness{trial, a, as, rep.failure_reason, *sol.particular};
        } catch (const Error&) {
            out.error = true;
        }
    }
    if (!rep.is_td_pair) return out;
    ScanInstance inst{trial, a, as, rep, {}, std::nullopt};
    try {
        for (std::size_t k = 0; k < rep.orderings.size(); ++k)
            inst.analyses.push_back(analyze_ordering(rep.orderings[k], k, config.analysis));
    } catch (const Error& e) {
        inst.pipeline_error = e.what();
    }
    out.instance = std::move(inst);
    return out;
}

ScanResult assemble(const ScanConfig& config, std::vector<TrialOutcome>& outcomes) {
    ScanResult res{config, {}, {}, {}};
    ScanSummary& s = res.summary;
    for (auto& o : outcomes) {
        ++s.candidates;
        s.diagonalizable += o.diagonalizable;
        s.path_ordered += o.path_ordered;
        s.irreducible += o.irreducible;
        s.inconclusive += o.inconclusive;
        s.trial_errors += o.error;
        if (o.generalized) {
            ++s.generalized_non_td;
            res.generalized.push_back(std::move(*o.generalized));
        }
        if (!o.instance) continue;
        ScanInstance& inst = *o.instance;
        ++s.accepted;
        const auto& rho = inst.analyses.empty() ? std::vector<std::size_t>{} : inst.analyses.front().rl.sp.rho;
        bool thin = std::all_of(rho.begin(), rho.end(), [](std::size_t r) { return r == 1; });
        (thin ? s.thin : s.non_thin) += 1;
        if (inst.pipeline_error) ++s.pipeline_errors;
        if (!inst.all_checks_pass()) ++s.check_failures;
        if (inst.conjecture_failure()) ++s.conjecture_failures;
        res.accepted.push_back(std::move(inst));
    }
    return res;
}

int scan_threads(const ScanConfig& config) {
    if (config.threads > 0) return config.threads;
    if (const char* s = std::getenv("TDPAIR_THREADS")) {
        int v = std::atoi(s);
        if (v > 0) return v;
    }
    return omp_get_max_threads();
}

}  // namespace

std::pair<Matrix, Matrix> scan_candidate(const ScanConfig& config, std::uint64_t trial) {
    const Field& f = Field::prime(config.p);
    std::mt19937_64 rng(trial_seed(config.seed, trial));
    auto [x, y] = config.mode == ScanMode::QFormInstances ? qform_candidate(f, config.n, config.q, rng)
                                                          : random_block_candidate(f, config.n, rng);
    Matrix p = random_invertible(f, config.n, rng);
    return conjugate_pair(x, y, p);
}

ScanResult scan(const ScanConfig& config) {
    config.validate();
    std::vector<TrialOutcome> outcomes(config.trials);
    const long long trials = static_cast<long long>(config.trials);
    // Fields are interned lazily; create the one we need before going parallel.
    (void)Field::prime(config.p);
#pragma omp parallel for schedule(dynamic, 16) num_threads(scan_threads(config))
    for (long long t = 0; t < trials; ++t) outcomes[t] = run_trial(config, static_cast<std::uint64_t>(t));
    return assemble(config, outcomes);
}

ScanResult scan_serial(const ScanConfig& config) {
    config.validate();
    std::vector<TrialOutcome> outcomes;
    outcomes.reserve(config.trials);
    for (std::uint64_t t = 0; t < config.trials; ++t) outcomes.push_back(run_trial(config, t));
    return assemble(config, outcomes);
}

}  // namespace tdpair
