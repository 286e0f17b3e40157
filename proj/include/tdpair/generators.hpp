#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tdpair/analysis.hpp"

namespace tdpair {

// A = a_scale·h and A* = c_e·e + c_f·f + c_h·h on the (d+1)-dimensional sl2
// module with basis v_0..v_d; all coefficients rational.
struct Sl2Spec {
    std::size_t d = 1;
    Scalar a_scale;
    Scalar c_e, c_f, c_h;

    explicit Sl2Spec(std::size_t d_ = 1);
};

// Throws InvalidArgument when a_scale, c_e or c_f is zero or a coefficient is
// not rational.
std::pair<Matrix, Matrix> sl2_module(const Sl2Spec& spec);

// (P A P^-1, P A* P^-1); InvalidArgument when p is singular.
std::pair<Matrix, Matrix> conjugate_pair(const Matrix& a, const Matrix& a_star, const Matrix& p);

// Random invertible matrix with small entries (rationals: integers in [-3, 3]).
Matrix random_invertible(const Field& f, std::size_t n, std::mt19937_64& rng);

// A = diag(a + b q^i), A* tridiagonal with diagonal a* + c* q^-i and ones
// off the diagonal, over GF(p_prime). Throws InvalidArgument unless the
// multiplicative order of q exceeds d and b, c* are nonzero.
std::pair<Matrix, Matrix> qform_instance(std::uint64_t p_prime, std::size_t d, long long q, long long a, long long b,
                                         long long a_star, long long c_star);

// Split-form candidate: A lower bidiagonal with diagonal th_i and ones below,
// A* upper bidiagonal with diagonal th*_i and phi_1..phi_d above.
std::pair<Matrix, Matrix> split_form_pair(const std::vector<Scalar>& theta, const std::vector<Scalar>& theta_star,
                                          const std::vector<Scalar>& phi);

enum class ScanMode { RandomDiagonalizablePairs, QFormInstances };

struct ScanConfig {
    std::uint64_t p = 5;
    std::size_t n = 2;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    ScanMode mode = ScanMode::RandomDiagonalizablePairs;
    long long q = 0;  // QFormInstances only
    // 0: use TDPAIR_THREADS or the OpenMP default.
    int threads = 0;
    AnalysisOptions analysis;

    // Throws InvalidArgument: p prime, n >= 1 and <= TDPAIR_MAX_DIM,
    // trials > 0, q of multiplicative order > n in QFormInstances mode.
    void validate() const;
};

struct ScanInstance {
    std::uint64_t trial = 0;
    Matrix a, a_star;
    VerificationReport verification;
    std::vector<OrderingAnalysis> analyses;
    // Set when the analysis pipeline threw on a verified pair.
    std::optional<std::string> pipeline_error;

    bool all_checks_pass() const;
    bool conjecture_failure() const;
};

// An irreducible pair satisfying both relations that is not a TD pair.
struct GeneralizedWitness {
    std::uint64_t trial = 0;
    Matrix a, a_star;
    FailureReason failure_reason = FailureReason::None;
    ParameterSet params;
};

struct ScanSummary {
    std::uint64_t candidates = 0;
    std::uint64_t diagonalizable = 0;
    std::uint64_t path_ordered = 0;
    std::uint64_t irreducible = 0;
    std::uint64_t accepted = 0;
    std::uint64_t inconclusive = 0;
    std::uint64_t thin = 0;
    std::uint64_t non_thin = 0;
    std::uint64_t check_failures = 0;
    std::uint64_t conjecture_failures = 0;
    std::uint64_t pipeline_errors = 0;
    std::uint64_t generalized_non_td = 0;
    // Library errors while verifying a candidate (never expected).
    std::uint64_t trial_errors = 0;
};

struct ScanResult {
    ScanConfig config;
    std::vector<ScanInstance> accepted;  // ordered by trial
    std::vector<GeneralizedWitness> generalized;
    ScanSummary summary;
};

// Per-trial generator seed derived from (seed, trial).
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

// The candidate pair of one trial.
std::pair<Matrix, Matrix> scan_candidate(const ScanConfig& config, std::uint64_t trial);

// OpenMP-parallel over trials; the result does not depend on the thread count.
ScanResult scan(const ScanConfig& config);
// Reference implementation: same trials in order on one thread.
ScanResult scan_serial(const ScanConfig& config);

// TDPAIR_MAX_DIM (default 64).
std::size_t max_dim_from_env();

}  // namespace tdpair
