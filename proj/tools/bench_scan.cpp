// Times the serial reference scan against the OpenMP scan and checks that
// both produce the same records.

#include <chrono>
#include <iostream>

#include <CLI11.hpp>
#include <omp.h>

#include "tdpair/io.hpp"

using namespace tdpair;

int main(int argc, char** argv) {
    CLI::App app{"Serial vs OpenMP scan benchmark"};
    ScanConfig cfg;
    cfg.p = 5;
    cfg.n = 3;
    cfg.trials = 5000;
    cfg.seed = 1;
    int reps = 3;
    app.add_option("--p", cfg.p);
    app.add_option("--n", cfg.n);
    app.add_option("--trials", cfg.trials);
    app.add_option("--seed", cfg.seed);
    app.add_option("--threads", cfg.threads, "OpenMP threads (default: TDPAIR_THREADS or all)");
    app.add_option("--reps", reps);
    CLI11_PARSE(app, argc, argv);
    cfg.validate();

    auto time = [&](auto&& fn) {
        double best = 1e300;
        std::string out;
        for (int r = 0; r < reps; ++r) {
            auto t0 = std::chrono::steady_clock::now();
            out = scan_to_ndjson(fn(cfg));
            best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        }
        return std::make_pair(best, out);
    };
    auto [ts, serial] = time(scan_serial);
    auto [tp, parallel] = time(scan);

    std::cout << "p=" << cfg.p << " n=" << cfg.n << " trials=" << cfg.trials << " seed=" << cfg.seed
              << " omp_max_threads=" << omp_get_max_threads() << "\n"
              << "serial   " << ts << " s\n"
              << "parallel " << tp << " s  (speedup " << ts / tp << ")\n"
              << "identical output: " << (serial == parallel ? "yes" : "NO") << "\n";
    return serial == parallel ? 0 : 1;
}
