#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kgen/estimation.hpp"
#include "kgen/gof.hpp"
#include "kgen/io_ingest.hpp"
#include "kgen/serial_ref.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <class F>
double time_ms(F&& f, int repeats) {
    // one warmup, then best-of
    f();
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = clock_type::now();
        f();
        const auto t1 = clock_type::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void report(const std::string& name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-22s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   results %s\n",
                name.c_str(), serial_ms, parallel_ms, serial_ms / parallel_ms,
                identical ? "identical" : "DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run serially\n");
#endif

    const kgen::KappaParams p(2.0, kgen::beta_from(2.0, 0.6), 0.6);

    // sampling
    {
        constexpr std::size_t n = 1'000'000;
        std::vector<double> a, b;
        const double ts = time_ms([&] { a = kgen::ref::sample(p, n, 42); }, 3);
        const double tp = time_ms([&] { b = kgen::sample(p, n, 42); }, 3);
        report("sample n=1e6", ts, tp, a == b);
    }

    const kgen::WeightedSample s = kgen::sample_from_values(kgen::sample(p, 200'000, 7));

    // log-likelihood
    {
        double a = 0.0, b = 0.0;
        const double ts = time_ms([&] { a = kgen::ref::log_likelihood(p, s); }, 5);
        const double tp = time_ms([&] { b = kgen::log_likelihood(p, s); }, 5);
        report("loglik n=2e5", ts, tp, std::fabs(a - b) <= 1e-9 * std::fabs(a));
    }

    // Kolmogorov-Smirnov scan
    {
        double a = 0.0, b = 0.0;
        const double ts = time_ms([&] { a = kgen::ref::ks_statistic(p, s); }, 5);
        const double tp = time_ms([&] { b = kgen::ks_statistic(p, s); }, 5);
        report("ks n=2e5", ts, tp, a == b);
    }

    // bootstrap
    {
        const kgen::WeightedSample sb = kgen::sample_from_values(kgen::sample(p, 20'000, 9));
        std::pair<double, double> a, b;
        const double ts = time_ms([&] { a = kgen::ref::bootstrap_gini_ci(sb, 200, 0.95, 3); }, 2);
        const double tp = time_ms([&] { b = kgen::bootstrap_gini_ci(sb, 200, 0.95, 3); }, 2);
        report("bootstrap 200x2e4", ts, tp, a == b);
    }

    return 0;
}
