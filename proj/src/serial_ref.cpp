#include "kgen/serial_ref.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kgen/inequality.hpp"
#include "kgen/rng.hpp"

namespace kgen::ref {

double log_likelihood(const KappaParams& p, const WeightedSample& s) {
    if (s.incomes.empty()) throw std::domain_error("ref::log_likelihood: empty sample");
    double total = 0.0;
    for (std::size_t i = 0; i < s.incomes.size(); ++i)
        total += s.weights[i] * kgen::log_pdf(p, s.incomes[i]);
    return total;
}

std::vector<double> sample(const KappaParams& p, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::domain_error("ref::sample: n must be >= 1");
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = kgen::quantile(p, rng::uniform_open(seed, i));
    return xs;
}

double ks_statistic(const KappaParams& p, const WeightedSample& s) {
    const std::size_t n = s.incomes.size();
    if (n == 0) throw std::domain_error("ref::ks_statistic: empty sample");
    double w_total = 0.0;
    for (double w : s.weights) w_total += w;
    double cw = 0.0;
    double d = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        cw += s.weights[i];
        d = std::max(d, cw / w_total - kgen::cdf(p, s.incomes[i]));
    }
    return d;
}

std::pair<double, double> bootstrap_gini_ci(const WeightedSample& s, std::size_t replications,
                                            double level, std::uint64_t seed) {
    if (s.incomes.empty()) throw std::domain_error("ref::bootstrap_gini_ci: empty sample");
    if (replications < 100)
        throw std::domain_error("ref::bootstrap_gini_ci: need at least 100 replications");
    if (!(level > 0.0 && level < 1.0))
        throw std::domain_error("ref::bootstrap_gini_ci: level must lie in (0, 1)");
    const std::size_t n = s.incomes.size();
    std::vector<double> ginis(replications);
    for (std::size_t r = 0; r < replications; ++r) {
        rng::Stream g(rng::derive(seed, r));
        std::vector<std::pair<double, double>> rows(n);
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t idx = g.next_index(n);
            rows[j] = {s.incomes[idx], s.weights[idx]};
        }
        std::sort(rows.begin(), rows.end());
        ginis[r] = kgen::detail::gini_sorted_pairs(rows);
    }
    std::sort(ginis.begin(), ginis.end());
    const double tail = 0.5 * (1.0 - level);
    auto pct = [&](double q) {
        const double h = q * static_cast<double>(ginis.size() - 1);
        const std::size_t i = static_cast<std::size_t>(h);
        if (i + 1 >= ginis.size()) return ginis.back();
        return ginis[i] + (h - static_cast<double>(i)) * (ginis[i + 1] - ginis[i]);
    };
    return {pct(tail), pct(1.0 - tail)};
}

}  // namespace kgen::ref
