#include "kgen/gof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kgen/inequality.hpp"
#include "kgen/kexp.hpp"
#include "kgen/parallel.hpp"
#include "kgen/rng.hpp"

namespace kgen {

namespace {

double stephens_scale(double d, std::size_t n) {
    const double rn = std::sqrt(static_cast<double>(n));
    return d * (rn + 0.12 + 0.11 / rn);
}

// Interpolated order statistic of a sorted vector at probability q.
double percentile_sorted(const std::vector<double>& v, double q) {
    const double h = q * static_cast<double>(v.size() - 1);
    const std::size_t i = static_cast<std::size_t>(h);
    if (i + 1 >= v.size()) return v.back();
    const double frac = h - static_cast<double>(i);
    return v[i] + frac * (v[i + 1] - v[i]);
}

}  // namespace

double exp_transform(const KappaParams& p, double x) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::domain_error("exp_transform: x must be finite and >= 0");
    if (x == 0.0) return 0.0;
    const double lt = std::log(p.beta) + p.alpha * std::log(x);
    return detail::neg_log_kexp(lt, p.kappa);
}

double ks_statistic(const KappaParams& p, const WeightedSample& s) {
    const std::size_t n = s.incomes.size();
    if (n == 0) throw std::domain_error("ks_statistic: empty sample");
    std::vector<double> cumshare(n);
    double w_total = 0.0;
    for (double w : s.weights) w_total += w;
    double cw = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cw += s.weights[i];
        cumshare[i] = cw / w_total;
    }
    return par::block_max(n, [&](std::size_t i) { return cumshare[i] - cdf(p, s.incomes[i]); });
}

double ks_pvalue(double d_plus, std::size_t n) {
    if (!(d_plus >= 0.0)) throw std::domain_error("ks_pvalue: d_plus must be >= 0");
    if (n == 0) throw std::domain_error("ks_pvalue: n must be >= 1");
    const double t = stephens_scale(d_plus, n);
    return std::clamp(std::exp(-2.0 * t * t), 0.0, 1.0);
}

std::vector<std::pair<double, double>> qq_points(const KappaParams& p, const WeightedSample& s) {
    const std::size_t n = s.incomes.size();
    if (n < 2) throw std::domain_error("qq_points: need at least 2 observations");
    std::vector<std::pair<double, double>> pts(n);
    par::for_each_index(n, [&](std::size_t i) {
        const double u = static_cast<double>(i + 1) / static_cast<double>(n + 1);
        pts[i] = {s.incomes[i], quantile(p, u)};
    });
    return pts;
}

std::pair<double, double> bootstrap_gini_ci(const WeightedSample& s, std::size_t replications,
                                            double level, std::uint64_t seed) {
    if (s.incomes.empty()) throw std::domain_error("bootstrap_gini_ci: empty sample");
    if (replications < 100)
        throw std::domain_error("bootstrap_gini_ci: need at least 100 replications");
    if (!(level > 0.0 && level < 1.0))
        throw std::domain_error("bootstrap_gini_ci: level must lie in (0, 1)");
    const std::size_t n = s.incomes.size();
    std::vector<double> ginis(replications);
    par::for_each_index(replications, [&](std::size_t r) {
        rng::Stream g(rng::derive(seed, r));
        std::vector<std::pair<double, double>> rows(n);
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t idx = g.next_index(n);
            rows[j] = {s.incomes[idx], s.weights[idx]};
        }
        std::sort(rows.begin(), rows.end());
        ginis[r] = detail::gini_sorted_pairs(rows);
    });
    std::sort(ginis.begin(), ginis.end());
    const double tail = 0.5 * (1.0 - level);
    return {percentile_sorted(ginis, tail), percentile_sorted(ginis, 1.0 - tail)};
}

GofReport evaluate_gof(const KappaParams& p, const WeightedSample& s, std::size_t replications,
                       double level, std::uint64_t seed) {
    GofReport rep;
    rep.ks_d_plus = ks_statistic(p, s);
    rep.t_star = stephens_scale(rep.ks_d_plus, s.incomes.size());
    rep.p_value = ks_pvalue(rep.ks_d_plus, s.incomes.size());
    rep.qq_pairs = qq_points(p, s);
    rep.gini_empirical = empirical_gini(s);
    rep.gini_theoretical = gini(p);
    rep.gini_ci = bootstrap_gini_ci(s, replications, level, seed);
    rep.bootstrap_replications = replications;
    return rep;
}

}  // namespace kgen
