#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "kgen/distribution.hpp"
#include "kgen/io_ingest.hpp"

namespace kgen {

struct GofReport {
    double ks_d_plus = 0.0;
    double t_star = 0.0;  ///< finite-sample-scaled K-S statistic
    double p_value = 0.0;
    std::vector<std::pair<double, double>> qq_pairs;  ///< (sample quantile, model quantile)
    double gini_empirical = 0.0;
    double gini_theoretical = 0.0;
    std::pair<double, double> gini_ci{0.0, 0.0};
    std::size_t bootstrap_replications = 0;
};

/// Probability-integral transform to a unit exponential: x_kappa such that
/// CCDF(x) = exp(-x_kappa). A correct model turns data into Exp(1) draws.
double exp_transform(const KappaParams& p, double x);

/// One-sided Kolmogorov-Smirnov D+ = max_i (W_i - F(x_i)) with W_i the
/// cumulative weight share; reduces to max_i (i/n - F(x_i)) at unit weights.
double ks_statistic(const KappaParams& p, const WeightedSample& s);

/// Upper-tail p-value for D+ via the finite-sample scaling
/// T = D+ (sqrt(n) + 0.12 + 0.11/sqrt(n)), p = exp(-2 T^2).
double ks_pvalue(double d_plus, std::size_t n);

/// Quantile-quantile pairs: observed x_(i) against model quantile at i/(n+1).
std::vector<std::pair<double, double>> qq_points(const KappaParams& p, const WeightedSample& s);

/// Percentile bootstrap confidence interval for the weighted empirical Gini.
/// Replication r draws from an independent substream of `seed`, so results
/// are identical for any thread count.
std::pair<double, double> bootstrap_gini_ci(const WeightedSample& s, std::size_t replications,
                                            double level, std::uint64_t seed);

/// Full goodness-of-fit panel for a fitted model against a sample.
GofReport evaluate_gof(const KappaParams& p, const WeightedSample& s,
                       std::size_t replications = 1000, double level = 0.95,
                       std::uint64_t seed = 0);

}  // namespace kgen
