#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "kgen/distribution.hpp"
#include "kgen/io_ingest.hpp"

namespace kgen {

/// Discretized Lorenz curve, either sampled from the model or accumulated
/// from a weighted sample. Points are (population share u, income share L).
struct LorenzPoints {
    enum class Source { theoretical, empirical };
    std::vector<std::pair<double, double>> points;
    Source source = Source::empirical;
};

/// Model Lorenz curve L(u): share of total income held by the poorest
/// fraction u of the population. Requires a finite mean (kappa < alpha).
double lorenz(const KappaParams& p, double u);

/// Model Gini coefficient; requires kappa < alpha. Does not depend on beta.
double gini(const KappaParams& p);

/// Model coefficient of variation; requires kappa < alpha / 2.
double coeff_variation(const KappaParams& p);

/// Model Lorenz curve sampled on a uniform u-grid of n_points intervals.
LorenzPoints lorenz_curve(const KappaParams& p, std::size_t n_points);

/// Weighted empirical Lorenz curve: n + 1 points from (0,0) to (1,1).
LorenzPoints empirical_lorenz(const WeightedSample& s);

/// Weighted empirical Gini (1 minus twice the trapezoidal Lorenz area).
/// With unit weights this equals the classic rank formula
/// sum_i (2i - n - 1) x_i / (n^2 mean).
double empirical_gini(const WeightedSample& s);

/// Two-column TSV (u, L) with a header row.
void write_tsv(const LorenzPoints& lz, std::ostream& out);

namespace detail {

/// Gini of rows (income, weight) already sorted ascending by income.
double gini_sorted_pairs(const std::vector<std::pair<double, double>>& rows);

}  // namespace detail
}  // namespace kgen
