#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "kgen/distribution.hpp"
#include "kgen/io_ingest.hpp"

namespace kgen::ref {

// Plain serial re-implementations of every parallel kernel, kept as the
// ground truth the OpenMP paths are tested against (bit-identical for the
// RNG-driven kernels, tight tolerance for the summations) and as the
// baseline for the benchmark tool.

/// Naive left-to-right sum of w_i * log pdf(x_i).
double log_likelihood(const KappaParams& p, const WeightedSample& s);

/// Sequential inverse-transform sampling; same draws as kgen::sample.
std::vector<double> sample(const KappaParams& p, std::size_t n, std::uint64_t seed);

/// Sequential scan for D+.
double ks_statistic(const KappaParams& p, const WeightedSample& s);

/// Sequential bootstrap; same replication substreams as kgen::bootstrap_gini_ci.
std::pair<double, double> bootstrap_gini_ci(const WeightedSample& s, std::size_t replications,
                                            double level, std::uint64_t seed);

}  // namespace kgen::ref
