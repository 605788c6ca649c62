#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "kgen/distribution.hpp"
#include "kgen/io_ingest.hpp"

namespace kgen {

struct FitConfig {
    std::pair<double, double> alpha_bounds{0.05, 20.0};
    std::pair<double, double> kappa_bounds{0.0, 1.0 - 1e-6};
    /// (alpha, kappa) starting points for the simplex search.
    std::vector<std::pair<double, double>> starts{
        {1.0, 0.1}, {1.0, 0.4}, {1.0, 0.7}, {2.0, 0.1}, {2.0, 0.4},
        {2.0, 0.7}, {3.0, 0.1}, {3.0, 0.4}, {3.0, 0.7},
    };
    double tol_loglik = 1e-9;  ///< absolute spread of simplex values at convergence
    double tol_param = 1e-7;   ///< simplex diameter at convergence
    int max_iter = 500;        ///< per start
};

struct FitResult {
    KappaParams params;
    double log_likelihood = 0.0;
    double n_effective = 0.0;  ///< total weight
    bool converged = false;
    int iterations = 0;             ///< iterations used by the winning start
    double constraint_residual = 0.0;  ///< |model mean - 1| at the optimum
};

/// Scale parameter implied by alpha and kappa under the unit-mean constraint;
/// the two-parameter likelihood search eliminates beta through this.
double beta_from(double alpha, double kappa);

/// Weighted log-likelihood sum w_i * log pdf(x_i). Deterministic blocked
/// summation, identical for any thread count.
double log_likelihood(const KappaParams& p, const WeightedSample& s);

/// Constrained maximum-likelihood fit over (alpha, kappa) with beta bound to
/// the unit mean. Multi-start Nelder-Mead plus a kappa = 0 boundary search;
/// fully deterministic. Throws FitError when no start converges.
FitResult fit(const WeightedSample& s, const FitConfig& cfg = {});

}  // namespace kgen
