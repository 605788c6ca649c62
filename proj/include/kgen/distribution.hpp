#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "kgen/kexp.hpp"

namespace kgen {

/// Parameter triple of the deformed-exponential income distribution with
/// CCDF(x) = exp_kappa(-beta x^alpha) on x >= 0. Construction validates.
struct KappaParams {
    double alpha;  ///< shape exponent, > 0
    double beta;   ///< rate-like scale, > 0
    double kappa;  ///< tail deformation, in [0, 1); 0 recovers the Weibull law
    KappaParams(double alpha_, double beta_, double kappa_);
};

/// First four standardized moments; a field is empty when that moment does
/// not exist (existence requires kappa < alpha / r for the r-th moment).
struct MomentSummary {
    std::optional<double> mean;
    std::optional<double> variance;
    std::optional<double> skewness;
    std::optional<double> excess_kurtosis;
};

/// Density maximum. zero_modal marks alpha <= 1, where the density has its
/// supremum at the origin instead of an interior peak.
struct ModeInfo {
    double x = 0.0;
    bool zero_modal = false;
};

double ccdf(const KappaParams& p, double x);
double cdf(const KappaParams& p, double x);
double pdf(const KappaParams& p, double x);

/// log of pdf(x) for x > 0, assembled entirely in log space; stays finite
/// far into the tail where pdf itself underflows.
double log_pdf(const KappaParams& p, double x);

double quantile(const KappaParams& p, double u);
double median(const KappaParams& p);
ModeInfo mode(const KappaParams& p);

/// r-th raw moment; empty when kappa >= alpha / r.
std::optional<double> raw_moment(const KappaParams& p, int r);

MomentSummary moment_summary(const KappaParams& p);

/// n inverse-transform draws. The i-th draw depends only on (seed, i), so the
/// output is reproducible and independent of thread count.
std::vector<double> sample(const KappaParams& p, std::size_t n, std::uint64_t seed);

namespace detail {

/// Per-point log-density evaluation with the parameter-dependent constants
/// hoisted; shared by pdf, the likelihood sum, and the fit objective so the
/// arithmetic is identical on all paths.
struct LogPdfKernel {
    double alpha;
    double kappa;
    double log_beta;
    double log_ab;     // log(alpha) + log(beta)
    double log_kappa;  // unused when kappa is below the zero tolerance

    LogPdfKernel(double alpha_, double beta_, double kappa_)
        : alpha(alpha_),
          kappa(kappa_),
          log_beta(std::log(beta_)),
          log_ab(std::log(alpha_) + std::log(beta_)),
          log_kappa(kappa_ >= kKappaZeroTol ? std::log(kappa_) : 0.0) {}

    /// The x-dependent negative part: asinh(k t)/k + log sqrt(1 + (k t)^2)
    /// for t = beta x^alpha, given lx = log x.
    double penalty(double lx) const {
        const double lt = log_beta + alpha * lx;  // log(beta x^alpha)
        if (kappa < kKappaZeroTol) return std::exp(lt);
        const double lkt = log_kappa + lt;
        if (lkt > 34.0) {
            // asinh(u) = ln(2u) and log sqrt(1+u^2) = ln(u) to full precision
            return (std::numbers::ln2 + lkt) / kappa + lkt;
        }
        const double kt = std::exp(lkt);
        return std::asinh(kt) / kappa + 0.5 * std::log1p(kt * kt);
    }

    double operator()(double lx) const { return log_ab + (alpha - 1.0) * lx - penalty(lx); }
};

}  // namespace detail
}  // namespace kgen
