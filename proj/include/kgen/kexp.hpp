#pragma once

namespace kgen {

/// Below this deformation the exact exponential/logarithm limit forms are
/// used; the deformed expressions are 0/0 at kappa = 0.
inline constexpr double kKappaZeroTol = 1e-8;

/// Deformed exponential (sqrt(1 + k^2 x^2) + k x)^(1/k); plain exp(x) at k = 0.
/// Decays like a power law for large negative x instead of exponentially.
double kappa_exp(double x, double kappa);

/// Deformed logarithm (y^k - y^-k) / (2k), inverse of kappa_exp; ln(y) at k = 0.
double kappa_log(double y, double kappa);

/// Gamma(a) / Gamma(b) evaluated in log space: finite where the naive ratio
/// would overflow, and accurate for large nearly-equal arguments.
double log_gamma_ratio(double a, double b);

/// Non-regularized incomplete beta: integral of t^(s-1) (1-t)^(r-1) over [0, x].
double incomplete_beta(double x, double s, double r);

namespace detail {

/// ln Gamma(a) - ln Gamma(b) without the cancellation the direct difference
/// suffers when a and b are large and close.
double lgamma_diff(double a, double b);

/// ln of the complete beta function B(a, b).
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double x, double a, double b);

/// Regularized lower incomplete gamma P(a, x).
double reg_lower_gamma(double a, double x);

/// -log exp_kappa(-t) for t = exp(lt); stable over the whole range of lt,
/// including values of t far beyond double overflow.
double neg_log_kexp(double lt, double kappa);

}  // namespace detail
}  // namespace kgen
