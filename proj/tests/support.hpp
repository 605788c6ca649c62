#pragma once

// Test-side support: independent numeric oracles (quadrature, finite
// differences, bracketed maximization, textbook estimator formulas) plus
// small fixtures. Nothing here may call back into the code paths under test
// beyond the function handed in by the test itself.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "kgen/io_ingest.hpp"

namespace oracle {

inline bool rel_close(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

inline bool abs_close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

inline double integrate(const std::function<double(double)>& f, double a, double b) {
    boost::math::quadrature::tanh_sinh<double> q;
    return q.integrate(f, a, b);
}

/// Integral over [0, inf): split at 1, map the head through x = u^2 and the
/// tail through x = 1/u. The head substitution turns endpoint singularities
/// x^(p-1) with p > 1/2 into bounded integrands, so densities that blow up at
/// the origin stay evaluable where tanh_sinh probes.
inline double integrate_0_inf(const std::function<double(double)>& f) {
    boost::math::quadrature::tanh_sinh<double> q;
    const double head = q.integrate(
        [&](double u) {
            if (u < 1e-150) return 0.0;  // keep u^2 away from underflow
            return 2.0 * u * f(u * u);
        },
        0.0, 1.0);
    const double tail = q.integrate(
        [&](double u) {
            if (u < 1e-140) return 0.0;  // keep both 1/u and u*u representable
            return f(1.0 / u) / (u * u);
        },
        0.0, 1.0);
    return head + tail;
}

/// Bracketed golden-section maximizer, independent of any library search.
template <class F>
double golden_max(F&& f, double lo, double hi) {
    constexpr double kInvPhi = 0.6180339887498949;
    double c = hi - kInvPhi * (hi - lo);
    double d = lo + kInvPhi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < 300 && (hi - lo) > 1e-14 * (std::fabs(lo) + std::fabs(hi)); ++i) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kInvPhi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kInvPhi * (hi - lo);
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

/// Central difference df/dx.
template <class F>
double fd_derivative(F&& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Classic rank-based Gini of an ascending unweighted sample:
/// sum_i (2i - n - 1) x_i / (n^2 mean).
inline double gini_rank_formula(const std::vector<double>& x) {
    const auto n = static_cast<double>(x.size());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += (2.0 * static_cast<double>(i + 1) - n - 1.0) * x[i];
    return s / (n * n * mean);
}

/// Classic one-sided K-S statistic max_i (i/n - F(x_i)) on an ascending sample.
template <class C>
double dplus_rank_formula(const std::vector<double>& x, C&& cdf) {
    const auto n = static_cast<double>(x.size());
    double d = -1.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        d = std::max(d, static_cast<double>(i + 1) / n - cdf(x[i]));
    return d;
}

/// Unweighted empirical Lorenz ordinate at rank i (1-based): partial sum share.
inline std::vector<double> lorenz_rank_formula(const std::vector<double>& x) {
    double total = 0.0;
    for (double v : x) total += v;
    std::vector<double> L(x.size());
    double cs = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        cs += x[i];
        L[i] = cs / total;
    }
    return L;
}

/// Sorted unit-weight sample WITHOUT mean normalization; for tests that need
/// the raw draws untouched (K-S calibration, scale-free statistics).
inline kgen::WeightedSample raw_unit_sample(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    kgen::WeightedSample s;
    const std::size_t n = xs.size();
    double total = 0.0;
    for (double v : xs) total += v;
    s.incomes = std::move(xs);
    s.weights.assign(n, 1.0);
    s.raw_mean = total / static_cast<double>(n);
    s.raw_mean_se = 0.0;
    s.total_weight = static_cast<double>(n);
    s.n_raw = n;
    s.n_kept = n;
    return s;
}

}  // namespace oracle
