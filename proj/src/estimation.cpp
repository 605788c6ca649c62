#include "kgen/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kgen/errors.hpp"
#include "kgen/kexp.hpp"
#include "kgen/parallel.hpp"

namespace kgen {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Profile objective over (alpha, kappa) with beta eliminated through the
// unit-mean constraint. Log-incomes are cached; the constant and linear
// pieces of the log-density are pulled out of the per-point loop.
struct ProfileObjective {
    const std::vector<double>& lx;
    const std::vector<double>& w;
    double sw;    // total weight
    double swlx;  // sum of w * log x

    double operator()(double a, double k) const {
        if (!(k < a)) return kNegInf;  // mean (and hence beta) must exist
        const double beta = beta_from(a, k);
        if (!std::isfinite(beta) || !(beta > 0.0)) return kNegInf;
        const detail::LogPdfKernel ker(a, beta, k);
        const double pen = par::block_sum(lx.size(), [&](std::size_t i) { return w[i] * ker.penalty(lx[i]); });
        const double ll = sw * ker.log_ab + (a - 1.0) * swlx - pen;
        return std::isnan(ll) ? kNegInf : ll;
    }
};

struct Vertex {
    double a = 0.0;
    double k = 0.0;
    double f = kNegInf;
};

// Standard Nelder-Mead on two parameters, maximizing. Box constraints are
// enforced by clamping trial points; infeasible (kappa >= alpha) points
// evaluate to -inf and are driven out by the ordering.
struct Simplex {
    const ProfileObjective& obj;
    const FitConfig& cfg;

    double clamp_a(double a) const { return std::clamp(a, cfg.alpha_bounds.first, cfg.alpha_bounds.second); }
    double clamp_k(double k) const { return std::clamp(k, cfg.kappa_bounds.first, cfg.kappa_bounds.second); }

    Vertex make(double a, double k) const {
        Vertex v;
        v.a = clamp_a(a);
        v.k = clamp_k(k);
        v.f = obj(v.a, v.k);
        return v;
    }

    // returns iterations used; fills best-ordered simplex in place
    int run(Vertex v[3], bool& converged) const {
        converged = false;
        int it = 0;
        for (; it < cfg.max_iter; ++it) {
            std::sort(v, v + 3, [](const Vertex& x, const Vertex& y) { return x.f > y.f; });
            const double spread = v[0].f - v[2].f;  // inf while any vertex is infeasible
            const double diam = std::max({std::fabs(v[0].a - v[1].a), std::fabs(v[0].a - v[2].a),
                                          std::fabs(v[1].a - v[2].a), std::fabs(v[0].k - v[1].k),
                                          std::fabs(v[0].k - v[2].k), std::fabs(v[1].k - v[2].k)});
            if (spread < cfg.tol_loglik && diam < cfg.tol_param) {
                converged = true;
                break;
            }
            const double ca = 0.5 * (v[0].a + v[1].a);
            const double ck = 0.5 * (v[0].k + v[1].k);
            const Vertex refl = make(ca + (ca - v[2].a), ck + (ck - v[2].k));
            if (refl.f > v[0].f) {
                const Vertex exp_ = make(ca + 2.0 * (ca - v[2].a), ck + 2.0 * (ck - v[2].k));
                v[2] = exp_.f > refl.f ? exp_ : refl;
                continue;
            }
            if (refl.f > v[1].f) {
                v[2] = refl;
                continue;
            }
            const bool outside = refl.f > v[2].f;
            const Vertex contr = outside ? make(ca + 0.5 * (ca - v[2].a), ck + 0.5 * (ck - v[2].k))
                                         : make(ca - 0.5 * (ca - v[2].a), ck - 0.5 * (ck - v[2].k));
            if (contr.f > (outside ? refl.f : v[2].f)) {
                v[2] = contr;
                continue;
            }
            // shrink toward the best vertex
            v[1] = make(v[0].a + 0.5 * (v[1].a - v[0].a), v[0].k + 0.5 * (v[1].k - v[0].k));
            v[2] = make(v[0].a + 0.5 * (v[2].a - v[0].a), v[0].k + 0.5 * (v[2].k - v[0].k));
        }
        std::sort(v, v + 3, [](const Vertex& x, const Vertex& y) { return x.f > y.f; });
        return it;
    }
};

}  // namespace

double beta_from(double alpha, double kappa) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::domain_error("beta_from: alpha must be positive and finite");
    if (!(kappa >= 0.0 && kappa < 1.0)) throw std::domain_error("beta_from: kappa must lie in [0, 1)");
    if (kappa < kKappaZeroTol) {
        // Weibull with unit mean: beta = Gamma(1 + 1/alpha)^alpha
        return std::exp(alpha * std::lgamma(1.0 + 1.0 / alpha));
    }
    if (!(kappa < alpha))
        throw std::domain_error("beta_from: requires kappa < alpha so the mean exists");
    const double z = 0.5 / kappa;
    const double c = 0.5 / alpha;
    const double lb = -std::log(2.0 * kappa) +
                      alpha * (std::lgamma(1.0 / alpha) - std::log(kappa + alpha) +
                               detail::lgamma_diff(z - c, z + c));
    return std::exp(lb);
}

double log_likelihood(const KappaParams& p, const WeightedSample& s) {
    if (s.incomes.empty()) throw InputError("log_likelihood: empty sample");
    for (double x : s.incomes)
        if (!(x > 0.0)) throw InputError("log_likelihood: incomes must be positive");
    const detail::LogPdfKernel ker(p.alpha, p.beta, p.kappa);
    return par::block_sum(s.incomes.size(),
                          [&](std::size_t i) { return s.weights[i] * ker(std::log(s.incomes[i])); });
}

FitResult fit(const WeightedSample& s, const FitConfig& cfg) {
    const std::size_t n = s.incomes.size();
    if (n < 10) throw InputError("fit: need at least 10 observations");
    for (double x : s.incomes)
        if (!(x > 0.0)) throw InputError("fit: incomes must be positive");

    std::vector<double> lx(n);
    par::for_each_index(n, [&](std::size_t i) { lx[i] = std::log(s.incomes[i]); });
    const double sw = par::block_sum(n, [&](std::size_t i) { return s.weights[i]; });
    const double swlx = par::block_sum(n, [&](std::size_t i) { return s.weights[i] * lx[i]; });
    const double mean = par::block_sum(n, [&](std::size_t i) { return s.weights[i] * s.incomes[i]; }) / sw;
    if (std::fabs(mean - 1.0) > 1e-6)
        throw InputError("fit: sample must be normalized to weighted mean 1 (run preprocess)");

    const ProfileObjective obj{lx, s.weights, sw, swlx};
    const Simplex nm{obj, cfg};

    std::vector<StartDiagnostic> diags;
    diags.reserve(cfg.starts.size() + 1);

    for (const auto& [a0, k0] : cfg.starts) {
        Vertex v[3] = {nm.make(a0, k0), nm.make(a0 * 1.05 + 0.01, k0), nm.make(a0, std::min(k0 + 0.05, 0.95))};
        StartDiagnostic d;
        d.alpha0 = a0;
        d.kappa0 = k0;
        bool conv = false;
        d.iterations = nm.run(v, conv);
        d.converged = conv;
        d.alpha = v[0].a;
        d.kappa = v[0].k;
        d.log_likelihood = v[0].f;
        diags.push_back(d);
    }

    // Boundary search along kappa = 0: golden-section in alpha, so a Weibull
    // optimum is reported with kappa exactly 0 rather than epsilon above it.
    {
        constexpr double kInvPhi = 0.6180339887498949;
        double lo = cfg.alpha_bounds.first;
        double hi = cfg.alpha_bounds.second;
        double c = hi - kInvPhi * (hi - lo);
        double d_ = lo + kInvPhi * (hi - lo);
        double fc = obj(c, 0.0);
        double fd = obj(d_, 0.0);
        const double width_tol = cfg.tol_param * (1.0 + lo);
        int iters = 0;
        while (hi - lo > width_tol && iters < cfg.max_iter) {
            if (fc > fd) {
                hi = d_;
                d_ = c;
                fd = fc;
                c = hi - kInvPhi * (hi - lo);
                fc = obj(c, 0.0);
            } else {
                lo = c;
                c = d_;
                fc = fd;
                d_ = lo + kInvPhi * (hi - lo);
                fd = obj(d_, 0.0);
            }
            ++iters;
        }
        StartDiagnostic d;
        d.alpha0 = 0.5 * (cfg.alpha_bounds.first + cfg.alpha_bounds.second);
        d.kappa0 = 0.0;
        d.alpha = 0.5 * (lo + hi);
        d.kappa = 0.0;
        d.log_likelihood = obj(d.alpha, 0.0);
        d.iterations = iters;
        d.converged = hi - lo <= width_tol;
        diags.push_back(d);
    }

    const StartDiagnostic* best = nullptr;
    for (const StartDiagnostic& d : diags)
        if (d.converged && std::isfinite(d.log_likelihood) && (!best || d.log_likelihood > best->log_likelihood))
            best = &d;
    if (!best) throw FitError("fit: no optimizer start converged", diags);

    KappaParams params(best->alpha, beta_from(best->alpha, best->kappa), best->kappa);
    FitResult res{params};
    res.log_likelihood = log_likelihood(params, s);
    res.n_effective = sw;
    res.converged = true;
    res.iterations = best->iterations;
    const auto m1 = raw_moment(params, 1);
    res.constraint_residual = m1 ? std::fabs(*m1 - 1.0) : std::numeric_limits<double>::quiet_NaN();
    return res;
}

}  // namespace kgen
