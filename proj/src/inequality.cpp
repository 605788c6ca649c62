#include "kgen/inequality.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "kgen/errors.hpp"
#include "kgen/kexp.hpp"

namespace kgen {

namespace {

void require_mean_exists(const KappaParams& p, const char* op) {
    if (p.kappa >= kKappaZeroTol && !(p.kappa < p.alpha))
        throw UndefinedMeasure(std::string(op) + ": undefined for kappa >= alpha (mean diverges)");
}

}  // namespace

double lorenz(const KappaParams& p, double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("lorenz: u must lie in [0, 1]");
    require_mean_exists(p, "lorenz");
    if (u == 0.0) return 0.0;
    if (u == 1.0) return 1.0;

    const double ra = 1.0 / p.alpha;
    const double lw = -std::log1p(-u);  // log(1 / (1 - u))
    if (p.kappa < kKappaZeroTol) {
        // Weibull limit: L(u) = P(1 + 1/alpha, -ln(1 - u))
        return detail::reg_lower_gamma(1.0 + ra, lw);
    }

    const double k = p.kappa;
    const double z = 0.5 / k;
    const double c = 0.5 * ra;
    const double omu = 1.0 - u;
    const double X = std::pow(omu, 2.0 * k);
    const double y = std::sinh(k * lw) / k;  // deformed log of 1/(1-u)

    const double tail = 2.0 * p.alpha * std::pow(2.0 * k, ra) * omu * std::pow(y, ra);
    const double b1 = incomplete_beta(X, z - c, ra);
    const double b2 = incomplete_beta(X, z - c + 1.0, ra);
    const double lpref =
        std::log1p(k / p.alpha) - std::numbers::ln2 - std::lgamma(ra) + detail::lgamma_diff(z + c, z - c);
    return 1.0 - std::exp(lpref) * (tail + b1 + b2);
}

double gini(const KappaParams& p) {
    require_mean_exists(p, "gini");
    const double a = p.alpha;
    if (p.kappa < kKappaZeroTol) return 1.0 - std::pow(2.0, -1.0 / a);
    const double k = p.kappa;
    const double z = 0.5 / k;
    const double c = 0.5 / a;
    const double lg = std::log((2.0 * a + 2.0 * k) / (2.0 * a + k)) +
                      detail::lgamma_diff(1.0 / k - c, 1.0 / k + c) +
                      detail::lgamma_diff(z + c, z - c);
    return 1.0 - std::exp(lg);
}

double coeff_variation(const KappaParams& p) {
    const double a = p.alpha;
    const double ra = 1.0 / a;
    if (p.kappa < kKappaZeroTol) {
        // Weibull: CV^2 = Gamma(1 + 2/a) / Gamma(1 + 1/a)^2 - 1
        const double l = std::lgamma(1.0 + 2.0 * ra) - 2.0 * std::lgamma(1.0 + ra);
        return std::sqrt(std::expm1(l));
    }
    if (!(p.kappa < 0.5 * a))
        throw UndefinedMeasure("coeff_variation: undefined for kappa >= alpha / 2 (variance diverges)");
    const double k = p.kappa;
    const double z = 0.5 / k;
    const double c = 0.5 * ra;
    // log of mu2 / mu1^2; beta cancels
    const double l2 = -std::log1p(2.0 * k / a) + std::lgamma(1.0 + 2.0 * ra) +
                      detail::lgamma_diff(z - 2.0 * c, z + 2.0 * c);
    const double l1 = -std::log1p(k / a) + std::lgamma(1.0 + ra) + detail::lgamma_diff(z - c, z + c);
    return std::sqrt(std::expm1(l2 - 2.0 * l1));
}

LorenzPoints lorenz_curve(const KappaParams& p, std::size_t n_points) {
    if (n_points < 2) throw std::domain_error("lorenz_curve: need at least 2 intervals");
    LorenzPoints lz;
    lz.source = LorenzPoints::Source::theoretical;
    lz.points.reserve(n_points + 1);
    lz.points.emplace_back(0.0, 0.0);
    for (std::size_t i = 1; i < n_points; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(n_points);
        lz.points.emplace_back(u, lorenz(p, u));
    }
    lz.points.emplace_back(1.0, 1.0);
    return lz;
}

LorenzPoints empirical_lorenz(const WeightedSample& s) {
    if (s.incomes.empty()) throw std::domain_error("empirical_lorenz: empty sample");
    const std::size_t n = s.incomes.size();
    double W = 0.0;
    double S = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        W += s.weights[i];
        S += s.weights[i] * s.incomes[i];
    }
    LorenzPoints lz;
    lz.source = LorenzPoints::Source::empirical;
    lz.points.reserve(n + 1);
    lz.points.emplace_back(0.0, 0.0);
    double cw = 0.0;
    double cs = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        cw += s.weights[i];
        cs += s.weights[i] * s.incomes[i];
        lz.points.emplace_back(cw / W, cs / S);
    }
    lz.points.emplace_back(1.0, 1.0);
    return lz;
}

namespace detail {

double gini_sorted_pairs(const std::vector<std::pair<double, double>>& rows) {
    // 1 - 2 * trapezoidal area under the piecewise-linear Lorenz curve; the
    // factor 2 is folded into the accumulation.
    if (rows.front().first == rows.back().first) return 0.0;  // all incomes equal
    const std::size_t n = rows.size();
    double W = 0.0;
    double S = 0.0;
    for (const auto& [x, w] : rows) {
        W += w;
        S += w * x;
    }
    double area2 = 0.0;
    double cw = 0.0;
    double cs = 0.0;
    double pu = 0.0;
    double pl = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cw += rows[i].second;
        cs += rows[i].second * rows[i].first;
        const double u = cw / W;
        const double l = cs / S;
        area2 += (u - pu) * (l + pl);
        pu = u;
        pl = l;
    }
    return 1.0 - area2;
}

}  // namespace detail

double empirical_gini(const WeightedSample& s) {
    if (s.incomes.empty()) throw std::domain_error("empirical_gini: empty sample");
    std::vector<std::pair<double, double>> rows(s.incomes.size());
    for (std::size_t i = 0; i < s.incomes.size(); ++i) rows[i] = {s.incomes[i], s.weights[i]};
    return detail::gini_sorted_pairs(rows);
}

void write_tsv(const LorenzPoints& lz, std::ostream& out) {
    out << "u\tL\n";
    out.precision(15);
    for (const auto& [u, l] : lz.points) out << u << '\t' << l << '\n';
}

}  // namespace kgen
