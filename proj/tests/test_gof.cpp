#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "kgen/estimation.hpp"
#include "kgen/gof.hpp"
#include "kgen/inequality.hpp"
#include "support.hpp"

using kgen::KappaParams;
using oracle::abs_close;
using oracle::rel_close;

TEST_CASE("exp_transform: anchors and the defining identity") {
    const KappaParams half(2.0, 1.0, 0.5);
    CHECK(kgen::exp_transform(half, 0.0) == 0.0);
    CHECK(rel_close(kgen::exp_transform(half, 1.0), 0.96242365011920689, 1e-12));
    // kappa = 0 reduces to plain beta x^alpha
    CHECK(rel_close(kgen::exp_transform(KappaParams(1.0, 1.0, 0.0), 3.0), 3.0, 1e-15));
    CHECK(rel_close(kgen::exp_transform(KappaParams(2.0, 0.7, 0.0), 3.0), 0.7 * 9.0, 1e-14));
    CHECK_THROWS_AS(kgen::exp_transform(half, -1.0), std::domain_error);

    for (const auto& [a, k] : std::vector<std::pair<double, double>>{
             {2.0, 0.5}, {1.0, 0.3}, {0.8, 0.9}, {2.5, 0.0}}) {
        const KappaParams p(a, 1.3, k);
        double prev = -1.0;
        for (double x : {1e-6, 0.01, 0.5, 1.0, 2.0, 10.0, 1e4}) {
            const double xk = kgen::exp_transform(p, x);
            CAPTURE(a);
            CAPTURE(k);
            CAPTURE(x);
            CHECK(xk > prev);  // strictly increasing
            CHECK(rel_close(std::exp(-xk), kgen::ccdf(p, x), 1e-12));
            prev = xk;
        }
    }
}

TEST_CASE("ks_statistic: exact quantiles give D+ = 1/(n+1)") {
    const KappaParams p(2.0, kgen::beta_from(2.0, 0.6), 0.6);
    const std::size_t n = 99;
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i)
        xs[i] = kgen::quantile(p, static_cast<double>(i + 1) / static_cast<double>(n + 1));
    const double d = kgen::ks_statistic(p, oracle::raw_unit_sample(xs));
    CHECK(abs_close(d, 1.0 / static_cast<double>(n + 1), 1e-12));
}

TEST_CASE("ks_statistic: single observation at the median") {
    const KappaParams p(1.5, 2.0, 0.25);
    const double d = kgen::ks_statistic(p, oracle::raw_unit_sample({kgen::median(p)}));
    CHECK(abs_close(d, 0.5, 1e-14));
    CHECK_THROWS_AS(kgen::ks_statistic(p, kgen::WeightedSample{}), std::domain_error);
}

TEST_CASE("ks_statistic: unit weights reduce to the rank formula") {
    const KappaParams p(2.0, kgen::beta_from(2.0, 0.5), 0.5);
    auto xs = kgen::sample(p, 5000, 23);
    std::sort(xs.begin(), xs.end());
    const double mine = kgen::ks_statistic(p, oracle::raw_unit_sample(xs));
    const double rank = oracle::dplus_rank_formula(xs, [&](double x) { return kgen::cdf(p, x); });
    CHECK(mine == rank);
}

TEST_CASE("ks_statistic: integer weights match the expanded sample") {
    const KappaParams p(2.0, 1.0, 0.5);
    kgen::WeightedSample w;
    w.incomes = {0.4, 1.0, 2.5};
    w.weights = {2.0, 1.0, 3.0};
    w.n_raw = w.n_kept = 3;
    w.total_weight = 6.0;
    const auto expanded = oracle::raw_unit_sample({0.4, 0.4, 1.0, 2.5, 2.5, 2.5});
    CHECK(kgen::ks_statistic(p, w) == kgen::ks_statistic(p, expanded));
}

TEST_CASE("ks_pvalue: anchors, monotonicity, domain") {
    CHECK(kgen::ks_pvalue(0.0, 50) == 1.0);
    CHECK(abs_close(kgen::ks_pvalue(0.05, 100), 0.59862, 1e-4));
    // the finite-sample scaling spelled out
    const double t = 0.05 * (10.0 + 0.12 + 0.11 / 10.0);
    CHECK(rel_close(kgen::ks_pvalue(0.05, 100), std::exp(-2.0 * t * t), 1e-15));

    double prev = 2.0;
    for (double d : {0.0, 0.01, 0.05, 0.1, 0.3, 0.8}) {
        const double pv = kgen::ks_pvalue(d, 200);
        CHECK(pv < prev);
        CHECK(pv >= 0.0);
        CHECK(pv <= 1.0);
        prev = pv;
    }
    CHECK_THROWS_AS(kgen::ks_pvalue(-0.1, 10), std::domain_error);
    CHECK_THROWS_AS(kgen::ks_pvalue(0.1, 0), std::domain_error);
}

TEST_CASE("qq_points: plotting positions and diagonal behavior") {
    const KappaParams p(2.0, kgen::beta_from(2.0, 0.6), 0.6);

    const auto two = kgen::qq_points(p, oracle::raw_unit_sample({2.0, 1.0}));
    REQUIRE(two.size() == 2);
    CHECK(two[0].first == 1.0);
    CHECK(two[1].first == 2.0);
    CHECK(two[0].second == kgen::quantile(p, 1.0 / 3.0));
    CHECK(two[1].second == kgen::quantile(p, 2.0 / 3.0));
    CHECK_THROWS_AS(kgen::qq_points(p, oracle::raw_unit_sample({1.0})), std::domain_error);

    // feeding exact quantiles puts every point on the diagonal
    const std::size_t n = 200;
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i)
        xs[i] = kgen::quantile(p, static_cast<double>(i + 1) / static_cast<double>(n + 1));
    for (const auto& [samp, model] : kgen::qq_points(p, oracle::raw_unit_sample(xs)))
        CHECK(rel_close(samp, model, 1e-12));

    // a true-model sample tracks the diagonal in the bulk
    const auto draw = kgen::qq_points(p, oracle::raw_unit_sample(kgen::sample(p, 2000, 31)));
    std::vector<double> ratios;
    for (std::size_t i = draw.size() / 10; i < draw.size() * 9 / 10; ++i)
        ratios.push_back(draw[i].first / draw[i].second);
    std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
    const double med = ratios[ratios.size() / 2];
    CHECK(med > 0.95);
    CHECK(med < 1.05);
}

TEST_CASE("bootstrap_gini_ci: degenerate sample, determinism, validation") {
    const auto flat = oracle::raw_unit_sample(std::vector<double>(200, 3.0));
    const auto ci = kgen::bootstrap_gini_ci(flat, 200, 0.95, 42);
    CHECK(ci.first == 0.0);
    CHECK(ci.second == 0.0);

    const KappaParams p(2.0, kgen::beta_from(2.0, 0.6), 0.6);
    const auto s = oracle::raw_unit_sample(kgen::sample(p, 2000, 9));
    const auto a = kgen::bootstrap_gini_ci(s, 300, 0.95, 7);
    const auto b = kgen::bootstrap_gini_ci(s, 300, 0.95, 7);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
    const auto c = kgen::bootstrap_gini_ci(s, 300, 0.95, 8);
    CHECK(a != c);  // different seed, different resamples

    CHECK_THROWS_AS(kgen::bootstrap_gini_ci(s, 99, 0.95, 1), std::domain_error);
    CHECK_THROWS_AS(kgen::bootstrap_gini_ci(s, 300, 0.0, 1), std::domain_error);
    CHECK_THROWS_AS(kgen::bootstrap_gini_ci(s, 300, 1.0, 1), std::domain_error);
    CHECK_THROWS_AS(kgen::bootstrap_gini_ci(kgen::WeightedSample{}, 300, 0.95, 1), std::domain_error);
}

TEST_CASE("bootstrap_gini_ci: brackets the empirical gini, width shrinks like 1/sqrt(n)") {
    const KappaParams p(2.0, kgen::beta_from(2.0, 0.6), 0.6);

    const auto small = oracle::raw_unit_sample(kgen::sample(p, 2500, 15));
    const auto big = oracle::raw_unit_sample(kgen::sample(p, 10'000, 16));

    const auto ci_small = kgen::bootstrap_gini_ci(small, 1000, 0.95, 5);
    const auto ci_big = kgen::bootstrap_gini_ci(big, 1000, 0.95, 5);

    CHECK(ci_small.first <= kgen::empirical_gini(small));
    CHECK(kgen::empirical_gini(small) <= ci_small.second);
    CHECK(ci_big.first <= kgen::empirical_gini(big));
    CHECK(kgen::empirical_gini(big) <= ci_big.second);

    const double ratio = (ci_big.second - ci_big.first) / (ci_small.second - ci_small.first);
    CHECK(ratio > 0.4);  // quadrupling n should halve the width
    CHECK(ratio < 0.6);

    // a wider confidence level gives a wider interval
    const auto ci99 = kgen::bootstrap_gini_ci(small, 1000, 0.99, 5);
    CHECK(ci99.first <= ci_small.first);
    CHECK(ci99.second >= ci_small.second);
}

TEST_CASE("evaluate_gof: assembles a coherent report") {
    const KappaParams p(2.0, kgen::beta_from(2.0, 0.6), 0.6);
    const auto s = oracle::raw_unit_sample(kgen::sample(p, 3000, 77));
    const auto rep = kgen::evaluate_gof(p, s, 300, 0.95, 4);

    CHECK(rep.ks_d_plus == kgen::ks_statistic(p, s));
    CHECK(rep.p_value == kgen::ks_pvalue(rep.ks_d_plus, s.incomes.size()));
    const double rn = std::sqrt(3000.0);
    CHECK(rel_close(rep.t_star, rep.ks_d_plus * (rn + 0.12 + 0.11 / rn), 1e-15));
    CHECK(rep.p_value > 0.01);  // the true model should not be rejected
    CHECK(rep.qq_pairs.size() == s.incomes.size());
    CHECK(rep.gini_empirical == kgen::empirical_gini(s));
    CHECK(rep.gini_theoretical == kgen::gini(p));
    CHECK(rep.gini_ci.first <= rep.gini_empirical);
    CHECK(rep.gini_empirical <= rep.gini_ci.second);
    CHECK(rep.bootstrap_replications == 300);
}
