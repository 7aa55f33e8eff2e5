#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "perc/stats.hpp"

using namespace perc;

TEST_CASE("wilson interval reference values") {
    // Closed-form Wilson endpoints for 50/100 at 95% (z = 1.9599639845):
    // 0.5 -+ z*sqrt(0.0025 + z^2/40000) / (1 + z^2/100).
    const auto [lo, hi] = wilson_interval(50, 100);
    CHECK(lo == doctest::Approx(0.4038315).epsilon(1e-6));
    CHECK(hi == doctest::Approx(0.5961685).epsilon(1e-6));

    const auto [zlo, zhi] = wilson_interval(0, 100);
    CHECK(zlo == 0.0);
    CHECK(zhi > 0.0);
    CHECK(zhi < 0.05);

    const auto [flo, fhi] = wilson_interval(100, 100);
    CHECK(flo > 0.95);
    CHECK(fhi == 1.0);

    CHECK_THROWS_AS(wilson_interval(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(-1, 10), std::invalid_argument);
    CHECK_THROWS_AS(wilson_interval(11, 10), std::invalid_argument);
}

TEST_CASE("wilson width shrinks with more trials") {
    double prev = 1.0;
    for (long long n : {10LL, 100LL, 1000LL, 10000LL}) {
        const auto [lo, hi] = wilson_interval(n / 2, n);
        CHECK(hi - lo < prev);
        prev = hi - lo;
    }
}

TEST_CASE("make_estimate wraps wilson") {
    const BernoulliEstimate est = make_estimate(25, 200);
    CHECK(est.successes == 25);
    CHECK(est.trials == 200);
    CHECK(est.p_hat == doctest::Approx(0.125));
    CHECK(est.wilson_low < est.p_hat);
    CHECK(est.wilson_high > est.p_hat);
}

TEST_CASE("loglog_fit recovers an exact power law") {
    std::vector<PowerLawPoint> points;
    for (double x : {2.0, 4.0, 8.0, 16.0, 32.0})
        points.push_back({x, 3.5 * x * x, 1.0});
    const PowerLawFit fit = loglog_fit(points);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fit.intercept == doctest::Approx(std::log(3.5)).epsilon(1e-9));
    CHECK(fit.slope_ci_low <= 2.0);
    CHECK(fit.slope_ci_high >= 2.0);

    for (auto& pt : points) pt.value = 7.0;  // constant data: slope 0
    const PowerLawFit flat = loglog_fit(points);
    CHECK(flat.slope == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("loglog_fit rejects degenerate input") {
    CHECK_THROWS_AS(loglog_fit({}), std::invalid_argument);
    // Too few points.
    CHECK_THROWS_AS(loglog_fit({{4.0, 1.0, 1.0}, {8.0, 2.0, 1.0}}), std::invalid_argument);
    // All points on one abscissa.
    CHECK_THROWS_AS(loglog_fit({{4.0, 1.0, 1.0}, {4.0, 2.0, 1.0}, {4.0, 3.0, 1.0}}),
                    std::invalid_argument);
    // Nonpositive value or scale.
    CHECK_THROWS_AS(loglog_fit({{4.0, 0.0, 1.0}, {8.0, 1.0, 1.0}, {16.0, 1.0, 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(loglog_fit({{-4.0, 1.0, 1.0}, {8.0, 1.0, 1.0}, {16.0, 1.0, 1.0}}),
                    std::invalid_argument);
}

TEST_CASE("loglog_fit is deterministic and order-invariant") {
    std::vector<PowerLawPoint> points;
    for (double x : {2.0, 4.0, 8.0, 16.0})
        points.push_back({x, std::pow(x, 1.3) * (1.0 + 0.01 * x), 1.0});
    const PowerLawFit a = loglog_fit(points);
    const PowerLawFit b = loglog_fit(points);
    CHECK(a.slope == b.slope);
    CHECK(a.slope_ci_low == b.slope_ci_low);
    CHECK(a.slope_ci_high == b.slope_ci_high);

    std::reverse(points.begin(), points.end());
    const PowerLawFit c = loglog_fit(points);
    CHECK(c.slope == doctest::Approx(a.slope).epsilon(1e-12));
}

TEST_CASE("bootstrap CI covers a noisy synthetic exponent") {
    // y = x^1.75 with multiplicative noise. Point-level bootstrap on six
    // points undercovers somewhat, so the bar is 75%, enough to catch a
    // broken (empty or displaced) interval.
    std::mt19937_64 rng(321);
    std::normal_distribution<double> noise(0.0, 0.05);
    int covered = 0;
    const int reps = 20;
    for (int r = 0; r < reps; ++r) {
        std::vector<PowerLawPoint> points;
        for (double x : {4.0, 8.0, 16.0, 32.0, 64.0, 128.0})
            points.push_back({x, std::pow(x, 1.75) * std::exp(noise(rng)), 1.0});
        const PowerLawFit fit = loglog_fit(points);
        CHECK(std::fabs(fit.slope - 1.75) < 0.25);
        if (fit.slope_ci_low <= 1.75 && 1.75 <= fit.slope_ci_high) ++covered;
    }
    CHECK(covered >= reps * 3 / 4);
}

TEST_CASE("bernoulli_point weighting") {
    const PowerLawPoint strong = bernoulli_point(8.0, make_estimate(5000, 10000));
    const PowerLawPoint weak = bernoulli_point(8.0, make_estimate(50, 100));
    CHECK(strong.scale == 8.0);
    CHECK(strong.value == doctest::Approx(0.5));
    CHECK(strong.weight > weak.weight);

    const PowerLawPoint rare = bernoulli_point(8.0, make_estimate(10, 10000));
    CHECK(rare.value == doctest::Approx(0.001));
    CHECK(rare.weight < strong.weight);  // log of a rare frequency is noisier
}

TEST_CASE("ratio band check") {
    const RatioBand band = ratio_band_check({{2.0, 1.0}, {6.0, 2.0}, {12.0, 3.0}});
    CHECK(band.min_ratio == doctest::Approx(2.0));
    CHECK(band.max_ratio == doctest::Approx(4.0));
    CHECK(band.spread == doctest::Approx(2.0));

    const RatioBand flat = ratio_band_check({{5.0, 1.0}, {10.0, 2.0}});
    CHECK(flat.spread == doctest::Approx(1.0));

    CHECK_THROWS_AS(ratio_band_check({}), std::invalid_argument);
    CHECK_THROWS_AS(ratio_band_check({{1.0, 0.0}}), std::invalid_argument);
}
