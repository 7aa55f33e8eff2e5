#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace perc {

struct BernoulliEstimate {
    long long successes = 0;
    long long trials = 0;
    double p_hat = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 1.0;
};

std::pair<double, double> wilson_interval(long long successes, long long trials,
                                          double confidence = 0.95);
BernoulliEstimate make_estimate(long long successes, long long trials);

struct PowerLawPoint {
    double scale = 0.0;  // x
    double value = 0.0;  // y, strictly positive
    double weight = 1.0; // least-squares weight on log(value)
};

struct PowerLawFit {
    std::vector<PowerLawPoint> points;
    double slope = 0.0;
    double intercept = 0.0;  // of log(value) against log(scale)
    double slope_ci_low = 0.0;
    double slope_ci_high = 0.0;
};

// Weighted least squares of log(value) on log(scale) with a point-level
// bootstrap confidence interval for the slope.
PowerLawFit loglog_fit(const std::vector<PowerLawPoint>& points, int bootstrap_resamples = 2000,
                       uint64_t bootstrap_seed = 0x9d2c5680u);

// Variance-based weight for a Bernoulli frequency entering a log fit.
PowerLawPoint bernoulli_point(double scale, const BernoulliEstimate& est);

struct RatioBand {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    double spread = 0.0;  // max/min
};

RatioBand ratio_band_check(const std::vector<std::pair<double, double>>& observed_reference);

}  // namespace perc
