#include "perc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace perc {
namespace {

// Inverse standard normal CDF (Acklam's rational approximation), good to
// ~1e-9 over (0,1); ample for interval endpoints.
double normal_quantile(double p) {
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("normal_quantile: p in (0,1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p > phigh) {
        q = std::sqrt(-2 * std::log(1 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

}  // namespace

std::pair<double, double> wilson_interval(long long successes, long long trials,
                                          double confidence) {
    if (trials < 1) throw std::invalid_argument("wilson_interval: trials >= 1 required");
    if (successes < 0 || successes > trials)
        throw std::invalid_argument("wilson_interval: successes out of range");
    const double z = normal_quantile(0.5 + confidence / 2.0);
    const double n = double(trials);
    const double phat = double(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2 * n)) / denom;
    const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

BernoulliEstimate make_estimate(long long successes, long long trials) {
    BernoulliEstimate e;
    e.successes = successes;
    e.trials = trials;
    e.p_hat = trials > 0 ? double(successes) / double(trials) : 0.0;
    if (trials > 0) {
        auto [lo, hi] = wilson_interval(successes, trials);
        e.wilson_low = lo;
        e.wilson_high = hi;
    }
    return e;
}

namespace {

std::pair<double, double> weighted_fit(const std::vector<const PowerLawPoint*>& pts) {
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto* p : pts) {
        const double x = std::log(p->scale), y = std::log(p->value), w = p->weight;
        sw += w;
        sx += w * x;
        sy += w * y;
        sxx += w * x * x;
        sxy += w * x * y;
    }
    const double det = sw * sxx - sx * sx;
    if (std::abs(det) < 1e-12 * sw * sxx || det == 0.0)
        throw std::invalid_argument("loglog_fit: degenerate abscissae");
    const double slope = (sw * sxy - sx * sy) / det;
    const double intercept = (sy - slope * sx) / sw;
    return {slope, intercept};
}

}  // namespace

PowerLawFit loglog_fit(const std::vector<PowerLawPoint>& points, int bootstrap_resamples,
                       uint64_t bootstrap_seed) {
    if (points.size() < 3) throw std::invalid_argument("loglog_fit: need at least 3 points");
    for (const auto& p : points)
        if (p.scale <= 0.0 || p.value <= 0.0 || p.weight <= 0.0)
            throw std::invalid_argument("loglog_fit: nonpositive input");
    PowerLawFit fit;
    fit.points = points;
    std::vector<const PowerLawPoint*> refs;
    for (const auto& p : points) refs.push_back(&p);
    auto [slope, intercept] = weighted_fit(refs);
    fit.slope = slope;
    fit.intercept = intercept;

    std::mt19937_64 rng(bootstrap_seed);
    std::uniform_int_distribution<size_t> pick(0, points.size() - 1);
    std::vector<double> slopes;
    slopes.reserve(size_t(bootstrap_resamples));
    std::vector<const PowerLawPoint*> sample(points.size());
    for (int r = 0; r < bootstrap_resamples; ++r) {
        for (auto& s : sample) s = &points[pick(rng)];
        try {
            slopes.push_back(weighted_fit(sample).first);
        } catch (const std::invalid_argument&) {
            // all-equal resample; skip
        }
    }
    if (slopes.empty()) {
        fit.slope_ci_low = fit.slope_ci_high = slope;
        return fit;
    }
    std::sort(slopes.begin(), slopes.end());
    auto quantile = [&](double q) {
        const double pos = q * double(slopes.size() - 1);
        const size_t lo = size_t(pos);
        const size_t hi = std::min(lo + 1, slopes.size() - 1);
        const double frac = pos - double(lo);
        return slopes[lo] * (1 - frac) + slopes[hi] * frac;
    };
    fit.slope_ci_low = std::min(quantile(0.025), slope);
    fit.slope_ci_high = std::max(quantile(0.975), slope);
    return fit;
}

PowerLawPoint bernoulli_point(double scale, const BernoulliEstimate& est) {
    PowerLawPoint p;
    p.scale = scale;
    p.value = est.p_hat;
    // var(log p_hat) ~ (1-p)/(n p); weight is its reciprocal.
    if (est.successes > 0 && est.successes < est.trials) {
        p.weight = double(est.trials) * est.p_hat / (1.0 - est.p_hat);
    } else {
        p.weight = double(est.trials);
    }
    return p;
}

RatioBand ratio_band_check(const std::vector<std::pair<double, double>>& observed_reference) {
    if (observed_reference.empty()) throw std::invalid_argument("ratio_band_check: empty input");
    RatioBand band;
    bool first = true;
    for (const auto& [obs, ref] : observed_reference) {
        if (ref <= 0.0) throw std::invalid_argument("ratio_band_check: nonpositive reference");
        const double r = obs / ref;
        if (first) {
            band.min_ratio = band.max_ratio = r;
            first = false;
        } else {
            band.min_ratio = std::min(band.min_ratio, r);
            band.max_ratio = std::max(band.max_ratio, r);
        }
    }
    band.spread = band.min_ratio > 0.0 ? band.max_ratio / band.min_ratio
                                       : std::numeric_limits<double>::infinity();
    return band;
}

}  // namespace perc
