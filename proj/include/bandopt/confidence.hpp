#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "bandopt/running_estimate.hpp"

namespace bandopt {

struct ConfidenceBound {
    double lcb = 0.0;
    double ucb = 0.0;
    double width = 0.0;  // ucb - lcb
};

// Sub-Gaussian (1-delta) half width: sqrt(2 sigma^2 log(2/delta) / l).
inline double ci_half_width(double sigma, double delta, std::int64_t pulls) {
    if (pulls < 1) throw std::logic_error("ci_half_width: no pulls yet");
    return std::sqrt(2.0 * sigma * sigma * std::log(2.0 / delta) / static_cast<double>(pulls));
}

// Interval around a running estimate. Exact arms have zero width and carry
// their brute-force value unchanged.
inline ConfidenceBound confidence(const RunningEstimate& est, double delta, bool exact) {
    if (exact) return {est.mean(), est.mean(), 0.0};
    const double c = ci_half_width(est.sigma_hat(), delta, est.count());
    return {est.mean() - c, est.mean() + c, 2.0 * c};
}

// Smooth scalar transform g with bounded first/second derivatives; the
// caller asserts |g'| <= g_prime_bound and |g''| <= g_second_bound on the
// closure of the observed estimate range.
struct SmoothWrap {
    std::function<double(double)> g;
    std::function<double(double)> g_prime;
    double g_prime_bound = 1.0;
    double g_second_bound = 0.0;
};

// Delta-method interval for g(mean): first-order propagation |g'(m)|*C plus
// a second-order bias guard kappa*C^2/2.
inline ConfidenceBound delta_confidence(const RunningEstimate& est, const SmoothWrap& wrap,
                                        double delta, bool exact = false) {
    const double center = wrap.g(est.mean());
    if (!std::isfinite(center)) throw std::domain_error("delta_confidence: g(mean) not finite");
    if (exact) return {center, center, 0.0};
    const double c = ci_half_width(est.sigma_hat(), delta, est.count());
    const double half = std::abs(wrap.g_prime(est.mean())) * c + 0.5 * wrap.g_second_bound * c * c;
    return {center - half, center + half, 2.0 * half};
}

// Inverse standard-normal CDF: Acklam's rational approximation refined with
// one Halley step; good to ~1e-15 over (0,1).
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p outside (0,1)");
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Halley refinement against erfc
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * 3.141592653589793238462643383279502884) *
                     std::exp(x * x / 2.0);
    x = x - u / (1.0 + x * u / 2.0);
    return x;
}

}  // namespace bandopt
