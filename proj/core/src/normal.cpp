#include "eihlab/normal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eihlab {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// Acklam's rational approximation, relative error ~1.2e-9 before refinement.
constexpr double kA[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                         1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kB[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                         6.680131188771972e+01,  -1.328068155288572e+01};
constexpr double kC[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                         -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kD[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                         3.754408661907416e+00};
constexpr double kLowBreak = 0.02425;

double acklam(double p) {
    if (p < kLowBreak) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
               ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
    }
    if (p > 1.0 - kLowBreak) {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        return -(((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
               ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * q /
           (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1.0);
}

} // namespace

double ExtendedReal::finite() const {
    if (is_minus_infinity()) throw std::domain_error("ExtendedReal: value is -infinity");
    return value_;
}

double std_normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double std_normal_inverse_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("std_normal_inverse_cdf: p must lie in (0, 1), got " +
                                    std::to_string(p));
    }
    double x = acklam(p);
    // One Halley step. The residual is taken on the smaller tail so it keeps
    // its relative accuracy far from the median.
    const double residual = x < 0.0 ? std_normal_cdf(x) - p : (1.0 - p) - std_normal_cdf(-x);
    const double u = residual / std_normal_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

ExtendedReal upper_quantile(double p) {
    if (std::isnan(p) || p <= 0.0) {
        throw std::invalid_argument("upper_quantile: p must be positive, got " + std::to_string(p));
    }
    if (p >= 1.0) return ExtendedReal::minus_infinity();
    return ExtendedReal(-std_normal_inverse_cdf(p));
}

} // namespace eihlab
