#pragma once

#include <compare>
#include <limits>

namespace eihlab {

/// A real number or negative infinity. Upper quantiles of levels p >= 1
/// are -infinity, and that value has to survive arithmetic on thresholds.
class ExtendedReal {
public:
    constexpr explicit ExtendedReal(double v) : value_(v) {}

    static constexpr ExtendedReal minus_infinity() {
        return ExtendedReal(-std::numeric_limits<double>::infinity());
    }

    constexpr bool is_minus_infinity() const { return value_ == -std::numeric_limits<double>::infinity(); }
    constexpr bool is_finite() const { return !is_minus_infinity(); }

    /// Throws std::domain_error on -infinity.
    double finite() const;

    /// Raw IEEE value; -inf for the sentinel.
    constexpr double raw() const { return value_; }

    friend constexpr auto operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
        return a.value_ <=> b.value_;
    }
    friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) = default;

private:
    double value_;
};

double std_normal_pdf(double x);

/// Standard normal distribution function, absolute error below 1e-12.
double std_normal_cdf(double x);

/// Inverse of std_normal_cdf on (0, 1).
double std_normal_inverse_cdf(double p);

/// z_p with P(xi >= z_p) = p. Returns -infinity for p >= 1; throws
/// std::invalid_argument for p <= 0.
ExtendedReal upper_quantile(double p);

} // namespace eihlab
