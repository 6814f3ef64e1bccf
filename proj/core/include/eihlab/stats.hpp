#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace eihlab::stats {

struct Interval {
    double lo;
    double hi;

    bool contains(double x) const { return lo <= x && x <= hi; }
    double half_width() const { return 0.5 * (hi - lo); }
};

/// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for a binomial proportion; always inside [0, 1].
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95);

/// Running mean and variance. merge() combines partial results; a fixed
/// merge order gives bit-identical totals.
class MomentAccumulator {
public:
    void add(double x);
    void merge(const MomentAccumulator& other);

    std::uint64_t count() const { return n_; }
    double mean() const { return mean_; }
    /// Unbiased sample variance.
    double variance() const;
    double stddev() const;
    double standard_error() const;

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

double median(std::vector<double> values);

/// sup |F_n(x) - F(x)| against a continuous reference cdf.
template <typename Cdf>
double ks_statistic(std::vector<double> sample, Cdf cdf) {
    std::sort(sample.begin(), sample.end());
    const auto n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t k = 0; k < sample.size(); ++k) {
        const double f = cdf(sample[k]);
        d = std::max({d, (static_cast<double>(k) + 1.0) / n - f, f - static_cast<double>(k) / n});
    }
    return d;
}

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic critical value of the one-sample statistic at level alpha.
double ks_critical(std::size_t n, double alpha);
/// Asymptotic critical value of the two-sample statistic at level alpha.
double ks_critical_two_sample(std::size_t n, std::size_t m, double alpha);

/// Least-squares slope of y on x.
double ols_slope(std::span<const double> x, std::span<const double> y);

} // namespace eihlab::stats
