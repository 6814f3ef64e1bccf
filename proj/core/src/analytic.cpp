#include "eihlab/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eihlab {

namespace {

void require_before_expiry(double t, double T, double S_t, double I_t) {
    if (!(t >= 0.0) || !(t < T)) {
        throw std::invalid_argument("claim valuation requires 0 <= t < T (t=" + std::to_string(t) +
                                    ", T=" + std::to_string(T) + ")");
    }
    if (!(S_t > 0.0) || !(I_t > 0.0)) {
        throw std::invalid_argument("claim valuation requires positive prices");
    }
}

double direction_sign(Direction d) { return d == Direction::at_least ? 1.0 : -1.0; }

// Standardized distance of the current ratio from the threshold under the
// index-numeraire measure, where ln R drifts at -s^2/2 with volatility s.
struct Moneyness {
    double d;
    double scale;  // s * sqrt(tau)
};

Moneyness moneyness(double ratio_vol, double log_ratio_over_threshold, double tau) {
    const double scale = ratio_vol * std::sqrt(tau);
    return {(log_ratio_over_threshold - 0.5 * ratio_vol * ratio_vol * tau) / scale, scale};
}

} // namespace

double gaussian_halfspace_expectation(const Vec2& u, const Vec2& v, double c) {
    const double norm_v = std::hypot(v[0], v[1]);
    if (norm_v == 0.0) throw std::invalid_argument("gaussian_halfspace_expectation: v must be nonzero");
    const double uu = u[0] * u[0] + u[1] * u[1];
    const double uv = u[0] * v[0] + u[1] * v[1];
    return std::exp(0.5 * uu) * std_normal_cdf((uv - c) / norm_v);
}

std::string_view to_string(Direction d) { return d == Direction::at_least ? "at_least" : "at_most"; }

DigitalSpec DigitalSpec::create(Direction direction, double threshold) {
    if (!(threshold > 0.0) || std::isnan(threshold)) {
        throw std::invalid_argument("DigitalSpec: threshold must be positive");
    }
    return {direction, threshold};
}

double digital_price(const ReducedParams& reduced, const DigitalSpec& spec, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("digital_price: tau must be positive");
    const double s = reduced.ratio_vol();
    if (s == 0.0) throw std::invalid_argument("digital_price: ratio volatility must be nonzero");
    // at_most is one minus the at_least probability at the same threshold.
    const auto m = moneyness(s, -std::log(spec.threshold), tau);
    return std_normal_cdf(direction_sign(spec.direction) * m.d);
}

ThresholdPair threshold_pair(double ratio_vol, double T, double z) {
    const double centre = -0.5 * ratio_vol * ratio_vol * T;
    const double half_width = z * ratio_vol * std::sqrt(T);
    ThresholdPair out;
    out.log_b = centre + half_width;
    out.log_a = centre - half_width;
    out.b = std::exp(out.log_b);
    out.a = std::exp(out.log_a);
    return out;
}

ThresholdPair thresholds(const ReducedParams& reduced, double T, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("thresholds: delta must lie in (0, 1)");
    }
    if (!(T > 0.0)) throw std::invalid_argument("thresholds: T must be positive");
    return threshold_pair(reduced.ratio_vol(), T, upper_quantile(0.5 * delta).finite());
}

double claim_value(const ReducedParams& reduced, const DigitalSpec& spec, double t, double S_t,
                   double I_t, double T) {
    require_before_expiry(t, T, S_t, I_t);
    const double s = reduced.ratio_vol();
    const double log_moneyness = std::log(S_t / I_t) - std::log(spec.threshold);
    if (s == 0.0) {
        // Degenerate ratio dynamics (test hooks only): the ratio is frozen.
        return spec.pays(S_t / I_t) ? I_t : 0.0;
    }
    const auto m = moneyness(s, log_moneyness, T - t);
    return I_t * std_normal_cdf(direction_sign(spec.direction) * m.d);
}

HedgeRatios hedge_ratios(const ReducedParams& reduced, const DigitalSpec& spec, double t,
                         double S_t, double I_t, double T) {
    require_before_expiry(t, T, S_t, I_t);
    const double s = reduced.ratio_vol();
    if (s == 0.0) {
        const double units_i = spec.pays(S_t / I_t) ? 1.0 : 0.0;
        return {0.0, units_i, 0.0};
    }
    const double sign = direction_sign(spec.direction);
    const auto m = moneyness(s, std::log(S_t / I_t) - std::log(spec.threshold), T - t);
    const double prob = std_normal_cdf(sign * m.d);
    // V = I F(sign d) with dd/dS = 1/(S scale) and dd/dI = -1/(I scale).
    const double kernel = sign * std_normal_pdf(m.d) / m.scale;
    HedgeRatios h;
    h.units_s = I_t * kernel / S_t;
    h.units_i = prob - kernel;
    h.bond_value = I_t * prob - h.units_s * S_t - h.units_i * I_t;
    return h;
}

} // namespace eihlab
