#pragma once

#include <string_view>

#include "eihlab/market_model.hpp"
#include "eihlab/normal.hpp"

namespace eihlab {

/// E(e^{u.xi} 1{v.xi >= c}) for xi ~ N(0, I_2), in closed form
/// e^{|u|^2/2} F((u.v - c)/|v|). Throws std::invalid_argument when v = 0.
double gaussian_halfspace_expectation(const Vec2& u, const Vec2& v, double c);

enum class Direction { at_least, at_most };

std::string_view to_string(Direction d);

/// Digital exchange claim paying I_T 1{S_T/I_T >= threshold} (at_least) or
/// I_T 1{S_T/I_T <= threshold} (at_most).
struct DigitalSpec {
    Direction direction;
    double threshold;

    /// Throws std::invalid_argument unless threshold > 0.
    static DigitalSpec create(Direction direction, double threshold);

    /// Payoff indicator on the terminal ratio. The at_least side is closed.
    bool pays(double ratio) const {
        return direction == Direction::at_least ? ratio >= threshold : ratio <= threshold;
    }
};

/// Price, per unit of current index, of the claim with time to expiry tau
/// when S/I currently equals one.
double digital_price(const ReducedParams& reduced, const DigitalSpec& spec, double tau);

struct ThresholdPair {
    double a;
    double b;
    double log_a;
    double log_b;
};

/// Ratio thresholds centred on the index-measure median of ln(S_T/I_T):
/// ln b = -s^2 T/2 + z s sqrt(T), ln a = -s^2 T/2 - z s sqrt(T), where s is
/// the ratio volatility. Accepts any finite quantile z.
ThresholdPair threshold_pair(double ratio_vol, double T, double z);

/// Thresholds at which each of the two digital claims costs delta/2.
/// Throws std::invalid_argument unless delta lies in (0, 1).
ThresholdPair thresholds(const ReducedParams& reduced, double T, double delta);

/// Time-t value of the claim given current prices. Requires 0 <= t < T.
double claim_value(const ReducedParams& reduced, const DigitalSpec& spec, double t, double S_t,
                   double I_t, double T);

struct HedgeRatios {
    double units_s;
    double units_i;
    double bond_value;
};

/// Replicating positions: partial derivatives of claim_value in S and I.
/// The claim value is homogeneous of degree one in (S, I), so the bond leg
/// vanishes up to rounding.
HedgeRatios hedge_ratios(const ReducedParams& reduced, const DigitalSpec& spec, double t,
                         double S_t, double I_t, double T);

} // namespace eihlab
