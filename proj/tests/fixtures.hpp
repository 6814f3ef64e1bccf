#pragma once

#include "eihlab/market_model.hpp"
#include "eihlab/strategies.hpp"

namespace eihlab::fixtures {

// Two-factor reference market: ||sigma_I||^2 = 0.025, sigma_S.sigma_I = 0.0325,
// ||sigma_S - sigma_I||^2 = 0.0325, capm_excess = -0.0175.
inline MarketParams set_a(double T = 10.0) {
    return MarketParams::create(0.06, 0.05, {0.15, 0.05}, {0.25, -0.10}, 0.02, T);
}

// set_a with mu_S moved so that capm_excess is exactly `excess`.
inline MarketParams set_a_with_excess(double excess, double T = 10.0) {
    const MarketParams p = set_a(T);
    const double ni = p.norm_sigma_i();
    return p.with_drifts(p.mu_i(), p.mu_i() - ni * ni + p.sigma_dot() + excess);
}

inline MarketParams set_a_capm(double T = 10.0) { return set_a_with_excess(0.0, T); }

} // namespace eihlab::fixtures
