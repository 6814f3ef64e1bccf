#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "eihlab/analytic.hpp"
#include "eihlab/market_model.hpp"

namespace eihlab {

/// Which asset sits in the numerator of a component's ratio. The bond case
/// is the zero-volatility security B_t = e^{rt}.
enum class Numerator { stock, bond };

/// Upper pays when the ratio ends high, lower when it ends low.
enum class Side { upper, lower };

enum class CapmVariant { prop_mu, prop_mu_bis, cor_2delta, cor_3delta };

enum class BoundKind { mu, mu_bis, index, capm1, capm_final };

std::string_view to_string(Side s);
std::string_view to_string(CapmVariant v);
std::string_view to_string(BoundKind b);

struct DigitalComponent {
    DigitalSpec spec;
    Numerator numerator;
    /// Number of claims held.
    double notional;
    /// notional times the claim's time-0 price.
    double initial_wealth;
};

/// Portfolio of digital exchange claims. Each claim is replicated by a
/// self-financing position in stock, index and bond whose value never goes
/// negative.
class PrudentStrategy {
public:
    PrudentStrategy(std::string label, std::vector<DigitalComponent> components,
                    ReducedParams stock, ReducedParams bond, double T, double r);

    const std::string& label() const { return label_; }
    const std::vector<DigitalComponent>& components() const { return components_; }
    double total_initial_wealth() const { return total_initial_wealth_; }
    /// Smallest K_T/(K_0 I_T) over terminal states in which some component pays.
    double beat_factor() const;
    double horizon() const { return T_; }
    double rate() const { return r_; }
    const ReducedParams& reduced_for(Numerator n) const { return n == Numerator::stock ? stock_ : bond_; }

    /// Same components with notionals scaled so the initial wealth is `wealth`.
    PrudentStrategy scaled_to(double wealth) const;
    /// Union of the two portfolios. Both must come from the same market.
    PrudentStrategy combined_with(const PrudentStrategy& other, std::string label) const;

    /// Value of the numerator asset at time t given the stock price.
    double numerator_value(Numerator n, double t, double stock) const;

    /// K_T on a terminal state.
    double terminal_wealth(double index_T, double stock_T) const;
    /// Number of components whose indicator fires.
    int components_paying(double index_T, double stock_T) const;

private:
    std::string label_;
    std::vector<DigitalComponent> components_;
    ReducedParams stock_;
    ReducedParams bond_;
    double T_;
    double r_;
    double total_initial_wealth_;
};

/// mu_S - mu_I + ||sigma_I||^2 - sigma_S.sigma_I; zero in the CAPM-consistent market.
double capm_excess(const MarketParams& params);
/// mu_I - r - ||sigma_I||^2; zero when the equity premium equals the index variance.
double premium_excess(const MarketParams& params);

/// Pays I_T when S_T/I_T leaves (a, b); initial wealth delta.
PrudentStrategy build_two_sided(const MarketParams& params, double delta);

/// Single claim with threshold at the delta upper quantile; initial wealth delta.
PrudentStrategy build_one_sided(const MarketParams& params, double delta, Side side);

/// build_two_sided with the bond in place of the stock.
PrudentStrategy build_index_vs_bond(const MarketParams& params, double delta);

/// build_one_sided with the bond in place of the stock.
PrudentStrategy build_index_vs_bond_one_sided(const MarketParams& params, double delta, Side side);

/// One-sided index-vs-bond strategy on the side picked by the sign of the
/// premium excess; it pays with probability >= 1 - eps whenever the equity
/// premium bound fails.
PrudentStrategy build_index_premium(const MarketParams& params, double delta);

PrudentStrategy build_capm_composite(const MarketParams& params, double delta, double eps,
                                     CapmVariant variant);

/// Side used by the prop_mu_bis strategy.
Side capm_side(const MarketParams& params);
/// Side used by build_index_premium, expressed for the bond/index ratio.
Side premium_side(const MarketParams& params);

struct WealthTrack {
    std::vector<double> times;
    std::vector<double> analytic_wealth;
    std::vector<double> hedged_wealth;
};

/// Sum of claim values along the path; exact payoff at T.
std::vector<double> analytic_wealth(const PrudentStrategy& strategy, const MarketParams& params,
                                    const PathSample& path);

/// Discrete self-financing replication. Rebalances to the hedge ratios at grid
/// times up to and including rebalance_cutoff, holds positions afterwards.
/// Cash sits in the bond.
std::vector<double> hedged_wealth(const PrudentStrategy& strategy, const MarketParams& params,
                                  const PathSample& path, double rebalance_cutoff);

WealthTrack track_wealth(const PrudentStrategy& strategy, const MarketParams& params,
                         const PathSample& path, double rebalance_cutoff);

struct BoundReport {
    double lhs;
    double rhs;
    bool holds;
    BoundKind kind;
};

/// Evaluates one of the parameter bounds. All are strict except capm_final.
BoundReport bound_check(const MarketParams& params, double delta, double eps, BoundKind which);

/// The inequality defining each terminal event, evaluated verbatim.
bool event_two_sided(const MarketParams& params, double delta, double s_T, double i_T);
bool event_one_sided(const MarketParams& params, double delta, Side side, double s_T, double i_T);
bool event_recover(const MarketParams& params, double delta, double i_T);

} // namespace eihlab
