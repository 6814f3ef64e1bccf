#include "eihlab/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "eihlab/normal.hpp"

namespace eihlab {

namespace {

void require_probability(double x, const char* name) {
    if (!(x > 0.0 && x < 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in (0, 1)");
    }
}

double z_of(double p) { return upper_quantile(p).finite(); }

DigitalComponent priced_component(const ReducedParams& reduced, Direction direction, double log_threshold,
                                  Numerator numerator, double T) {
    const DigitalSpec spec = DigitalSpec::create(direction, std::exp(log_threshold));
    return {spec, numerator, 1.0, digital_price(reduced, spec, T)};
}

PrudentStrategy two_sided(const MarketParams& params, double delta, Numerator numerator, std::string label) {
    require_probability(delta, "delta");
    ReducedParams stock = reduce_dimension(params);
    ReducedParams bond = bond_reduction(params);
    const ReducedParams& reduced = numerator == Numerator::stock ? stock : bond;
    const ThresholdPair th = thresholds(reduced, params.T(), delta);
    std::vector<DigitalComponent> comps{
        priced_component(reduced, Direction::at_most, th.log_a, numerator, params.T()),
        priced_component(reduced, Direction::at_least, th.log_b, numerator, params.T())};
    return PrudentStrategy(std::move(label), std::move(comps), std::move(stock), std::move(bond), params.T(),
                           params.r());
}

PrudentStrategy one_sided(const MarketParams& params, double delta, Side side, Numerator numerator,
                          std::string label) {
    require_probability(delta, "delta");
    ReducedParams stock = reduce_dimension(params);
    ReducedParams bond = bond_reduction(params);
    const ReducedParams& reduced = numerator == Numerator::stock ? stock : bond;
    const ThresholdPair th = threshold_pair(reduced.ratio_vol(), params.T(), z_of(delta));
    std::vector<DigitalComponent> comps{
        side == Side::upper ? priced_component(reduced, Direction::at_least, th.log_b, numerator, params.T())
                            : priced_component(reduced, Direction::at_most, th.log_a, numerator, params.T())};
    return PrudentStrategy(std::move(label), std::move(comps), std::move(stock), std::move(bond), params.T(),
                           params.r());
}

// Centred log ratio ln(X_T/I_T) + s^2 T/2 and the scale s sqrt(T).
struct CentredRatio {
    double value;
    double scale;
};

CentredRatio centred(double log_ratio, double ratio_vol, double T) {
    return {log_ratio + 0.5 * ratio_vol * ratio_vol * T, ratio_vol * std::sqrt(T)};
}

} // namespace

std::string_view to_string(Side s) { return s == Side::upper ? "upper" : "lower"; }

std::string_view to_string(CapmVariant v) {
    switch (v) {
    case CapmVariant::prop_mu: return "prop_mu";
    case CapmVariant::prop_mu_bis: return "prop_mu_bis";
    case CapmVariant::cor_2delta: return "cor_2delta";
    case CapmVariant::cor_3delta: return "cor_3delta";
    }
    return "unknown";
}

std::string_view to_string(BoundKind b) {
    switch (b) {
    case BoundKind::mu: return "mu";
    case BoundKind::mu_bis: return "mu_bis";
    case BoundKind::index: return "index";
    case BoundKind::capm1: return "capm1";
    case BoundKind::capm_final: return "capm_final";
    }
    return "unknown";
}

PrudentStrategy::PrudentStrategy(std::string label, std::vector<DigitalComponent> components,
                                 ReducedParams stock, ReducedParams bond, double T, double r)
    : label_(std::move(label)), components_(std::move(components)), stock_(std::move(stock)),
      bond_(std::move(bond)), T_(T), r_(r), total_initial_wealth_(0.0) {
    if (components_.empty()) throw std::invalid_argument("PrudentStrategy: no components");
    for (const auto& c : components_) {
        if (!(c.notional > 0.0)) throw std::invalid_argument("PrudentStrategy: notionals must be positive");
        total_initial_wealth_ += c.initial_wealth;
    }
    if (!(total_initial_wealth_ > 0.0)) {
        throw std::invalid_argument("PrudentStrategy: initial wealth must be positive");
    }
}

double PrudentStrategy::beat_factor() const {
    double smallest = std::numeric_limits<double>::infinity();
    for (const auto& c : components_) smallest = std::min(smallest, c.notional);
    return smallest / total_initial_wealth_;
}

PrudentStrategy PrudentStrategy::scaled_to(double wealth) const {
    if (!(wealth > 0.0)) throw std::invalid_argument("scaled_to: wealth must be positive");
    const double factor = wealth / total_initial_wealth_;
    auto comps = components_;
    for (auto& c : comps) {
        c.notional *= factor;
        c.initial_wealth *= factor;
    }
    return PrudentStrategy(label_, std::move(comps), stock_, bond_, T_, r_);
}

PrudentStrategy PrudentStrategy::combined_with(const PrudentStrategy& other, std::string label) const {
    if (other.T_ != T_ || other.r_ != r_) {
        throw std::invalid_argument("combined_with: strategies belong to different markets");
    }
    auto comps = components_;
    comps.insert(comps.end(), other.components_.begin(), other.components_.end());
    return PrudentStrategy(std::move(label), std::move(comps), stock_, bond_, T_, r_);
}

double PrudentStrategy::numerator_value(Numerator n, double t, double stock) const {
    return n == Numerator::stock ? stock : std::exp(r_ * t);
}

double PrudentStrategy::terminal_wealth(double index_T, double stock_T) const {
    double units = 0.0;
    for (const auto& c : components_) {
        const double x = numerator_value(c.numerator, T_, stock_T);
        if (c.spec.pays(x / index_T)) units += c.notional;
    }
    return units * index_T;
}

int PrudentStrategy::components_paying(double index_T, double stock_T) const {
    int n = 0;
    for (const auto& c : components_) {
        if (c.spec.pays(numerator_value(c.numerator, T_, stock_T) / index_T)) ++n;
    }
    return n;
}

double capm_excess(const MarketParams& params) {
    const double ni = params.norm_sigma_i();
    return params.mu_s() - params.mu_i() + ni * ni - params.sigma_dot();
}

double premium_excess(const MarketParams& params) {
    const double ni = params.norm_sigma_i();
    return params.mu_i() - params.r() - ni * ni;
}

Side capm_side(const MarketParams& params) { return capm_excess(params) >= 0.0 ? Side::upper : Side::lower; }

Side premium_side(const MarketParams& params) {
    // A bond outpacing the index pushes B/I up.
    return -premium_excess(params) >= 0.0 ? Side::upper : Side::lower;
}

PrudentStrategy build_two_sided(const MarketParams& params, double delta) {
    return two_sided(params, delta, Numerator::stock, "two_sided");
}

PrudentStrategy build_one_sided(const MarketParams& params, double delta, Side side) {
    return one_sided(params, delta, side, Numerator::stock, std::string("one_sided_") + std::string(to_string(side)));
}

PrudentStrategy build_index_vs_bond(const MarketParams& params, double delta) {
    return two_sided(params, delta, Numerator::bond, "index_vs_bond");
}

PrudentStrategy build_index_vs_bond_one_sided(const MarketParams& params, double delta, Side side) {
    return one_sided(params, delta, side, Numerator::bond,
                     std::string("index_vs_bond_") + std::string(to_string(side)));
}

PrudentStrategy build_index_premium(const MarketParams& params, double delta) {
    auto s = build_index_vs_bond_one_sided(params, delta, premium_side(params));
    return PrudentStrategy("index_premium", s.components(), s.reduced_for(Numerator::stock),
                           s.reduced_for(Numerator::bond), s.horizon(), s.rate());
}

PrudentStrategy build_capm_composite(const MarketParams& params, double delta, double eps, CapmVariant variant) {
    require_probability(delta, "delta");
    require_probability(eps, "eps");
    const auto relabel = [&](const PrudentStrategy& s) {
        return PrudentStrategy(std::string(to_string(variant)), s.components(), s.reduced_for(Numerator::stock),
                               s.reduced_for(Numerator::bond), s.horizon(), s.rate());
    };
    switch (variant) {
    case CapmVariant::prop_mu:
        return relabel(build_two_sided(params, delta));
    case CapmVariant::prop_mu_bis:
        return relabel(build_one_sided(params, delta, capm_side(params)));
    case CapmVariant::cor_2delta: {
        const auto stock_leg = build_one_sided(params, delta, capm_side(params)).scaled_to(1.0);
        const auto index_leg = build_index_premium(params, delta).scaled_to(1.0);
        return stock_leg.combined_with(index_leg, std::string(to_string(variant)));
    }
    case CapmVariant::cor_3delta: {
        const auto index_leg = build_index_premium(params, delta).scaled_to(1.0);
        const auto capm1_leg = build_capm_composite(params, delta, eps, CapmVariant::cor_2delta).scaled_to(2.0);
        return index_leg.combined_with(capm1_leg, std::string(to_string(variant)));
    }
    }
    throw std::invalid_argument("build_capm_composite: unknown variant");
}

std::vector<double> analytic_wealth(const PrudentStrategy& strategy, const MarketParams& params,
                                    const PathSample& path) {
    const std::size_t n = path.n_steps();
    const double T = params.T();
    std::vector<double> wealth(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = path.times[k];
        double total = 0.0;
        for (const auto& c : strategy.components()) {
            const double x = strategy.numerator_value(c.numerator, t, path.stock_values[k]);
            total += c.notional *
                     claim_value(strategy.reduced_for(c.numerator), c.spec, t, x, path.index_values[k], T);
        }
        wealth[k] = total;
    }
    wealth[n] = strategy.terminal_wealth(path.index_values[n], path.stock_values[n]);
    return wealth;
}

std::vector<double> hedged_wealth(const PrudentStrategy& strategy, const MarketParams& params,
                                  const PathSample& path, double rebalance_cutoff) {
    const double T = params.T();
    if (!(rebalance_cutoff < T)) throw std::invalid_argument("hedged_wealth: cutoff must precede T");
    const std::size_t n = path.n_steps();
    const double r = params.r();
    const double cutoff = rebalance_cutoff + 1e-12 * T;

    double units_s = 0.0;
    double units_i = 0.0;
    double units_b = 0.0;
    const auto rebalance = [&](std::size_t k, double value) {
        const double t = path.times[k];
        const double S = path.stock_values[k];
        const double I = path.index_values[k];
        units_s = 0.0;
        units_i = 0.0;
        for (const auto& c : strategy.components()) {
            const double x = strategy.numerator_value(c.numerator, t, S);
            const auto h = hedge_ratios(strategy.reduced_for(c.numerator), c.spec, t, x, I, T);
            // A bond-numerator leg's first position is in the bond, which the
            // residual below already carries.
            if (c.numerator == Numerator::stock) units_s += c.notional * h.units_s;
            units_i += c.notional * h.units_i;
        }
        units_b = (value - units_s * S - units_i * I) / std::exp(r * t);
    };

    std::vector<double> wealth(n + 1, 0.0);
    wealth[0] = strategy.total_initial_wealth();
    rebalance(0, wealth[0]);
    for (std::size_t k = 1; k <= n; ++k) {
        const double value = units_s * path.stock_values[k] + units_i * path.index_values[k] +
                             units_b * std::exp(r * path.times[k]);
        wealth[k] = value;
        if (k < n && path.times[k] <= cutoff) rebalance(k, value);
    }
    return wealth;
}

WealthTrack track_wealth(const PrudentStrategy& strategy, const MarketParams& params, const PathSample& path,
                         double rebalance_cutoff) {
    return {path.times, analytic_wealth(strategy, params, path),
            hedged_wealth(strategy, params, path, rebalance_cutoff)};
}

BoundReport bound_check(const MarketParams& params, double delta, double eps, BoundKind which) {
    require_probability(delta, "delta");
    require_probability(eps, "eps");
    const double sqrt_T = std::sqrt(params.T());
    const double s = params.ratio_vol();
    const double ni = params.norm_sigma_i();
    const double ns = params.norm_sigma_s();
    const double z_eps = z_of(eps);
    const double z_delta = z_of(delta);
    const double excess_r = params.mu_s() - params.r();

    BoundReport rep{0.0, 0.0, false, which};
    switch (which) {
    case BoundKind::mu:
        rep.lhs = std::abs(capm_excess(params));
        rep.rhs = (z_of(0.5 * delta) + z_eps) * s / sqrt_T;
        break;
    case BoundKind::mu_bis:
        rep.lhs = std::abs(capm_excess(params));
        rep.rhs = (z_delta + z_eps) * s / sqrt_T;
        break;
    case BoundKind::index:
        rep.lhs = std::abs(premium_excess(params));
        rep.rhs = (z_delta + z_eps) * ni / sqrt_T;
        break;
    case BoundKind::capm1:
        rep.lhs = std::abs(excess_r - params.sigma_dot());
        rep.rhs = (z_delta + z_eps) * (ni + s) / sqrt_T;
        break;
    case BoundKind::capm_final: {
        const double beta = params.sigma_dot() / (ni * ni);
        rep.lhs = std::abs(excess_r - beta * (params.mu_i() - params.r()));
        rep.rhs = (z_delta + z_eps) * (ni + ns + s) / sqrt_T;
        break;
    }
    }
    rep.holds = which == BoundKind::capm_final ? rep.lhs <= rep.rhs : rep.lhs < rep.rhs;
    return rep;
}

bool event_two_sided(const MarketParams& params, double delta, double s_T, double i_T) {
    require_probability(delta, "delta");
    const auto c = centred(std::log(s_T / i_T), params.ratio_vol(), params.T());
    return std::abs(c.value) < z_of(0.5 * delta) * c.scale;
}

bool event_one_sided(const MarketParams& params, double delta, Side side, double s_T, double i_T) {
    require_probability(delta, "delta");
    const auto c = centred(std::log(s_T / i_T), params.ratio_vol(), params.T());
    const double z = z_of(delta);
    return side == Side::upper ? c.value < z * c.scale : c.value > -z * c.scale;
}

bool event_recover(const MarketParams& params, double delta, double i_T) {
    require_probability(delta, "delta");
    const double ni = params.norm_sigma_i();
    const double T = params.T();
    return std::abs(std::log(i_T / std::exp(params.r() * T)) - 0.5 * ni * ni * T) <
           z_of(0.5 * delta) * ni * std::sqrt(T);
}

} // namespace eihlab
