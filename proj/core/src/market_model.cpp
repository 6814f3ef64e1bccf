#include "eihlab/market_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "eihlab/rng.hpp"

namespace eihlab {

namespace {

constexpr double kCollinearTol = 1e-12;

double dot2(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

void validate(std::size_t d_i, std::size_t d_s, const std::vector<double>& sigma_i,
              const std::vector<double>& sigma_s, double T, double mu_i, double mu_s, double r) {
    if (d_i != d_s) throw std::invalid_argument("MarketParams: sigma_i and sigma_s differ in length");
    if (d_i < 2) throw std::invalid_argument("MarketParams: need d >= 2 Brownian drivers");
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("MarketParams: horizon T must be positive");
    if (!std::isfinite(mu_i) || !std::isfinite(mu_s) || !std::isfinite(r)) {
        throw std::invalid_argument("MarketParams: drifts and rate must be finite");
    }
    for (std::size_t j = 0; j < d_i; ++j) {
        if (!std::isfinite(sigma_i[j]) || !std::isfinite(sigma_s[j])) {
            throw std::invalid_argument("MarketParams: volatility components must be finite");
        }
    }
    if (norm(sigma_i) == 0.0) throw std::invalid_argument("MarketParams: sigma_i must be nonzero");
    if (norm(sigma_s) == 0.0) throw std::invalid_argument("MarketParams: sigma_s must be nonzero");
    if (sigma_i == sigma_s) throw std::invalid_argument("MarketParams: sigma_i must differ from sigma_s");
}

// Unit vector orthogonal to e1, taken from the standard basis vector least
// aligned with e1.
std::vector<double> pad_orthogonal(const std::vector<double>& e1) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < e1.size(); ++j) {
        if (std::abs(e1[j]) < std::abs(e1[best])) best = j;
    }
    std::vector<double> e2(e1.size(), 0.0);
    e2[best] = 1.0;
    const double proj = e1[best];
    for (std::size_t j = 0; j < e2.size(); ++j) e2[j] -= proj * e1[j];
    const double n = norm(e2);
    for (auto& x : e2) x /= n;
    return e2;
}

} // namespace

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

std::string_view to_string(Measure m) {
    return m == Measure::physical ? "physical" : "risk-neutral";
}

Measure parse_measure(std::string_view text) {
    if (text == "physical") return Measure::physical;
    if (text == "risk-neutral" || text == "risk_neutral") return Measure::risk_neutral;
    throw std::invalid_argument("unknown measure '" + std::string(text) + "'");
}

namespace test_hooks {
MarketParams unchecked_market_params(double mu_i, double mu_s, std::vector<double> sigma_i,
                                     std::vector<double> sigma_s, double r, double T) {
    return MarketParams(mu_i, mu_s, std::move(sigma_i), std::move(sigma_s), r, T);
}
} // namespace test_hooks

MarketParams MarketParams::create(double mu_i, double mu_s, std::vector<double> sigma_i,
                                  std::vector<double> sigma_s, double r, double T) {
    validate(sigma_i.size(), sigma_s.size(), sigma_i, sigma_s, T, mu_i, mu_s, r);
    return MarketParams(mu_i, mu_s, std::move(sigma_i), std::move(sigma_s), r, T);
}

MarketParams MarketParams::with_horizon(double T) const {
    return create(mu_i_, mu_s_, sigma_i_, sigma_s_, r_, T);
}

MarketParams MarketParams::with_drifts(double mu_i, double mu_s) const {
    return create(mu_i, mu_s, sigma_i_, sigma_s_, r_, T_);
}

MarketParams MarketParams::with_rate(double r) const {
    return create(mu_i_, mu_s_, sigma_i_, sigma_s_, r, T_);
}

double MarketParams::ratio_vol() const {
    double s = 0.0;
    for (std::size_t j = 0; j < sigma_i_.size(); ++j) {
        const double diff = sigma_s_[j] - sigma_i_[j];
        s += diff * diff;
    }
    return std::sqrt(s);
}

double ReducedParams::ratio_vol() const {
    return std::hypot(sigma_s_bar[0] - sigma_i_bar[0], sigma_s_bar[1] - sigma_i_bar[1]);
}

ReducedParams reduce_dimension(const MarketParams& params) {
    const auto& si = params.sigma_i();
    const auto& ss = params.sigma_s();
    const std::size_t d = si.size();

    ReducedParams out;
    const double norm_i = norm(si);
    out.basis_e1.assign(d, 0.0);
    if (norm_i > 0.0) {
        for (std::size_t j = 0; j < d; ++j) out.basis_e1[j] = si[j] / norm_i;
    } else {
        out.basis_e1[0] = 1.0;  // reachable only through test hooks
    }

    const double s1 = dot(ss, out.basis_e1);
    std::vector<double> remainder(d);
    for (std::size_t j = 0; j < d; ++j) remainder[j] = ss[j] - s1 * out.basis_e1[j];
    const double rem_norm = norm(remainder);

    const double scale = std::max(norm_i, norm(ss));
    if (rem_norm <= kCollinearTol * std::max(scale, 1.0)) {
        out.basis_e2 = pad_orthogonal(out.basis_e1);
        out.sigma_s_bar = {s1, 0.0};
    } else {
        out.basis_e2 = std::move(remainder);
        for (auto& x : out.basis_e2) x /= rem_norm;
        out.sigma_s_bar = {s1, rem_norm};
    }
    out.sigma_i_bar = {norm_i, 0.0};
    return out;
}

ReducedParams bond_reduction(const MarketParams& params) {
    ReducedParams out = reduce_dimension(params);
    out.sigma_s_bar = {0.0, 0.0};
    return out;
}

TerminalSampler::TerminalSampler(const MarketParams& params, Measure measure, std::uint64_t seed)
    : seed_(seed) {
    const ReducedParams reduced = reduce_dimension(params);
    sigma_i_bar_ = reduced.sigma_i_bar;
    sigma_s_bar_ = reduced.sigma_s_bar;
    const double T = params.T();
    log_drift_i_ = (params.drift_i(measure) - 0.5 * dot2(sigma_i_bar_, sigma_i_bar_)) * T;
    log_drift_s_ = (params.drift_s(measure) - 0.5 * dot2(sigma_s_bar_, sigma_s_bar_)) * T;
    sqrt_T_ = std::sqrt(T);
}

TerminalPair TerminalSampler::from_normals(const Vec2& xi) const {
    const Vec2 dw{sqrt_T_ * xi[0], sqrt_T_ * xi[1]};
    return {std::exp(log_drift_i_ + dot2(sigma_i_bar_, dw)),
            std::exp(log_drift_s_ + dot2(sigma_s_bar_, dw))};
}

TerminalPair TerminalSampler::sample(std::uint64_t path_index) const {
    return from_normals(normal_pair(seed_, path_index, 0));
}

std::vector<TerminalPair> simulate_terminal(const MarketParams& params, Measure measure,
                                            std::size_t n_paths, std::uint64_t seed) {
    if (n_paths < 1) throw std::invalid_argument("simulate_terminal: n_paths must be >= 1");
    const TerminalSampler sampler(params, measure, seed);
    std::vector<TerminalPair> out;
    out.reserve(n_paths);
    for (std::size_t k = 0; k < n_paths; ++k) out.push_back(sampler.sample(k));
    return out;
}

namespace detail {

PathSample path_from_normals(const MarketParams& params, Measure measure,
                             std::span<const Vec2> normals) {
    const std::size_t n = normals.size();
    if (n < 1) throw std::invalid_argument("simulate_path: n_steps must be >= 1");
    const ReducedParams reduced = reduce_dimension(params);
    const Vec2& si = reduced.sigma_i_bar;
    const Vec2& ss = reduced.sigma_s_bar;
    const double T = params.T();
    const double dt = T / static_cast<double>(n);
    const double sqrt_dt = std::sqrt(dt);
    const double step_drift_i = (params.drift_i(measure) - 0.5 * dot2(si, si)) * dt;
    const double step_drift_s = (params.drift_s(measure) - 0.5 * dot2(ss, ss)) * dt;

    PathSample path;
    path.times.resize(n + 1);
    path.index_values.resize(n + 1);
    path.stock_values.resize(n + 1);
    path.driver_increments.resize(n);
    path.times[0] = 0.0;
    path.index_values[0] = MarketParams::I0;
    path.stock_values[0] = MarketParams::S0;

    double log_i = 0.0;
    double log_s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 dw{sqrt_dt * normals[k][0], sqrt_dt * normals[k][1]};
        path.driver_increments[k] = dw;
        log_i += step_drift_i + dot2(si, dw);
        log_s += step_drift_s + dot2(ss, dw);
        path.times[k + 1] = k + 1 == n ? T : T * static_cast<double>(k + 1) / static_cast<double>(n);
        path.index_values[k + 1] = std::exp(log_i);
        path.stock_values[k + 1] = std::exp(log_s);
    }
    return path;
}

} // namespace detail

PathSample simulate_path(const MarketParams& params, Measure measure, std::size_t n_steps,
                         std::uint64_t seed, std::uint64_t path_index) {
    if (n_steps < 1) throw std::invalid_argument("simulate_path: n_steps must be >= 1");
    std::vector<Vec2> normals(n_steps);
    for (std::size_t k = 0; k < n_steps; ++k) {
        normals[k] = normal_pair(seed, path_index, static_cast<std::uint32_t>(k));
    }
    return detail::path_from_normals(params, measure, normals);
}

LogRatioLaw log_ratio_law(const MarketParams& params, Measure measure) {
    const double T = params.T();
    const double ni = params.norm_sigma_i();
    const double ns = params.norm_sigma_s();
    const double mean =
        (params.drift_s(measure) - params.drift_i(measure)) * T + 0.5 * (ni * ni - ns * ns) * T;
    return {mean, params.ratio_vol() * std::sqrt(T)};
}

} // namespace eihlab
