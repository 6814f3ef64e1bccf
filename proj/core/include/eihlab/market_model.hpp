#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace eihlab {

using Vec2 = std::array<double, 2>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

enum class Measure { physical, risk_neutral };

std::string_view to_string(Measure m);
/// Accepts "physical", "risk-neutral" and "risk_neutral".
Measure parse_measure(std::string_view text);

class MarketParams;

namespace test_hooks {
/// Builds parameters without validation. Test surface only.
MarketParams unchecked_market_params(double mu_i, double mu_s, std::vector<double> sigma_i,
                                     std::vector<double> sigma_s, double r, double T);
} // namespace test_hooks

/// Two-security Black-Scholes market driven by d independent Brownian motions.
/// Initial prices are fixed to one.
class MarketParams {
public:
    /// Validates and constructs. Throws std::invalid_argument when d < 2,
    /// T <= 0, the volatility vectors differ in length, either is zero, or
    /// they are equal.
    static MarketParams create(double mu_i, double mu_s, std::vector<double> sigma_i,
                               std::vector<double> sigma_s, double r, double T);

    std::size_t d() const { return sigma_i_.size(); }
    double mu_i() const { return mu_i_; }
    double mu_s() const { return mu_s_; }
    const std::vector<double>& sigma_i() const { return sigma_i_; }
    const std::vector<double>& sigma_s() const { return sigma_s_; }
    double r() const { return r_; }
    double T() const { return T_; }
    static constexpr double I0 = 1.0;
    static constexpr double S0 = 1.0;

    /// Appreciation rates under the given measure.
    double drift_i(Measure m) const { return m == Measure::physical ? mu_i_ : r_; }
    double drift_s(Measure m) const { return m == Measure::physical ? mu_s_ : r_; }

    /// Copies with one field replaced, re-validated.
    MarketParams with_horizon(double T) const;
    MarketParams with_drifts(double mu_i, double mu_s) const;
    MarketParams with_rate(double r) const;

    double norm_sigma_i() const { return norm(sigma_i_); }
    double norm_sigma_s() const { return norm(sigma_s_); }
    double sigma_dot() const { return dot(sigma_s_, sigma_i_); }
    /// ||sigma_S - sigma_I||
    double ratio_vol() const;

private:
    MarketParams(double mu_i, double mu_s, std::vector<double> sigma_i, std::vector<double> sigma_s,
                 double r, double T)
        : mu_i_(mu_i), mu_s_(mu_s), sigma_i_(std::move(sigma_i)), sigma_s_(std::move(sigma_s)),
          r_(r), T_(T) {}

    friend MarketParams test_hooks::unchecked_market_params(double, double, std::vector<double>,
                                                         std::vector<double>, double, double);

    double mu_i_;
    double mu_s_;
    std::vector<double> sigma_i_;
    std::vector<double> sigma_s_;
    double r_;
    double T_;
};

/// The market rewritten on an orthonormal basis of span{sigma_I, sigma_S}.
struct ReducedParams {
    Vec2 sigma_i_bar;
    Vec2 sigma_s_bar;
    std::vector<double> basis_e1;
    std::vector<double> basis_e2;

    /// ||sigma_S_bar - sigma_I_bar||, the volatility of S/I.
    double ratio_vol() const;
};

/// Orthonormal reduction. e1 = sigma_I/||sigma_I||; e2 orthogonalizes sigma_S
/// against e1, or pads with any unit vector orthogonal to e1 when the two
/// volatility vectors are collinear.
ReducedParams reduce_dimension(const MarketParams& params);

/// Reduction for the zero-coupon bond B_t = e^{rt} in the stock's place:
/// sigma_S_bar = 0, so the ratio volatility is ||sigma_I||.
ReducedParams bond_reduction(const MarketParams& params);

struct TerminalPair {
    double index;
    double stock;
};

/// Exact sampler of (I_T, S_T). Sample k depends only on (seed, k).
class TerminalSampler {
public:
    TerminalSampler(const MarketParams& params, Measure measure, std::uint64_t seed);

    TerminalPair sample(std::uint64_t path_index) const;
    /// The pair produced from a given standard normal 2-vector.
    TerminalPair from_normals(const Vec2& xi) const;

private:
    Vec2 sigma_i_bar_;
    Vec2 sigma_s_bar_;
    double log_drift_i_;
    double log_drift_s_;
    double sqrt_T_;
    std::uint64_t seed_;
};

std::vector<TerminalPair> simulate_terminal(const MarketParams& params, Measure measure,
                                            std::size_t n_paths, std::uint64_t seed);

struct PathSample {
    std::vector<double> times;
    std::vector<double> index_values;
    std::vector<double> stock_values;
    /// Increments of the reduced Brownian motion, one per step.
    std::vector<Vec2> driver_increments;

    std::size_t n_steps() const { return driver_increments.size(); }
};

/// Exact lognormal stepping on a uniform grid of n_steps. With n_steps = 1
/// the terminal values coincide bit for bit with TerminalSampler::sample.
PathSample simulate_path(const MarketParams& params, Measure measure, std::size_t n_steps,
                         std::uint64_t seed, std::uint64_t path_index);

struct LogRatioLaw {
    double mean;
    double std;
};

/// Normal law of ln(S_T/I_T) under the given measure.
LogRatioLaw log_ratio_law(const MarketParams& params, Measure measure = Measure::physical);

namespace detail {
/// Builds a path from caller-supplied standard normal pairs (one per step).
PathSample path_from_normals(const MarketParams& params, Measure measure,
                             std::span<const Vec2> normals);
} // namespace detail

} // namespace eihlab
