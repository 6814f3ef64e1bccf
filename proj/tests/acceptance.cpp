// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "eihlab/analytic.hpp"
#include "eihlab/experiments.hpp"
#include "eihlab/normal.hpp"
#include "eihlab/parallel.hpp"
#include "eihlab/rng.hpp"
#include "eihlab/stats.hpp"
#include "eihlab/strategies.hpp"
#include "eihlab_cli/commands.hpp"
#include "eihlab_cli/report_io.hpp"
#include "fixtures.hpp"

using namespace eihlab;

namespace {

constexpr std::size_t kMillion = 1'000'000;

struct Outcome {
    bool ok = true;
    std::string detail;
};

struct Criterion {
    std::string id;
    std::string name;
    double time_limit_s;
    std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome lemma_fidelity() {
    const Table t = lemma_crosscheck(100, kDefaultSeed, 10'000);
    double worst = 0.0;
    double worst_u = 0.0, worst_v = 0.0, worst_c = 0.0;
    for (const auto& row : t.rows) {
        worst = std::max(worst, row[7]);
        worst_u = std::max(worst_u, std::hypot(row[0], row[1]));
        worst_v = std::max(worst_v, std::hypot(row[2], row[3]));
        worst_c = std::max(worst_c, std::abs(row[4]));
    }
    const bool in_domain = worst_u <= 2.0 && worst_v <= 2.0 && worst_c <= 3.0;
    return {t.rows.size() == 100 && worst < 1e-8 && in_domain,
            fmt("100 triples, max |closed - quadrature| = %.3g (tol 1e-8); max |u| %.3f, |v| %.3f, |c| %.3f", worst,
                worst_u, worst_v, worst_c)};
}

Outcome price_construction() {
    const MarketParams p = fixtures::set_a();
    const ReducedParams reduced = reduce_dimension(p);
    Outcome out;
    double worst = 0.0;
    for (double delta : {0.01, 0.05, 0.1, 0.5}) {
        const auto th = thresholds(reduced, p.T(), delta);
        worst = std::max({worst,
                          std::abs(digital_price(reduced, DigitalSpec::create(Direction::at_most, th.a), p.T()) - delta / 2),
                          std::abs(digital_price(reduced, DigitalSpec::create(Direction::at_least, th.b), p.T()) - delta / 2)});
    }
    out.ok = worst <= 1e-12;

    constexpr double delta = 0.05;
    const auto th = thresholds(reduced, p.T(), delta);
    const auto lo = DigitalSpec::create(Direction::at_most, th.a);
    const auto hi = DigitalSpec::create(Direction::at_least, th.b);
    const TerminalSampler sampler(p, Measure::risk_neutral, kDefaultSeed);
    const double disc = std::exp(-p.r() * p.T());
    struct Pair {
        stats::MomentAccumulator lo, hi;
    };
    const auto parts = run_blocks(kMillion, 1, [&](std::size_t b, std::size_t e) {
        Pair acc;
        for (std::size_t k = b; k < e; ++k) {
            const auto x = sampler.sample(k);
            const double ratio = x.stock / x.index;
            acc.lo.add(lo.pays(ratio) ? disc * x.index : 0.0);
            acc.hi.add(hi.pays(ratio) ? disc * x.index : 0.0);
        }
        return acc;
    });
    Pair total;
    for (const auto& part : parts) {
        total.lo.merge(part.lo);
        total.hi.merge(part.hi);
    }
    const double z_lo = (total.lo.mean() - delta / 2) / total.lo.standard_error();
    const double z_hi = (total.hi.mean() - delta / 2) / total.hi.standard_error();
    out.ok = out.ok && std::abs(z_lo) <= 3.0 && std::abs(z_hi) <= 3.0;
    out.detail = fmt("max |price - delta/2| = %.3g over delta in {0.01,0.05,0.1,0.5}; risk-neutral MC (1e6) "
                     "lower %.6f (z %.2f), upper %.6f (z %.2f)",
                     worst, total.lo.mean(), z_lo, total.hi.mean(), z_hi);
    return out;
}

Outcome dichotomy() {
    ExperimentConfig base{fixtures::set_a()};
    base.n_paths = kMillion;
    const auto off = verify_two_sided(base);
    Outcome out{off.dichotomy_violations == 0,
                fmt("reference market: %llu violations / 1e6", static_cast<unsigned long long>(off.dichotomy_violations))};
    for (double delta : {0.01, 0.05, 0.1}) {
        ExperimentConfig c{fixtures::set_a_capm()};
        c.n_paths = kMillion;
        c.delta = delta;
        const auto rep = verify_two_sided(c);
        const bool covers = rep.wilson_ci_95.contains(1.0 - delta);
        out.ok = out.ok && covers && rep.dichotomy_violations == 0;
        out.detail += fmt("; delta %.2f: CI [%.5f, %.5f] %s %.2f, %llu violations", delta, rep.wilson_ci_95.lo,
                          rep.wilson_ci_95.hi, covers ? "covers" : "MISSES", 1.0 - delta,
                          static_cast<unsigned long long>(rep.dichotomy_violations));
    }
    return out;
}

Outcome mu_bis_guarantee() {
    constexpr double eps = 0.05;
    const double margin = bound_check(fixtures::set_a(), 0.05, eps, BoundKind::mu_bis).rhs;
    Outcome out;
    for (double k : {1.0, 2.0}) {
        ExperimentConfig c{fixtures::set_a_with_excess(k * margin)};
        c.proposition = Proposition::mu_bis;
        c.n_paths = kMillion;
        const auto rep = verify_capm(c);
        const bool ok = k == 1.0 ? rep.wilson_ci_95.contains(1.0 - eps) : rep.wilson_ci_95.lo > 1.0 - eps;
        out.ok = out.ok && ok && rep.dichotomy_violations == 0;
        if (!out.detail.empty()) out.detail += "; ";
        out.detail += fmt("%gx margin: beat CI [%.5f, %.5f] (%s), %llu violations", k, rep.wilson_ci_95.lo,
                          rep.wilson_ci_95.hi,
                          k == 1.0 ? (ok ? "covers 0.95" : "MISSES 0.95") : (ok ? "lower > 0.95" : "lower <= 0.95"),
                          static_cast<unsigned long long>(rep.dichotomy_violations));
    }
    return out;
}

Outcome equity_premium() {
    constexpr double delta = 0.05;
    constexpr double eps = 0.05;
    const MarketParams a = fixtures::set_a();
    const double ni = a.norm_sigma_i();
    Outcome out;

    ExperimentConfig c1{a.with_drifts(a.r() + ni * ni, a.mu_s())};
    c1.proposition = Proposition::index;
    c1.n_paths = kMillion;
    const auto rep1 = verify_index_premium(c1);
    const auto& recover = rep1.estimates.at(0);
    const bool covers = recover.wilson_ci_95.contains(1.0 - delta);
    out.ok = covers && rep1.dichotomy_violations == 0;
    out.detail = fmt("mu_I = r + |sigma_I|^2: recover CI [%.5f, %.5f] %s 0.95", recover.wilson_ci_95.lo,
                     recover.wilson_ci_95.hi, covers ? "covers" : "MISSES");

    // With mu_I = r the premium excess is -|sigma_I|^2 and the bound fails for
    // T above ((z_delta + z_eps)/|sigma_I|)^2; use twice that horizon.
    const double z_sum = upper_quantile(delta).finite() + upper_quantile(eps).finite();
    const double T = 2.0 * (z_sum / ni) * (z_sum / ni);
    ExperimentConfig c2{fixtures::set_a(T).with_drifts(a.r(), a.mu_s())};
    c2.proposition = Proposition::index;
    c2.n_paths = kMillion;
    const auto rep2 = verify_index_premium(c2);
    const bool beat = rep2.wilson_ci_95.lo >= 1.0 - eps;
    out.ok = out.ok && beat && !rep2.bound_report->holds && rep2.dichotomy_violations == 0;
    out.detail += fmt("; mu_I = r, T = %.1f (bound %s): beat CI [%.5f, %.5f], lower %s 0.95", T,
                      rep2.bound_report->holds ? "holds" : "fails", rep2.wilson_ci_95.lo, rep2.wilson_ci_95.hi,
                      beat ? ">=" : "<");
    return out;
}

Outcome bound_algebra() {
    constexpr std::size_t n = 10'000;
    std::size_t first_antecedent = 0, second_antecedent = 0, counterexamples = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::uint32_t draw = 0;
        const auto key = Philox4x32::key_from_seed(kDefaultSeed);
        const auto uniform = [&](double lo, double hi) {
            const auto bits = Philox4x32::generate({static_cast<std::uint32_t>(k), draw++, 0, 7}, key);
            return lo + (hi - lo) * open_unit_interval(bits[0], bits[1]);
        };
        const auto d = static_cast<std::size_t>(2 + std::floor(uniform(0.0, 4.0)));
        std::vector<double> si(d), ss(d);
        for (auto& x : si) x = uniform(-0.4, 0.4);
        for (auto& x : ss) x = uniform(-0.4, 0.4);
        const double r = uniform(0.0, 0.06);
        const double T = uniform(0.5, 60.0);
        const double delta = uniform(0.005, 0.3);
        const double eps = uniform(0.005, 0.3);
        const double ni2 = eihlab::dot(si, si);
        const double dot_si = eihlab::dot(ss, si);
        // Drifts scattered around the CAPM-consistent point so that both
        // antecedents hold on a good share of the draws.
        const double spread = 0.6 / std::sqrt(T);
        const double mu_i = r + ni2 + uniform(-spread, spread);
        const double mu_s = mu_i - ni2 + dot_si + uniform(-spread, spread);
        const auto p = MarketParams::create(mu_i, mu_s, si, ss, r, T);

        const bool mu_bis = bound_check(p, delta, eps, BoundKind::mu_bis).holds;
        const bool index = bound_check(p, delta, eps, BoundKind::index).holds;
        const bool capm1 = bound_check(p, delta, eps, BoundKind::capm1).holds;
        const bool capm_final = bound_check(p, delta, eps, BoundKind::capm_final).holds;
        if (mu_bis && index) {
            ++first_antecedent;
            if (!capm1) ++counterexamples;
        }
        if (index && capm1) {
            ++second_antecedent;
            if (!capm_final) ++counterexamples;
        }
    }
    return {counterexamples == 0 && first_antecedent > 0 && second_antecedent > 0,
            fmt("10000 parameter sets: %zu counterexamples; antecedents held %zu and %zu times", counterexamples,
                first_antecedent, second_antecedent)};
}

Outcome convergence() {
    const std::vector<double> grid{1, 2, 5, 10, 20, 50, 100};
    const auto study = capm_convergence_study(fixtures::set_a(), 0.05, 0.05, {10.0}, kMillion, kDefaultSeed);
    // Widths are analytic; the grid study only needs a token path count.
    const auto widths = capm_convergence_study(fixtures::set_a(), 0.05, 0.05, grid, 2, kDefaultSeed);
    double worst = 0.0;
    for (double s : widths.width_slopes) worst = std::max(worst, std::abs(s + 0.5));
    const auto& row = study.table.rows.at(0);
    const double z = row.back();
    return {widths.width_slopes.size() == 4 && worst <= 1e-9 && std::abs(z) <= 4.0,
            fmt("max |slope + 0.5| = %.3g over 4 bounds; log-performance at T = 10: MC %.6f vs %.6f (z %.2f)", worst,
                row[5], row[7], z)};
}

Outcome hedging() {
    ExperimentConfig c{fixtures::set_a()};
    c.n_paths = 10'000;
    const Table t = hedging_fidelity_study(c, {128, 256, 512});
    const double m128 = t.rows[0][2], m256 = t.rows[1][2], m512 = t.rows[2][2];
    double analytic_negative = 0.0;
    for (const auto& row : t.rows) analytic_negative += row[7];
    return {m128 > m256 && m256 > m512 && analytic_negative == 0.0,
            fmt("median |error| 128: %.5f, 256: %.5f, 512: %.5f; negative analytic wealth at %.0f grid points", m128,
                m256, m512, analytic_negative)};
}

Outcome determinism() {
    cli::RunConfig rc;
    const MarketParams a = fixtures::set_a();
    rc.mu_i = a.mu_i();
    rc.mu_s = a.mu_s();
    rc.sigma_i = a.sigma_i();
    rc.sigma_s = a.sigma_s();
    rc.r = a.r();
    rc.T = a.T();
    rc.t_grid = std::vector<double>{1, 5, 10, 50};
    rc.lemma_trials = 10;

    std::size_t compared = 0, mismatched = 0;
    const auto check = [&](const std::function<std::string(std::size_t)>& render) {
        const std::string one = render(1);
        for (std::size_t w : {1u, 4u, 8u}) {
            ++compared;
            if (render(w) != one) ++mismatched;
        }
    };
    for (auto prop : {Proposition::two_sided, Proposition::mu, Proposition::mu_bis, Proposition::index,
                      Proposition::capm1, Proposition::capm_final}) {
        check([&](std::size_t w) {
            ExperimentConfig c{a};
            c.proposition = prop;
            c.n_paths = 100'000;
            c.workers = w;
            return cli::to_json(run_experiment(c), false).dump(2);
        });
    }
    for (const char* kind : {"convergence", "hedging", "lemma"}) {
        check([&](std::size_t w) {
            cli::RunConfig c = rc;
            c.workers = w;
            c.n_paths = std::string(kind) == "hedging" ? 5000 : 50'000;
            c.hedge_steps = std::vector<double>{16, 64};
            return cli::render_table(c, kind);
        });
    }
    return {mismatched == 0, fmt("%zu outputs (6 JSON reports, 3 CSV tables) x workers {1,4,8}: %zu differ from "
                                 "the single-worker bytes",
                                 compared, mismatched)};
}

} // namespace

// With no argument every criterion runs; otherwise only the named ones (e.g. AC3).
int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {"AC1", "lemma fidelity", 10.0, lemma_fidelity},
        {"AC2", "price construction", 30.0, price_construction},
        {"AC3", "two-sided dichotomy", 60.0, dichotomy},
        {"AC4", "one-sided guarantee", 60.0, mu_bis_guarantee},
        {"AC5", "equity premium", 60.0, equity_premium},
        {"AC6", "bound algebra", 5.0, bound_algebra},
        {"AC7", "bound convergence", 60.0, convergence},
        {"AC8", "hedging fidelity", 120.0, hedging},
        {"AC9", "determinism", 0.0, determinism},
    };
    std::vector<std::string> wanted(argv + 1, argv + argc);
    int failures = 0;
    std::size_t ran = 0;
    for (const auto& c : criteria) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
        ++ran;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.time_limit_s <= 0.0 || secs < c.time_limit_s;
        const bool pass = o.ok && in_time;
        failures += !pass;
        std::string timing = c.time_limit_s > 0.0 ? fmt("%.2f s < %.0f s", secs, c.time_limit_s) : fmt("%.2f s", secs);
        if (!in_time) timing += " EXCEEDED";
        std::printf("%s %s %s: %s [%s]\n", pass ? "PASS" : "FAIL", c.id.c_str(), c.name.c_str(), o.detail.c_str(),
                    timing.c_str());
        std::fflush(stdout);
    }
    if (ran == 0) {
        std::fprintf(stderr, "no criterion matches the arguments\n");
        return 2;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(ran) - failures, ran);
    return failures == 0 ? 0 : 1;
}
