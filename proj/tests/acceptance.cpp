// Acceptance checks: twelve self-contained criteria, one [PASS]/[FAIL] line
// each, nonzero exit when anything fails.  Every seed is fixed, so each run
// reproduces the same verdicts and figures; the per-criterion wall-clock
// budget is part of the verdict.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "gibbslab/gibbslab.hpp"

using namespace gibbslab;

namespace {

constexpr double kChainEntropy = 0.3835227901070281; // two-state chain oracle
constexpr double kChainFigure = 0.3835230;           // commonly quoted rounding

Potential chain_potential() {
    return markov_log_potential({{0.9, 0.1}, {0.2, 0.8}}, MetricParams(0.25));
}

std::string fmt(const char* f, ...) {
    va_list ap;
    va_start(ap, f);
    char buf[512];
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return std::string(buf);
}

struct Outcome {
    bool ok = false;
    std::string detail;
};

int failures = 0;

template <typename Fn>
void run(int id, const char* title, double budget_s, Fn fn) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = fn();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = o.ok && dt < budget_s;
    std::printf("[%s] %02d %s: %s (%.1fs/%.0fs)\n", ok ? "PASS" : "FAIL", id, title,
                o.detail.c_str(), dt, budget_s);
    std::fflush(stdout);
    if (!ok) ++failures;
}

// 1. Exact entropy oracle: the two-state chain against its closed-form value,
// the fair coin against log 2, and the entropy = pressure - integral identity
// on random potentials.
Outcome c01() {
    GibbsModel chain(chain_potential());
    double dev_exact = std::abs(chain.exact_entropy() - kChainEntropy);
    double dev_fig = std::abs(chain.exact_entropy() - kChainFigure);
    GibbsModel coin(bernoulli_log_potential({0.5, 0.5}));
    double dev_coin = std::abs(coin.exact_entropy() - std::log(2.0));
    Rng rng(2026);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        int a = 2 + static_cast<int>(rng.uniform() * 3);
        int r = static_cast<int>(rng.uniform() * 4);
        GibbsModel m(random_potential(Alphabet(a), r, rng));
        worst = std::max(worst,
                         std::abs(m.exact_entropy() - (m.pressure() - m.potential_integral())));
    }
    bool ok = dev_exact <= 1e-9 && dev_fig <= 2.5e-7 && dev_coin <= 1e-12 && worst <= 1e-9;
    return {ok, fmt("chain dev %.1e (quoted figure %.1e), coin dev %.1e, identity worst %.1e",
                    dev_exact, dev_fig, dev_coin, worst)};
}

// 2. Cylinder-ratio stability: the measure-to-weight ratio extremes must be
// depth-independent once the report is past the model order.
Outcome c02() {
    Rng rng(31337);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        int a = 2 + static_cast<int>(rng.uniform() * 2);
        GibbsModel model(random_potential(Alphabet(a), 1, rng));
        GibbsRatioReport deep = model.gibbs_ratio_report(12);
        GibbsRatioReport shallow = model.gibbs_ratio_report(8);
        worst = std::max(worst, std::abs(deep.min_ratio - shallow.min_ratio));
        worst = std::max(worst, std::abs(deep.max_ratio - shallow.max_ratio));
    }
    return {worst <= 1e-9, fmt("5 random range-1 models, worst extreme drift %.1e", worst)};
}

// 3. Empirical-distribution identities, exhaustively over every binary sample
// of length <= 10: total mass n and both one-symbol marginalizations, as
// integer counts.
Outcome c03() {
    Alphabet a2(2);
    std::uint64_t checked = 0;
    for (int n = 1; n <= 10; ++n) {
        for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << n); ++bits) {
            std::vector<Symbol> sym(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) sym[static_cast<std::size_t>(j)] = (bits >> j) & 1;
            SymbolSequence x(a2, sym);
            EmpiricalBlockDistribution prev = empirical_distribution(x, 1);
            for (int k = 1; k <= std::min(n, 6); ++k) {
                EmpiricalBlockDistribution d = empirical_distribution(x, k);
                std::uint64_t mass = 0;
                for (std::uint64_t c : d.counts) mass += c;
                if (mass != static_cast<std::uint64_t>(n))
                    return {false, fmt("mass %llu != n at n=%d k=%d",
                                       static_cast<unsigned long long>(mass), n, k)};
                if (k >= 2) {
                    if (marginalize_last(d).counts != prev.counts)
                        return {false, fmt("last-marginal mismatch at n=%d k=%d", n, k)};
                    if (marginalize_first(d).counts != prev.counts)
                        return {false, fmt("first-marginal mismatch at n=%d k=%d", n, k)};
                }
                prev = d;
                ++checked;
            }
        }
    }
    return {true, fmt("%llu (sample, k) pairs, all identities exact",
                      static_cast<unsigned long long>(checked))};
}

// 4. Entropy-decomposition identities on random models: the two routes to
// delta_hat agree (the library verifies 1e-10 internally and throws
// otherwise), the decomposition residual sits under |phi|_theta theta^k, and
// the phi_k deviation table decays geometrically.
Outcome c04() {
    Rng rng(777);
    double worst_rel = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        int a = 2 + static_cast<int>(rng.uniform() * 3);
        int r = static_cast<int>(rng.uniform() * 4);
        Potential phi = random_potential(Alphabet(a), r, rng);
        GibbsModel model(phi);
        double lip = lipschitz_seminorm(phi, phi.metric);
        SymbolSequence x = sample_path(model, 4000, 1000 + static_cast<std::uint64_t>(trial));
        int k = 2 + static_cast<int>(rng.uniform() * 5);
        double res = std::abs(decomposition_residual(x, k, model)); // calls delta_hat
        double bound = lip * std::pow(phi.metric.theta, k) + 1e-12;
        if (res > bound)
            return {false, fmt("residual %.2e above bound %.2e (trial %d, range %d, k %d)",
                               res, bound, trial, r, k)};
        if (bound > 2e-12) worst_rel = std::max(worst_rel, res / bound);
    }

    // Deviation tables: exact zero beyond the model order, and under the
    // geometric envelope |phi*|_theta theta^(k-1) throughout.
    GibbsModel chain(chain_potential());
    std::vector<double> chain_dev = phi_k_deviation_table(chain, 2, 12);
    for (double d : chain_dev)
        if (d > 1e-11) return {false, fmt("chain deviation %.2e at order 1", d)};
    Rng rng2(4040);
    GibbsModel wide(random_potential(Alphabet(2), 2, rng2));
    Potential cond = wide.conditional_potential();
    double clip = lipschitz_seminorm(cond, cond.metric);
    std::vector<double> dev = phi_k_deviation_table(wide, 2, 12);
    for (int k = 2; k <= 12; ++k) {
        double env = clip * std::pow(cond.metric.theta, k - 1) + 1e-12;
        if (dev[static_cast<std::size_t>(k - 2)] > env)
            return {false, fmt("deviation %.2e above envelope %.2e at k=%d",
                               dev[static_cast<std::size_t>(k - 2)], env, k)};
    }
    return {true, fmt("100 samples: dual delta_hat ok, residual/bound worst %.2f; "
                      "deviation tables under theta^(k-1) envelope",
                      worst_rel)};
}

// 5. Oscillation oracle: exhaustive max single-symbol oscillation of the
// k-block plug-in entropy against 2 k |A|^k log(n) / n, every n <= 10.
Outcome c05() {
    int pairs = 0;
    double worst = 0.0;
    for (int n = 1; n <= 10; ++n)
        for (int k = 1; k <= n; ++k) {
            OscillationReport rep = oscillation_oracle(n, k, Alphabet(2));
            if (!rep.within_bound)
                return {false, fmt("violated at n=%d k=%d: %.4f > %.4f", n, k,
                                   rep.exact_max_delta, rep.bound)};
            if (rep.bound > 0.0) worst = std::max(worst, rep.exact_max_delta / rep.bound);
            ++pairs;
        }
    return {true, fmt("%d (n, k) pairs exhaustive, worst delta/bound %.3f", pairs, worst)};
}

// 6. Plug-in consistency on the two-state chain under the conditional
// schedule: medians of |h_hat - h| shrink along n and end below 0.02.
Outcome c06() {
    GibbsModel model(chain_potential());
    ScheduleParams sp{ScheduleKind::conditional, 0.5, 0.25, 2};
    std::vector<double> medians;
    std::string ks;
    for (std::uint64_t n : {std::uint64_t(1) << 12, std::uint64_t(1) << 16,
                            std::uint64_t(1) << 20}) {
        int k = schedule_k(n, sp);
        std::vector<double> devs;
        for (int i = 0; i < 16; ++i) {
            SymbolSequence x = sample_path(model, n, 9000 + static_cast<std::uint64_t>(i));
            devs.push_back(std::abs(conditional_plugin_entropy(x, k) - kChainEntropy));
        }
        medians.push_back(sample_median(devs));
        ks += fmt("%s%d", ks.empty() ? "" : ",", k);
    }
    bool mono = medians[0] > medians[1] && medians[1] > medians[2];
    bool small = medians[2] <= 0.02;
    return {mono && small,
            fmt("medians %.5f > %.5f > %.5f (k = %s), final <= 0.02: %s", medians[0],
                medians[1], medians[2], ks.c_str(), small ? "yes" : "no")};
}

// 7. Variance scaling of the block-entropy rate under the plug-in schedule:
// one constant covers Var / ((log n)^2 n^(alpha-1)) across the grid within a
// 10x spread.
Outcome c07() {
    ExperimentConfig cfg(chain_potential());
    cfg.estimator = EstimatorKind::plugin_rate;
    cfg.schedule = ScheduleChoice{ScheduleKind::plugin_rate, 0.2};
    cfg.n_grid = {1u << 12, 1u << 14, 1u << 16, 1u << 18};
    cfg.replicas = 500;
    cfg.base_seed = 515151;
    ExperimentResult res = run_experiment(cfg);
    VarianceFit vf = fit_experiment_variance(res, 0.2);
    return {vf.ratio_spread <= 10.0,
            fmt("R=500, n=2^12..2^18: var %.2e -> %.2e, ratio spread %.2f <= 10",
                res.points.front().variance, res.points.back().variance, vf.ratio_spread)};
}

// 8. Birkhoff-average tail envelope: the fitted exp(-B n t^2) must be linear
// in n t^2 on the estimable window (R^2 >= 0.8) and sit above every
// empirical tail point.
Outcome c08() {
    ExperimentConfig cfg(chain_potential());
    cfg.estimator = EstimatorKind::birkhoff;
    cfg.n_grid = {1u << 14};
    cfg.t_grid = {0.002, 0.004, 0.006, 0.008, 0.010, 0.013};
    cfg.replicas = 5000;
    cfg.base_seed = 20250801;
    cfg.bound = BoundKind::birkhoff_tail;
    ExperimentResult res = run_experiment(cfg);
    if (!res.fit) return {false, "no fit produced"};
    bool dom = true;
    for (const TailRow& row : res.tails)
        if (row.has_bound && row.bound < row.p_hat - 1e-12) dom = false;
    bool ok = res.fit->r_squared >= 0.8 && dom && res.fit->points_used == cfg.t_grid.size();
    return {ok, fmt("R^2 %.3f >= 0.8, envelope dominates all %zu points: %s",
                    res.fit->r_squared, res.fit->points_used, dom ? "yes" : "no")};
}

// 9. Exponential law for the hitting time of a fixed 5-word: the rescaled
// waiting-time law against Exp(1), and the rate estimate's batch stability.
Outcome c09() {
    GibbsModel model(chain_potential());
    Word w(Alphabet(2), parse_block_string("01011", Alphabet(2)));
    ExpLawReport rep = exp_law_report(model, w, 10000, 11);
    double stab = 0.0;
    for (double bl : rep.batch_lambda)
        stab = std::max(stab, std::abs(bl / rep.lambda_hat - 1.0));
    bool ok = rep.sup_distance <= 0.05 && stab <= 0.10;
    return {ok, fmt("R=10000: sup distance %.4f <= 0.05, batch lambda within %.1f%% <= 10%%",
                    rep.sup_distance, stab * 100.0)};
}

// 10. Hitting-time entropy estimator at n = 20: mean of (1/n) log W within
// 0.05 of the entropy, with under 1% of replicas hitting the horizon.
Outcome c10() {
    ExperimentConfig cfg(chain_potential());
    cfg.estimator = EstimatorKind::hitting_rate;
    cfg.n_grid = {20};
    cfg.replicas = 1000;
    cfg.base_seed = 1001;
    ExperimentResult res = run_experiment(cfg);
    const GridPointResult& pt = res.points[0];
    double dev = std::abs(pt.mean - kChainEntropy);
    bool ok = dev <= 0.05 && pt.saturated * 100 < pt.replicas;
    return {ok, fmt("R=1000: |mean - h| = %.4f <= 0.05, saturated %d/%d", dev, pt.saturated,
                    pt.replicas)};
}

// 11. Waiting-time tail asymmetry at n = 24: on the shared estimable window,
// -log p_hat of the lower tail is closer to linear in t than to quadratic,
// and the upper tail the other way round. The t grid spans the whole
// estimable range at 0.02 spacing: the lower tail is empty for t above the
// entropy rate (the threshold drops below one step), so the grid stops at
// 0.38 just underneath it.
Outcome c11() {
    ExperimentConfig cfg(chain_potential());
    cfg.estimator = EstimatorKind::hitting_rate;
    cfg.n_grid = {24};
    for (int i = 2; i <= 19; ++i) cfg.t_grid.push_back(0.02 * i);
    cfg.replicas = 5000;
    cfg.base_seed = 501;
    ExperimentResult res = run_experiment(cfg);
    std::vector<double> ts, yl, yu;
    for (double t : cfg.t_grid) {
        double pl = -1.0, pu = -1.0;
        for (const TailRow& row : res.tails) {
            if (row.t != t) continue;
            (row.side == "lower" ? pl : pu) = row.p_hat;
        }
        if (pl <= 0.0 || pu <= 0.0) continue; // outside the shared window
        ts.push_back(t);
        yl.push_back(-std::log(pl));
        yu.push_back(-std::log(pu));
    }
    if (ts.size() < 6) return {false, fmt("only %zu shared estimable t values", ts.size())};
    std::vector<double> t2(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) t2[i] = ts[i] * ts[i];
    LinearFit low_lin = least_squares(ts, yl, true);
    LinearFit low_quad = least_squares(t2, yl, true);
    LinearFit up_lin = least_squares(ts, yu, true);
    LinearFit up_quad = least_squares(t2, yu, true);
    bool ok = low_lin.r_squared > low_quad.r_squared && up_quad.r_squared > up_lin.r_squared;
    return {ok, fmt("shared window %zu pts: lower R^2 lin %.4f vs quad %.4f; "
                    "upper R^2 quad %.4f vs lin %.4f",
                    ts.size(), low_lin.r_squared, low_quad.r_squared, up_quad.r_squared,
                    up_lin.r_squared)};
}

// 12. Determinism: rerunning an experiment with the same configuration and
// seed reproduces the CSV byte for byte, across estimator kinds.
Outcome c12() {
    auto csv_of = [](const ExperimentConfig& cfg) { return experiment_csv(run_experiment(cfg)); };

    ExperimentConfig plug(chain_potential());
    plug.estimator = EstimatorKind::conditional;
    plug.fixed_k = 3;
    plug.n_grid = {256, 512};
    plug.t_grid = {0.02, 0.05};
    plug.replicas = 200;
    plug.base_seed = 4242;

    ExperimentConfig hit(chain_potential());
    hit.estimator = EstimatorKind::hitting_rate;
    hit.n_grid = {10};
    hit.t_grid = {0.05, 0.10};
    hit.replicas = 150;
    hit.base_seed = 808;

    ExperimentConfig birk(chain_potential());
    birk.estimator = EstimatorKind::birkhoff;
    birk.n_grid = {1u << 12};
    birk.t_grid = {0.003, 0.006, 0.009, 0.012, 0.015, 0.018};
    birk.replicas = 300;
    birk.base_seed = 515;
    birk.bound = BoundKind::birkhoff_tail;

    bool ok = csv_of(plug) == csv_of(plug) && csv_of(hit) == csv_of(hit) &&
              csv_of(birk) == csv_of(birk);
    return {ok, fmt("3 configs x 2 runs: %s", ok ? "all byte-identical" : "MISMATCH")};
}

} // namespace

int main() {
    run(1, "exact entropy oracle", 1.0, c01);
    run(2, "cylinder-ratio stability", 30.0, c02);
    run(3, "empirical-distribution identities", 60.0, c03);
    run(4, "entropy-decomposition identities", 60.0, c04);
    run(5, "oscillation oracle", 300.0, c05);
    run(6, "plug-in consistency", 300.0, c06);
    run(7, "variance scaling", 600.0, c07);
    run(8, "birkhoff tail envelope", 600.0, c08);
    run(9, "exponential law", 300.0, c09);
    run(10, "hitting-time estimator", 600.0, c10);
    run(11, "waiting-time tail asymmetry", 900.0, c11);
    run(12, "determinism", 600.0, c12);
    if (failures > 0) {
        std::printf("%d of 12 criteria failed\n", failures);
        return 1;
    }
    std::printf("all 12 criteria passed\n");
    return 0;
}
