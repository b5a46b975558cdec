#pragma once

// The Monte Carlo harness: run an estimator over an (n, t) grid with R
// replicas per n, estimate tail probabilities with confidence intervals, and
// optionally fit + evaluate one of the concentration bounds on the result.
//
// Seeding is positional so reruns are reproducible replica-for-replica:
// replica i at grid point g uses counter c = g*R + i, and draws its sample
// from seed base+c -- except the hitting estimator, which needs two
// independent streams and uses base+2c (pattern) and base+2c+1 (stream).

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gibbslab/bounds.hpp"
#include "gibbslab/empirical.hpp"
#include "gibbslab/errors.hpp"
#include "gibbslab/gibbs_model.hpp"
#include "gibbslab/hitting.hpp"
#include "gibbslab/potential.hpp"
#include "gibbslab/schedule.hpp"
#include "gibbslab/stats.hpp"

namespace gibbslab {

enum class EstimatorKind { plugin_rate, conditional, hitting_rate, birkhoff };

inline std::string estimator_kind_name(EstimatorKind k) {
    switch (k) {
    case EstimatorKind::plugin_rate: return "plugin-rate";
    case EstimatorKind::conditional: return "conditional";
    case EstimatorKind::hitting_rate: return "hitting-rate";
    case EstimatorKind::birkhoff: return "birkhoff";
    }
    return "?";
}

inline EstimatorKind estimator_kind_from_name(const std::string& name) {
    if (name == "plugin-rate") return EstimatorKind::plugin_rate;
    if (name == "conditional") return EstimatorKind::conditional;
    if (name == "hitting-rate") return EstimatorKind::hitting_rate;
    if (name == "birkhoff") return EstimatorKind::birkhoff;
    throw invalid_input("unknown estimator '" + name + "'");
}

enum class CenterKind { exact, empirical_mean };

struct ScheduleChoice {
    ScheduleKind kind = ScheduleKind::plugin_rate;
    double alpha = 0.5; // plugin_rate schedule only
};

struct ExperimentConfig {
    explicit ExperimentConfig(Potential p) : potential(std::move(p)) {}

    Potential potential;
    EstimatorKind estimator = EstimatorKind::conditional;
    std::optional<ScheduleChoice> schedule; // exactly one of schedule / fixed_k
    std::optional<int> fixed_k;             // for the plug-in estimators
    std::vector<std::uint64_t> n_grid;
    std::vector<double> t_grid;
    int replicas = 200;
    std::uint64_t base_seed = 1;
    CenterKind center = CenterKind::exact;
    std::uint64_t horizon = 0;              // hitting only; 0 = default_horizon
    std::optional<BoundKind> bound;         // fit + evaluate on the tail rows
    double offset_c = 0.0;                  // conditional-tail centering offset
};

struct GridPointResult {
    std::uint64_t n = 0;
    int k = 0;                 // block length used (0 when not applicable)
    double center = 0.0;
    double mean = 0.0;
    double variance = 0.0;
    int replicas = 0;
    int saturated = 0;
    std::vector<double> values; // non-saturated estimator values, replica order
};

struct TailRow {
    std::uint64_t n = 0;
    double t = 0.0;
    std::string side;           // "both", "upper", "lower"
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t exceed = 0;
    std::uint64_t used = 0;     // replicas entering the estimate
    std::uint64_t saturated = 0;
    bool usable = true;         // saturation below 1%
    bool has_bound = false;
    double bound = 0.0;
};

struct ExperimentResult {
    double pressure = 0.0;
    double entropy = 0.0;
    std::vector<GridPointResult> points;
    std::vector<TailRow> tails;
    std::optional<FittedBound> fit;
};

namespace detail {

inline void validate_config(const ExperimentConfig& cfg) {
    if (cfg.n_grid.empty()) throw invalid_input("experiment: empty n grid");
    for (std::uint64_t n : cfg.n_grid)
        if (n < 2) throw invalid_input("experiment: grid lengths must be >= 2");
    for (std::size_t i = 0; i < cfg.t_grid.size(); ++i) {
        if (!(cfg.t_grid[i] > 0.0)) throw invalid_input("experiment: t values must be positive");
        if (i > 0 && !(cfg.t_grid[i] > cfg.t_grid[i - 1]))
            throw invalid_input("experiment: t grid must be strictly increasing");
    }
    if (cfg.replicas < 2) throw invalid_input("experiment: need at least 2 replicas");
    if (!cfg.t_grid.empty() && cfg.replicas < 100)
        throw invalid_input("experiment: tail estimation needs at least 100 replicas");
    bool plug = cfg.estimator == EstimatorKind::plugin_rate ||
                cfg.estimator == EstimatorKind::conditional;
    if (plug && cfg.schedule.has_value() == cfg.fixed_k.has_value())
        throw invalid_input("experiment: plug-in estimators need exactly one of schedule / fixed k");
    if (!plug && (cfg.schedule || cfg.fixed_k))
        throw invalid_input("experiment: schedule/k only apply to the plug-in estimators");
    if (cfg.fixed_k && *cfg.fixed_k < 1) throw invalid_input("experiment: fixed k must be >= 1");
}

} // namespace detail

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    detail::validate_config(cfg);
    GibbsModel model(cfg.potential);
    Potential normalized = model.pressure_normalized();
    double lip = lipschitz_seminorm(normalized, normalized.metric);
    std::uint64_t stride = cfg.estimator == EstimatorKind::hitting_rate ? 2 : 1;

    ExperimentResult res;
    res.pressure = model.pressure();
    res.entropy = model.exact_entropy();

    for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
        std::uint64_t n = cfg.n_grid[g];
        GridPointResult pt;
        pt.n = n;
        pt.replicas = cfg.replicas;

        int k = 0;
        if (cfg.fixed_k) k = *cfg.fixed_k;
        if (cfg.schedule) {
            ScheduleParams sp{cfg.schedule->kind, cfg.schedule->alpha,
                              cfg.potential.metric.theta, cfg.potential.alphabet.size};
            k = schedule_k(n, sp);
        }
        if (k > 0 && static_cast<std::uint64_t>(k) > n)
            throw invalid_input("experiment: block length k exceeds n");
        pt.k = k;

        std::uint64_t horizon = cfg.horizon;
        if (cfg.estimator == EstimatorKind::hitting_rate && horizon == 0)
            horizon = default_horizon(model.exact_entropy(), static_cast<int>(n));

        for (int i = 0; i < cfg.replicas; ++i) {
            std::uint64_t c = static_cast<std::uint64_t>(g) * static_cast<std::uint64_t>(cfg.replicas) +
                              static_cast<std::uint64_t>(i);
            std::uint64_t seed = cfg.base_seed + stride * c;
            switch (cfg.estimator) {
            case EstimatorKind::plugin_rate: {
                SymbolSequence x = sample_path(model, n, seed);
                pt.values.push_back(plugin_rate(x, k));
                break;
            }
            case EstimatorKind::conditional: {
                SymbolSequence x = sample_path(model, n, seed);
                pt.values.push_back(conditional_plugin_entropy(x, k));
                break;
            }
            case EstimatorKind::birkhoff: {
                SymbolSequence x =
                    sample_path(model, n + static_cast<std::uint64_t>(normalized.range), seed);
                pt.values.push_back(birkhoff_average(normalized, x));
                break;
            }
            case EstimatorKind::hitting_rate: {
                SymbolSequence xs = sample_path(model, n, seed);
                Word pattern(xs.alphabet, xs.symbols);
                HittingSample w = hitting_time(model, pattern, seed + 1, horizon);
                if (w.saturated)
                    ++pt.saturated;
                else
                    pt.values.push_back(hitting_rate(w, static_cast<int>(n)));
                break;
            }
            }
        }
        if (pt.values.size() < 2)
            throw numerical_error("experiment: fewer than 2 usable replicas at n = " +
                                  std::to_string(n));
        pt.mean = sample_mean(pt.values);
        pt.variance = sample_variance(pt.values);

        switch (cfg.center) {
        case CenterKind::empirical_mean:
            pt.center = pt.mean;
            break;
        case CenterKind::exact:
            // The estimand's exact value: the entropy rate, except for the
            // Birkhoff estimator whose target is int (phi - P) dmu = -h.
            pt.center = cfg.estimator == EstimatorKind::birkhoff ? model.integral(normalized)
                                                                 : model.exact_entropy();
            break;
        }
        res.points.push_back(std::move(pt));
    }

    // Tail rows.
    for (const GridPointResult& pt : res.points) {
        bool split = cfg.estimator == EstimatorKind::hitting_rate;
        std::uint64_t used = pt.values.size();
        bool usable = static_cast<std::uint64_t>(pt.saturated) * 100 <
                      static_cast<std::uint64_t>(pt.replicas);
        for (double t : cfg.t_grid) {
            auto make_row = [&](const std::string& side) {
                std::uint64_t exceed = 0;
                for (double v : pt.values) {
                    double d = v - pt.center;
                    bool hit = side == "both"    ? std::abs(d) >= t
                               : side == "upper" ? d >= t
                                                 : d <= -t;
                    if (hit) ++exceed;
                }
                TailRow row;
                row.n = pt.n;
                row.t = t;
                row.side = side;
                row.exceed = exceed;
                row.used = used;
                row.saturated = static_cast<std::uint64_t>(pt.saturated);
                row.usable = usable;
                row.p_hat = static_cast<double>(exceed) / static_cast<double>(used);
                WilsonInterval ci = wilson_interval(exceed, used);
                row.ci_low = ci.low;
                row.ci_high = ci.high;
                res.tails.push_back(row);
            };
            if (split) {
                make_row("upper");
                make_row("lower");
            } else {
                make_row("both");
            }
        }
    }

    // Optional bound fit + evaluation.
    if (cfg.bound) {
        BoundKind kind = *cfg.bound;
        BoundConstants fixed;
        if (cfg.schedule) fixed.alpha = cfg.schedule->alpha;
        fixed.lipschitz = lip > 0.0 ? lip : 1.0;
        if (kind == BoundKind::conditional_tail) {
            ConditionalExponents e =
                conditional_exponents(cfg.potential.alphabet.size, cfg.potential.metric.theta);
            fixed.gamma = e.gamma;
            fixed.xi = e.xi;
            fixed.c = cfg.offset_c;
        }
        std::string want_side = kind == BoundKind::waiting_upper   ? "upper"
                                : kind == BoundKind::waiting_lower ? "lower"
                                                                   : "both";
        std::vector<TailPoint> pts;
        for (const TailRow& row : res.tails)
            if (row.side == want_side && row.usable)
                pts.push_back(TailPoint{static_cast<double>(row.n), row.t, row.p_hat});
        res.fit = fit_constants(pts, kind, fixed);
        for (TailRow& row : res.tails) {
            if (row.side != want_side) continue;
            row.has_bound = true;
            row.bound = evaluate_bound(kind, static_cast<double>(row.n), row.t, res.fit->constants);
        }
    }
    return res;
}

// The variance table view used by the variance-bound check: one (n, Var)
// pair per grid point.
inline VarianceFit fit_experiment_variance(const ExperimentResult& res, double alpha) {
    std::vector<double> ns, vars;
    for (const GridPointResult& pt : res.points) {
        ns.push_back(static_cast<double>(pt.n));
        vars.push_back(pt.variance);
    }
    return fit_variance_constant(ns, vars, alpha);
}

} // namespace gibbslab
