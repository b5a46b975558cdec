#pragma once

// JSON config parsing and result emission.  Numbers in CSV go through one
// fixed snprintf format so a rerun with the same seed is byte-identical.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gibbslab/errors.hpp"
#include "gibbslab/exp_law.hpp"
#include "gibbslab/expectation_gap.hpp"
#include "gibbslab/experiment.hpp"
#include "gibbslab/gibbs_model.hpp"
#include "gibbslab/oscillation.hpp"
#include "gibbslab/potential.hpp"

namespace gibbslab {

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input("JSON parse error in '" + path + "': " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write '" + path + "'");
    out << content;
    if (!out) throw invalid_input("write failed for '" + path + "'");
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string center_kind_name(CenterKind c) {
    return c == CenterKind::exact ? "exact-entropy" : "empirical-mean";
}

inline CenterKind center_kind_from_name(const std::string& name) {
    if (name == "exact-entropy" || name == "exact") return CenterKind::exact;
    if (name == "empirical-mean") return CenterKind::empirical_mean;
    throw invalid_input("unknown center '" + name + "' (want exact-entropy or empirical-mean)");
}

// Config documents reference the potential either inline or as a file path
// (resolved relative to the config's directory).
inline Potential resolve_potential(const nlohmann::json& model_field, const std::string& config_dir) {
    if (model_field.is_object()) return potential_from_json(model_field);
    if (model_field.is_string()) {
        std::string path = model_field.get<std::string>();
        if (!path.empty() && path[0] != '/' && !config_dir.empty())
            path = config_dir + "/" + path;
        return potential_from_json(load_json_file(path));
    }
    throw invalid_input("config field 'model' must be a potential object or a file path");
}

inline ExperimentConfig experiment_config_from_json(const nlohmann::json& j,
                                                    const std::string& config_dir = "") {
    if (!j.is_object()) throw invalid_input("experiment config must be a JSON object");
    for (const char* key : {"model", "estimator", "n_grid", "replicas", "seed"})
        if (!j.contains(key)) throw invalid_input(std::string("experiment config missing '") + key + "'");

    ExperimentConfig cfg(resolve_potential(j["model"], config_dir));
    cfg.estimator = estimator_kind_from_name(j["estimator"].get<std::string>());
    if (j.contains("schedule") && !j["schedule"].is_null()) {
        const auto& s = j["schedule"];
        if (!s.is_object() || !s.contains("kind"))
            throw invalid_input("config 'schedule' must be an object with a 'kind'");
        ScheduleChoice choice;
        choice.kind = schedule_kind_from_name(s["kind"].get<std::string>());
        if (s.contains("alpha")) choice.alpha = s["alpha"].get<double>();
        cfg.schedule = choice;
    }
    if (j.contains("k") && !j["k"].is_null()) cfg.fixed_k = j["k"].get<int>();
    cfg.n_grid.clear();
    for (const auto& n : j["n_grid"]) cfg.n_grid.push_back(n.get<std::uint64_t>());
    if (j.contains("t_grid"))
        for (const auto& t : j["t_grid"]) cfg.t_grid.push_back(t.get<double>());
    cfg.replicas = j["replicas"].get<int>();
    cfg.base_seed = j["seed"].get<std::uint64_t>();
    if (j.contains("center")) cfg.center = center_kind_from_name(j["center"].get<std::string>());
    if (j.contains("horizon")) cfg.horizon = j["horizon"].get<std::uint64_t>();
    if (j.contains("bound") && !j["bound"].is_null())
        cfg.bound = bound_kind_from_name(j["bound"].get<std::string>());
    if (j.contains("offset_c")) cfg.offset_c = j["offset_c"].get<double>();
    return cfg;
}

inline nlohmann::json experiment_config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["model"] = potential_to_json(cfg.potential);
    j["estimator"] = estimator_kind_name(cfg.estimator);
    if (cfg.schedule) {
        j["schedule"] = {{"kind", schedule_kind_name(cfg.schedule->kind)}};
        if (cfg.schedule->kind == ScheduleKind::plugin_rate) j["schedule"]["alpha"] = cfg.schedule->alpha;
    }
    if (cfg.fixed_k) j["k"] = *cfg.fixed_k;
    j["n_grid"] = cfg.n_grid;
    j["t_grid"] = cfg.t_grid;
    j["replicas"] = cfg.replicas;
    j["seed"] = cfg.base_seed;
    j["center"] = center_kind_name(cfg.center);
    if (cfg.horizon) j["horizon"] = cfg.horizon;
    if (cfg.bound) j["bound"] = bound_kind_name(*cfg.bound);
    if (cfg.offset_c != 0.0) j["offset_c"] = cfg.offset_c;
    return j;
}

// One row per (n, t[, side]): the tail table as CSV.
inline std::string experiment_csv(const ExperimentResult& res) {
    std::ostringstream out;
    out << "n,t,side,p_hat,ci_low,ci_high,exceed,used,saturated,usable,bound\n";
    for (const TailRow& row : res.tails) {
        out << row.n << ',' << format_double(row.t) << ',' << row.side << ','
            << format_double(row.p_hat) << ',' << format_double(row.ci_low) << ','
            << format_double(row.ci_high) << ',' << row.exceed << ',' << row.used << ','
            << row.saturated << ',' << (row.usable ? 1 : 0) << ',';
        if (row.has_bound) out << format_double(row.bound);
        out << '\n';
    }
    return out.str();
}

inline nlohmann::json bound_constants_to_json(BoundKind kind, const BoundConstants& k) {
    nlohmann::json out;
    switch (kind) {
    case BoundKind::plugin_tail:
        out = {{"D", k.D}, {"alpha", k.alpha}};
        break;
    case BoundKind::plugin_variance:
        out = {{"D", k.D}, {"alpha", k.alpha}};
        break;
    case BoundKind::conditional_tail:
        out = {{"Gamma", k.Gamma}, {"xi", k.xi}, {"gamma", k.gamma}, {"c", k.c}};
        break;
    case BoundKind::birkhoff_tail:
        out = {{"B", k.B}, {"D", k.D}, {"lipschitz", k.lipschitz}};
        break;
    case BoundKind::waiting_upper:
    case BoundKind::waiting_lower:
        out = {{"C1", k.C1}, {"C2", k.C2}};
        break;
    }
    return out;
}

inline nlohmann::json experiment_summary_json(const ExperimentConfig& cfg,
                                              const ExperimentResult& res) {
    nlohmann::json j;
    j["config"] = experiment_config_to_json(cfg);
    j["model"] = {{"alphabet", cfg.potential.alphabet.size},
                  {"range", cfg.potential.range},
                  {"theta", cfg.potential.metric.theta},
                  {"pressure", res.pressure},
                  {"entropy", res.entropy}};
    j["points"] = nlohmann::json::array();
    for (const GridPointResult& pt : res.points)
        j["points"].push_back({{"n", pt.n},
                               {"k", pt.k},
                               {"center", pt.center},
                               {"mean", pt.mean},
                               {"variance", pt.variance},
                               {"replicas", pt.replicas},
                               {"saturated", pt.saturated}});
    if (res.fit) {
        j["fit"] = {{"kind", bound_kind_name(res.fit->kind)},
                    {"provenance", "fitted"},
                    {"r_squared", res.fit->r_squared},
                    {"points_used", res.fit->points_used},
                    {"constants", bound_constants_to_json(res.fit->kind, res.fit->constants)}};
    }

    // Sanity checks a reader will want at a glance.
    bool monotone = true;
    for (std::size_t i = 1; i < res.tails.size(); ++i) {
        const TailRow& prev = res.tails[i - 1];
        const TailRow& cur = res.tails[i];
        if (prev.n == cur.n && prev.side == cur.side && cur.t > prev.t && cur.p_hat > prev.p_hat)
            monotone = false;
    }
    j["checks"]["tail_monotone_in_t"] = monotone;
    if (res.fit) {
        bool dominates = true;
        for (const TailRow& row : res.tails)
            if (row.has_bound && row.usable && row.p_hat > row.bound) dominates = false;
        j["checks"]["bound_dominates"] = dominates;
    }
    return j;
}

inline nlohmann::json gibbs_ratio_to_json(const GibbsRatioReport& rep) {
    return nlohmann::json{{"depth", rep.depth},
                          {"min_ratio", rep.min_ratio},
                          {"max_ratio", rep.max_ratio},
                          {"min_by_m", rep.min_by_m},
                          {"max_by_m", rep.max_by_m}};
}

inline nlohmann::json oscillation_to_json(const OscillationReport& rep) {
    return nlohmann::json{{"n", rep.n},
                          {"k", rep.k},
                          {"alphabet", rep.alphabet_size},
                          {"exact_max_delta", rep.exact_max_delta},
                          {"bound", rep.bound},
                          {"within_bound", rep.within_bound}};
}

inline nlohmann::json exp_law_to_json(const ExpLawReport& rep) {
    return nlohmann::json{{"word_length", rep.word_length},
                          {"mu_word", rep.mu_word},
                          {"replicas", rep.replicas},
                          {"saturated", rep.saturated},
                          {"lambda_hat", rep.lambda_hat},
                          {"sup_distance", rep.sup_distance},
                          {"rate_low", rep.rate_low},
                          {"rate_high", rep.rate_high},
                          {"batch_lambda", rep.batch_lambda}};
}

inline nlohmann::json expectation_gap_to_json(const ExpectationGapReport& rep) {
    nlohmann::json pts = nlohmann::json::array();
    for (const GapPoint& p : rep.points)
        pts.push_back({{"n", p.n},
                       {"k", p.k},
                       {"gap", p.gap},
                       {"std_error", p.std_error},
                       {"scaled_gap", p.scaled_gap},
                       {"mean_abs_delta", p.mean_abs_delta}});
    return nlohmann::json{{"gamma", rep.gamma}, {"c", rep.c}, {"points", pts}};
}

inline nlohmann::json model_summary_json(const GibbsModel& model) {
    nlohmann::json j;
    j["alphabet"] = model.alphabet().size;
    j["range"] = model.potential().range;
    j["order"] = model.order();
    j["pressure"] = model.pressure();
    j["entropy"] = model.exact_entropy();
    j["potential_integral"] = model.potential_integral();
    j["eigen_iterations"] = model.diagnostics().iterations;
    j["eigen_residual"] = model.diagnostics().residual;
    nlohmann::json pi = nlohmann::json::object();
    nlohmann::json kernel = nlohmann::json::object();
    for (std::size_t s = 0; s < model.state_count(); ++s) {
        std::string key = block_to_string(unpack_block(s, model.order(), model.alphabet().size),
                                          model.alphabet().size);
        pi[key] = model.stationary(s);
        nlohmann::json row = nlohmann::json::array();
        for (Symbol b = 0; b < model.alphabet().size; ++b) row.push_back(model.kernel(s, b));
        kernel[key] = row;
    }
    j["stationary"] = pi;
    j["kernel"] = kernel;
    return j;
}

} // namespace gibbslab
