// gibbslab command-line front end.
//
// Subcommands: model, sample, estimate, experiment, oracle, explaw.
// Exit codes: 0 success; 2 invalid input or parse failure; 3 theorem
// hypothesis violated; 4 numerical failure; 5 hitting estimate saturated at
// the horizon.

#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <gibbslab/gibbslab.hpp>

namespace {

using namespace gibbslab;

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
    } else {
        write_text_file(out_path, content);
    }
}

std::string dirname_of(const std::string& path) {
    std::size_t slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string() : path.substr(0, slash);
}

Potential load_potential_file(const std::string& path) {
    return potential_from_json(load_json_file(path));
}

struct EstimateArgs {
    std::string model_path;
    std::string estimator = "conditional";
    std::optional<int> k;
    std::string schedule;
    double alpha = 0.5;
    std::uint64_t n = 0;
    std::uint64_t seed = 1;
    std::uint64_t horizon = 0;
    int replicas = 1;
    std::string out;
};

int cmd_estimate(const EstimateArgs& a) {
    Potential phi = load_potential_file(a.model_path);
    GibbsModel model(phi);
    EstimatorKind kind = estimator_kind_from_name(a.estimator);
    if (kind == EstimatorKind::birkhoff)
        throw invalid_input("estimate: birkhoff runs through the experiment command");
    if (a.n < 2) throw invalid_input("estimate: need --n >= 2");

    int k = 0;
    std::string schedule_used;
    bool plug = kind != EstimatorKind::hitting_rate;
    if (plug) {
        if (a.k.has_value() == !a.schedule.empty())
            throw invalid_input("estimate: give exactly one of --k and --schedule");
        if (a.k) {
            k = *a.k;
            if (k < 1 || static_cast<std::uint64_t>(k) > a.n)
                throw invalid_input("estimate: need 1 <= k <= n");
        } else {
            ScheduleParams sp{schedule_kind_from_name(a.schedule), a.alpha, phi.metric.theta,
                              phi.alphabet.size};
            k = schedule_k(a.n, sp);
            schedule_used = a.schedule;
        }
    } else if (a.k || !a.schedule.empty()) {
        throw invalid_input("estimate: hitting-rate takes no --k or --schedule");
    }

    std::uint64_t horizon = a.horizon;
    if (kind == EstimatorKind::hitting_rate && horizon == 0)
        horizon = default_horizon(model.exact_entropy(), static_cast<int>(a.n));

    auto one = [&](std::uint64_t c, double* value, std::uint64_t* waiting, bool* saturated) {
        switch (kind) {
        case EstimatorKind::plugin_rate: {
            SymbolSequence x = sample_path(model, a.n, a.seed + c);
            *value = plugin_rate(x, k);
            return;
        }
        case EstimatorKind::conditional: {
            SymbolSequence x = sample_path(model, a.n, a.seed + c);
            *value = conditional_plugin_entropy(x, k);
            return;
        }
        case EstimatorKind::hitting_rate: {
            SymbolSequence xs = sample_path(model, a.n, a.seed + 2 * c);
            Word pattern(xs.alphabet, xs.symbols);
            HittingSample w = hitting_time(model, pattern, a.seed + 2 * c + 1, horizon);
            *waiting = w.waiting;
            *saturated = w.saturated;
            if (!w.saturated) *value = hitting_rate(w, static_cast<int>(a.n));
            return;
        }
        default:
            throw invalid_input("estimate: unsupported estimator");
        }
    };

    if (a.replicas == 1) {
        double value = 0.0;
        std::uint64_t waiting = 0;
        bool saturated = false;
        one(0, &value, &waiting, &saturated);
        nlohmann::json rec{{"estimator", a.estimator}, {"n", a.n}, {"seed", a.seed}};
        if (plug) rec["k"] = k;
        if (!schedule_used.empty()) rec["schedule"] = schedule_used;
        if (kind == EstimatorKind::hitting_rate) {
            rec["horizon"] = horizon;
            rec["saturated"] = saturated;
            if (!saturated) {
                rec["waiting"] = waiting;
                rec["value"] = value;
            }
        } else {
            rec["value"] = value;
        }
        emit(a.out, rec.dump(2));
        return (kind == EstimatorKind::hitting_rate && saturated) ? 5 : 0;
    }

    if (a.replicas < 1) throw invalid_input("estimate: --replicas must be >= 1");
    std::ostringstream csv;
    csv << "estimator,n,k,seed,value,waiting,saturated\n";
    int saturated_count = 0;
    for (int i = 0; i < a.replicas; ++i) {
        double value = 0.0;
        std::uint64_t waiting = 0;
        bool saturated = false;
        one(static_cast<std::uint64_t>(i), &value, &waiting, &saturated);
        std::uint64_t rec_seed =
            kind == EstimatorKind::hitting_rate ? a.seed + 2 * static_cast<std::uint64_t>(i)
                                                : a.seed + static_cast<std::uint64_t>(i);
        csv << a.estimator << ',' << a.n << ',' << (plug ? std::to_string(k) : std::string()) << ','
            << rec_seed << ',';
        if (saturated) {
            ++saturated_count;
            csv << ",," << 1 << '\n';
        } else {
            csv << format_double(value) << ','
                << (kind == EstimatorKind::hitting_rate ? std::to_string(waiting) : std::string())
                << ',' << 0 << '\n';
        }
    }
    emit(a.out, csv.str());
    return saturated_count == a.replicas ? 5 : 0;
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const hypothesis_violation& e) {
        std::cerr << "error (hypothesis): " << e.what() << '\n';
        return 3;
    } catch (const fit_error& e) {
        std::cerr << "error (fit): " << e.what() << '\n';
        return 2;
    } catch (const invalid_input& e) {
        std::cerr << "error (input): " << e.what() << '\n';
        return 2;
    } catch (const internal_error& e) {
        std::cerr << "error (internal): " << e.what() << '\n';
        return 4;
    } catch (const numerical_error& e) {
        std::cerr << "error (numerical): " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "gibbslab: exactly solvable Gibbs measures, entropy estimators, and\n"
        "concentration experiments.\n\n"
        "Exit codes: 0 ok, 2 invalid input, 3 hypothesis violation,\n"
        "4 numerical failure, 5 saturated hitting estimate."};
    app.require_subcommand(1);

    // --- model ---
    auto* cmd_model = app.add_subcommand("model", "Solve a potential: pressure, entropy, kernel");
    std::string model_path, out_path;
    int ratio_depth = 0;
    cmd_model->add_option("--model", model_path, "potential JSON file")->required();
    cmd_model->add_option("--depth", ratio_depth, "also report Gibbs-ratio extremes to this depth");
    cmd_model->add_option("--out", out_path, "output path (default stdout)");

    // --- sample ---
    auto* cmd_sample = app.add_subcommand("sample", "Draw a sample path");
    std::string s_model, s_out;
    std::uint64_t s_n = 0, s_seed = 1;
    cmd_sample->add_option("--model", s_model, "potential JSON file")->required();
    cmd_sample->add_option("--n", s_n, "sample length")->required();
    cmd_sample->add_option("--seed", s_seed, "RNG seed (default 1)");
    cmd_sample->add_option("--out", s_out, "output path (default stdout)");

    // --- estimate ---
    auto* cmd_est = app.add_subcommand("estimate", "Run an entropy estimator on fresh samples");
    EstimateArgs est;
    cmd_est->add_option("--model", est.model_path, "potential JSON file")->required();
    cmd_est->add_option("--estimator", est.estimator,
                        "plugin-rate | conditional | hitting-rate (default conditional)");
    int est_k = -1;
    cmd_est->add_option("--k", est_k, "fixed block length");
    cmd_est->add_option("--schedule", est.schedule,
                        "block-length schedule: plugin-rate | conditional | block-rate");
    cmd_est->add_option("--alpha", est.alpha, "plugin-rate schedule exponent (default 0.5)");
    cmd_est->add_option("--n", est.n, "sample length / pattern length")->required();
    cmd_est->add_option("--seed", est.seed, "base seed (default 1)");
    cmd_est->add_option("--horizon", est.horizon, "hitting horizon (default automatic)");
    cmd_est->add_option("--replicas", est.replicas, "replica count; >1 emits CSV (default 1)");
    cmd_est->add_option("--out", est.out, "output path (default stdout)");

    // --- experiment ---
    auto* cmd_exp = app.add_subcommand("experiment", "Run a configured tail/variance experiment");
    std::string exp_config, exp_out;
    cmd_exp->add_option("--config", exp_config, "experiment config JSON")->required();
    cmd_exp->add_option("--out", exp_out, "output base path; writes BASE.csv and BASE.json")
        ->required();

    // --- oracle ---
    auto* cmd_oracle = app.add_subcommand("oracle", "Exhaustive oscillation bound check");
    int o_n = 0, o_k = 0, o_alphabet = 2;
    std::string o_out;
    cmd_oracle->add_option("--n", o_n, "sample length (enumeration capped at |A|^n <= 2^20)")
        ->required();
    cmd_oracle->add_option("--k", o_k, "block length")->required();
    cmd_oracle->add_option("--alphabet", o_alphabet, "alphabet size (default 2)");
    cmd_oracle->add_option("--out", o_out, "output path (default stdout)");

    // --- explaw ---
    auto* cmd_law = app.add_subcommand("explaw", "Exponential-law diagnostics for a word");
    std::string l_model, l_word, l_out;
    int l_replicas = 10000, l_batches = 4;
    std::uint64_t l_seed = 1, l_horizon = 0;
    cmd_law->add_option("--model", l_model, "potential JSON file")->required();
    cmd_law->add_option("--word", l_word, "target word, digit string")->required();
    cmd_law->add_option("--replicas", l_replicas, "stream count (default 10000, min 1000)");
    cmd_law->add_option("--seed", l_seed, "base seed (default 1)");
    cmd_law->add_option("--horizon", l_horizon, "per-stream horizon (default automatic)");
    cmd_law->add_option("--batches", l_batches, "stability batches (default 4)");
    cmd_law->add_option("--out", l_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (cmd_model->parsed()) {
        return guarded([&] {
            Potential phi = load_potential_file(model_path);
            GibbsModel m(phi);
            nlohmann::json j = model_summary_json(m);
            if (ratio_depth > 0) j["gibbs_ratio"] = gibbs_ratio_to_json(m.gibbs_ratio_report(ratio_depth));
            emit(out_path, j.dump(2));
            return 0;
        });
    }
    if (cmd_sample->parsed()) {
        return guarded([&] {
            Potential phi = load_potential_file(s_model);
            GibbsModel m(phi);
            if (s_n == 0) throw invalid_input("sample: need --n >= 1");
            SymbolSequence x = sample_path(m, s_n, s_seed);
            nlohmann::json j{{"n", s_n},
                             {"seed", s_seed},
                             {"alphabet", phi.alphabet.size},
                             {"symbols", block_to_string(x.symbols, phi.alphabet.size)}};
            emit(s_out, j.dump(2));
            return 0;
        });
    }
    if (cmd_est->parsed()) {
        if (est_k >= 0) est.k = est_k;
        return guarded([&] { return cmd_estimate(est); });
    }
    if (cmd_exp->parsed()) {
        return guarded([&] {
            nlohmann::json cfg_json = load_json_file(exp_config);
            ExperimentConfig cfg = experiment_config_from_json(cfg_json, dirname_of(exp_config));
            ExperimentResult res = run_experiment(cfg);
            write_text_file(exp_out + ".csv", experiment_csv(res));
            write_text_file(exp_out + ".json", experiment_summary_json(cfg, res).dump(2) + "\n");
            std::cout << "wrote " << exp_out << ".csv and " << exp_out << ".json\n";
            if (res.fit)
                std::cout << "fitted " << bound_kind_name(res.fit->kind)
                          << " constants, R^2 = " << format_double(res.fit->r_squared) << '\n';
            return 0;
        });
    }
    if (cmd_oracle->parsed()) {
        return guarded([&] {
            OscillationReport rep = oscillation_oracle(o_n, o_k, Alphabet(o_alphabet));
            emit(o_out, oscillation_to_json(rep).dump(2));
            return 0;
        });
    }
    if (cmd_law->parsed()) {
        return guarded([&] {
            Potential phi = load_potential_file(l_model);
            GibbsModel m(phi);
            Word w(phi.alphabet, parse_block_string(l_word, phi.alphabet));
            ExpLawReport rep = exp_law_report(m, w, l_replicas, l_seed, l_horizon, l_batches);
            emit(l_out, exp_law_to_json(rep).dump(2));
            return 0;
        });
    }
    return 2;
}
