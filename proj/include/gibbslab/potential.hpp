#pragma once

// Finite-range potentials: a BlockFunction together with the metric parameter
// theta used for its Lipschitz seminorm, plus the JSON interchange format
//
//   {"alphabet": 2, "range": 1, "theta": 0.5,
//    "values": {"00": -0.105, "01": -2.302, "10": -1.609, "11": -0.223}}
//
// where keys run over all (range+1)-blocks as digit strings (comma-separated
// when the alphabet has more than 10 symbols).

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gibbslab/errors.hpp"
#include "gibbslab/rng.hpp"
#include "gibbslab/shift_space.hpp"

namespace gibbslab {

struct Potential : BlockFunction {
    MetricParams metric;

    Potential(Alphabet a, int r, std::vector<double> v, MetricParams m = MetricParams{})
        : BlockFunction(a, r, std::move(v)), metric(m) {}

    double seminorm() const { return lipschitz_seminorm(*this, metric); }
};

inline void check_finite(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x)) throw invalid_input(std::string(what) + ": values must be finite");
}

inline Potential potential_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw invalid_input("potential JSON must be an object");
    for (const char* key : {"alphabet", "range", "theta", "values"})
        if (!j.contains(key)) throw invalid_input(std::string("potential JSON missing field '") + key + "'");
    if (!j["alphabet"].is_number_integer()) throw invalid_input("potential field 'alphabet' must be an integer");
    if (!j["range"].is_number_integer()) throw invalid_input("potential field 'range' must be an integer");
    if (!j["theta"].is_number()) throw invalid_input("potential field 'theta' must be a number");
    if (!j["values"].is_object()) throw invalid_input("potential field 'values' must be an object");

    Alphabet a(j["alphabet"].get<int>());
    int range = j["range"].get<int>();
    if (range < 0) throw invalid_input("potential range must be >= 0");
    MetricParams metric(j["theta"].get<double>());

    std::size_t count = checked_block_count(a.size, range + 1, "potential");
    std::vector<double> values(count, 0.0);
    std::vector<bool> seen(count, false);
    for (const auto& [key, val] : j["values"].items()) {
        std::vector<Symbol> block = parse_block_string(key, a);
        if (static_cast<int>(block.size()) != range + 1)
            throw invalid_input("potential value key '" + key + "' is not a " +
                                std::to_string(range + 1) + "-block");
        if (!val.is_number()) throw invalid_input("potential value for '" + key + "' must be a number");
        std::size_t code = pack_block(block, a.size);
        if (seen[code]) throw invalid_input("potential value key '" + key + "' repeated");
        seen[code] = true;
        values[code] = val.get<double>();
    }
    for (std::size_t c = 0; c < count; ++c)
        if (!seen[c])
            throw invalid_input("potential JSON missing value for block '" +
                                block_to_string(unpack_block(c, range + 1, a.size), a.size) + "'");
    check_finite(values, "potential");
    return Potential(a, range, std::move(values), metric);
}

inline nlohmann::json potential_to_json(const Potential& phi) {
    nlohmann::json values = nlohmann::json::object();
    std::size_t count = phi.values.size();
    for (std::size_t c = 0; c < count; ++c)
        values[block_to_string(unpack_block(c, phi.range + 1, phi.alphabet.size), phi.alphabet.size)] =
            phi.values[c];
    return nlohmann::json{{"alphabet", phi.alphabet.size},
                          {"range", phi.range},
                          {"theta", phi.metric.theta},
                          {"values", values}};
}

// --- stock potentials used throughout the tests and experiments ---

// phi(x) = log p(x_0, x_1) for a stochastic matrix p: the Gibbs measure is the
// stationary Markov chain with that transition matrix, and the pressure is 0.
inline Potential markov_log_potential(const std::vector<std::vector<double>>& p,
                                      MetricParams metric = MetricParams{}) {
    int k = static_cast<int>(p.size());
    Alphabet a(k);
    std::vector<double> values(alphabet_power(k, 2));
    for (int i = 0; i < k; ++i) {
        if (static_cast<int>(p[i].size()) != k) throw invalid_input("transition matrix must be square");
        for (int j = 0; j < k; ++j) {
            if (!(p[i][j] > 0.0)) throw invalid_input("transition matrix entries must be positive");
            values[static_cast<std::size_t>(i * k + j)] = std::log(p[i][j]);
        }
    }
    return Potential(a, 1, std::move(values), metric);
}

// i.i.d. measure with marginal q: phi(x) = log q(x_0), range 0.
inline Potential bernoulli_log_potential(const std::vector<double>& q,
                                         MetricParams metric = MetricParams{}) {
    Alphabet a(static_cast<int>(q.size()));
    std::vector<double> values(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (!(q[i] > 0.0)) throw invalid_input("marginal entries must be positive");
        values[i] = std::log(q[i]);
    }
    return Potential(a, 0, std::move(values), metric);
}

inline Potential uniform_potential(int alphabet_size, MetricParams metric = MetricParams{}) {
    return bernoulli_log_potential(
        std::vector<double>(static_cast<std::size_t>(alphabet_size), 1.0 / alphabet_size), metric);
}

// Random potential with values uniform in [lo, hi]; used by property tests
// and the self-check tooling.
inline Potential random_potential(Alphabet a, int range, Rng& rng, double lo = -2.0, double hi = 2.0,
                                  MetricParams metric = MetricParams{}) {
    std::size_t count = checked_block_count(a.size, range + 1, "random potential");
    std::vector<double> values(count);
    for (double& v : values) v = lo + (hi - lo) * rng.uniform();
    return Potential(a, range, std::move(values), metric);
}

} // namespace gibbslab
