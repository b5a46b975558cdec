#pragma once

// Hitting times: the first index j >= 1 at which a fixed pattern occurs in a
// sampled stream, found by feeding the stream through a Knuth-Morris-Pratt
// matcher so memory stays O(|pattern|) however long the wait.

#include <cmath>
#include <cstdint>
#include <vector>

#include "gibbslab/errors.hpp"
#include "gibbslab/gibbs_model.hpp"
#include "gibbslab/shift_space.hpp"

namespace gibbslab {

constexpr std::uint64_t kHorizonCap = 1000000000; // 1e9 stream positions

// KMP failure function: fail[i] = length of the longest proper border of
// pattern[0..i].
inline std::vector<int> failure_function(const std::vector<Symbol>& pattern) {
    std::vector<int> fail(pattern.size(), 0);
    for (std::size_t i = 1; i < pattern.size(); ++i) {
        int j = fail[i - 1];
        while (j > 0 && pattern[i] != pattern[static_cast<std::size_t>(j)])
            j = fail[static_cast<std::size_t>(j - 1)];
        if (pattern[i] == pattern[static_cast<std::size_t>(j)]) ++j;
        fail[i] = j;
    }
    return fail;
}

struct HittingSample {
    std::uint64_t waiting = 0;   // match start position j >= 1; 0 when saturated
    bool saturated = false;
    std::uint64_t horizon = 0;
};

// First j in [1, horizon] with y_j .. y_{j+|w|-1} = w, where y is the stream
// of the model sampled from `seed` (the same stream sample_path(seed) yields).
// Position 0 is excluded by definition, so a sampler-vs-pattern coincidence
// at the origin does not count.
inline HittingSample hitting_time(const GibbsModel& model, const Word& pattern,
                                  std::uint64_t seed, std::uint64_t horizon) {
    if (!(pattern.alphabet == model.alphabet()))
        throw invalid_input("hitting_time: pattern alphabet does not match model");
    if (horizon == 0 || horizon > kHorizonCap)
        throw invalid_input("hitting_time: horizon must be in [1, 1e9]");
    const std::vector<Symbol>& w = pattern.symbols;
    std::vector<int> fail = failure_function(w);
    int m = pattern.length();
    std::size_t k = static_cast<std::size_t>(model.alphabet().size);
    // Unroll the KMP fallback chain into a match automaton: dfa[j*k + c] is
    // the matched length after reading symbol c with j symbols matched, so
    // the stream loop is one table lookup per position.  Row m is never
    // needed -- a full match returns immediately.
    std::vector<int> dfa(static_cast<std::size_t>(m) * k, 0);
    for (int j = 0; j < m; ++j)
        for (std::size_t c = 0; c < k; ++c) {
            if (static_cast<Symbol>(c) == w[static_cast<std::size_t>(j)])
                dfa[static_cast<std::size_t>(j) * k + c] = j + 1;
            else if (j > 0)
                dfa[static_cast<std::size_t>(j) * k + c] =
                    dfa[static_cast<std::size_t>(fail[static_cast<std::size_t>(j - 1)]) * k + c];
        }
    PathSampler stream(model, seed);
    stream.next(); // discard y_0
    int matched = 0;
    // Positions e = 1, 2, ... of the stream; a full match ending at e starts
    // at j = e - m + 1, and only starts j <= horizon count.
    std::uint64_t last_end = horizon + static_cast<std::uint64_t>(m) - 1;
    for (std::uint64_t e = 1; e <= last_end; ++e) {
        Symbol s = stream.next();
        matched = dfa[static_cast<std::size_t>(matched) * k + static_cast<std::size_t>(s)];
        if (matched == m)
            return HittingSample{e - static_cast<std::uint64_t>(m) + 1, false, horizon};
    }
    return HittingSample{0, true, horizon};
}

// (1/n) log W with n = |pattern|; rejects saturated samples.
inline double hitting_rate(const HittingSample& s, int n) {
    if (n < 1) throw invalid_input("hitting_rate: n must be >= 1");
    if (s.saturated) throw invalid_input("hitting_rate: sample saturated at horizon");
    return std::log(static_cast<double>(s.waiting)) / static_cast<double>(n);
}

// Horizon heuristic e^{n (h + 3)}, capped: far beyond any mass of the
// hitting-time law at entropy h, so saturation stays negligible without
// letting a single replica run forever.
inline std::uint64_t default_horizon(double entropy_estimate, int n) {
    if (n < 1) throw invalid_input("default_horizon: n must be >= 1");
    double ex = static_cast<double>(n) * (entropy_estimate + 3.0);
    if (ex >= std::log(static_cast<double>(kHorizonCap))) return kHorizonCap;
    double v = std::ceil(std::exp(ex));
    return v < 1.0 ? 1 : static_cast<std::uint64_t>(v);
}

} // namespace gibbslab
