#pragma once

// Brute-force oracle for the per-coordinate oscillation of the plug-in block
// entropy: over every sample of length n and every single-symbol
// substitution, how much can ^H_k move?  The concentration machinery rests
// on the bound 2 k |A|^k log(n) / n for this quantity; here it is checked
// exactly by enumeration.

#include <cmath>
#include <cstdint>
#include <vector>

#include "gibbslab/empirical.hpp"
#include "gibbslab/errors.hpp"
#include "gibbslab/shift_space.hpp"

namespace gibbslab {

struct OscillationReport {
    int n = 0;
    int k = 0;
    int alphabet_size = 0;
    double exact_max_delta = 0.0; // max over samples, positions, substitutions
    double bound = 0.0;           // 2 k |A|^k log(n) / n
    bool within_bound = false;
};

namespace detail {

// ^H_k of the sample encoded by `code` (base-|A| digits, x_0 most
// significant).  counts/touched are scratch reused across calls.
inline double plugin_entropy_of_code(std::uint64_t code, int n, int k, int a,
                                     std::vector<std::uint32_t>& counts,
                                     std::vector<std::size_t>& touched) {
    std::vector<Symbol> x(static_cast<std::size_t>(n));
    std::uint64_t c = code;
    for (int j = n - 1; j >= 0; --j) {
        x[static_cast<std::size_t>(j)] = static_cast<Symbol>(c % static_cast<std::uint64_t>(a));
        c /= static_cast<std::uint64_t>(a);
    }
    touched.clear();
    for (int j = 0; j < n; ++j) {
        std::size_t w = 0;
        for (int i = 0; i < k; ++i)
            w = w * static_cast<std::size_t>(a) + static_cast<std::size_t>(x[static_cast<std::size_t>((j + i) % n)]);
        if (counts[w]++ == 0) touched.push_back(w);
    }
    long double acc = 0.0L;
    for (std::size_t w : touched) {
        std::uint32_t cnt = counts[w];
        if (cnt > 1) acc += static_cast<long double>(cnt) * std::log(static_cast<long double>(cnt));
        counts[w] = 0;
    }
    long double h = std::log(static_cast<long double>(n)) - acc / static_cast<long double>(n);
    return h < 0.0L ? 0.0 : static_cast<double>(h);
}

} // namespace detail

// Enumerates all |A|^n samples (budget-capped at 2^20) and all n(|A|-1)
// substitutions of each.  k <= n required.
inline OscillationReport oscillation_oracle(int n, int k, Alphabet alphabet) {
    if (n < 1) throw invalid_input("oscillation_oracle: n must be >= 1");
    if (k < 1 || k > n) throw invalid_input("oscillation_oracle: need 1 <= k <= n");
    int a = alphabet.size;
    std::size_t samples = alphabet_power(a, n);
    if (samples > (std::size_t{1} << 20))
        throw invalid_input("oscillation_oracle: |A|^n exceeds the 2^20 enumeration budget");

    std::vector<double> entropy(samples);
    std::vector<std::uint32_t> counts(alphabet_power(a, k), 0);
    std::vector<std::size_t> touched;
    for (std::size_t code = 0; code < samples; ++code)
        entropy[code] = detail::plugin_entropy_of_code(code, n, k, a, counts, touched);

    double worst = 0.0;
    // place[j] = |A|^{n-1-j}, the weight of digit j in the packed code.
    std::vector<std::uint64_t> place(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) place[static_cast<std::size_t>(j)] = alphabet_power(a, n - 1 - j);
    for (std::size_t code = 0; code < samples; ++code) {
        for (int j = 0; j < n; ++j) {
            std::uint64_t pj = place[static_cast<std::size_t>(j)];
            Symbol cur = static_cast<Symbol>((code / pj) % static_cast<std::uint64_t>(a));
            std::uint64_t cleared = code - static_cast<std::uint64_t>(cur) * pj;
            for (Symbol b = 0; b < a; ++b) {
                if (b == cur) continue;
                std::uint64_t other = cleared + static_cast<std::uint64_t>(b) * pj;
                double d = std::abs(entropy[code] - entropy[other]);
                if (d > worst) worst = d;
            }
        }
    }

    OscillationReport rep;
    rep.n = n;
    rep.k = k;
    rep.alphabet_size = a;
    rep.exact_max_delta = worst;
    rep.bound = 2.0 * static_cast<double>(k) * static_cast<double>(alphabet_power(a, k)) *
                std::log(static_cast<double>(n)) / static_cast<double>(n);
    rep.within_bound = rep.exact_max_delta <= rep.bound + 1e-12;
    return rep;
}

} // namespace gibbslab
