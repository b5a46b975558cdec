#pragma once

// Empirical k-block distributions with the periodic-extension convention:
// the sample x_0..x_{n-1} is wrapped around, so every one of the n window
// positions contributes and the k-block frequencies are exactly consistent
// across k (dropping the first or the last symbol of the (k+1)-block
// distribution recovers the k-block one, as integer counts).  That exactness
// is what makes the plug-in conditional entropy monotone and the
// entropy-decomposition identities below hold to machine precision.

#include <cmath>
#include <cstdint>
#include <vector>

#include "gibbslab/errors.hpp"
#include "gibbslab/gibbs_model.hpp"
#include "gibbslab/shift_space.hpp"

namespace gibbslab {

struct EmpiricalBlockDistribution {
    Alphabet alphabet;
    int k = 1;
    std::uint64_t n = 0;                // total count = sample length
    std::vector<std::uint64_t> counts;  // indexed by packed k-block

    double freq(std::size_t code) const {
        return static_cast<double>(counts[code]) / static_cast<double>(n);
    }
};

inline EmpiricalBlockDistribution empirical_distribution(const SymbolSequence& x, int k) {
    if (k < 1) throw invalid_input("empirical_distribution: k must be >= 1");
    if (static_cast<std::uint64_t>(k) > x.length())
        throw invalid_input("empirical_distribution: k exceeds sample length");
    std::size_t cells = checked_block_count(x.alphabet.size, k, "empirical_distribution");
    EmpiricalBlockDistribution d{x.alphabet, k, x.length(), std::vector<std::uint64_t>(cells, 0)};
    std::size_t base = static_cast<std::size_t>(x.alphabet.size);
    std::size_t mod = cells / base; // |A|^{k-1}
    std::size_t code = 0;
    for (int j = 0; j + 1 < k; ++j) code = code * base + static_cast<std::size_t>(x[static_cast<std::size_t>(j)]);
    for (std::uint64_t j = 0; j < x.length(); ++j) {
        code = (code % mod) * base +
               static_cast<std::size_t>(periodic_index(x, j + static_cast<std::uint64_t>(k) - 1));
        ++d.counts[code];
    }
    return d;
}

// Marginal over the first k-1 symbols (drop the last one).
inline EmpiricalBlockDistribution marginalize_last(const EmpiricalBlockDistribution& d) {
    if (d.k < 2) throw invalid_input("marginalize_last: k must be >= 2");
    std::size_t base = static_cast<std::size_t>(d.alphabet.size);
    EmpiricalBlockDistribution out{d.alphabet, d.k - 1, d.n,
                                   std::vector<std::uint64_t>(d.counts.size() / base, 0)};
    for (std::size_t c = 0; c < d.counts.size(); ++c) out.counts[c / base] += d.counts[c];
    return out;
}

// Marginal over the last k-1 symbols (drop the first one).
inline EmpiricalBlockDistribution marginalize_first(const EmpiricalBlockDistribution& d) {
    if (d.k < 2) throw invalid_input("marginalize_first: k must be >= 2");
    std::size_t base = static_cast<std::size_t>(d.alphabet.size);
    std::size_t cells = d.counts.size() / base;
    EmpiricalBlockDistribution out{d.alphabet, d.k - 1, d.n, std::vector<std::uint64_t>(cells, 0)};
    for (std::size_t c = 0; c < d.counts.size(); ++c) out.counts[c % cells] += d.counts[c];
    return out;
}

// Shannon entropy in nats: H = log n - (1/n) sum_w c_w log c_w.
inline double block_entropy(const EmpiricalBlockDistribution& d) {
    long double acc = 0.0L;
    for (std::uint64_t c : d.counts)
        if (c > 1) acc += static_cast<long double>(c) * std::log(static_cast<long double>(c));
    long double n = static_cast<long double>(d.n);
    long double h = std::log(n) - acc / n;
    return h < 0.0L ? 0.0 : static_cast<double>(h);
}

// Relative entropy H(d | mu_k) = sum_w d(w) log( d(w) / mu([w]) ), over the
// support of d.  Nonnegative; zero iff d matches the model's k-marginal.
inline double relative_block_entropy(const EmpiricalBlockDistribution& d, const GibbsModel& model) {
    if (!(d.alphabet == model.alphabet()))
        throw invalid_input("relative_block_entropy: alphabet mismatch");
    long double acc = 0.0L;
    for (std::size_t c = 0; c < d.counts.size(); ++c) {
        if (d.counts[c] == 0) continue;
        double f = d.freq(c);
        Word w(d.alphabet, unpack_block(c, d.k, d.alphabet.size));
        acc += static_cast<long double>(f) *
               (std::log(static_cast<long double>(f)) -
                static_cast<long double>(model.log_cylinder_measure(w)));
    }
    double out = static_cast<double>(acc);
    return out < 0.0 ? 0.0 : out;
}

// ^H_k: plug-in entropy of the empirical k-block distribution.
inline double plugin_entropy(const SymbolSequence& x, int k) {
    return block_entropy(empirical_distribution(x, k));
}

// ^h_k = ^H_k - ^H_{k-1}, with ^h_1 = ^H_1.  The periodic extension makes
// this the conditional entropy of a genuine stationary measure (the uniform
// measure on the orbit of x~), hence nonnegative and nonincreasing in k.
inline double conditional_plugin_entropy(const SymbolSequence& x, int k) {
    if (k < 1) throw invalid_input("conditional_plugin_entropy: k must be >= 1");
    if (k == 1) return plugin_entropy(x, 1);
    return plugin_entropy(x, k) - plugin_entropy(x, k - 1);
}

// ^H_k / k, the entropy-rate form of the plug-in estimator.
inline double plugin_rate(const SymbolSequence& x, int k) {
    return plugin_entropy(x, k) / static_cast<double>(k);
}

// phi_k(w) = log mu([w_0..w_{k-1}]) - log mu([w_1..w_{k-1}]): the finite-k
// approximation of the normalized potential read off the model's exact
// cylinder probabilities.  Needs |w| >= 2.
inline double phi_k_value(const GibbsModel& model, const Word& w) {
    if (w.length() < 2) throw invalid_input("phi_k_value: word must have length >= 2");
    Word tail(w.alphabet, std::vector<Symbol>(w.symbols.begin() + 1, w.symbols.end()));
    return model.log_cylinder_measure(w) - model.log_cylinder_measure(tail);
}

namespace detail {

// sum_w E_k(w) phi_k(w) over the support of the empirical distribution.
inline long double empirical_phi_k_sum(const EmpiricalBlockDistribution& d, const GibbsModel& model) {
    long double acc = 0.0L;
    for (std::size_t c = 0; c < d.counts.size(); ++c) {
        if (d.counts[c] == 0) continue;
        Word w(d.alphabet, unpack_block(c, d.k, d.alphabet.size));
        acc += static_cast<long double>(d.freq(c)) * static_cast<long double>(phi_k_value(model, w));
    }
    return acc;
}

} // namespace detail

// ^Delta_k = H_{k-1}(E_{k-1} | mu) - H_k(E_k | mu): the relative-entropy
// increment that measures how much of the plug-in conditional entropy's bias
// comes from the empirical distribution straying from the model.  The same
// quantity equals ^h_k + sum_w E_k(w) phi_k(w) by an exact rearrangement;
// both routes are computed and must agree to 1e-10.
inline double delta_hat(const SymbolSequence& x, int k, const GibbsModel& model) {
    if (k < 2) throw invalid_input("delta_hat: k must be >= 2");
    EmpiricalBlockDistribution dk = empirical_distribution(x, k);
    EmpiricalBlockDistribution dk1 = marginalize_last(dk);
    long double direct = static_cast<long double>(relative_block_entropy(dk1, model)) -
                         static_cast<long double>(relative_block_entropy(dk, model));
    long double dual = static_cast<long double>(conditional_plugin_entropy(x, k)) +
                       detail::empirical_phi_k_sum(dk, model);
    if (std::abs(static_cast<double>(direct - dual)) > 1e-10)
        throw internal_error("delta_hat: dual computations disagree by " +
                             std::to_string(static_cast<double>(direct - dual)));
    return static_cast<double>(direct);
}

// Remainder of the exact decomposition
//   ^h_k(x) = -(1/n) sum_j (phi - P)(x~_j ...) + ^Delta_k(x) + residual.
// The Birkhoff term runs over the n periodic windows, where the coboundary
// between phi - P and the normalized potential telescopes away; the residual
// is then bounded by |phi|_theta theta^k and vanishes identically once k
// exceeds the potential's range.
inline double decomposition_residual(const SymbolSequence& x, int k, const GibbsModel& model) {
    Potential norm = model.pressure_normalized();
    double birkhoff = birkhoff_average_periodic(norm, x);
    return conditional_plugin_entropy(x, k) + birkhoff - delta_hat(x, k, model);
}

// sup_w | phi_k(w) - phi*(w_0..w_r) | for each k, the words w running over
// A^{max(k, r+1)} and phi* the model's normalized potential.  Decays like
// theta^k and hits exact zero for k > range.
inline std::vector<double> phi_k_deviation_table(const GibbsModel& model, int k_min, int k_max) {
    if (k_min < 2 || k_max < k_min) throw invalid_input("phi_k_deviation_table: need 2 <= k_min <= k_max");
    Potential cond = model.conditional_potential();
    int r = cond.range;
    std::vector<double> out;
    for (int k = k_min; k <= k_max; ++k) {
        int len = std::max(k, r + 1);
        std::size_t codes = checked_block_count(model.alphabet().size, len, "phi_k_deviation_table");
        std::size_t cond_div = alphabet_power(model.alphabet().size, len - (r + 1));
        double worst = 0.0;
        for (std::size_t c = 0; c < codes; ++c) {
            std::vector<Symbol> sym = unpack_block(c, len, model.alphabet().size);
            Word wk(model.alphabet(), std::vector<Symbol>(sym.begin(), sym.begin() + k));
            double approx = phi_k_value(model, wk);
            double exact = cond.values[c / cond_div];
            worst = std::max(worst, std::abs(approx - exact));
        }
        out.push_back(worst);
    }
    return out;
}

} // namespace gibbslab
