#pragma once

// Exactly solvable Gibbs measures for finite-range potentials.
//
// A potential of range r is realized as a Markov chain on the state space
// A^r: the transfer operator (L v)(s) = sum_b e^{phi(s b)} v(s') acts on
// functions of states, where s' is s shifted left with b appended.  Power
// iteration yields the Perron eigenvalue lambda (pressure = log lambda), the
// right eigenvector h and left eigenvector nu; the Gibbs measure is the
// stationary chain with kernel
//
//     p(s -> b) = e^{phi(s b)} h(s') / (lambda h(s)),
//
// stationary law pi proportional to nu * h.  Everything downstream -- exact
// cylinder probabilities, exact entropy, samples, Gibbs-ratio diagnostics --
// comes from this kernel in closed form.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gibbslab/errors.hpp"
#include "gibbslab/potential.hpp"
#include "gibbslab/rng.hpp"
#include "gibbslab/shift_space.hpp"

namespace gibbslab {

// Re-express a potential over longer blocks (the extra leading coordinates
// are ignored).  The induced Gibbs measure is unchanged; used for the range-0
// lift and by invariance tests.
inline Potential lift_potential(const Potential& phi, int new_range) {
    if (new_range < phi.range) throw invalid_input("lift_potential: cannot shorten range");
    if (new_range == phi.range) return phi;
    std::size_t count = checked_block_count(phi.alphabet.size, new_range + 1, "lift_potential");
    std::size_t base = alphabet_power(phi.alphabet.size, phi.range + 1);
    std::vector<double> values(count);
    for (std::size_t c = 0; c < count; ++c) values[c] = phi.values[c % base];
    return Potential(phi.alphabet, new_range, std::move(values), phi.metric);
}

struct EigenDiagnostics {
    std::size_t iterations = 0;   // total over right + left iteration
    double last_delta = 0.0;      // worse of the two per-side stopping residuals
    double residual = 0.0;        // sup |L h - lambda h| / lambda, post-convergence
};

struct GibbsRatioReport {
    int depth = 0;
    std::vector<double> min_by_m; // extremes of mu([x_0^{m-1}]) / e^{-Pm + S_m phi(x)}
    std::vector<double> max_by_m; // over all blocks, for m = 1..depth (index m-1)
    double min_ratio = 0.0;
    double max_ratio = 0.0;
};

class GibbsModel {
public:
    static constexpr double kEigenTol = 1e-13;
    static constexpr std::size_t kMaxIterations = 1000000;

    explicit GibbsModel(Potential phi)
        : phi_(std::move(phi)), order_(std::max(1, phi_.range)),
          lifted_(lift_potential(phi_, order_)) {
        build();
    }

    const Potential& potential() const { return phi_; }
    const Alphabet& alphabet() const { return phi_.alphabet; }
    // Markov order of the realization: max(1, range of the potential).
    int order() const { return order_; }
    std::size_t state_count() const { return states_; }
    double pressure() const { return pressure_; }
    const EigenDiagnostics& diagnostics() const { return diag_; }

    double stationary(std::size_t state) const { return pi_[state]; }
    double kernel(std::size_t state, Symbol b) const {
        return kernel_[state * static_cast<std::size_t>(alphabet().size) + static_cast<std::size_t>(b)];
    }
    std::size_t advance(std::size_t state, Symbol b) const {
        return (state % suffix_) * static_cast<std::size_t>(alphabet().size) + static_cast<std::size_t>(b);
    }

    double log_cylinder_measure(const Word& w) const {
        check_word(w);
        int r = order_;
        int m = w.length();
        if (m < r) {
            // Sum pi over all states extending w: those form a contiguous
            // code range because states are packed big-endian.
            std::size_t span = alphabet_power(alphabet().size, r - m);
            std::size_t lo = pack_block(w) * span;
            long double acc = 0.0L;
            for (std::size_t s = lo; s < lo + span; ++s) acc += pi_[s];
            return static_cast<double>(std::log(acc));
        }
        std::size_t s = 0;
        for (int j = 0; j < r; ++j) s = advance(s, w.symbols[static_cast<std::size_t>(j)]);
        long double acc = std::log(static_cast<long double>(pi_[s]));
        for (int j = r; j < m; ++j) {
            Symbol b = w.symbols[static_cast<std::size_t>(j)];
            acc += std::log(static_cast<long double>(kernel(s, b)));
            s = advance(s, b);
        }
        return static_cast<double>(acc);
    }

    double cylinder_measure(const Word& w) const { return std::exp(log_cylinder_measure(w)); }

    // Kernel-based Kolmogorov-Sinai entropy, cross-checked against the
    // variational identity h = P - int phi dmu at 1e-9.
    double exact_entropy() const { return entropy_; }

    // int f dmu for any finite-range observable on the same alphabet.
    double integral(const BlockFunction& f) const {
        if (!(f.alphabet == alphabet())) throw invalid_input("integral: alphabet mismatch");
        int len = f.range + 1;
        std::size_t count = checked_block_count(alphabet().size, len, "integral");
        long double acc = 0.0L;
        for (std::size_t c = 0; c < count; ++c) {
            Word w(alphabet(), unpack_block(c, len, alphabet().size));
            acc += static_cast<long double>(cylinder_measure(w)) * f.values[c];
        }
        return static_cast<double>(acc);
    }

    double potential_integral() const { return integral(phi_); }

    // phi - P: same Gibbs measure, zero pressure.
    Potential pressure_normalized() const {
        std::vector<double> v = phi_.values;
        for (double& x : v) x -= pressure_;
        return Potential(phi_.alphabet, phi_.range, std::move(v), phi_.metric);
    }

    // The normalized (one-step conditional) potential on (order+1)-blocks:
    //   phi*(y_0..y_r) = log mu([y_0..y_r]) - log mu([y_1..y_r])
    //                  = log [ pi(s_0) p(s_0 -> y_r) / pi(s_1) ].
    // Its Gibbs measure is mu again and its pressure is 0; e^{phi*} sums to 1
    // over the leading symbol.
    Potential conditional_potential() const {
        int r = order_;
        std::size_t count = alphabet_power(alphabet().size, r + 1);
        std::vector<double> v(count);
        for (std::size_t c = 0; c < count; ++c) {
            std::size_t s0 = c / static_cast<std::size_t>(alphabet().size);
            std::size_t s1 = c % states_;
            Symbol b = static_cast<Symbol>(c % static_cast<std::size_t>(alphabet().size));
            v[c] = std::log(pi_[s0]) + std::log(kernel(s0, b)) - std::log(pi_[s1]);
        }
        return Potential(alphabet(), r, std::move(v), phi_.metric);
    }

    // Exact extremes of the Gibbs ratio mu([x_0^{m-1}]) / exp(-Pm + S_m phi)
    // for m = 1..depth, by enumerating all (m + range)-blocks (the Birkhoff
    // sum S_m phi looks that far ahead).
    GibbsRatioReport gibbs_ratio_report(int depth) const {
        if (depth < 1) throw invalid_input("gibbs_ratio_report: depth must be >= 1");
        if (depth > 14) throw invalid_input("gibbs_ratio_report: depth capped at 14");
        int r = phi_.range;
        checked_block_count(alphabet().size, depth + r, "gibbs_ratio_report");
        GibbsRatioReport rep;
        rep.depth = depth;
        rep.min_ratio = std::numeric_limits<double>::infinity();
        rep.max_ratio = -rep.min_ratio;
        std::size_t blocklen_count = alphabet_power(alphabet().size, r + 1);
        for (int m = 1; m <= depth; ++m) {
            int total = m + r;
            std::size_t codes = alphabet_power(alphabet().size, total);
            std::size_t prefix_div = alphabet_power(alphabet().size, r);
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            for (std::size_t c = 0; c < codes; ++c) {
                Word prefix(alphabet(), unpack_block(c / prefix_div, m, alphabet().size));
                long double s = 0.0L;
                for (int j = 0; j < m; ++j) {
                    std::size_t win =
                        (c / alphabet_power(alphabet().size, total - 1 - (j + r))) % blocklen_count;
                    s += phi_.values[win];
                }
                double log_ratio = log_cylinder_measure(prefix) -
                                   (-pressure_ * m + static_cast<double>(s));
                double ratio = std::exp(log_ratio);
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
            rep.min_by_m.push_back(lo);
            rep.max_by_m.push_back(hi);
            rep.min_ratio = std::min(rep.min_ratio, lo);
            rep.max_ratio = std::max(rep.max_ratio, hi);
        }
        return rep;
    }

    friend class PathSampler;

private:
    void check_word(const Word& w) const {
        if (!(w.alphabet == alphabet())) throw invalid_input("word alphabet does not match model");
    }

    void build() {
        int k = alphabet().size;
        states_ = checked_block_count(k, order_, "gibbs model");
        suffix_ = states_ / static_cast<std::size_t>(k);

        // Shift the potential so the largest weight is exactly 1; keeps the
        // iteration safely inside the floating-point range for any input.
        double shift = *std::max_element(lifted_.values.begin(), lifted_.values.end());
        std::vector<double> w(lifted_.values.size());
        for (std::size_t c = 0; c < w.size(); ++c) w[c] = std::exp(lifted_.values[c] - shift);

        // Power iteration stopping on the eigen-residual sup|Lv - lambda v| /
        // lambda itself: the successive-iterate delta underestimates the
        // remaining error badly when the spectral gap is small, and every
        // consumer downstream (kernel rows, stationarity) sees the residual,
        // not the delta.  A rounding floor slightly above the target
        // tolerance is accepted; anything worse than 1e-10 is an error.
        std::vector<double> h(states_, 1.0 / static_cast<double>(states_));
        std::vector<double> next(states_);
        double lambda = 0.0;
        std::size_t iters = 0;
        double res = std::numeric_limits<double>::infinity();
        while (iters < kMaxIterations) {
            double total = 0.0;
            for (std::size_t s = 0; s < states_; ++s) {
                double acc = 0.0;
                for (Symbol b = 0; b < k; ++b)
                    acc += w[s * static_cast<std::size_t>(k) + static_cast<std::size_t>(b)] *
                           h[advance(s, b)];
                next[s] = acc;
                total += acc;
            }
            lambda = total; // since h is L1-normalized
            res = 0.0;
            for (std::size_t s = 0; s < states_; ++s)
                res = std::max(res, std::abs(next[s] - total * h[s]));
            res /= total;
            for (std::size_t s = 0; s < states_; ++s) next[s] /= total;
            h.swap(next);
            ++iters;
            if (res <= kEigenTol) break;
        }
        if (res > 1e-10)
            throw numerical_error("power iteration (right) did not converge: " +
                                  std::to_string(iters) + " iterations, residual " +
                                  std::to_string(res));

        // Left eigenvector by the transposed iteration.
        std::vector<double> nu(states_, 1.0 / static_cast<double>(states_));
        double left_res = std::numeric_limits<double>::infinity();
        while (iters < 2 * kMaxIterations) {
            std::fill(next.begin(), next.end(), 0.0);
            for (std::size_t s = 0; s < states_; ++s)
                for (Symbol b = 0; b < k; ++b)
                    next[advance(s, b)] +=
                        w[s * static_cast<std::size_t>(k) + static_cast<std::size_t>(b)] * nu[s];
            double total = 0.0;
            for (std::size_t s = 0; s < states_; ++s) total += next[s];
            left_res = 0.0;
            for (std::size_t s = 0; s < states_; ++s)
                left_res = std::max(left_res, std::abs(next[s] - total * nu[s]));
            left_res /= total;
            for (std::size_t s = 0; s < states_; ++s) next[s] /= total;
            nu.swap(next);
            ++iters;
            if (left_res <= kEigenTol) break;
        }
        if (left_res > 1e-10)
            throw numerical_error("power iteration (left) did not converge: " +
                                  std::to_string(iters) + " iterations, residual " +
                                  std::to_string(left_res));
        double delta = std::max(res, left_res);

        pressure_ = std::log(lambda) + shift;
        diag_.iterations = iters;
        diag_.last_delta = delta;

        double residual = 0.0;
        for (std::size_t s = 0; s < states_; ++s) {
            double acc = 0.0;
            for (Symbol b = 0; b < k; ++b)
                acc += w[s * static_cast<std::size_t>(k) + static_cast<std::size_t>(b)] *
                       h[advance(s, b)];
            residual = std::max(residual, std::abs(acc - lambda * h[s]));
        }
        diag_.residual = residual / lambda;

        // Kernel rows p(s -> .) come out summing to 1 up to the eigen
        // residual; validate, then renormalize exactly so long sample paths
        // and cylinder products carry no systematic drift.
        kernel_.assign(states_ * static_cast<std::size_t>(k), 0.0);
        for (std::size_t s = 0; s < states_; ++s) {
            double row = 0.0;
            for (Symbol b = 0; b < k; ++b) {
                double p = w[s * static_cast<std::size_t>(k) + static_cast<std::size_t>(b)] *
                           h[advance(s, b)] / (lambda * h[s]);
                kernel_[s * static_cast<std::size_t>(k) + static_cast<std::size_t>(b)] = p;
                row += p;
            }
            if (std::abs(row - 1.0) > 1e-10)
                throw numerical_error("kernel row " + std::to_string(s) + " sums to " +
                                      std::to_string(row) + "; eigendata inconsistent");
            for (Symbol b = 0; b < k; ++b)
                kernel_[s * static_cast<std::size_t>(k) + static_cast<std::size_t>(b)] /= row;
        }

        step_.resize(states_ * static_cast<std::size_t>(k));
        for (std::size_t s = 0; s < states_; ++s)
            for (Symbol b = 0; b < k; ++b)
                step_[s * static_cast<std::size_t>(k) + static_cast<std::size_t>(b)] =
                    static_cast<std::uint32_t>(advance(s, b));

        // Sampler fast path: per-row cumulative cutoffs scaled to the 32-bit
        // uniform the sampler steps on, so a step is one compare instead of a
        // normalize-multiply-accumulate chain.  The final cutoff is +inf so
        // floating-point slack lands on the last symbol.
        cum_.resize(kernel_.size());
        for (std::size_t s = 0; s < states_; ++s) {
            std::size_t base = s * static_cast<std::size_t>(k);
            double rowtot = 0.0;
            for (Symbol b = 0; b < k; ++b) rowtot += kernel_[base + static_cast<std::size_t>(b)];
            double acc = 0.0;
            for (Symbol b = 0; b + 1 < k; ++b) {
                acc += kernel_[base + static_cast<std::size_t>(b)];
                cum_[base + static_cast<std::size_t>(b)] = acc / rowtot * 0x1.0p32;
            }
            cum_[base + static_cast<std::size_t>(k) - 1] = std::numeric_limits<double>::infinity();
        }

        pi_.assign(states_, 0.0);
        double total = 0.0;
        for (std::size_t s = 0; s < states_; ++s) {
            pi_[s] = nu[s] * h[s];
            total += pi_[s];
        }
        for (std::size_t s = 0; s < states_; ++s) pi_[s] /= total;
        // Stationarity check: (pi P)(s') = pi(s') within 1e-10.
        std::vector<double> flow(states_, 0.0);
        for (std::size_t s = 0; s < states_; ++s)
            for (Symbol b = 0; b < k; ++b) flow[advance(s, b)] += pi_[s] * kernel(s, b);
        for (std::size_t s = 0; s < states_; ++s)
            if (std::abs(flow[s] - pi_[s]) > 1e-10)
                throw numerical_error("stationary law fails invariance at state " + std::to_string(s));

        // Entropy of the chain, cross-checked against h = P - int phi dmu.
        long double hacc = 0.0L;
        for (std::size_t s = 0; s < states_; ++s) {
            long double row = 0.0L;
            for (Symbol b = 0; b < k; ++b) {
                double p = kernel(s, b);
                if (p > 0.0) row += static_cast<long double>(p) * std::log(static_cast<long double>(p));
            }
            hacc += static_cast<long double>(pi_[s]) * row;
        }
        entropy_ = static_cast<double>(-hacc);
        double variational = pressure_ - potential_integral();
        if (std::abs(entropy_ - variational) > 1e-9)
            throw numerical_error("entropy/pressure identity violated: kernel entropy " +
                                  std::to_string(entropy_) + " vs P - int phi = " +
                                  std::to_string(variational));
    }

    Potential phi_;
    int order_;
    Potential lifted_;
    std::size_t states_ = 0;
    std::size_t suffix_ = 0;
    double pressure_ = 0.0;
    double entropy_ = 0.0;
    std::vector<double> pi_;
    std::vector<double> kernel_; // row-major [state][symbol]
    std::vector<std::uint32_t> step_; // advance(s, b), flattened; keeps the
                                      // sampler's inner loop free of divisions
    std::vector<double> cum_;    // scaled cumulative kernel rows, see build()
    EigenDiagnostics diag_;
};

// Streaming sampler: emits the symbols of an initial state drawn from pi,
// then transitions from the kernel.  A fixed seed pins the whole stream;
// sample_path(n, seed) is by construction a prefix of the same stream.
class PathSampler {
public:
    PathSampler(const GibbsModel& model, std::uint64_t seed)
        : cum_(model.cum_.data()), step_(model.step_.data()),
          k_(static_cast<std::size_t>(model.alphabet().size)), rng_(seed) {
        state_ = rng_.discrete(model.pi_);
        pending_ = unpack_block(state_, model.order(), model.alphabet().size);
    }

    Symbol next() {
        if (emitted_ < pending_.size()) return pending_[emitted_++];
        std::size_t base = state_ * k_;
        double u = static_cast<double>(draw32());
        std::size_t b = 0;
        while (u >= cum_[base + b]) ++b; // last cutoff is +inf
        state_ = step_[base + b];
        return static_cast<Symbol>(b);
    }

private:
    // One engine output feeds two steps: transition rows are compared at
    // 32-bit resolution (2^-32 per probability), far below anything the
    // estimators downstream can resolve, and half the engine cost.
    std::uint32_t draw32() {
        if (half_) {
            half_ = false;
            return static_cast<std::uint32_t>(buf_);
        }
        buf_ = rng_.raw();
        half_ = true;
        return static_cast<std::uint32_t>(buf_ >> 32);
    }

    const double* cum_;          // borrowed from the model; sampler must not outlive it
    const std::uint32_t* step_;
    std::size_t k_;
    Rng rng_;
    std::size_t state_;
    std::uint64_t buf_ = 0;
    bool half_ = false;
    std::vector<Symbol> pending_;
    std::size_t emitted_ = 0;
};

inline SymbolSequence sample_path(const GibbsModel& model, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw invalid_input("sample_path: length must be >= 1");
    PathSampler ps(model, seed);
    std::vector<Symbol> out;
    out.reserve(n);
    for (std::size_t j = 0; j < n; ++j) out.push_back(ps.next());
    return SymbolSequence(model.alphabet(), std::move(out));
}

} // namespace gibbslab
