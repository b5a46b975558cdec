#pragma once

// Empirical check of the exponential law for hitting times of a fixed word:
// tau * mu([w]) is approximately Exp(lambda) with lambda in a window around 1
// independent of the word.  We estimate lambda from the mean, measure the
// Kolmogorov-Smirnov distance of the rescaled sample to Exp(1), and bracket
// -log S(v) / (v mu([w])) over small v as a direct rate probe.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "gibbslab/errors.hpp"
#include "gibbslab/gibbs_model.hpp"
#include "gibbslab/hitting.hpp"
#include "gibbslab/rng.hpp"
#include "gibbslab/shift_space.hpp"

namespace gibbslab {

struct ExpLawReport {
    int word_length = 0;
    double mu_word = 0.0;          // exact cylinder mass of the word
    int replicas = 0;
    int saturated = 0;
    double lambda_hat = 0.0;       // 1 / mean(tau * mu)
    double sup_distance = 0.0;     // KS distance of lambda_hat * tau * mu to Exp(1)
    double rate_low = 0.0;         // bracket of -log S(v) / (v mu) over probe points
    double rate_high = 0.0;
    std::vector<double> batch_lambda; // lambda_hat per disjoint batch (stability probe)
};

// R independent streams with seeds base_seed, base_seed+1, ...; horizon 0
// means the automatic ~100 expected interarrival times.
inline ExpLawReport exp_law_report(const GibbsModel& model, const Word& word, int replicas,
                                   std::uint64_t base_seed, std::uint64_t horizon = 0,
                                   int batches = 4) {
    if (replicas < 1000) throw invalid_input("exp_law_report: need at least 1000 replicas");
    if (batches < 2 || replicas % batches != 0)
        throw invalid_input("exp_law_report: batches must divide replicas");
    double mu = model.cylinder_measure(word);
    if (horizon == 0) {
        double v = std::ceil(100.0 / mu);
        horizon = v >= static_cast<double>(kHorizonCap) ? kHorizonCap
                                                        : static_cast<std::uint64_t>(v);
    }

    ExpLawReport rep;
    rep.word_length = word.length();
    rep.mu_word = mu;
    rep.replicas = replicas;

    std::vector<double> u; // tau * mu, the rescaled hitting times
    u.reserve(static_cast<std::size_t>(replicas));
    std::vector<double> raw_tau;
    raw_tau.reserve(static_cast<std::size_t>(replicas));
    int per_batch = replicas / batches;
    std::vector<long double> batch_sum(static_cast<std::size_t>(batches), 0.0L);
    std::vector<int> batch_cnt(static_cast<std::size_t>(batches), 0);
    for (int i = 0; i < replicas; ++i) {
        HittingSample s = hitting_time(model, word, base_seed + static_cast<std::uint64_t>(i), horizon);
        if (s.saturated) {
            ++rep.saturated;
            continue;
        }
        double tau = static_cast<double>(s.waiting);
        raw_tau.push_back(tau);
        u.push_back(tau * mu);
        int b = i / per_batch;
        batch_sum[static_cast<std::size_t>(b)] += tau * mu;
        ++batch_cnt[static_cast<std::size_t>(b)];
    }
    if (u.size() < 2) throw numerical_error("exp_law_report: almost all replicas saturated");

    long double total = 0.0L;
    for (double x : u) total += x;
    double mean = static_cast<double>(total / static_cast<long double>(u.size()));
    rep.lambda_hat = 1.0 / mean;
    for (int b = 0; b < batches; ++b) {
        if (batch_cnt[static_cast<std::size_t>(b)] == 0)
            throw numerical_error("exp_law_report: a batch saturated entirely");
        rep.batch_lambda.push_back(static_cast<double>(
            static_cast<long double>(batch_cnt[static_cast<std::size_t>(b)]) /
            batch_sum[static_cast<std::size_t>(b)]));
    }

    // KS distance of z_i = lambda_hat * u_i against 1 - e^{-z}.
    std::vector<double> z = u;
    for (double& x : z) x *= rep.lambda_hat;
    std::sort(z.begin(), z.end());
    double ks = 0.0;
    std::size_t m = z.size();
    for (std::size_t i = 0; i < m; ++i) {
        double cdf = 1.0 - std::exp(-z[i]);
        double lo = static_cast<double>(i) / static_cast<double>(m);
        double hi = static_cast<double>(i + 1) / static_cast<double>(m);
        ks = std::max(ks, std::max(std::abs(cdf - lo), std::abs(cdf - hi)));
    }
    rep.sup_distance = ks;

    // Direct rate probe: -log S(v) / (v mu) at small v (quantiles of tau,
    // restricted to v mu <= 1/2 so we are genuinely in the small-v regime).
    std::sort(raw_tau.begin(), raw_tau.end());
    rep.rate_low = std::numeric_limits<double>::infinity();
    rep.rate_high = -rep.rate_low;
    for (double q : {0.05, 0.1, 0.2, 0.3, 0.4}) {
        double v = raw_tau[static_cast<std::size_t>(q * static_cast<double>(m - 1))];
        if (!(v >= 1.0) || v * mu > 0.5) continue;
        std::size_t above = m - static_cast<std::size_t>(
            std::upper_bound(raw_tau.begin(), raw_tau.end(), v) - raw_tau.begin());
        if (above == 0 || above == m) continue;
        double s_emp = static_cast<double>(above) / static_cast<double>(m);
        double rate = -std::log(s_emp) / (v * mu);
        rep.rate_low = std::min(rep.rate_low, rate);
        rep.rate_high = std::max(rep.rate_high, rate);
    }
    if (!(rep.rate_low <= rep.rate_high))
        throw numerical_error("exp_law_report: no usable probe points for the rate bracket");
    return rep;
}

} // namespace gibbslab
