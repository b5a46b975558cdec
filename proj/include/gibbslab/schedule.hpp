#pragma once

// Block-length schedules k(n) for the plug-in estimators.  Each concentration
// regime pins its own growth rate:
//
//   plugin_rate      k(n) = floor( alpha log n / (2 log |A|) ),  alpha in (0,1)
//   conditional      k(n) = floor( q log n / log |A| ),  q = 1 / (1 + log(1/theta)/log|A|)
//   block_rate       k(n) = floor( log n / log |A| )
//
// all clamped to k >= 1.  The conditional schedule only makes sense when
// theta < 1/|A| (otherwise q >= 1/2 and the bias term swamps the fluctuation
// term); requesting it outside that regime raises hypothesis_violation.

#include <cmath>
#include <cstdint>
#include <string>

#include "gibbslab/errors.hpp"
#include "gibbslab/shift_space.hpp"

namespace gibbslab {

enum class ScheduleKind {
    plugin_rate,  // slow log-law for ^H_k / k
    conditional,  // theta-tuned log-law for ^h_k
    block_rate,   // k ~ log n / log |A|
};

struct ScheduleParams {
    ScheduleKind kind = ScheduleKind::plugin_rate;
    double alpha = 0.5;      // plugin_rate only
    double theta = 0.5;      // conditional only
    int alphabet_size = 2;
};

// Exponents attached to the conditional schedule:
//   q     block-growth rate, k(n) ~ q log n / log |A|
//   gamma bias decay, theta^{k(n)} ~ n^{-gamma}
//   xi    fluctuation exponent, n^xi = n / |A|^{2k(n)} up to logs
struct ConditionalExponents {
    double q;
    double gamma;
    double xi;
};

inline ConditionalExponents conditional_exponents(int alphabet_size, double theta) {
    if (alphabet_size < 2) throw invalid_input("conditional_exponents: alphabet size must be >= 2");
    if (!(theta > 0.0) || !(theta * alphabet_size < 1.0))
        throw hypothesis_violation("conditional schedule requires theta < 1/|A|, got theta = " +
                                   std::to_string(theta) + ", |A| = " + std::to_string(alphabet_size));
    double logA = std::log(static_cast<double>(alphabet_size));
    double logT = std::log(1.0 / theta);
    ConditionalExponents e{};
    e.q = 1.0 / (1.0 + logT / logA);
    e.gamma = 1.0 / (1.0 + logA / logT);
    e.xi = 1.0 - 2.0 * e.q;
    return e;
}

inline int schedule_k(std::uint64_t n, const ScheduleParams& p) {
    if (n < 2) throw invalid_input("schedule_k: n must be >= 2");
    if (p.alphabet_size < 2) throw invalid_input("schedule_k: alphabet size must be >= 2");
    double logA = std::log(static_cast<double>(p.alphabet_size));
    double logn = std::log(static_cast<double>(n));
    double raw = 0.0;
    switch (p.kind) {
    case ScheduleKind::plugin_rate:
        if (!(p.alpha > 0.0 && p.alpha < 1.0))
            throw invalid_input("plugin_rate schedule needs alpha in (0,1), got " +
                                std::to_string(p.alpha));
        raw = p.alpha * logn / (2.0 * logA);
        break;
    case ScheduleKind::conditional:
        raw = conditional_exponents(p.alphabet_size, p.theta).q * logn / logA;
        break;
    case ScheduleKind::block_rate:
        raw = logn / logA;
        break;
    }
    // Nudge before flooring so that exact integer targets (n a power of |A|)
    // do not land one below due to rounding.
    int k = static_cast<int>(std::floor(raw + 1e-9));
    return k < 1 ? 1 : k;
}

inline std::string schedule_kind_name(ScheduleKind kind) {
    switch (kind) {
    case ScheduleKind::plugin_rate: return "plugin-rate";
    case ScheduleKind::conditional: return "conditional";
    case ScheduleKind::block_rate: return "block-rate";
    }
    return "?";
}

inline ScheduleKind schedule_kind_from_name(const std::string& name) {
    if (name == "plugin-rate") return ScheduleKind::plugin_rate;
    if (name == "conditional") return ScheduleKind::conditional;
    if (name == "block-rate") return ScheduleKind::block_rate;
    throw invalid_input("unknown schedule kind '" + name + "'");
}

} // namespace gibbslab
