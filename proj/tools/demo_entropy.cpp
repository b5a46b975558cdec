// A small end-to-end tour: solve a two-state chain exactly, then watch the
// two samplable estimators close in on the exact entropy rate.
#include <cmath>
#include <cstdio>

#include "gibbslab/gibbslab.hpp"

using namespace gibbslab;

int main() {
    Potential phi = markov_log_potential({{0.9, 0.1}, {0.2, 0.8}}, MetricParams(0.25));
    GibbsModel model(phi);
    std::printf("two-state chain: pressure %.3e, entropy %.15f\n", model.pressure(),
                model.exact_entropy());

    std::printf("\nconditional plug-in on one sample of length 2^20:\n");
    SymbolSequence x = sample_path(model, 1u << 20, 7);
    for (int k = 1; k <= 8; ++k)
        std::printf("  k=%d  h_hat=%.6f  |err|=%.6f\n", k, conditional_plugin_entropy(x, k),
                    std::abs(conditional_plugin_entropy(x, k) - model.exact_entropy()));

    std::printf("\nhitting-time estimates, pattern length 20:\n");
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SymbolSequence p = sample_path(model, 20, 2 * seed);
        Word pattern(p.alphabet, p.symbols);
        HittingSample w =
            hitting_time(model, pattern, 2 * seed + 1, default_horizon(model.exact_entropy(), 20));
        if (w.saturated) {
            std::printf("  seed=%llu  saturated at horizon\n", (unsigned long long)seed);
            continue;
        }
        double rate = hitting_rate(w, 20);
        std::printf("  seed=%llu  W=%10llu  (1/n)log W=%.6f  |err|=%.6f\n",
                    (unsigned long long)seed, (unsigned long long)w.waiting, rate,
                    std::abs(rate - model.exact_entropy()));
    }
    return 0;
}
