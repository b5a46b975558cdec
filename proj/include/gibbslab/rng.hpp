#pragma once

// Deterministic randomness.  All sampling in the library goes through these
// helpers so that a seed pins down every byte of output across platforms:
// mt19937_64 has a standardized stream, and uniforms are built from its raw
// 64-bit output instead of std::uniform_real_distribution (whose mapping is
// implementation-defined).

#include <cstdint>
#include <random>
#include <vector>

#include "gibbslab/errors.hpp"

namespace gibbslab {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    std::uint64_t raw() { return gen_(); }

    // Inverse-CDF draw from an unnormalized weight vector.  Mass beyond the
    // accumulated total (floating-point slack) falls on the last index.
    std::size_t discrete(const double* weights, std::size_t count) {
        if (count == 0) throw invalid_input("discrete draw from empty weights");
        double total = 0.0;
        for (std::size_t i = 0; i < count; ++i) total += weights[i];
        if (!(total > 0.0)) throw invalid_input("discrete draw from nonpositive weights");
        double u = uniform() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < count; ++i) {
            acc += weights[i];
            if (u < acc) return i;
        }
        return count - 1;
    }

    std::size_t discrete(const std::vector<double>& weights) {
        return discrete(weights.data(), weights.size());
    }

private:
    std::mt19937_64 gen_;
};

// Seed for replica i at grid point g when a batch of replicas is run from one
// base seed.  Kept in one place so every caller derives the same streams.
inline std::uint64_t replica_seed(std::uint64_t base, std::size_t grid_index, std::size_t replica,
                                  std::size_t replicas_per_point) {
    return base + static_cast<std::uint64_t>(grid_index) * replicas_per_point +
           static_cast<std::uint64_t>(replica);
}

} // namespace gibbslab
