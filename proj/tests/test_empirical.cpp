#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <gibbslab/empirical.hpp>
#include <gibbslab/gibbs_model.hpp>
#include <gibbslab/potential.hpp>
#include <gibbslab/rng.hpp>

using namespace gibbslab;
using Catch::Approx;

namespace {

SymbolSequence bits(std::initializer_list<Symbol> s) { return SymbolSequence(Alphabet(2), s); }

Potential two_state_chain() {
    return markov_log_potential({{0.9, 0.1}, {0.2, 0.8}});
}

} // namespace

TEST_CASE("empirical distributions count periodic windows") {
    auto d = empirical_distribution(bits({0, 1, 0, 1}), 2);
    REQUIRE(d.n == 4);
    REQUIRE(d.counts == std::vector<std::uint64_t>{0, 2, 2, 0});
    REQUIRE(d.freq(1) == Approx(0.5));

    auto d3 = empirical_distribution(bits({0, 0, 0, 0}), 3);
    REQUIRE(d3.counts[0] == 4);
    REQUIRE(block_entropy(d3) == 0.0);

    // Window k = n is the full periodic orbit of x itself.
    auto dn = empirical_distribution(bits({0, 1, 1}), 3);
    REQUIRE(dn.counts[3] == 1); // 011
    REQUIRE(dn.counts[6] == 1); // 110
    REQUIRE(dn.counts[5] == 1); // 101

    REQUIRE_THROWS_AS(empirical_distribution(bits({0, 1}), 0), invalid_input);
    REQUIRE_THROWS_AS(empirical_distribution(bits({0, 1}), 3), invalid_input);
    REQUIRE_THROWS_AS(empirical_distribution(bits({0, 1}), 30), invalid_input); // table budget
}

TEST_CASE("plug-in entropies on hand examples") {
    auto x = bits({0, 1, 1, 0});
    REQUIRE(plugin_entropy(x, 1) == Approx(std::log(2.0)).margin(1e-14));
    REQUIRE(plugin_entropy(x, 2) == Approx(std::log(4.0)).margin(1e-14));
    REQUIRE(conditional_plugin_entropy(x, 2) == Approx(std::log(2.0)).margin(1e-13));
    REQUIRE(plugin_rate(x, 2) == Approx(std::log(2.0)).margin(1e-13));
    REQUIRE_THROWS_AS(conditional_plugin_entropy(x, 0), invalid_input);
}

TEST_CASE("periodic extension makes both marginalizations exact") {
    // Exhaustive over all binary samples with n <= 8 and every k <= min(n, 4):
    // dropping the last or the first coordinate of the k-block empirical
    // distribution gives the (k-1)-block one, as integer counts.
    for (int n = 2; n <= 8; ++n) {
        std::size_t count = alphabet_power(2, n);
        for (std::size_t c = 0; c < count; ++c) {
            SymbolSequence x(Alphabet(2), unpack_block(c, n, 2));
            for (int k = 2; k <= std::min(n, 4); ++k) {
                auto dk = empirical_distribution(x, k);
                auto dk1 = empirical_distribution(x, k - 1);
                std::uint64_t mass = 0;
                for (auto v : dk.counts) mass += v;
                REQUIRE(mass == static_cast<std::uint64_t>(n));
                REQUIRE(marginalize_last(dk).counts == dk1.counts);
                REQUIRE(marginalize_first(dk).counts == dk1.counts);
            }
        }
    }
}

TEST_CASE("conditional plug-in entropy is nonnegative and nonincreasing") {
    GibbsModel chain(two_state_chain());
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto x = sample_path(chain, 64, seed);
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 1; k <= 6; ++k) {
            double hk = conditional_plugin_entropy(x, k);
            REQUIRE(hk >= -1e-13);
            REQUIRE(hk <= prev + 1e-12);
            prev = hk;
            double rate = plugin_rate(x, k);
            REQUIRE(rate >= -1e-13);
            REQUIRE(rate <= std::log(2.0) + 1e-12);
        }
    }
}

TEST_CASE("relative block entropy against the model") {
    GibbsModel uniform(uniform_potential(2));
    auto balanced = bits({0, 0, 1, 1});
    REQUIRE(relative_block_entropy(empirical_distribution(balanced, 1), uniform) ==
            Approx(0.0).margin(1e-13));
    // The four 2-windows of 0011~ are 00,01,11,10: again exactly uniform.
    REQUIRE(relative_block_entropy(empirical_distribution(balanced, 2), uniform) ==
            Approx(0.0).margin(1e-13));

    // Point mass on the 2-block 11 has divergence log(1 / mu([11])) = log 4.
    auto ones = bits({1, 1, 1, 1});
    REQUIRE(relative_block_entropy(empirical_distribution(ones, 2), uniform) ==
            Approx(std::log(4.0)).margin(1e-12));

    // Against a non-uniform model, agree with the direct support sum.
    GibbsModel chain(two_state_chain());
    auto x = sample_path(chain, 200, 9);
    auto d = empirical_distribution(x, 3);
    long double direct = 0.0L;
    for (std::size_t c = 0; c < d.counts.size(); ++c) {
        if (d.counts[c] == 0) continue;
        Word w(Alphabet(2), unpack_block(c, 3, 2));
        direct += static_cast<long double>(d.freq(c)) *
                  (std::log(static_cast<long double>(d.freq(c))) -
                   static_cast<long double>(chain.log_cylinder_measure(w)));
    }
    REQUIRE(relative_block_entropy(d, chain) ==
            Approx(static_cast<double>(direct)).margin(1e-12));
    REQUIRE(relative_block_entropy(d, chain) >= 0.0);
}

TEST_CASE("phi_k values from exact cylinder measures") {
    GibbsModel uniform(uniform_potential(2));
    for (std::size_t c = 0; c < 16; ++c) {
        Word w(Alphabet(2), unpack_block(c, 4, 2));
        REQUIRE(phi_k_value(uniform, w) == Approx(-std::log(2.0)).margin(1e-12));
    }

    GibbsModel chain(two_state_chain());
    auto phi2 = [&](Symbol a, Symbol b) {
        return phi_k_value(chain, Word(Alphabet(2), {a, b}));
    };
    // log mu([ab]) - log mu([b]) = log of the time-reversed transition law.
    REQUIRE(phi2(0, 0) == Approx(std::log(0.9)).margin(1e-10));
    REQUIRE(phi2(0, 1) == Approx(std::log(0.2)).margin(1e-10));
    REQUIRE(phi2(1, 0) == Approx(std::log(0.1)).margin(1e-10));
    REQUIRE(phi2(1, 1) == Approx(std::log(0.8)).margin(1e-10));

    REQUIRE_THROWS_AS(phi_k_value(chain, Word(Alphabet(2), {0})), invalid_input);
}

TEST_CASE("delta_hat: hand case and internal dual agreement") {
    GibbsModel uniform(uniform_potential(2));
    // 0011 is exactly typical for the uniform measure at k = 1 and 2, so both
    // relative entropies vanish and so does their difference.
    REQUIRE(delta_hat(bits({0, 0, 1, 1}), 2, uniform) == Approx(0.0).margin(1e-12));
    REQUIRE_THROWS_AS(delta_hat(bits({0, 0, 1, 1}), 1, uniform), invalid_input);

    // The dual route ^h_k + sum E_k phi_k is asserted inside delta_hat; these
    // calls fail with internal_error if the rearrangement ever drifts.
    GibbsModel chain(two_state_chain());
    for (std::uint64_t seed = 11; seed <= 14; ++seed) {
        auto x = sample_path(chain, 1000, seed);
        for (int k = 2; k <= 6; ++k) {
            double dk = delta_hat(x, k, chain);
            REQUIRE(std::isfinite(dk));
        }
    }
}

TEST_CASE("decomposition residual vanishes beyond the potential range") {
    GibbsModel chain(two_state_chain());
    for (std::uint64_t seed = 21; seed <= 24; ++seed) {
        auto x = sample_path(chain, 500, seed);
        for (int k = 2; k <= 6; ++k)
            REQUIRE(std::abs(decomposition_residual(x, k, chain)) < 1e-12);
    }

    // Range-2 potential: the residual at k = 2 is controlled by the variation
    // of the normalized potential on 2-symbol agreement, and dies at k >= 3.
    Rng rng(501);
    Potential phi = random_potential(Alphabet(2), 2, rng);
    GibbsModel model(phi);
    Potential cond = model.conditional_potential();
    for (std::uint64_t seed = 31; seed <= 33; ++seed) {
        auto x = sample_path(model, 400, seed);
        REQUIRE(std::abs(decomposition_residual(x, 2, model)) <=
                var_m(cond, 1) + 1e-12);
        for (int k = 3; k <= 6; ++k)
            REQUIRE(std::abs(decomposition_residual(x, k, model)) < 1e-12);
    }
}

TEST_CASE("phi_k converges to the normalized potential") {
    GibbsModel chain(two_state_chain());
    auto table = phi_k_deviation_table(chain, 2, 12);
    REQUIRE(table.size() == 11);
    // Order-1 model: phi_k is already exact for every k >= 2.
    for (double dev : table) REQUIRE(dev < 1e-11);

    Rng rng(502);
    Potential phi = random_potential(Alphabet(2), 2, rng);
    GibbsModel model(phi);
    Potential cond = model.conditional_potential();
    auto dev = phi_k_deviation_table(model, 2, 8);
    double theta = phi.metric.theta;
    double lip = lipschitz_seminorm(cond, phi.metric);
    for (std::size_t i = 0; i < dev.size(); ++i) {
        int k = 2 + static_cast<int>(i);
        REQUIRE(dev[i] <= lip * std::pow(theta, k - 1) + 1e-12);
    }
    // Exact zero as soon as k exceeds the range.
    REQUIRE(dev[0] <= var_m(cond, 1) + 1e-12);
    for (std::size_t i = 1; i < dev.size(); ++i) REQUIRE(dev[i] < 1e-11);

    REQUIRE_THROWS_AS(phi_k_deviation_table(chain, 1, 4), invalid_input);
    REQUIRE_THROWS_AS(phi_k_deviation_table(chain, 4, 3), invalid_input);
}
