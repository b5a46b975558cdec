#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <gibbslab/hitting.hpp>
#include <gibbslab/potential.hpp>
#include <gibbslab/rng.hpp>
#include <gibbslab/schedule.hpp>

using namespace gibbslab;
using Catch::Approx;

TEST_CASE("schedule block lengths at reference points") {
    ScheduleParams plug{ScheduleKind::plugin_rate, 0.5, 0.5, 2};
    REQUIRE(schedule_k(1u << 20, plug) == 5); // 0.5 * 20 log 2 / (2 log 2)
    REQUIRE(schedule_k(2, plug) == 1);        // clamped up to 1

    ScheduleParams cond{ScheduleKind::conditional, 0.5, 0.25, 2};
    REQUIRE(schedule_k(1u << 30, cond) == 10); // q = 1/3, 30 / 3
    REQUIRE(schedule_k(1u << 12, cond) == 4);
    REQUIRE(schedule_k(2, cond) == 1);

    ScheduleParams block{ScheduleKind::block_rate, 0.5, 0.5, 2};
    REQUIRE(schedule_k(1024, block) == 10);
    REQUIRE(schedule_k(1023, block) == 9);
    REQUIRE(schedule_k(3, block) == 1);

    REQUIRE_THROWS_AS(schedule_k(1, plug), invalid_input);
    ScheduleParams bad_alpha{ScheduleKind::plugin_rate, 1.0, 0.5, 2};
    REQUIRE_THROWS_AS(schedule_k(1024, bad_alpha), invalid_input);
}

TEST_CASE("conditional schedule exponents and its hypothesis") {
    auto e = conditional_exponents(2, 0.25);
    REQUIRE(e.q == Approx(1.0 / 3.0).margin(1e-15));
    REQUIRE(e.gamma == Approx(2.0 / 3.0).margin(1e-15));
    REQUIRE(e.xi == Approx(1.0 / 3.0).margin(1e-15));

    // The two exponents always split 1 between them, and xi stays positive
    // whenever the hypothesis theta < 1/|A| holds.
    for (double theta : {0.05, 0.2, 0.4}) {
        auto ex = conditional_exponents(2, theta);
        REQUIRE(ex.q + ex.gamma == Approx(1.0).margin(1e-14));
        REQUIRE(ex.xi > 0.0);
        REQUIRE(ex.xi == Approx(1.0 - 2.0 * ex.q).margin(1e-15));
    }

    // theta must beat 1/|A|.
    REQUIRE_THROWS_AS(conditional_exponents(2, 0.5), hypothesis_violation);
    REQUIRE_THROWS_AS(conditional_exponents(2, 0.7), hypothesis_violation);
    REQUIRE_THROWS_AS(conditional_exponents(3, 0.4), hypothesis_violation);
    ScheduleParams cond{ScheduleKind::conditional, 0.5, 0.5, 2};
    REQUIRE_THROWS_AS(schedule_k(1024, cond), hypothesis_violation);
}

TEST_CASE("schedule kind names round trip") {
    for (auto kind : {ScheduleKind::plugin_rate, ScheduleKind::conditional, ScheduleKind::block_rate})
        REQUIRE(schedule_kind_from_name(schedule_kind_name(kind)) == kind);
    REQUIRE_THROWS_AS(schedule_kind_from_name("bogus"), invalid_input);
}

TEST_CASE("KMP failure function") {
    REQUIRE(failure_function({0, 1, 0, 1}) == std::vector<int>{0, 0, 1, 2});
    REQUIRE(failure_function({0, 0, 0, 0}) == std::vector<int>{0, 1, 2, 3});
    REQUIRE(failure_function({0, 0, 1, 0, 0}) == std::vector<int>{0, 1, 0, 1, 2});
    REQUIRE(failure_function({1}) == std::vector<int>{0});
}

TEST_CASE("hitting time agrees with a direct scan of the same stream") {
    GibbsModel uniform(uniform_potential(2));
    GibbsModel chain(markov_log_potential({{0.9, 0.1}, {0.2, 0.8}}));
    Rng pick(881);

    for (int trial = 0; trial < 60; ++trial) {
        const GibbsModel& model = (trial % 2 == 0) ? uniform : chain;
        int m = 1 + static_cast<int>(pick.raw() % 6);
        std::vector<Symbol> pat(static_cast<std::size_t>(m));
        for (Symbol& s : pat) s = static_cast<Symbol>(pick.raw() % 2);
        Word pattern(Alphabet(2), pat);
        std::uint64_t seed = 10000 + static_cast<std::uint64_t>(trial);

        std::uint64_t horizon = 400;
        std::size_t need = static_cast<std::size_t>(horizon) + static_cast<std::size_t>(m);
        auto y = sample_path(model, need, seed); // same stream the matcher sees

        std::uint64_t naive = 0;
        for (std::uint64_t j = 1; j <= horizon; ++j) {
            bool hit = true;
            for (int i = 0; i < m; ++i)
                if (y.symbols[static_cast<std::size_t>(j) + static_cast<std::size_t>(i)] !=
                    pat[static_cast<std::size_t>(i)]) {
                    hit = false;
                    break;
                }
            if (hit) {
                naive = j;
                break;
            }
        }

        auto s = hitting_time(model, pattern, seed, horizon);
        if (naive == 0) {
            REQUIRE(s.saturated);
            REQUIRE(s.waiting == 0);
        } else {
            REQUIRE_FALSE(s.saturated);
            REQUIRE(s.waiting == naive);
        }
    }
}

TEST_CASE("position zero does not count as an occurrence") {
    GibbsModel uniform(uniform_potential(2));
    Word pattern(Alphabet(2), {0, 0});
    // Find a stream that continues 0,0 right after the excluded origin; the
    // waiting time there is exactly 1.
    bool found = false;
    for (std::uint64_t seed = 1; seed <= 400 && !found; ++seed) {
        auto y = sample_path(uniform, 3, seed);
        if (y.symbols[1] == 0 && y.symbols[2] == 0) {
            auto s = hitting_time(uniform, pattern, seed, 100);
            REQUIRE_FALSE(s.saturated);
            REQUIRE(s.waiting == 1);
            found = true;
        }
    }
    REQUIRE(found);
}

TEST_CASE("hitting rate and saturation handling") {
    GibbsModel uniform(uniform_potential(2));
    HittingSample s{128, false, 1000};
    REQUIRE(hitting_rate(s, 7) == Approx(std::log(128.0) / 7.0));
    HittingSample one{1, false, 1000};
    REQUIRE(hitting_rate(one, 5) == 0.0);
    HittingSample sat{0, true, 1000};
    REQUIRE_THROWS_AS(hitting_rate(sat, 5), invalid_input);
    REQUIRE_THROWS_AS(hitting_rate(one, 0), invalid_input);

    Word pattern(Alphabet(2), {0, 1, 0, 1, 0, 1, 0, 1});
    auto tiny = hitting_time(uniform, pattern, 3, 1);
    // With horizon 1 only start j = 1 is allowed; nearly every stream saturates.
    if (tiny.saturated) REQUIRE(tiny.waiting == 0);

    REQUIRE_THROWS_AS(hitting_time(uniform, pattern, 3, 0), invalid_input);
    REQUIRE_THROWS_AS(hitting_time(uniform, pattern, 3, kHorizonCap + 1), invalid_input);
    REQUIRE_THROWS_AS(hitting_time(uniform, Word(Alphabet(3), {0}), 3, 10), invalid_input);
}

TEST_CASE("default horizon heuristic") {
    REQUIRE(default_horizon(0.0, 1) == 21);    // ceil(e^3)
    REQUIRE(default_horizon(0.5, 2) == 1097);  // ceil(e^7)
    REQUIRE(default_horizon(0.38, 20) == kHorizonCap);
    REQUIRE(default_horizon(std::log(2.0), 24) == kHorizonCap);
    REQUIRE_THROWS_AS(default_horizon(0.5, 0), invalid_input);
}
