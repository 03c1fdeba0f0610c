// Copyright 2026 The qabench Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.


#include <catch_amalgamated.hpp>

#include <cmath>

#include "qabench/annealing.hpp"
#include "support.hpp"

using namespace qabench;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("metropolis criterion", "[sa]") {
    for (double u : {0.0, 0.5, 0.999999}) {
        CHECK(metropolis_accept(0.0, 1.0, u));
        CHECK(metropolis_accept(-3.0, 100.0, u));
    }
    CHECK(metropolis_accept(1.0, 1.0, 0.36));
    CHECK_FALSE(metropolis_accept(1.0, 1.0, 0.37));
}

TEST_CASE("uphill acceptance rate of a sweep matches exp(-beta dE)", "[sa][statistics]") {
    // Flipping +1 -> -1 against h = -0.5 costs dE = 1.
    const IsingModel single(1, {}, {{0, -0.5}});
    for (double beta : {0.3, 1.0, 2.5}) {
        Rng rng(derive_seed(11, static_cast<std::uint64_t>(beta * 10)));
        SpinState state(single, testing::config_of({1}));
        const int trials = 100000;
        int accepted = 0;
        for (int t = 0; t < trials; ++t) {
            state.reset(testing::config_of({1}));
            metropolis_sweep(state, beta, rng);
            accepted += state.config()[0] == -1;
        }
        const double p = std::exp(-beta);
        const double sd = std::sqrt(trials * p * (1 - p));
        INFO("beta " << beta << " accepted " << accepted);
        CHECK(std::abs(accepted - trials * p) <= 3 * sd);
    }
}

TEST_CASE("beta range and ladder", "[sa]") {
    const IsingModel pair(2, {{0, 1, -1.0}}, {});
    const auto r = default_beta_range(pair);
    CHECK_THAT(r.hot, WithinRel(std::log(2.0) / 2.0, 1e-12));
    CHECK_THAT(r.cold, WithinRel(std::log(1e6) / 2.0, 1e-12));

    // smallest nonzero coefficient sets the cold end, largest stiffness the hot end
    const IsingModel mixed(3, {{0, 1, 0.2}, {1, 2, -1.0}}, {{1, 0.5}});
    const auto m = default_beta_range(mixed);
    CHECK_THAT(m.hot, WithinRel(std::log(2.0) / (2.0 * 1.7), 1e-12));
    CHECK_THAT(m.cold, WithinRel(std::log(1e6) / 0.4, 1e-12));

    const auto ladder = geometric_ladder(0.1, 8.0, 64);
    REQUIRE(ladder.size() == 64);
    CHECK(ladder.front() == 0.1);
    CHECK(ladder.back() == 8.0);
    for (std::size_t k = 2; k < ladder.size(); ++k)
        CHECK_THAT(ladder[k] / ladder[k - 1], WithinRel(ladder[1] / ladder[0], 1e-9));
    CHECK(geometric_ladder(0.1, 8.0, 1) == std::vector<double>{8.0});
}

TEST_CASE("cold annealing ends in a one-flip-stable state", "[sa]") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto m = testing::random_model(40, 0.15, seed);
        AnnealParams p;
        p.reads = 1;
        p.sweeps = 500;
        p.beta_cold = 1e9;
        const auto trace = simulated_annealing(m, p, seed);
        CHECK(is_one_flip_stable(m, trace.best));
        CHECK(energy(m, trace.best) == trace.best_energy());
    }
}

TEST_CASE("annealing finds small optima and replays", "[sa]") {
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto m = testing::pegasus_subgraph_cbfmp(16, seed);
        AnnealParams p;
        p.reads = 20;
        p.sweeps = 500;
        hits += simulated_annealing(m, p, seed).best_energy() == testing::naive_minimum(m);
    }
    CHECK(hits >= 9);

    const auto m = testing::random_model(30, 0.2, 3);
    AnnealParams p;
    p.reads = 5;
    p.sweeps = 100;
    const auto a = simulated_annealing(m, p, 42), b = simulated_annealing(m, p, 42);
    CHECK(a.best == b.best);
    CHECK(a.events.size() == b.events.size());
}

TEST_CASE("annealing parameters are validated", "[sa]") {
    const IsingModel pair(2, {{0, 1, -1.0}}, {});
    AnnealParams p;
    p.reads = 0;
    CHECK_THROWS_AS(simulated_annealing(pair, p, 1), InputError);
    p.reads = 1;
    p.sweeps = 0;
    CHECK_THROWS_AS(simulated_annealing(pair, p, 1), InputError);
    p.sweeps = 10;
    p.beta_hot = -1.0;
    CHECK_THROWS_AS(simulated_annealing(pair, p, 1), InputError);
}
