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

#include <algorithm>
#include <cmath>

#include "qabench/instance_gen.hpp"
#include "qabench/pt_icm.hpp"
#include "qabench/pt_ladder.hpp"
#include "support.hpp"

using namespace qabench;
using Catch::Matchers::WithinAbs;

TEST_CASE("replica exchange probability", "[pt]") {
    CHECK(swap_probability(1.0, 5.0, 2.0, 3.0) == std::exp(-2.0));
    CHECK(swap_probability(1.0, 3.0, 2.0, 5.0) == 1.0);
    CHECK(swap_probability(1.0, 4.0, 2.0, 4.0) == 1.0);
    // symmetric under exchanging the two replicas
    for (double e : {-3.0, 0.0, 2.5})
        CHECK(swap_probability(0.5, e, 1.5, 1.0) == swap_probability(1.5, 1.0, 0.5, e));
}

TEST_CASE("ladders", "[pt]") {
    for (const auto& ladder : {default_betas(), tuned_betas()}) {
        REQUIRE(ladder.size() == 64);
        CHECK_THAT(ladder.front(), WithinAbs(0.1, 1e-12));
        CHECK(ladder.back() == 8.0);
        CHECK(std::is_sorted(ladder.begin(), ladder.end(), std::less_equal<>()));
    }
    const IsingModel pair(2, {{0, 1, -1.0}}, {});
    CHECK_THROWS_AS(ParallelTempering(pair, {1.0}, 1), InputError);
    CHECK_THROWS_AS(ParallelTempering(pair, {1.0, 1.0}, 1), InputError);
    CHECK_THROWS_AS(ParallelTempering(pair, {0.0, 1.0}, 1), InputError);
    PtIcmParams p;
    p.betas = {0.1, 1.0};
    CHECK_THROWS_AS(pt_icm(pair, p, 1), InputError);
}

TEST_CASE("cluster moves preserve overlaps and total energy", "[pt][icm]") {
    std::size_t moves = 0, nontrivial = 0;
    for (std::uint64_t seed : {1u, 2u}) {
        const auto model = generate({Family::CbfmP, 4, seed, std::nullopt});
        PtIcmParams p;
        p.rounds = 20;
        p.restarts = 1;
        p.icm_observer = [&](const IcmMoveRecord& r) {
            ++moves;
            nontrivial += r.cluster_size > 1;
            CHECK(r.beta > 1.0);
            CHECK(r.overlap_preserved);
            CHECK_THAT(r.energy_sum_after, WithinAbs(r.energy_sum_before, 1e-9));
        };
        pt_icm(model, p, seed);
    }
    CHECK(moves >= 1000);
    CHECK(nontrivial > 0);
}

TEST_CASE("replica states keep consistent energies", "[pt]") {
    const auto m = testing::random_model(30, 0.2, 6);
    ParallelTempering pt(m, default_betas(), 3);
    for (int r = 0; r < 50; ++r) pt.round();
    for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t k = 0; k < 64; ++k)
            CHECK_THAT(pt.replica(s, k).energy(), WithinAbs(energy(m, pt.replica(s, k).config()), 1e-9));
    const auto& stats = pt.statistics();
    for (auto attempts : stats.swap_attempts) CHECK(attempts == 100);
    CHECK(stats.icm_moves > 0);
}

TEST_CASE("pt-icm finds small optima and replays", "[pt]") {
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto m = testing::pegasus_subgraph_cbfmp(16, seed);
        PtIcmParams p;
        p.rounds = 200;
        p.restarts = 1;
        hits += pt_icm(m, p, seed).best_energy() == testing::naive_minimum(m);
    }
    CHECK(hits >= 9);

    const auto m = testing::random_model(30, 0.2, 1);
    PtIcmParams p;
    p.rounds = 50;
    p.restarts = 3;
    const auto a = pt_icm(m, p, 8), b = pt_icm(m, p, 8);
    CHECK(a.best == b.best);
    CHECK(energy(m, a.best) == a.best_energy());
}
