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
#include <numbers>

#include "qabench/svmc.hpp"
#include "support.hpp"

using namespace qabench;
using Catch::Matchers::WithinAbs;

namespace {

std::string parse_message(const std::string& text) {
    try {
        parse_schedule_csv(text, "sched.csv");
    } catch (const ParseError& e) {
        return e.what();
    }
    return "no error";
}

}  // namespace

TEST_CASE("rotor projection", "[svmc]") {
    Rng rng(1);
    CHECK(project_angle(0.0, rng) == 1);
    CHECK(project_angle(std::nextafter(kHalfPi, 0.0), rng) == 1);
    CHECK(project_angle(std::nextafter(kHalfPi, 4.0), rng) == -1);
    CHECK(project_angle(3.1, rng) == -1);
    int up = 0;
    for (int t = 0; t < 10000; ++t) up += project_angle(kHalfPi, rng) == 1;
    CHECK(std::abs(up - 5000) <= 4 * 50);
}

TEST_CASE("rotor energy at the poles is the Ising energy", "[svmc]") {
    const auto m = testing::random_model(8, 0.5, 2);
    for (std::uint64_t b = 0; b < 256; ++b) {
        const auto s = testing::spins_of(b, 8);
        RotorState r;
        for (int v : s) r.theta.push_back(v > 0 ? 0.0 : std::numbers::pi);
        CHECK_THAT(rotor_energy(m, r, 0.0, 1.0), WithinAbs(energy(m, testing::config_of(s)), 1e-12));
        CHECK_THAT(rotor_energy(m, r, 5.0, 2.0), WithinAbs(2.0 * energy(m, testing::config_of(s)), 1e-12));
    }
    RotorState flat{std::vector<double>(8, kHalfPi)};
    CHECK_THAT(rotor_energy(m, flat, 1.5, 1.0), WithinAbs(-12.0, 1e-12));
}

TEST_CASE("schedule tables", "[svmc][schedule]") {
    const auto t = parse_schedule_csv("s,A_GHz,B_GHz\n0,6,0\n0.5,1,4\n1,0,12\n");
    REQUIRE(t.rows().size() == 3);
    CHECK(t.at(0.25).a_ghz == 3.5);
    CHECK(t.at(0.25).b_ghz == 2.0);
    CHECK(t.at(0.75).b_ghz == 8.0);
    CHECK(t.at(1.0).a_ghz == 0.0);
    CHECK(t.monotonicity_warnings().empty());
    CHECK(parse_schedule_csv("s,A_GHz,B_GHz\r\n0,1,0\r\n1,0,1\r\n").rows().size() == 2);

    const auto odd = parse_schedule_csv("s,A_GHz,B_GHz\n0,6,0\n0.5,7,5\n1,0,3\n");
    CHECK(odd.monotonicity_warnings().size() == 2);

    const auto fb = ScheduleTable::fallback();
    CHECK(fb.at(0.5).a_ghz == 3.0);
    CHECK(fb.at(0.5).b_ghz == 6.0);
}

TEST_CASE("schedule parse errors", "[svmc][schedule]") {
    CHECK(parse_message("s,A,B\n0,1,0\n1,0,1\n").find("sched.csv:1") != std::string::npos);
    CHECK(parse_message("s,A_GHz,B_GHz\n0,1,0\n0.5,x,1\n1,0,1\n").find("sched.csv:3") != std::string::npos);
    CHECK(parse_message("s,A_GHz,B_GHz\n0,1,0,4\n1,0,1\n").find("too many columns") != std::string::npos);
    CHECK(parse_message("s,A_GHz,B_GHz\n0,1\n1,0,1\n").find("expected 3 columns") != std::string::npos);
    CHECK(parse_message("s,A_GHz,B_GHz\n0,1,0\n").find("two rows") != std::string::npos);
    CHECK(parse_message("s,A_GHz,B_GHz\n0,1,0\n0.6,1,0\n0.4,1,0\n1,0,1\n").find("increasing") != std::string::npos);
    CHECK(parse_message("s,A_GHz,B_GHz\n0.1,1,0\n1,0,1\n").find("endpoints") != std::string::npos);
    CHECK(parse_message("").find("empty") != std::string::npos);
}

TEST_CASE("angles stay in [0, pi)", "[svmc]") {
    const auto m = testing::random_model(30, 0.2, 4);
    SvmcParams p;
    p.steps = 200;
    Rng rng(9);
    const auto rotors = svmc_anneal(m, ScheduleTable::fallback(), p, rng);
    REQUIRE(rotors.theta.size() == 30);
    for (double th : rotors.theta) {
        CHECK(th >= 0.0);
        CHECK(th < std::numbers::pi);
    }
}

TEST_CASE("a single biased spin aligns with its field", "[svmc]") {
    const IsingModel single(1, {}, {{0, -1.0}});
    SvmcParams p;
    p.steps = 1000;
    p.restarts = 1;
    p.workers = 1;
    int aligned = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) aligned += svmc(single, ScheduleTable::fallback(), p, seed).best[0] == 1;
    CHECK(aligned >= 99);
}

TEST_CASE("svmc traces", "[svmc]") {
    const auto m = testing::pegasus_subgraph_cbfmp(16, 3);
    SvmcParams p;
    p.steps = 300;
    p.restarts = 6;
    p.workers = 2;
    const auto a = svmc(m, ScheduleTable::fallback(), p, 5);
    p.workers = 1;
    const auto b = svmc(m, ScheduleTable::fallback(), p, 5);
    CHECK(a.best == b.best);
    CHECK(a.best.complete());
    CHECK(energy(m, a.best) == a.best_energy());
    CHECK(a.params["restarts"] == 6);

    p.steps = 0;
    CHECK_THROWS_AS(svmc(m, ScheduleTable::fallback(), p, 5), InputError);
}
