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

#include "qabench/ising.hpp"
#include "support.hpp"

using namespace qabench;
using Catch::Matchers::WithinAbs;

namespace {

IsingModel ferromagnet() { return IsingModel(2, {{0, 1, -1.0}}, {}); }

}  // namespace

TEST_CASE("energy of small models", "[ising]") {
    CHECK(energy(ferromagnet(), testing::config_of({1, 1})) == -1.0);
    CHECK(energy(ferromagnet(), testing::config_of({1, -1})) == 1.0);

    IsingModel zero(3, {{0, 1, 0.0}, {1, 2, 0.0}}, {{0, 0.0}});
    for (std::uint64_t b = 0; b < 8; ++b) CHECK(energy(zero, testing::config_of(testing::spins_of(b, 3))) == 0.0);
}

TEST_CASE("energy agrees with the naive evaluator on every configuration", "[ising]") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto model = testing::random_model(8, 0.5, seed);
        const auto d = testing::dense(model);
        for (std::uint64_t b = 0; b < 256; ++b) {
            const auto s = testing::spins_of(b, 8);
            CHECK_THAT(energy(model, testing::config_of(s)), WithinAbs(testing::naive_energy(d, s), 1e-12));
        }
    }
}

TEST_CASE("unassigned spins contribute nothing", "[ising]") {
    IsingModel m(3, {{0, 1, 2.0}, {1, 2, -3.0}}, {{0, 1.0}, {1, 5.0}, {2, -1.0}});
    CHECK(energy(m, testing::config_of({1, 0, -1})) == 1.0 + 1.0);
    CHECK(energy(m, SpinConfiguration(3)) == 0.0);
}

TEST_CASE("energy rejects a length mismatch", "[ising]") {
    CHECK_THROWS_AS(energy(ferromagnet(), testing::config_of({1})), InputError);
}

TEST_CASE("spin configurations only hold -1, 0, +1", "[ising]") {
    CHECK_THROWS_AS(SpinConfiguration(std::vector<std::int8_t>{2}), InputError);
    SpinConfiguration c(2);
    CHECK_FALSE(c.complete());
    c.set(0, 1);
    c.set(1, -1);
    CHECK(c.complete());
}

TEST_CASE("delta energy", "[ising]") {
    IsingModel single(1, {}, {{0, -1.0}});
    CHECK(delta_energy(single, testing::config_of({-1}), 0) == -2.0);
    CHECK(energy(single, testing::config_of({1})) - energy(single, testing::config_of({-1})) == -2.0);

    SECTION("matches full recomputation for every site and configuration") {
        const auto model = testing::random_model(10, 0.4, 11);
        const auto d = testing::dense(model);
        for (std::uint64_t b = 0; b < 1024; ++b) {
            const auto s = testing::spins_of(b, 10);
            const double e = testing::naive_energy(d, s);
            for (Site i = 0; i < 10; ++i) {
                auto flipped = s;
                flipped[i] = -flipped[i];
                CHECK_THAT(delta_energy(model, testing::config_of(s), i),
                           WithinAbs(testing::naive_energy(d, flipped) - e, 1e-12));
            }
        }
    }

    SECTION("flip and flip back cancel") {
        const auto model = testing::random_model(9, 0.5, 5);
        auto c = testing::config_of(testing::spins_of(0x155, 9));
        for (Site i = 0; i < 9; ++i) {
            const double forward = delta_energy(model, c, i);
            c.flip(i);
            CHECK_THAT(forward + delta_energy(model, c, i), WithinAbs(0.0, 1e-12));
            c.flip(i);
        }
    }

    SECTION("errors") {
        CHECK_THROWS_AS(delta_energy(single, SpinConfiguration(1), 0), InputError);
        CHECK_THROWS_AS(delta_energy(single, testing::config_of({1}), 1), InputError);
    }
}

TEST_CASE("Ising to QUBO", "[ising][qubo]") {
    SECTION("single spin") {
        const auto q = to_qubo(IsingModel(1, {}, {{0, 1.0}}));
        REQUIRE(q.lin.size() == 1);
        CHECK(q.lin[0].value == 2.0);
        CHECK(q.offset == -1.0);
        const std::uint8_t one[] = {1}, zero[] = {0};
        CHECK(qubo_energy(q, one) == 1.0);
        CHECK(qubo_energy(q, zero) == -1.0);
    }
    SECTION("ferromagnetic pair") {
        const auto m = ferromagnet();
        const auto q = to_qubo(m);
        REQUIRE(q.quad.size() == 1);
        CHECK(q.quad[0].value == -4.0);
        CHECK(q.lin[0].value == 2.0);
        CHECK(q.lin[1].value == 2.0);
        CHECK(q.offset == -1.0);
        for (std::uint64_t b = 0; b < 4; ++b) {
            const auto s = testing::spins_of(b, 2);
            const auto c = testing::config_of(s);
            CHECK(qubo_energy(q, to_binary(c)) == energy(m, c));
        }
    }
    SECTION("pointwise equality on full enumeration, n = 12") {
        const auto m = testing::random_model(12, 0.4, 21);
        const auto q = to_qubo(m);
        const auto d = testing::dense(m);
        for (std::uint64_t b = 0; b < 4096; ++b) {
            const auto s = testing::spins_of(b, 12);
            std::vector<std::uint8_t> x(12);
            for (int i = 0; i < 12; ++i) x[i] = s[i] > 0;
            CHECK_THAT(qubo_energy(q, x), WithinAbs(testing::naive_energy(d, s), 1e-12));
        }
    }
}

TEST_CASE("QUBO to Ising round trips", "[ising][qubo]") {
    SECTION("random QUBO, n = 10") {
        std::mt19937_64 gen(3);
        std::uniform_real_distribution<double> coef(-2.0, 2.0);
        QuboModel q;
        q.n = 10;
        q.offset = 0.75;
        for (Site i = 0; i < 10; ++i) {
            q.lin.push_back({i, coef(gen)});
            for (Site j = i + 1; j < 10; ++j)
                if ((i + j) % 3 == 0) q.quad.push_back({i, j, coef(gen)});
        }
        const auto back = to_qubo(from_qubo(q));
        CHECK_THAT(back.offset, WithinAbs(q.offset, 1e-12));
        REQUIRE(back.quad.size() == q.quad.size());
        for (std::size_t k = 0; k < q.quad.size(); ++k) CHECK_THAT(back.quad[k].value, WithinAbs(q.quad[k].value, 1e-12));
        for (std::size_t k = 0; k < q.lin.size(); ++k) CHECK_THAT(back.lin[k].value, WithinAbs(q.lin[k].value, 1e-12));
        const auto ising = from_qubo(q);
        for (std::uint64_t b = 0; b < 1024; ++b) {
            std::vector<std::uint8_t> x(10);
            for (int i = 0; i < 10; ++i) x[i] = (b >> i) & 1;
            CHECK_THAT(energy(ising, to_spins(x)), WithinAbs(qubo_energy(q, x), 1e-12));
        }
    }
    SECTION("zero model") {
        const auto m = from_qubo(to_qubo(IsingModel(4, {}, {})));
        CHECK(m.offset() == 0.0);
        for (Site i = 0; i < 4; ++i) CHECK(m.field(i) == 0.0);
        CHECK(m.couplings().empty());
    }
    SECTION("Ising model coefficients survive") {
        const auto m = testing::random_model(10, 0.5, 8);
        const auto back = from_qubo(to_qubo(m));
        CHECK_THAT(back.offset(), WithinAbs(0.0, 1e-12));
        for (Site i = 0; i < 10; ++i) CHECK_THAT(back.field(i), WithinAbs(m.field(i), 1e-12));
        REQUIRE(back.couplings().size() == m.couplings().size());
        for (const auto& c : m.couplings()) CHECK_THAT(back.coupling(c.i, c.j), WithinAbs(c.value, 1e-12));
    }
}

TEST_CASE("scaling coefficients scales energies and keeps the minimisers", "[ising]") {
    const auto m = testing::random_model(10, 0.5, 4);
    const double alpha = 3.5;
    std::vector<Coupling> J;
    std::vector<Field> h;
    for (auto c : m.couplings()) J.push_back({c.i, c.j, alpha * c.value});
    for (auto f : m.fields()) h.push_back({f.i, alpha * f.value});
    const IsingModel scaled(10, J, h);
    double best = 1e300, best_scaled = 1e300;
    std::uint64_t arg = 0, arg_scaled = 0;
    for (std::uint64_t b = 0; b < 1024; ++b) {
        const auto c = testing::config_of(testing::spins_of(b, 10));
        const double e = energy(m, c), es = energy(scaled, c);
        CHECK_THAT(es, WithinAbs(alpha * e, 1e-12));
        if (e < best) best = e, arg = b;
        if (es < best_scaled) best_scaled = es, arg_scaled = b;
    }
    CHECK(arg == arg_scaled);
}

TEST_CASE("model validation", "[ising]") {
    CHECK_THROWS_AS(IsingModel(2, {{0, 0, 1.0}}, {}), InputError);
    CHECK_THROWS_AS(IsingModel(2, {{0, 2, 1.0}}, {}), InputError);
    CHECK_THROWS_AS(IsingModel(3, {{0, 1, 1.0}, {1, 0, 2.0}}, {}), InputError);
    CHECK_THROWS_AS(IsingModel(2, {}, {{0, 1.0}, {0, 2.0}}), InputError);
    CHECK_THROWS_AS(IsingModel(2, {}, {{2, 1.0}}), InputError);

    IsingModel flipped(3, {{2, 0, 0.5}}, {});
    CHECK(flipped.couplings()[0].i == 0);
    CHECK(flipped.couplings()[0].j == 2);
    CHECK(flipped.coupling(2, 0) == 0.5);
    CHECK(flipped.coupling(0, 1) == 0.0);
    CHECK(flipped.degree(1) == 0);
}

TEST_CASE("hardware coefficient lint", "[ising]") {
    CHECK(hardware_lint(ferromagnet()).empty());
    CHECK(hardware_lint(IsingModel(2, {{0, 1, 1.5}}, {{0, -5.0}})).size() == 2);
}
