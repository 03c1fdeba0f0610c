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
#include <filesystem>

#include "qabench/exact.hpp"
#include "qabench/lp_format.hpp"
#include "support.hpp"

using namespace qabench;
using Catch::Matchers::WithinAbs;

namespace {

LpProgram::Point binary_point(const QuboModel& q, std::uint64_t bits, bool lifted) {
    LpProgram::Point p;
    for (Site i = 0; i < q.n; ++i) p[lp_var(i)] = static_cast<double>((bits >> i) & 1);
    if (lifted)
        for (const auto& c : q.quad) p[lp_lifted_var(c.i, c.j)] = p[lp_var(c.i)] * p[lp_var(c.j)];
    return p;
}

std::vector<std::uint8_t> bits_of(std::uint64_t b, std::size_t n) {
    std::vector<std::uint8_t> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = (b >> i) & 1;
    return x;
}

}  // namespace

TEST_CASE("brute force on small models", "[oracle]") {
    const auto pair = brute_force(IsingModel(2, {{0, 1, -1.0}}, {}));
    CHECK(pair.energy == -1.0);
    CHECK(pair.count == 2);
    CHECK(pair.config == testing::config_of({-1, -1}));

    const auto single = brute_force(IsingModel(1, {}, {{0, 1.0}}));
    CHECK(single.energy == -1.0);
    CHECK(single.count == 1);
    CHECK(single.config[0] == -1);

    const auto empty = brute_force(IsingModel(0, {}, {}, {}, 1.5));
    CHECK(empty.energy == 1.5);
    CHECK(empty.count == 1);

    CHECK_THROWS_AS(brute_force(IsingModel(31, {}, {})), InputError);
}

TEST_CASE("brute force agrees with naive enumeration", "[oracle]") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto m = testing::random_model(12, 0.4, seed);
        const auto r = brute_force(m);
        CHECK_THAT(r.energy, WithinAbs(testing::naive_minimum(m), 1e-12));
        CHECK(energy(m, r.config) == r.energy);
    }
    // degenerate: all-zero model has every configuration optimal
    CHECK(brute_force(IsingModel(6, {{0, 1, 0.0}}, {})).count == 64);
}

TEST_CASE("IQP file evaluates to the QUBO energy everywhere", "[lp]") {
    const auto m = testing::random_model(10, 0.4, 3);
    const auto q = to_qubo(m);
    const auto text = iqp_lp_text(q);
    const auto prog = parse_lp(text, "iqp");
    CHECK(prog.minimize);
    CHECK(prog.constraints.empty());
    CHECK(prog.binaries.size() == 10);
    for (std::uint64_t b = 0; b < 1024; ++b)
        CHECK_THAT(prog.objective(binary_point(q, b, false)), WithinAbs(qubo_energy(q, bits_of(b, 10)), 1e-9));
    CHECK(text == iqp_lp_text(q));
}

TEST_CASE("ILP linearisation", "[lp]") {
    SECTION("one edge") {
        const auto q = to_qubo(IsingModel(2, {{0, 1, 1.0}}, {}));
        const auto prog = parse_lp(ilp_lp_text(q), "ilp");
        CHECK(prog.binaries.size() == 3);
        CHECK(prog.constraints.size() == 3);
        CHECK(prog.quadratic.empty());
        // feasibility pins y to the product
        for (int x0 = 0; x0 < 2; ++x0)
            for (int x1 = 0; x1 < 2; ++x1)
                for (int y = 0; y < 2; ++y) {
                    const LpProgram::Point p{{"x_0", x0}, {"x_1", x1}, {"y_0_1", y}};
                    CHECK(prog.feasible(p) == (y == x0 * x1));
                }
    }
    SECTION("zero couplings still get lifted") {
        const auto q = to_qubo(IsingModel(3, {{0, 1, 0.0}, {1, 2, 0.5}}, {}));
        const auto prog = parse_lp(ilp_lp_text(q), "ilp");
        CHECK(prog.binaries.size() == 5);
        CHECK(prog.constraints.size() == 6);
    }
    SECTION("minimum over feasible points equals the oracle") {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const auto m = testing::random_model(7, 0.4, seed);
            const auto q = to_qubo(m);
            const auto ilp = parse_lp(ilp_lp_text(q), "ilp");
            const auto iqp = parse_lp(iqp_lp_text(q), "iqp");
            const std::size_t vars = q.n + q.quad.size();
            REQUIRE(ilp.binaries.size() == vars);
            REQUIRE(vars <= 22);
            double best = std::numeric_limits<double>::infinity();
            for (std::uint64_t b = 0; b < (std::uint64_t{1} << vars); ++b) {
                LpProgram::Point p;
                for (std::size_t k = 0; k < vars; ++k) p[ilp.binaries[k]] = static_cast<double>((b >> k) & 1);
                if (ilp.feasible(p)) best = std::min(best, ilp.objective(p));
            }
            const double oracle = brute_force(m).energy;
            CHECK_THAT(best, WithinAbs(oracle, 1e-9));
            for (std::uint64_t b = 0; b < (std::uint64_t{1} << q.n); ++b) {
                const auto p = binary_point(q, b, true);
                CHECK(ilp.feasible(p));
                CHECK_THAT(ilp.objective(p), WithinAbs(iqp.objective(p), 1e-9));
            }
        }
    }
}

TEST_CASE("LP exports are byte-deterministic files", "[lp]") {
    const auto q = to_qubo(testing::random_model(12, 0.5, 9));
    const auto dir = std::filesystem::temp_directory_path() / "qabench_lp_tests";
    std::filesystem::create_directories(dir);
    export_iqp(q, dir / "a.lp");
    export_iqp(q, dir / "b.lp");
    export_ilp(q, dir / "c.lp");
    CHECK(read_text_file(dir / "a.lp") == read_text_file(dir / "b.lp"));
    CHECK(read_text_file(dir / "a.lp") == iqp_lp_text(q));
    CHECK(read_text_file(dir / "c.lp") == ilp_lp_text(q));
    std::filesystem::remove_all(dir);
}

TEST_CASE("LP reader", "[lp]") {
    const auto prog = parse_lp(
        "\\ comment\nMaximize\n obj: 3 a - b + [ 2 a * b + a ^2 ] / 2 + 4\nSubject To\n c1: a + b >= 1\n"
        "c2: a - b = 0\nBinaries\n a b\nEnd\n");
    CHECK_FALSE(prog.minimize);
    const LpProgram::Point p{{"a", 1}, {"b", 1}};
    CHECK(prog.objective(p) == 3 - 1 + 1 + 0.5 + 4);
    CHECK(prog.feasible(p));
    CHECK_FALSE(prog.feasible({{"a", 1}, {"b", 0}}));
    CHECK(prog.binaries == std::vector<std::string>{"a", "b"});

    auto message = [](const std::string& text) {
        try {
            parse_lp(text, "bad.lp");
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("Minimize\n obj: x +\nEnd\n").find("bad.lp:") != std::string::npos);
    CHECK(message("Minimize\n obj: x\nSubject To\n c: x <<= 2\nEnd\n").find("bad.lp:4") != std::string::npos);
    CHECK(message("Nonsense\n").find("bad.lp:1") != std::string::npos);
}
