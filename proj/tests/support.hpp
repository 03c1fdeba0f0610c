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

// Test fixtures and reference evaluators written independently of the
// library code they check.

#ifndef QABENCH_TESTS_SUPPORT_HPP_INCLUDED
#define QABENCH_TESTS_SUPPORT_HPP_INCLUDED

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <utility>
#include <vector>

#include "qabench/ising.hpp"
#include "qabench/pegasus.hpp"

namespace testing {

using qabench::Coupling;
using qabench::Field;
using qabench::IsingModel;
using qabench::Site;
using qabench::SpinConfiguration;

/// Dense copy of a model, for naive evaluation.
struct Dense {
    std::size_t n;
    std::vector<std::vector<double>> J;  // symmetric, zero diagonal
    std::vector<double> h;
    double offset = 0.0;
};

inline Dense dense(const IsingModel& m) {
    Dense d{m.size(), std::vector<std::vector<double>>(m.size(), std::vector<double>(m.size(), 0.0)),
            std::vector<double>(m.size(), 0.0), m.offset()};
    for (const auto& c : m.couplings()) d.J[c.i][c.j] = d.J[c.j][c.i] = c.value;
    for (const auto& f : m.fields()) d.h[f.i] += f.value;
    return d;
}

/// Double loop over ordered pairs i < j; shares nothing with the library's evaluator.
inline double naive_energy(const Dense& d, const std::vector<int>& s) {
    double e = d.offset;
    for (std::size_t i = 0; i < d.n; ++i) {
        e += d.h[i] * s[i];
        for (std::size_t j = i + 1; j < d.n; ++j) e += d.J[i][j] * s[i] * s[j];
    }
    return e;
}

/// Spins for enumeration index `bits`: bit i set -> +1.
inline std::vector<int> spins_of(std::uint64_t bits, std::size_t n) {
    std::vector<int> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (bits >> i) & 1 ? 1 : -1;
    return s;
}

inline SpinConfiguration config_of(const std::vector<int>& s) {
    std::vector<std::int8_t> v(s.begin(), s.end());
    return SpinConfiguration(std::move(v));
}

/// Exhaustive minimum with the naive evaluator.
inline double naive_minimum(const IsingModel& m) {
    const auto d = dense(m);
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << m.size()); ++b) best = std::min(best, naive_energy(d, spins_of(b, m.size())));
    return best;
}

/// Erdos-Renyi model with real-valued coefficients in [-1, 1].
inline IsingModel random_model(std::size_t n, double edge_probability, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::bernoulli_distribution edge(edge_probability);
    std::vector<Coupling> J;
    std::vector<Field> h;
    for (Site i = 0; i < n; ++i) {
        h.push_back({i, coef(gen)});
        for (Site j = i + 1; j < n; ++j)
            if (edge(gen)) J.push_back({i, j, coef(gen)});
    }
    return IsingModel(n, std::move(J), std::move(h));
}

/**
 * n-node connected induced subgraph of Pegasus P2 grown by breadth-first
 * search from a random start, with CBFM-P-style coefficients drawn here.
 */
inline IsingModel pegasus_subgraph_cbfmp(std::size_t n, std::uint64_t seed) {
    const auto topo = qabench::pegasus(2);
    std::mt19937_64 gen(seed);
    const auto& nodes = topo.nodes();
    std::vector<std::vector<std::size_t>> adj(nodes.size());
    for (const auto& [a, b] : topo.edges()) {
        const auto ia = topo.index_of(a), ib = topo.index_of(b);
        adj[ia].push_back(ib);
        adj[ib].push_back(ia);
    }
    std::vector<std::size_t> chosen;
    std::vector<int> position(nodes.size(), -1);
    std::deque<std::size_t> frontier{std::uniform_int_distribution<std::size_t>(0, nodes.size() - 1)(gen)};
    position[frontier.front()] = 0;
    chosen.push_back(frontier.front());
    while (chosen.size() < n && !frontier.empty()) {
        const auto v = frontier.front();
        frontier.pop_front();
        auto nbrs = adj[v];
        std::shuffle(nbrs.begin(), nbrs.end(), gen);
        for (auto u : nbrs) {
            if (position[u] >= 0 || chosen.size() >= n) continue;
            position[u] = static_cast<int>(chosen.size());
            chosen.push_back(u);
            frontier.push_back(u);
        }
    }
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Coupling> J;
    std::vector<Field> h;
    for (const auto& [a, b] : topo.edges()) {
        const int pa = position[topo.index_of(a)], pb = position[topo.index_of(b)];
        if (pa < 0 || pb < 0) continue;
        const double r = u(gen);
        const double value = r < 0.35 ? 0.0 : r < 0.45 ? -1.0 : 1.0;
        J.push_back({static_cast<Site>(std::min(pa, pb)), static_cast<Site>(std::max(pa, pb)), value});
    }
    for (Site i = 0; i < chosen.size(); ++i) h.push_back({i, u(gen) < 0.15 ? 0.0 : -1.0});
    return IsingModel(chosen.size(), std::move(J), std::move(h));
}

/// Random labelled tree (random parent for each node) with real coefficients.
inline IsingModel random_tree(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<Coupling> J;
    std::vector<Field> h;
    for (Site i = 0; i < n; ++i) {
        h.push_back({i, coef(gen)});
        if (i > 0) {
            const auto parent = std::uniform_int_distribution<Site>(0, i - 1)(gen);
            J.push_back({parent, i, coef(gen)});
        }
    }
    return IsingModel(n, std::move(J), std::move(h));
}

/// Exact minimum of a forest by leaf elimination (dynamic programming).
inline double tree_minimum(const IsingModel& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
    for (const auto& c : m.couplings()) {
        adj[c.i].push_back({c.j, c.value});
        adj[c.j].push_back({c.i, c.value});
    }
    // cost[v][s]: best energy of v's subtree given sigma_v = (s ? +1 : -1)
    std::vector<std::array<double, 2>> cost(n);
    std::vector<int> state(n, 0);  // 0 unvisited, 1 open, 2 done
    double total = m.offset();
    std::function<void(std::size_t, std::size_t)> visit = [&](std::size_t v, std::size_t parent) {
        state[v] = 1;
        const double hv = m.field(static_cast<Site>(v));
        cost[v] = {-hv, hv};
        for (const auto& [u, J] : adj[v]) {
            if (u == parent) continue;
            visit(u, v);
            for (int s = 0; s < 2; ++s) {
                const int sv = s ? 1 : -1;
                cost[v][s] += std::min(cost[u][0] + J * sv * -1, cost[u][1] + J * sv * 1);
            }
        }
        state[v] = 2;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (state[root]) continue;
        visit(root, n);
        total += std::min(cost[root][0], cost[root][1]);
    }
    return total;
}

}  // namespace testing

#endif  // QABENCH_TESTS_SUPPORT_HPP_INCLUDED
