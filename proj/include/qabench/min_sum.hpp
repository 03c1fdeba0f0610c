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

#ifndef QABENCH_MIN_SUM_HPP_INCLUDED
#define QABENCH_MIN_SUM_HPP_INCLUDED

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "qabench/local_search.hpp"

namespace qabench {

/// Symmetric saturating linear transfer: min(x, y) - min(-x, y) - x.
inline double ssl(double x, double y) { return std::min(x, y) - std::min(-x, y) - x; }

struct MinSumParams {
    std::uint64_t max_iterations = 1000;
    double tolerance = 1e-9;
    std::optional<double> time_limit_s;
};

struct MinSumMessages {
    /// messages[slot] is the message travelling into the row's site from the
    /// neighbour stored at the same adjacency slot.
    std::vector<std::vector<double>> incoming;
    std::uint64_t iterations = 0;
    bool converged = false;
};

/**
 * Synchronous min-sum on the model's factor graph. Messages are twice the
 * cavity field a neighbour exerts on a site:
 *
 *   eps_{i->j} = -SSL(2 J_ij, 2 h_i + sum_{k in N(i) \ j} eps_{k->i})
 *
 * SSL(2J, 2u) equals minus twice the field that a spin with cavity field u
 * induces through coupling J, hence the leading minus; with it the decision
 * rule below reproduces exact minimisation on trees.
 */
inline MinSumMessages min_sum_messages(const IsingModel& model, const MinSumParams& params,
                                       const Stopwatch& clock = {}) {
    const std::size_t n = model.size();
    MinSumMessages out;
    out.incoming.resize(n);
    // reverse_slot[i][a] = position of i inside the adjacency row of its a-th neighbour
    std::vector<std::vector<std::size_t>> reverse_slot(n);
    for (Site i = 0; i < n; ++i) {
        out.incoming[i].assign(model.degree(i), 0.0);
        reverse_slot[i].resize(model.degree(i));
        const auto row = model.neighbors(i);
        for (std::size_t a = 0; a < row.size(); ++a) {
            const auto back = model.neighbors(row[a].site);
            for (std::size_t b = 0; b < back.size(); ++b)
                if (back[b].site == i) reverse_slot[i][a] = b;
        }
    }
    auto next = out.incoming;
    for (out.iterations = 0; out.iterations < params.max_iterations;) {
        if (params.time_limit_s && clock.seconds() >= *params.time_limit_s) break;
        double largest_change = 0.0;
        for (Site i = 0; i < n; ++i) {
            double total = 2.0 * model.field(i);
            for (double m : out.incoming[i]) total += m;
            const auto row = model.neighbors(i);
            for (std::size_t a = 0; a < row.size(); ++a) {
                const double cavity = total - out.incoming[i][a];
                const double message = -ssl(2.0 * row[a].coupling, cavity);
                double& slot = next[row[a].site][reverse_slot[i][a]];
                largest_change = std::max(largest_change, std::abs(message - slot));
                slot = message;
            }
        }
        std::swap(out.incoming, next);
        ++out.iterations;
        if (largest_change <= params.tolerance) {
            out.converged = true;
            break;
        }
    }
    return out;
}

/// sigma_i = -sign(2 h_i + sum_k eps_{k->i}); a zero argument draws a fair coin.
inline SpinConfiguration min_sum_decision(const IsingModel& model, const MinSumMessages& messages, Rng& rng) {
    std::vector<std::int8_t> s(model.size());
    for (Site i = 0; i < model.size(); ++i) {
        double total = 2.0 * model.field(i);
        for (double m : messages.incoming[i]) total += m;
        s[i] = total > 0.0 ? -1 : total < 0.0 ? 1 : rng.spin();
    }
    return SpinConfiguration(std::move(s));
}

inline SolveTrace min_sum(const IsingModel& model, const MinSumParams& params, std::uint64_t seed) {
    nlohmann::json snapshot = {{"iterations", params.max_iterations}, {"tolerance", params.tolerance}};
    if (params.time_limit_s) snapshot["time_limit"] = *params.time_limit_s;
    TraceRecorder recorder("min-sum", snapshot, seed);
    Rng rng(seed);
    const auto messages = min_sum_messages(model, params, recorder.clock());
    const auto config = min_sum_decision(model, messages, rng);
    recorder.offer(energy(model, config), config);
    return std::move(recorder).finish();
}

}  // namespace qabench

#endif  // QABENCH_MIN_SUM_HPP_INCLUDED
