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

#ifndef QABENCH_ANNEALING_HPP_INCLUDED
#define QABENCH_ANNEALING_HPP_INCLUDED

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "qabench/local_search.hpp"

namespace qabench {

/// Metropolis criterion: downhill always, uphill with probability exp(-beta * delta).
inline bool metropolis_accept(double delta, double beta, double u) {
    if (delta <= 0.0) return true;
    return u < std::exp(-beta * delta);
}

struct BetaRange {
    double hot;
    double cold;
};

/**
 * Default annealing range. The hottest beta flips the stiffest spin
 * (largest possible |dE|) with probability 1/2; the coldest accepts the
 * smallest nonzero |dE| with probability 1e-6.
 */
inline BetaRange default_beta_range(const IsingModel& model) {
    double max_delta = 0.0;
    double min_coefficient = std::numeric_limits<double>::infinity();
    for (Site i = 0; i < model.size(); ++i) {
        double stiffness = std::abs(model.field(i));
        if (model.field(i) != 0.0) min_coefficient = std::min(min_coefficient, std::abs(model.field(i)));
        for (const auto& nb : model.neighbors(i)) {
            stiffness += std::abs(nb.coupling);
            if (nb.coupling != 0.0) min_coefficient = std::min(min_coefficient, std::abs(nb.coupling));
        }
        max_delta = std::max(max_delta, 2.0 * stiffness);
    }
    if (max_delta == 0.0) return {1.0, 1.0};
    const double min_delta = 2.0 * min_coefficient;
    return {std::log(2.0) / max_delta, std::log(1e6) / min_delta};
}

/// Geometric ladder of `steps` values from hot to cold (inclusive).
inline std::vector<double> geometric_ladder(double first, double last, std::size_t steps) {
    std::vector<double> ladder(steps);
    if (steps == 1) {
        ladder[0] = last;
        return ladder;
    }
    const double ratio = std::pow(last / first, 1.0 / static_cast<double>(steps - 1));
    for (std::size_t k = 0; k < steps; ++k) ladder[k] = first * std::pow(ratio, static_cast<double>(k));
    ladder.back() = last;
    return ladder;
}

struct AnnealParams {
    std::uint64_t reads = 100;
    std::uint64_t sweeps = 1000;
    std::optional<double> beta_hot;
    std::optional<double> beta_cold;
    std::optional<double> time_limit_s;
};

/// One Metropolis sweep over all sites in index order at inverse temperature beta.
inline void metropolis_sweep(SpinState& state, double beta, Rng& rng) {
    const auto n = static_cast<Site>(state.config().size());
    for (Site i = 0; i < n; ++i) {
        const double d = state.delta(i);
        if (d <= 0.0 || rng.uniform() < std::exp(-beta * d)) state.flip(i);
    }
}

/**
 * Simulated annealing: `reads` independent anneals from random states, each
 * sweeping once per beta of a geometric ladder with `sweeps` rungs. The final
 * state of every read is scored; the trace keeps the best.
 */
inline SolveTrace simulated_annealing(const IsingModel& model, const AnnealParams& params,
                                      std::uint64_t seed) {
    if (params.reads == 0 || params.sweeps == 0) throw InputError("sa needs reads >= 1 and sweeps >= 1");
    const auto range = default_beta_range(model);
    const double hot = params.beta_hot.value_or(range.hot);
    const double cold = params.beta_cold.value_or(range.cold);
    if (!(hot > 0.0) || !(cold > 0.0)) throw InputError("sa beta range must be positive");
    const auto ladder = geometric_ladder(hot, cold, params.sweeps);

    nlohmann::json snapshot = {{"reads", params.reads}, {"sweeps", params.sweeps}};
    if (params.beta_hot) snapshot["beta_hot"] = *params.beta_hot;
    if (params.beta_cold) snapshot["beta_cold"] = *params.beta_cold;
    if (params.time_limit_s) snapshot["time_limit"] = *params.time_limit_s;
    TraceRecorder recorder("sa", snapshot, seed);
    Rng rng(seed);
    SpinState state(model, SpinConfiguration(model.size(), 1));
    for (std::uint64_t r = 0; r < params.reads; ++r) {
        state.reset(random_configuration(model.size(), rng));
        for (double beta : ladder) metropolis_sweep(state, beta, rng);
        recorder.offer(energy(model, state.config()), state.config());
        if (params.time_limit_s && recorder.clock().seconds() >= *params.time_limit_s) break;
    }
    return std::move(recorder).finish();
}

}  // namespace qabench

#endif  // QABENCH_ANNEALING_HPP_INCLUDED
