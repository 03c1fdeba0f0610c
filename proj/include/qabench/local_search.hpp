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

#ifndef QABENCH_LOCAL_SEARCH_HPP_INCLUDED
#define QABENCH_LOCAL_SEARCH_HPP_INCLUDED

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "qabench/ising.hpp"
#include "qabench/random.hpp"
#include "qabench/trace.hpp"

namespace qabench {

/// Energy changes smaller than this are treated as zero.
inline constexpr double kEnergyTolerance = 1e-12;

/**
 * Complete configuration plus cached local fields and energy; flips are
 * O(degree).
 */
class SpinState {
  public:
    SpinState(const IsingModel& model, SpinConfiguration config)
        : model_(&model), config_(std::move(config)), fields_(model.size()) {
        check_length(model, config_);
        recompute();
    }

    const SpinConfiguration& config() const { return config_; }
    double energy() const { return energy_; }
    double local_field(Site i) const { return fields_[i]; }
    double delta(Site i) const { return -2.0 * config_[i] * fields_[i]; }

    void flip(Site i) {
        energy_ += delta(i);
        const double s_new = -config_[i];
        config_.flip(i);
        for (const auto& nb : model_->neighbors(i)) fields_[nb.site] += 2.0 * s_new * nb.coupling;
    }

    void reset(SpinConfiguration config) {
        check_length(*model_, config);
        config_ = std::move(config);
        recompute();
    }

    /// Full recomputation, discarding accumulated round-off.
    void recompute() {
        for (Site i = 0; i < model_->size(); ++i) fields_[i] = qabench::local_field(*model_, config_, i);
        energy_ = qabench::energy(*model_, config_);
    }

  private:
    const IsingModel* model_;
    SpinConfiguration config_;
    std::vector<double> fields_;
    double energy_ = 0.0;
};

inline SpinConfiguration random_configuration(std::size_t n, Rng& rng) {
    std::vector<std::int8_t> s(n);
    for (auto& v : s) v = rng.spin();
    return SpinConfiguration(std::move(s));
}

inline bool is_one_flip_stable(const IsingModel& model, const SpinConfiguration& config) {
    for (Site i = 0; i < model.size(); ++i)
        if (delta_energy(model, config, i) < -kEnergyTolerance) return false;
    return true;
}

/// Repeatedly applies the most improving flip (lowest index on ties).
inline SpinConfiguration steepest_descent(const IsingModel& model, SpinConfiguration start) {
    SpinState state(model, std::move(start));
    for (;;) {
        Site best = 0;
        double best_delta = -kEnergyTolerance;
        bool found = false;
        for (Site i = 0; i < model.size(); ++i) {
            if (state.delta(i) < best_delta) {
                best_delta = state.delta(i);
                best = i;
                found = true;
            }
        }
        if (!found) return state.config();
        state.flip(best);
    }
}

namespace detail {

struct RunLimits {
    std::optional<double> time_limit_s;
    std::optional<std::uint64_t> count;

    bool done(std::uint64_t completed, const Stopwatch& clock) const {
        if (count && completed >= *count) return true;
        if (time_limit_s && clock.seconds() >= *time_limit_s) return true;
        return false;
    }
};

inline RunLimits restart_limits(const SolverBudget& budget, const char* solver) {
    if (!budget.restarts && !budget.time_limit_s)
        throw InputError(std::string(solver) + " needs a restart count or a time limit");
    return {budget.time_limit_s, budget.restarts};
}

inline nlohmann::json budget_json(const SolverBudget& budget) {
    nlohmann::json j = nlohmann::json::object();
    if (budget.time_limit_s) j["time_limit"] = *budget.time_limit_s;
    if (budget.restarts) j["restarts"] = *budget.restarts;
    if (budget.reads) j["reads"] = *budget.reads;
    if (budget.sweeps) j["sweeps"] = *budget.sweeps;
    return j;
}

}  // namespace detail

/**
 * One greedy pass of steepest coordinate descent from the all-unassigned
 * state. Each step assigns the (site, value) pair with the lowest resulting
 * partial energy; exact ties are broken uniformly at random.
 */
inline SpinConfiguration scd_pass(const IsingModel& model, Rng& rng) {
    const std::size_t n = model.size();
    SpinConfiguration config(n, 0);
    std::vector<double> field(model.dense_fields().begin(), model.dense_fields().end());
    std::vector<Site> unassigned(n);
    std::iota(unassigned.begin(), unassigned.end(), Site{0});

    while (!unassigned.empty()) {
        // Setting s_i = v changes the partial energy by v * field_i, so the
        // best value for a site is -|field_i|.
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_slot = 0;
        std::int8_t best_value = 1;
        std::uint64_t ties = 0;
        auto consider = [&](std::size_t slot, std::int8_t v, double change) {
            if (change < best - kEnergyTolerance) {
                best = change;
                best_slot = slot;
                best_value = v;
                ties = 1;
            } else if (change <= best + kEnergyTolerance) {
                if (rng.below(++ties) == 0) {
                    best_slot = slot;
                    best_value = v;
                }
            }
        };
        for (std::size_t slot = 0; slot < unassigned.size(); ++slot) {
            const double f = field[unassigned[slot]];
            consider(slot, 1, f);
            consider(slot, -1, -f);
        }
        const Site i = unassigned[best_slot];
        config.set(i, best_value);
        for (const auto& nb : model.neighbors(i)) field[nb.site] += nb.coupling * best_value;
        unassigned[best_slot] = unassigned.back();
        unassigned.pop_back();
    }
    return config;
}

/// Steepest coordinate descent with random restarts until the budget runs out.
inline SolveTrace scd(const IsingModel& model, const SolverBudget& budget, std::uint64_t seed) {
    const auto limits = detail::restart_limits(budget, "scd");
    TraceRecorder recorder("scd", detail::budget_json(budget), seed);
    Rng rng(seed);
    std::uint64_t passes = 0;
    do {
        auto config = scd_pass(model, rng);
        recorder.offer(energy(model, config), config);
        ++passes;
    } while (!limits.done(passes, recorder.clock()));
    return std::move(recorder).finish();
}

/**
 * Zero-temperature Glauber dynamics. Each step visits every site in a fresh
 * random order and flips it when that lowers the energy; a step without a
 * flip marks a local minimum and triggers a restart from a random state.
 */
inline SolveTrace glauber(const IsingModel& model, const SolverBudget& budget, std::uint64_t seed) {
    const auto limits = detail::restart_limits(budget, "glauber");
    TraceRecorder recorder("glauber", detail::budget_json(budget), seed);
    Rng rng(seed);
    std::vector<Site> order(model.size());
    std::iota(order.begin(), order.end(), Site{0});
    SpinState state(model, random_configuration(model.size(), rng));
    std::uint64_t restarts = 0;
    do {
        if (restarts > 0) state.reset(random_configuration(model.size(), rng));
        bool improved = true;
        while (improved) {
            improved = false;
            rng.shuffle(order.begin(), order.end());
            for (Site i : order) {
                if (state.delta(i) < -kEnergyTolerance) {
                    state.flip(i);
                    improved = true;
                }
            }
        }
        recorder.offer(energy(model, state.config()), state.config());
        ++restarts;
    } while (!limits.done(restarts, recorder.clock()));
    return std::move(recorder).finish();
}

struct TabuParams {
    std::uint64_t reads = 1;
    std::uint64_t tenure = 20;
    /// Per-read wall-clock cap.
    double read_timeout_s = 1.0;
    /// Per-read cap on iterations without improving the read's best; 0 picks max(1000, 10n).
    std::uint64_t max_stall = 0;
    std::optional<double> time_limit_s;
};

/**
 * Single-flip tabu search from `start`. Every iteration applies the best
 * admissible flip; a flipped site stays tabu for `tenure` iterations unless
 * flipping it would beat `global_best` (aspiration). The tenure is capped
 * at n / 4 so small models keep admissible moves.
 */
inline SpinConfiguration tabu_read(const IsingModel& model, SpinConfiguration start,
                                   const TabuParams& params, double global_best, Rng& rng,
                                   const Stopwatch& run_clock) {
    const std::size_t n = model.size();
    SpinState state(model, std::move(start));
    SpinConfiguration read_best = state.config();
    double read_best_energy = state.energy();
    if (n == 0) return read_best;

    const std::uint64_t tenure = std::min<std::uint64_t>(params.tenure, std::max<std::size_t>(n / 4, 1));
    const std::uint64_t max_stall = params.max_stall ? params.max_stall : std::max<std::uint64_t>(1000, 10 * n);
    std::vector<std::uint64_t> tabu_until(n, 0);
    const Stopwatch read_clock;
    std::uint64_t stall = 0;
    global_best = std::min(global_best, read_best_energy);

    for (std::uint64_t iter = 1; stall < max_stall; ++iter) {
        if ((iter & 63) == 0) {
            if (read_clock.seconds() >= params.read_timeout_s) break;
            if (params.time_limit_s && run_clock.seconds() >= *params.time_limit_s) break;
        }
        double best_delta = std::numeric_limits<double>::infinity();
        Site chosen = 0;
        std::uint64_t ties = 0;
        for (Site i = 0; i < n; ++i) {
            const double d = state.delta(i);
            const bool admissible =
                tabu_until[i] < iter || state.energy() + d < global_best - kEnergyTolerance;
            if (!admissible) continue;
            if (d < best_delta - kEnergyTolerance) {
                best_delta = d;
                chosen = i;
                ties = 1;
            } else if (d <= best_delta + kEnergyTolerance && rng.below(++ties) == 0) {
                chosen = i;
            }
        }
        if (ties == 0) {
            ++stall;
            continue;
        }
        state.flip(chosen);
        tabu_until[chosen] = iter + tenure;
        if (state.energy() < read_best_energy - kEnergyTolerance) {
            read_best_energy = state.energy();
            read_best = state.config();
            global_best = std::min(global_best, read_best_energy);
            stall = 0;
        } else {
            ++stall;
        }
    }
    return read_best;
}

/// Multistart tabu search: `reads` independent random starts, best over reads.
inline SolveTrace tabu(const IsingModel& model, const TabuParams& params, std::uint64_t seed) {
    if (params.reads == 0) throw InputError("tabu needs at least one read");
    nlohmann::json snapshot = {{"reads", params.reads}, {"tenure", params.tenure},
                               {"timeout", params.read_timeout_s}};
    if (params.time_limit_s) snapshot["time_limit"] = *params.time_limit_s;
    TraceRecorder recorder("tabu", snapshot, seed);
    Rng rng(seed);
    for (std::uint64_t r = 0; r < params.reads; ++r) {
        auto start = random_configuration(model.size(), rng);
        auto best = tabu_read(model, std::move(start), params, recorder.best_energy(), rng,
                              recorder.clock());
        recorder.offer(energy(model, best), best);
        if (params.time_limit_s && recorder.clock().seconds() >= *params.time_limit_s) break;
    }
    return std::move(recorder).finish();
}

}  // namespace qabench

#endif  // QABENCH_LOCAL_SEARCH_HPP_INCLUDED
