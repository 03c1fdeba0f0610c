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

#ifndef QABENCH_PT_ICM_HPP_INCLUDED
#define QABENCH_PT_ICM_HPP_INCLUDED

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include "qabench/annealing.hpp"
#include "qabench/ensemble.hpp"

namespace qabench {

inline constexpr std::size_t kReplicaCount = 64;
inline constexpr double kLadderLow = 0.1;
inline constexpr double kLadderHigh = 8.0;

/// Untuned ladder: 64 geometrically spaced betas over [0.1, 8].
inline std::vector<double> default_betas() {
    return geometric_ladder(kLadderLow, kLadderHigh, kReplicaCount);
}

/// Swap acceptance probability min(1, exp((beta_r - beta_s) (E_r - E_s))).
inline double swap_probability(double beta_r, double energy_r, double beta_s, double energy_s) {
    const double exponent = (beta_r - beta_s) * (energy_r - energy_s);
    return exponent >= 0.0 ? 1.0 : std::exp(exponent);
}

/// One audited isoenergetic cluster move (filled only when an observer is set).
struct IcmMoveRecord {
    std::size_t replica;
    double beta;
    std::size_t cluster_size;
    bool overlap_preserved;
    double energy_sum_before;
    double energy_sum_after;
};

struct PtStatistics {
    std::vector<std::uint64_t> swap_attempts;
    std::vector<std::uint64_t> swap_accepts;
    std::uint64_t icm_moves = 0;

    std::vector<double> acceptance() const {
        std::vector<double> out(swap_attempts.size(), 0.0);
        for (std::size_t k = 0; k < out.size(); ++k)
            if (swap_attempts[k]) out[k] = static_cast<double>(swap_accepts[k]) / static_cast<double>(swap_attempts[k]);
        return out;
    }
};

/**
 * Two independent parallel-tempering stacks sharing one beta ladder, with
 * Houdayer-style cluster moves between equal-temperature replicas of the
 * two stacks.
 *
 * A round performs `sweeps_per_round` Metropolis sweeps on every replica,
 * one pass of neighbour swaps per stack in random pair order, then one
 * cluster move for every rung with beta > 1. Cluster connectivity follows
 * couplings with J != 0.
 */
class ParallelTempering {
  public:
    using IcmObserver = std::function<void(const IcmMoveRecord&)>;

    ParallelTempering(const IsingModel& model, std::vector<double> betas, std::uint64_t seed,
                      bool cluster_moves = true, std::uint64_t sweeps_per_round = 2)
        : model_(&model), betas_(std::move(betas)), rng_(seed), cluster_moves_(cluster_moves),
          sweeps_per_round_(sweeps_per_round) {
        if (betas_.size() < 2) throw InputError("pt-icm ladder needs at least two betas");
        for (std::size_t k = 1; k < betas_.size(); ++k)
            if (!(betas_[k] > betas_[k - 1])) throw InputError("pt-icm ladder must be strictly increasing");
        if (!(betas_.front() > 0.0)) throw InputError("pt-icm betas must be positive");
        for (auto& stack : stacks_) {
            stack.reserve(betas_.size());
            for (std::size_t r = 0; r < betas_.size(); ++r)
                stack.emplace_back(model, random_configuration(model.size(), rng_));
        }
        stats_.swap_attempts.assign(betas_.size() - 1, 0);
        stats_.swap_accepts.assign(betas_.size() - 1, 0);
        pair_order_.resize(betas_.size() - 1);
        std::iota(pair_order_.begin(), pair_order_.end(), std::size_t{0});
        overlap_.resize(model.size());
        in_cluster_.assign(model.size(), 0);
    }

    void set_icm_observer(IcmObserver observer) { observer_ = std::move(observer); }

    const std::vector<double>& betas() const { return betas_; }
    const PtStatistics& statistics() const { return stats_; }
    const SpinState& replica(std::size_t stack, std::size_t rung) const { return stacks_[stack][rung]; }

    void round() {
        for (auto& stack : stacks_)
            for (std::size_t r = 0; r < betas_.size(); ++r)
                for (std::uint64_t s = 0; s < sweeps_per_round_; ++s) metropolis_sweep(stack[r], betas_[r], rng_);
        for (auto& stack : stacks_) swap_pass(stack);
        if (cluster_moves_) {
            for (std::size_t r = 0; r < betas_.size(); ++r)
                if (betas_[r] > 1.0) cluster_move(r);
        }
        if (++rounds_ % 256 == 0) {
            for (auto& stack : stacks_)
                for (auto& state : stack) state.recompute();
        }
    }

    /// Lowest-energy replica across both stacks (incremental energies).
    const SpinState& lowest() const {
        const SpinState* best = &stacks_[0][0];
        for (const auto& stack : stacks_)
            for (const auto& state : stack)
                if (state.energy() < best->energy()) best = &state;
        return *best;
    }

  private:
    void swap_pass(std::vector<SpinState>& stack) {
        rng_.shuffle(pair_order_.begin(), pair_order_.end());
        for (std::size_t k : pair_order_) {
            ++stats_.swap_attempts[k];
            const double p = swap_probability(betas_[k], stack[k].energy(), betas_[k + 1], stack[k + 1].energy());
            if (p >= 1.0 || rng_.uniform() < p) {
                std::swap(stack[k], stack[k + 1]);
                ++stats_.swap_accepts[k];
            }
        }
    }

    void cluster_move(std::size_t rung) {
        SpinState& a = stacks_[0][rung];
        SpinState& b = stacks_[1][rung];
        const std::size_t n = model_->size();
        std::vector<Site> disagree;
        for (Site i = 0; i < n; ++i) {
            overlap_[i] = static_cast<std::int8_t>(a.config()[i] * b.config()[i]);
            if (overlap_[i] < 0) disagree.push_back(i);
        }
        if (disagree.empty()) return;

        double before = 0.0;
        std::vector<std::int8_t> overlap_before;
        if (observer_) {
            before = energy(*model_, a.config()) + energy(*model_, b.config());
            overlap_before = overlap_;
        }

        const Site seed_site = disagree[rng_.below(disagree.size())];
        cluster_.clear();
        cluster_.push_back(seed_site);
        in_cluster_[seed_site] = 1;
        for (std::size_t head = 0; head < cluster_.size(); ++head) {
            for (const auto& nb : model_->neighbors(cluster_[head])) {
                if (nb.coupling == 0.0 || in_cluster_[nb.site] || overlap_[nb.site] > 0) continue;
                in_cluster_[nb.site] = 1;
                cluster_.push_back(nb.site);
            }
        }
        for (Site i : cluster_) {
            a.flip(i);
            b.flip(i);
            in_cluster_[i] = 0;
        }
        ++stats_.icm_moves;

        if (observer_) {
            bool preserved = true;
            for (Site i = 0; i < n; ++i)
                if (a.config()[i] * b.config()[i] != overlap_before[i]) preserved = false;
            const double after = energy(*model_, a.config()) + energy(*model_, b.config());
            observer_({rung, betas_[rung], cluster_.size(), preserved, before, after});
        }
    }

    const IsingModel* model_;
    std::vector<double> betas_;
    Rng rng_;
    bool cluster_moves_;
    std::uint64_t sweeps_per_round_;
    std::array<std::vector<SpinState>, 2> stacks_;
    PtStatistics stats_;
    std::vector<std::size_t> pair_order_;
    std::vector<std::int8_t> overlap_;
    std::vector<std::uint8_t> in_cluster_;
    std::vector<Site> cluster_;
    std::uint64_t rounds_ = 0;
    IcmObserver observer_;
};

struct PtIcmParams {
    std::vector<double> betas = default_betas();
    std::uint64_t rounds = 1000;
    std::uint64_t restarts = 8;
    std::size_t workers = default_workers();
    std::optional<double> time_limit_s;
    /// Receives every cluster move of every restart; set only for auditing.
    ParallelTempering::IcmObserver icm_observer;
};

namespace detail {

inline SolveTrace pt_icm_member(const IsingModel& model, const PtIcmParams& params, std::uint64_t seed,
                                const Stopwatch& clock) {
    TraceRecorder recorder("pt-icm", nlohmann::json::object(), seed, clock);
    ParallelTempering pt(model, params.betas, seed);
    if (params.icm_observer) pt.set_icm_observer(params.icm_observer);
    for (std::uint64_t r = 0; r < params.rounds; ++r) {
        pt.round();
        const auto& candidate = pt.lowest();
        if (candidate.energy() < recorder.best_energy() - kEnergyTolerance)
            recorder.offer(energy(model, candidate.config()), candidate.config());
        if (params.time_limit_s && clock.seconds() >= *params.time_limit_s) break;
    }
    return std::move(recorder).finish();
}

}  // namespace detail

/// Parallel tempering with isoenergetic cluster moves, best over `restarts` parallel runs.
inline SolveTrace pt_icm(const IsingModel& model, const PtIcmParams& params, std::uint64_t seed) {
    if (params.betas.size() != kReplicaCount)
        throw InputError("pt-icm ladder must hold " + std::to_string(kReplicaCount) + " betas, got " +
                         std::to_string(params.betas.size()));
    for (std::size_t k = 1; k < params.betas.size(); ++k)
        if (!(params.betas[k] > params.betas[k - 1])) throw InputError("pt-icm ladder must be sorted ascending");
    if (params.rounds == 0) throw InputError("pt-icm needs rounds >= 1");
    nlohmann::json snapshot = {{"rounds", params.rounds}, {"restarts", params.restarts}};
    if (params.time_limit_s) snapshot["time_limit"] = *params.time_limit_s;
    // A shared observer is not thread-safe; audit runs stay on one worker.
    const std::size_t workers = params.icm_observer ? 1 : params.workers;
    return run_ensemble("pt-icm", snapshot, seed, params.restarts, workers,
                        [&](std::uint64_t member_seed, const Stopwatch& clock) {
                            return detail::pt_icm_member(model, params, member_seed, clock);
                        });
}

struct LadderTuning {
    std::uint64_t iterations = 12;
    std::uint64_t rounds_per_iteration = 200;
    std::uint64_t burn_in_rounds = 100;
    double damping = 0.5;
};

/**
 * Feedback tuning of a fixed-endpoint ladder toward uniform neighbour swap
 * acceptance. Each gap's cost sqrt(-ln A_k) grows roughly linearly with its
 * width, so rungs are moved to equalise the cumulative cost; moves are damped.
 */
inline std::vector<double> tune_betas(const IsingModel& model, std::uint64_t seed,
                                      const LadderTuning& tuning = {}, double low = kLadderLow,
                                      double high = kLadderHigh, std::size_t count = kReplicaCount) {
    auto ladder = geometric_ladder(low, high, count);
    for (std::uint64_t it = 0; it < tuning.iterations; ++it) {
        ParallelTempering pt(model, ladder, derive_seed(seed, it), /*cluster_moves=*/false);
        for (std::uint64_t r = 0; r < tuning.burn_in_rounds; ++r) pt.round();
        const auto warm = pt.statistics();
        for (std::uint64_t r = 0; r < tuning.rounds_per_iteration; ++r) pt.round();
        const auto& stats = pt.statistics();

        std::vector<double> cumulative(count, 0.0);
        for (std::size_t k = 0; k + 1 < count; ++k) {
            const auto attempts = stats.swap_attempts[k] - warm.swap_attempts[k];
            const auto accepts = stats.swap_accepts[k] - warm.swap_accepts[k];
            const double rate = std::clamp((static_cast<double>(accepts) + 0.5) / (static_cast<double>(attempts) + 1.0),
                                           1e-4, 0.9999);
            cumulative[k + 1] = cumulative[k] + std::sqrt(-std::log(rate));
        }
        const double total = cumulative.back();
        std::vector<double> next(count);
        next.front() = low;
        next.back() = high;
        std::size_t seg = 0;
        for (std::size_t r = 1; r + 1 < count; ++r) {
            const double target = total * static_cast<double>(r) / static_cast<double>(count - 1);
            while (seg + 1 < count - 1 && cumulative[seg + 1] < target) ++seg;
            const double span = cumulative[seg + 1] - cumulative[seg];
            const double t = span > 0.0 ? (target - cumulative[seg]) / span : 0.0;
            const double proposed = ladder[seg] + t * (ladder[seg + 1] - ladder[seg]);
            next[r] = tuning.damping * proposed + (1.0 - tuning.damping) * ladder[r];
        }
        for (std::size_t r = 1; r < count; ++r)
            next[r] = std::max(next[r], std::nextafter(next[r - 1], high));
        ladder = std::move(next);
    }
    return ladder;
}

}  // namespace qabench

#endif  // QABENCH_PT_ICM_HPP_INCLUDED
