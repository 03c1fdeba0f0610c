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

#ifndef QABENCH_ENSEMBLE_HPP_INCLUDED
#define QABENCH_ENSEMBLE_HPP_INCLUDED

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

#include "qabench/random.hpp"
#include "qabench/trace.hpp"

namespace qabench {

inline std::size_t default_workers() {
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/**
 * Parallel-restart protocol: `members` independent runs with seeds
 * derive_seed(seed, i), executed on up to `workers` threads and sharing one
 * clock. The merged trace reports the lowest energy over all members; ties
 * go to the lowest member index.
 *
 * `run(member_seed, clock)` must return the member's trace with times
 * measured on `clock`.
 */
template <typename Run>
SolveTrace run_ensemble(std::string solver, nlohmann::json params, std::uint64_t seed,
                        std::size_t members, std::size_t workers, Run&& run) {
    if (members == 0) throw InputError(solver + " needs at least one restart");
    const Stopwatch clock;
    std::vector<SolveTrace> traces(members);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= members) return;
            try {
                traces[i] = run(derive_seed(seed, i), clock);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(workers, 1, members);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    SolveTrace merged;
    merged.solver = std::move(solver);
    merged.params = std::move(params);
    merged.seed = seed;

    struct Tagged {
        TraceEvent event;
        std::size_t member;
    };
    std::vector<Tagged> all;
    std::size_t winner = 0;
    for (std::size_t i = 0; i < members; ++i) {
        for (const auto& e : traces[i].events) all.push_back({e, i});
        if (traces[i].best_energy() < traces[winner].best_energy()) winner = i;
    }
    std::stable_sort(all.begin(), all.end(), [](const Tagged& a, const Tagged& b) {
        return a.event.elapsed_s < b.event.elapsed_s;
    });
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : all) {
        if (t.event.energy < best) {
            best = t.event.energy;
            merged.events.push_back(t.event);
        }
    }
    merged.best = traces[winner].best;
    if (!merged.events.empty()) merged.events.push_back({clock.seconds(), traces[winner].best_energy()});
    return merged;
}

}  // namespace qabench

#endif  // QABENCH_ENSEMBLE_HPP_INCLUDED
