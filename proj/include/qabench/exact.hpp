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

#ifndef QABENCH_EXACT_HPP_INCLUDED
#define QABENCH_EXACT_HPP_INCLUDED

#include <bit>
#include <cmath>
#include <cstdint>

#include "qabench/local_search.hpp"

namespace qabench {

inline constexpr std::size_t kBruteForceLimit = 30;

struct OracleResult {
    double energy;
    /// Lexicographically smallest minimiser (-1 before +1, site 0 first).
    SpinConfiguration config;
    std::uint64_t count;
};

/**
 * Exhaustive minimisation over all 2^n configurations in Gray-code order.
 * Energies within 1e-9 (relative to max(1, |E|)) of the minimum count as
 * ties.
 */
inline OracleResult brute_force(const IsingModel& model) {
    const std::size_t n = model.size();
    if (n > kBruteForceLimit) {
        throw InputError("brute force refuses n = " + std::to_string(n) + " (limit " +
                         std::to_string(kBruteForceLimit) + ")");
    }
    constexpr double kTieTolerance = 1e-9;
    SpinState state(model, SpinConfiguration(n, -1));
    OracleResult result{state.energy(), state.config(), 1};
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t step = 1; step < total; ++step) {
        state.flip(static_cast<Site>(std::countr_zero(step)));
        if ((step & 0xFFFF) == 0) state.recompute();
        const double e = state.energy();
        const double tol = kTieTolerance * std::max(1.0, std::abs(result.energy));
        if (e < result.energy - tol) {
            result = {e, state.config(), 1};
        } else if (e <= result.energy + tol) {
            ++result.count;
            if (state.config() < result.config) result.config = state.config();
        }
    }
    result.energy = energy(model, result.config);
    return result;
}

}  // namespace qabench

#endif  // QABENCH_EXACT_HPP_INCLUDED
