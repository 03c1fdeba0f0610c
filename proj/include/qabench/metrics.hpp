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

#ifndef QABENCH_METRICS_HPP_INCLUDED
#define QABENCH_METRICS_HPP_INCLUDED

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qabench/ising.hpp"
#include "qabench/trace.hpp"

namespace qabench {

/// Percent relative difference 100 |achieved - best_known| / |best_known|.
inline double relative_difference(double best_known, double achieved) {
    if (best_known == 0.0) throw InputError("relative difference is undefined for a zero reference energy");
    return 100.0 * std::abs(achieved - best_known) / std::abs(best_known);
}

/**
 * Earliest time at which a best-so-far series reaches `target`.
 *
 * An event exactly at the target gives its own time. Otherwise the first
 * event below the target and the event before it bracket the crossing and
 * the time is interpolated linearly in energy between them. A first event
 * already below the target has no predecessor and gives its own time.
 */
inline std::optional<double> time_to_match(std::span<const TraceEvent> events, double target) {
    for (std::size_t k = 0; k < events.size(); ++k) {
        const auto& e = events[k];
        if (e.energy == target) return e.elapsed_s;
        if (e.energy < target) {
            if (k == 0) return e.elapsed_s;
            const auto& prev = events[k - 1];
            const double t = (prev.energy - target) / (prev.energy - e.energy);
            return prev.elapsed_s + t * (e.elapsed_s - prev.elapsed_s);
        }
    }
    return std::nullopt;
}

inline std::optional<double> time_to_match(const SolveTrace& trace, double target) {
    return time_to_match(std::span<const TraceEvent>(trace.events), target);
}

struct MeanError {
    double mean;
    /// Sample standard deviation over sqrt(n); zero for a single value.
    double stderr_;
};

inline MeanError mean_and_stderr(std::span<const double> values) {
    if (values.empty()) throw InputError("mean of an empty sample");
    double sum = 0.0;
    for (double v : values) sum += v;
    const double n = static_cast<double>(values.size());
    const double mean = sum / n;
    if (values.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

/// Welford's single-pass mean and variance.
class RunningStats {
  public:
    void push(double x) {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }

    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1); }
    double stderr_() const { return n_ < 2 ? 0.0 : std::sqrt(variance() / static_cast<double>(n_)); }

  private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Per-instance time-to-match, keyed by instance name.
using MatchTimes = std::map<std::string, std::optional<double>>;

struct RatioSummary {
    std::size_t ensemble_size = 0;
    std::size_t matched = 0;
    /// Present only when every instance matched.
    std::optional<MeanError> ratio;
    std::map<std::string, std::optional<double>> per_instance;
};

/**
 * Run-time ratios solver / reference over one ensemble. Instances the
 * solver never matched carry no ratio, and the ensemble mean is withheld
 * unless all of them matched.
 */
inline RatioSummary runtime_ratios(const MatchTimes& reference, const MatchTimes& solver) {
    if (reference.size() != solver.size())
        throw InputError("instance sets differ: reference has " + std::to_string(reference.size()) +
                         ", solver has " + std::to_string(solver.size()));
    RatioSummary out;
    out.ensemble_size = reference.size();
    std::vector<double> ratios;
    for (const auto& [name, ref_time] : reference) {
        auto it = solver.find(name);
        if (it == solver.end()) throw InputError("instance sets differ: solver has no entry for " + name);
        if (!ref_time) throw InputError("reference has no time for " + name);
        if (!(*ref_time > 0.0)) throw InputError("reference time for " + name + " is not positive");
        std::optional<double> ratio;
        if (it->second) {
            ratio = *it->second / *ref_time;
            ratios.push_back(*ratio);
        }
        out.per_instance[name] = ratio;
    }
    out.matched = ratios.size();
    if (out.matched == out.ensemble_size && !ratios.empty()) out.ratio = mean_and_stderr(ratios);
    return out;
}

}  // namespace qabench

#endif  // QABENCH_METRICS_HPP_INCLUDED
