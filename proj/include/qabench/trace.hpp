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

#ifndef QABENCH_TRACE_HPP_INCLUDED
#define QABENCH_TRACE_HPP_INCLUDED

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qabench/ising.hpp"

namespace qabench {

struct TraceEvent {
    double elapsed_s;
    double energy;
};

/// Best-so-far history of one solver run.
struct SolveTrace {
    std::string solver;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::vector<TraceEvent> events;
    SpinConfiguration best;

    double best_energy() const {
        return events.empty() ? std::numeric_limits<double>::infinity() : events.back().energy;
    }
    double elapsed_s() const { return events.empty() ? 0.0 : events.back().elapsed_s; }
};

/**
 * Wall-clock and/or structural limits. Solvers read the structural field
 * that matches their unit of work (restarts for SCD and Glauber, reads for
 * tabu and SA, sweeps per read for SA).
 */
struct SolverBudget {
    std::optional<double> time_limit_s;
    std::optional<std::uint64_t> sweeps;
    std::optional<std::uint64_t> reads;
    std::optional<std::uint64_t> restarts;

    bool any() const { return time_limit_s || sweeps || reads || restarts; }
};

class Stopwatch {
  public:
    using Clock = std::chrono::steady_clock;

    Stopwatch() : start_(Clock::now()) {}
    explicit Stopwatch(Clock::time_point start) : start_(start) {}

    double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }
    Clock::time_point start() const { return start_; }

  private:
    Clock::time_point start_;
};

/// Appends an event whenever a strictly better configuration is offered.
class TraceRecorder {
  public:
    TraceRecorder(std::string solver, nlohmann::json params, std::uint64_t seed,
                  Stopwatch clock = {})
        : clock_(clock) {
        trace_.solver = std::move(solver);
        trace_.params = std::move(params);
        trace_.seed = seed;
    }

    double best_energy() const { return best_; }
    const Stopwatch& clock() const { return clock_; }

    bool offer(double energy, const SpinConfiguration& config) {
        if (!(energy < best_)) return false;
        best_ = energy;
        trace_.best = config;
        trace_.events.push_back({clock_.seconds(), energy});
        return true;
    }

    /// Closes the trace with a final event stamped at the end of the run.
    SolveTrace finish() && {
        if (!trace_.events.empty()) trace_.events.push_back({clock_.seconds(), best_});
        return std::move(trace_);
    }

  private:
    Stopwatch clock_;
    double best_ = std::numeric_limits<double>::infinity();
    SolveTrace trace_;
};

/// Shortest decimal that round-trips.
inline std::string format_double(double v) {
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
    return std::string(buffer, end);
}

/// Canonical "key=value;key=value" form of a params object, keys sorted.
inline std::string param_key(const nlohmann::json& params) {
    std::string key;
    for (auto it = params.begin(); it != params.end(); ++it) {
        if (!key.empty()) key += ';';
        key += it.key();
        key += '=';
        auto value = it->is_string() ? it->get<std::string>() : it->dump();
        std::replace(value.begin(), value.end(), ',', '|');
        key += value;
    }
    return key;
}

inline constexpr const char* kTraceCsvHeader = "solver,instance,seed,param_key,elapsed_s,best_energy";

inline void write_trace_csv(std::ostream& out, const SolveTrace& trace, const std::string& instance,
                            bool header = true) {
    if (header) out << kTraceCsvHeader << '\n';
    const auto key = param_key(trace.params);
    for (const auto& e : trace.events) {
        out << trace.solver << ',' << instance << ',' << trace.seed << ',' << key << ','
            << format_double(e.elapsed_s) << ',' << format_double(e.energy) << '\n';
    }
}

}  // namespace qabench

#endif  // QABENCH_TRACE_HPP_INCLUDED
