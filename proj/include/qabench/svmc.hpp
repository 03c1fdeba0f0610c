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

#ifndef QABENCH_SVMC_HPP_INCLUDED
#define QABENCH_SVMC_HPP_INCLUDED

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qabench/ensemble.hpp"
#include "qabench/instance_io.hpp"
#include "qabench/local_search.hpp"

namespace qabench {

struct ScheduleRow {
    double s;
    double a_ghz;
    double b_ghz;
};

/// Piecewise-linear annealing functions A(s), B(s) sampled on [0, 1].
class ScheduleTable {
  public:
    explicit ScheduleTable(std::vector<ScheduleRow> rows) : rows_(std::move(rows)) {
        if (rows_.size() < 2) throw InputError("schedule needs at least two rows");
        for (std::size_t k = 1; k < rows_.size(); ++k) {
            if (!(rows_[k].s > rows_[k - 1].s))
                throw InputError("schedule s values must be strictly increasing (row " + std::to_string(k) + ")");
        }
        if (rows_.front().s != 0.0 || rows_.back().s != 1.0)
            throw InputError("schedule must cover both endpoints s = 0 and s = 1");
    }

    /// Linear ramps A: 6 -> 0 GHz and B: 0 -> 12 GHz.
    static ScheduleTable fallback() { return ScheduleTable({{0.0, 6.0, 0.0}, {1.0, 0.0, 12.0}}); }

    const std::vector<ScheduleRow>& rows() const { return rows_; }

    ScheduleRow at(double s) const {
        if (s <= rows_.front().s) return rows_.front();
        if (s >= rows_.back().s) return rows_.back();
        auto hi = std::upper_bound(rows_.begin(), rows_.end(), s,
                                   [](double v, const ScheduleRow& r) { return v < r.s; });
        auto lo = hi - 1;
        const double t = (s - lo->s) / (hi->s - lo->s);
        return {s, lo->a_ghz + t * (hi->a_ghz - lo->a_ghz), lo->b_ghz + t * (hi->b_ghz - lo->b_ghz)};
    }

    /// Rows where A increases or B decreases.
    std::vector<std::string> monotonicity_warnings() const {
        std::vector<std::string> out;
        for (std::size_t k = 1; k < rows_.size(); ++k) {
            if (rows_[k].a_ghz > rows_[k - 1].a_ghz)
                out.push_back("A increases between s=" + format_double(rows_[k - 1].s) + " and s=" + format_double(rows_[k].s));
            if (rows_[k].b_ghz < rows_[k - 1].b_ghz)
                out.push_back("B decreases between s=" + format_double(rows_[k - 1].s) + " and s=" + format_double(rows_[k].s));
        }
        return out;
    }

  private:
    std::vector<ScheduleRow> rows_;
};

/// Parses a "s,A_GHz,B_GHz" CSV with rows sorted by s.
inline ScheduleTable parse_schedule_csv(const std::string& text, const std::string& source = "schedule") {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<ScheduleRow> rows;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "s,A_GHz,B_GHz")
                throw ParseError(source + ":" + std::to_string(line_no) + ": expected header s,A_GHz,B_GHz");
            header_seen = true;
            continue;
        }
        std::istringstream cells(line);
        std::string cell;
        double values[3];
        int count = 0;
        while (std::getline(cells, cell, ',')) {
            if (count == 3) throw ParseError(source + ":" + std::to_string(line_no) + ": too many columns");
            try {
                std::size_t used = 0;
                values[count] = std::stod(cell, &used);
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw ParseError(source + ":" + std::to_string(line_no) + ": not a number: \"" + cell + "\"");
            }
            ++count;
        }
        if (count != 3) throw ParseError(source + ":" + std::to_string(line_no) + ": expected 3 columns");
        rows.push_back({values[0], values[1], values[2]});
    }
    if (!header_seen) throw ParseError(source + ": empty schedule");
    try {
        return ScheduleTable(std::move(rows));
    } catch (const InputError& e) {
        throw ParseError(source + ": " + e.what());
    }
}

inline ScheduleTable read_schedule(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_schedule_csv(buffer.str(), path.string());
}

/// Rotor angles, each in [0, pi).
struct RotorState {
    std::vector<double> theta;
};

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// cos(theta) > 0 -> +1, cos(theta) < 0 -> -1, exactly pi/2 -> fair coin.
inline std::int8_t project_angle(double theta, Rng& rng) {
    if (theta < kHalfPi) return 1;
    if (theta > kHalfPi) return -1;
    return rng.spin();
}

inline SpinConfiguration project(const RotorState& rotors, Rng& rng) {
    std::vector<std::int8_t> s(rotors.theta.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = project_angle(rotors.theta[i], rng);
    return SpinConfiguration(std::move(s));
}

/// E(theta, s) = -A sum sin(theta_i) + B (sum h_i cos(theta_i) + sum J_ij cos(theta_i) cos(theta_j)).
inline double rotor_energy(const IsingModel& model, const RotorState& rotors, double a_ghz, double b_ghz) {
    double transverse = 0.0;
    double ising = 0.0;
    for (Site i = 0; i < model.size(); ++i) {
        transverse += std::sin(rotors.theta[i]);
        ising += model.field(i) * std::cos(rotors.theta[i]);
    }
    for (const auto& c : model.couplings())
        ising += c.value * std::cos(rotors.theta[c.i]) * std::cos(rotors.theta[c.j]);
    return -a_ghz * transverse + b_ghz * ising;
}

struct SvmcParams {
    std::uint64_t steps = 1000;
    std::uint64_t sweeps_per_step = 1;
    std::uint64_t restarts = 8;
    /// Inverse temperature in GHz^-1 (12 mK).
    double beta = 3.9983;
    std::size_t workers = default_workers();
};

/**
 * One spin-vector Monte Carlo anneal. Rotors start at pi/2; at each
 * s_k = k / steps (k = 1..steps) every rotor receives `sweeps_per_step`
 * Metropolis-Hastings proposals of a uniform new angle in [0, pi).
 */
inline RotorState svmc_anneal(const IsingModel& model, const ScheduleTable& schedule,
                              const SvmcParams& params, Rng& rng) {
    if (params.steps == 0) throw InputError("svmc needs steps >= 1");
    const std::size_t n = model.size();
    RotorState rotors{std::vector<double>(n, kHalfPi)};
    std::vector<double> cosine(n, std::cos(kHalfPi));
    std::vector<double> sine(n, 1.0);
    // z_field_i = h_i + sum_j J_ij cos(theta_j)
    std::vector<double> z_field(n);
    for (Site i = 0; i < n; ++i) {
        z_field[i] = model.field(i);
        for (const auto& nb : model.neighbors(i)) z_field[i] += nb.coupling * cosine[nb.site];
    }
    const double below_pi = std::nextafter(std::numbers::pi, 0.0);
    for (std::uint64_t k = 1; k <= params.steps; ++k) {
        const auto row = schedule.at(static_cast<double>(k) / static_cast<double>(params.steps));
        for (std::uint64_t sweep = 0; sweep < params.sweeps_per_step; ++sweep) {
            for (Site i = 0; i < n; ++i) {
                const double proposal = std::min(std::numbers::pi * rng.uniform(), below_pi);
                const double c = std::cos(proposal);
                const double s = std::sin(proposal);
                const double delta = -row.a_ghz * (s - sine[i]) + row.b_ghz * z_field[i] * (c - cosine[i]);
                if (delta <= 0.0 || rng.uniform() < std::exp(-params.beta * delta)) {
                    const double change = c - cosine[i];
                    for (const auto& nb : model.neighbors(i)) z_field[nb.site] += nb.coupling * change;
                    rotors.theta[i] = proposal;
                    cosine[i] = c;
                    sine[i] = s;
                }
            }
        }
    }
    return rotors;
}

namespace detail {

inline SolveTrace svmc_member(const IsingModel& model, const ScheduleTable& schedule,
                              const SvmcParams& params, std::uint64_t seed, const Stopwatch& clock) {
    TraceRecorder recorder("svmc", nlohmann::json::object(), seed, clock);
    Rng rng(seed);
    const auto rotors = svmc_anneal(model, schedule, params, rng);
    const auto spins = project(rotors, rng);
    recorder.offer(energy(model, spins), spins);
    return std::move(recorder).finish();
}

}  // namespace detail

/// Best projected energy over `restarts` independent anneals run in parallel.
inline SolveTrace svmc(const IsingModel& model, const ScheduleTable& schedule, const SvmcParams& params,
                       std::uint64_t seed) {
    if (params.steps == 0 || params.sweeps_per_step == 0) throw InputError("svmc needs steps and sweeps-per-step >= 1");
    nlohmann::json snapshot = {{"steps", params.steps},
                               {"sweeps_per_step", params.sweeps_per_step},
                               {"restarts", params.restarts},
                               {"beta", params.beta}};
    return run_ensemble("svmc", snapshot, seed, params.restarts, params.workers,
                        [&](std::uint64_t member_seed, const Stopwatch& clock) {
                            return detail::svmc_member(model, schedule, params, member_seed, clock);
                        });
}

}  // namespace qabench

#endif  // QABENCH_SVMC_HPP_INCLUDED
