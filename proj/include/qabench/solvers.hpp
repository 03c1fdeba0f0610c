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

#ifndef QABENCH_SOLVERS_HPP_INCLUDED
#define QABENCH_SOLVERS_HPP_INCLUDED

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "qabench/annealing.hpp"
#include "qabench/local_search.hpp"
#include "qabench/min_sum.hpp"
#include "qabench/pt_icm.hpp"
#include "qabench/pt_ladder.hpp"
#include "qabench/svmc.hpp"

namespace qabench {

inline const std::vector<std::string>& solver_names() {
    static const std::vector<std::string> names = {"scd", "glauber", "tabu", "sa", "svmc", "pt-icm", "min-sum"};
    return names;
}

/// Maps aliases ("gd" for glauber) to canonical names; unknown names throw.
inline std::string canonical_solver(const std::string& name) {
    if (name == "gd") return "glauber";
    const auto& names = solver_names();
    if (std::find(names.begin(), names.end(), name) != names.end()) return name;
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw InputError("unknown solver \"" + name + "\" (valid: " + list + ", gd)");
}

/// Execution settings that do not change a run's result.
struct SolveOptions {
    std::optional<std::size_t> workers;
};

namespace detail {

class ParamReader {
  public:
    ParamReader(const nlohmann::json& params, std::string solver, std::set<std::string> allowed)
        : params_(params), solver_(std::move(solver)) {
        if (!params_.is_object()) throw InputError(solver_ + " params must be a JSON object");
        for (auto it = params_.begin(); it != params_.end(); ++it) {
            if (!allowed.count(it.key())) {
                std::string list;
                for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
                throw InputError(solver_ + " does not accept \"" + it.key() + "\" (accepted: " + list + ")");
            }
        }
    }

    std::optional<std::uint64_t> count(const char* key) const {
        if (!params_.contains(key)) return std::nullopt;
        const auto& v = params_[key];
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
            throw InputError(solver_ + ": \"" + key + "\" must be a non-negative integer");
        return v.get<std::uint64_t>();
    }

    std::optional<double> real(const char* key) const {
        if (!params_.contains(key)) return std::nullopt;
        const auto& v = params_[key];
        if (!v.is_number()) throw InputError(solver_ + ": \"" + key + "\" must be a number");
        const double x = v.get<double>();
        if (!(x > 0.0)) throw InputError(solver_ + ": \"" + key + "\" must be positive");
        return x;
    }

    const nlohmann::json* raw(const char* key) const { return params_.contains(key) ? &params_[key] : nullptr; }

  private:
    const nlohmann::json& params_;
    std::string solver_;
};

inline SolverBudget read_budget(const ParamReader& p) {
    SolverBudget b;
    b.time_limit_s = p.real("time_limit");
    b.restarts = p.count("restarts");
    return b;
}

inline std::vector<double> read_betas(const ParamReader& p) {
    const auto* v = p.raw("betas");
    if (!v || (v->is_string() && v->get<std::string>() == "default")) return default_betas();
    if (v->is_string() && v->get<std::string>() == "tuned") return tuned_betas();
    if (v->is_array()) {
        std::vector<double> out;
        for (const auto& b : *v) {
            if (!b.is_number()) throw InputError("pt-icm: betas must be numbers");
            out.push_back(b.get<double>());
        }
        return out;
    }
    throw InputError("pt-icm: betas must be \"default\", \"tuned\" or an array of 64 numbers");
}

}  // namespace detail

using SolverFn = std::function<SolveTrace(const IsingModel&, std::uint64_t seed)>;

/**
 * Binds a solver to its settings. `params` is a flat JSON object holding the
 * budget and options, for example {"reads": 100, "sweeps": 1000} for sa.
 * Everything is validated here, before any model is seen.
 */
inline SolverFn make_solver(const std::string& name, const nlohmann::json& params, const SolveOptions& options = {}) {
    const auto solver = canonical_solver(name);
    if (solver == "scd" || solver == "glauber") {
        detail::ParamReader p(params, solver, {"restarts", "time_limit"});
        const auto budget = detail::read_budget(p);
        if (!budget.restarts && !budget.time_limit_s)
            throw InputError(solver + " needs \"restarts\" or \"time_limit\"");
        if (solver == "scd") return [budget](const IsingModel& m, std::uint64_t seed) { return scd(m, budget, seed); };
        return [budget](const IsingModel& m, std::uint64_t seed) { return glauber(m, budget, seed); };
    }
    if (solver == "tabu") {
        detail::ParamReader p(params, solver, {"reads", "tenure", "read_timeout", "max_stall", "time_limit"});
        TabuParams t;
        t.reads = p.count("reads").value_or(t.reads);
        t.tenure = p.count("tenure").value_or(t.tenure);
        t.read_timeout_s = p.real("read_timeout").value_or(t.read_timeout_s);
        t.max_stall = p.count("max_stall").value_or(t.max_stall);
        t.time_limit_s = p.real("time_limit");
        return [t](const IsingModel& m, std::uint64_t seed) { return tabu(m, t, seed); };
    }
    if (solver == "sa") {
        detail::ParamReader p(params, solver, {"reads", "sweeps", "beta_hot", "beta_cold", "time_limit"});
        AnnealParams a;
        a.reads = p.count("reads").value_or(a.reads);
        a.sweeps = p.count("sweeps").value_or(a.sweeps);
        a.beta_hot = p.real("beta_hot");
        a.beta_cold = p.real("beta_cold");
        a.time_limit_s = p.real("time_limit");
        return [a](const IsingModel& m, std::uint64_t seed) { return simulated_annealing(m, a, seed); };
    }
    if (solver == "svmc") {
        detail::ParamReader p(params, solver, {"steps", "sweeps_per_step", "restarts", "beta", "schedule"});
        SvmcParams s;
        s.steps = p.count("steps").value_or(s.steps);
        s.sweeps_per_step = p.count("sweeps_per_step").value_or(s.sweeps_per_step);
        s.restarts = p.count("restarts").value_or(s.restarts);
        s.beta = p.real("beta").value_or(s.beta);
        if (options.workers) s.workers = *options.workers;
        if (s.steps == 0 || s.sweeps_per_step == 0 || s.restarts == 0)
            throw InputError("svmc needs steps, sweeps_per_step and restarts >= 1");
        const auto* path = p.raw("schedule");
        if (path && !path->is_string()) throw InputError("svmc: schedule must be a file path");
        auto schedule = path ? read_schedule(path->get<std::string>()) : ScheduleTable::fallback();
        return [s, schedule = std::move(schedule)](const IsingModel& m, std::uint64_t seed) {
            return svmc(m, schedule, s, seed);
        };
    }
    if (solver == "pt-icm") {
        detail::ParamReader p(params, solver, {"betas", "rounds", "restarts", "time_limit"});
        PtIcmParams pt;
        pt.betas = detail::read_betas(p);
        pt.rounds = p.count("rounds").value_or(pt.rounds);
        pt.restarts = p.count("restarts").value_or(pt.restarts);
        pt.time_limit_s = p.real("time_limit");
        if (options.workers) pt.workers = *options.workers;
        if (pt.betas.size() != kReplicaCount)
            throw InputError("pt-icm ladder must hold " + std::to_string(kReplicaCount) + " betas");
        if (pt.rounds == 0 || pt.restarts == 0) throw InputError("pt-icm needs rounds and restarts >= 1");
        return [pt](const IsingModel& m, std::uint64_t seed) { return pt_icm(m, pt, seed); };
    }
    detail::ParamReader p(params, solver, {"iterations", "tolerance", "time_limit"});
    MinSumParams ms;
    ms.max_iterations = p.count("iterations").value_or(ms.max_iterations);
    ms.tolerance = p.real("tolerance").value_or(ms.tolerance);
    ms.time_limit_s = p.real("time_limit");
    return [ms](const IsingModel& m, std::uint64_t seed) { return min_sum(m, ms, seed); };
}

inline SolveTrace solve(const IsingModel& model, const std::string& name, const nlohmann::json& params,
                        std::uint64_t seed, const SolveOptions& options = {}) {
    return make_solver(name, params, options)(model, seed);
}

}  // namespace qabench

#endif  // QABENCH_SOLVERS_HPP_INCLUDED
