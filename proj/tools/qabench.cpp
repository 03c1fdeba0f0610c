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

// qabench command-line front end.
//
// Exit status: 0 success, 1 usage or invalid input, 2 runtime failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qabench.hpp"

namespace fs = std::filesystem;
using namespace qabench;

namespace {

/// Output directory when --out is absent.
fs::path default_out_dir() {
    if (const char* env = std::getenv("QABENCH_OUT_DIR"); env && *env) return env;
    return ".";
}

/// "7", "1,2,5" or "1..50".
std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    auto number = [&](const std::string& s) -> std::uint64_t {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(s, &used);
            if (used != s.size() || s.empty() || s[0] == '-') throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw InputError("bad seed \"" + s + "\" in \"" + text + "\"");
        }
    };
    if (auto dots = text.find(".."); dots != std::string::npos) {
        const auto lo = number(text.substr(0, dots));
        const auto hi = number(text.substr(dots + 2));
        if (hi < lo) throw InputError("empty seed range \"" + text + "\"");
        for (auto s = lo; s <= hi; ++s) out.push_back(s);
        return out;
    }
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) out.push_back(number(part));
    if (out.empty()) throw InputError("no seeds given");
    return out;
}

/// {"dead_nodes": [id, ...], "dead_edges": [[a, b], ...]}
PegasusMask read_mask(const fs::path& path) {
    const auto j = read_json_file(path);
    PegasusMask mask;
    try {
        for (const auto& v : j.value("dead_nodes", nlohmann::json::array())) mask.dead_nodes.insert(v.get<NodeId>());
        for (const auto& e : j.value("dead_edges", nlohmann::json::array())) {
            auto a = e.at(0).get<NodeId>(), b = e.at(1).get<NodeId>();
            mask.dead_edges.insert({std::min(a, b), std::max(a, b)});
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return mask;
}

std::string config_text(const SpinConfiguration& config) {
    std::string s;
    s.reserve(config.size());
    for (std::size_t i = 0; i < config.size(); ++i) s += config[i] > 0 ? '+' : config[i] < 0 ? '-' : '0';
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hardware-native Ising benchmarking workbench"};
    app.set_config("--config", "", "TOML/INI file with option values; command-line flags win");
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Sample CBFM or CBFM-P instances on Pegasus P_m");
    std::string family, seeds_text = "1";
    int size = 0;
    std::optional<std::string> gen_out, mask_path;
    gen->add_option("--family", family, "cbfm or cbfm-p")->required()->check(CLI::IsMember({"cbfm", "cbfm-p"}));
    gen->add_option("--size", size, "Pegasus size m")->required()->check(CLI::Range(2, 64));
    gen->add_option("--seeds", seeds_text, "Seed, list (1,2,3) or range (1..50)");
    gen->add_option("--out", gen_out, "Output directory");
    gen->add_option("--mask", mask_path, "JSON file with dead_nodes and dead_edges")->check(CLI::ExistingFile);

    // solve
    auto* sol = app.add_subcommand("solve", "Run one solver on one instance");
    std::string instance_path, solver;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> sweeps, reads, restarts, steps, sweeps_per_step, rounds, tenure, iterations, parallel;
    std::optional<double> time_limit;
    std::optional<std::string> schedule, betas, trace_path, solve_out;
    std::vector<std::string> solver_choices = solver_names();
    solver_choices.push_back("gd");
    sol->add_option("--instance", instance_path, "Instance JSON")->required()->check(CLI::ExistingFile);
    sol->add_option("--solver", solver, "Solver name")->required()->check(CLI::IsMember(solver_choices));
    sol->add_option("--seed", seed, "Seed for all solver randomness");
    sol->add_option("--sweeps", sweeps, "SA sweeps per read");
    sol->add_option("--reads", reads, "SA or tabu reads");
    sol->add_option("--restarts", restarts, "Restarts (scd, glauber, svmc, pt-icm)");
    sol->add_option("--steps", steps, "SVMC schedule steps");
    sol->add_option("--sweeps-per-step", sweeps_per_step, "SVMC sweeps per step");
    sol->add_option("--schedule", schedule, "SVMC schedule CSV (s,A_GHz,B_GHz)")->check(CLI::ExistingFile);
    sol->add_option("--betas", betas, "PT-ICM ladder: default or tuned")->check(CLI::IsMember({"default", "tuned"}));
    sol->add_option("--rounds", rounds, "PT-ICM rounds");
    sol->add_option("--tenure", tenure, "Tabu tenure");
    sol->add_option("--iterations", iterations, "Min-sum iteration cap");
    sol->add_option("--time-limit", time_limit, "Wall-clock limit in seconds");
    sol->add_option("--parallel", parallel, "Threads for restart ensembles");
    sol->add_option("--trace", trace_path, "Write the best-so-far trace CSV here");
    sol->add_option("--out", solve_out, "Write the result JSON here");

    // oracle
    auto* orc = app.add_subcommand("oracle", "Exact minimum by enumeration (n <= 30)");
    std::string oracle_instance;
    std::optional<std::string> oracle_out;
    orc->add_option("--instance", oracle_instance, "Instance JSON")->required()->check(CLI::ExistingFile);
    orc->add_option("--out", oracle_out, "Write the result JSON here");

    // export
    auto* exp = app.add_subcommand("export", "Write the QUBO as an LP file");
    std::string export_instance, format;
    std::optional<std::string> export_out;
    exp->add_option("--instance", export_instance, "Instance JSON")->required()->check(CLI::ExistingFile);
    exp->add_option("--format", format, "iqp (quadratic) or ilp (linearised)")
        ->required()
        ->check(CLI::IsMember({"iqp", "ilp"}));
    exp->add_option("--out", export_out, "Output LP file");

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "Run a solver x instance x budget grid");
    std::string grid_path;
    std::size_t workers = default_workers();
    std::optional<std::string> bench_out;
    bool verbose = false;
    bench->add_option("--grid", grid_path, "Grid JSON")->required()->check(CLI::ExistingFile);
    bench->add_option("--workers", workers, "Concurrent cells")->check(CLI::PositiveNumber);
    bench->add_option("--out", bench_out, "Result directory");
    bench->add_flag("--verbose", verbose, "Log every finished cell");

    // report
    auto* rep = app.add_subcommand("report", "Time-to-match run-time ratios from grid results");
    std::string results_dir, reference;
    std::optional<std::string> report_out, reference_file;
    std::vector<std::string> externals;
    rep->add_option("--results", results_dir, "Directory written by benchmark")->required()->check(CLI::ExistingDirectory);
    rep->add_option("--reference", reference, "Solver label that sets the targets")->required();
    rep->add_option("--reference-file", reference_file, "CSV instance,energy,elapsed_s replacing the reference")
        ->check(CLI::ExistingFile);
    rep->add_option("--external", externals, "name=file.csv with instance,energy,elapsed_s rows");
    rep->add_option("--out", report_out, "Report CSV");

    // topology
    auto* topo = app.add_subcommand("topology", "Write the Pegasus P_m adjacency as CSV");
    int topo_size = 0;
    std::optional<std::string> topo_out;
    topo->add_option("--size", topo_size, "Pegasus size m")->required()->check(CLI::Range(2, 64));
    topo->add_option("--out", topo_out, "Output CSV");

    // tune-betas
    auto* tune = app.add_subcommand("tune-betas", "Tune a 64-rung PT ladder on one instance");
    std::string tune_instance;
    std::uint64_t tune_seed = 1;
    std::optional<std::string> tune_out;
    tune->add_option("--instance", tune_instance, "Instance JSON")->required()->check(CLI::ExistingFile);
    tune->add_option("--seed", tune_seed, "Tuner seed");
    tune->add_option("--out", tune_out, "Write one beta per line here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*gen) {
            const auto out_dir = gen_out ? fs::path(*gen_out) : default_out_dir();
            const auto seeds = parse_seed_list(seeds_text);
            std::optional<PegasusMask> mask;
            if (mask_path) mask = read_mask(*mask_path);
            fs::create_directories(out_dir);
            for (auto s : seeds) {
                InstanceSpec spec{parse_family(family), size, s, mask};
                const auto model = generate(spec);
                const auto path = out_dir / (instance_basename(spec) + ".json");
                write_instance(model, path);
                std::cout << path.string() << " n=" << model.size() << " edges=" << model.couplings().size() << '\n';
            }
        } else if (*sol) {
            nlohmann::json params = nlohmann::json::object();
            if (sweeps) params["sweeps"] = *sweeps;
            if (reads) params["reads"] = *reads;
            if (restarts) params["restarts"] = *restarts;
            if (steps) params["steps"] = *steps;
            if (sweeps_per_step) params["sweeps_per_step"] = *sweeps_per_step;
            if (schedule) params["schedule"] = *schedule;
            if (betas) params["betas"] = *betas;
            if (rounds) params["rounds"] = *rounds;
            if (tenure) params["tenure"] = *tenure;
            if (iterations) params["iterations"] = *iterations;
            if (time_limit) params["time_limit"] = *time_limit;
            SolveOptions options;
            if (parallel) options.workers = static_cast<std::size_t>(*parallel);
            // Settings are validated before the instance is read.
            const auto fn = make_solver(solver, params, options);
            const auto model = read_instance(instance_path);
            const auto name = instance_name(model, instance_path);
            if (schedule) {
                for (const auto& w : read_schedule(*schedule).monotonicity_warnings())
                    std::cerr << "warning: " << w << '\n';
            }
            const auto trace = fn(model, seed);
            std::cout << "solver=" << trace.solver << " instance=" << name << " energy=" << format_double(trace.best_energy())
                      << " elapsed_s=" << format_double(trace.elapsed_s()) << '\n';
            if (trace_path) {
                std::ofstream out(*trace_path);
                if (!out) throw std::runtime_error("cannot write " + *trace_path);
                write_trace_csv(out, trace, name);
            }
            if (solve_out) {
                nlohmann::json j = {{"solver", trace.solver},
                                    {"instance", name},
                                    {"seed", trace.seed},
                                    {"params", trace.params},
                                    {"energy", trace.best_energy()},
                                    {"config", config_text(trace.best)},
                                    {"elapsed_s", trace.elapsed_s()}};
                write_text(j.dump(2) + "\n", *solve_out);
            }
        } else if (*orc) {
            const auto model = read_instance(oracle_instance);
            const auto result = brute_force(model);
            std::cout << "energy=" << format_double(result.energy) << " count=" << result.count
                      << " config=" << config_text(result.config) << '\n';
            if (oracle_out) {
                nlohmann::json j = {{"instance", instance_name(model, oracle_instance)},
                                    {"energy", result.energy},
                                    {"count", result.count},
                                    {"config", config_text(result.config)}};
                write_text(j.dump(2) + "\n", *oracle_out);
            }
        } else if (*exp) {
            const auto model = read_instance(export_instance);
            const auto out = export_out ? fs::path(*export_out)
                                        : default_out_dir() / (instance_name(model, export_instance) + "." + format + ".lp");
            const auto qubo = to_qubo(model);
            if (format == "iqp")
                export_iqp(qubo, out);
            else
                export_ilp(qubo, out);
            std::cout << out.string() << '\n';
        } else if (*bench) {
            const auto grid = read_grid(grid_path);
            const auto out_dir = bench_out ? fs::path(*bench_out) : default_out_dir() / "results";
            const auto summary = run_grid(grid, out_dir, workers, verbose ? &std::cerr : nullptr);
            std::cout << "cells=" << summary.cells << " executed=" << summary.executed << " skipped=" << summary.skipped
                      << " failed=" << summary.failed << '\n';
        } else if (*rep) {
            ReportInputs inputs;
            inputs.results = read_results_csv(fs::path(results_dir) / "results.csv");
            if (fs::exists(fs::path(results_dir) / "instances.csv"))
                inputs.instances = read_instances_csv(fs::path(results_dir) / "instances.csv");
            inputs.reference = reference;
            if (reference_file) inputs.reference_file = read_external_csv(*reference_file);
            for (const auto& e : externals) {
                const auto eq = e.find('=');
                if (eq == std::string::npos || eq == 0) throw InputError("--external expects name=file, got \"" + e + "\"");
                const auto label = e.substr(0, eq);
                check_csv_cell(label, "external solver name");
                inputs.external[label] = read_external_csv(e.substr(eq + 1));
            }
            const auto report = build_report(inputs);
            const auto out = report_out ? fs::path(*report_out) : default_out_dir() / "ratios.csv";
            if (out.has_parent_path()) fs::create_directories(out.parent_path());
            write_text(report_csv_text(report), out);
            auto sibling = [&](const std::string& suffix) {
                return out.parent_path() / (out.stem().string() + suffix);
            };
            write_text(matches_csv_text(report), sibling("_matches.csv"));
            write_text(quality_csv_text(report), sibling("_quality.csv"));
            std::cout << report_csv_text(report);
        } else if (*topo) {
            const auto t = pegasus(topo_size);
            const auto out = topo_out ? fs::path(*topo_out) : default_out_dir() / ("pegasus_m" + std::to_string(topo_size) + ".csv");
            write_adjacency_csv(t, out);
            std::cout << out.string() << " nodes=" << t.nodes().size() << " edges=" << t.edges().size() << '\n';
        } else if (*tune) {
            const auto model = read_instance(tune_instance);
            const auto ladder = tune_betas(model, tune_seed);
            std::string text;
            for (double b : ladder) text += format_double(b) + '\n';
            if (tune_out)
                write_text(text, *tune_out);
            else
                std::cout << text;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
