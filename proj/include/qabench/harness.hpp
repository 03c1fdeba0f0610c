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

#ifndef QABENCH_HARNESS_HPP_INCLUDED
#define QABENCH_HARNESS_HPP_INCLUDED

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "qabench/instance_gen.hpp"
#include "qabench/instance_io.hpp"
#include "qabench/metrics.hpp"
#include "qabench/solvers.hpp"

namespace qabench {

// CSV helpers ----------------------------------------------------------------

/// Splits one line of a comma-separated file; quoting is not supported.
inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

/// Rejects text that would break an unquoted CSV cell.
inline void check_csv_cell(const std::string& text, const std::string& what) {
    if (text.find_first_of(",\n\r\"") != std::string::npos)
        throw InputError(what + " \"" + text + "\" may not contain commas, quotes or line breaks");
}

inline std::string csv_safe(std::string text) {
    for (auto& c : text) {
        if (c == ',') c = ';';
        if (c == '\n' || c == '\r' || c == '"') c = ' ';
    }
    return text;
}

inline double parse_csv_double(const std::string& cell, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw ParseError(where + ": not a number: \"" + cell + "\"");
    }
}

inline std::uint64_t parse_csv_u64(const std::string& cell, const std::string& where) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(cell, &used);
        if (used != cell.size() || cell.empty() || cell[0] == '-') throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw ParseError(where + ": not an unsigned integer: \"" + cell + "\"");
    }
}

/// Writes through a temporary file so readers never see a half-written file.
inline void replace_file(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << contents;
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

// Result store ---------------------------------------------------------------

/// Truncates a file after its last newline, dropping an interrupted append.
inline void drop_partial_line(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) return;
    const auto text = read_text_file(path);
    const auto end = text.rfind('\n');
    const auto keep = end == std::string::npos ? 0 : end + 1;
    if (keep != text.size()) std::filesystem::resize_file(path, keep);
}

inline constexpr const char* kResultsCsvHeader = "solver,instance,seed,budget_key,elapsed_s,best_energy";
inline constexpr const char* kFailuresCsvHeader = "solver,instance,seed,budget_key,error";
inline constexpr const char* kInstancesCsvHeader = "instance,size,n";

struct ResultRow {
    std::string solver;
    std::string instance;
    std::uint64_t seed = 0;
    std::string budget_key;
    double elapsed_s = 0.0;
    double best_energy = 0.0;

    auto key() const { return std::tie(solver, instance, budget_key, seed); }
};

inline std::string result_line(const ResultRow& r) {
    return r.solver + ',' + r.instance + ',' + std::to_string(r.seed) + ',' + r.budget_key + ',' +
           format_double(r.elapsed_s) + ',' + format_double(r.best_energy);
}

/**
 * Reads a results CSV. A malformed final line (an interrupted append) is
 * dropped so the cell runs again; malformed lines elsewhere are errors.
 */
inline std::vector<ResultRow> read_results_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    if (lines.empty() || lines[0] != kResultsCsvHeader)
        throw ParseError(path.string() + ":1: expected header " + kResultsCsvHeader);
    std::vector<ResultRow> rows;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        if (lines[k].empty()) continue;
        const auto where = path.string() + ":" + std::to_string(k + 1);
        try {
            const auto cells = split_csv(lines[k]);
            if (cells.size() != 6) throw ParseError(where + ": expected 6 columns");
            rows.push_back({cells[0], cells[1], parse_csv_u64(cells[2], where), cells[3],
                            parse_csv_double(cells[4], where), parse_csv_double(cells[5], where)});
        } catch (const ParseError&) {
            if (k + 1 == lines.size()) break;
            throw;
        }
    }
    return rows;
}

inline std::string results_csv_text(std::vector<ResultRow> rows) {
    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) { return a.key() < b.key(); });
    std::string text = std::string(kResultsCsvHeader) + '\n';
    for (const auto& r : rows) text += result_line(r) + '\n';
    return text;
}

struct InstanceInfo {
    std::string name;
    int size = 0;
    std::size_t n = 0;
};

inline std::map<std::string, InstanceInfo> read_instances_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    std::size_t line_no = 0;
    std::map<std::string, InstanceInfo> out;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line != kInstancesCsvHeader)
                throw ParseError(path.string() + ":1: expected header " + kInstancesCsvHeader);
            continue;
        }
        if (line.empty()) continue;
        const auto where = path.string() + ":" + std::to_string(line_no);
        const auto cells = split_csv(line);
        if (cells.size() != 3) throw ParseError(where + ": expected 3 columns");
        out[cells[0]] = {cells[0], static_cast<int>(parse_csv_u64(cells[1], where)),
                         static_cast<std::size_t>(parse_csv_u64(cells[2], where))};
    }
    return out;
}

/// Externally produced solutions: "instance,energy,elapsed_s".
struct ExternalRow {
    std::string instance;
    double energy;
    double elapsed_s;
};

inline std::vector<ExternalRow> parse_external_csv(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<ExternalRow> out;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line != "instance,energy,elapsed_s")
                throw ParseError(source + ":1: expected header instance,energy,elapsed_s");
            continue;
        }
        if (line.empty()) continue;
        const auto where = source + ":" + std::to_string(line_no);
        const auto cells = split_csv(line);
        if (cells.size() != 3) throw ParseError(where + ": expected 3 columns");
        const double elapsed = parse_csv_double(cells[2], where);
        if (elapsed < 0.0) throw ParseError(where + ": negative elapsed_s");
        out.push_back({cells[0], parse_csv_double(cells[1], where), elapsed});
    }
    if (line_no == 0) throw ParseError(source + ": empty file");
    return out;
}

inline std::vector<ExternalRow> read_external_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_external_csv(buffer.str(), path.string());
}

// Grid -----------------------------------------------------------------------

struct GridInstance {
    std::string name;
    int size = 0;
    std::filesystem::path path;
    std::optional<InstanceSpec> spec;

    IsingModel load() const { return spec ? generate(*spec) : read_instance(path); }
};

struct SolverSpec {
    /// Column value in the results; defaults to the solver name.
    std::string label;
    std::string solver;
    nlohmann::json params = nlohmann::json::object();
    /// Each budget is merged over `params`; one empty budget when none given.
    std::vector<nlohmann::json> budgets;
};

struct BenchmarkGrid {
    std::uint64_t seed = 1;
    std::vector<GridInstance> instances;
    std::vector<SolverSpec> solvers;
    std::optional<std::string> reference;
    std::vector<std::uint64_t> repetitions = {1};
    /// Threads inside one restart ensemble; 1 when unset.
    std::optional<std::size_t> ensemble_workers;
};

inline std::string budget_key(const nlohmann::json& budget) {
    return budget.empty() ? std::string("default") : param_key(budget);
}

namespace detail {

inline std::vector<std::uint64_t> json_seed_list(const nlohmann::json& j, const std::string& what) {
    std::vector<std::uint64_t> out;
    auto one = [&](const nlohmann::json& v) {
        if (!v.is_number_unsigned()) throw InputError(what + " must hold non-negative integers");
        out.push_back(v.get<std::uint64_t>());
    };
    if (j.is_array()) {
        for (const auto& v : j) one(v);
    } else {
        one(j);
    }
    if (out.empty()) throw InputError(what + " is empty");
    return out;
}

inline int instance_size(const IsingModel& model) {
    const auto& meta = model.metadata();
    if (meta.contains("size") && meta["size"].is_number_integer()) return meta["size"].get<int>();
    return 0;
}

}  // namespace detail

/**
 * Grid JSON:
 *   {"seed": 1, "repetitions": [1, 2],
 *    "instances": ["a.json", ...] | "dir/",
 *    "generate": {"family": "cbfm-p", "size": 6, "seeds": [1, 2]},
 *    "solvers": [{"label": "sa", "solver": "sa", "params": {"reads": 10},
 *                 "budgets": [{"sweeps": 10}, {"sweeps": 100}]}],
 *    "reference": "svmc"}
 * Relative paths resolve against `base`.
 */
inline BenchmarkGrid parse_grid(const nlohmann::json& j, const std::filesystem::path& base = {}) {
    if (!j.is_object()) throw InputError("grid must be a JSON object");
    static const std::set<std::string> keys = {"seed", "repetitions", "instances", "generate",
                                               "solvers", "reference", "ensemble_workers"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!keys.count(it.key())) throw InputError("grid: unknown key \"" + it.key() + "\"");

    BenchmarkGrid grid;
    if (j.contains("seed")) grid.seed = detail::json_seed_list(j["seed"], "grid seed").front();
    if (j.contains("repetitions")) grid.repetitions = detail::json_seed_list(j["repetitions"], "repetitions");
    if (j.contains("ensemble_workers")) {
        if (!j["ensemble_workers"].is_number_unsigned() || j["ensemble_workers"].get<std::size_t>() == 0)
            throw InputError("grid: ensemble_workers must be a positive integer");
        grid.ensemble_workers = j["ensemble_workers"].get<std::size_t>();
    }

    auto add_path = [&](const std::filesystem::path& p) {
        const auto full = p.is_absolute() || base.empty() ? p : base / p;
        const auto model = read_instance(full);
        grid.instances.push_back({instance_name(model, full), detail::instance_size(model), full, std::nullopt});
    };
    if (j.contains("instances")) {
        const auto& v = j["instances"];
        if (v.is_string()) {
            const std::filesystem::path p = v.get<std::string>();
            const auto dir = p.is_absolute() || base.empty() ? p : base / p;
            if (!std::filesystem::is_directory(dir)) throw InputError("grid: " + dir.string() + " is not a directory");
            std::vector<std::filesystem::path> files;
            for (const auto& e : std::filesystem::directory_iterator(dir))
                if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files) add_path(f);
        } else if (v.is_array()) {
            for (const auto& p : v) {
                if (!p.is_string()) throw InputError("grid: instances must be paths");
                add_path(p.get<std::string>());
            }
        } else {
            throw InputError("grid: instances must be a directory or a list of paths");
        }
    }
    if (j.contains("generate")) {
        const auto& g = j["generate"];
        if (!g.is_object() || !g.contains("family") || !g.contains("size") || !g.contains("seeds"))
            throw InputError("grid: generate needs family, size and seeds");
        const auto family = parse_family(g["family"].get<std::string>());
        const auto sizes = detail::json_seed_list(g["size"], "generate size");
        for (auto size : sizes) {
            for (auto s : detail::json_seed_list(g["seeds"], "generate seeds")) {
                InstanceSpec spec{family, static_cast<int>(size), s, std::nullopt};
                grid.instances.push_back({instance_basename(spec), spec.size, {}, spec});
            }
        }
    }
    std::set<std::string> names;
    for (const auto& inst : grid.instances) {
        check_csv_cell(inst.name, "instance name");
        if (!names.insert(inst.name).second) throw InputError("grid: duplicate instance \"" + inst.name + "\"");
    }

    if (j.contains("solvers")) {
        if (!j["solvers"].is_array()) throw InputError("grid: solvers must be a list");
        std::set<std::string> labels;
        for (const auto& s : j["solvers"]) {
            if (!s.is_object() || !s.contains("solver")) throw InputError("grid: every solver entry needs \"solver\"");
            SolverSpec spec;
            spec.solver = s["solver"].get<std::string>();
            spec.label = s.value("label", spec.solver);
            if (s.contains("params")) spec.params = s["params"];
            if (s.contains("budgets")) {
                if (!s["budgets"].is_array()) throw InputError("grid: budgets must be a list");
                for (const auto& b : s["budgets"]) {
                    if (!b.is_object()) throw InputError("grid: each budget must be an object");
                    spec.budgets.push_back(b);
                }
            }
            if (spec.budgets.empty()) spec.budgets.push_back(nlohmann::json::object());
            check_csv_cell(spec.label, "solver label");
            if (!labels.insert(spec.label).second) throw InputError("grid: duplicate solver label \"" + spec.label + "\"");
            grid.solvers.push_back(std::move(spec));
        }
    }
    if (j.contains("reference")) grid.reference = j["reference"].get<std::string>();
    return grid;
}

inline BenchmarkGrid read_grid(const std::filesystem::path& path) {
    return parse_grid(read_json_file(path), path.parent_path());
}

struct GridCell {
    std::size_t solver;
    std::size_t instance;
    std::size_t budget;
    std::uint64_t seed;
    std::string budget_key;
};

/// Seed of one cell; independent of the budget so budgets share random streams.
inline std::uint64_t cell_seed(std::uint64_t grid_seed, const std::string& label, const std::string& instance,
                               std::uint64_t repetition) {
    return derive_seed(derive_seed(derive_seed(grid_seed, "solver:" + label), "instance:" + instance), repetition);
}

inline std::vector<GridCell> grid_cells(const BenchmarkGrid& grid) {
    std::vector<GridCell> cells;
    for (std::size_t s = 0; s < grid.solvers.size(); ++s)
        for (std::size_t i = 0; i < grid.instances.size(); ++i)
            for (std::size_t b = 0; b < grid.solvers[s].budgets.size(); ++b)
                for (auto rep : grid.repetitions)
                    cells.push_back({s, i, b, cell_seed(grid.seed, grid.solvers[s].label, grid.instances[i].name, rep),
                                     budget_key(grid.solvers[s].budgets[b])});
    return cells;
}

struct GridRunSummary {
    std::size_t cells = 0;
    std::size_t executed = 0;
    std::size_t skipped = 0;
    std::size_t failed = 0;
};

/**
 * Runs every cell not already present in `out_dir`. Writes results.csv,
 * traces.csv, failures.csv and instances.csv; rows are appended as cells
 * finish and each file is rewritten in sorted order at the end. Failed
 * cells are recorded and count as done; delete failures.csv to retry them.
 */
inline GridRunSummary run_grid(const BenchmarkGrid& grid, const std::filesystem::path& out_dir, std::size_t workers,
                               std::ostream* log = nullptr) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const auto results_path = out_dir / "results.csv";
    const auto traces_path = out_dir / "traces.csv";
    const auto failures_path = out_dir / "failures.csv";

    // Validate every solver spec before anything runs.
    std::vector<std::vector<SolverFn>> fns(grid.solvers.size());
    const SolveOptions options{grid.ensemble_workers.value_or(1)};
    for (std::size_t s = 0; s < grid.solvers.size(); ++s) {
        for (const auto& budget : grid.solvers[s].budgets) {
            auto params = grid.solvers[s].params;
            params.update(budget);
            try {
                fns[s].push_back(make_solver(grid.solvers[s].solver, params, options));
            } catch (const std::exception& e) {
                throw InputError("grid solver \"" + grid.solvers[s].label + "\": " + e.what());
            }
        }
    }
    if (grid.reference) {
        const bool known = std::any_of(grid.solvers.begin(), grid.solvers.end(),
                                       [&](const SolverSpec& s) { return s.label == *grid.reference; });
        if (!known) throw InputError("grid reference \"" + *grid.reference + "\" is not a solver label");
    }

    for (const auto& p : {results_path, traces_path, failures_path}) drop_partial_line(p);
    std::vector<ResultRow> rows;
    if (fs::exists(results_path)) rows = read_results_csv(results_path);
    std::vector<std::vector<std::string>> failures;
    if (fs::exists(failures_path)) {
        std::ifstream in(failures_path);
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line))
            if (!line.empty()) failures.push_back(split_csv(line));
    }
    using Key = std::tuple<std::string, std::string, std::string, std::uint64_t>;
    std::set<Key> done;
    for (const auto& r : rows) done.insert({r.solver, r.instance, r.budget_key, r.seed});
    for (const auto& f : failures) {
        if (f.size() < 4) continue;
        try {
            done.insert({f[0], f[1], f[3], parse_csv_u64(f[2], failures_path.string())});
        } catch (const ParseError&) {
        }
    }

    GridRunSummary summary;
    const auto cells = grid_cells(grid);
    summary.cells = cells.size();
    std::vector<GridCell> pending;
    for (const auto& c : cells) {
        const Key key{grid.solvers[c.solver].label, grid.instances[c.instance].name, c.budget_key, c.seed};
        if (done.count(key))
            ++summary.skipped;
        else
            pending.push_back(c);
    }

    // instances.csv lists every instance, loaded or not.
    std::vector<std::optional<IsingModel>> models(grid.instances.size());
    {
        std::string text = std::string(kInstancesCsvHeader) + '\n';
        for (std::size_t i = 0; i < grid.instances.size(); ++i) {
            models[i] = grid.instances[i].load();
            text += grid.instances[i].name + ',' + std::to_string(grid.instances[i].size) + ',' +
                    std::to_string(models[i]->size()) + '\n';
        }
        replace_file(out_dir / "instances.csv", text);
    }

    auto open_append = [](const fs::path& path, const char* header) {
        const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
        std::ofstream out(path, std::ios::app | std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        if (fresh) out << header << '\n';
        return out;
    };
    auto results_out = open_append(results_path, kResultsCsvHeader);
    auto traces_out = open_append(traces_path, kTraceCsvHeader);
    auto failures_out = open_append(failures_path, kFailuresCsvHeader);

    std::mutex writer;
    std::atomic<std::size_t> next{0};
    std::vector<ResultRow> fresh_rows;
    auto work = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= pending.size()) return;
            const auto& c = pending[k];
            const auto& label = grid.solvers[c.solver].label;
            const auto& inst = grid.instances[c.instance].name;
            try {
                const auto trace = fns[c.solver][c.budget](*models[c.instance], c.seed);
                ResultRow row{label, inst, c.seed, c.budget_key, trace.elapsed_s(), trace.best_energy()};
                std::ostringstream t;
                SolveTrace labelled = trace;
                labelled.solver = label;
                write_trace_csv(t, labelled, inst, false);
                std::lock_guard lock(writer);
                results_out << result_line(row) << '\n' << std::flush;
                traces_out << t.str() << std::flush;
                fresh_rows.push_back(std::move(row));
                ++summary.executed;
                if (log) *log << "done " << label << ' ' << inst << ' ' << c.budget_key << '\n';
            } catch (const std::exception& e) {
                std::lock_guard lock(writer);
                failures_out << label << ',' << inst << ',' << c.seed << ',' << c.budget_key << ','
                             << csv_safe(e.what()) << '\n'
                             << std::flush;
                failures.push_back({label, inst, std::to_string(c.seed), c.budget_key, csv_safe(e.what())});
                ++summary.failed;
                if (log) *log << "failed " << label << ' ' << inst << ' ' << c.budget_key << ": " << e.what() << '\n';
            }
        }
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min(workers, pending.size()));
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work);
        work();
    }
    results_out.close();
    traces_out.close();
    failures_out.close();

    rows.insert(rows.end(), fresh_rows.begin(), fresh_rows.end());
    replace_file(results_path, results_csv_text(std::move(rows)));

    std::sort(failures.begin(), failures.end());
    std::string ftext = std::string(kFailuresCsvHeader) + '\n';
    for (const auto& f : failures) {
        std::string line;
        for (const auto& cell : f) line += (line.empty() ? "" : ",") + cell;
        ftext += line + '\n';
    }
    replace_file(failures_path, ftext);

    // Traces: stable sort by (solver, instance, param_key, seed), keeping event order.
    {
        std::ifstream in(traces_path);
        std::string line;
        std::getline(in, line);
        std::vector<std::pair<std::vector<std::string>, std::string>> lines;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto cells = split_csv(line);
            if (cells.size() != 6) continue;
            lines.push_back({{cells[0], cells[1], cells[3], cells[2]}, line});
        }
        std::stable_sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::string text = std::string(kTraceCsvHeader) + '\n';
        for (const auto& l : lines) text += l.second + '\n';
        replace_file(traces_path, text);
    }
    return summary;
}

// Report ---------------------------------------------------------------------

/// Best-so-far curve from run endpoints: sorted by time, kept where the minimum improves.
inline std::vector<TraceEvent> endpoint_curve(std::vector<TraceEvent> points) {
    std::sort(points.begin(), points.end(), [](const TraceEvent& a, const TraceEvent& b) {
        return a.elapsed_s < b.elapsed_s || (a.elapsed_s == b.elapsed_s && a.energy < b.energy);
    });
    std::vector<TraceEvent> curve;
    for (const auto& p : points)
        if (curve.empty() || p.energy < curve.back().energy) curve.push_back(p);
    return curve;
}

struct ReportRow {
    int size;
    std::string solver;
    RatioSummary summary;
};

struct QualityRow {
    int size;
    std::string solver;
    std::string budget_key;
    MeanError relative_difference;
    std::size_t count;
};

struct MatchReport {
    std::string reference;
    /// Target energy per instance.
    std::map<std::string, double> targets;
    /// Time-to-match per solver label and instance.
    std::map<std::string, MatchTimes> times;
    std::vector<ReportRow> rows;
    std::vector<QualityRow> quality;
};

struct ReportInputs {
    std::vector<ResultRow> results;
    std::map<std::string, InstanceInfo> instances;
    /// Solver label whose best energy defines each target.
    std::string reference;
    /// Replaces the reference's targets and times when set.
    std::optional<std::vector<ExternalRow>> reference_file;
    /// Extra solvers spliced in from external solution files.
    std::map<std::string, std::vector<ExternalRow>> external;
};

/**
 * Targets are the reference's best energy per instance (or the reference
 * file's energy); the reference time is when its own curve first reaches
 * that target. Each solver curve is built from its run endpoints across
 * budgets and repetitions.
 */
inline MatchReport build_report(const ReportInputs& in) {
    MatchReport report;
    report.reference = in.reference;
    std::map<std::string, std::map<std::string, std::vector<TraceEvent>>> points;
    std::vector<std::string> order;
    auto note_solver = [&](const std::string& s) {
        if (std::find(order.begin(), order.end(), s) == order.end()) order.push_back(s);
    };
    for (const auto& r : in.results) {
        points[r.solver][r.instance].push_back({r.elapsed_s, r.best_energy});
        note_solver(r.solver);
    }
    for (const auto& [name, rows] : in.external) {
        if (points.count(name)) throw InputError("external solver \"" + name + "\" clashes with a grid solver");
        for (const auto& r : rows) points[name][r.instance].push_back({r.elapsed_s, r.energy});
        note_solver(name);
    }

    MatchTimes reference_times;
    if (in.reference_file) {
        for (const auto& r : *in.reference_file) {
            if (report.targets.count(r.instance)) throw InputError("reference file repeats instance " + r.instance);
            report.targets[r.instance] = r.energy;
            reference_times[r.instance] = r.elapsed_s;
        }
    } else {
        auto it = points.find(in.reference);
        if (it == points.end()) throw InputError("no results for reference solver \"" + in.reference + "\"");
        for (const auto& [inst, pts] : it->second) {
            const auto curve = endpoint_curve(pts);
            report.targets[inst] = curve.back().energy;
            reference_times[inst] = time_to_match(curve, curve.back().energy);
        }
    }

    auto size_of = [&](const std::string& inst) {
        auto it = in.instances.find(inst);
        return it == in.instances.end() ? 0 : it->second.size;
    };
    std::map<int, std::vector<std::string>> groups;
    for (const auto& [inst, target] : report.targets) groups[size_of(inst)].push_back(inst);

    for (const auto& solver : order) {
        const auto& per_instance = points[solver];
        for (const auto& [inst, pts] : per_instance)
            if (!report.targets.count(inst))
                throw InputError("solver \"" + solver + "\" has results for " + inst + ", which has no target");
        auto& times = report.times[solver];
        for (const auto& [inst, target] : report.targets) {
            auto it = per_instance.find(inst);
            if (it == per_instance.end()) continue;
            times[inst] = time_to_match(endpoint_curve(it->second), target);
        }
        for (const auto& [size, insts] : groups) {
            MatchTimes ref, mine;
            for (const auto& inst : insts) {
                ref[inst] = reference_times[inst];
                if (times.count(inst)) mine[inst] = times[inst];
            }
            if (mine.empty()) continue;
            report.rows.push_back({size, solver, runtime_ratios(ref, mine)});
        }
    }
    std::stable_sort(report.rows.begin(), report.rows.end(),
                     [](const ReportRow& a, const ReportRow& b) { return a.size < b.size; });

    // Mean relative difference per budget against the best energy seen by anyone.
    std::map<std::string, double> best_known = report.targets;
    for (const auto& [solver, per_instance] : points)
        for (const auto& [inst, pts] : per_instance)
            for (const auto& p : pts)
                if (best_known.count(inst)) best_known[inst] = std::min(best_known[inst], p.energy);
    std::map<std::tuple<int, std::string, std::string>, std::map<std::string, RunningStats>> quality;
    for (const auto& r : in.results) {
        if (!best_known.count(r.instance) || best_known[r.instance] == 0.0) continue;
        quality[{size_of(r.instance), r.solver, r.budget_key}][r.instance].push(
            relative_difference(best_known[r.instance], r.best_energy));
    }
    for (const auto& [key, per_instance] : quality) {
        std::vector<double> means;
        for (const auto& [inst, stats] : per_instance) means.push_back(stats.mean());
        report.quality.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), mean_and_stderr(means),
                                  means.size()});
    }
    return report;
}

inline constexpr const char* kReportCsvHeader = "size,solver,mean_ratio,stderr,matched_count";

/// Mean and standard error stay empty unless every instance of the size matched.
inline std::string report_csv_text(const MatchReport& report) {
    std::string text = std::string(kReportCsvHeader) + '\n';
    for (const auto& r : report.rows) {
        text += std::to_string(r.size) + ',' + r.solver + ',';
        if (r.summary.ratio)
            text += format_double(r.summary.ratio->mean) + ',' + format_double(r.summary.ratio->stderr_);
        else
            text += ',';
        text += ',' + std::to_string(r.summary.matched) + '\n';
    }
    return text;
}

inline std::string matches_csv_text(const MatchReport& report) {
    std::string text = "instance,target_energy,solver,time_to_match_s\n";
    for (const auto& [solver, times] : report.times)
        for (const auto& [inst, t] : times)
            text += inst + ',' + format_double(report.targets.at(inst)) + ',' + solver + ',' +
                    (t ? format_double(*t) : std::string("unmatched")) + '\n';
    return text;
}

inline std::string quality_csv_text(const MatchReport& report) {
    std::string text = "size,solver,budget_key,mean_rel_diff_pct,stderr,instances\n";
    for (const auto& q : report.quality)
        text += std::to_string(q.size) + ',' + q.solver + ',' + q.budget_key + ',' +
                format_double(q.relative_difference.mean) + ',' + format_double(q.relative_difference.stderr_) + ',' +
                std::to_string(q.count) + '\n';
    return text;
}

}  // namespace qabench

#endif  // QABENCH_HARNESS_HPP_INCLUDED
