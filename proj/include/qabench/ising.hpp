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

#ifndef QABENCH_ISING_HPP_INCLUDED
#define QABENCH_ISING_HPP_INCLUDED

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace qabench {

/// Raised when a caller hands in a malformed model, configuration or option.
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

using Site = std::uint32_t;

struct Coupling {
    Site i;
    Site j;
    double value;

    friend bool operator==(const Coupling&, const Coupling&) = default;
};

struct Field {
    Site i;
    double value;

    friend bool operator==(const Field&, const Field&) = default;
};

struct Neighbor {
    Site site;
    double coupling;
};

/**
 * Spin assignment over {-1, 0, +1}. Zero marks an unassigned site; it
 * contributes nothing to the energy.
 */
class SpinConfiguration {
  public:
    SpinConfiguration() = default;

    explicit SpinConfiguration(std::size_t n, std::int8_t fill = 0) : values_(n, fill) {
        check_value(fill);
    }

    explicit SpinConfiguration(std::vector<std::int8_t> values) : values_(std::move(values)) {
        for (auto v : values_) check_value(v);
    }

    std::size_t size() const { return values_.size(); }
    std::int8_t operator[](std::size_t i) const { return values_[i]; }

    void set(std::size_t i, std::int8_t v) {
        check_value(v);
        values_[i] = v;
    }

    void flip(std::size_t i) { values_[i] = static_cast<std::int8_t>(-values_[i]); }

    bool complete() const {
        return std::none_of(values_.begin(), values_.end(), [](std::int8_t v) { return v == 0; });
    }

    std::span<const std::int8_t> values() const { return values_; }

    friend bool operator==(const SpinConfiguration&, const SpinConfiguration&) = default;
    friend auto operator<=>(const SpinConfiguration&, const SpinConfiguration&) = default;

  private:
    static void check_value(std::int8_t v) {
        if (v < -1 || v > 1) throw InputError("spin values must lie in {-1, 0, +1}");
    }

    std::vector<std::int8_t> values_;
};

/**
 * Sparse Ising model: E(s) = sum_{(i,j)} J_ij s_i s_j + sum_i h_i s_i + offset.
 *
 * Immutable after construction. Each unordered pair is stored once with
 * i < j; the adjacency index is built eagerly so local fields cost O(degree).
 * The constant offset is zero for every generated instance and only becomes
 * nonzero when a model is converted back from a QUBO.
 */
class IsingModel {
  public:
    IsingModel() = default;

    IsingModel(std::size_t n, std::vector<Coupling> couplings, std::vector<Field> fields,
               nlohmann::json metadata = nlohmann::json::object(), double offset = 0.0)
        : n_(n), couplings_(std::move(couplings)), fields_(std::move(fields)),
          metadata_(std::move(metadata)), offset_(offset) {
        if (metadata_.is_null()) metadata_ = nlohmann::json::object();
        if (!metadata_.is_object()) throw InputError("model metadata must be a JSON object");
        for (auto& c : couplings_) {
            if (c.i == c.j) {
                throw InputError("coupling (" + std::to_string(c.i) + ", " + std::to_string(c.j) +
                                 ") is a self-loop");
            }
            if (c.i >= n_ || c.j >= n_) {
                throw InputError("coupling (" + std::to_string(c.i) + ", " + std::to_string(c.j) +
                                 ") references a site outside [0, " + std::to_string(n_) + ")");
            }
            if (c.i > c.j) std::swap(c.i, c.j);
        }
        for (const auto& f : fields_) {
            if (f.i >= n_) {
                throw InputError("field on site " + std::to_string(f.i) + " outside [0, " +
                                 std::to_string(n_) + ")");
            }
        }
        build_index();
    }

    std::size_t size() const { return n_; }
    std::span<const Coupling> couplings() const { return couplings_; }
    std::span<const Field> fields() const { return fields_; }
    const nlohmann::json& metadata() const { return metadata_; }
    double offset() const { return offset_; }

    double field(Site i) const { return h_[i]; }
    std::span<const double> dense_fields() const { return h_; }

    std::span<const Neighbor> neighbors(Site i) const {
        return {adjacency_.data() + row_start_[i], adjacency_.data() + row_start_[i + 1]};
    }

    std::size_t degree(Site i) const { return row_start_[i + 1] - row_start_[i]; }

    /// Coupling between i and j, zero when the pair is absent.
    double coupling(Site i, Site j) const {
        for (const auto& nb : neighbors(i))
            if (nb.site == j) return nb.coupling;
        return 0.0;
    }

    friend bool operator==(const IsingModel& a, const IsingModel& b) {
        return a.n_ == b.n_ && a.couplings_ == b.couplings_ && a.fields_ == b.fields_ &&
               a.metadata_ == b.metadata_ && a.offset_ == b.offset_;
    }

  private:
    void build_index() {
        h_.assign(n_, 0.0);
        std::vector<bool> seen_field(n_, false);
        for (const auto& f : fields_) {
            if (seen_field[f.i]) throw InputError("site " + std::to_string(f.i) + " has two fields");
            seen_field[f.i] = true;
            h_[f.i] = f.value;
        }

        std::vector<std::pair<Site, Site>> pairs;
        pairs.reserve(couplings_.size());
        for (const auto& c : couplings_) pairs.emplace_back(c.i, c.j);
        std::sort(pairs.begin(), pairs.end());
        if (auto dup = std::adjacent_find(pairs.begin(), pairs.end()); dup != pairs.end()) {
            throw InputError("pair (" + std::to_string(dup->first) + ", " +
                             std::to_string(dup->second) + ") appears more than once");
        }

        row_start_.assign(n_ + 1, 0);
        for (const auto& c : couplings_) {
            ++row_start_[c.i + 1];
            ++row_start_[c.j + 1];
        }
        for (std::size_t i = 0; i < n_; ++i) row_start_[i + 1] += row_start_[i];
        adjacency_.resize(row_start_[n_]);
        std::vector<std::size_t> cursor(row_start_.begin(), row_start_.end() - 1);
        for (const auto& c : couplings_) {
            adjacency_[cursor[c.i]++] = {c.j, c.value};
            adjacency_[cursor[c.j]++] = {c.i, c.value};
        }
    }

    std::size_t n_ = 0;
    std::vector<Coupling> couplings_;
    std::vector<Field> fields_;
    nlohmann::json metadata_ = nlohmann::json::object();
    double offset_ = 0.0;

    std::vector<double> h_;
    std::vector<std::size_t> row_start_{0};
    std::vector<Neighbor> adjacency_;
};

/// QUBO over x in {0,1}: sum c_ij x_i x_j + sum c_i x_i + offset.
struct QuboModel {
    std::size_t n = 0;
    std::vector<Coupling> quad;
    std::vector<Field> lin;
    double offset = 0.0;
};

inline void check_length(const IsingModel& model, const SpinConfiguration& config) {
    if (config.size() != model.size()) {
        throw InputError("configuration has " + std::to_string(config.size()) +
                         " spins but the model has " + std::to_string(model.size()) + " sites");
    }
}

inline double energy(const IsingModel& model, const SpinConfiguration& config) {
    check_length(model, config);
    double e = model.offset();
    for (const auto& c : model.couplings()) e += c.value * config[c.i] * config[c.j];
    for (const auto& f : model.fields()) e += f.value * config[f.i];
    return e;
}

/// h_i + sum_j J_ij s_j, ignoring unassigned neighbours.
inline double local_field(const IsingModel& model, const SpinConfiguration& config, Site i) {
    double f = model.field(i);
    for (const auto& nb : model.neighbors(i)) f += nb.coupling * config[nb.site];
    return f;
}

/// E(flip(config, site)) - E(config).
inline double delta_energy(const IsingModel& model, const SpinConfiguration& config, Site site) {
    check_length(model, config);
    if (site >= model.size()) throw InputError("site " + std::to_string(site) + " out of range");
    if (config[site] == 0) {
        throw InputError("site " + std::to_string(site) + " is unassigned; flip is undefined");
    }
    return -2.0 * config[site] * local_field(model, config, site);
}

inline double qubo_energy(const QuboModel& qubo, std::span<const std::uint8_t> x) {
    if (x.size() != qubo.n) throw InputError("binary point length does not match the QUBO");
    double e = qubo.offset;
    for (const auto& q : qubo.quad) e += q.value * x[q.i] * x[q.j];
    for (const auto& l : qubo.lin) e += l.value * x[l.i];
    return e;
}

/// Spin to binary under x = (s + 1) / 2.
inline std::vector<std::uint8_t> to_binary(const SpinConfiguration& config) {
    if (!config.complete()) throw InputError("binary conversion needs a complete configuration");
    std::vector<std::uint8_t> x(config.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = config[i] > 0 ? 1 : 0;
    return x;
}

inline SpinConfiguration to_spins(std::span<const std::uint8_t> x) {
    std::vector<std::int8_t> s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] ? 1 : -1;
    return SpinConfiguration(std::move(s));
}

/**
 * Ising to QUBO under s = 2x - 1:
 *   c_ij = 4 J_ij,  c_i = 2 h_i - 2 sum_j J_ij,  c = sum J - sum h (+ offset).
 * Every site receives a linear entry, including zero ones.
 */
inline QuboModel to_qubo(const IsingModel& model) {
    QuboModel q;
    q.n = model.size();
    q.offset = model.offset();
    std::vector<double> lin(model.size(), 0.0);
    for (const auto& f : model.fields()) {
        lin[f.i] += 2.0 * f.value;
        q.offset -= f.value;
    }
    q.quad.reserve(model.couplings().size());
    for (const auto& c : model.couplings()) {
        q.quad.push_back({c.i, c.j, 4.0 * c.value});
        lin[c.i] -= 2.0 * c.value;
        lin[c.j] -= 2.0 * c.value;
        q.offset += c.value;
    }
    q.lin.reserve(model.size());
    for (Site i = 0; i < model.size(); ++i) q.lin.push_back({i, lin[i]});
    return q;
}

/// Inverse of to_qubo; the QUBO constant lands in the Ising offset.
inline IsingModel from_qubo(const QuboModel& qubo) {
    std::vector<double> h(qubo.n, 0.0);
    double offset = qubo.offset;
    for (const auto& l : qubo.lin) {
        if (l.i >= qubo.n) throw InputError("QUBO linear term outside [0, n)");
        h[l.i] += 0.5 * l.value;
        offset += 0.5 * l.value;
    }
    std::vector<Coupling> couplings;
    couplings.reserve(qubo.quad.size());
    for (const auto& q : qubo.quad) {
        if (q.i >= qubo.n || q.j >= qubo.n) throw InputError("QUBO quadratic term outside [0, n)");
        couplings.push_back({q.i, q.j, 0.25 * q.value});
        h[q.i] += 0.25 * q.value;
        h[q.j] += 0.25 * q.value;
        offset += 0.25 * q.value;
    }
    std::vector<Field> fields;
    fields.reserve(qubo.n);
    for (Site i = 0; i < qubo.n; ++i) fields.push_back({i, h[i]});
    return IsingModel(qubo.n, std::move(couplings), std::move(fields), nlohmann::json::object(),
                      offset);
}

/// Violations of the hardware coefficient ranges (-4 <= h <= 4, -1 <= J <= 1).
inline std::vector<std::string> hardware_lint(const IsingModel& model) {
    std::vector<std::string> issues;
    for (const auto& f : model.fields()) {
        if (f.value < -4.0 || f.value > 4.0)
            issues.push_back("h[" + std::to_string(f.i) + "] = " + std::to_string(f.value));
    }
    for (const auto& c : model.couplings()) {
        if (c.value < -1.0 || c.value > 1.0) {
            issues.push_back("J[" + std::to_string(c.i) + "," + std::to_string(c.j) +
                             "] = " + std::to_string(c.value));
        }
    }
    return issues;
}

}  // namespace qabench

#endif  // QABENCH_ISING_HPP_INCLUDED
