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

#ifndef QABENCH_INSTANCE_GEN_HPP_INCLUDED
#define QABENCH_INSTANCE_GEN_HPP_INCLUDED

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qabench/ising.hpp"
#include "qabench/pegasus.hpp"
#include "qabench/random.hpp"

namespace qabench {

enum class Family { Cbfm, CbfmP };

struct Outcome {
    double value;
    double probability;
};

/// Coefficient tables of a corrupted-biased-ferromagnet family.
struct FamilyTable {
    std::string_view name;
    std::vector<Outcome> coupling;
    std::vector<Outcome> field;
};

inline const FamilyTable& family_table(Family family) {
    static const FamilyTable cbfm{"cbfm",
                                  {{-1.0, 0.625}, {0.2, 0.375}},
                                  {{0.0, 0.97}, {-1.0, 0.02}, {1.0, 0.01}}};
    static const FamilyTable cbfm_p{"cbfm-p",
                                    {{0.0, 0.35}, {-1.0, 0.10}, {1.0, 0.55}},
                                    {{0.0, 0.15}, {-1.0, 0.85}}};
    return family == Family::Cbfm ? cbfm : cbfm_p;
}

inline std::string_view family_name(Family family) { return family_table(family).name; }

inline Family parse_family(std::string_view name) {
    if (name == "cbfm") return Family::Cbfm;
    if (name == "cbfm-p") return Family::CbfmP;
    throw InputError("unknown instance family \"" + std::string(name) + "\" (expected cbfm or cbfm-p)");
}

struct PegasusMask {
    std::set<NodeId> dead_nodes;
    std::set<NodePair> dead_edges;
};

struct InstanceSpec {
    Family family = Family::CbfmP;
    int size = 16;
    std::uint64_t seed = 1;
    std::optional<PegasusMask> mask;
};

/// Stream key: mix64(mix64(mix64(fnv1a64(family)) ^ m) ^ seed).
inline std::uint64_t instance_stream_key(Family family, int size, std::uint64_t seed) {
    return mix64(mix64(mix64(fnv1a64(family_name(family))) ^ static_cast<std::uint64_t>(size)) ^
                 seed);
}

/// Inverse-CDF draw over a table; the last outcome absorbs round-off.
inline double draw(std::span<const Outcome> table, double u) {
    double cumulative = 0.0;
    for (std::size_t k = 0; k + 1 < table.size(); ++k) {
        cumulative += table[k].probability;
        if (u < cumulative) return table[k].value;
    }
    return table.back().value;
}

/**
 * Samples family coefficients over an arbitrary graph with dense sites
 * [0, n). Edges are visited in sorted (min, max) order: edge k uses counter
 * k, and site i uses counter |E| + i.
 */
inline IsingModel sample_instance(Family family, std::size_t n,
                                  std::vector<std::pair<Site, Site>> edges, std::uint64_t key,
                                  nlohmann::json metadata = nlohmann::json::object()) {
    const auto& table = family_table(family);
    for (auto& e : edges)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    const CounterStream stream(key);

    std::vector<Coupling> couplings;
    couplings.reserve(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k)
        couplings.push_back({edges[k].first, edges[k].second, draw(table.coupling, stream.uniform(k))});
    std::vector<Field> fields;
    fields.reserve(n);
    for (Site i = 0; i < n; ++i)
        fields.push_back({i, draw(table.field, stream.uniform(edges.size() + i))});
    return IsingModel(n, std::move(couplings), std::move(fields), std::move(metadata));
}

inline std::string instance_basename(const InstanceSpec& spec) {
    return std::string(family_name(spec.family)) + "_m" + std::to_string(spec.size) + "_s" +
           std::to_string(spec.seed);
}

inline IsingModel generate(const InstanceSpec& spec) {
    auto topo = pegasus(spec.size);
    std::size_t masked_nodes = 0;
    if (spec.mask) {
        topo = apply_mask(topo, spec.mask->dead_nodes, spec.mask->dead_edges);
        masked_nodes = spec.mask->dead_nodes.size();
    }
    nlohmann::json metadata = {
        {"name", instance_basename(spec)},
        {"family", std::string(family_name(spec.family))},
        {"size", spec.size},
        {"seed", spec.seed},
        {"generator", "splitmix64-counter-v1"},
        {"masked_nodes", masked_nodes},
    };
    return sample_instance(spec.family, topo.nodes().size(), topo.dense_edges(),
                           instance_stream_key(spec.family, spec.size, spec.seed),
                           std::move(metadata));
}

}  // namespace qabench

#endif  // QABENCH_INSTANCE_GEN_HPP_INCLUDED
