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

#ifndef QABENCH_PEGASUS_HPP_INCLUDED
#define QABENCH_PEGASUS_HPP_INCLUDED

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qabench/ising.hpp"

namespace qabench {

/// Pegasus qubit coordinate: orientation u, perpendicular offset w, qubit k, parallel offset z.
struct PegasusCoord {
    int u;
    int w;
    int k;
    int z;

    friend bool operator==(const PegasusCoord&, const PegasusCoord&) = default;
};

using NodeId = std::uint32_t;
using NodePair = std::pair<NodeId, NodeId>;

/**
 * Pegasus graph P_m. Node ids are the linear index
 * z + (m-1) * (k + 12 * (w + m * u)); nodes are kept sorted by id and
 * edges as sorted (lo, hi) pairs.
 */
class PegasusTopology {
  public:
    PegasusTopology(int m, std::vector<NodeId> nodes, std::vector<NodePair> edges)
        : m_(m), nodes_(std::move(nodes)), edges_(std::move(edges)) {
        std::sort(nodes_.begin(), nodes_.end());
        for (auto& e : edges_)
            if (e.first > e.second) std::swap(e.first, e.second);
        std::sort(edges_.begin(), edges_.end());
        index_.reserve(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i], i);
    }

    int size_parameter() const { return m_; }
    const std::vector<NodeId>& nodes() const { return nodes_; }
    const std::vector<NodePair>& edges() const { return edges_; }

    bool contains(NodeId id) const { return index_.contains(id); }

    /// Position of `id` in nodes(); the dense site index used by generated models.
    std::size_t index_of(NodeId id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw InputError("node " + std::to_string(id) + " not in topology");
        return it->second;
    }

    PegasusCoord coordinate(NodeId id) const {
        const int m1 = m_ - 1;
        int rest = static_cast<int>(id);
        const int z = rest % m1;
        rest /= m1;
        const int k = rest % 12;
        rest /= 12;
        const int w = rest % m_;
        const int u = rest / m_;
        return {u, w, k, z};
    }

    NodeId linear_index(const PegasusCoord& c) const {
        return static_cast<NodeId>(c.z + (m_ - 1) * (c.k + 12 * (c.w + m_ * c.u)));
    }

    /// Edges relabelled to dense site indices in ascending node-id order.
    std::vector<std::pair<Site, Site>> dense_edges() const {
        std::vector<std::pair<Site, Site>> out;
        out.reserve(edges_.size());
        for (const auto& [a, b] : edges_)
            out.emplace_back(static_cast<Site>(index_of(a)), static_cast<Site>(index_of(b)));
        return out;
    }

    friend bool operator==(const PegasusTopology& a, const PegasusTopology& b) {
        return a.m_ == b.m_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
    }

  private:
    int m_;
    std::vector<NodeId> nodes_;
    std::vector<NodePair> edges_;
    std::unordered_map<NodeId, std::size_t> index_;
};

namespace detail {

// Shift of each qubit's span along its own axis, indexed by k.
inline constexpr std::array<int, 12> kVerticalOffsets = {2, 2, 2, 2, 10, 10, 10, 10, 6, 6, 6, 6};
inline constexpr std::array<int, 12> kHorizontalOffsets = {6, 6, 6, 6, 2, 2, 2, 2, 10, 10, 10, 10};

}  // namespace detail

inline constexpr std::size_t pegasus_node_count(int m) {
    return 8 * static_cast<std::size_t>(m - 1) * static_cast<std::size_t>(3 * m - 1);
}

/**
 * Fabric-only Pegasus graph of size parameter m >= 2.
 *
 * A vertical qubit (0, w, k, z) sits at x = 12w + k and spans
 * y in [12z + vo[k], 12z + vo[k] + 12); horizontal qubits mirror this with
 * the horizontal offsets. Perpendicular qubits whose spans cross share an
 * internal coupler, which resolves to
 *   (0, w, k, z) ~ (1, z + [kk < vo[k]], kk, w - [k < ho[kk]]).
 * Parallel qubits couple to the next segment on the same line (external)
 * and pairwise as (2j, 2j+1) (odd). Qubits at the edge of the lattice that
 * cannot carry internal couplers are trimmed.
 */
inline PegasusTopology pegasus(int m) {
    if (m < 2) throw InputError("Pegasus size parameter must be at least 2, got " + std::to_string(m));
    using detail::kHorizontalOffsets;
    using detail::kVerticalOffsets;

    const int m1 = m - 1;
    auto id = [&](int u, int w, int k, int z) {
        return static_cast<NodeId>(z + m1 * (k + 12 * (w + m * u)));
    };
    const int first_k = std::min(*std::min_element(kVerticalOffsets.begin(), kVerticalOffsets.end()),
                                 *std::min_element(kHorizontalOffsets.begin(), kHorizontalOffsets.end()));
    const int trailing =
        12 - std::max(*std::max_element(kVerticalOffsets.begin(), kVerticalOffsets.end()),
                      *std::max_element(kHorizontalOffsets.begin(), kHorizontalOffsets.end()));
    auto in_fabric = [&](int w, int k) {
        if (w == 0 && k < first_k) return false;
        if (w == m1 && k >= 12 - trailing) return false;
        return true;
    };

    std::vector<NodeId> nodes;
    nodes.reserve(pegasus_node_count(m));
    for (int u = 0; u < 2; ++u)
        for (int w = 0; w < m; ++w)
            for (int k = 0; k < 12; ++k)
                if (in_fabric(w, k))
                    for (int z = 0; z < m1; ++z) nodes.push_back(id(u, w, k, z));

    std::vector<NodePair> edges;
    auto add = [&](int u0, int w0, int k0, int z0, int u1, int w1, int k1, int z1) {
        if (w0 < 0 || w0 >= m || w1 < 0 || w1 >= m || z0 < 0 || z0 >= m1 || z1 < 0 || z1 >= m1)
            return;
        if (!in_fabric(w0, k0) || !in_fabric(w1, k1)) return;
        edges.emplace_back(id(u0, w0, k0, z0), id(u1, w1, k1, z1));
    };
    for (int u = 0; u < 2; ++u)
        for (int w = 0; w < m; ++w)
            for (int k = 0; k < 12; ++k)
                for (int z = 0; z < m1; ++z) {
                    add(u, w, k, z, u, w, k, z + 1);            // external
                    if (k % 2 == 0) add(u, w, k, z, u, w, k + 1, z);  // odd
                }
    for (int w = 0; w < m; ++w)
        for (int k = 0; k < 12; ++k)
            for (int z = 0; z < m1; ++z)
                for (int kk = 0; kk < 12; ++kk) {
                    const int w1 = z + (kk < kVerticalOffsets[k] ? 1 : 0);
                    const int z1 = w - (k < kHorizontalOffsets[kk] ? 1 : 0);
                    add(0, w, k, z, 1, w1, kk, z1);  // internal
                }
    return PegasusTopology(m, std::move(nodes), std::move(edges));
}

/// Removes dead nodes (with their incident edges) and dead edges.
inline PegasusTopology apply_mask(const PegasusTopology& topo, const std::set<NodeId>& dead_nodes,
                                  const std::set<NodePair>& dead_edges) {
    for (auto id : dead_nodes)
        if (!topo.contains(id)) throw InputError("mask names unknown node " + std::to_string(id));
    std::set<NodePair> normalized;
    for (auto [a, b] : dead_edges) {
        if (a > b) std::swap(a, b);
        if (!std::binary_search(topo.edges().begin(), topo.edges().end(), NodePair{a, b})) {
            throw InputError("mask names unknown edge (" + std::to_string(a) + ", " +
                             std::to_string(b) + ")");
        }
        normalized.emplace(a, b);
    }
    std::vector<NodeId> nodes;
    for (auto id : topo.nodes())
        if (!dead_nodes.contains(id)) nodes.push_back(id);
    std::vector<NodePair> edges;
    for (const auto& e : topo.edges()) {
        if (dead_nodes.contains(e.first) || dead_nodes.contains(e.second)) continue;
        if (normalized.contains(e)) continue;
        edges.push_back(e);
    }
    return PegasusTopology(topo.size_parameter(), std::move(nodes), std::move(edges));
}

/// Adjacency CSV over dense site indices, one "i,j" line per edge.
inline void write_adjacency_csv(const PegasusTopology& topo, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (const auto& [i, j] : topo.dense_edges()) out << i << ',' << j << '\n';
}

}  // namespace qabench

#endif  // QABENCH_PEGASUS_HPP_INCLUDED
