#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gmatch/rng.hpp"

namespace gmatch {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

constexpr NodeId kNoNode = 0xffffffffu;

// Snapshot of a degree-2 contraction, enough to resolve it during unwinding.
// n1/n2 hold the neighbors of v1/v2 at contraction time, excluding the
// contracted triple, sorted for binary-search membership.
struct ContractionRecord {
    NodeId u = kNoNode;
    NodeId v1 = kNoNode;
    NodeId v2 = kNoNode;
    NodeId merged = kNoNode;
    std::vector<NodeId> n1;
    std::vector<NodeId> n2;

    bool n1_contains(NodeId w) const { return std::binary_search(n1.begin(), n1.end(), w); }
    bool n2_contains(NodeId w) const { return std::binary_search(n2.begin(), n2.end(), w); }
};

// A set of pairwise node-disjoint edges.
struct Matching {
    std::vector<Edge> edges;

    std::size_t size() const { return edges.size(); }
};

// Mutable undirected simple graph under node deletion and triple contraction.
//
// Adjacency is stored as mirror-indexed half-edges: adj_[u][i].mirror is the
// position of the reverse half-edge in adj_[to], so removing an incident edge
// is O(1) with no lookups. Dead nodes are tombstoned, never compacted; ids of
// nodes created by contraction continue past the original range. Alive nodes
// are grouped in per-degree buckets (swap-remove arrays with position maps)
// for O(1) uniform sampling and amortized O(1) minimum-degree queries.
class DynamicGraph {
public:
    struct HalfEdge {
        NodeId to;
        std::uint32_t mirror;
    };

    DynamicGraph(std::size_t n, std::span<const Edge> edges) : original_n_(n) {
        adj_.resize(n);
        alive_.assign(n, 1);
        bucket_pos_.resize(n);
        alive_count_ = n;
        for (const auto& [a, b] : edges) {
            if (a >= n || b >= n)
                throw std::invalid_argument("DynamicGraph: edge endpoint out of range");
            if (a == b) continue;  // loops dropped
            if (has_edge(a, b)) continue;  // duplicates dropped
            link(a, b);
        }
        buckets_.clear();
        for (NodeId u = 0; u < n; ++u) bucket_insert(u);
        min_degree_hint_ = 1;
        grow_scratch();
    }

    DynamicGraph(std::size_t n, const std::vector<Edge>& edges)
        : DynamicGraph(n, std::span<const Edge>(edges)) {}

    std::size_t original_node_count() const { return original_n_; }
    std::size_t node_capacity() const { return adj_.size(); }
    std::size_t alive_count() const { return alive_count_; }
    std::size_t edge_count() const { return edge_count_; }
    bool alive(NodeId u) const { return u < adj_.size() && alive_[u]; }
    std::size_t degree(NodeId u) const { return adj_[u].size(); }

    std::span<const HalfEdge> incident(NodeId u) const {
        return {adj_[u].data(), adj_[u].size()};
    }

    // O(deg) scan; used by validation and small-graph paths only.
    bool has_edge(NodeId u, NodeId v) const {
        if (!alive(u) || !alive(v)) return false;
        const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
        NodeId other = adj_[u].size() <= adj_[v].size() ? v : u;
        for (const auto& he : a)
            if (he.to == other) return true;
        return false;
    }

    // Alive edges as pairs with smaller endpoint first.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for (NodeId u = 0; u < adj_.size(); ++u) {
            if (!alive_[u]) continue;
            for (const auto& he : adj_[u])
                if (u < he.to) out.emplace_back(u, he.to);
        }
        return out;
    }

    void delete_node(NodeId u) {
        if (!alive(u)) throw std::logic_error("delete_node: node not alive");
        for (const auto& he : adj_[u]) {
            unlink_half(he.to, he.mirror);
            bucket_move(he.to);
        }
        edge_count_ -= adj_[u].size();
        adj_[u].clear();
        bucket_erase(u);
        alive_[u] = 0;
        --alive_count_;
    }

    // Contract the degree-2 node u with its two neighbors into a fresh node,
    // collapsing parallel edges and dropping self-loops.
    std::pair<NodeId, ContractionRecord> contract_triple(NodeId u, NodeId v1, NodeId v2) {
        if (!alive(u) || degree(u) != 2)
            throw std::logic_error("contract_triple: u must be alive with degree 2");
        NodeId a = adj_[u][0].to, b = adj_[u][1].to;
        if (!((a == v1 && b == v2) || (a == v2 && b == v1)))
            throw std::logic_error("contract_triple: {v1,v2} must be the neighbors of u");

        ContractionRecord rec;
        rec.u = u;
        rec.v1 = v1;
        rec.v2 = v2;
        rec.n1.reserve(adj_[v1].size());
        for (const auto& he : adj_[v1])
            if (he.to != u && he.to != v2) rec.n1.push_back(he.to);
        rec.n2.reserve(adj_[v2].size());
        for (const auto& he : adj_[v2])
            if (he.to != u && he.to != v1) rec.n2.push_back(he.to);
        std::sort(rec.n1.begin(), rec.n1.end());
        std::sort(rec.n2.begin(), rec.n2.end());

        // Union with parallel edges collapsed, order-stable for determinism.
        std::vector<NodeId> merged_nbrs;
        merged_nbrs.reserve(rec.n1.size() + rec.n2.size());
        ++scratch_epoch_;
        for (NodeId w : rec.n1) {
            scratch_[w] = scratch_epoch_;
            merged_nbrs.push_back(w);
        }
        for (NodeId w : rec.n2) {
            if (scratch_[w] != scratch_epoch_) merged_nbrs.push_back(w);
        }

        delete_node(u);
        delete_node(v1);
        delete_node(v2);

        NodeId merged = add_node();
        for (NodeId w : merged_nbrs) {
            link(merged, w);
            bucket_move(w);
        }
        bucket_move(merged);
        rec.merged = merged;
        return {merged, rec};
    }

    // Smallest degree d >= 1 with an alive node; nullopt once no edges remain.
    std::optional<std::size_t> min_positive_degree() const {
        if (edge_count_ == 0) return std::nullopt;
        while (min_degree_hint_ >= buckets_.size() || buckets_[min_degree_hint_].empty()) {
            assert(min_degree_hint_ < buckets_.size());
            ++min_degree_hint_;
        }
        return min_degree_hint_;
    }

    std::size_t nodes_of_degree(std::size_t d) const {
        return d < buckets_.size() ? buckets_[d].size() : 0;
    }

    NodeId random_node_of_degree(std::size_t d, SeededRng& rng) const {
        if (d >= buckets_.size() || buckets_[d].empty())
            throw std::logic_error("random_node_of_degree: empty bucket");
        return buckets_[d][rng.uniform_below(buckets_[d].size())];
    }

    // Uniform over edges: picks one of the 2m half-edge slots by walking the
    // degree buckets, so each edge is reached via either endpoint.
    Edge random_edge(SeededRng& rng) const {
        if (edge_count_ == 0) throw std::logic_error("random_edge: graph has no edges");
        std::uint64_t t = rng.uniform_below(2 * static_cast<std::uint64_t>(edge_count_));
        for (std::size_t d = 1; d < buckets_.size(); ++d) {
            std::uint64_t weight = static_cast<std::uint64_t>(d) * buckets_[d].size();
            if (t < weight) {
                NodeId u = buckets_[d][t / d];
                const HalfEdge& he = adj_[u][t % d];
                return {u, he.to};
            }
            t -= weight;
        }
        assert(false && "random_edge: half-edge weights out of sync");
        throw std::logic_error("random_edge: internal inconsistency");
    }

private:
    NodeId add_node() {
        NodeId id = static_cast<NodeId>(adj_.size());
        adj_.emplace_back();
        alive_.push_back(1);
        bucket_pos_.push_back(0);
        ++alive_count_;
        bucket_insert(id);
        grow_scratch();
        return id;
    }

    void link(NodeId u, NodeId v) {
        adj_[u].push_back({v, static_cast<std::uint32_t>(adj_[v].size())});
        adj_[v].push_back({u, static_cast<std::uint32_t>(adj_[u].size() - 1)});
        ++edge_count_;
    }

    // Remove adj_[v][idx] by swap-remove, patching the moved entry's mirror.
    void unlink_half(NodeId v, std::uint32_t idx) {
        auto& list = adj_[v];
        if (idx != list.size() - 1) {
            list[idx] = list.back();
            adj_[list[idx].to][list[idx].mirror].mirror = idx;
        }
        list.pop_back();
    }

    void bucket_insert(NodeId u) {
        std::size_t d = adj_[u].size();
        if (d >= buckets_.size()) buckets_.resize(d + 1);
        bucket_pos_[u] = static_cast<std::uint32_t>(buckets_[d].size());
        buckets_[d].push_back(u);
        bucket_degree_resize(u, d);
        if (d >= 1 && d < min_degree_hint_) min_degree_hint_ = d;
    }

    void bucket_erase(NodeId u) {
        std::size_t d = node_bucket_[u];
        auto& b = buckets_[d];
        std::uint32_t pos = bucket_pos_[u];
        if (pos != b.size() - 1) {
            b[pos] = b.back();
            bucket_pos_[b[pos]] = pos;
        }
        b.pop_back();
    }

    void bucket_move(NodeId u) {
        if (node_bucket_[u] == adj_[u].size()) return;
        bucket_erase(u);
        bucket_insert(u);
    }

    void bucket_degree_resize(NodeId u, std::size_t d) {
        if (u >= node_bucket_.size()) node_bucket_.resize(u + 1, 0);
        node_bucket_[u] = static_cast<std::uint32_t>(d);
    }

    void grow_scratch() {
        if (scratch_.size() < adj_.size()) scratch_.resize(adj_.size(), 0);
    }

    std::size_t original_n_;
    std::vector<std::vector<HalfEdge>> adj_;
    std::vector<std::uint8_t> alive_;
    std::size_t alive_count_ = 0;
    std::size_t edge_count_ = 0;

    std::vector<std::vector<NodeId>> buckets_;
    std::vector<std::uint32_t> bucket_pos_;
    std::vector<std::uint32_t> node_bucket_;
    mutable std::size_t min_degree_hint_ = 1;

    std::vector<std::uint32_t> scratch_;
    std::uint32_t scratch_epoch_ = 0;
};

// Disjointness + membership of `m` against an explicit edge set.
inline bool is_valid_matching(std::size_t n, const std::vector<Edge>& graph_edges,
                              const Matching& m) {
    std::vector<std::uint8_t> used(n, 0);
    std::vector<std::uint64_t> keys;
    keys.reserve(graph_edges.size());
    for (const auto& [a, b] : graph_edges) {
        NodeId lo = std::min(a, b), hi = std::max(a, b);
        keys.push_back((static_cast<std::uint64_t>(lo) << 32) | hi);
    }
    std::sort(keys.begin(), keys.end());
    for (const auto& [a, b] : m.edges) {
        if (a >= n || b >= n || a == b) return false;
        if (used[a] || used[b]) return false;
        used[a] = used[b] = 1;
        NodeId lo = std::min(a, b), hi = std::max(a, b);
        std::uint64_t key = (static_cast<std::uint64_t>(lo) << 32) | hi;
        if (!std::binary_search(keys.begin(), keys.end(), key)) return false;
    }
    return true;
}

}  // namespace gmatch
