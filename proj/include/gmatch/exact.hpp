#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "gmatch/graph.hpp"

namespace gmatch {

namespace detail {

inline std::vector<NodeId> matching_to_partner(const Matching& m, std::size_t cap) {
    std::vector<NodeId> partner(cap, kNoNode);
    for (const auto& [a, b] : m.edges) {
        partner[a] = b;
        partner[b] = a;
    }
    return partner;
}

inline Matching partner_to_matching(const std::vector<NodeId>& partner) {
    Matching m;
    for (NodeId u = 0; u < partner.size(); ++u)
        if (partner[u] != kNoNode && u < partner[u]) m.edges.emplace_back(u, partner[u]);
    return m;
}

}  // namespace detail

// Hopcroft-Karp maximum bipartite matching: layered BFS phases followed by
// DFS augmentation along the level structure. Sides are 0..left_size-1 and
// the rest. An initial matching, when given, seeds the phase loop (used by
// tests to confirm no augmenting path exists from an oracle's own output).
inline Matching max_matching_bipartite(const DynamicGraph& g, std::size_t left_size,
                                       const Matching* initial = nullptr) {
    constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
    std::size_t cap = g.node_capacity();
    if (left_size > cap) throw std::invalid_argument("bipartite: left size exceeds node count");
    for (NodeId u = 0; u < cap; ++u) {
        if (!g.alive(u)) continue;
        for (const auto& he : g.incident(u))
            if ((u < left_size) == (he.to < left_size))
                throw std::invalid_argument("bipartite: edge within one side");
    }

    std::vector<NodeId> partner(cap, kNoNode);
    if (initial) partner = detail::matching_to_partner(*initial, cap);
    std::vector<std::uint32_t> dist(left_size);
    std::queue<NodeId> queue;

    auto bfs = [&]() {
        std::uint32_t frontier = kInf;
        for (NodeId u = 0; u < left_size; ++u) {
            if (g.alive(u) && partner[u] == kNoNode) {
                dist[u] = 0;
                queue.push(u);
            } else {
                dist[u] = kInf;
            }
        }
        while (!queue.empty()) {
            NodeId u = queue.front();
            queue.pop();
            if (dist[u] >= frontier) continue;
            for (const auto& he : g.incident(u)) {
                NodeId w = partner[he.to];
                if (w == kNoNode) {
                    frontier = dist[u] + 1;
                } else if (dist[w] == kInf) {
                    dist[w] = dist[u] + 1;
                    queue.push(w);
                }
            }
        }
        return frontier != kInf;
    };

    auto dfs = [&](auto&& self, NodeId u) -> bool {
        for (const auto& he : g.incident(u)) {
            NodeId v = he.to;
            NodeId w = partner[v];
            if (w == kNoNode || (dist[w] == dist[u] + 1 && self(self, w))) {
                partner[u] = v;
                partner[v] = u;
                return true;
            }
        }
        dist[u] = kInf;
        return false;
    };

    while (bfs()) {
        for (NodeId u = 0; u < left_size; ++u)
            if (g.alive(u) && partner[u] == kNoNode) dfs(dfs, u);
    }
    return detail::partner_to_matching(partner);
}

// Edmonds blossom maximum matching on general graphs: BFS alternating-tree
// search with blossom shrinking via base pointers. Each vertex roots one
// search; a failed search certifies the vertex stays exposed in some maximum
// matching. Seeded with a greedy maximal matching unless one is supplied.
class BlossomMatcher {
public:
    explicit BlossomMatcher(const DynamicGraph& g) : g_(g), cap_(g.node_capacity()) {
        match_.assign(cap_, kNoNode);
        parent_.assign(cap_, kNoNode);
        base_.assign(cap_, 0);
        in_tree_.assign(cap_, 0);
        in_blossom_.assign(cap_, 0);
        on_path_.assign(cap_, 0);
        path_epoch_ = 0;
    }

    Matching solve(const Matching* initial = nullptr) {
        if (initial) {
            for (const auto& [a, b] : initial->edges) {
                match_[a] = b;
                match_[b] = a;
            }
        } else {
            greedy_seed();
        }
        for (NodeId v = 0; v < cap_; ++v)
            if (g_.alive(v) && match_[v] == kNoNode) find_augmenting_path(v);
        return detail::partner_to_matching(match_);
    }

private:
    void greedy_seed() {
        for (NodeId u = 0; u < cap_; ++u) {
            if (!g_.alive(u) || match_[u] != kNoNode) continue;
            for (const auto& he : g_.incident(u)) {
                if (match_[he.to] == kNoNode) {
                    match_[u] = he.to;
                    match_[he.to] = u;
                    break;
                }
            }
        }
    }

    NodeId lowest_common_base(NodeId a, NodeId b) {
        ++path_epoch_;
        for (;;) {
            a = base_[a];
            on_path_[a] = path_epoch_;
            if (match_[a] == kNoNode) break;
            a = parent_[match_[a]];
        }
        for (;;) {
            b = base_[b];
            if (on_path_[b] == path_epoch_) return b;
            b = parent_[match_[b]];
        }
    }

    void mark_blossom_path(NodeId v, NodeId stem, NodeId child) {
        while (base_[v] != stem) {
            in_blossom_[base_[v]] = 1;
            in_blossom_[base_[match_[v]]] = 1;
            parent_[v] = child;
            child = match_[v];
            v = parent_[child];
        }
    }

    bool find_augmenting_path(NodeId root) {
        std::fill(in_tree_.begin(), in_tree_.end(), 0);
        std::fill(parent_.begin(), parent_.end(), kNoNode);
        for (NodeId i = 0; i < cap_; ++i) base_[i] = i;

        std::queue<NodeId> q;
        in_tree_[root] = 1;
        q.push(root);

        while (!q.empty()) {
            NodeId v = q.front();
            q.pop();
            for (const auto& he : g_.incident(v)) {
                NodeId u = he.to;
                if (base_[v] == base_[u] || match_[v] == u) continue;
                if (u == root || (match_[u] != kNoNode && parent_[match_[u]] != kNoNode)) {
                    // odd cycle: contract the blossom down to the common base
                    NodeId stem = lowest_common_base(v, u);
                    std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
                    mark_blossom_path(v, stem, u);
                    mark_blossom_path(u, stem, v);
                    for (NodeId i = 0; i < cap_; ++i) {
                        if (in_blossom_[base_[i]]) {
                            base_[i] = stem;
                            if (!in_tree_[i]) {
                                in_tree_[i] = 1;
                                q.push(i);
                            }
                        }
                    }
                } else if (parent_[u] == kNoNode) {
                    parent_[u] = v;
                    if (match_[u] == kNoNode) {
                        augment(u);
                        return true;
                    }
                    in_tree_[match_[u]] = 1;
                    q.push(match_[u]);
                }
            }
        }
        return false;
    }

    void augment(NodeId u) {
        while (u != kNoNode) {
            NodeId prev = parent_[u];
            NodeId next = match_[prev];
            match_[u] = prev;
            match_[prev] = u;
            u = next;
        }
    }

    const DynamicGraph& g_;
    std::size_t cap_;
    std::vector<NodeId> match_, parent_, base_;
    std::vector<std::uint8_t> in_tree_, in_blossom_;
    std::vector<std::uint32_t> on_path_;
    std::uint32_t path_epoch_;
};

inline Matching max_matching_general(const DynamicGraph& g, const Matching* initial = nullptr) {
    return BlossomMatcher(g).solve(initial);
}

// Exact maximum matching size by branching over the edge list with
// disjointness pruning. Only for tiny graphs.
inline std::size_t max_matching_brute(const DynamicGraph& g) {
    std::vector<Edge> edges = g.edges();
    if (edges.size() > 24) throw std::invalid_argument("max_matching_brute: more than 24 edges");

    // compact endpoints into bit positions
    std::vector<NodeId> ids;
    for (const auto& [a, b] : edges) {
        ids.push_back(a);
        ids.push_back(b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto bit = [&](NodeId x) {
        return std::uint64_t{1} << (std::lower_bound(ids.begin(), ids.end(), x) - ids.begin());
    };

    std::size_t best = 0;
    auto rec = [&](auto&& self, std::size_t i, std::uint64_t used, std::size_t cur) -> void {
        best = std::max(best, cur);
        if (i == edges.size() || cur + (edges.size() - i) <= best) return;
        std::uint64_t eb = bit(edges[i].first) | bit(edges[i].second);
        if ((used & eb) == 0) self(self, i + 1, used | eb, cur + 1);
        self(self, i + 1, used, cur);
    };
    rec(rec, 0, 0, 0);
    return best;
}

}  // namespace gmatch
