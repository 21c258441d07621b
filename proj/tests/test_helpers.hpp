#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "gmatch/graph.hpp"
#include "gmatch/graph_gen.hpp"
#include "gmatch/rng.hpp"

namespace testutil {

using gmatch::DynamicGraph;
using gmatch::Edge;
using gmatch::NodeId;

inline std::vector<Edge> path_edges(std::size_t n) {
    std::vector<Edge> e;
    for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return e;
}

inline std::vector<Edge> cycle_edges(std::size_t n) {
    std::vector<Edge> e = path_edges(n);
    e.emplace_back(static_cast<NodeId>(n - 1), 0);
    return e;
}

inline std::vector<Edge> complete_edges(std::size_t n) {
    std::vector<Edge> e;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return e;
}

// center 0, leaves 1..k
inline std::vector<Edge> star_edges(std::size_t k) {
    std::vector<Edge> e;
    for (NodeId i = 1; i <= k; ++i) e.emplace_back(0, i);
    return e;
}

inline DynamicGraph path(std::size_t n) { return {n, path_edges(n)}; }
inline DynamicGraph cycle(std::size_t n) { return {n, cycle_edges(n)}; }
inline DynamicGraph complete(std::size_t n) { return {n, complete_edges(n)}; }
inline DynamicGraph star(std::size_t k) { return {k + 1, star_edges(k)}; }

// Structural invariants: simplicity, symmetry, degree bookkeeping, buckets.
inline bool graph_invariants_hold(const DynamicGraph& g) {
    std::size_t degree_sum = 0;
    std::size_t alive = 0;
    std::vector<std::size_t> degree_histogram;
    for (NodeId u = 0; u < g.node_capacity(); ++u) {
        if (!g.alive(u)) {
            if (g.degree(u) != 0) return false;
            continue;
        }
        ++alive;
        degree_sum += g.degree(u);
        std::vector<NodeId> nbrs;
        for (const auto& he : g.incident(u)) {
            if (he.to == u) return false;                    // self-loop
            if (!g.alive(he.to)) return false;               // edge to tombstone
            if (!g.has_edge(he.to, u)) return false;         // asymmetry
            nbrs.push_back(he.to);
        }
        std::sort(nbrs.begin(), nbrs.end());
        if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end()) return false;  // parallel
        if (g.degree(u) >= degree_histogram.size()) degree_histogram.resize(g.degree(u) + 1);
        ++degree_histogram[g.degree(u)];
    }
    if (alive != g.alive_count()) return false;
    if (degree_sum != 2 * g.edge_count()) return false;
    for (std::size_t d = 0; d < degree_histogram.size(); ++d)
        if (g.nodes_of_degree(d) != degree_histogram[d]) return false;
    return true;
}

// Expected potential recomputed straight from the formula.
inline double pi_formula(const DynamicGraph& g, NodeId u) {
    double sum = 0.0;
    for (const auto& he : g.incident(u)) sum += 1.0 / static_cast<double>(g.degree(he.to));
    return sum;
}

inline double chi_square_statistic(const std::vector<std::uint64_t>& observed, double expected) {
    double stat = 0.0;
    for (std::uint64_t o : observed) {
        double d = static_cast<double>(o) - expected;
        stat += d * d / expected;
    }
    return stat;
}

// Small random instance for property tests; resamples until the edge count
// lands in [min_edges, max_edges].
inline DynamicGraph random_small_graph(gmatch::SeededRng& rng, std::uint64_t n_lo,
                                       std::uint64_t n_hi, double c_lo, double c_hi,
                                       gmatch::Family family, std::size_t min_edges = 0,
                                       std::size_t max_edges = SIZE_MAX) {
    for (;;) {
        std::uint64_t n = n_lo + rng.uniform_below(n_hi - n_lo + 1);
        if (family == gmatch::Family::Bipartite && n % 2 != 0) n += 1;
        double c = c_lo + rng.uniform_unit() * (c_hi - c_lo);
        double max_c = static_cast<double>(n - 1);
        if (c > max_c) c = max_c;
        gmatch::GraphFamily fam{family, n, c};
        gmatch::DynamicGraph g = gmatch::generate_direct(fam, rng);
        if (g.edge_count() >= min_edges && g.edge_count() <= max_edges) return g;
    }
}

}  // namespace testutil
