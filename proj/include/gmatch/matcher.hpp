#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gmatch/graph.hpp"
#include "gmatch/potential.hpp"
#include "gmatch/rng.hpp"

namespace gmatch {

enum class OptRule { Opt1, Opt12 };
enum class HeuRule { Rand, DegDeg, PotDeg };

// One of the six greedy algorithm combinations: which optimal reductions are
// enabled and which heuristic picks the edge once the minimum degree is too
// high for them.
struct AlgorithmSpec {
    OptRule opt = OptRule::Opt12;
    HeuRule heu = HeuRule::PotDeg;

    std::string name() const {
        std::string s = opt == OptRule::Opt1 ? "opt1-" : "opt12-";
        switch (heu) {
            case HeuRule::Rand: return s + "rand";
            case HeuRule::DegDeg: return s + "degdeg";
            case HeuRule::PotDeg: return s + "potdeg";
        }
        return s;
    }

    static AlgorithmSpec parse(const std::string& s) {
        for (const AlgorithmSpec& a : all())
            if (a.name() == s) return a;
        throw std::invalid_argument("unknown algorithm: " + s);
    }

    static const std::vector<AlgorithmSpec>& all() {
        static const std::vector<AlgorithmSpec> specs = {
            {OptRule::Opt1, HeuRule::Rand},   {OptRule::Opt12, HeuRule::Rand},
            {OptRule::Opt1, HeuRule::DegDeg}, {OptRule::Opt12, HeuRule::DegDeg},
            {OptRule::Opt1, HeuRule::PotDeg}, {OptRule::Opt12, HeuRule::PotDeg},
        };
        return specs;
    }

    bool operator==(const AlgorithmSpec&) const = default;
};

struct MatchEdgeAction {
    NodeId u;
    NodeId v;
};

using Action = std::variant<MatchEdgeAction, ContractionRecord>;
using ActionLog = std::vector<Action>;

struct StepCounters {
    std::uint64_t o1 = 0;  // degree-1 reductions
    std::uint64_t o2 = 0;  // degree-2 contractions
    std::uint64_t h = 0;   // heuristic steps

    std::uint64_t total() const { return o1 + o2 + h; }
};

// Uniform random edge.
inline Edge select_rand(const DynamicGraph& g, SeededRng& rng) {
    if (g.edge_count() == 0) throw std::logic_error("select_rand: no edges");
    return g.random_edge(rng);
}

// Uniform minimum-degree neighbor of u, ties broken randomly.
inline NodeId min_degree_neighbor(const DynamicGraph& g, NodeId u, SeededRng& rng) {
    std::size_t best = SIZE_MAX;
    std::uint64_t count = 0;
    NodeId pick = kNoNode;
    for (const auto& he : g.incident(u)) {
        std::size_t d = g.degree(he.to);
        if (d < best) {
            best = d;
            count = 1;
            pick = he.to;
        } else if (d == best) {
            // reservoir over the tie class
            ++count;
            if (rng.uniform_below(count) == 0) pick = he.to;
        }
    }
    return pick;
}

// Double minimum degree: u uniform among minimum-positive-degree nodes, then
// v uniform among u's minimum-degree neighbors.
inline Edge select_degdeg(const DynamicGraph& g, SeededRng& rng) {
    auto d = g.min_positive_degree();
    if (!d) throw std::logic_error("select_degdeg: no edges");
    NodeId u = g.random_node_of_degree(*d, rng);
    return {u, min_degree_neighbor(g, u, rng)};
}

// Minimum expected potential, minimum degree: u uniform among nodes tying the
// smallest pi(u), then v uniform among u's minimum-degree neighbors.
inline Edge select_potdeg(const DynamicGraph& g, PotentialIndex& idx, SeededRng& rng) {
    if (g.edge_count() == 0) throw std::logic_error("select_potdeg: no edges");
    std::vector<NodeId> ties = idx.min_tie_set();
    NodeId u = ties[rng.uniform_below(ties.size())];
    return {u, min_degree_neighbor(g, u, rng)};
}

// Replay the action log backwards, turning it into a matching of the original
// graph. MatchEdge adds its edge. A contraction resolves per the stored
// snapshots: if the merged node ended up unmatched, match {u,v1}; if it was
// matched to w, the edge {merged,w} is replaced by {v1,w} + {u,v2} when w was
// a neighbor of v1 at contraction time, else by {v2,w} + {u,v1}.
inline Matching unwind(const ActionLog& log) {
    NodeId max_id = 0;
    for (const Action& a : log) {
        if (const auto* me = std::get_if<MatchEdgeAction>(&a)) {
            max_id = std::max({max_id, me->u, me->v});
        } else {
            const auto& rec = std::get<ContractionRecord>(a);
            max_id = std::max({max_id, rec.u, rec.v1, rec.v2, rec.merged});
        }
    }
    std::vector<NodeId> partner(log.empty() ? 0 : max_id + 1, kNoNode);
    auto match = [&](NodeId a, NodeId b) {
        partner[a] = b;
        partner[b] = a;
    };

    for (auto it = log.rbegin(); it != log.rend(); ++it) {
        if (const auto* me = std::get_if<MatchEdgeAction>(&*it)) {
            match(me->u, me->v);
            continue;
        }
        const auto& rec = std::get<ContractionRecord>(*it);
        NodeId w = partner[rec.merged];
        if (w == kNoNode) {
            match(rec.u, rec.v1);
            continue;
        }
        partner[rec.merged] = kNoNode;
        partner[w] = kNoNode;
        if (rec.n1_contains(w)) {
            match(rec.v1, w);
            match(rec.u, rec.v2);
        } else if (rec.n2_contains(w)) {
            match(rec.v2, w);
            match(rec.u, rec.v1);
        } else {
            throw std::logic_error("unwind: matched partner in neither snapshot");
        }
    }

    Matching m;
    m.edges.reserve(log.size());
    for (NodeId u = 0; u < partner.size(); ++u)
        if (partner[u] != kNoNode && u < partner[u]) m.edges.emplace_back(u, partner[u]);
    return m;
}

struct RunResult {
    Matching matching;
    StepCounters counters;
};

namespace detail {

struct Driver {
    DynamicGraph& g;
    AlgorithmSpec spec;
    SeededRng& rng;
    ActionLog log;
    StepCounters counters;
    PotentialIndex* idx = nullptr;

    void remove_matched_pair(NodeId u, NodeId v) {
        if (idx) idx->remove_node_update(u);
        g.delete_node(u);
        if (idx) idx->remove_node_update(v);
        g.delete_node(v);
    }

    void degree1_step() {
        NodeId u = g.random_node_of_degree(1, rng);
        NodeId v = g.incident(u)[0].to;
        log.push_back(MatchEdgeAction{u, v});
        remove_matched_pair(u, v);
        ++counters.o1;
    }

    void degree2_step() {
        NodeId u = g.random_node_of_degree(2, rng);
        NodeId v1 = g.incident(u)[0].to;
        NodeId v2 = g.incident(u)[1].to;
        if (rng.uniform_below(2) == 1) std::swap(v1, v2);
        if (idx) idx->pre_contract(u, v1, v2);
        auto [merged, rec] = g.contract_triple(u, v1, v2);
        if (idx) idx->post_contract(merged);
        log.push_back(std::move(rec));
        ++counters.o2;
    }

    void heuristic_step() {
        Edge e;
        switch (spec.heu) {
            case HeuRule::Rand: e = select_rand(g, rng); break;
            case HeuRule::DegDeg: e = select_degdeg(g, rng); break;
            case HeuRule::PotDeg: e = select_potdeg(g, *idx, rng); break;
        }
        log.push_back(MatchEdgeAction{e.first, e.second});
        remove_matched_pair(e.first, e.second);
        ++counters.h;
    }
};

}  // namespace detail

// Run one algorithm to completion. The graph is consumed: reduced to an
// edgeless remainder of tombstones and isolated nodes. The degree-1 reduction
// is always preferred; the degree-2 reduction applies only under OPT(1,2);
// anything else is a heuristic step.
inline RunResult run(DynamicGraph& g, AlgorithmSpec spec, SeededRng& rng) {
    detail::Driver drv{g, spec, rng};
    std::optional<PotentialIndex> idx_storage;
    if (spec.heu == HeuRule::PotDeg) drv.idx = &idx_storage.emplace(g);

    for (;;) {
        auto d = g.min_positive_degree();
        if (!d) break;
        if (*d == 1)
            drv.degree1_step();
        else if (*d == 2 && spec.opt == OptRule::Opt12)
            drv.degree2_step();
        else
            drv.heuristic_step();
    }
    return {unwind(drv.log), drv.counters};
}

inline RunResult run(DynamicGraph& g, AlgorithmSpec spec, std::uint32_t seed) {
    SeededRng rng(seed);
    return run(g, spec, rng);
}

}  // namespace gmatch
