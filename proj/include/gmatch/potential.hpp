#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "gmatch/graph.hpp"

namespace gmatch {

// Expected potential pi(u) = sum over neighbors v of 1/deg(v), maintained
// incrementally under node deletions and triple contractions.
//
// Minimum retrieval uses a binary heap with lazy deletion: every value change
// bumps the node's version and pushes a fresh entry; stale entries are
// discarded when popped. A full rebuild runs every 2^20 term updates to bound
// float drift from the accumulated +-1/d increments.
class PotentialIndex {
public:
    explicit PotentialIndex(const DynamicGraph& g) : g_(&g) { rebuild(); }

    double pi(NodeId u) const { return pi_[u]; }

    // Recompute every potential from the graph and reset the heap.
    void rebuild() {
        std::size_t cap = g_->node_capacity();
        pi_.assign(cap, 0.0);
        version_.assign(cap, 0);
        seen_.assign(cap, 0);
        seen_epoch_ = 0;
        heap_ = {};
        for (NodeId u = 0; u < cap; ++u) {
            if (!g_->alive(u)) continue;
            double sum = 0.0;
            for (const auto& he : g_->incident(u)) sum += 1.0 / static_cast<double>(g_->degree(he.to));
            pi_[u] = sum;
            if (g_->degree(u) >= 1) heap_.push({sum, u, version_[u]});
        }
        pending_updates_ = 0;
    }

    // Fold the upcoming deletion of x into the index. Must run immediately
    // before g.delete_node(x), while x's adjacency is intact: each neighbor v
    // loses the term 1/deg(x), and v's degree drop from d to d-1 shifts its
    // contribution to every other neighbor w by 1/(d-1) - 1/d.
    void remove_node_update(NodeId x) {
        if (!g_->alive(x)) throw std::logic_error("remove_node_update: node not alive");
        maybe_rebuild();
        const DynamicGraph& g = *g_;
        touched_.clear();
        ++seen_epoch_;
        seen_[x] = seen_epoch_;  // x itself is dropped, never re-pushed
        double inv_dx = 1.0 / static_cast<double>(g.degree(x));
        for (const auto& he : g.incident(x)) {
            NodeId v = he.to;
            std::size_t dv = g.degree(v);
            pi_[v] -= inv_dx;
            touch(v);
            if (dv >= 2) {
                double delta = 1.0 / static_cast<double>(dv - 1) - 1.0 / static_cast<double>(dv);
                for (const auto& he2 : g.incident(v)) {
                    NodeId w = he2.to;
                    if (w == x) continue;
                    pi_[w] += delta;
                    touch(w);
                }
            }
        }
        ++version_[x];
        // Post-deletion degrees: neighbors of x drop by one.
        ++seen_epoch_;
        for (const auto& he : g.incident(x)) seen_[he.to] = seen_epoch_;
        for (NodeId y : touched_) {
            ++version_[y];
            std::size_t post_deg = g.degree(y) - (seen_[y] == seen_epoch_ ? 1 : 0);
            if (post_deg >= 1) heap_.push({pi_[y], y, version_[y]});
        }
        pending_updates_ += touched_.size() + 1;
    }

    // Contraction support: collect the distance-<=2 neighborhood of the triple
    // before the graph mutates, then recompute those potentials afterwards.
    void pre_contract(NodeId u, NodeId v1, NodeId v2) {
        maybe_rebuild();
        affected_.clear();
        ++seen_epoch_;
        seen_[u] = seen_[v1] = seen_[v2] = seen_epoch_;
        for (NodeId t : {u, v1, v2}) {
            for (const auto& he : g_->incident(t)) {
                collect(he.to);
                for (const auto& he2 : g_->incident(he.to)) collect(he2.to);
            }
        }
        ++version_[u];
        ++version_[v1];
        ++version_[v2];
    }

    void post_contract(NodeId merged) {
        if (merged >= pi_.size()) {
            pi_.resize(g_->node_capacity(), 0.0);
            version_.resize(g_->node_capacity(), 0);
            seen_.resize(g_->node_capacity(), 0);
        }
        affected_.push_back(merged);
        for (NodeId y : affected_) {
            if (!g_->alive(y)) continue;
            double sum = 0.0;
            for (const auto& he : g_->incident(y)) sum += 1.0 / static_cast<double>(g_->degree(he.to));
            pi_[y] = sum;
            ++version_[y];
            if (g_->degree(y) >= 1) heap_.push({sum, y, version_[y]});
        }
        pending_updates_ += affected_.size();
    }

    // All alive positive-degree nodes whose potential ties the minimum within
    // relative tolerance 1e-9.
    std::vector<NodeId> min_tie_set() {
        cleanup_top();
        if (heap_.empty()) throw std::logic_error("min_tie_set: no eligible node");
        double pi_min = heap_.top().value;
        double thresh = pi_min + 1e-9 * (1.0 + pi_min);
        std::vector<NodeId> ties;
        ++seen_epoch_;
        while (!heap_.empty() && heap_.top().value <= thresh) {
            Entry e = heap_.top();
            heap_.pop();
            if (valid(e) && seen_[e.node] != seen_epoch_) {
                seen_[e.node] = seen_epoch_;
                ties.push_back(e.node);
            }
        }
        for (NodeId u : ties) heap_.push({pi_[u], u, version_[u]});
        std::sort(ties.begin(), ties.end());
        return ties;
    }

private:
    struct Entry {
        double value;
        NodeId node;
        std::uint32_t version;
        bool operator>(const Entry& o) const {
            return value > o.value || (value == o.value && node > o.node);
        }
    };

    bool valid(const Entry& e) const {
        return e.version == version_[e.node] && g_->alive(e.node) && g_->degree(e.node) >= 1;
    }

    void cleanup_top() {
        while (!heap_.empty() && !valid(heap_.top())) heap_.pop();
    }

    void touch(NodeId y) {
        if (seen_[y] != seen_epoch_) {
            seen_[y] = seen_epoch_;
            touched_.push_back(y);
        }
    }

    void collect(NodeId y) {
        if (seen_[y] != seen_epoch_) {
            seen_[y] = seen_epoch_;
            affected_.push_back(y);
        }
    }

    void maybe_rebuild() {
        if (pending_updates_ >= (1u << 20)) rebuild();
    }

    const DynamicGraph* g_;
    std::vector<double> pi_;
    std::vector<std::uint32_t> version_;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap_;
    std::vector<std::uint32_t> seen_;
    std::uint32_t seen_epoch_ = 0;
    std::vector<NodeId> touched_;
    std::vector<NodeId> affected_;
    std::size_t pending_updates_ = 0;
};

}  // namespace gmatch
