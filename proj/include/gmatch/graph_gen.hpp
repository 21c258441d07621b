#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "gmatch/graph.hpp"
#include "gmatch/rng.hpp"

namespace gmatch {

enum class Family { General, Bipartite };

inline const char* family_name(Family f) {
    return f == Family::General ? "general" : "bipartite";
}

inline Family parse_family(const std::string& s) {
    if (s == "general") return Family::General;
    if (s == "bipartite") return Family::Bipartite;
    throw std::invalid_argument("unknown family: " + s);
}

// Random graph family G(n;c) or B(n/2,n/2;c) with expected degree c.
// Bipartite sides are nodes 0..n/2-1 and n/2..n-1.
struct GraphFamily {
    Family kind = Family::General;
    std::uint64_t n = 0;
    double c = 0.0;

    void validate() const {
        if (n < 2) throw std::invalid_argument("graph family: n must be >= 2");
        if (!(c > 0.0)) throw std::invalid_argument("graph family: c must be > 0");
        if (kind == Family::Bipartite && n % 2 != 0)
            throw std::invalid_argument("bipartite family: n must be even");
    }

    // Number of possible edges N.
    std::uint64_t possible_edges() const {
        return kind == Family::General ? n * (n - 1) / 2 : n * n / 4;
    }

    // Per-edge presence probability p.
    double edge_probability() const {
        return kind == Family::General ? c / static_cast<double>(n - 1)
                                       : 2.0 * c / static_cast<double>(n);
    }
};

// Bijection between candidate-edge indices [0, N) and node pairs.
// General: lexicographic pair index over u < v. Bipartite: left * (n/2) + (right - n/2).
inline std::uint64_t encode_edge_index(const GraphFamily& fam, NodeId u, NodeId v) {
    std::uint64_t n = fam.n;
    if (fam.kind == Family::General) {
        std::uint64_t a = std::min(u, v), b = std::max(u, v);
        return a * n - a * (a + 1) / 2 + (b - a - 1);
    }
    std::uint64_t half = n / 2;
    std::uint64_t left = std::min(u, v), right = std::max(u, v);
    return left * half + (right - half);
}

inline Edge decode_edge_index(const GraphFamily& fam, std::uint64_t k) {
    std::uint64_t n = fam.n;
    if (fam.kind == Family::General) {
        // Row u satisfies offset(u) <= k < offset(u+1) with
        // offset(u) = u*n - u(u+1)/2; solve the quadratic, then fix rounding.
        auto offset = [n](std::uint64_t u) { return u * n - u * (u + 1) / 2; };
        double nn = static_cast<double>(n) - 0.5;
        double disc = nn * nn - 2.0 * static_cast<double>(k);
        std::uint64_t u = static_cast<std::uint64_t>(std::max(0.0, nn - std::sqrt(std::max(0.0, disc))));
        if (u >= n - 1) u = n - 2;
        while (u > 0 && offset(u) > k) --u;
        while (offset(u + 1) <= k) ++u;
        std::uint64_t v = u + 1 + (k - offset(u));
        return {static_cast<NodeId>(u), static_cast<NodeId>(v)};
    }
    std::uint64_t half = n / 2;
    return {static_cast<NodeId>(k / half), static_cast<NodeId>(half + k % half)};
}

// Direct Bernoulli construction: every candidate edge, in lexicographic order,
// is included independently with probability p (one uniform real per candidate).
// Intended for n up to 10^4.
inline DynamicGraph generate_direct(const GraphFamily& fam, SeededRng& rng) {
    fam.validate();
    double p = fam.edge_probability();
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(static_cast<double>(fam.possible_edges()) * p * 1.1) + 16);
    NodeId n = static_cast<NodeId>(fam.n);
    if (fam.kind == Family::General) {
        for (NodeId u = 0; u + 1 < n; ++u)
            for (NodeId v = u + 1; v < n; ++v)
                if (rng.uniform_unit() < p) edges.emplace_back(u, v);
    } else {
        NodeId half = n / 2;
        for (NodeId u = 0; u < half; ++u)
            for (NodeId v = half; v < n; ++v)
                if (rng.uniform_unit() < p) edges.emplace_back(u, v);
    }
    return DynamicGraph(fam.n, edges);
}

// Counted construction for large n: draw the edge count X from the
// normal-approximated binomial, then sample X distinct candidate indices by
// rejection. Expected O(X) since X << N.
inline DynamicGraph generate_counted(const GraphFamily& fam, SeededRng& rng) {
    fam.validate();
    std::uint64_t possible = fam.possible_edges();
    double p = fam.edge_probability();
    std::uint64_t x = p >= 1.0 ? possible : rng.binomial_via_normal(possible, p);
    if (x > possible) x = possible;

    std::vector<Edge> edges;
    edges.reserve(x);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(x * 2);
    while (chosen.size() < x) {
        std::uint64_t k = rng.uniform_below(possible);
        if (chosen.insert(k).second) edges.push_back(decode_edge_index(fam, k));
    }
    return DynamicGraph(fam.n, edges);
}

enum class GenMethod { Auto, Direct, Counted };

// Paper split: direct Bernoulli up to 10^4 nodes, counted beyond.
constexpr std::uint64_t kDirectMethodMaxNodes = 10000;

inline DynamicGraph generate(const GraphFamily& fam, SeededRng& rng,
                             GenMethod method = GenMethod::Auto) {
    if (method == GenMethod::Auto)
        method = fam.n <= kDirectMethodMaxNodes ? GenMethod::Direct : GenMethod::Counted;
    return method == GenMethod::Direct ? generate_direct(fam, rng) : generate_counted(fam, rng);
}

}  // namespace gmatch
