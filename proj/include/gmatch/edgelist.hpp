#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmatch/graph.hpp"

namespace gmatch {

// Text edge list: first line "n m", then m lines "u v", 0-based ids.
struct EdgeList {
    std::size_t n = 0;
    std::vector<Edge> edges;
};

inline EdgeList read_edge_list(std::istream& in) {
    EdgeList out;
    std::size_t m = 0;
    if (!(in >> out.n >> m)) throw std::runtime_error("edge list: missing 'n m' header");
    out.edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        NodeId u, v;
        if (!(in >> u >> v))
            throw std::runtime_error("edge list: expected " + std::to_string(m) +
                                     " edges, got " + std::to_string(i));
        out.edges.emplace_back(u, v);
    }
    return out;
}

inline EdgeList read_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, std::size_t n, const std::vector<Edge>& edges) {
    out << n << ' ' << edges.size() << '\n';
    for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
}

inline void write_edge_list(const std::string& path, std::size_t n,
                            const std::vector<Edge>& edges) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_edge_list(out, n, edges);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace gmatch
