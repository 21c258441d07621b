#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "gmatch/graph_gen.hpp"
#include "test_helpers.hpp"

using gmatch::DynamicGraph;
using gmatch::Family;
using gmatch::GraphFamily;
using gmatch::NodeId;
using gmatch::SeededRng;
namespace tu = testutil;

TEST_CASE("family-derived quantities", "[gen]") {
    GraphFamily gen{Family::General, 5, 2.0};
    REQUIRE(gen.possible_edges() == 10);
    REQUIRE(gen.edge_probability() == Catch::Approx(0.5));
    GraphFamily bip{Family::Bipartite, 6, 2.0};
    REQUIRE(bip.possible_edges() == 9);
    REQUIRE(bip.edge_probability() == Catch::Approx(2.0 / 3.0));
    REQUIRE_THROWS_AS((GraphFamily{Family::Bipartite, 5, 2.0}.validate()), std::invalid_argument);
}

TEST_CASE("direct generation boundary probabilities", "[gen]") {
    SeededRng rng(1);
    SECTION("p = 1 forces every edge") {
        DynamicGraph g = gmatch::generate_direct({Family::General, 3, 2.0}, rng);
        REQUIRE(g.edge_count() == 3);
    }
    SECTION("vanishing c gives an empty edge set") {
        DynamicGraph g = gmatch::generate_direct({Family::General, 50, 1e-300}, rng);
        REQUIRE(g.edge_count() == 0);
    }
}

TEST_CASE("direct generation hits the expected edge count", "[gen][slowish]") {
    // E[m] = N p = n c / 2 = 15000 at n = 10^4, c = 3
    double total = 0.0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s) {
        SeededRng rng(1000 + s);
        DynamicGraph g = gmatch::generate_direct({Family::General, 10000, 3.0}, rng);
        total += static_cast<double>(g.edge_count());
    }
    double mean = total / seeds;
    REQUIRE(mean >= 15000.0 * 0.98);
    REQUIRE(mean <= 15000.0 * 1.02);
}

TEST_CASE("counted generation hits the expected edge count", "[gen]") {
    // bipartite n = 10^5, c = 2: N p = n c / 2 = 10^5
    double total = 0.0;
    const int seeds = 50;
    for (int s = 0; s < seeds; ++s) {
        SeededRng rng(500 + s);
        DynamicGraph g = gmatch::generate_counted({Family::Bipartite, 100000, 2.0}, rng);
        total += static_cast<double>(g.edge_count());
    }
    double mean = total / seeds;
    REQUIRE(mean >= 100000.0 * 0.98);
    REQUIRE(mean <= 100000.0 * 1.02);
}

TEST_CASE("counted generation degree law is Poisson", "[gen]") {
    // total variation between the empirical degree histogram and Poisson(2)
    const int graphs = 100;
    const std::size_t n = 1000;
    std::vector<double> hist;
    double samples = 0.0;
    for (int s = 0; s < graphs; ++s) {
        SeededRng rng(9000 + s);
        DynamicGraph g = gmatch::generate_counted({Family::General, n, 2.0}, rng);
        for (NodeId u = 0; u < n; ++u) {
            std::size_t d = g.degree(u);
            if (d >= hist.size()) hist.resize(d + 1, 0.0);
            hist[d] += 1.0;
            samples += 1.0;
        }
    }
    double tv = 0.0;
    double lambda = 2.0;
    double pmf = std::exp(-lambda);  // k = 0
    double tail = 1.0;
    for (std::size_t k = 0; k < hist.size() + 40; ++k) {
        double emp = k < hist.size() ? hist[k] / samples : 0.0;
        tv += std::abs(emp - pmf);
        tail -= pmf;
        pmf *= lambda / static_cast<double>(k + 1);
    }
    tv += std::abs(tail);
    tv *= 0.5;
    REQUIRE(tv < 0.05);
}

TEST_CASE("counted generation with a forced tiny count", "[gen]") {
    // With N small and y forced deep negative the count clamps via redraws;
    // exercise the X = 0 path directly through a degenerate family.
    SeededRng rng(3);
    DynamicGraph g = gmatch::generate_counted({Family::General, 4, 1e-9}, rng);
    REQUIRE(g.edge_count() == 0);
}

TEST_CASE("edge index codec is a bijection", "[gen]") {
    SECTION("exhaustive for n <= 100") {
        for (std::uint64_t n : {2ull, 3ull, 10ull, 57ull, 100ull}) {
            GraphFamily fam{Family::General, n, 1.0};
            std::uint64_t N = fam.possible_edges();
            std::uint64_t k = 0;
            for (NodeId u = 0; u + 1 < n; ++u) {
                for (NodeId v = u + 1; v < n; ++v, ++k) {
                    REQUIRE(gmatch::encode_edge_index(fam, u, v) == k);
                    auto [du, dv] = gmatch::decode_edge_index(fam, k);
                    REQUIRE(du == u);
                    REQUIRE(dv == v);
                }
            }
            REQUIRE(k == N);
        }
        GraphFamily bip{Family::Bipartite, 10, 1.0};
        for (std::uint64_t k = 0; k < bip.possible_edges(); ++k) {
            auto [u, v] = gmatch::decode_edge_index(bip, k);
            REQUIRE(u < 5);
            REQUIRE(v >= 5);
            REQUIRE(v < 10);
            REQUIRE(gmatch::encode_edge_index(bip, u, v) == k);
        }
    }
    SECTION("boundary spot checks at n = 10^6") {
        GraphFamily fam{Family::General, 1000000, 1.0};
        std::uint64_t N = fam.possible_edges();
        for (std::uint64_t k : {std::uint64_t{0}, N / 3, N / 2, N - 2, N - 1}) {
            auto [u, v] = gmatch::decode_edge_index(fam, k);
            REQUIRE(u < v);
            REQUIRE(v < 1000000);
            REQUIRE(gmatch::encode_edge_index(fam, u, v) == k);
        }
        SeededRng rng(17);
        for (int i = 0; i < 100000; ++i) {
            std::uint64_t k = rng.uniform_below(N);
            auto [u, v] = gmatch::decode_edge_index(fam, k);
            REQUIRE(gmatch::encode_edge_index(fam, u, v) == k);
        }
    }
}

TEST_CASE("bipartite graphs keep sides independent", "[gen]") {
    SeededRng rng(77);
    for (gmatch::GenMethod method : {gmatch::GenMethod::Direct, gmatch::GenMethod::Counted}) {
        DynamicGraph g = gmatch::generate({Family::Bipartite, 60, 3.0}, rng, method);
        REQUIRE(tu::graph_invariants_hold(g));
        for (const auto& [u, v] : g.edges()) REQUIRE((u < 30) != (v < 30));
    }
}
