// Experiment CLI: generate sparse random graphs, run the greedy matching
// heuristics and exact oracles on them, and drive benchmark sweeps.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gmatch/bench.hpp"
#include "gmatch/edgelist.hpp"
#include "gmatch/exact.hpp"
#include "gmatch/graph_gen.hpp"
#include "gmatch/matcher.hpp"

namespace {

gmatch::GenMethod parse_method(const std::string& s) {
    if (s == "auto") return gmatch::GenMethod::Auto;
    if (s == "direct") return gmatch::GenMethod::Direct;
    if (s == "counted") return gmatch::GenMethod::Counted;
    throw CLI::ValidationError("--method", "must be auto|direct|counted");
}

std::vector<gmatch::AlgorithmSpec> parse_algs(const std::string& csv) {
    if (csv == "all") return gmatch::AlgorithmSpec::all();
    std::vector<gmatch::AlgorithmSpec> specs;
    std::string cur;
    std::istringstream in(csv);
    while (std::getline(in, cur, ','))
        if (!cur.empty()) specs.push_back(gmatch::AlgorithmSpec::parse(cur));
    return specs;
}

int cmd_gen(const std::string& family, std::uint64_t nodes, double degree, std::uint32_t seed,
            const std::string& method, const std::string& out_path) {
    gmatch::GraphFamily fam{gmatch::parse_family(family), nodes, degree};
    gmatch::SeededRng rng(seed);
    gmatch::DynamicGraph g = gmatch::generate(fam, rng, parse_method(method));
    gmatch::write_edge_list(out_path, fam.n, g.edges());
    std::cerr << "wrote " << out_path << " (n=" << fam.n << ", m=" << g.edge_count() << ")\n";
    return 0;
}

int cmd_match(const std::string& in_path, const std::string& alg_name, std::uint32_t seed,
              const std::string& emit_path) {
    gmatch::EdgeList el = gmatch::read_edge_list(in_path);
    gmatch::DynamicGraph g(el.n, el.edges);
    gmatch::AlgorithmSpec spec = gmatch::AlgorithmSpec::parse(alg_name);
    gmatch::SeededRng rng(seed);
    gmatch::RunResult res = gmatch::run(g, spec, rng);
    std::cout << res.matching.size() << ' ' << res.counters.o1 << ' ' << res.counters.o2 << ' '
              << res.counters.h << '\n';
    if (!emit_path.empty()) {
        std::ofstream out(emit_path);
        if (!out) throw std::runtime_error("cannot open " + emit_path + " for writing");
        out << res.matching.size() << '\n';
        for (const auto& [u, v] : res.matching.edges) out << u << ' ' << v << '\n';
    }
    return 0;
}

int cmd_exact(const std::string& in_path, std::int64_t left_size) {
    gmatch::EdgeList el = gmatch::read_edge_list(in_path);
    gmatch::DynamicGraph g(el.n, el.edges);
    gmatch::Matching m = left_size >= 0
                             ? gmatch::max_matching_bipartite(g, static_cast<std::size_t>(left_size))
                             : gmatch::max_matching_general(g);
    std::cout << m.size() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"greedy maximum-matching heuristics on sparse random graphs"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random graph and write its edge list");
    std::string gen_family = "general", gen_method = "auto", gen_out;
    std::uint64_t gen_nodes = 0;
    double gen_degree = 0.0;
    std::uint32_t gen_seed = 1;
    gen->add_option("--family", gen_family, "general|bipartite");
    gen->add_option("--nodes", gen_nodes, "number of nodes n")->required();
    gen->add_option("--degree", gen_degree, "expected degree c")->required();
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--method", gen_method, "auto|direct|counted");
    gen->add_option("--out", gen_out, "output edge-list path")->required();

    // match
    auto* match = app.add_subcommand("match", "run one heuristic; prints: size o1 o2 h");
    std::string match_in, match_alg, match_emit;
    std::uint32_t match_seed = 1;
    match->add_option("--in", match_in, "input edge-list path")->required();
    match->add_option("--alg", match_alg,
                      "opt1-rand|opt12-rand|opt1-degdeg|opt12-degdeg|opt1-potdeg|opt12-potdeg")
        ->required();
    match->add_option("--seed", match_seed, "rng seed");
    match->add_option("--emit-matching", match_emit, "write the matching to this path");

    // exact
    auto* exact = app.add_subcommand("exact", "exact maximum matching size");
    std::string exact_in;
    std::int64_t exact_left = -1;
    exact->add_option("--in", exact_in, "input edge-list path")->required();
    exact->add_option("--bipartite", exact_left, "left side size (enables bipartite oracle)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run a (c, trial, algorithm) sweep");
    std::string sw_family = "general", sw_algs = "all", sw_oracle = "on", sw_method = "auto";
    std::string sw_out_trials, sw_out_agg;
    std::uint64_t sw_nodes = 0;
    double sw_c_from = 1.0, sw_c_to = 10.0, sw_c_step = 0.1;
    std::uint32_t sw_trials = 100, sw_seed = 1;
    unsigned sw_threads = 1;
    bool sw_force_oracle = false;
    sweep->add_option("--family", sw_family, "general|bipartite");
    sweep->add_option("--nodes", sw_nodes, "number of nodes n")->required();
    sweep->add_option("--c-from", sw_c_from, "first expected degree");
    sweep->add_option("--c-to", sw_c_to, "last expected degree");
    sweep->add_option("--c-step", sw_c_step, "expected degree increment");
    sweep->add_option("--trials", sw_trials, "graphs per (n,c) cell");
    sweep->add_option("--algs", sw_algs, "comma-separated algorithm names, or 'all'");
    sweep->add_option("--seed", sw_seed, "master seed");
    sweep->add_option("--oracle", sw_oracle, "on|off: compare against exact matching");
    sweep->add_option("--method", sw_method, "auto|direct|counted");
    sweep->add_option("--threads", sw_threads, "worker threads (0 = hardware)");
    sweep->add_flag("--force-oracle", sw_force_oracle, "allow the oracle beyond its node limit");
    sweep->add_option("--out-trials", sw_out_trials, "per-trial CSV path")->required();
    sweep->add_option("--out-agg", sw_out_agg, "aggregate CSV path");

    // aggregate
    auto* agg = app.add_subcommand("aggregate", "recompute aggregates from a per-trial CSV");
    std::string agg_in, agg_out;
    agg->add_option("--in", agg_in, "per-trial CSV path")->required();
    agg->add_option("--out", agg_out, "aggregate CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_gen(gen_family, gen_nodes, gen_degree, gen_seed, gen_method, gen_out);
        if (match->parsed()) return cmd_match(match_in, match_alg, match_seed, match_emit);
        if (exact->parsed()) return cmd_exact(exact_in, exact_left);
        if (sweep->parsed()) {
            gmatch::ExperimentConfig cfg;
            cfg.family = gmatch::parse_family(sw_family);
            cfg.n = sw_nodes;
            for (double c = sw_c_from; c <= sw_c_to + 1e-9; c += sw_c_step) cfg.c_grid.push_back(c);
            cfg.algorithms = parse_algs(sw_algs);
            cfg.trials = sw_trials;
            cfg.master_seed = sw_seed;
            if (sw_oracle == "on")
                cfg.oracle = true;
            else if (sw_oracle == "off")
                cfg.oracle = false;
            else
                throw std::invalid_argument("--oracle must be on|off");
            cfg.force_oracle = sw_force_oracle;
            cfg.method = parse_method(sw_method);
            cfg.threads = sw_threads;
            std::vector<gmatch::TrialRecord> trials = gmatch::run_sweep(cfg, &std::cerr);
            gmatch::write_trials_csv(sw_out_trials, trials);
            if (!sw_out_agg.empty())
                gmatch::write_aggregates_csv(sw_out_agg, gmatch::aggregate(trials));
            return 0;
        }
        if (agg->parsed()) {
            std::vector<gmatch::TrialRecord> trials = gmatch::read_trials_csv(agg_in);
            gmatch::write_aggregates_csv(agg_out, gmatch::aggregate(trials));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
