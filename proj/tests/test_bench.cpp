#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <vector>

#include "gmatch/bench.hpp"
#include "gmatch/exact.hpp"

using gmatch::AggregateRecord;
using gmatch::AlgorithmSpec;
using gmatch::ExperimentConfig;
using gmatch::Family;
using gmatch::TrialRecord;

namespace {

TrialRecord make_trial(std::uint32_t idx, std::uint64_t size, std::uint64_t oracle) {
    TrialRecord r;
    r.family = Family::General;
    r.n = 100;
    r.c = 2.0;
    r.algorithm = "opt12-potdeg";
    r.trial_index = idx;
    r.seed = idx;
    r.m_edges = 100;
    r.matching_size = size;
    r.oracle_size = oracle;
    r.o1 = size;
    r.wall_time_seconds = 0.25;
    return r;
}

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.family = Family::Bipartite;
    cfg.n = 100;
    cfg.c_grid = {1.0, 2.0};
    cfg.algorithms = AlgorithmSpec::all();
    cfg.trials = 3;
    cfg.master_seed = 77;
    cfg.oracle = true;
    return cfg;
}

std::string strip_wall_column(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
        out += line.substr(0, line.rfind(','));
        out += '\n';
    }
    return out;
}

}  // namespace

TEST_CASE("aggregate arithmetic", "[bench]") {
    SECTION("all trials optimal") {
        std::vector<TrialRecord> rows = {make_trial(0, 40, 40), make_trial(1, 41, 41)};
        auto agg = gmatch::aggregate(rows);
        REQUIRE(agg.size() == 1);
        REQUIRE(*agg[0].lambda == 0.0);
        REQUIRE(*agg[0].rho == 0.0);
    }
    SECTION("two of four trials each lose three edges") {
        std::vector<TrialRecord> rows = {make_trial(0, 40, 40), make_trial(1, 37, 40),
                                         make_trial(2, 40, 40), make_trial(3, 37, 40)};
        auto agg = gmatch::aggregate(rows);
        REQUIRE(agg.size() == 1);
        REQUIRE(*agg[0].lambda == Catch::Approx(0.5));
        REQUIRE(*agg[0].rho == Catch::Approx(3.0));
    }
    SECTION("step fractions average per trial") {
        TrialRecord a = make_trial(0, 40, 40);
        a.o1 = 10;
        a.o2 = 10;
        a.h = 20;
        TrialRecord b = make_trial(1, 40, 40);
        b.o1 = 30;
        b.o2 = 0;
        b.h = 10;
        auto agg = gmatch::aggregate({a, b});
        REQUIRE(agg[0].f_o1 == Catch::Approx((0.25 + 0.75) / 2));
        REQUIRE(agg[0].f_o2 == Catch::Approx(0.125));
        REQUIRE(agg[0].f_h == Catch::Approx((0.5 + 0.25) / 2));
        REQUIRE(agg[0].f_o1 + agg[0].f_o2 + agg[0].f_h == Catch::Approx(1.0).margin(1e-9));
    }
    SECTION("no oracle leaves lambda and rho empty") {
        TrialRecord a = make_trial(0, 40, 40);
        a.oracle_size.reset();
        auto agg = gmatch::aggregate({a});
        REQUIRE(!agg[0].lambda.has_value());
        REQUIRE(!agg[0].rho.has_value());
    }
    SECTION("partial oracle coverage is rejected") {
        TrialRecord a = make_trial(0, 40, 40);
        TrialRecord b = make_trial(1, 40, 40);
        b.oracle_size.reset();
        REQUIRE_THROWS_AS(gmatch::aggregate({a, b}), std::invalid_argument);
    }
    SECTION("empty input is rejected") {
        REQUIRE_THROWS_AS(gmatch::aggregate({}), std::invalid_argument);
    }
}

TEST_CASE("csv writing", "[bench]") {
    SECTION("empty list yields a header-only file") {
        std::ostringstream out;
        gmatch::write_trials_csv(out, {});
        REQUIRE(out.str() == std::string(gmatch::kTrialCsvHeader) + "\n");
    }
    SECTION("one record yields two lines") {
        std::ostringstream out;
        gmatch::write_trials_csv(out, {make_trial(0, 40, 40)});
        std::string s = out.str();
        REQUIRE(std::count(s.begin(), s.end(), '\n') == 2);
    }
    SECTION("round trip preserves records") {
        TrialRecord a = make_trial(0, 40, 42);
        a.o2 = 3;
        a.h = 7;
        TrialRecord b = make_trial(1, 39, 42);
        b.oracle_size.reset();
        b.family = Family::Bipartite;
        std::ostringstream out;
        gmatch::write_trials_csv(out, {a, b});
        std::istringstream in(out.str());
        auto rows = gmatch::read_trials_csv(in);
        REQUIRE(rows.size() == 2);
        REQUIRE(rows[0].matching_size == 40);
        REQUIRE(rows[0].oracle_size == 42);
        REQUIRE(rows[0].o2 == 3);
        REQUIRE(rows[1].family == Family::Bipartite);
        REQUIRE(!rows[1].oracle_size.has_value());
        std::ostringstream out2;
        gmatch::write_trials_csv(out2, rows);
        REQUIRE(out.str() == out2.str());
    }
}

TEST_CASE("run_sweep basics", "[bench]") {
    ExperimentConfig cfg = small_config();
    cfg.c_grid = {1.0};
    cfg.trials = 1;
    auto records = gmatch::run_sweep(cfg);
    REQUIRE(records.size() == cfg.algorithms.size());
    for (const TrialRecord& r : records) {
        REQUIRE(r.o1 + r.o2 + r.h == r.matching_size);
        REQUIRE(r.oracle_size.has_value());
        REQUIRE(r.matching_size <= *r.oracle_size);
    }
}

TEST_CASE("run_sweep is deterministic modulo wall time", "[bench]") {
    ExperimentConfig cfg = small_config();
    std::ostringstream a, b;
    gmatch::write_trials_csv(a, gmatch::run_sweep(cfg));
    gmatch::write_trials_csv(b, gmatch::run_sweep(cfg));
    REQUIRE(strip_wall_column(a.str()) == strip_wall_column(b.str()));
}

TEST_CASE("oracle sizes agree with brute force on tiny sweeps", "[bench]") {
    ExperimentConfig cfg;
    cfg.family = Family::General;
    cfg.n = 10;
    cfg.c_grid = {1.0, 2.0};
    cfg.algorithms = {AlgorithmSpec{gmatch::OptRule::Opt12, gmatch::HeuRule::PotDeg}};
    cfg.trials = 20;
    cfg.master_seed = 5;
    auto records = gmatch::run_sweep(cfg);
    for (const TrialRecord& r : records) {
        std::uint32_t c_index = r.c == 1.0 ? 0 : 1;
        gmatch::SeededRng rng(gmatch::derive_seed(cfg.master_seed, r.trial_index, c_index, 0));
        gmatch::DynamicGraph g =
            gmatch::generate({cfg.family, cfg.n, r.c}, rng, cfg.method);
        REQUIRE(g.edge_count() == r.m_edges);
        if (g.edge_count() <= 24) REQUIRE(*r.oracle_size == gmatch::max_matching_brute(g));
    }
}

TEST_CASE("config validation", "[bench]") {
    ExperimentConfig cfg = small_config();
    cfg.trials = 0;
    REQUIRE_THROWS_AS(gmatch::run_sweep(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.n = 200001;
    REQUIRE_THROWS_AS(gmatch::run_sweep(cfg), std::invalid_argument);  // oracle guard
    cfg.oracle = false;
    cfg.n = 2000;
    cfg.trials = 1;
    cfg.c_grid = {1.0};
    auto records = gmatch::run_sweep(cfg);
    REQUIRE(!records[0].oracle_size.has_value());
}
