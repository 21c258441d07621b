#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "gmatch/exact.hpp"
#include "gmatch/graph.hpp"
#include "gmatch/graph_gen.hpp"
#include "gmatch/matcher.hpp"
#include "gmatch/rng.hpp"

namespace gmatch {

struct ExperimentConfig {
    Family family = Family::General;
    std::uint64_t n = 0;
    std::vector<double> c_grid;
    std::vector<AlgorithmSpec> algorithms;
    std::uint32_t trials = 100;
    std::uint32_t master_seed = 1;
    bool oracle = true;
    std::uint64_t oracle_node_limit = 100000;
    bool force_oracle = false;
    GenMethod method = GenMethod::Auto;
    unsigned threads = 1;

    void validate() const {
        if (n < 2) throw std::invalid_argument("config: n must be >= 2");
        if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
        if (c_grid.empty()) throw std::invalid_argument("config: empty c grid");
        for (double c : c_grid)
            if (!(c > 0.0)) throw std::invalid_argument("config: c values must be > 0");
        if (algorithms.empty()) throw std::invalid_argument("config: no algorithms selected");
        if (oracle && n > oracle_node_limit && !force_oracle)
            throw std::invalid_argument(
                "config: oracle refused for n > " + std::to_string(oracle_node_limit) +
                " (use --force-oracle to override)");
    }
};

struct TrialRecord {
    Family family = Family::General;
    std::uint64_t n = 0;
    double c = 0.0;
    std::string algorithm;
    std::uint32_t trial_index = 0;
    std::uint32_t seed = 0;
    std::uint64_t m_edges = 0;
    std::uint64_t matching_size = 0;
    std::optional<std::uint64_t> oracle_size;
    std::uint64_t o1 = 0, o2 = 0, h = 0;
    double wall_time_seconds = 0.0;
};

struct AggregateRecord {
    Family family = Family::General;
    std::uint64_t n = 0;
    double c = 0.0;
    std::string algorithm;
    std::optional<double> lambda;  // failure rate
    std::optional<double> rho;     // mean lost edges conditioned on failure
    double t_bar = 0.0;
    double t_var = 0.0;
    double f_o1 = 0.0, f_o2 = 0.0, f_h = 0.0;
};

inline std::string format_real(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// Cell-independent seeds: wrapping 32-bit mix of master seed, trial index and
// a multiplicative hash of the c-grid index; algorithm streams add a name tag.
inline std::uint32_t derive_seed(std::uint32_t master, std::uint32_t trial,
                                 std::uint32_t c_index, std::uint32_t salt) {
    return master + trial * 1000003u + c_index * 2654435761u + salt;
}

inline std::uint32_t fnv1a(const std::string& s) {
    std::uint32_t h = 2166136261u;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 16777619u;
    }
    return h;
}

inline std::vector<TrialRecord> run_sweep(const ExperimentConfig& cfg,
                                          std::ostream* progress = nullptr) {
    cfg.validate();
    const std::size_t n_algs = cfg.algorithms.size();
    const std::size_t n_tasks = cfg.c_grid.size() * cfg.trials;
    std::vector<TrialRecord> records(n_tasks * n_algs);
    std::mutex progress_mutex;

    auto run_task = [&](std::size_t task) {
        std::size_t ci = task / cfg.trials;
        std::uint32_t trial = static_cast<std::uint32_t>(task % cfg.trials);
        double c = cfg.c_grid[ci];

        GraphFamily fam{cfg.family, cfg.n, c};
        std::uint32_t graph_seed =
            derive_seed(cfg.master_seed, trial, static_cast<std::uint32_t>(ci), 0);
        SeededRng graph_rng(graph_seed);
        DynamicGraph pristine = generate(fam, graph_rng, cfg.method);

        std::optional<std::uint64_t> oracle_size;
        if (cfg.oracle) {
            Matching opt = cfg.family == Family::Bipartite
                               ? max_matching_bipartite(pristine, cfg.n / 2)
                               : max_matching_general(pristine);
            oracle_size = opt.size();
        }

        for (std::size_t a = 0; a < n_algs; ++a) {
            const AlgorithmSpec& alg = cfg.algorithms[a];
            std::uint32_t alg_seed = derive_seed(cfg.master_seed, trial,
                                                 static_cast<std::uint32_t>(ci), fnv1a(alg.name()));
            SeededRng alg_rng(alg_seed);
            DynamicGraph work = pristine;
            auto t0 = std::chrono::steady_clock::now();
            RunResult res = run(work, alg, alg_rng);
            auto t1 = std::chrono::steady_clock::now();

            TrialRecord& rec = records[task * n_algs + a];
            rec.family = cfg.family;
            rec.n = cfg.n;
            rec.c = c;
            rec.algorithm = alg.name();
            rec.trial_index = trial;
            rec.seed = alg_seed;
            rec.m_edges = pristine.edge_count();
            rec.matching_size = res.matching.size();
            rec.oracle_size = oracle_size;
            rec.o1 = res.counters.o1;
            rec.o2 = res.counters.o2;
            rec.h = res.counters.h;
            rec.wall_time_seconds = std::chrono::duration<double>(t1 - t0).count();
        }
        if (progress) {
            std::lock_guard<std::mutex> lock(progress_mutex);
            *progress << "c=" << format_real(c) << " trial " << (trial + 1) << "/" << cfg.trials
                      << " done\n";
        }
    };

    unsigned threads = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
    if (threads <= 1) {
        for (std::size_t t = 0; t < n_tasks; ++t) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t t = next.fetch_add(1);
                    if (t >= n_tasks) break;
                    run_task(t);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    return records;
}

// Group by (family, n, formatted c, algorithm) in first-appearance order.
// lambda = failing fraction, rho = mean shortfall over failing trials (0 when
// none fail); both empty when the group carries no oracle sizes. Step
// fractions are averaged per trial, then meaned.
inline std::vector<AggregateRecord> aggregate(const std::vector<TrialRecord>& records) {
    if (records.empty()) throw std::invalid_argument("aggregate: no records");

    struct Group {
        AggregateRecord agg;
        std::vector<const TrialRecord*> rows;
    };
    std::vector<Group> groups;
    auto key_of = [](const TrialRecord& r) {
        return std::string(family_name(r.family)) + "|" + std::to_string(r.n) + "|" +
               format_real(r.c) + "|" + r.algorithm;
    };
    std::vector<std::string> keys;
    for (const TrialRecord& r : records) {
        std::string k = key_of(r);
        std::size_t gi = 0;
        for (; gi < keys.size(); ++gi)
            if (keys[gi] == k) break;
        if (gi == keys.size()) {
            keys.push_back(k);
            Group g;
            g.agg.family = r.family;
            g.agg.n = r.n;
            g.agg.c = r.c;
            g.agg.algorithm = r.algorithm;
            groups.push_back(std::move(g));
        }
        groups[gi].rows.push_back(&r);
    }

    std::vector<AggregateRecord> out;
    out.reserve(groups.size());
    for (Group& g : groups) {
        std::size_t trials = g.rows.size();
        std::size_t with_oracle = 0;
        for (const TrialRecord* r : g.rows)
            if (r->oracle_size) ++with_oracle;
        if (with_oracle != 0 && with_oracle != trials)
            throw std::invalid_argument("aggregate: group with partial oracle coverage: " +
                                        g.agg.algorithm);

        if (with_oracle == trials) {
            std::size_t failures = 0;
            double lost = 0.0;
            for (const TrialRecord* r : g.rows) {
                if (r->matching_size < *r->oracle_size) {
                    ++failures;
                    lost += static_cast<double>(*r->oracle_size - r->matching_size);
                }
            }
            g.agg.lambda = static_cast<double>(failures) / static_cast<double>(trials);
            g.agg.rho = failures == 0 ? 0.0 : lost / static_cast<double>(failures);
        }

        double t_sum = 0.0;
        for (const TrialRecord* r : g.rows) t_sum += r->wall_time_seconds;
        g.agg.t_bar = t_sum / static_cast<double>(trials);
        double ss = 0.0;
        for (const TrialRecord* r : g.rows) {
            double d = r->wall_time_seconds - g.agg.t_bar;
            ss += d * d;
        }
        g.agg.t_var = trials > 1 ? ss / static_cast<double>(trials - 1) : 0.0;

        double fo1 = 0.0, fo2 = 0.0, fh = 0.0;
        std::size_t stepped = 0;
        for (const TrialRecord* r : g.rows) {
            std::uint64_t steps = r->o1 + r->o2 + r->h;
            if (steps == 0) continue;
            ++stepped;
            fo1 += static_cast<double>(r->o1) / static_cast<double>(steps);
            fo2 += static_cast<double>(r->o2) / static_cast<double>(steps);
            fh += static_cast<double>(r->h) / static_cast<double>(steps);
        }
        if (stepped > 0) {
            g.agg.f_o1 = fo1 / static_cast<double>(stepped);
            g.agg.f_o2 = fo2 / static_cast<double>(stepped);
            g.agg.f_h = fh / static_cast<double>(stepped);
        }
        out.push_back(std::move(g.agg));
    }
    return out;
}

inline const char* kTrialCsvHeader =
    "family,n,c,algorithm,trial_index,seed,m_edges,matching_size,oracle_size,o1,o2,h,"
    "wall_time_seconds";

inline void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
    out << kTrialCsvHeader << '\n';
    for (const TrialRecord& r : records) {
        out << family_name(r.family) << ',' << r.n << ',' << format_real(r.c) << ','
            << r.algorithm << ',' << r.trial_index << ',' << r.seed << ',' << r.m_edges << ','
            << r.matching_size << ',';
        if (r.oracle_size) out << *r.oracle_size;
        out << ',' << r.o1 << ',' << r.o2 << ',' << r.h << ','
            << format_real(r.wall_time_seconds) << '\n';
    }
}

inline const char* kAggregateCsvHeader = "family,n,c,algorithm,lambda,rho,t_bar,t_var,f_o1,f_o2,f_h";

inline void write_aggregates_csv(std::ostream& out, const std::vector<AggregateRecord>& records) {
    out << kAggregateCsvHeader << '\n';
    for (const AggregateRecord& r : records) {
        out << family_name(r.family) << ',' << r.n << ',' << format_real(r.c) << ','
            << r.algorithm << ',';
        if (r.lambda) out << format_real(*r.lambda);
        out << ',';
        if (r.rho) out << format_real(*r.rho);
        out << ',' << format_real(r.t_bar) << ',' << format_real(r.t_var) << ','
            << format_real(r.f_o1) << ',' << format_real(r.f_o2) << ',' << format_real(r.f_h)
            << '\n';
    }
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

inline std::vector<TrialRecord> read_trials_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("trials csv: empty input");
    if (line != kTrialCsvHeader) throw std::runtime_error("trials csv: unexpected header");
    std::vector<TrialRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 13) throw std::runtime_error("trials csv: bad row: " + line);
        TrialRecord r;
        r.family = parse_family(f[0]);
        r.n = std::stoull(f[1]);
        r.c = std::stod(f[2]);
        r.algorithm = f[3];
        r.trial_index = static_cast<std::uint32_t>(std::stoul(f[4]));
        r.seed = static_cast<std::uint32_t>(std::stoul(f[5]));
        r.m_edges = std::stoull(f[6]);
        r.matching_size = std::stoull(f[7]);
        if (!f[8].empty()) r.oracle_size = std::stoull(f[8]);
        r.o1 = std::stoull(f[9]);
        r.o2 = std::stoull(f[10]);
        r.h = std::stoull(f[11]);
        r.wall_time_seconds = std::stod(f[12]);
        records.push_back(std::move(r));
    }
    return records;
}

inline void write_trials_csv(const std::string& path, const std::vector<TrialRecord>& records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_trials_csv(out, records);
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline void write_aggregates_csv(const std::string& path,
                                 const std::vector<AggregateRecord>& records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_aggregates_csv(out, records);
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::vector<TrialRecord> read_trials_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_trials_csv(in);
}

}  // namespace gmatch
