#include "CLI11.hpp"

#include "qqc/benchmarks.hpp"
#include "qqc/compress.hpp"
#include "qqc/report.hpp"
#include "qqc/util.hpp"
#include "qqc/verify.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace qqc;

struct UsageError {
    std::string msg;
};

struct Config {
    std::string benchmark;
    std::string circuit_path;
    std::string graph_path;
    int size = 0;
    std::string arch = "grid";
    std::string arch_file;
    std::string strategies = "qubit_only";
    uint64_t seed = 1;
    double t1_qubit_us = 163.5;
    double t1_ratio = 1.0 / 3.0;
    std::string sweep_sizes;
    std::string sweep_ratio;
    bool verify = false;
    std::string out_path;
    std::string format = "json";
    std::string overrides_path;
};

struct RunRow {
    std::string benchmark;
    std::string arch;
    Strategy strategy = Strategy::QubitOnly;
    uint64_t seed = 0;
    int size = 0;
    EpsReport report;
    std::vector<std::pair<int, int>> pairs;
    std::optional<bool> verified;
    std::optional<double> ratio;
    std::optional<double> crossover;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail("cannot open ", path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<Strategy> parse_strategies(const std::string& list) {
    std::vector<Strategy> out;
    size_t pos = 0;
    while (pos <= list.size()) {
        size_t comma = list.find(',', pos);
        if (comma == std::string::npos)
            comma = list.size();
        std::string name = list.substr(pos, comma - pos);
        if (name.empty())
            throw UsageError{"empty strategy name in --strategy"};
        out.push_back(strategy_from_name(name));
        pos = comma + 1;
        if (comma == list.size())
            break;
    }
    if (out.empty())
        throw UsageError{"--strategy needs at least one name"};
    return out;
}

std::pair<int, int> parse_size_range(const std::string& s) {
    size_t dots = s.find("..");
    if (dots == std::string::npos)
        throw UsageError{"--sweep-sizes expects a..b"};
    int a = 0;
    int b = 0;
    try {
        a = std::stoi(s.substr(0, dots));
        b = std::stoi(s.substr(dots + 2));
    } catch (const std::exception&) {
        throw UsageError{"--sweep-sizes expects integer bounds"};
    }
    if (a < 1 || b < a)
        throw UsageError{"--sweep-sizes needs 1 <= a <= b"};
    return {a, b};
}

std::vector<double> parse_ratio_range(const std::string& s) {
    size_t dots = s.find("..");
    size_t colon = s.find(':', dots == std::string::npos ? 0 : dots + 2);
    if (dots == std::string::npos || colon == std::string::npos)
        throw UsageError{"--sweep-ratio expects a..b:step"};
    double a = 0.0;
    double b = 0.0;
    double step = 0.0;
    try {
        a = std::stod(s.substr(0, dots));
        b = std::stod(s.substr(dots + 2, colon - dots - 2));
        step = std::stod(s.substr(colon + 1));
    } catch (const std::exception&) {
        throw UsageError{"--sweep-ratio expects numeric a..b:step"};
    }
    if (!(a > 0.0) || b < a || b > 1.0 || !(step > 0.0))
        throw UsageError{"--sweep-ratio needs 0 < a <= b <= 1 and step > 0"};
    std::vector<double> ratios;
    for (int i = 0;; ++i) {
        double r = a + i * step;
        if (r > b + step * 1e-9)
            break;
        ratios.push_back(r);
    }
    return ratios;
}

Circuit make_circuit(const Config& cfg, int size) {
    if (!cfg.benchmark.empty())
        return gen_benchmark(benchmark_from_name(cfg.benchmark), size, cfg.seed);
    if (!cfg.circuit_path.empty())
        return parse_circuit(read_file(cfg.circuit_path));
    return gen_qaoa(parse_graph(read_file(cfg.graph_path)), cfg.seed);
}

PhysicalTopology make_arch(const Config& cfg, int qubits) {
    if (!cfg.arch_file.empty())
        return parse_topology(read_file(cfg.arch_file));
    if (cfg.arch == "grid")
        return build_grid(qubits);
    if (cfg.arch == "ring")
        return build_ring(qubits);
    if (cfg.arch == "heavy_hex")
        return build_heavy_hex();
    throw UsageError{"--arch must be grid, ring, or heavy_hex"};
}

std::string source_label(const Config& cfg) {
    if (!cfg.benchmark.empty())
        return cfg.benchmark;
    if (!cfg.circuit_path.empty())
        return "circuit";
    return "graph";
}

std::string arch_label(const Config& cfg) {
    return cfg.arch_file.empty() ? cfg.arch : "file";
}

Json row_json(const RunRow& r) {
    Json o = Json::object();
    o.set("benchmark", Json::str(r.benchmark));
    o.set("arch", Json::str(r.arch));
    o.set("strategy", Json::str(strategy_name(r.strategy)));
    o.set("seed", Json::integer(int64_t(r.seed)));
    o.set("size", Json::integer(r.size));
    o.set("gate_eps", Json::num(r.report.gate_eps));
    o.set("coherence_eps", Json::num(r.report.coherence_eps));
    o.set("total_eps", Json::num(r.report.total_eps));
    o.set("duration_ns", Json::integer(r.report.duration_ns));
    Json counts = Json::object();
    counts.set("single_qubit", Json::integer(r.report.counts.single_qubit));
    counts.set("single_ququart", Json::integer(r.report.counts.single_ququart));
    counts.set("internal_cx", Json::integer(r.report.counts.internal_cx));
    counts.set("cx2", Json::integer(r.report.counts.cx2));
    counts.set("partial_cx_qubit_ququart",
               Json::integer(r.report.counts.partial_cx_qubit_ququart));
    counts.set("partial_cx_ququart_ququart",
               Json::integer(r.report.counts.partial_cx_ququart_ququart));
    counts.set("swap2", Json::integer(r.report.counts.swap2));
    counts.set("partial_swap", Json::integer(r.report.counts.partial_swap));
    counts.set("swap4", Json::integer(r.report.counts.swap4));
    counts.set("enc_dec", Json::integer(r.report.counts.enc_dec));
    o.set("gate_counts", counts);
    o.set("swap_count", Json::integer(r.report.swap_count));
    o.set("internal_cx_count", Json::integer(r.report.internal_cx_count));
    Json pairs = Json::array();
    for (auto [a, b] : r.pairs) {
        Json p = Json::array();
        p.push(Json::integer(a));
        p.push(Json::integer(b));
        pairs.push(std::move(p));
    }
    o.set("compression_pairs", std::move(pairs));
    if (r.verified)
        o.set("verified", Json::boolean(*r.verified));
    if (r.ratio)
        o.set("ratio", Json::num(*r.ratio));
    if (r.crossover)
        o.set("crossover_ratio", Json::num(*r.crossover));
    return o;
}

const std::vector<std::string> kCsvHeader = {
    "benchmark", "arch", "strategy", "seed", "size", "ratio",
    "gate_eps", "coherence_eps", "total_eps", "duration_ns",
    "swap_count", "internal_cx_count",
    "single_qubit", "single_ququart", "internal_cx", "cx2",
    "partial_cx_qubit_ququart", "partial_cx_ququart_ququart",
    "swap2", "partial_swap", "swap4", "enc_dec",
    "compression_pairs", "crossover_ratio", "verified"};

std::vector<std::string> row_csv(const RunRow& r) {
    std::string pairs;
    for (auto [a, b] : r.pairs) {
        if (!pairs.empty())
            pairs += ';';
        pairs += std::to_string(a) + '-' + std::to_string(b);
    }
    return {
        r.benchmark,
        r.arch,
        strategy_name(r.strategy),
        std::to_string(r.seed),
        std::to_string(r.size),
        r.ratio ? format_double_12(*r.ratio) : "",
        format_double_12(r.report.gate_eps),
        format_double_12(r.report.coherence_eps),
        format_double_12(r.report.total_eps),
        std::to_string(r.report.duration_ns),
        std::to_string(r.report.swap_count),
        std::to_string(r.report.internal_cx_count),
        std::to_string(r.report.counts.single_qubit),
        std::to_string(r.report.counts.single_ququart),
        std::to_string(r.report.counts.internal_cx),
        std::to_string(r.report.counts.cx2),
        std::to_string(r.report.counts.partial_cx_qubit_ququart),
        std::to_string(r.report.counts.partial_cx_ququart_ququart),
        std::to_string(r.report.counts.swap2),
        std::to_string(r.report.counts.partial_swap),
        std::to_string(r.report.counts.swap4),
        std::to_string(r.report.counts.enc_dec),
        pairs,
        r.crossover ? format_double_12(*r.crossover) : "",
        r.verified ? (*r.verified ? "true" : "false") : "",
    };
}

void write_output(const Config& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out)
        fail("cannot write ", cfg.out_path);
    out << text;
}

void maybe_verify(const Config& cfg, const Circuit& c, const StrategyOutput& so,
                  RunRow& row, bool& verify_failed) {
    if (!cfg.verify)
        return;
    if (c.num_qubits > 12 || unit_basis(so.schedule).total_dim > 4096) {
        std::cerr << "note: skipping verification, state space too large\n";
        return;
    }
    EquivalenceResult res = check_equivalence(c, so.schedule, cfg.seed);
    row.verified = res.ok;
    if (!res.ok) {
        verify_failed = true;
        std::cerr << "verification failed (" << strategy_name(so.strategy)
                  << "): " << res.detail << "\n";
    }
}

int run(const Config& cfg) {
    int sources = int(!cfg.benchmark.empty()) + int(!cfg.circuit_path.empty()) +
                  int(!cfg.graph_path.empty());
    if (sources != 1)
        throw UsageError{"exactly one of --benchmark, --circuit, --graph is required"};
    if (!cfg.sweep_sizes.empty() && !cfg.sweep_ratio.empty())
        throw UsageError{"--sweep-sizes and --sweep-ratio are mutually exclusive"};
    if (!cfg.sweep_sizes.empty() && cfg.benchmark.empty())
        throw UsageError{"--sweep-sizes requires --benchmark"};
    if (!cfg.benchmark.empty() && cfg.sweep_sizes.empty() && cfg.size < 1)
        throw UsageError{"--benchmark requires --size"};
    if (!(cfg.t1_ratio > 0.0) || cfg.t1_ratio > 1.0)
        throw UsageError{"--t1-ratio must lie in (0, 1]"};
    if (!(cfg.t1_qubit_us > 0.0))
        throw UsageError{"--t1-qubit-us must be positive"};
    if (cfg.format != "json" && cfg.format != "csv")
        throw UsageError{"--format must be json or csv"};

    std::vector<Strategy> strategies = parse_strategies(cfg.strategies);
    GateLibrary lib;
    if (!cfg.overrides_path.empty())
        lib.apply_overrides(read_file(cfg.overrides_path));
    CoherenceParams coh = CoherenceParams::from_us(cfg.t1_qubit_us, cfg.t1_ratio);

    std::vector<RunRow> rows;
    bool verify_failed = false;
    bool single_object = false;

    auto compile_cell = [&](const Circuit& c, const SlotGraph& sg, Strategy s,
                            const std::string& cell) {
        try {
            return run_strategy(s, c, sg, lib, coh);
        } catch (const Error& e) {
            fail(cell, ": ", e.what());
        }
    };

    if (!cfg.sweep_sizes.empty()) {
        auto [lo, hi] = parse_size_range(cfg.sweep_sizes);
        for (int size = lo; size <= hi; ++size) {
            Circuit c = make_circuit(cfg, size);
            PhysicalTopology topo = make_arch(cfg, c.num_qubits);
            SlotGraph sg = expand_slot_graph(topo);
            for (Strategy s : strategies) {
                std::string cell = "size " + std::to_string(size) + " strategy " +
                                   strategy_name(s);
                StrategyOutput so = compile_cell(c, sg, s, cell);
                RunRow row;
                row.benchmark = source_label(cfg);
                row.arch = arch_label(cfg);
                row.strategy = s;
                row.seed = cfg.seed;
                row.size = size;
                row.report = so.report;
                row.pairs = so.plan.pairs;
                maybe_verify(cfg, c, so, row, verify_failed);
                rows.push_back(std::move(row));
            }
        }
    } else if (!cfg.sweep_ratio.empty()) {
        std::vector<double> ratios = parse_ratio_range(cfg.sweep_ratio);
        Circuit c = make_circuit(cfg, cfg.size);
        PhysicalTopology topo = make_arch(cfg, c.num_qubits);
        SlotGraph sg = expand_slot_graph(topo);
        double t1_ns = cfg.t1_qubit_us * 1000.0;

        StrategyOutput base = compile_cell(c, sg, Strategy::QubitOnly, "baseline");
        std::vector<SweepPoint> base_sweep = t1_sweep(base.schedule, lib, t1_ns, ratios);

        struct Compiled {
            StrategyOutput so;
            std::vector<SweepPoint> sweep;
            std::optional<double> crossover;
        };
        std::vector<Compiled> compiled;
        for (Strategy s : strategies) {
            std::string cell = std::string("strategy ") + strategy_name(s);
            Compiled entry{compile_cell(c, sg, s, cell), {}, {}};
            entry.sweep = t1_sweep(entry.so.schedule, lib, t1_ns, ratios);
            if (s != Strategy::QubitOnly)
                entry.crossover = crossover_ratio(entry.sweep, base_sweep);
            compiled.push_back(std::move(entry));
        }
        for (size_t ri = 0; ri < ratios.size(); ++ri)
            for (Compiled& entry : compiled) {
                RunRow row;
                row.benchmark = source_label(cfg);
                row.arch = arch_label(cfg);
                row.strategy = entry.so.strategy;
                row.seed = cfg.seed;
                row.size = c.num_qubits;
                row.report = entry.so.report;
                row.report.coherence_eps = entry.sweep[ri].coherence_eps;
                row.report.total_eps = entry.sweep[ri].total_eps;
                row.pairs = entry.so.plan.pairs;
                row.ratio = ratios[ri];
                row.crossover = entry.crossover;
                rows.push_back(std::move(row));
            }
    } else {
        Circuit c = make_circuit(cfg, cfg.size);
        PhysicalTopology topo = make_arch(cfg, c.num_qubits);
        SlotGraph sg = expand_slot_graph(topo);
        single_object = strategies.size() == 1;
        for (Strategy s : strategies) {
            StrategyOutput so =
                compile_cell(c, sg, s, std::string("strategy ") + strategy_name(s));
            RunRow row;
            row.benchmark = source_label(cfg);
            row.arch = arch_label(cfg);
            row.strategy = s;
            row.seed = cfg.seed;
            row.size = c.num_qubits;
            row.report = so.report;
            row.pairs = so.plan.pairs;
            maybe_verify(cfg, c, so, row, verify_failed);
            rows.push_back(std::move(row));
        }
    }

    if (cfg.format == "csv") {
        Csv csv;
        csv.header = kCsvHeader;
        for (const RunRow& r : rows)
            csv.rows.push_back(row_csv(r));
        write_output(cfg, csv.dump());
    } else if (single_object) {
        write_output(cfg, row_json(rows[0]).dump());
    } else {
        Json arr = Json::array();
        for (const RunRow& r : rows)
            arr.push(row_json(r));
        write_output(cfg, arr.dump());
    }
    return verify_failed ? 3 : 0;
}

} // namespace

int main(int argc, char** argv) {
    Config cfg;
    CLI::App app{"Compiler for qubit circuits on mixed-radix ququart hardware"};
    app.add_option("--benchmark", cfg.benchmark,
                   "Built-in benchmark kind (cuccaro, cnu, bv, qram, qaoa_cylinder, "
                   "qaoa_torus, qaoa_welded, qaoa_random)");
    app.add_option("--circuit", cfg.circuit_path, "Circuit file to compile");
    app.add_option("--graph", cfg.graph_path, "Graph file compiled as one QAOA layer");
    app.add_option("--size", cfg.size, "Logical qubit count for --benchmark");
    app.add_option("--arch", cfg.arch, "Architecture family: grid, ring, heavy_hex");
    app.add_option("--arch-file", cfg.arch_file, "Architecture from a link-list file");
    app.add_option("--strategy", cfg.strategies,
                   "Comma-separated strategies: qubit_only, fq, ec, eqm, rb, awe, pp");
    app.add_option("--seed", cfg.seed, "Random seed for generators");
    app.add_option("--t1-qubit-us", cfg.t1_qubit_us, "Qubit T1 in microseconds");
    app.add_option("--t1-ratio", cfg.t1_ratio, "Ququart T1 as a fraction of qubit T1");
    app.add_option("--sweep-sizes", cfg.sweep_sizes, "Benchmark size sweep a..b");
    app.add_option("--sweep-ratio", cfg.sweep_ratio, "T1 ratio sweep a..b:step");
    app.add_flag("--verify", cfg.verify, "Check compiled-vs-logical equivalence");
    app.add_option("--out", cfg.out_path, "Output path (stdout when omitted)");
    app.add_option("--format", cfg.format, "Output format: json or csv");
    app.add_option("--gate-overrides", cfg.overrides_path,
                   "Gate duration/fidelity override file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        return run(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.msg << "\n";
        return 1;
    } catch (const qqc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
