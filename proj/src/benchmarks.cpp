#include "qqc/benchmarks.hpp"

#include "qqc/util.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qqc {

Graph Graph::make(int n, std::vector<std::pair<int, int>> edges) {
    if (n <= 0)
        fail("graph needs at least one node");
    Graph g;
    g.num_nodes = n;
    for (auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            fail("edge ", u, "-", v, " out of range (nodes ", n, ")");
        if (u == v)
            fail("self edge on node ", u);
        if (u > v)
            std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges = std::move(edges);
    return g;
}

Graph parse_graph(const std::string& text) {
    std::istringstream is(text);
    std::string raw;
    int line = 0, n = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(is, raw)) {
        ++line;
        auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.resize(hash);
        auto toks = split_ws(raw);
        if (toks.empty())
            continue;
        if (n < 0) {
            if (toks[0] != "nodes" || toks.size() != 2)
                fail("line ", line, ": expected 'nodes <N>' header");
            n = std::stoi(toks[1]);
            continue;
        }
        if (toks[0] != "edge" || toks.size() != 3)
            fail("line ", line, ": expected 'edge <u> <v>'");
        edges.emplace_back(std::stoi(toks[1]), std::stoi(toks[2]));
    }
    if (n < 0)
        fail("missing 'nodes <N>' header");
    return Graph::make(n, std::move(edges));
}

Graph gen_cylinder(int rows, int cols) {
    if (rows < 3)
        fail("cylinder needs >= 3 rows along the wrapped dimension");
    if (cols < 1)
        fail("cylinder needs >= 1 column");
    std::vector<std::pair<int, int>> edges;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols)
                edges.emplace_back(id(r, c), id(r, c + 1));
            edges.emplace_back(id(r, c), id((r + 1) % rows, c));
        }
    return Graph::make(rows * cols, std::move(edges));
}

Graph gen_torus(int rows, int cols) {
    if (rows < 3 || cols < 3)
        fail("torus needs >= 3 rows and columns");
    std::vector<std::pair<int, int>> edges;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            edges.emplace_back(id(r, c), id(r, (c + 1) % cols));
            edges.emplace_back(id(r, c), id((r + 1) % rows, c));
        }
    return Graph::make(rows * cols, std::move(edges));
}

Graph gen_welded_tree(int depth) {
    if (depth < 1)
        fail("welded tree needs depth >= 1");
    int tree = (1 << (depth + 1)) - 1; // nodes per tree, heap order
    int leaves = 1 << depth;
    int first_leaf = (1 << depth) - 1;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < first_leaf; ++i) {
        edges.emplace_back(i, 2 * i + 1);
        edges.emplace_back(i, 2 * i + 2);
        edges.emplace_back(tree + i, tree + 2 * i + 1);
        edges.emplace_back(tree + i, tree + 2 * i + 2);
    }
    for (int i = 0; i < leaves; ++i) {
        int la = first_leaf + i;
        edges.emplace_back(la, tree + first_leaf + i);
        edges.emplace_back(la, tree + first_leaf + (i + 1) % leaves);
    }
    return Graph::make(2 * tree, std::move(edges));
}

Graph gen_random_graph(int n, double density, uint64_t seed) {
    if (n <= 0)
        fail("graph needs at least one node");
    if (density < 0.0 || density > 1.0)
        fail("density must be in [0, 1]");
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.real() < density)
                edges.emplace_back(u, v);
    return Graph::make(n, std::move(edges));
}

namespace {

void maj(Circuit& c, int carry, int b, int a) {
    c.add(GateKind::CX, {a, b});
    c.add(GateKind::CX, {a, carry});
    c.add(GateKind::TOFFOLI, {carry, b, a});
}

void uma(Circuit& c, int carry, int b, int a) {
    c.add(GateKind::TOFFOLI, {carry, b, a});
    c.add(GateKind::CX, {a, carry});
    c.add(GateKind::CX, {carry, b});
}

} // namespace

Circuit gen_cuccaro(int size) {
    if (size < 3)
        fail("cuccaro needs size >= 3");
    bool carry_out = (size % 2 == 0);
    int n = carry_out ? (size - 2) / 2 : (size - 1) / 2;
    Circuit c;
    c.num_qubits = size;
    auto b = [](int i) { return 1 + 2 * i; };
    auto a = [](int i) { return 2 + 2 * i; };
    auto carry = [&](int i) { return i == 0 ? 0 : a(i - 1); };
    for (int i = 0; i < n; ++i)
        maj(c, carry(i), b(i), a(i));
    if (carry_out)
        c.add(GateKind::CX, {a(n - 1), size - 1});
    for (int i = n - 1; i >= 0; --i)
        uma(c, carry(i), b(i), a(i));
    return lower_toffolis(c);
}

Circuit gen_cnu(int size) {
    if (size < 3)
        fail("cnu needs size >= 3");
    int k = (size + 1) / 2; // controls
    int target = size - 1;
    Circuit c;
    c.num_qubits = size;
    if (size == 3) {
        c.add(GateKind::TOFFOLI, {0, 1, 2});
        return lower_toffolis(c);
    }
    // Carry chain: the first carry ancilla sits next to the target wire,
    // remaining carries ascend from k.
    int m = (size % 2 == 0) ? k - 1 : k - 2;
    auto anc = [&](int j) { return j == 0 ? size - 2 : k + j - 1; };
    std::vector<Gate> chain;
    Circuit tmp;
    tmp.num_qubits = size;
    tmp.add(GateKind::TOFFOLI, {0, 1, anc(0)});
    for (int j = 1; j < m; ++j)
        tmp.add(GateKind::TOFFOLI, {j + 1, anc(j - 1), anc(j)});
    for (const Gate& g : tmp.gates)
        c.gates.push_back(g);
    if (size % 2 == 0)
        c.add(GateKind::CX, {anc(m - 1), target});
    else
        c.add(GateKind::TOFFOLI, {k - 1, anc(m - 1), target});
    for (auto it = tmp.gates.rbegin(); it != tmp.gates.rend(); ++it)
        c.gates.push_back(*it);
    return lower_toffolis(c);
}

Circuit gen_bv(int size) {
    if (size < 2)
        fail("bv needs size >= 2");
    Circuit c;
    c.num_qubits = size;
    int t = size - 1;
    c.add(GateKind::X, {t});
    for (int i = 0; i < size; ++i)
        c.add(GateKind::H, {i});
    for (int i = 0; i < size - 1; ++i)
        c.add(GateKind::CX, {i, t});
    for (int i = 0; i < size; ++i)
        c.add(GateKind::H, {i});
    return c;
}

Circuit gen_qram(int size) {
    if (size < 4)
        fail("qram needs size >= 4");
    int k = 2;
    while ((1 << k) < size - k - 1)
        ++k;
    int cells = size - k - 1;
    int bus = k;
    Circuit c;
    c.num_qubits = size;
    for (int v = 0; v < cells; ++v) {
        int cell = k + 1 + v;
        int ai = v % k, aj = (v + 1) % k;
        bool flip_i = ((v >> 0) & 1) == 0;
        bool flip_j = ((v >> 1) & 1) == 0;
        if (flip_i)
            c.add(GateKind::X, {ai});
        if (flip_j)
            c.add(GateKind::X, {aj});
        c.add(GateKind::TOFFOLI, {ai, aj, cell});
        c.add(GateKind::CX, {cell, bus});
        c.add(GateKind::TOFFOLI, {ai, aj, cell});
        if (flip_j)
            c.add(GateKind::X, {aj});
        if (flip_i)
            c.add(GateKind::X, {ai});
    }
    return lower_toffolis(c);
}

Circuit gen_qaoa(const Graph& g, uint64_t seed) {
    Circuit c;
    c.num_qubits = g.num_nodes;
    auto order = g.edges;
    Rng rng(seed);
    rng.shuffle(order);
    for (auto [u, v] : order) {
        c.add(GateKind::CX, {u, v});
        c.add(GateKind::RZ, {v}, M_PI);
        c.add(GateKind::CX, {u, v});
    }
    return c;
}

const char* benchmark_name(BenchmarkKind k) {
    switch (k) {
    case BenchmarkKind::Cuccaro: return "cuccaro";
    case BenchmarkKind::Cnu: return "cnu";
    case BenchmarkKind::Bv: return "bv";
    case BenchmarkKind::Qram: return "qram";
    case BenchmarkKind::QaoaCylinder: return "qaoa_cylinder";
    case BenchmarkKind::QaoaTorus: return "qaoa_torus";
    case BenchmarkKind::QaoaWelded: return "qaoa_welded";
    case BenchmarkKind::QaoaRandom: return "qaoa_random";
    }
    return "?";
}

BenchmarkKind benchmark_from_name(const std::string& s) {
    for (BenchmarkKind k :
         {BenchmarkKind::Cuccaro, BenchmarkKind::Cnu, BenchmarkKind::Bv,
          BenchmarkKind::Qram, BenchmarkKind::QaoaCylinder, BenchmarkKind::QaoaTorus,
          BenchmarkKind::QaoaWelded, BenchmarkKind::QaoaRandom})
        if (s == benchmark_name(k))
            return k;
    fail("unknown benchmark '", s, "'");
}

Circuit gen_benchmark(BenchmarkKind kind, int size, uint64_t seed) {
    switch (kind) {
    case BenchmarkKind::Cuccaro:
        return gen_cuccaro(size);
    case BenchmarkKind::Cnu:
        return gen_cnu(size);
    case BenchmarkKind::Bv:
        return gen_bv(size);
    case BenchmarkKind::Qram:
        return gen_qram(size);
    case BenchmarkKind::QaoaCylinder:
        return gen_qaoa(gen_cylinder(3, std::max(2, size / 3)), seed);
    case BenchmarkKind::QaoaTorus:
        return gen_qaoa(gen_torus(3, std::max(3, size / 3)), seed);
    case BenchmarkKind::QaoaWelded: {
        int depth = 1;
        while (2 * ((1 << (depth + 2)) - 1) <= size)
            ++depth;
        return gen_qaoa(gen_welded_tree(depth), seed);
    }
    case BenchmarkKind::QaoaRandom:
        return gen_qaoa(gen_random_graph(size, 0.3, seed), seed + 1);
    }
    fail("unknown benchmark kind");
}

} // namespace qqc
