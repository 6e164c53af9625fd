#pragma once

#include "qqc/circuit.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qqc {

struct Graph {
    int num_nodes = 0;
    std::vector<std::pair<int, int>> edges; // u < v, sorted, no duplicates

    static Graph make(int n, std::vector<std::pair<int, int>> edges);
};

/// Parses "nodes <N>" followed by "edge <u> <v>" lines.
Graph parse_graph(const std::string& text);

/// rows x cols grid wrapped along the row dimension (each column is a cycle).
Graph gen_cylinder(int rows, int cols);
/// rows x cols grid wrapped along both dimensions.
Graph gen_torus(int rows, int cols);
/// Two complete binary trees of the given depth welded leaf-to-leaf
/// (leaf i of one tree joins leaves i and i+1 mod L of the other).
Graph gen_welded_tree(int depth);
/// Erdos-Renyi style graph; every pair drawn independently.
Graph gen_random_graph(int n, double density, uint64_t seed);

/// Ripple-carry adder over `size` qubits (carry-in, interleaved b/a register
/// pairs, and a carry-out wire when size is even). Toffolis already lowered.
Circuit gen_cuccaro(int size);
/// Generalized Toffoli over ceil(size/2) controls realized as a carry chain
/// of Toffolis; controls occupy wires 0..k-1 and the target the last wire.
/// Toffolis already lowered.
Circuit gen_cnu(int size);
/// Bernstein-Vazirani circuit with the all-ones secret; the target is the
/// last wire.
Circuit gen_bv(int size);
/// Addressing-style memory benchmark: address qubits select each cell via a
/// Toffoli pair around a copy onto the shared bus wire. Toffolis lowered.
Circuit gen_qram(int size);
/// One QAOA cost layer: per edge (u, v), in seed-shuffled order,
/// CX(u, v), RZ(pi) on v, CX(u, v).
Circuit gen_qaoa(const Graph& g, uint64_t seed);

enum class BenchmarkKind {
    Cuccaro, Cnu, Bv, Qram,
    QaoaCylinder, QaoaTorus, QaoaWelded, QaoaRandom,
};

const char* benchmark_name(BenchmarkKind k);
BenchmarkKind benchmark_from_name(const std::string& s);

/// Dispatches on kind; `size` is the number of logical qubits requested
/// (graph-backed kinds round down to the nearest realizable shape).
Circuit gen_benchmark(BenchmarkKind kind, int size, uint64_t seed);

} // namespace qqc
