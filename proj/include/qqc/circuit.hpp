#pragma once

#include <array>
#include <string>
#include <vector>

namespace qqc {

enum class GateKind { X, H, Z, RZ, CX, SWAP, TOFFOLI };

/// Number of qubit operands for a gate kind.
int gate_arity(GateKind k);

/// Lowercase mnemonic used by the text format ("x", "rz", "ccx", ...).
const char* gate_name(GateKind k);

struct Gate {
    GateKind kind;
    std::array<int, 3> q{-1, -1, -1};
    double angle = 0.0; // RZ only

    int arity() const { return gate_arity(kind); }
    bool operator==(const Gate& o) const {
        return kind == o.kind && q == o.q && angle == o.angle;
    }
};

struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;

    Gate& add(GateKind k, std::initializer_list<int> qs, double angle = 0.0);
    bool operator==(const Circuit& o) const {
        return num_qubits == o.num_qubits && gates == o.gates;
    }
};

/// Parses the line-oriented circuit format:
///   qubits <N>
///   x|h|z <q>        rz <angle> <q>
///   cx <c> <t>       swap <a> <b>      ccx <c1> <c2> <t>
/// '#' starts a comment. Throws Error with a line number on bad input.
Circuit parse_circuit(const std::string& text);

/// Inverse of parse_circuit for well-formed circuits.
std::string emit_circuit(const Circuit& c);

/// 1-based ASAP layer per gate: one more than the latest layer among the
/// gates that precede it on any shared operand.
std::vector<int> asap_layers(const Circuit& c);

/// Replaces every TOFFOLI with the 6-CX decomposition (H/RZ(pi/4) based).
/// The two control-control CXs of each Toffoli form a commuting diagonal
/// block and are emitted first.
Circuit lower_toffolis(const Circuit& c);

} // namespace qqc
