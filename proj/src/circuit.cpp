#include "qqc/circuit.hpp"

#include "qqc/util.hpp"

#include <cmath>
#include <sstream>

namespace qqc {

int gate_arity(GateKind k) {
    switch (k) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::Z:
    case GateKind::RZ:
        return 1;
    case GateKind::CX:
    case GateKind::SWAP:
        return 2;
    case GateKind::TOFFOLI:
        return 3;
    }
    return 0;
}

const char* gate_name(GateKind k) {
    switch (k) {
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::Z: return "z";
    case GateKind::RZ: return "rz";
    case GateKind::CX: return "cx";
    case GateKind::SWAP: return "swap";
    case GateKind::TOFFOLI: return "ccx";
    }
    return "?";
}

Gate& Circuit::add(GateKind k, std::initializer_list<int> qs, double angle) {
    Gate g;
    g.kind = k;
    g.angle = angle;
    int i = 0;
    for (int q : qs)
        g.q[i++] = q;
    if (i != gate_arity(k))
        fail("gate ", gate_name(k), " expects ", gate_arity(k), " operands, got ", i);
    gates.push_back(g);
    return gates.back();
}

namespace {

GateKind kind_from_name(const std::string& s, int line) {
    if (s == "x") return GateKind::X;
    if (s == "h") return GateKind::H;
    if (s == "z") return GateKind::Z;
    if (s == "rz") return GateKind::RZ;
    if (s == "cx") return GateKind::CX;
    if (s == "swap") return GateKind::SWAP;
    if (s == "ccx") return GateKind::TOFFOLI;
    fail("line ", line, ": unknown gate '", s, "'");
}

int parse_int(const std::string& tok, int line) {
    size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        fail("line ", line, ": expected integer, got '", tok, "'");
    }
    if (pos != tok.size())
        fail("line ", line, ": expected integer, got '", tok, "'");
    return v;
}

double parse_angle(const std::string& tok, int line) {
    size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        fail("line ", line, ": expected angle, got '", tok, "'");
    }
    if (pos != tok.size())
        fail("line ", line, ": expected angle, got '", tok, "'");
    return v;
}

} // namespace

Circuit parse_circuit(const std::string& text) {
    Circuit c;
    bool have_header = false;
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.resize(hash);
        auto toks = split_ws(raw);
        if (toks.empty())
            continue;
        if (!have_header) {
            if (toks[0] != "qubits")
                fail("line ", line, ": expected 'qubits <N>' header");
            if (toks.size() != 2)
                fail("line ", line, ": expected 'qubits <N>' header");
            c.num_qubits = parse_int(toks[1], line);
            if (c.num_qubits < 0)
                fail("line ", line, ": negative qubit count");
            have_header = true;
            continue;
        }
        GateKind k = kind_from_name(toks[0], line);
        Gate g;
        g.kind = k;
        size_t expect = size_t(gate_arity(k)) + (k == GateKind::RZ ? 2 : 1);
        if (toks.size() != expect)
            fail("line ", line, ": gate '", toks[0], "' expects ", expect - 1, " arguments");
        size_t qi = 1;
        if (k == GateKind::RZ)
            g.angle = parse_angle(toks[qi++], line);
        for (int i = 0; i < gate_arity(k); ++i) {
            int q = parse_int(toks[qi++], line);
            if (q < 0 || q >= c.num_qubits)
                fail("line ", line, ": operand ", q, " out of range (qubits ", c.num_qubits, ")");
            g.q[i] = q;
        }
        for (int i = 0; i < gate_arity(k); ++i)
            for (int j = i + 1; j < gate_arity(k); ++j)
                if (g.q[i] == g.q[j])
                    fail("line ", line, ": repeated operand ", g.q[i]);
        c.gates.push_back(g);
    }
    if (!have_header)
        fail("missing 'qubits <N>' header");
    return c;
}

std::string emit_circuit(const Circuit& c) {
    std::ostringstream os;
    os << "qubits " << c.num_qubits << "\n";
    for (const Gate& g : c.gates) {
        os << gate_name(g.kind);
        if (g.kind == GateKind::RZ)
            os << ' ' << format_double(g.angle);
        for (int i = 0; i < g.arity(); ++i)
            os << ' ' << g.q[i];
        os << "\n";
    }
    return os.str();
}

std::vector<int> asap_layers(const Circuit& c) {
    std::vector<int> last(c.num_qubits, 0);
    std::vector<int> layers;
    layers.reserve(c.gates.size());
    for (const Gate& g : c.gates) {
        int layer = 0;
        for (int i = 0; i < g.arity(); ++i)
            layer = std::max(layer, last[g.q[i]]);
        ++layer;
        for (int i = 0; i < g.arity(); ++i)
            last[g.q[i]] = layer;
        layers.push_back(layer);
    }
    return layers;
}

Circuit lower_toffolis(const Circuit& c) {
    constexpr double T = M_PI / 4; // T gate as RZ(pi/4), equal up to global phase
    Circuit out;
    out.num_qubits = c.num_qubits;
    for (const Gate& g : c.gates) {
        if (g.kind != GateKind::TOFFOLI) {
            out.gates.push_back(g);
            continue;
        }
        int a = g.q[0], b = g.q[1], t = g.q[2];
        out.add(GateKind::CX, {a, b});
        out.add(GateKind::RZ, {a}, T);
        out.add(GateKind::RZ, {b}, -T);
        out.add(GateKind::CX, {a, b});
        out.add(GateKind::H, {t});
        out.add(GateKind::CX, {b, t});
        out.add(GateKind::RZ, {t}, -T);
        out.add(GateKind::CX, {a, t});
        out.add(GateKind::RZ, {t}, T);
        out.add(GateKind::CX, {b, t});
        out.add(GateKind::RZ, {t}, -T);
        out.add(GateKind::CX, {a, t});
        out.add(GateKind::RZ, {b}, T);
        out.add(GateKind::RZ, {t}, T);
        out.add(GateKind::H, {t});
    }
    return out;
}

} // namespace qqc
