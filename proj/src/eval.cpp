#include "qqc/eval.hpp"

#include "qqc/util.hpp"

#include <cmath>

namespace qqc {

GateCounts gate_distribution(const std::vector<PhysicalOp>& ops) {
    GateCounts c;
    for (const PhysicalOp& op : ops) {
        switch (op.kind) {
        case PhysKind::X:
            ++c.single_qubit;
            break;
        case PhysKind::X0:
        case PhysKind::X1:
        case PhysKind::X01:
        case PhysKind::SWAPin:
            ++c.single_ququart;
            break;
        case PhysKind::CX0:
        case PhysKind::CX1:
            ++c.internal_cx;
            break;
        case PhysKind::CX2:
            ++c.cx2;
            break;
        case PhysKind::CX0q:
        case PhysKind::CX1q:
        case PhysKind::CXq0:
        case PhysKind::CXq1:
            ++c.partial_cx_qubit_ququart;
            break;
        case PhysKind::CX00:
        case PhysKind::CX01:
        case PhysKind::CX10:
        case PhysKind::CX11:
            ++c.partial_cx_ququart_ququart;
            break;
        case PhysKind::SWAP2:
            ++c.swap2;
            break;
        case PhysKind::SWAPq0:
        case PhysKind::SWAPq1:
        case PhysKind::SWAP00:
        case PhysKind::SWAP01:
        case PhysKind::SWAP11:
            ++c.partial_swap;
            break;
        case PhysKind::SWAP4:
            ++c.swap4;
            break;
        case PhysKind::ENC:
        case PhysKind::DEC:
            ++c.enc_dec;
            break;
        default:
            fail("unbucketed physical kind ", phys_name(op.kind));
        }
    }
    return c;
}

double gate_eps(const ScheduledCircuit& sc, const GateLibrary& lib) {
    double log_sum = 0.0;
    for (const PhysicalOp& op : sc.ops)
        log_sum += std::log(lib.spec(op.kind).fidelity);
    return std::exp(log_sum);
}

double coherence_eps(const ScheduledCircuit& sc, CoherenceParams coh) {
    double exponent = 0.0;
    for (int u = 0; u < sc.num_units; ++u) {
        if (!sc.active[u])
            continue;
        double t_ququart = double(sc.encoded_ns[u]);
        double t_qubit = double(sc.total_duration_ns) - t_ququart;
        exponent += t_qubit / coh.t1_qubit_ns + t_ququart / coh.t1_ququart_ns;
    }
    return std::exp(-exponent);
}

EpsReport evaluate(const ScheduledCircuit& sc, const GateLibrary& lib,
                   CoherenceParams coh) {
    EpsReport r;
    r.gate_eps = gate_eps(sc, lib);
    r.coherence_eps = coherence_eps(sc, coh);
    r.total_eps = r.gate_eps * r.coherence_eps;
    r.duration_ns = sc.total_duration_ns;
    r.counts = gate_distribution(sc.ops);
    r.swap_count = sc.swap_count;
    for (const PhysicalOp& op : sc.ops)
        if (op.kind == PhysKind::CX0 || op.kind == PhysKind::CX1)
            ++r.internal_cx_count;
    return r;
}

std::vector<SweepPoint> t1_sweep(const ScheduledCircuit& sc, const GateLibrary& lib,
                                 double t1_qubit_ns, const std::vector<double>& ratios) {
    double g = gate_eps(sc, lib);
    std::vector<SweepPoint> out;
    out.reserve(ratios.size());
    for (double ratio : ratios) {
        if (ratio <= 0.0)
            fail("T1 ratio must be positive, got ", ratio);
        CoherenceParams coh{t1_qubit_ns, ratio * t1_qubit_ns};
        SweepPoint p;
        p.ratio = ratio;
        p.coherence_eps = coherence_eps(sc, coh);
        p.total_eps = g * p.coherence_eps;
        out.push_back(p);
    }
    return out;
}

std::optional<double> crossover_ratio(const std::vector<SweepPoint>& candidate,
                                      const std::vector<SweepPoint>& baseline) {
    if (candidate.size() != baseline.size())
        fail("sweeps have mismatched lengths");
    for (size_t i = 0; i < candidate.size(); ++i) {
        if (candidate[i].ratio != baseline[i].ratio)
            fail("sweeps have mismatched ratio grids");
        if (candidate[i].total_eps >= baseline[i].total_eps)
            return candidate[i].ratio;
    }
    return std::nullopt;
}

} // namespace qqc
