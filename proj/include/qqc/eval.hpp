#pragma once

#include "qqc/router.hpp"

#include <optional>
#include <vector>

namespace qqc {

/// Operation counts bucketed by physical family. The buckets partition the
/// kind enum, so the totals add up to the op count of the schedule.
struct GateCounts {
    int64_t single_qubit = 0;
    int64_t single_ququart = 0;
    int64_t internal_cx = 0;
    int64_t cx2 = 0;
    int64_t partial_cx_qubit_ququart = 0;
    int64_t partial_cx_ququart_ququart = 0;
    int64_t swap2 = 0;
    int64_t partial_swap = 0;
    int64_t swap4 = 0;
    int64_t enc_dec = 0;

    int64_t total() const {
        return single_qubit + single_ququart + internal_cx + cx2 +
               partial_cx_qubit_ququart + partial_cx_ququart_ququart + swap2 +
               partial_swap + swap4 + enc_dec;
    }
};

GateCounts gate_distribution(const std::vector<PhysicalOp>& ops);

/// Expected probability that every operation succeeds, as the product of
/// per-op fidelities.
double gate_eps(const ScheduledCircuit& sc, const GateLibrary& lib);

/// Decoherence survival over the whole schedule: every unit that ever holds
/// state decays with the qubit T1 while bare and the ququart T1 while
/// encoded, across the full circuit duration.
double coherence_eps(const ScheduledCircuit& sc, CoherenceParams coh);

struct EpsReport {
    double gate_eps = 1.0;
    double coherence_eps = 1.0;
    double total_eps = 1.0;
    int64_t duration_ns = 0;
    GateCounts counts;
    int swap_count = 0;
    int64_t internal_cx_count = 0;
};

EpsReport evaluate(const ScheduledCircuit& sc, const GateLibrary& lib,
                   CoherenceParams coh);

struct SweepPoint {
    double ratio = 0.0;
    double coherence_eps = 1.0;
    double total_eps = 1.0;
};

/// Re-evaluates coherence at each T1 ratio (ququart T1 = ratio * qubit T1).
/// Gate success does not depend on T1, so it is computed once.
std::vector<SweepPoint> t1_sweep(const ScheduledCircuit& sc, const GateLibrary& lib,
                                 double t1_qubit_ns, const std::vector<double>& ratios);

/// Smallest swept ratio at which the candidate's total reaches the baseline's,
/// or nullopt if it never does. Both sweeps must share the ratio grid.
std::optional<double> crossover_ratio(const std::vector<SweepPoint>& candidate,
                                      const std::vector<SweepPoint>& baseline);

} // namespace qqc
