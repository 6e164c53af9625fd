#pragma once

#include "qqc/eval.hpp"
#include "qqc/mapper.hpp"
#include "qqc/router.hpp"

#include <string_view>
#include <vector>

namespace qqc {

enum class Strategy { QubitOnly, Fq, Ec, Eqm, Rb, Awe, Pp };

const char* strategy_name(Strategy s);
Strategy strategy_from_name(std::string_view name);

/// Maps, routes, and schedules a lowered circuit. QubitOnly ignores the
/// plan, Mixed may co-locate opportunistically, PlanConstrained co-locates
/// exactly the planned pairs; fq_routing switches to whole-unit routing.
ScheduledCircuit compile_with_plan(const Circuit& lowered, const InteractionGraph& ig,
                                   const CompressionPlan& plan, const SlotGraph& sg,
                                   const GateLibrary& lib, CoherenceParams coh,
                                   MapMode mode, bool fq_routing);

/// Merges the node pair (a, b); the lower index survives with the union of
/// members, edge weights, edge layers, and busy layers.
void collapse_pair(InteractionGraph& g, int a, int b);

/// Shortest cycle through v over alive edges, as the vertex list, or empty
/// if v lies on no cycle.
std::vector<int> min_cycle_through(const InteractionGraph& g, int v);

/// Register bundling: repeatedly shortlists near-minimal cycles, anchors
/// each at the vertex with the fewest external neighbors, and merges the
/// strongest anchor pair until no beneficial candidate remains.
CompressionPlan plan_rb(const InteractionGraph& base);

struct AweResult {
    CompressionPlan plan;
    std::vector<double> avg_trace; // edge-weight average after each merge
};

/// Average-weight elevation: merges the pair that maximizes the resulting
/// mean edge weight while it strictly increases.
AweResult plan_awe(const InteractionGraph& base);

/// Paired placement: starting from a qubit-only placement, repeatedly moves
/// one qubit into a partner's unit when that lowers the weighted sum of
/// routing distances over incident interaction edges.
CompressionPlan plan_pp(const InteractionGraph& g, const SlotGraph& sg,
                        const GateLibrary& lib, CoherenceParams coh);

/// Heaviest-edge maximal matching, for the fully-ququart strategy.
CompressionPlan plan_fq(const InteractionGraph& g, int num_units);

struct EcOptions {
    int budget = 5000; // candidate recompiles
    bool critical_path_ordered = true;
};

struct EcResult {
    CompressionPlan plan;
    std::vector<double> accepted_totals; // strictly improving by construction
    int recompiles = 0;
    bool truncated = false;
};

/// Exhaustive-compilation search: per round, recompiles the circuit with
/// each candidate pair added and keeps the best strict improvement in total
/// expected success. Candidates are tried in critical-path order: qubits on
/// critical program ops first, then qubits moved by critical routing ops,
/// then the rest.
EcResult plan_ec(const Circuit& lowered, const InteractionGraph& ig,
                 const SlotGraph& sg, const GateLibrary& lib, CoherenceParams coh,
                 const EcOptions& opt = {});

struct StrategyOutput {
    Strategy strategy = Strategy::QubitOnly;
    CompressionPlan plan;
    ScheduledCircuit schedule;
    EpsReport report;
    std::vector<double> ec_trace;
    bool ec_truncated = false;
    std::vector<double> awe_trace;
};

/// Runs one compression strategy end to end on a logical circuit.
/// Three-qubit gates are lowered before compilation.
StrategyOutput run_strategy(Strategy s, const Circuit& c, const SlotGraph& sg,
                            const GateLibrary& lib, CoherenceParams coh,
                            const EcOptions& ec_opt = {});

} // namespace qqc
