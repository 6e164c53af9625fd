#pragma once

#include "qqc/arch.hpp"
#include "qqc/circuit.hpp"

#include <array>
#include <map>
#include <utility>
#include <vector>

namespace qqc {

/// Weighted interaction graph. Edge weight between i and j is the sum of
/// 1/layer over the two-qubit gates acting on (i, j), so early gates weigh
/// more. Nodes can be collapsed (compressed pairs); a collapsed node keeps
/// the lower index and unions its members, weights, and layer sets.
struct InteractionGraph {
    int num_nodes = 0;
    std::vector<std::map<int, double>> adj;
    std::map<std::pair<int, int>, std::vector<int>> edge_layers;
    std::vector<std::vector<int>> busy_layers;
    std::vector<std::vector<int>> members; // empty = node merged away
    std::vector<char> merged;              // node already holds two qubits

    bool alive(int i) const { return !members[i].empty(); }
    double weight(int i, int j) const;
    /// Layers where both are busy in different gates.
    int simultaneity(int i, int j) const;
};

InteractionGraph interaction_graph(const Circuit& c);

/// Sum of incident edge weights.
double total_weight(const InteractionGraph& g, int i);

/// Unit with minimum eccentricity, lowest index on ties.
int center_unit(const PhysicalTopology& t);

/// Disjoint set of logical-qubit pairs chosen for ququart encoding.
struct CompressionPlan {
    std::vector<std::pair<int, int>> pairs;

    void validate(int num_qubits) const;
    int partner_of(int q) const; // -1 when unpaired
};

/// Logical-qubit to slot assignment plus derived occupancy.
struct Mapping {
    std::vector<SlotId> slot_of;                 // -1 while unplaced
    std::vector<std::array<int, 2>> occupant;    // per unit; -1 empty
    Occupancy occ;

    static Mapping empty(int num_qubits, int num_units);
    int num_units() const { return int(occupant.size()); }
    int qubit_at(SlotId s) const { return occupant[slot_unit(s)][slot_index(s)]; }
    void place(int q, SlotId s);
    /// Exchanges the occupants of two slots (routing move); afterwards a
    /// lone occupant is renormalized into slot 0 of its unit.
    void apply_swap(SlotId a, SlotId b);
    /// Exchanges the full contents of two units.
    void apply_unit_swap(int u, int v);
};

enum class MapMode { Mixed, QubitOnly, PlanConstrained };

/// Greedy placement: the heaviest qubit starts at the center unit, the rest
/// follow in descending order of summed weight to already placed qubits,
/// each taking the free slot that maximizes sum over placed partners of
/// weight / slot_distance. Mixed mode may open a second slot only on units
/// whose first slot is filled by a qubit the newcomer interacts with; a
/// stranger join walls the unit off from the newcomer's future partners, so
/// it is allowed only once the newcomer has no unplaced partners left, or
/// when capacity leaves no other slot. qubit_only never opens second slots;
/// plan_constrained co-locates exactly the planned pairs.
Mapping eqm_map(const InteractionGraph& g, const SlotGraph& sg,
                const GateLibrary& lib, CoherenceParams coh, MapMode mode,
                const CompressionPlan* plan = nullptr);

} // namespace qqc
