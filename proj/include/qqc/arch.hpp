#pragma once

#include "qqc/gateset.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qqc {

/// Slot node id inside the expanded graph: 2 * unit + slot (unit-major).
using SlotId = int;

inline SlotId make_slot(int unit, int slot) { return 2 * unit + slot; }
inline int slot_unit(SlotId s) { return s / 2; }
inline int slot_index(SlotId s) { return s % 2; }

struct PhysicalTopology {
    int num_units = 0;
    std::vector<std::pair<int, int>> links; // u < v, sorted, no duplicates
    std::vector<std::vector<int>> adj;      // sorted neighbor lists

    bool adjacent(int u, int v) const;
};

/// Square-ish grid with ceil(sqrt(n)) columns, trimmed to exactly n units.
PhysicalTopology build_grid(int n);
/// Cycle over n units.
PhysicalTopology build_ring(int n);
/// 65-unit heavy-hexagon map matching IBM's published 65-qubit devices.
PhysicalTopology build_heavy_hex();
/// Parses "units <N>" followed by "link <u> <v>" lines; requires connectivity.
PhysicalTopology parse_topology(const std::string& text);
PhysicalTopology make_topology(const std::vector<std::pair<int, int>>& links, int n);

/// BFS hop distances between units; row u holds distances from u.
std::vector<std::vector<int>> unit_distances(const PhysicalTopology& t);

/// Expanded mixed-radix connectivity: each unit contributes slots 0 and 1
/// joined by an intra-unit edge; every physical link contributes the four
/// cross edges between the endpoint slots. 2V nodes, 4E + V edges.
struct SlotGraph {
    int num_units = 0;
    std::vector<std::vector<SlotId>> adj; // sorted
    PhysicalTopology topo;

    int num_slots() const { return 2 * num_units; }
    int num_edges() const;
    bool units_adjacent(int u, int v) const { return topo.adjacent(u, v); }
};

SlotGraph expand_slot_graph(PhysicalTopology t);

/// Occupant counts per unit. A unit with two logical qubits is operated as a
/// ququart (radix 4); with one or none it is a bare 2-level unit. A single
/// occupant always sits in slot 0.
struct Occupancy {
    std::vector<uint8_t> count;

    explicit Occupancy(int units = 0) : count(units, 0) {}
    int radix(int unit) const { return count[unit] == 2 ? 4 : 2; }
    bool encoded(int unit) const { return count[unit] == 2; }
    bool slot_occupied(SlotId s) const {
        return slot_index(s) == 0 ? count[slot_unit(s)] >= 1 : count[slot_unit(s)] == 2;
    }
};

/// Physical kind of a CX between two slots, by occupancy. Slots in the same
/// unit give the internal kinds; encoded/bare unit combinations pick the
/// partial variants. Adjacency is not checked here.
PhysKind classify_cx(const Occupancy& occ, SlotId control, SlotId target);
/// Physical kind of the gate that exchanges the contents of two slots, by
/// occupancy. Exchanging a ququart's slot-1 member with an empty unit is a
/// DEC (the unit drops to a bare qubit); the slot-0 variant has no native
/// gate and fails, since an internal swap reduces it to the slot-1 case.
PhysKind classify_swap(const Occupancy& occ, SlotId a, SlotId b);

/// Whether a routing hop may exchange slot x (where the walked qubit sits)
/// with slot y. Hops never enter the empty second slot of a singly occupied
/// unit (routing does not create new encodings) and never pull a ququart's
/// slot-0 member into an empty unit (no native gate performs that split).
bool hop_allowed(const Occupancy& occ, SlotId x, SlotId y);

/// Path cost metric over the slot graph: minimum over hop_allowed paths of
/// the summed -log success of interior hops priced as SWAPs (or the DEC a
/// ququart split really is) plus the final hop priced as a CX (control on
/// the source side). Hop kinds are classified against the occupancy
/// snapshot, except that the walked qubit counts as occupying its current
/// slot, so hops out of snapshot-empty units price as bare exchanges.
class DistanceOracle {
public:
    DistanceOracle(const SlotGraph& sg, const GateLibrary& lib, CoherenceParams coh);

    double swap_cost(const Occupancy& occ, SlotId a, SlotId b) const;
    double cx_cost(const Occupancy& occ, SlotId control, SlotId target) const;

    /// Cached swap-metric distances from a under the bound occupancy.
    const std::vector<double>& swap_dists_from(const Occupancy& occ, SlotId a);
    double distance(const Occupancy& occ, SlotId a, SlotId b);

    /// Uncached variant for hypothetical occupancies.
    double distance_with(const Occupancy& occ, SlotId a, SlotId b) const;

    /// Uncached swap-metric single-source pass, for callers that complete
    /// several targets against one source.
    void swap_dists_into(const Occupancy& occ, SlotId a, std::vector<double>& out) const;
    /// Turns a swap-metric vector from a into the full a->b distance by
    /// pricing the final hop as a CX.
    double complete(const Occupancy& occ, const std::vector<double>& dswap,
                    SlotId a, SlotId b) const;

    /// Drops cached distances; call after any occupancy change.
    void invalidate();

private:
    const SlotGraph& sg_;
    const GateLibrary& lib_;
    CoherenceParams coh_;
    std::vector<std::vector<double>> cache_;
    std::vector<char> cached_;
};

} // namespace qqc
