#pragma once

#include "qqc/arch.hpp"
#include "qqc/circuit.hpp"
#include "qqc/mapper.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace qqc {

enum class OpOrigin : uint8_t { Program, Routing, Encode };

/// One physical instruction. slots[0]/slots[1] are the operand endpoints
/// (slots[1] = -1 for one-slot kinds). Program ops carry the logical gate
/// they implement; a merged X01-class op carries one payload per slot.
struct PhysicalOp {
    PhysKind kind = PhysKind::X;
    OpOrigin origin = OpOrigin::Program;
    std::array<SlotId, 2> slots{-1, -1};
    std::array<int, 2> payload{-1, -1}; // logical qubits carried/moved
    GateKind logical = GateKind::X;
    GateKind logical2 = GateKind::X;
    double angle = 0.0;
    double angle2 = 0.0;
    bool merged = false;
    int64_t start_ns = -1;
    int64_t duration_ns = 0;
};

/// Slots whose state the op can alter; ENC/DEC and SWAP4 extend past their
/// nominal operands to whole units.
std::vector<SlotId> op_touched_slots(const PhysicalOp& op);
/// Units the op occupies (second entry -1 for single-unit kinds).
std::array<int, 2> op_touched_units(const PhysicalOp& op);
/// Replays the op's effect on qubit locations. Program gates move state,
/// not labels, so only routing/encode ops change the mapping.
void apply_op_to_mapping(Mapping& m, const PhysicalOp& op);

struct RoutedCircuit {
    int num_qubits = 0;
    int num_units = 0;
    Mapping initial;
    Mapping final_map;
    std::vector<PhysicalOp> ops;
    int swap_count = 0; // inserted swap-family ops (codecs not included)
};

/// Lookahead SWAP-insertion routing over the slot graph. Executable front
/// gates (co-resident or adjacent operands) are emitted directly; otherwise
/// the legal swap minimizing front distance + 0.5 * lookahead(20) distance
/// is inserted. Swaps never move a qubit into the empty second slot of an
/// occupied unit, and swaps between two fully occupied ququart slots carry
/// a 2.0 score penalty and lose to any improving alternative. Moving a
/// ququart's slot-1 member into an empty unit is emitted as the decode it
/// is; the slot-0 member must swap internally before it can split off.
RoutedCircuit route(const Circuit& c, const Mapping& initial, const SlotGraph& sg,
                    const GateLibrary& lib, CoherenceParams coh);

/// Fully-encoded baseline routing: gates internal to a pair run directly;
/// any cross-unit gate decodes each encoded operand into the nearest empty
/// unit, runs the bare-qubit gate, and re-encodes immediately. All movement
/// uses whole-unit SWAP4 ops.
RoutedCircuit route_fq(const Circuit& c, const Mapping& initial, const SlotGraph& sg);

struct UnitInterval {
    int64_t start_ns = 0;
    int64_t end_ns = 0;
    bool ququart = false;
};

struct ScheduledCircuit {
    int num_qubits = 0;
    int num_units = 0;
    Mapping initial;
    Mapping final_map;
    std::vector<PhysicalOp> ops; // sorted by start time, then sequence
    int64_t total_duration_ns = 0;
    int swap_count = 0;
    std::vector<std::vector<UnitInterval>> unit_timeline; // covers [0, total]
    std::vector<int64_t> encoded_ns; // per unit, time spent hosting 2 qubits
    std::vector<char> active;        // per unit, ever hosts a qubit
};

/// ASAP list scheduling: ops depend on the previous op touching each of
/// their slots, units run one op at a time, contention goes to the op with
/// the longer remaining dependent-chain duration (then lower sequence
/// index), and two single-qubit ops ready simultaneously on the two slots
/// of one unit merge into a single X01-class op.
ScheduledCircuit schedule(const RoutedCircuit& rc, const GateLibrary& lib);

} // namespace qqc
