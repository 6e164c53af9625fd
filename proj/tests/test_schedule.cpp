#include "doctest.h"

#include "qqc/benchmarks.hpp"
#include "qqc/compress.hpp"
#include "qqc/router.hpp"
#include "qqc/util.hpp"

#include <algorithm>
#include <map>
#include <vector>

using namespace qqc;

namespace {

GateLibrary lib;
CoherenceParams coh = CoherenceParams::defaults();

// The schedule is tight when every op starts exactly as its last slot or
// unit constraint releases; the makespan is then the critical-path length.
void check_tight_schedule(const ScheduledCircuit& sc) {
    std::map<SlotId, int64_t> slot_free;
    std::map<int, int64_t> unit_free;
    int64_t makespan = 0;
    int64_t prev_start = 0;
    for (const PhysicalOp& op : sc.ops) {
        REQUIRE(op.start_ns >= 0);
        CHECK(op.start_ns >= prev_start); // sorted by start
        prev_start = op.start_ns;
        CHECK(op.duration_ns == lib.spec(op.kind).duration_ns);

        int64_t ready = 0;
        for (SlotId s : op_touched_slots(op))
            ready = std::max(ready, slot_free[s]);
        for (int u : op_touched_units(op))
            if (u != -1)
                ready = std::max(ready, unit_free[u]);
        CHECK(op.start_ns == ready);

        int64_t end = op.start_ns + op.duration_ns;
        for (SlotId s : op_touched_slots(op))
            slot_free[s] = end;
        for (int u : op_touched_units(op))
            if (u != -1)
                unit_free[u] = end;
        makespan = std::max(makespan, end);
    }
    CHECK(sc.total_duration_ns == makespan);
}

void check_unit_exclusive(const ScheduledCircuit& sc) {
    std::map<int, std::vector<std::pair<int64_t, int64_t>>> busy;
    for (const PhysicalOp& op : sc.ops)
        for (int u : op_touched_units(op))
            if (u != -1)
                busy[u].push_back({op.start_ns, op.start_ns + op.duration_ns});
    for (auto& [u, iv] : busy) {
        std::sort(iv.begin(), iv.end());
        for (size_t i = 1; i < iv.size(); ++i)
            CHECK(iv[i].first >= iv[i - 1].second);
    }
}

void check_timelines(const ScheduledCircuit& sc) {
    for (int u = 0; u < sc.num_units; ++u) {
        const auto& tl = sc.unit_timeline[u];
        if (!sc.active[u]) {
            CHECK(sc.encoded_ns[u] == 0);
            continue;
        }
        REQUIRE(!tl.empty());
        CHECK(tl.front().start_ns == 0);
        CHECK(tl.back().end_ns == sc.total_duration_ns);
        int64_t enc = 0;
        for (size_t i = 0; i < tl.size(); ++i) {
            CHECK(tl[i].end_ns >= tl[i].start_ns);
            if (i > 0) {
                CHECK(tl[i].start_ns == tl[i - 1].end_ns); // contiguous
                CHECK(tl[i].ququart != tl[i - 1].ququart); // maximal runs
            }
            if (tl[i].ququart)
                enc += tl[i].end_ns - tl[i].start_ns;
        }
        CHECK(enc == sc.encoded_ns[u]);
    }
}

ScheduledCircuit full_pipeline(const Circuit& c, const SlotGraph& sg, MapMode mode,
                               const CompressionPlan* plan = nullptr) {
    InteractionGraph g = interaction_graph(c);
    Mapping m = eqm_map(g, sg, lib, coh, mode, plan);
    return schedule(route(c, m, sg, lib, coh), lib);
}

} // namespace

TEST_CASE("independent ops run in parallel, dependent ops chain") {
    RoutedCircuit rc;
    rc.num_qubits = 4;
    rc.num_units = 4;
    rc.initial = Mapping::empty(4, 4);
    for (int q = 0; q < 4; ++q)
        rc.initial.place(q, make_slot(q, 0));
    rc.final_map = rc.initial;

    PhysicalOp a;
    a.kind = PhysKind::CX2;
    a.slots = {make_slot(0, 0), make_slot(1, 0)};
    a.payload = {0, 1};
    a.logical = GateKind::CX;
    PhysicalOp b = a;
    b.slots = {make_slot(2, 0), make_slot(3, 0)};
    b.payload = {2, 3};
    PhysicalOp c = a; // depends on both via units 1 and 2
    c.slots = {make_slot(1, 0), make_slot(2, 0)};
    c.payload = {1, 2};
    rc.ops = {a, b, c};

    ScheduledCircuit sc = schedule(rc, lib);
    CHECK(sc.ops[0].start_ns == 0);
    CHECK(sc.ops[1].start_ns == 0);
    CHECK(sc.ops[2].start_ns == 251);
    CHECK(sc.total_duration_ns == 502);
    check_tight_schedule(sc);
    check_unit_exclusive(sc);
    check_timelines(sc);
}

TEST_CASE("unit contention favors the longer remaining chain") {
    RoutedCircuit rc;
    rc.num_qubits = 3;
    rc.num_units = 2;
    rc.initial = Mapping::empty(3, 2);
    rc.initial.place(0, make_slot(0, 0));
    rc.initial.place(1, make_slot(0, 1));
    rc.initial.place(2, make_slot(1, 0));
    rc.final_map = rc.initial;

    // Both ops want unit 0 at time zero on different slots; the CX feeds a
    // long chain of follow-ups, so it wins the unit over the lower-sequence
    // X0 and the X0 waits for the unit to free up.
    PhysicalOp lone;
    lone.kind = PhysKind::X0;
    lone.slots = {make_slot(0, 0), -1};
    lone.payload = {0, -1};
    lone.logical = GateKind::X;

    PhysicalOp chained;
    chained.kind = PhysKind::CX1q;
    chained.slots = {make_slot(0, 1), make_slot(1, 0)};
    chained.payload = {1, 2};
    chained.logical = GateKind::CX;

    PhysicalOp tail;
    tail.kind = PhysKind::X;
    tail.slots = {make_slot(1, 0), -1};
    tail.payload = {2, -1};
    tail.logical = GateKind::X;

    rc.ops = {lone, chained, tail, tail, tail, tail, tail, tail};
    ScheduledCircuit sc = schedule(rc, lib);
    CHECK(sc.ops[0].slots[0] == make_slot(0, 1)); // the chained CX goes first
    CHECK(sc.ops[0].kind == PhysKind::CX1q);
    CHECK(sc.ops[0].start_ns == 0);
    for (const PhysicalOp& op : sc.ops)
        if (op.kind == PhysKind::X0)
            CHECK(op.start_ns == 632); // waited out the CX despite seq 0
    CHECK(sc.total_duration_ns == 632 + 6 * 35);
    check_tight_schedule(sc);
    check_unit_exclusive(sc);
}

TEST_CASE("simultaneous singles on one ququart merge into one op") {
    RoutedCircuit rc;
    rc.num_qubits = 2;
    rc.num_units = 2;
    rc.initial = Mapping::empty(2, 2);
    rc.initial.place(0, make_slot(0, 0));
    rc.initial.place(1, make_slot(0, 1));
    rc.final_map = rc.initial;

    PhysicalOp x0;
    x0.kind = PhysKind::X0;
    x0.slots = {make_slot(0, 0), -1};
    x0.payload = {0, -1};
    x0.logical = GateKind::X;
    PhysicalOp x1;
    x1.kind = PhysKind::X1;
    x1.slots = {make_slot(0, 1), -1};
    x1.payload = {1, -1};
    x1.logical = GateKind::H;
    rc.ops = {x0, x1};

    ScheduledCircuit sc = schedule(rc, lib);
    REQUIRE(sc.ops.size() == 1);
    CHECK(sc.ops[0].kind == PhysKind::X01);
    CHECK(sc.ops[0].merged);
    CHECK(sc.ops[0].duration_ns == 86);
    CHECK(sc.ops[0].logical == GateKind::X);
    CHECK(sc.ops[0].logical2 == GateKind::H);
    CHECK(sc.total_duration_ns == 86);
}

TEST_CASE("an unpartnered single stays unmerged") {
    RoutedCircuit rc;
    rc.num_qubits = 2;
    rc.num_units = 2;
    rc.initial = Mapping::empty(2, 2);
    rc.initial.place(0, make_slot(0, 0));
    rc.initial.place(1, make_slot(0, 1));
    rc.final_map = rc.initial;

    PhysicalOp x0;
    x0.kind = PhysKind::X0;
    x0.slots = {make_slot(0, 0), -1};
    x0.payload = {0, -1};
    x0.logical = GateKind::X;
    PhysicalOp x1 = x0;
    x1.kind = PhysKind::X1;
    x1.slots = {make_slot(0, 1), -1};
    x1.payload = {1, -1};
    rc.ops = {x0, x1, x0}; // the trailing X0 has no simultaneous partner

    ScheduledCircuit sc = schedule(rc, lib);
    REQUIRE(sc.ops.size() == 2);
    CHECK(sc.ops[0].merged);
    CHECK(sc.ops[0].start_ns == 0);
    CHECK(!sc.ops[1].merged);
    CHECK(sc.ops[1].kind == PhysKind::X0);
    CHECK(sc.ops[1].start_ns == 86);
    CHECK(sc.total_duration_ns == 86 + 87);
    check_tight_schedule(sc);
}

TEST_CASE("full pipelines stay tight and exclusive") {
    SlotGraph g7 = expand_slot_graph(build_grid(7));
    ScheduledCircuit bare = full_pipeline(gen_cuccaro(7), g7, MapMode::QubitOnly);
    check_tight_schedule(bare);
    check_unit_exclusive(bare);
    check_timelines(bare);
    CHECK(bare.total_duration_ns > 0);

    SlotGraph g8 = expand_slot_graph(build_grid(8));
    ScheduledCircuit mixed = full_pipeline(gen_cuccaro(8), g8, MapMode::Mixed);
    check_tight_schedule(mixed);
    check_unit_exclusive(mixed);
    check_timelines(mixed);

    Circuit qa = gen_qaoa(gen_random_graph(9, 0.45, 2), 3);
    SlotGraph g9 = expand_slot_graph(build_grid(9));
    ScheduledCircuit qs = full_pipeline(qa, g9, MapMode::Mixed);
    check_tight_schedule(qs);
    check_unit_exclusive(qs);
    check_timelines(qs);
}

TEST_CASE("scheduling preserves op multiset and swap count") {
    Circuit c = gen_cuccaro(9);
    SlotGraph sg = expand_slot_graph(build_grid(9));
    InteractionGraph g = interaction_graph(c);
    Mapping m = eqm_map(g, sg, lib, coh, MapMode::Mixed);
    RoutedCircuit rc = route(c, m, sg, lib, coh);
    ScheduledCircuit sc = schedule(rc, lib);

    CHECK(sc.swap_count == rc.swap_count);
    int merged = 0;
    for (const PhysicalOp& op : sc.ops)
        if (op.merged)
            ++merged;
    CHECK(sc.ops.size() + merged == rc.ops.size());
    CHECK(sc.initial.slot_of == rc.initial.slot_of);
    CHECK(sc.final_map.slot_of == rc.final_map.slot_of);
}
