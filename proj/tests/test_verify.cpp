#include "doctest.h"

#include "qqc/benchmarks.hpp"
#include "qqc/compress.hpp"
#include "qqc/util.hpp"
#include "qqc/verify.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace qqc;

namespace {

GateLibrary lib;

PhysicalOp phys(PhysKind k, SlotId a, SlotId b = -1,
                OpOrigin origin = OpOrigin::Program) {
    PhysicalOp op;
    op.kind = k;
    op.origin = origin;
    op.slots = {a, b};
    return op;
}

ScheduledCircuit two_bare_units(int num_qubits) {
    ScheduledCircuit sc;
    sc.num_qubits = num_qubits;
    sc.num_units = 2;
    sc.initial = Mapping::empty(num_qubits, 2);
    for (int q = 0; q < num_qubits; ++q)
        sc.initial.place(q, make_slot(q, 0));
    sc.final_map = sc.initial;
    return sc;
}

size_t index_of(const UnitBasis& ub, const std::vector<int>& levels) {
    REQUIRE(levels.size() == ub.units.size());
    size_t idx = 0;
    for (size_t p = 0; p < levels.size(); ++p)
        idx += size_t(levels[p]) * ub.stride[p];
    return idx;
}

std::vector<Amp> basis_state(const UnitBasis& ub, const std::vector<int>& levels) {
    std::vector<Amp> st(ub.total_dim, Amp(0));
    st[index_of(ub, levels)] = 1.0;
    return st;
}

size_t sole_support(const std::vector<Amp>& st) {
    size_t found = st.size();
    for (size_t i = 0; i < st.size(); ++i) {
        if (std::abs(st[i]) < 1e-12)
            continue;
        REQUIRE(found == st.size());
        REQUIRE(std::abs(st[i] - Amp(1.0)) < 1e-12);
        found = i;
    }
    REQUIRE(found < st.size());
    return found;
}

} // namespace

TEST_CASE("encoding packs two qubits into one digit") {
    ScheduledCircuit sc = two_bare_units(2);
    sc.ops = {phys(PhysKind::ENC, make_slot(0, 0), make_slot(1, 0), OpOrigin::Encode)};
    UnitBasis ub = unit_basis(sc);
    REQUIRE(ub.units == std::vector<int>{0, 1});
    REQUIRE(ub.dim == std::vector<int>{4, 2});
    REQUIRE(ub.total_dim == 8);

    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            auto out = run_physical(sc, ub, basis_state(ub, {a, b}));
            CHECK(sole_support(out) == index_of(ub, {2 * a + b, 0}));
        }
}

TEST_CASE("decoding inverts encoding on every input") {
    ScheduledCircuit sc = two_bare_units(2);
    sc.ops = {phys(PhysKind::ENC, make_slot(0, 0), make_slot(1, 0), OpOrigin::Encode),
              phys(PhysKind::DEC, make_slot(0, 0), make_slot(1, 0), OpOrigin::Encode)};
    UnitBasis ub = unit_basis(sc);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            auto out = run_physical(sc, ub, basis_state(ub, {a, b}));
            CHECK(sole_support(out) == index_of(ub, {a, b}));
        }
}

TEST_CASE("the intra-ququart swap exchanges the middle digits") {
    ScheduledCircuit sc;
    sc.num_qubits = 2;
    sc.num_units = 1;
    sc.initial = Mapping::empty(2, 1);
    sc.initial.place(0, make_slot(0, 0));
    sc.initial.place(1, make_slot(0, 1));
    sc.final_map = sc.initial;
    sc.ops = {phys(PhysKind::SWAPin, make_slot(0, 0), -1, OpOrigin::Routing)};
    UnitBasis ub = unit_basis(sc);
    REQUIRE(ub.total_dim == 4);

    int expect[4] = {0, 2, 1, 3};
    for (int l = 0; l < 4; ++l) {
        auto out = run_physical(sc, ub, basis_state(ub, {l}));
        CHECK(sole_support(out) == size_t(expect[l]));
    }
}

TEST_CASE("internal controlled-nots act on the right digit pairs") {
    ScheduledCircuit sc;
    sc.num_qubits = 2;
    sc.num_units = 1;
    sc.initial = Mapping::empty(2, 1);
    sc.initial.place(0, make_slot(0, 0));
    sc.initial.place(1, make_slot(0, 1));
    sc.final_map = sc.initial;
    UnitBasis ub = unit_basis(sc);

    int cx0[4] = {0, 1, 3, 2}; // control slot 0: flips within {2,3}
    int cx1[4] = {0, 3, 2, 1}; // control slot 1: exchanges 1 and 3
    for (int l = 0; l < 4; ++l) {
        sc.ops = {phys(PhysKind::CX0, make_slot(0, 0))};
        auto out = run_physical(sc, ub, basis_state(ub, {l}));
        CHECK(sole_support(out) == size_t(cx0[l]));
        sc.ops = {phys(PhysKind::CX1, make_slot(0, 0))};
        out = run_physical(sc, ub, basis_state(ub, {l}));
        CHECK(sole_support(out) == size_t(cx1[l]));
    }
}

TEST_CASE("a partial controlled-not reads the encoded control digit") {
    ScheduledCircuit sc;
    sc.num_qubits = 3;
    sc.num_units = 2;
    sc.initial = Mapping::empty(3, 2);
    sc.initial.place(0, make_slot(0, 0));
    sc.initial.place(1, make_slot(0, 1));
    sc.initial.place(2, make_slot(1, 0));
    sc.final_map = sc.initial;
    sc.ops = {phys(PhysKind::CX0q, make_slot(0, 0), make_slot(1, 0))};
    UnitBasis ub = unit_basis(sc);
    REQUIRE(ub.dim == std::vector<int>{4, 2});

    for (int l = 0; l < 4; ++l)
        for (int t = 0; t < 2; ++t) {
            auto out = run_physical(sc, ub, basis_state(ub, {l, t}));
            int want_t = (l & 2) ? t ^ 1 : t;
            CHECK(sole_support(out) == index_of(ub, {l, want_t}));
        }
}

TEST_CASE("a native swap and a three-cx ladder both realize swap") {
    Circuit logical;
    logical.num_qubits = 2;
    logical.add(GateKind::SWAP, {0, 1});

    ScheduledCircuit native = two_bare_units(2);
    PhysicalOp sw = phys(PhysKind::SWAP2, make_slot(0, 0), make_slot(1, 0));
    sw.logical = GateKind::SWAP;
    native.ops = {sw};
    EquivalenceResult r1 = check_equivalence(logical, native, 17);
    CHECK(r1.ok);
    CHECK(r1.max_deviation < 1e-9);

    ScheduledCircuit ladder = two_bare_units(2);
    ladder.ops = {phys(PhysKind::CX2, make_slot(0, 0), make_slot(1, 0)),
                  phys(PhysKind::CX2, make_slot(1, 0), make_slot(0, 0)),
                  phys(PhysKind::CX2, make_slot(0, 0), make_slot(1, 0))};
    EquivalenceResult r2 = check_equivalence(logical, ladder, 17);
    CHECK(r2.ok);
}

TEST_CASE("rotation phases survive compilation exactly") {
    Circuit logical;
    logical.num_qubits = 1;
    logical.add(GateKind::H, {0});
    logical.add(GateKind::RZ, {0}, 0.7);
    logical.add(GateKind::H, {0});

    ScheduledCircuit sc;
    sc.num_qubits = 1;
    sc.num_units = 1;
    sc.initial = Mapping::empty(1, 1);
    sc.initial.place(0, make_slot(0, 0));
    sc.final_map = sc.initial;
    PhysicalOp h1 = phys(PhysKind::X, make_slot(0, 0));
    h1.logical = GateKind::H;
    PhysicalOp rz = phys(PhysKind::X, make_slot(0, 0));
    rz.logical = GateKind::RZ;
    rz.angle = 0.7;
    sc.ops = {h1, rz, h1};
    EquivalenceResult r = check_equivalence(logical, sc, 3);
    CHECK(r.ok);
    CHECK(r.max_deviation < 1e-12);
}

TEST_CASE("logical simulation rejects mis-sized states") {
    Circuit c;
    c.num_qubits = 3;
    CHECK_THROWS_AS(run_logical(c, std::vector<Amp>(4)), Error);
}

TEST_CASE("compiled pipelines match their source circuits") {
    CoherenceParams coh = CoherenceParams::defaults();

    Circuit adder = gen_cuccaro(5);
    StrategyOutput rb = run_strategy(Strategy::Rb, adder,
                                     expand_slot_graph(build_grid(5)), lib, coh);
    CHECK(check_equivalence(adder, rb.schedule, 5).ok);

    Circuit adder6 = gen_cuccaro(6);
    StrategyOutput fq = run_strategy(Strategy::Fq, adder6,
                                     expand_slot_graph(build_grid(6)), lib, coh);
    CHECK(check_equivalence(adder6, fq.schedule, 6).ok);

    Circuit qaoa = gen_qaoa(gen_random_graph(7, 0.5, 3), 9);
    StrategyOutput eqm = run_strategy(Strategy::Eqm, qaoa,
                                      expand_slot_graph(build_grid(7)), lib, coh);
    CHECK(check_equivalence(qaoa, eqm.schedule, 7).ok);

    Circuit mem = gen_qram(7);
    StrategyOutput pp = run_strategy(Strategy::Pp, mem,
                                     expand_slot_graph(build_grid(7)), lib, coh);
    CHECK(check_equivalence(mem, pp.schedule, 8).ok);
}

TEST_CASE("a corrupted schedule is rejected") {
    CoherenceParams coh = CoherenceParams::defaults();
    Circuit qaoa = gen_qaoa(gen_random_graph(6, 0.5, 21), 2);
    StrategyOutput so = run_strategy(Strategy::QubitOnly, qaoa,
                                     expand_slot_graph(build_grid(6)), lib, coh);
    REQUIRE(check_equivalence(qaoa, so.schedule, 11).ok);

    ScheduledCircuit bad = so.schedule;
    for (PhysicalOp& op : bad.ops)
        if (op.kind == PhysKind::CX2 && op.origin == OpOrigin::Program) {
            std::swap(op.slots[0], op.slots[1]);
            break;
        }
    EquivalenceResult r = check_equivalence(qaoa, bad, 11);
    CHECK(!r.ok);
    CHECK(!r.detail.empty());
}

TEST_CASE("oversized problems are refused rather than mis-verified") {
    Circuit wide;
    wide.num_qubits = 13;
    ScheduledCircuit sc;
    sc.num_qubits = 13;
    sc.num_units = 13;
    sc.initial = Mapping::empty(13, 13);
    for (int q = 0; q < 13; ++q)
        sc.initial.place(q, make_slot(q, 0));
    sc.final_map = sc.initial;
    CHECK_THROWS_AS(check_equivalence(wide, sc, 1), Error);

    Circuit adder = gen_cuccaro(12);
    StrategyOutput fq = run_strategy(Strategy::Fq, adder,
                                     expand_slot_graph(build_grid(12)), lib,
                                     CoherenceParams::defaults());
    UnitBasis ub = unit_basis(fq.schedule);
    REQUIRE(ub.total_dim > 4096);
    CHECK_THROWS_AS(check_equivalence(adder, fq.schedule, 1), Error);
}

TEST_CASE("basis bookkeeping matches the initial mapping") {
    Circuit adder = gen_cuccaro(8);
    StrategyOutput so = run_strategy(Strategy::Eqm, adder,
                                     expand_slot_graph(build_grid(8)), lib,
                                     CoherenceParams::defaults());
    const ScheduledCircuit& sc = so.schedule;
    UnitBasis ub = unit_basis(sc);

    size_t prod = 1;
    for (size_t p = 0; p < ub.units.size(); ++p) {
        int u = ub.units[p];
        CHECK(ub.pos_of[u] == int(p));
        if (sc.initial.occ.count[u] == 2)
            CHECK(ub.dim[p] == 4);
        if (p + 1 < ub.units.size())
            CHECK(ub.stride[p] == ub.stride[p + 1] * size_t(ub.dim[p + 1]));
        prod *= size_t(ub.dim[p]);
    }
    CHECK(ub.stride.back() == 1);
    CHECK(ub.total_dim == prod);
    for (int u = 0; u < sc.num_units; ++u)
        if (sc.initial.occ.count[u] > 0)
            CHECK(ub.pos_of[u] != -1);
}
