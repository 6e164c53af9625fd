#include "qqc/router.hpp"

#include "qqc/util.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <tuple>

namespace qqc {

namespace {

struct SlotDag {
    std::vector<std::vector<int>> succ;
    std::vector<int> pend;
};

// Op j depends on the previous op touching any slot that j touches.
SlotDag build_slot_dag(const std::vector<PhysicalOp>& ops, int num_units) {
    SlotDag d;
    d.succ.resize(ops.size());
    d.pend.assign(ops.size(), 0);
    std::vector<int> last(2 * num_units, -1);
    for (int i = 0; i < int(ops.size()); ++i)
        for (SlotId s : op_touched_slots(ops[i])) {
            if (last[s] != -1) {
                d.succ[last[s]].push_back(i);
                ++d.pend[i];
            }
            last[s] = i;
        }
    return d;
}

} // namespace

ScheduledCircuit schedule(const RoutedCircuit& rc, const GateLibrary& lib) {
    ScheduledCircuit sc;
    sc.num_qubits = rc.num_qubits;
    sc.num_units = rc.num_units;
    sc.initial = rc.initial;
    sc.final_map = rc.final_map;
    sc.swap_count = rc.swap_count;

    std::vector<PhysicalOp> ops = rc.ops;
    for (PhysicalOp& op : ops)
        op.duration_ns = lib.spec(op.kind).duration_ns;
    int n = int(ops.size());

    SlotDag dag = build_slot_dag(ops, rc.num_units);
    std::vector<int> pend = dag.pend;

    // Remaining dependent work below each op, for the longest-chain-first
    // tie-break. Successors always have larger indices, so one sweep works.
    std::vector<int64_t> rem(n, 0);
    for (int i = n - 1; i >= 0; --i) {
        int64_t mx = 0;
        for (int s : dag.succ[i])
            mx = std::max(mx, rem[s]);
        rem[i] = ops[i].duration_ns + mx;
    }

    std::vector<int64_t> ready_at(n, 0);
    std::vector<int64_t> unit_free(rc.num_units, 0);
    std::vector<char> emitted(n, 0);
    auto est_of = [&](int i) {
        auto [u, v] = op_touched_units(ops[i]);
        int64_t t = std::max(ready_at[i], unit_free[u]);
        if (v != -1)
            t = std::max(t, unit_free[v]);
        return t;
    };

    // Ready single-qubit ququart ops per slot, scanned for merge partners.
    std::vector<std::vector<int>> ready_on_slot(2 * rc.num_units);
    auto mergeable = [&](int i) {
        return ops[i].origin == OpOrigin::Program &&
               (ops[i].kind == PhysKind::X0 || ops[i].kind == PhysKind::X1);
    };

    using Key = std::tuple<int64_t, int64_t, int>; // (est, -rem, seq)
    std::priority_queue<Key, std::vector<Key>, std::greater<Key>> pq;
    auto enqueue = [&](int i) {
        pq.push({est_of(i), -rem[i], i});
        if (mergeable(i))
            ready_on_slot[ops[i].slots[0]].push_back(i);
    };
    for (int i = 0; i < n; ++i)
        if (pend[i] == 0)
            enqueue(i);

    int64_t makespan = 0;
    std::vector<PhysicalOp> out;
    out.reserve(n);
    auto complete_op = [&](int i, int64_t end) {
        emitted[i] = 1;
        for (int s : dag.succ[i]) {
            ready_at[s] = std::max(ready_at[s], end);
            if (--pend[s] == 0)
                enqueue(s);
        }
    };

    while (!pq.empty()) {
        auto [est, neg_rem, i] = pq.top();
        pq.pop();
        if (emitted[i])
            continue;
        int64_t cur = est_of(i);
        if (cur != est) {
            pq.push({cur, neg_rem, i});
            continue;
        }

        int partner = -1;
        if (mergeable(i)) {
            int u = slot_unit(ops[i].slots[0]);
            PhysKind want = ops[i].kind == PhysKind::X0 ? PhysKind::X1 : PhysKind::X0;
            SlotId mate = make_slot(u, ops[i].kind == PhysKind::X0 ? 1 : 0);
            for (int j : ready_on_slot[mate])
                if (!emitted[j] && ops[j].kind == want && est_of(j) == cur &&
                    (partner == -1 || j < partner))
                    partner = j;
        }
        if (partner != -1) {
            int i0 = ops[i].kind == PhysKind::X0 ? i : partner;
            int i1 = i0 == i ? partner : i;
            PhysicalOp mo;
            mo.kind = PhysKind::X01;
            mo.origin = OpOrigin::Program;
            mo.slots = {ops[i0].slots[0], ops[i1].slots[0]};
            mo.payload = {ops[i0].payload[0], ops[i1].payload[0]};
            mo.logical = ops[i0].logical;
            mo.angle = ops[i0].angle;
            mo.logical2 = ops[i1].logical;
            mo.angle2 = ops[i1].angle;
            mo.merged = true;
            mo.start_ns = cur;
            mo.duration_ns = lib.spec(PhysKind::X01).duration_ns;
            int64_t end = cur + mo.duration_ns;
            unit_free[slot_unit(mo.slots[0])] = end;
            makespan = std::max(makespan, end);
            out.push_back(mo);
            complete_op(i, end);
            complete_op(partner, end);
        } else {
            ops[i].start_ns = cur;
            int64_t end = cur + ops[i].duration_ns;
            auto [u, v] = op_touched_units(ops[i]);
            unit_free[u] = end;
            if (v != -1)
                unit_free[v] = end;
            makespan = std::max(makespan, end);
            out.push_back(ops[i]);
            complete_op(i, end);
        }
    }
    for (char e : emitted)
        if (!e)
            fail("scheduler left operations pending");

    std::stable_sort(out.begin(), out.end(),
                     [](const PhysicalOp& a, const PhysicalOp& b) {
                         return a.start_ns < b.start_ns;
                     });
    sc.ops = std::move(out);
    sc.total_duration_ns = makespan;

    // Exposure replay: occupancy changes land at op end times, so walking
    // ops in end order tracks when each unit is encoded as a ququart.
    sc.encoded_ns.assign(rc.num_units, 0);
    sc.active.assign(rc.num_units, 0);
    sc.unit_timeline.assign(rc.num_units, {});
    Mapping mm = rc.initial;
    std::vector<char> enc_now(rc.num_units, 0);
    for (int u = 0; u < rc.num_units; ++u) {
        enc_now[u] = mm.occ.encoded(u);
        sc.active[u] = mm.occ.count[u] > 0;
    }
    std::vector<int> order(sc.ops.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return sc.ops[a].start_ns + sc.ops[a].duration_ns <
               sc.ops[b].start_ns + sc.ops[b].duration_ns;
    });
    int64_t last_t = 0;
    auto advance = [&](int64_t t) {
        if (t <= last_t)
            return;
        for (int u = 0; u < rc.num_units; ++u) {
            if (enc_now[u])
                sc.encoded_ns[u] += t - last_t;
            auto& tl = sc.unit_timeline[u];
            if (!tl.empty() && tl.back().ququart == bool(enc_now[u]) &&
                tl.back().end_ns == last_t)
                tl.back().end_ns = t;
            else
                tl.push_back({last_t, t, bool(enc_now[u])});
        }
        last_t = t;
    };
    for (int idx : order) {
        const PhysicalOp& op = sc.ops[idx];
        advance(op.start_ns + op.duration_ns);
        apply_op_to_mapping(mm, op);
        auto [u, v] = op_touched_units(op);
        enc_now[u] = mm.occ.encoded(u);
        sc.active[u] |= mm.occ.count[u] > 0;
        if (v != -1) {
            enc_now[v] = mm.occ.encoded(v);
            sc.active[v] |= mm.occ.count[v] > 0;
        }
    }
    advance(sc.total_duration_ns);
    for (int u = 0; u < rc.num_units; ++u)
        if (sc.unit_timeline[u].empty())
            sc.unit_timeline[u].push_back({0, sc.total_duration_ns, bool(enc_now[u])});
    return sc;
}

} // namespace qqc
