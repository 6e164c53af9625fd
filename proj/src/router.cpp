#include "qqc/router.hpp"

#include "qqc/util.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <set>

namespace qqc {

std::vector<SlotId> op_touched_slots(const PhysicalOp& op) {
    std::vector<SlotId> out;
    auto add_unit = [&](int u) {
        out.push_back(make_slot(u, 0));
        out.push_back(make_slot(u, 1));
    };
    switch (op.kind) {
    case PhysKind::SWAP4:
        add_unit(slot_unit(op.slots[0]));
        add_unit(slot_unit(op.slots[1]));
        break;
    case PhysKind::ENC:
    case PhysKind::DEC:
        add_unit(slot_unit(op.slots[0]));
        out.push_back(op.slots[1]);
        break;
    default:
        out.push_back(op.slots[0]);
        if (op.slots[1] != -1)
            out.push_back(op.slots[1]);
    }
    return out;
}

std::array<int, 2> op_touched_units(const PhysicalOp& op) {
    int u = slot_unit(op.slots[0]);
    int v = op.slots[1] == -1 ? -1 : slot_unit(op.slots[1]);
    if (v == u)
        v = -1;
    return {u, v};
}

void apply_op_to_mapping(Mapping& m, const PhysicalOp& op) {
    switch (op.kind) {
    case PhysKind::SWAP4:
        m.apply_unit_swap(slot_unit(op.slots[0]), slot_unit(op.slots[1]));
        break;
    case PhysKind::ENC: {
        int x = slot_unit(op.slots[0]);
        int y = slot_unit(op.slots[1]);
        int q = m.occupant[y][0];
        m.occupant[y][0] = -1;
        m.occ.count[y] = 0;
        m.occupant[x][1] = q;
        m.occ.count[x] = 2;
        m.slot_of[q] = make_slot(x, 1);
        break;
    }
    case PhysKind::DEC: {
        int x = slot_unit(op.slots[0]);
        int y = slot_unit(op.slots[1]);
        int q = m.occupant[x][1];
        m.occupant[x][1] = -1;
        m.occ.count[x] = 1;
        m.occupant[y][0] = q;
        m.occ.count[y] = 1;
        m.slot_of[q] = make_slot(y, 0);
        break;
    }
    default:
        if (op.origin == OpOrigin::Routing)
            m.apply_swap(op.slots[0], op.slots[1]);
        break;
    }
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool double_occupied_swap(PhysKind k) {
    return k == PhysKind::SWAPin || k == PhysKind::SWAP00 || k == PhysKind::SWAP01 ||
           k == PhysKind::SWAP11;
}

void check_placements(const Circuit& c, const Mapping& m) {
    if (int(m.slot_of.size()) < c.num_qubits)
        fail("mapping covers ", m.slot_of.size(), " qubits, circuit has ", c.num_qubits);
    for (int q = 0; q < c.num_qubits; ++q)
        if (m.slot_of[q] < 0)
            fail("qubit ", q, " has no initial placement");
}

struct GateDag {
    std::vector<std::vector<int>> succ;
    std::vector<int> indeg;
};

GateDag build_gate_dag(const Circuit& c) {
    GateDag d;
    d.succ.resize(c.gates.size());
    d.indeg.assign(c.gates.size(), 0);
    std::vector<int> last(c.num_qubits, -1);
    for (int i = 0; i < int(c.gates.size()); ++i)
        for (int t = 0; t < gate_arity(c.gates[i].kind); ++t) {
            int q = c.gates[i].q[t];
            if (last[q] != -1) {
                d.succ[last[q]].push_back(i);
                ++d.indeg[i];
            }
            last[q] = i;
        }
    return d;
}

// Slot path from a to b under the routing metric: interior swap hops plus a
// final CX hop, with predecessor tracking so livelock recovery can walk it.
std::vector<SlotId> metric_path(const SlotGraph& sg, const DistanceOracle& oracle,
                                const Occupancy& occ, SlotId a, SlotId b) {
    std::vector<double> dist(sg.num_slots(), kInf);
    std::vector<SlotId> pred(sg.num_slots(), -1);
    dist[a] = 0.0;
    using Item = std::pair<double, SlotId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.emplace(0.0, a);
    while (!pq.empty()) {
        auto [d, x] = pq.top();
        pq.pop();
        if (d > dist[x])
            continue;
        for (SlotId y : sg.adj[x]) {
            if (!hop_allowed(occ, x, y))
                continue;
            double nd = d + oracle.swap_cost(occ, x, y);
            if (nd < dist[y]) {
                dist[y] = nd;
                pred[y] = x;
                pq.emplace(nd, y);
            }
        }
    }
    SlotId hop = -1;
    double best = kInf;
    for (SlotId x : sg.adj[b]) {
        if (x != a && slot_index(x) != 0 && occ.count[slot_unit(x)] != 2)
            continue;
        if (dist[x] == kInf)
            continue;
        double total = dist[x] + oracle.cx_cost(occ, x, b);
        if (total < best) {
            best = total;
            hop = x;
        }
    }
    if (hop == -1)
        fail("slot ", b, " unreachable from slot ", a);
    std::vector<SlotId> path;
    for (SlotId x = hop; x != -1; x = pred[x])
        path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path; // a == path.front(), path.back() adjacent to b
}

} // namespace

RoutedCircuit route(const Circuit& c, const Mapping& initial, const SlotGraph& sg,
                    const GateLibrary& lib, CoherenceParams coh) {
    check_placements(c, initial);

    RoutedCircuit rc;
    rc.num_qubits = c.num_qubits;
    rc.num_units = sg.num_units;
    rc.initial = initial;

    Mapping m = initial;
    DistanceOracle oracle(sg, lib, coh);
    GateDag dag = build_gate_dag(c);
    std::vector<int> indeg = dag.indeg;
    std::vector<char> done(c.gates.size(), 0);
    std::vector<int> front;
    for (int i = 0; i < int(c.gates.size()); ++i)
        if (indeg[i] == 0)
            front.push_back(i);
    int remaining = int(c.gates.size());

    auto retire = [&](int gi) {
        done[gi] = 1;
        --remaining;
        front.erase(std::find(front.begin(), front.end(), gi));
        for (int s : dag.succ[gi])
            if (--indeg[s] == 0)
                front.push_back(s);
        std::sort(front.begin(), front.end());
    };
    auto emit_single = [&](const Gate& g) {
        SlotId s = m.slot_of[g.q[0]];
        PhysicalOp op;
        op.kind = !m.occ.encoded(slot_unit(s)) ? PhysKind::X
                  : slot_index(s) == 0         ? PhysKind::X0
                                               : PhysKind::X1;
        op.slots = {s, -1};
        op.payload = {g.q[0], -1};
        op.logical = g.kind;
        op.angle = g.angle;
        rc.ops.push_back(op);
    };
    auto executable = [&](const Gate& g) {
        int ua = slot_unit(m.slot_of[g.q[0]]);
        int ub = slot_unit(m.slot_of[g.q[1]]);
        return ua == ub || sg.units_adjacent(ua, ub);
    };
    auto emit_two = [&](const Gate& g) {
        SlotId a = m.slot_of[g.q[0]];
        SlotId b = m.slot_of[g.q[1]];
        PhysicalOp op;
        op.kind = g.kind == GateKind::SWAP ? classify_swap(m.occ, a, b)
                                           : classify_cx(m.occ, a, b);
        op.slots = {a, b};
        op.payload = {g.q[0], g.q[1]};
        op.logical = g.kind;
        op.angle = g.angle;
        rc.ops.push_back(op);
    };
    auto emit_routing_swap = [&](SlotId a, SlotId b) {
        PhysicalOp op;
        op.kind = classify_swap(m.occ, a, b);
        op.origin = OpOrigin::Routing;
        if (op.kind == PhysKind::DEC) {
            // DEC slots are (ququart, destination) whatever the swap order.
            int x = slot_unit(a), y = slot_unit(b);
            if (!m.occ.encoded(x))
                std::swap(x, y);
            op.slots = {make_slot(x, 0), make_slot(y, 0)};
            op.payload = {m.occupant[x][0], m.occupant[x][1]};
        } else {
            op.slots = {a, b};
            op.payload = {m.qubit_at(a), m.qubit_at(b)};
            ++rc.swap_count;
        }
        rc.ops.push_back(op);
        apply_op_to_mapping(m, op);
    };

    int stall = 0;
    const int stall_limit = 3 * sg.num_units;
    std::vector<int> front2, ahead;
    while (remaining > 0) {
        bool progress = true;
        while (progress) {
            progress = false;
            std::vector<int> snapshot = front;
            for (int gi : snapshot) {
                if (done[gi])
                    continue;
                const Gate& g = c.gates[gi];
                if (gate_arity(g.kind) == 3)
                    fail("three-qubit gates must be lowered before routing");
                if (gate_arity(g.kind) == 1) {
                    emit_single(g);
                    retire(gi);
                    progress = true;
                } else if (executable(g)) {
                    emit_two(g);
                    retire(gi);
                    progress = true;
                    stall = 0;
                }
            }
        }
        if (remaining == 0)
            break;

        front2 = front;
        ahead.clear();
        std::vector<char> in_front(c.gates.size(), 0);
        for (int gi : front2)
            in_front[gi] = 1;
        for (int i = 0; i < int(c.gates.size()) && int(ahead.size()) < 20; ++i)
            if (!done[i] && !in_front[i] && gate_arity(c.gates[i].kind) == 2)
                ahead.push_back(i);

        auto objective_for = [&](const Mapping& mp) {
            oracle.invalidate();
            double obj = 0.0;
            for (int gi : front2)
                obj += oracle.distance(mp.occ, mp.slot_of[c.gates[gi].q[0]],
                                       mp.slot_of[c.gates[gi].q[1]]);
            for (int gi : ahead)
                obj += 0.5 * oracle.distance(mp.occ, mp.slot_of[c.gates[gi].q[0]],
                                             mp.slot_of[c.gates[gi].q[1]]);
            return obj;
        };
        double base_obj = objective_for(m);

        std::set<std::pair<SlotId, SlotId>> cands;
        for (int gi : front2)
            for (int t = 0; t < 2; ++t) {
                SlotId s = m.slot_of[c.gates[gi].q[t]];
                for (SlotId y : sg.adj[s])
                    if (hop_allowed(m.occ, s, y))
                        cands.insert({std::min(s, y), std::max(s, y)});
            }

        struct Scored {
            SlotId a, b;
            double raw;
            bool qq;
        };
        std::vector<Scored> scored;
        scored.reserve(cands.size());
        for (auto [a, b] : cands) {
            bool qq = double_occupied_swap(classify_swap(m.occ, a, b));
            Mapping trial = m;
            trial.apply_swap(a, b);
            scored.push_back({a, b, objective_for(trial), qq});
        }
        const Scored* pick = nullptr;
        for (const auto& s : scored)
            if (!s.qq && s.raw < base_obj && (!pick || s.raw < pick->raw))
                pick = &s;
        if (!pick) {
            double best = kInf;
            for (const auto& s : scored) {
                double penalized = s.raw * (s.qq ? 2.0 : 1.0);
                if (penalized < best) {
                    best = penalized;
                    pick = &s;
                }
            }
        }
        if (!pick)
            fail("router found no legal swap");
        emit_routing_swap(pick->a, pick->b);
        ++stall;

        if (stall > stall_limit) {
            oracle.invalidate();
            int far = front2[0];
            double far_d = -1.0;
            for (int gi : front2) {
                double d = oracle.distance(m.occ, m.slot_of[c.gates[gi].q[0]],
                                           m.slot_of[c.gates[gi].q[1]]);
                if (d > far_d) {
                    far_d = d;
                    far = gi;
                }
            }
            const Gate& g = c.gates[far];
            while (!executable(g)) {
                std::vector<SlotId> path = metric_path(
                    sg, oracle, m.occ, m.slot_of[g.q[0]], m.slot_of[g.q[1]]);
                for (size_t i = 0; i + 1 < path.size() && !executable(g); ++i)
                    emit_routing_swap(path[i], path[i + 1]);
            }
            emit_two(g);
            retire(far);
            stall = 0;
        }
    }
    rc.final_map = m;
    return rc;
}

RoutedCircuit route_fq(const Circuit& c, const Mapping& initial, const SlotGraph& sg) {
    check_placements(c, initial);

    RoutedCircuit rc;
    rc.num_qubits = c.num_qubits;
    rc.num_units = sg.num_units;
    rc.initial = initial;

    Mapping m = initial;
    const PhysicalTopology& topo = sg.topo;

    auto emit_swap4 = [&](int u, int v) {
        PhysicalOp op;
        op.kind = PhysKind::SWAP4;
        op.origin = OpOrigin::Routing;
        op.slots = {make_slot(u, 0), make_slot(v, 0)};
        op.payload = {m.occupant[u][0], m.occupant[v][0]};
        rc.ops.push_back(op);
        apply_op_to_mapping(m, op);
        ++rc.swap_count;
    };
    auto emit_codec = [&](PhysKind kind, int x, int y) {
        PhysicalOp op;
        op.kind = kind;
        op.origin = OpOrigin::Encode;
        op.slots = {make_slot(x, 0), make_slot(y, 0)};
        op.payload = kind == PhysKind::DEC
                         ? std::array<int, 2>{m.occupant[x][0], m.occupant[x][1]}
                         : std::array<int, 2>{m.occupant[x][0], m.occupant[y][0]};
        rc.ops.push_back(op);
        apply_op_to_mapping(m, op);
    };

    struct Bfs {
        std::vector<int> parent; // -2 unvisited, -1 root
        std::vector<int> depth;
    };
    auto unit_bfs = [&](int src, int blocked) {
        Bfs b;
        b.parent.assign(topo.num_units, -2);
        b.depth.assign(topo.num_units, -1);
        b.parent[src] = -1;
        b.depth[src] = 0;
        std::deque<int> queue{src};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : topo.adj[u]) {
                if (v == blocked || b.parent[v] != -2)
                    continue;
                b.parent[v] = u;
                b.depth[v] = b.depth[u] + 1;
                queue.push_back(v);
            }
        }
        return b;
    };
    // Walks src's unit contents along the BFS path until adjacent to dst.
    auto route_unit_adjacent = [&](int src, int dst) {
        if (topo.adjacent(src, dst))
            return src;
        Bfs b = unit_bfs(src, -1);
        if (b.parent[dst] == -2)
            fail("unit ", dst, " unreachable from unit ", src);
        std::vector<int> path;
        for (int v = dst; v != -1; v = b.parent[v])
            path.push_back(v);
        std::reverse(path.begin(), path.end()); // src .. dst
        for (size_t i = 0; i + 2 < path.size(); ++i)
            emit_swap4(path[i], path[i + 1]);
        return path[path.size() - 2];
    };
    // Splits the pair in unit x: its slot-1 member moves to the nearest
    // empty unit, brought adjacent with SWAP4 moves first.
    auto decode_unit = [&](int x) {
        Bfs from_x = unit_bfs(x, -1);
        int hole = -1;
        int hole_d = std::numeric_limits<int>::max();
        for (int u = 0; u < topo.num_units; ++u)
            if (m.occ.count[u] == 0 && from_x.depth[u] != -1 && from_x.depth[u] < hole_d) {
                hole_d = from_x.depth[u];
                hole = u;
            }
        if (hole == -1)
            fail("no empty unit available for decoding");
        if (!topo.adjacent(hole, x)) {
            Bfs b = unit_bfs(hole, x);
            int target = -1;
            int best_d = std::numeric_limits<int>::max();
            for (int v : topo.adj[x])
                if (b.depth[v] != -1 && b.depth[v] < best_d) {
                    best_d = b.depth[v];
                    target = v;
                }
            if (target == -1)
                fail("no route for decode ancilla next to unit ", x);
            std::vector<int> path;
            for (int v = target; v != -1; v = b.parent[v])
                path.push_back(v);
            std::reverse(path.begin(), path.end()); // hole .. target
            for (size_t i = 0; i + 1 < path.size(); ++i)
                emit_swap4(path[i], path[i + 1]);
            hole = target;
        }
        emit_codec(PhysKind::DEC, x, hole);
    };

    for (const Gate& g : c.gates) {
        int arity = gate_arity(g.kind);
        if (arity == 3)
            fail("three-qubit gates must be lowered before routing");
        if (arity == 1) {
            SlotId s = m.slot_of[g.q[0]];
            PhysicalOp op;
            op.kind = !m.occ.encoded(slot_unit(s)) ? PhysKind::X
                      : slot_index(s) == 0         ? PhysKind::X0
                                                   : PhysKind::X1;
            op.slots = {s, -1};
            op.payload = {g.q[0], -1};
            op.logical = g.kind;
            op.angle = g.angle;
            rc.ops.push_back(op);
            continue;
        }

        auto emit_gate = [&]() {
            SlotId a = m.slot_of[g.q[0]];
            SlotId b = m.slot_of[g.q[1]];
            PhysicalOp op;
            op.kind = g.kind == GateKind::SWAP ? classify_swap(m.occ, a, b)
                                               : classify_cx(m.occ, a, b);
            op.slots = {a, b};
            op.payload = {g.q[0], g.q[1]};
            op.logical = g.kind;
            op.angle = g.angle;
            rc.ops.push_back(op);
        };

        if (slot_unit(m.slot_of[g.q[0]]) == slot_unit(m.slot_of[g.q[1]])) {
            emit_gate(); // internal pair gate, no decode needed
            continue;
        }

        std::vector<std::pair<int, int>> reencode; // (slot-0 member, split member)
        for (int t = 0; t < 2; ++t) {
            int u = slot_unit(m.slot_of[g.q[t]]);
            if (m.occ.encoded(u)) {
                reencode.push_back({m.occupant[u][0], m.occupant[u][1]});
                decode_unit(u);
            }
        }

        int ua = slot_unit(m.slot_of[g.q[0]]);
        int ub = slot_unit(m.slot_of[g.q[1]]);
        if (!topo.adjacent(ua, ub))
            route_unit_adjacent(ua, ub);
        emit_gate();

        for (auto [keep, moved] : reencode) {
            int x = slot_unit(m.slot_of[keep]);
            int y = slot_unit(m.slot_of[moved]);
            if (!topo.adjacent(x, y))
                y = route_unit_adjacent(y, x);
            emit_codec(PhysKind::ENC, x, y);
        }
    }
    rc.final_map = m;
    return rc;
}

} // namespace qqc
