#include "qqc/mapper.hpp"

#include "qqc/util.hpp"

#include <algorithm>
#include <limits>

namespace qqc {

double InteractionGraph::weight(int i, int j) const {
    auto it = adj[i].find(j);
    return it == adj[i].end() ? 0.0 : it->second;
}

int InteractionGraph::simultaneity(int i, int j) const {
    // Count layers present in both busy sets, then drop the layers where the
    // two qubits sit in the same gate; what remains is concurrent but
    // independent activity.
    const auto& a = busy_layers[i];
    const auto& b = busy_layers[j];
    size_t x = 0, y = 0;
    int common = 0;
    while (x < a.size() && y < b.size()) {
        if (a[x] < b[y])
            ++x;
        else if (b[y] < a[x])
            ++y;
        else {
            ++common;
            ++x;
            ++y;
        }
    }
    auto it = edge_layers.find({std::min(i, j), std::max(i, j)});
    int shared = it == edge_layers.end() ? 0 : int(it->second.size());
    return common - shared;
}

InteractionGraph interaction_graph(const Circuit& c) {
    std::vector<int> layer = asap_layers(c);
    InteractionGraph g;
    g.num_nodes = c.num_qubits;
    g.adj.resize(c.num_qubits);
    g.busy_layers.resize(c.num_qubits);
    g.members.resize(c.num_qubits);
    g.merged.assign(c.num_qubits, 0);
    for (int i = 0; i < c.num_qubits; ++i)
        g.members[i] = {i};
    for (size_t k = 0; k < c.gates.size(); ++k) {
        const Gate& gt = c.gates[k];
        int arity = gate_arity(gt.kind);
        for (int t = 0; t < arity; ++t)
            g.busy_layers[gt.q[t]].push_back(layer[k]);
        if (arity == 2) {
            int i = std::min(gt.q[0], gt.q[1]);
            int j = std::max(gt.q[0], gt.q[1]);
            double w = 1.0 / layer[k];
            g.adj[i][j] += w;
            g.adj[j][i] += w;
            g.edge_layers[{i, j}].push_back(layer[k]);
        }
    }
    for (auto& v : g.busy_layers) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return g;
}

double total_weight(const InteractionGraph& g, int i) {
    double s = 0.0;
    for (const auto& [j, w] : g.adj[i])
        s += w;
    return s;
}

int center_unit(const PhysicalTopology& t) {
    auto d = unit_distances(t);
    int best = 0;
    int best_ecc = std::numeric_limits<int>::max();
    for (int u = 0; u < t.num_units; ++u) {
        int ecc = *std::max_element(d[u].begin(), d[u].end());
        if (ecc < best_ecc) {
            best_ecc = ecc;
            best = u;
        }
    }
    return best;
}

void CompressionPlan::validate(int num_qubits) const {
    std::vector<char> seen(num_qubits, 0);
    for (const auto& [a, b] : pairs) {
        if (a < 0 || b < 0 || a >= num_qubits || b >= num_qubits)
            fail("compression pair (", a, ", ", b, ") out of range for ", num_qubits,
                 " qubits");
        if (a == b)
            fail("compression pair (", a, ", ", b, ") repeats a qubit");
        if (seen[a] || seen[b])
            fail("qubit ", seen[a] ? a : b, " appears in two compression pairs");
        seen[a] = seen[b] = 1;
    }
}

int CompressionPlan::partner_of(int q) const {
    for (const auto& [a, b] : pairs) {
        if (a == q)
            return b;
        if (b == q)
            return a;
    }
    return -1;
}

Mapping Mapping::empty(int num_qubits, int num_units) {
    Mapping m;
    m.slot_of.assign(num_qubits, -1);
    m.occupant.assign(num_units, {-1, -1});
    m.occ = Occupancy(num_units);
    return m;
}

void Mapping::place(int q, SlotId s) {
    if (occupant[slot_unit(s)][slot_index(s)] != -1)
        fail("slot ", s, " already occupied");
    slot_of[q] = s;
    occupant[slot_unit(s)][slot_index(s)] = q;
    occ.count[slot_unit(s)]++;
}

void Mapping::apply_swap(SlotId a, SlotId b) {
    int qa = qubit_at(a);
    int qb = qubit_at(b);
    occupant[slot_unit(a)][slot_index(a)] = qb;
    occupant[slot_unit(b)][slot_index(b)] = qa;
    if (qa != -1)
        slot_of[qa] = b;
    if (qb != -1)
        slot_of[qb] = a;
    for (int u : {slot_unit(a), slot_unit(b)}) {
        occ.count[u] =
            uint8_t((occupant[u][0] != -1 ? 1 : 0) + (occupant[u][1] != -1 ? 1 : 0));
        if (occupant[u][0] == -1 && occupant[u][1] != -1) {
            int q = occupant[u][1];
            occupant[u][0] = q;
            occupant[u][1] = -1;
            slot_of[q] = make_slot(u, 0);
        }
    }
}

void Mapping::apply_unit_swap(int u, int v) {
    std::swap(occupant[u], occupant[v]);
    std::swap(occ.count[u], occ.count[v]);
    for (int w : {u, v})
        for (int s = 0; s < 2; ++s)
            if (occupant[w][s] != -1)
                slot_of[occupant[w][s]] = make_slot(w, s);
}

Mapping eqm_map(const InteractionGraph& g, const SlotGraph& sg, const GateLibrary& lib,
                CoherenceParams coh, MapMode mode, const CompressionPlan* plan) {
    int n = g.num_nodes;
    int units = sg.num_units;
    if (mode == MapMode::QubitOnly && n > units)
        fail("circuit needs ", n, " units but the map has ", units);
    if (n > 2 * units)
        fail("circuit needs ", n, " qubits but the map holds at most ", 2 * units);

    std::vector<int> partner(n, -1);
    if (mode == MapMode::PlanConstrained) {
        if (!plan)
            fail("plan_constrained mapping requires a compression plan");
        plan->validate(n);
        if (n - int(plan->pairs.size()) > units)
            fail("plan needs ", n - int(plan->pairs.size()), " units but the map has ",
                 units);
        for (const auto& [a, b] : plan->pairs) {
            partner[a] = b;
            partner[b] = a;
        }
    }

    auto dist_units = unit_distances(sg.topo);
    DistanceOracle oracle(sg, lib, coh);
    Mapping m = Mapping::empty(n, units);
    std::vector<char> placed(n, 0);

    int first = 0;
    double heaviest = -1.0;
    for (int i = 0; i < n; ++i) {
        double w = total_weight(g, i);
        if (w > heaviest) {
            heaviest = w;
            first = i;
        }
    }
    m.place(first, make_slot(center_unit(sg.topo), 0));
    placed[first] = 1;

    std::vector<SlotId> cands;
    std::vector<double> dswap;
    for (int step = 1; step < n; ++step) {
        int q = -1;
        double best_pull = -1.0;
        for (int i = 0; i < n; ++i) {
            if (placed[i])
                continue;
            double pull = 0.0;
            for (const auto& [j, w] : g.adj[i])
                if (placed[j])
                    pull += w;
            if (pull > best_pull) {
                best_pull = pull;
                q = i;
            }
        }

        cands.clear();
        if (mode == MapMode::PlanConstrained && partner[q] != -1 && placed[partner[q]]) {
            cands.push_back(make_slot(slot_unit(m.slot_of[partner[q]]), 1));
        } else {
            // Stay within two hops of the occupied region; widen to the whole
            // map only when that region has no free slot left.
            std::vector<char> allowed(units, 0);
            for (int u = 0; u < units; ++u)
                for (int v = 0; v < units; ++v)
                    if (m.occ.count[v] > 0 && dist_units[u][v] <= 2) {
                        allowed[u] = 1;
                        break;
                    }
            bool expects_more = false;
            for (const auto& [j, w] : g.adj[q])
                if (!placed[j] && w > 0.0) {
                    expects_more = true;
                    break;
                }
            auto gather = [&](bool all) {
                for (int u = 0; u < units; ++u) {
                    if (!all && !allowed[u])
                        continue;
                    if (m.occ.count[u] == 0)
                        cands.push_back(make_slot(u, 0));
                    else if (m.occ.count[u] == 1 && mode == MapMode::Mixed &&
                             (!expects_more ||
                              g.weight(q, m.occupant[u][0]) > 0.0))
                        cands.push_back(make_slot(u, 1));
                }
            };
            gather(false);
            if (cands.empty())
                gather(true);
            if (cands.empty() && mode == MapMode::Mixed)
                // Capacity forces doubling up with a non-interacting qubit.
                for (int u = 0; u < units; ++u)
                    if (m.occ.count[u] == 1)
                        cands.push_back(make_slot(u, 1));
            std::sort(cands.begin(), cands.end(), [](SlotId a, SlotId b) {
                if (slot_index(a) != slot_index(b))
                    return slot_index(a) < slot_index(b);
                return a < b;
            });
        }
        if (cands.empty())
            fail("no free slot for qubit ", q);

        SlotId chosen = -1;
        double best_score = -1.0;
        for (SlotId s : cands) {
            Occupancy hypo = m.occ;
            hypo.count[slot_unit(s)]++;
            double score = 0.0;
            bool have_dists = false;
            for (const auto& [j, w] : g.adj[q]) {
                if (!placed[j] || w <= 0.0)
                    continue;
                if (!have_dists) {
                    oracle.swap_dists_into(hypo, s, dswap);
                    have_dists = true;
                }
                score += w / oracle.complete(hypo, dswap, s, m.slot_of[j]);
            }
            if (score > best_score) {
                best_score = score;
                chosen = s;
            }
        }
        m.place(q, chosen);
        placed[q] = 1;
    }
    return m;
}

} // namespace qqc
