#include "qqc/compress.hpp"

#include "qqc/util.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <tuple>

namespace qqc {

namespace {

std::pair<int, int> ordered(int a, int b) {
    return {std::min(a, b), std::max(a, b)};
}

std::vector<int> merge_sorted(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

int shared_neighbors(const InteractionGraph& g, int a, int b) {
    int count = 0;
    for (const auto& [n, w] : g.adj[a])
        if (n != b && g.alive(n) && g.adj[b].count(n))
            ++count;
    return count;
}

} // namespace

const char* strategy_name(Strategy s) {
    switch (s) {
    case Strategy::QubitOnly:
        return "qubit_only";
    case Strategy::Fq:
        return "fq";
    case Strategy::Ec:
        return "ec";
    case Strategy::Eqm:
        return "eqm";
    case Strategy::Rb:
        return "rb";
    case Strategy::Awe:
        return "awe";
    case Strategy::Pp:
        return "pp";
    }
    fail("unknown strategy value ", int(s));
}

Strategy strategy_from_name(std::string_view name) {
    for (Strategy s : {Strategy::QubitOnly, Strategy::Fq, Strategy::Ec, Strategy::Eqm,
                       Strategy::Rb, Strategy::Awe, Strategy::Pp})
        if (name == strategy_name(s))
            return s;
    fail("unknown strategy '", std::string(name), "'");
}

ScheduledCircuit compile_with_plan(const Circuit& lowered, const InteractionGraph& ig,
                                   const CompressionPlan& plan, const SlotGraph& sg,
                                   const GateLibrary& lib, CoherenceParams coh,
                                   MapMode mode, bool fq_routing) {
    const CompressionPlan* p = mode == MapMode::PlanConstrained ? &plan : nullptr;
    Mapping init = eqm_map(ig, sg, lib, coh, mode, p);
    RoutedCircuit rc =
        fq_routing ? route_fq(lowered, init, sg) : route(lowered, init, sg, lib, coh);
    return schedule(rc, lib);
}

void collapse_pair(InteractionGraph& g, int a, int b) {
    int keep = std::min(a, b);
    int away = std::max(a, b);
    if (keep == away || !g.alive(keep) || !g.alive(away) || g.merged[keep] ||
        g.merged[away])
        fail("cannot collapse nodes ", a, " and ", b);
    g.adj[keep].erase(away);
    g.adj[away].erase(keep);
    g.edge_layers.erase(ordered(keep, away));
    for (const auto& [n, w] : g.adj[away]) {
        g.adj[keep][n] += w;
        g.adj[n][keep] = g.adj[keep][n];
        g.adj[n].erase(away);
        auto src = g.edge_layers.find(ordered(away, n));
        if (src != g.edge_layers.end()) {
            auto& dst = g.edge_layers[ordered(keep, n)];
            dst = merge_sorted(dst, src->second);
            g.edge_layers.erase(src);
        }
    }
    g.adj[away].clear();
    g.busy_layers[keep] = merge_sorted(g.busy_layers[keep], g.busy_layers[away]);
    g.members[keep] = merge_sorted(g.members[keep], g.members[away]);
    g.members[away].clear();
    g.merged[keep] = 1;
}

std::vector<int> min_cycle_through(const InteractionGraph& g, int v) {
    std::vector<int> best;
    if (!g.alive(v))
        return best;
    for (const auto& [x, wx] : g.adj[v]) {
        if (wx <= 0 || !g.alive(x))
            continue;
        std::vector<int> parent(g.num_nodes, -2);
        parent[v] = -1;
        std::deque<int> queue{v};
        bool found = false;
        while (!queue.empty() && !found) {
            int u = queue.front();
            queue.pop_front();
            for (const auto& [n, wn] : g.adj[u]) {
                if (wn <= 0 || !g.alive(n) || parent[n] != -2)
                    continue;
                if (u == v && n == x)
                    continue; // the closing edge itself
                parent[n] = u;
                if (n == x) {
                    found = true;
                    break;
                }
                queue.push_back(n);
            }
        }
        if (!found)
            continue;
        std::vector<int> cycle;
        for (int u = x; u != -1; u = parent[u])
            cycle.push_back(u);
        if (best.empty() || cycle.size() < best.size())
            best = std::move(cycle);
    }
    return best;
}

CompressionPlan plan_rb(const InteractionGraph& base) {
    InteractionGraph g = base;
    CompressionPlan plan;
    while (true) {
        size_t global_min = std::numeric_limits<size_t>::max();
        std::vector<std::vector<int>> per_vertex;
        for (int v = 0; v < g.num_nodes; ++v) {
            if (!g.alive(v))
                continue;
            std::vector<int> c = min_cycle_through(g, v);
            if (c.empty())
                continue;
            global_min = std::min(global_min, c.size());
            per_vertex.push_back(std::move(c));
        }
        if (per_vertex.empty())
            break;

        std::set<std::vector<int>> seen;
        std::vector<std::vector<int>> shortlist; // sorted vertex lists
        for (std::vector<int>& c : per_vertex) {
            if (c.size() > 2 * global_min)
                continue;
            std::sort(c.begin(), c.end());
            if (seen.insert(c).second)
                shortlist.push_back(c);
        }

        std::set<std::pair<int, int>> cands;
        for (const std::vector<int>& cyc : shortlist) {
            int anchor = -1;
            int fewest = std::numeric_limits<int>::max();
            for (int u : cyc) {
                int ext = 0;
                for (const auto& [n, w] : g.adj[u])
                    if (g.alive(n) && !std::binary_search(cyc.begin(), cyc.end(), n))
                        ++ext;
                if (ext < fewest) {
                    fewest = ext;
                    anchor = u;
                }
            }
            if (g.merged[anchor])
                continue;
            for (int u : cyc)
                if (u != anchor && !g.merged[u])
                    cands.insert(ordered(anchor, u));
        }
        if (cands.empty())
            break;

        auto in_cycles = [&](int a, int b) {
            int count = 0;
            for (const std::vector<int>& s : shortlist)
                if (std::binary_search(s.begin(), s.end(), a) &&
                    std::binary_search(s.begin(), s.end(), b))
                    ++count;
            return count;
        };
        std::pair<int, int> best_pair{-1, -1};
        std::tuple<double, int, int, int> best_key;
        for (const auto& [a, b] : cands) {
            std::tuple<double, int, int, int> key{g.weight(a, b), shared_neighbors(g, a, b),
                                                  in_cycles(a, b), -g.simultaneity(a, b)};
            if (best_pair.first == -1 || key > best_key) {
                best_key = key;
                best_pair = {a, b};
            }
        }
        auto [a, b] = best_pair;
        if (!(g.weight(a, b) > 0 || shared_neighbors(g, a, b) >= 1))
            break;
        plan.pairs.push_back({a, b});
        collapse_pair(g, a, b);
    }
    return plan;
}

AweResult plan_awe(const InteractionGraph& base) {
    InteractionGraph g = base;
    AweResult res;
    while (true) {
        double weight_sum = 0.0;
        int edges = 0;
        for (int i = 0; i < g.num_nodes; ++i) {
            if (!g.alive(i))
                continue;
            for (const auto& [n, w] : g.adj[i])
                if (n > i && g.alive(n)) {
                    weight_sum += w;
                    ++edges;
                }
        }
        if (edges == 0)
            break;
        double avg = weight_sum / edges;
        int best_a = -1;
        int best_b = -1;
        double best = avg;
        for (int a = 0; a < g.num_nodes; ++a) {
            if (!g.alive(a) || g.merged[a])
                continue;
            for (int b = a + 1; b < g.num_nodes; ++b) {
                if (!g.alive(b) || g.merged[b])
                    continue;
                auto it = g.adj[a].find(b);
                int has = it != g.adj[a].end() ? 1 : 0;
                double w_ab = has ? it->second : 0.0;
                int denom = edges - has - shared_neighbors(g, a, b);
                if (denom <= 0)
                    continue;
                double next_avg = (weight_sum - w_ab) / denom;
                if (next_avg > best) {
                    best = next_avg;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (best_a == -1)
            break;
        collapse_pair(g, best_a, best_b);
        res.plan.pairs.push_back({best_a, best_b});
        res.avg_trace.push_back(best);
    }
    return res;
}

CompressionPlan plan_pp(const InteractionGraph& g, const SlotGraph& sg,
                        const GateLibrary& lib, CoherenceParams coh) {
    CompressionPlan plan;
    DistanceOracle oracle(sg, lib, coh);
    std::vector<double> dist_new, dist_old;
    while (true) {
        Mapping m = eqm_map(g, sg, lib, coh, MapMode::PlanConstrained, &plan);
        std::vector<int> unpaired;
        for (int q = 0; q < g.num_nodes; ++q)
            if (plan.partner_of(q) == -1)
                unpaired.push_back(q);

        auto form_delta = [&](int host, int mover) {
            SlotId hs = m.slot_of[host];
            SlotId ms = m.slot_of[mover];
            Occupancy hypo = m.occ;
            hypo.count[slot_unit(ms)] -= 1;
            hypo.count[slot_unit(hs)] += 1;
            SlotId moved = make_slot(slot_unit(hs), 1);
            double delta = 0.0;
            oracle.swap_dists_into(hypo, moved, dist_new);
            oracle.swap_dists_into(m.occ, ms, dist_old);
            for (const auto& [k, w] : g.adj[mover]) {
                SlotId ks = m.slot_of[k];
                delta += w * (oracle.complete(hypo, dist_new, moved, ks) -
                              oracle.complete(m.occ, dist_old, ms, ks));
            }
            oracle.swap_dists_into(hypo, hs, dist_new);
            oracle.swap_dists_into(m.occ, hs, dist_old);
            for (const auto& [k, w] : g.adj[host]) {
                if (k == mover)
                    continue;
                SlotId ks = m.slot_of[k];
                delta += w * (oracle.complete(hypo, dist_new, hs, ks) -
                              oracle.complete(m.occ, dist_old, hs, ks));
            }
            return delta;
        };

        double best_delta = 0.0;
        int best_host = -1;
        int best_mover = -1;
        for (size_t ii = 0; ii < unpaired.size(); ++ii)
            for (size_t jj = ii + 1; jj < unpaired.size(); ++jj) {
                int i = unpaired[ii];
                int j = unpaired[jj];
                for (auto [host, mover] : {std::pair{i, j}, std::pair{j, i}}) {
                    double delta = form_delta(host, mover);
                    if (delta < best_delta) {
                        best_delta = delta;
                        best_host = host;
                        best_mover = mover;
                    }
                }
            }
        if (best_host == -1)
            break;
        plan.pairs.push_back({best_host, best_mover});
    }
    return plan;
}

CompressionPlan plan_fq(const InteractionGraph& g, int num_units) {
    if (g.num_nodes > num_units)
        fail("circuit needs ", g.num_nodes, " units but the map has ", num_units);
    struct WEdge {
        double w;
        int a, b;
    };
    std::vector<WEdge> edges;
    for (int a = 0; a < g.num_nodes; ++a)
        for (const auto& [b, w] : g.adj[a])
            if (b > a && w > 0)
                edges.push_back({w, a, b});
    std::sort(edges.begin(), edges.end(), [](const WEdge& x, const WEdge& y) {
        return std::tie(y.w, x.a, x.b) < std::tie(x.w, y.a, y.b);
    });
    std::vector<char> matched(g.num_nodes, 0);
    CompressionPlan plan;
    for (const WEdge& e : edges)
        if (!matched[e.a] && !matched[e.b]) {
            matched[e.a] = matched[e.b] = 1;
            plan.pairs.push_back({e.a, e.b});
        }
    return plan;
}

namespace {

// Critical ops end at the makespan or abut a critical successor on a shared
// unit with no slack; qubits are grouped by how they appear on that path.
std::vector<int> ec_qubit_groups(const ScheduledCircuit& sc, int num_qubits) {
    std::vector<int> group(num_qubits, 3);
    int n = int(sc.ops.size());
    if (n == 0)
        return group;
    std::vector<int64_t> starts(n);
    for (int i = 0; i < n; ++i)
        starts[i] = sc.ops[i].start_ns;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return sc.ops[a].start_ns + sc.ops[a].duration_ns >
               sc.ops[b].start_ns + sc.ops[b].duration_ns;
    });
    std::vector<char> crit(n, 0);
    for (int idx : order) {
        const PhysicalOp& op = sc.ops[idx];
        int64_t end = op.start_ns + op.duration_ns;
        if (end == sc.total_duration_ns) {
            crit[idx] = 1;
        } else {
            auto [u, v] = op_touched_units(op);
            auto lo = std::lower_bound(starts.begin(), starts.end(), end);
            auto hi = std::upper_bound(starts.begin(), starts.end(), end);
            for (auto it = lo; it != hi && !crit[idx]; ++it) {
                int j = int(it - starts.begin());
                if (!crit[j])
                    continue;
                auto [u2, v2] = op_touched_units(sc.ops[j]);
                if (u == u2 || u == v2 || (v != -1 && (v == u2 || v == v2)))
                    crit[idx] = 1;
            }
        }
        if (!crit[idx])
            continue;
        int grp = op.origin == OpOrigin::Program ? 1 : 2;
        for (int p : op.payload)
            if (p >= 0)
                group[p] = std::min(group[p], grp);
    }
    return group;
}

} // namespace

EcResult plan_ec(const Circuit& lowered, const InteractionGraph& ig,
                 const SlotGraph& sg, const GateLibrary& lib, CoherenceParams coh,
                 const EcOptions& opt) {
    EcResult res;
    ScheduledCircuit cur = compile_with_plan(lowered, ig, res.plan, sg, lib, coh,
                                             MapMode::PlanConstrained, false);
    double cur_total = evaluate(cur, lib, coh).total_eps;

    while (!res.truncated) {
        std::vector<int> group = opt.critical_path_ordered
                                     ? ec_qubit_groups(cur, lowered.num_qubits)
                                     : std::vector<int>(lowered.num_qubits, 1);
        std::vector<int> unpaired;
        for (int q = 0; q < lowered.num_qubits; ++q)
            if (res.plan.partner_of(q) == -1)
                unpaired.push_back(q);

        bool accepted = false;
        for (int grp = 1; grp <= 3 && !accepted && !res.truncated; ++grp) {
            double best_total = cur_total;
            CompressionPlan best_plan;
            ScheduledCircuit best_sched;
            for (size_t ii = 0; ii < unpaired.size() && !res.truncated; ++ii)
                for (size_t jj = ii + 1; jj < unpaired.size(); ++jj) {
                    int a = unpaired[ii];
                    int b = unpaired[jj];
                    if (std::min(group[a], group[b]) != grp)
                        continue;
                    if (res.recompiles >= opt.budget) {
                        res.truncated = true;
                        break;
                    }
                    CompressionPlan trial = res.plan;
                    trial.pairs.push_back({a, b});
                    ScheduledCircuit s = compile_with_plan(lowered, ig, trial, sg, lib,
                                                           coh, MapMode::PlanConstrained,
                                                           false);
                    ++res.recompiles;
                    double total = evaluate(s, lib, coh).total_eps;
                    if (total > best_total) {
                        best_total = total;
                        best_plan = std::move(trial);
                        best_sched = std::move(s);
                    }
                }
            if (best_total > cur_total) {
                res.plan = best_plan;
                cur = std::move(best_sched);
                cur_total = best_total;
                res.accepted_totals.push_back(cur_total);
                accepted = true;
            }
        }
        if (!accepted)
            break;
    }
    return res;
}

StrategyOutput run_strategy(Strategy s, const Circuit& c, const SlotGraph& sg,
                            const GateLibrary& lib, CoherenceParams coh,
                            const EcOptions& ec_opt) {
    Circuit lowered = lower_toffolis(c);
    InteractionGraph ig = interaction_graph(lowered);
    StrategyOutput out;
    out.strategy = s;
    MapMode mode = MapMode::PlanConstrained;
    bool fq = false;
    switch (s) {
    case Strategy::QubitOnly:
        mode = MapMode::QubitOnly;
        break;
    case Strategy::Eqm:
        mode = MapMode::Mixed;
        break;
    case Strategy::Fq:
        out.plan = plan_fq(ig, sg.num_units);
        fq = true;
        break;
    case Strategy::Rb:
        out.plan = plan_rb(ig);
        break;
    case Strategy::Awe: {
        AweResult r = plan_awe(ig);
        out.plan = std::move(r.plan);
        out.awe_trace = std::move(r.avg_trace);
        break;
    }
    case Strategy::Pp:
        out.plan = plan_pp(ig, sg, lib, coh);
        break;
    case Strategy::Ec: {
        EcResult r = plan_ec(lowered, ig, sg, lib, coh, ec_opt);
        out.plan = std::move(r.plan);
        out.ec_trace = std::move(r.accepted_totals);
        out.ec_truncated = r.truncated;
        break;
    }
    }
    out.plan.validate(lowered.num_qubits);
    out.schedule = compile_with_plan(lowered, ig, out.plan, sg, lib, coh, mode, fq);
    out.report = evaluate(out.schedule, lib, coh);
    return out;
}

} // namespace qqc
