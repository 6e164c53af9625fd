#include "doctest.h"

#include "qqc/benchmarks.hpp"
#include "qqc/compress.hpp"
#include "qqc/eval.hpp"
#include "qqc/util.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

using namespace qqc;

namespace {

GateLibrary lib;

InteractionGraph make_graph(int n,
                            const std::vector<std::tuple<int, int, double>>& edges) {
    InteractionGraph g;
    g.num_nodes = n;
    g.adj.resize(n);
    g.busy_layers.resize(n);
    g.members.resize(n);
    g.merged.assign(n, 0);
    for (int i = 0; i < n; ++i)
        g.members[i] = {i};
    for (auto [a, b, w] : edges) {
        g.adj[a][b] = w;
        g.adj[b][a] = w;
    }
    return g;
}

// Exhaustive DFS over simple cycles through v; returns the least vertex
// count, or INT_MAX when v lies on no cycle.
int shortest_cycle_by_dfs(const InteractionGraph& g, int v) {
    int best = INT_MAX;
    std::vector<char> used(g.num_nodes, 0);
    std::function<void(int, int)> walk = [&](int u, int depth) {
        used[u] = 1;
        for (const auto& [n, w] : g.adj[u]) {
            if (w <= 0 || !g.alive(n))
                continue;
            if (n == v && depth >= 3)
                best = std::min(best, depth);
            else if (!used[n])
                walk(n, depth + 1);
        }
        used[u] = 0;
    };
    if (g.alive(v))
        walk(v, 1);
    return best;
}

bool is_cycle_through(const InteractionGraph& g, int v, const std::vector<int>& cyc) {
    if (cyc.size() < 3)
        return false;
    if (std::find(cyc.begin(), cyc.end(), v) == cyc.end())
        return false;
    std::set<int> uniq(cyc.begin(), cyc.end());
    if (uniq.size() != cyc.size())
        return false;
    for (size_t i = 0; i < cyc.size(); ++i) {
        auto it = g.adj[cyc[i]].find(cyc[(i + 1) % cyc.size()]);
        if (it == g.adj[cyc[i]].end() || it->second <= 0)
            return false;
    }
    return true;
}

std::pair<double, int> edge_stats(const InteractionGraph& g) {
    double sum = 0.0;
    int edges = 0;
    for (int i = 0; i < g.num_nodes; ++i) {
        if (!g.alive(i))
            continue;
        for (const auto& [n, w] : g.adj[i])
            if (n > i && g.alive(n)) {
                sum += w;
                ++edges;
            }
    }
    return {sum, edges};
}

// Average edge weight after merging (a, b), recomputed structurally on a
// copy, or nullopt when the merge would leave no edges at all.
std::optional<double> avg_after_merge(InteractionGraph g, int a, int b) {
    collapse_pair(g, a, b);
    auto [sum, edges] = edge_stats(g);
    if (edges == 0)
        return std::nullopt;
    return sum / edges;
}

bool contains_pair(const CompressionPlan& p, int a, int b) {
    return std::find(p.pairs.begin(), p.pairs.end(), std::pair{a, b}) !=
           p.pairs.end();
}

} // namespace

TEST_CASE("shortest cycles match exhaustive search") {
    // Triangle 0-1-2, square 0-3-4-5, tail 2-6.
    InteractionGraph g = make_graph(7, {{0, 1, 1.0},
                                        {1, 2, 1.0},
                                        {2, 0, 1.0},
                                        {0, 3, 1.0},
                                        {3, 4, 1.0},
                                        {4, 5, 1.0},
                                        {5, 0, 1.0},
                                        {2, 6, 1.0}});
    for (int v = 0; v < 7; ++v) {
        std::vector<int> cyc = min_cycle_through(g, v);
        int want = shortest_cycle_by_dfs(g, v);
        if (want == INT_MAX) {
            CHECK(cyc.empty());
        } else {
            REQUIRE(!cyc.empty());
            CHECK(int(cyc.size()) == want);
            CHECK(is_cycle_through(g, v, cyc));
        }
    }
}

TEST_CASE("acyclic and zero-weight graphs have no cycles") {
    InteractionGraph path = make_graph(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
    for (int v = 0; v < 4; ++v)
        CHECK(min_cycle_through(path, v).empty());

    InteractionGraph cut =
        make_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 0.0}});
    for (int v = 0; v < 3; ++v)
        CHECK(min_cycle_through(cut, v).empty());
}

TEST_CASE("cycle search on a random interaction graph") {
    Circuit c = gen_qaoa(gen_random_graph(8, 0.4, 11), 5);
    InteractionGraph g = interaction_graph(c);
    for (int v = 0; v < g.num_nodes; ++v) {
        std::vector<int> cyc = min_cycle_through(g, v);
        int want = shortest_cycle_by_dfs(g, v);
        if (want == INT_MAX)
            CHECK(cyc.empty());
        else
            CHECK(int(cyc.size()) == want);
    }
}

TEST_CASE("collapsing a pair unions weights, layers, and members") {
    InteractionGraph g = make_graph(
        4, {{0, 1, 1.5}, {1, 2, 2.5}, {0, 2, 0.75}, {2, 3, 0.25}});
    g.edge_layers[{0, 1}] = {1};
    g.edge_layers[{1, 2}] = {2, 5};
    g.edge_layers[{0, 2}] = {3};
    g.edge_layers[{2, 3}] = {4};
    g.busy_layers = {{1, 3}, {1, 2, 5}, {2, 3, 4, 5}, {4}};

    collapse_pair(g, 1, 2);

    CHECK(g.adj[1].at(0) == 1.5 + 0.75);
    CHECK(g.adj[0].at(1) == 1.5 + 0.75);
    CHECK(g.adj[1].at(3) == 0.25);
    CHECK(g.adj[3].at(1) == 0.25);
    CHECK(g.adj[1].count(2) == 0);
    CHECK(g.adj[0].count(2) == 0);
    CHECK(g.adj[2].empty());
    CHECK(g.edge_layers.count({1, 2}) == 0);
    CHECK(g.edge_layers.count({0, 2}) == 0);
    CHECK(g.edge_layers.at({0, 1}) == std::vector<int>{1, 3});
    CHECK(g.edge_layers.at({1, 3}) == std::vector<int>{4});
    CHECK(g.busy_layers[1] == std::vector<int>{1, 2, 3, 4, 5});
    CHECK(g.members[1] == std::vector<int>{1, 2});
    CHECK(g.members[2].empty());
    CHECK(!g.alive(2));
    CHECK(g.merged[1] == 1);

    CHECK_THROWS_AS(collapse_pair(g, 1, 1), Error);
    CHECK_THROWS_AS(collapse_pair(g, 2, 3), Error); // 2 is gone
    CHECK_THROWS_AS(collapse_pair(g, 0, 1), Error); // 1 already holds two
}

TEST_CASE("bundling merges the lone triangle once") {
    InteractionGraph g =
        make_graph(3, {{0, 1, 3.0}, {1, 2, 2.0}, {0, 2, 1.0}});
    CompressionPlan plan = plan_rb(g);
    REQUIRE(plan.pairs.size() == 1);
    CHECK(plan.pairs[0] == std::pair{0, 1});
}

TEST_CASE("bundling finds nothing in a star interaction graph") {
    Circuit c = gen_bv(10);
    CompressionPlan plan = plan_rb(interaction_graph(lower_toffolis(c)));
    CHECK(plan.pairs.empty());
}

TEST_CASE("bundling pairs the control ladder of a wide controlled-not") {
    Circuit c = lower_toffolis(gen_cnu(8));
    InteractionGraph g = interaction_graph(c);
    CompressionPlan plan = plan_rb(g);
    plan.validate(c.num_qubits);
    CHECK(contains_pair(plan, 0, 1));
    CHECK(contains_pair(plan, 2, 6));
    CHECK(contains_pair(plan, 3, 4));
    CHECK(plan_rb(g).pairs == plan.pairs);
}

TEST_CASE("bundling on an adder is valid and deterministic") {
    Circuit c = lower_toffolis(gen_cuccaro(9));
    InteractionGraph g = interaction_graph(c);
    CompressionPlan plan = plan_rb(g);
    plan.validate(c.num_qubits);
    CHECK(!plan.pairs.empty());
    CHECK(plan_rb(g).pairs == plan.pairs);
}

TEST_CASE("average-weight elevation picks a stepwise optimum") {
    Circuit c = gen_qaoa(gen_random_graph(8, 0.5, 7), 3);
    InteractionGraph g = interaction_graph(c);
    AweResult res = plan_awe(g);
    REQUIRE(res.plan.pairs.size() == res.avg_trace.size());

    InteractionGraph cur = g;
    for (size_t step = 0; step < res.plan.pairs.size(); ++step) {
        auto [sum, edges] = edge_stats(cur);
        REQUIRE(edges > 0);
        double avg = sum / edges;

        double best = -1.0;
        for (int a = 0; a < cur.num_nodes; ++a) {
            if (!cur.alive(a) || cur.merged[a])
                continue;
            for (int b = a + 1; b < cur.num_nodes; ++b) {
                if (!cur.alive(b) || cur.merged[b])
                    continue;
                auto next = avg_after_merge(cur, a, b);
                if (next)
                    best = std::max(best, *next);
            }
        }

        auto [a, b] = res.plan.pairs[step];
        auto got = avg_after_merge(cur, a, b);
        REQUIRE(got.has_value());
        CHECK(*got > avg);
        CHECK(*got == doctest::Approx(best).epsilon(1e-12));
        CHECK(res.avg_trace[step] == doctest::Approx(*got).epsilon(1e-12));
        if (step > 0)
            CHECK(res.avg_trace[step] > res.avg_trace[step - 1]);
        collapse_pair(cur, a, b);
    }

    // Terminal state: no remaining merge raises the average.
    auto [sum, edges] = edge_stats(cur);
    if (edges > 0) {
        double avg = sum / edges;
        for (int a = 0; a < cur.num_nodes; ++a) {
            if (!cur.alive(a) || cur.merged[a])
                continue;
            for (int b = a + 1; b < cur.num_nodes; ++b) {
                if (!cur.alive(b) || cur.merged[b])
                    continue;
                auto next = avg_after_merge(cur, a, b);
                if (next)
                    CHECK(*next <= avg + avg * 1e-12);
            }
        }
    }
}

TEST_CASE("full-encoding matching is heaviest-first and maximal") {
    Circuit c;
    c.num_qubits = 4;
    c.add(GateKind::CX, {0, 1});
    c.add(GateKind::CX, {1, 2});
    c.add(GateKind::CX, {1, 2});
    c.add(GateKind::CX, {2, 3});
    InteractionGraph g = interaction_graph(c);
    CompressionPlan plan = plan_fq(g, 4);
    REQUIRE(plan.pairs.size() == 2);
    CHECK(plan.pairs[0] == std::pair{0, 1});
    CHECK(plan.pairs[1] == std::pair{2, 3});

    CHECK_THROWS_AS(plan_fq(g, 3), Error);

    Circuit chain;
    chain.num_qubits = 3;
    chain.add(GateKind::CX, {0, 1});
    chain.add(GateKind::CX, {1, 2});
    CompressionPlan odd = plan_fq(interaction_graph(chain), 3);
    REQUIRE(odd.pairs.size() == 1);
    CHECK(odd.pairs[0] == std::pair{0, 1});

    InteractionGraph zero = make_graph(2, {{0, 1, 0.0}});
    CHECK(plan_fq(zero, 2).pairs.empty());
}

TEST_CASE("paired placement stays valid and deterministic") {
    Circuit c = gen_qaoa(gen_random_graph(9, 0.4, 5), 2);
    InteractionGraph g = interaction_graph(c);
    SlotGraph sg = expand_slot_graph(build_grid(9));
    CoherenceParams coh = CoherenceParams::defaults();
    CompressionPlan plan = plan_pp(g, sg, lib, coh);
    plan.validate(9);
    CHECK(plan_pp(g, sg, lib, coh).pairs == plan.pairs);

    Circuit lonely;
    lonely.num_qubits = 3;
    lonely.add(GateKind::X, {0});
    lonely.add(GateKind::X, {1});
    CHECK(plan_pp(interaction_graph(lonely), sg, lib, coh).pairs.empty());
}

TEST_CASE("exhaustive search accepts only strict improvements") {
    Circuit c = lower_toffolis(gen_cuccaro(5));
    InteractionGraph g = interaction_graph(c);
    SlotGraph sg = expand_slot_graph(build_grid(5));
    CoherenceParams coh = CoherenceParams::defaults();

    EcResult res = plan_ec(c, g, sg, lib, coh);
    CHECK(!res.truncated);
    CHECK(res.recompiles <= EcOptions{}.budget);
    CHECK(res.accepted_totals.size() == res.plan.pairs.size());

    ScheduledCircuit base = compile_with_plan(c, g, CompressionPlan{}, sg, lib,
                                              coh, MapMode::PlanConstrained, false);
    double prev = evaluate(base, lib, coh).total_eps;
    for (double t : res.accepted_totals) {
        CHECK(t > prev);
        prev = t;
    }
    if (!res.accepted_totals.empty()) {
        ScheduledCircuit fin = compile_with_plan(c, g, res.plan, sg, lib, coh,
                                                 MapMode::PlanConstrained, false);
        CHECK(evaluate(fin, lib, coh).total_eps == res.accepted_totals.back());
    }
}

TEST_CASE("exhaustive search respects its recompile budget") {
    Circuit c = lower_toffolis(gen_cuccaro(5));
    InteractionGraph g = interaction_graph(c);
    SlotGraph sg = expand_slot_graph(build_grid(5));
    CoherenceParams coh = CoherenceParams::defaults();

    EcOptions none;
    none.budget = 0;
    EcResult empty = plan_ec(c, g, sg, lib, coh, none);
    CHECK(empty.truncated);
    CHECK(empty.recompiles == 0);
    CHECK(empty.plan.pairs.empty());
    CHECK(empty.accepted_totals.empty());

    EcOptions tight;
    tight.budget = 3;
    EcResult small = plan_ec(c, g, sg, lib, coh, tight);
    CHECK(small.truncated);
    CHECK(small.recompiles <= 3);
}

TEST_CASE("strategy names round trip") {
    for (Strategy s : {Strategy::QubitOnly, Strategy::Fq, Strategy::Ec, Strategy::Eqm,
                       Strategy::Rb, Strategy::Awe, Strategy::Pp})
        CHECK(strategy_from_name(strategy_name(s)) == s);
    CHECK_THROWS_AS(strategy_from_name("sabre"), Error);
}

TEST_CASE("the qubit-only strategy never encodes anything") {
    Circuit c = gen_cuccaro(7);
    SlotGraph sg = expand_slot_graph(build_grid(7));
    StrategyOutput so = run_strategy(Strategy::QubitOnly, c, sg, lib,
                                     CoherenceParams::defaults());
    CHECK(so.plan.pairs.empty());
    const GateCounts& k = so.report.counts;
    CHECK(k.single_qubit + k.cx2 + k.swap2 == k.total());
    for (int u = 0; u < sg.num_units; ++u)
        CHECK(so.schedule.encoded_ns[u] == 0);
}

TEST_CASE("the full-encoding strategy keeps cross-unit gates bare") {
    Circuit c = gen_cuccaro(8);
    SlotGraph sg = expand_slot_graph(build_grid(8));
    StrategyOutput so = run_strategy(Strategy::Fq, c, sg, lib,
                                     CoherenceParams::defaults());
    // The matching is maximal: pairs are disjoint, each pair interacts, and
    // no two unmatched qubits share a positive-weight edge.
    REQUIRE(!so.plan.pairs.empty());
    InteractionGraph g = interaction_graph(lower_toffolis(c));
    std::vector<char> matched(g.num_nodes, 0);
    for (auto [a, b] : so.plan.pairs) {
        CHECK(g.adj[a][b] > 0.0);
        CHECK(!matched[a]);
        CHECK(!matched[b]);
        matched[a] = matched[b] = 1;
    }
    for (int a = 0; a < g.num_nodes; ++a)
        for (int b = a + 1; b < g.num_nodes; ++b)
            if (g.adj[a][b] > 0.0)
                CHECK((matched[a] || matched[b]));
    const GateCounts& k = so.report.counts;
    CHECK(k.partial_cx_qubit_ququart == 0);
    CHECK(k.partial_cx_ququart_ququart == 0);
    CHECK(k.partial_swap == 0);
    CHECK(k.swap2 == 0);
    CHECK(k.enc_dec > 0);
    CHECK(k.enc_dec % 2 == 0);
}

TEST_CASE("strategy outputs carry their planner traces") {
    Circuit c = gen_benchmark(BenchmarkKind::QaoaRandom, 10, 4);
    SlotGraph sg = expand_slot_graph(build_grid(10));
    CoherenceParams coh = CoherenceParams::defaults();

    StrategyOutput eqm = run_strategy(Strategy::Eqm, c, sg, lib, coh);
    CHECK(eqm.plan.pairs.empty());

    StrategyOutput awe = run_strategy(Strategy::Awe, c, sg, lib, coh);
    CHECK(awe.awe_trace.size() == awe.plan.pairs.size());

    EcOptions opt;
    opt.budget = 120;
    StrategyOutput ec = run_strategy(Strategy::Ec, gen_cuccaro(5),
                                     expand_slot_graph(build_grid(5)), lib, coh, opt);
    CHECK(ec.ec_trace.size() == ec.plan.pairs.size());
}
