#include "qqc/arch.hpp"

#include "qqc/util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace qqc {

bool PhysicalTopology::adjacent(int u, int v) const {
    const auto& a = adj[u];
    return std::binary_search(a.begin(), a.end(), v);
}

PhysicalTopology make_topology(const std::vector<std::pair<int, int>>& links, int n) {
    if (n <= 0)
        fail("topology needs at least one unit");
    PhysicalTopology t;
    t.num_units = n;
    for (auto [u, v] : links) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            fail("link ", u, "-", v, " out of range (units ", n, ")");
        if (u == v)
            fail("self link on unit ", u);
        t.links.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(t.links.begin(), t.links.end());
    t.links.erase(std::unique(t.links.begin(), t.links.end()), t.links.end());
    t.adj.assign(n, {});
    for (auto [u, v] : t.links) {
        t.adj[u].push_back(v);
        t.adj[v].push_back(u);
    }
    for (auto& a : t.adj)
        std::sort(a.begin(), a.end());
    // connectivity
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : t.adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                q.push(v);
            }
    }
    if (reached != n)
        fail("topology is not connected (", reached, " of ", n, " units reachable)");
    return t;
}

PhysicalTopology build_grid(int n) {
    if (n <= 0)
        fail("grid needs at least one unit");
    int cols = int(std::ceil(std::sqrt(double(n))));
    std::vector<std::pair<int, int>> links;
    for (int id = 0; id < n; ++id) {
        int c = id % cols;
        if (c + 1 < cols && id + 1 < n && (id + 1) % cols != 0)
            links.emplace_back(id, id + 1);
        if (id + cols < n)
            links.emplace_back(id, id + cols);
    }
    return make_topology(links, n);
}

PhysicalTopology build_ring(int n) {
    if (n <= 0)
        fail("ring needs at least one unit");
    std::vector<std::pair<int, int>> links;
    for (int i = 0; i + 1 < n; ++i)
        links.emplace_back(i, i + 1);
    if (n >= 3)
        links.emplace_back(0, n - 1);
    return make_topology(links, n);
}

PhysicalTopology build_heavy_hex() {
    // IBM 65-qubit heavy-hexagon coupling map (Hummingbird family).
    static const int edges[][2] = {
        {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 9},
        {0, 10}, {4, 11}, {8, 12},
        {10, 13}, {11, 17}, {12, 21},
        {13, 14}, {14, 15}, {15, 16}, {16, 17}, {17, 18}, {18, 19}, {19, 20},
        {20, 21}, {21, 22}, {22, 23},
        {15, 24}, {19, 25}, {23, 26},
        {24, 29}, {25, 33}, {26, 37},
        {27, 28}, {28, 29}, {29, 30}, {30, 31}, {31, 32}, {32, 33}, {33, 34},
        {34, 35}, {35, 36}, {36, 37},
        {27, 38}, {31, 39}, {35, 40},
        {38, 41}, {39, 45}, {40, 49},
        {41, 42}, {42, 43}, {43, 44}, {44, 45}, {45, 46}, {46, 47}, {47, 48},
        {48, 49}, {49, 50}, {50, 51},
        {43, 52}, {47, 53}, {51, 54},
        {52, 56}, {53, 60}, {54, 64},
        {55, 56}, {56, 57}, {57, 58}, {58, 59}, {59, 60}, {60, 61}, {61, 62},
        {62, 63}, {63, 64},
    };
    std::vector<std::pair<int, int>> links;
    for (const auto& e : edges)
        links.emplace_back(e[0], e[1]);
    return make_topology(links, 65);
}

PhysicalTopology parse_topology(const std::string& text) {
    std::istringstream is(text);
    std::string raw;
    int line = 0, n = -1;
    std::vector<std::pair<int, int>> links;
    while (std::getline(is, raw)) {
        ++line;
        auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.resize(hash);
        auto toks = split_ws(raw);
        if (toks.empty())
            continue;
        if (n < 0) {
            if (toks[0] != "units" || toks.size() != 2)
                fail("line ", line, ": expected 'units <N>' header");
            n = std::stoi(toks[1]);
            continue;
        }
        if (toks[0] != "link" || toks.size() != 3)
            fail("line ", line, ": expected 'link <u> <v>'");
        links.emplace_back(std::stoi(toks[1]), std::stoi(toks[2]));
    }
    if (n < 0)
        fail("missing 'units <N>' header");
    return make_topology(links, n);
}

std::vector<std::vector<int>> unit_distances(const PhysicalTopology& t) {
    int n = t.num_units;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; ++s) {
        d[s][s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : t.adj[u])
                if (d[s][v] < 0) {
                    d[s][v] = d[s][u] + 1;
                    q.push(v);
                }
        }
    }
    return d;
}

int SlotGraph::num_edges() const {
    size_t deg = 0;
    for (const auto& a : adj)
        deg += a.size();
    return int(deg / 2);
}

SlotGraph expand_slot_graph(PhysicalTopology t) {
    SlotGraph g;
    g.num_units = t.num_units;
    g.adj.assign(g.num_slots(), {});
    for (int u = 0; u < t.num_units; ++u) {
        g.adj[make_slot(u, 0)].push_back(make_slot(u, 1));
        g.adj[make_slot(u, 1)].push_back(make_slot(u, 0));
    }
    for (auto [u, v] : t.links)
        for (int su = 0; su < 2; ++su)
            for (int sv = 0; sv < 2; ++sv) {
                g.adj[make_slot(u, su)].push_back(make_slot(v, sv));
                g.adj[make_slot(v, sv)].push_back(make_slot(u, su));
            }
    for (auto& a : g.adj)
        std::sort(a.begin(), a.end());
    g.topo = std::move(t);
    return g;
}

PhysKind classify_cx(const Occupancy& occ, SlotId control, SlotId target) {
    int cu = slot_unit(control), tu = slot_unit(target);
    int cs = slot_index(control), ts = slot_index(target);
    if (control == target)
        fail("CX needs two distinct slots");
    if (cu == tu) {
        if (!occ.encoded(cu))
            fail("internal CX on unit ", cu, " which is not encoded");
        return cs == 0 ? PhysKind::CX0 : PhysKind::CX1;
    }
    bool ce = occ.encoded(cu), te = occ.encoded(tu);
    if (ce && te)
        return cs == 0 ? (ts == 0 ? PhysKind::CX00 : PhysKind::CX01)
                       : (ts == 0 ? PhysKind::CX10 : PhysKind::CX11);
    if (ce)
        return cs == 0 ? PhysKind::CX0q : PhysKind::CX1q;
    if (te)
        return ts == 0 ? PhysKind::CXq0 : PhysKind::CXq1;
    return PhysKind::CX2;
}

PhysKind classify_swap(const Occupancy& occ, SlotId a, SlotId b) {
    int ua = slot_unit(a), ub = slot_unit(b);
    if (a == b)
        fail("SWAP needs two distinct slots");
    if (ua == ub) {
        if (!occ.encoded(ua))
            fail("internal SWAP on unit ", ua, " which is not encoded");
        return PhysKind::SWAPin;
    }
    bool ae = occ.encoded(ua), be = occ.encoded(ub);
    if (ae && be) {
        int sa = slot_index(a), sb = slot_index(b);
        if (sa == 0 && sb == 0)
            return PhysKind::SWAP00;
        if (sa == 1 && sb == 1)
            return PhysKind::SWAP11;
        return PhysKind::SWAP01;
    }
    if (ae || be) {
        int es = ae ? slot_index(a) : slot_index(b);
        if (occ.count[ae ? ub : ua] == 0) {
            if (es == 0)
                fail("no native gate splits the slot-0 member of unit ",
                     ae ? ua : ub, " into an empty unit");
            return PhysKind::DEC;
        }
        return es == 0 ? PhysKind::SWAPq0 : PhysKind::SWAPq1;
    }
    return PhysKind::SWAP2;
}

DistanceOracle::DistanceOracle(const SlotGraph& sg, const GateLibrary& lib,
                               CoherenceParams coh)
    : sg_(sg), lib_(lib), coh_(coh) {
    cache_.resize(sg.num_slots());
    cached_.assign(sg.num_slots(), 0);
}

double DistanceOracle::swap_cost(const Occupancy& occ, SlotId a, SlotId b) const {
    int ua = slot_unit(a), ub = slot_unit(b);
    PhysKind k;
    if (ua != ub && occ.count[ua] == 0)
        // The walked qubit occupies a by the time the hop runs, so an empty
        // snapshot unit exchanges as a singly occupied bare one.
        k = occ.encoded(ub)
                ? (slot_index(b) == 0 ? PhysKind::SWAPq0 : PhysKind::SWAPq1)
                : PhysKind::SWAP2;
    else
        k = classify_swap(occ, a, b);
    const GateSpec& s = lib_.spec(k);
    return -std::log(gate_success(s, occ.radix(ua), occ.radix(ub), coh_));
}

double DistanceOracle::cx_cost(const Occupancy& occ, SlotId control, SlotId target) const {
    PhysKind k = classify_cx(occ, control, target);
    const GateSpec& s = lib_.spec(k);
    return -std::log(
        gate_success(s, occ.radix(slot_unit(control)), occ.radix(slot_unit(target)), coh_));
}

namespace {
// A hop may land on any occupied slot or on the first slot of an empty unit;
// entering the free second slot of a singly occupied unit would create a new
// encoding, which routing never does.
bool enterable(const Occupancy& occ, SlotId s) {
    return slot_index(s) == 0 || occ.count[slot_unit(s)] == 2;
}
} // namespace

bool hop_allowed(const Occupancy& occ, SlotId x, SlotId y) {
    if (!enterable(occ, y))
        return false;
    int ux = slot_unit(x), uy = slot_unit(y);
    return ux == uy ||
           !(occ.count[ux] == 2 && occ.count[uy] == 0 && slot_index(x) == 0);
}

void DistanceOracle::swap_dists_into(const Occupancy& occ, SlotId a,
                                     std::vector<double>& out) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    out.assign(sg_.num_slots(), inf);
    out[a] = 0.0;
    using Item = std::pair<double, SlotId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.emplace(0.0, a);
    while (!pq.empty()) {
        auto [d, x] = pq.top();
        pq.pop();
        if (d > out[x])
            continue;
        for (SlotId y : sg_.adj[x]) {
            if (!hop_allowed(occ, x, y))
                continue;
            double nd = d + swap_cost(occ, x, y);
            if (nd < out[y]) {
                out[y] = nd;
                pq.emplace(nd, y);
            }
        }
    }
}

double DistanceOracle::complete(const Occupancy& occ, const std::vector<double>& dswap,
                                SlotId a, SlotId b) const {
    if (a == b)
        return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (SlotId x : sg_.adj[b]) {
        if (x != a && !enterable(occ, x))
            continue;
        if (dswap[x] == std::numeric_limits<double>::infinity())
            continue;
        best = std::min(best, dswap[x] + cx_cost(occ, x, b));
    }
    if (best == std::numeric_limits<double>::infinity())
        fail("slot ", b, " unreachable from slot ", a);
    return best;
}

const std::vector<double>& DistanceOracle::swap_dists_from(const Occupancy& occ, SlotId a) {
    if (!cached_[a]) {
        swap_dists_into(occ, a, cache_[a]);
        cached_[a] = 1;
    }
    return cache_[a];
}

double DistanceOracle::distance(const Occupancy& occ, SlotId a, SlotId b) {
    return complete(occ, swap_dists_from(occ, a), a, b);
}

double DistanceOracle::distance_with(const Occupancy& occ, SlotId a, SlotId b) const {
    std::vector<double> dswap;
    swap_dists_into(occ, a, dswap);
    return complete(occ, dswap, a, b);
}

void DistanceOracle::invalidate() {
    std::fill(cached_.begin(), cached_.end(), 0);
}

} // namespace qqc
