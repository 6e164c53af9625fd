#include "qqc/verify.hpp"

#include "qqc/util.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qqc {

namespace {

std::array<Amp, 4> single_gate_matrix(GateKind k, double angle) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (k) {
    case GateKind::X:
        return {Amp(0), Amp(1), Amp(1), Amp(0)};
    case GateKind::H:
        return {Amp(s), Amp(s), Amp(s), Amp(-s)};
    case GateKind::Z:
        return {Amp(1), Amp(0), Amp(0), Amp(-1)};
    case GateKind::RZ:
        return {Amp(1), Amp(0), Amp(0), std::polar(1.0, angle)};
    default:
        fail("gate ", gate_name(k), " has no single-qubit matrix");
    }
}

/// Dense d x d matrix applied to one basis factor.
void apply_unit_mat(std::vector<Amp>& st, const UnitBasis& ub, int pos,
                    const Amp* mat, int d) {
    size_t s = ub.stride[pos];
    std::array<Amp, 4> tmp;
    for (size_t hi = 0; hi < st.size(); hi += s * d)
        for (size_t lo = 0; lo < s; ++lo) {
            size_t base = hi + lo;
            for (int r = 0; r < d; ++r) {
                Amp acc{};
                for (int c = 0; c < d; ++c)
                    acc += mat[r * d + c] * st[base + c * s];
                tmp[r] = acc;
            }
            for (int r = 0; r < d; ++r)
                st[base + r * s] = tmp[r];
        }
}

/// Joint permutation (la, lb) -> perm[la * db + lb] over two basis factors.
void apply_pair_perm(std::vector<Amp>& st, const UnitBasis& ub, int pa, int pb,
                     const std::array<int, 16>& perm) {
    std::vector<Amp> out(st.size());
    size_t sa = ub.stride[pa];
    size_t sb = ub.stride[pb];
    int da = ub.dim[pa];
    int db = ub.dim[pb];
    for (size_t i = 0; i < st.size(); ++i) {
        int la = ub.level_of(i, pa);
        int lb = ub.level_of(i, pb);
        int j = perm[la * db + lb];
        size_t ni = i + size_t(int64_t(j / db - la) * int64_t(sa)) +
                    size_t(int64_t(j % db - lb) * int64_t(sb));
        out[ni] = st[i];
    }
    st = std::move(out);
}

std::array<int, 16> identity_perm() {
    std::array<int, 16> p{};
    for (int i = 0; i < 16; ++i)
        p[i] = i;
    return p;
}

bool is_cx_kind(PhysKind k) {
    switch (k) {
    case PhysKind::CX2:
    case PhysKind::CX0q:
    case PhysKind::CX1q:
    case PhysKind::CXq0:
    case PhysKind::CXq1:
    case PhysKind::CX00:
    case PhysKind::CX01:
    case PhysKind::CX10:
    case PhysKind::CX11:
        return true;
    default:
        return false;
    }
}

bool is_swap_kind(PhysKind k) {
    switch (k) {
    case PhysKind::SWAP2:
    case PhysKind::SWAPq0:
    case PhysKind::SWAPq1:
    case PhysKind::SWAP00:
    case PhysKind::SWAP01:
    case PhysKind::SWAP11:
        return true;
    default:
        return false;
    }
}

void apply_physical_op(std::vector<Amp>& st, const UnitBasis& ub, const Mapping& m,
                       const PhysicalOp& op) {
    int ua = slot_unit(op.slots[0]);
    int ub2 = op.slots[1] == -1 ? -1 : slot_unit(op.slots[1]);
    int pa = ub.pos_of[ua];
    int pb = ub2 == -1 ? -1 : ub.pos_of[ub2];
    if (pa == -1 || (ub2 != -1 && ub2 != ua && pb == -1)) {
        // Only whole-unit moves may touch a unit that never holds state,
        // and then the mobile side is empty too, so nothing happens.
        if (op.kind == PhysKind::SWAP4)
            return;
        fail("operation ", phys_name(op.kind), " touches a stateless unit");
    }

    switch (op.kind) {
    case PhysKind::X: {
        auto u2 = single_gate_matrix(op.logical, op.angle);
        if (ub.dim[pa] == 2) {
            apply_unit_mat(st, ub, pa, u2.data(), 2);
        } else {
            std::array<Amp, 16> u4{};
            u4[2 * 4 + 2] = u4[3 * 4 + 3] = 1.0;
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    u4[r * 4 + c] = u2[r * 2 + c];
            apply_unit_mat(st, ub, pa, u4.data(), 4);
        }
        return;
    }
    case PhysKind::X0:
    case PhysKind::X1: {
        auto u2 = single_gate_matrix(op.logical, op.angle);
        std::array<Amp, 16> u4{};
        bool high = op.kind == PhysKind::X0;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                for (int o = 0; o < 2; ++o) {
                    int row = high ? 2 * r + o : 2 * o + r;
                    int col = high ? 2 * c + o : 2 * o + c;
                    u4[row * 4 + col] += u2[r * 2 + c];
                }
        apply_unit_mat(st, ub, pa, u4.data(), 4);
        return;
    }
    case PhysKind::X01: {
        auto m0 = single_gate_matrix(op.logical, op.angle);
        auto m1 = single_gate_matrix(op.logical2, op.angle2);
        std::array<Amp, 16> u4{};
        for (int r0 = 0; r0 < 2; ++r0)
            for (int r1 = 0; r1 < 2; ++r1)
                for (int c0 = 0; c0 < 2; ++c0)
                    for (int c1 = 0; c1 < 2; ++c1)
                        u4[(2 * r0 + r1) * 4 + (2 * c0 + c1)] =
                            m0[r0 * 2 + c0] * m1[r1 * 2 + c1];
        apply_unit_mat(st, ub, pa, u4.data(), 4);
        return;
    }
    case PhysKind::SWAPin: {
        std::array<Amp, 16> u4{};
        u4[0 * 4 + 0] = u4[1 * 4 + 2] = u4[2 * 4 + 1] = u4[3 * 4 + 3] = 1.0;
        apply_unit_mat(st, ub, pa, u4.data(), 4);
        return;
    }
    case PhysKind::CX0:
    case PhysKind::CX1: {
        std::array<Amp, 16> u4{};
        int ctrl_bit = op.kind == PhysKind::CX0 ? 2 : 1;
        int tgt_bit = op.kind == PhysKind::CX0 ? 1 : 2;
        for (int l = 0; l < 4; ++l) {
            int to = (l & ctrl_bit) ? l ^ tgt_bit : l;
            u4[to * 4 + l] = 1.0;
        }
        apply_unit_mat(st, ub, pa, u4.data(), 4);
        return;
    }
    case PhysKind::SWAP4: {
        std::array<int, 16> perm = identity_perm();
        int da = ub.dim[pa];
        int db = ub.dim[pb];
        for (int x = 0; x < da; ++x)
            for (int y = 0; y < db; ++y)
                if (y < da && x < db)
                    perm[x * db + y] = y * db + x;
        apply_pair_perm(st, ub, pa, pb, perm);
        return;
    }
    case PhysKind::ENC:
    case PhysKind::DEC: {
        int db = ub.dim[pb];
        if (ub.dim[pa] != 4)
            fail("encode target unit is never a ququart in this schedule");
        std::array<int, 16> enc = identity_perm();
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                enc[a * db + b] = (2 * a + b) * db + 0;
                enc[(a + 2) * db + b] = (2 * a + b) * db + 1;
            }
        if (op.kind == PhysKind::DEC) {
            std::array<int, 16> dec = identity_perm();
            for (int i = 0; i < 4 * db; ++i)
                dec[enc[i]] = i;
            apply_pair_perm(st, ub, pa, pb, dec);
        } else {
            apply_pair_perm(st, ub, pa, pb, enc);
        }
        return;
    }
    default:
        break;
    }

    // Cross-unit CX and SWAP families, built from the slot roles and the
    // occupancy at this point of the schedule.
    bool enc_a = m.occ.encoded(ua);
    bool enc_b = m.occ.encoded(ub2);
    int sa = slot_index(op.slots[0]);
    int sb = slot_index(op.slots[1]);
    int da = ub.dim[pa];
    int db = ub.dim[pb];

    if (is_cx_kind(op.kind)) {
        auto ctrl_set = [&](int l) { return enc_a ? bool(l & (sa == 0 ? 2 : 1)) : l == 1; };
        auto tgt_flip = [&](int l) {
            if (enc_b)
                return l ^ (sb == 0 ? 2 : 1);
            return l < 2 ? l ^ 1 : l;
        };
        std::array<int, 16> perm = identity_perm();
        for (int x = 0; x < da; ++x)
            for (int y = 0; y < db; ++y)
                if (ctrl_set(x))
                    perm[x * db + y] = x * db + tgt_flip(y);
        apply_pair_perm(st, ub, pa, pb, perm);
        return;
    }
    if (is_swap_kind(op.kind)) {
        auto get_bit = [](bool enc, int slot, int l) {
            if (enc)
                return slot == 0 ? l >> 1 : l & 1;
            return l < 2 ? l : -1;
        };
        auto put_bit = [](bool enc, int slot, int l, int b) {
            if (enc)
                return slot == 0 ? (l & 1) | (b << 1) : (l & 2) | b;
            return b;
        };
        std::array<int, 16> perm = identity_perm();
        for (int x = 0; x < da; ++x)
            for (int y = 0; y < db; ++y) {
                int bx = get_bit(enc_a, sa, x);
                int by = get_bit(enc_b, sb, y);
                if (bx == -1 || by == -1)
                    continue;
                perm[x * db + y] = put_bit(enc_a, sa, x, by) * db +
                                   put_bit(enc_b, sb, y, bx);
            }
        apply_pair_perm(st, ub, pa, pb, perm);
        return;
    }
    fail("unhandled physical kind ", phys_name(op.kind));
}

} // namespace

UnitBasis unit_basis(const ScheduledCircuit& sc) {
    std::vector<char> active(sc.num_units, 0);
    std::vector<char> enc(sc.num_units, 0);
    Mapping m = sc.initial;
    auto absorb = [&](int u) {
        active[u] |= m.occ.count[u] > 0;
        enc[u] |= m.occ.count[u] == 2;
    };
    for (int u = 0; u < sc.num_units; ++u)
        absorb(u);
    for (const PhysicalOp& op : sc.ops) {
        apply_op_to_mapping(m, op);
        auto [u, v] = op_touched_units(op);
        absorb(u);
        if (v != -1)
            absorb(v);
    }

    UnitBasis ub;
    ub.pos_of.assign(sc.num_units, -1);
    for (int u = 0; u < sc.num_units; ++u)
        if (active[u]) {
            ub.pos_of[u] = int(ub.units.size());
            ub.units.push_back(u);
            ub.dim.push_back(enc[u] ? 4 : 2);
        }
    ub.stride.assign(ub.units.size(), 1);
    for (int p = int(ub.units.size()) - 2; p >= 0; --p)
        ub.stride[p] = ub.stride[p + 1] * ub.dim[p + 1];
    for (int d : ub.dim)
        ub.total_dim *= size_t(d);
    return ub;
}

std::vector<Amp> run_logical(const Circuit& c, std::vector<Amp> state) {
    size_t dim = size_t(1) << c.num_qubits;
    if (state.size() != dim)
        fail("logical state has dimension ", state.size(), ", expected ", dim);
    for (const Gate& g : c.gates) {
        switch (g.kind) {
        case GateKind::X:
        case GateKind::H:
        case GateKind::Z:
        case GateKind::RZ: {
            auto u2 = single_gate_matrix(g.kind, g.angle);
            size_t bit = size_t(1) << g.q[0];
            for (size_t i = 0; i < dim; ++i)
                if (!(i & bit)) {
                    Amp a = state[i];
                    Amp b = state[i | bit];
                    state[i] = u2[0] * a + u2[1] * b;
                    state[i | bit] = u2[2] * a + u2[3] * b;
                }
            break;
        }
        case GateKind::CX: {
            size_t cb = size_t(1) << g.q[0];
            size_t tb = size_t(1) << g.q[1];
            for (size_t i = 0; i < dim; ++i)
                if ((i & cb) && !(i & tb))
                    std::swap(state[i], state[i | tb]);
            break;
        }
        case GateKind::SWAP: {
            size_t ab = size_t(1) << g.q[0];
            size_t bb = size_t(1) << g.q[1];
            for (size_t i = 0; i < dim; ++i)
                if ((i & ab) && !(i & bb))
                    std::swap(state[i], state[i ^ ab ^ bb]);
            break;
        }
        case GateKind::TOFFOLI: {
            size_t c0 = size_t(1) << g.q[0];
            size_t c1 = size_t(1) << g.q[1];
            size_t tb = size_t(1) << g.q[2];
            for (size_t i = 0; i < dim; ++i)
                if ((i & c0) && (i & c1) && !(i & tb))
                    std::swap(state[i], state[i | tb]);
            break;
        }
        }
    }
    return state;
}

std::vector<Amp> run_physical(const ScheduledCircuit& sc, const UnitBasis& ub,
                              std::vector<Amp> state) {
    if (state.size() != ub.total_dim)
        fail("physical state has dimension ", state.size(), ", expected ", ub.total_dim);
    Mapping m = sc.initial;
    for (const PhysicalOp& op : sc.ops) {
        apply_physical_op(state, ub, m, op);
        apply_op_to_mapping(m, op);
    }
    return state;
}

EquivalenceResult check_equivalence(const Circuit& logical, const ScheduledCircuit& sc,
                                    uint64_t seed, int basis_trials) {
    if (logical.num_qubits > 12)
        fail("circuits beyond 12 qubits are too large to verify");
    UnitBasis ub = unit_basis(sc);
    if (ub.total_dim > 4096)
        fail("physical state space of ", ub.total_dim, " is too large to verify");

    size_t ldim = size_t(1) << logical.num_qubits;
    Rng rng(seed);
    EquivalenceResult res;
    res.ok = true;

    auto logical_init = [&](const std::vector<std::array<Amp, 2>>& qa) {
        std::vector<Amp> st(ldim);
        for (size_t i = 0; i < ldim; ++i) {
            Amp a = 1.0;
            for (int q = 0; q < logical.num_qubits; ++q)
                a *= qa[q][(i >> q) & 1];
            st[i] = a;
        }
        return st;
    };
    auto physical_init = [&](const std::vector<std::array<Amp, 2>>& qa) {
        std::vector<std::array<Amp, 4>> f(ub.units.size());
        for (size_t p = 0; p < ub.units.size(); ++p) {
            int u = ub.units[p];
            f[p] = {Amp(0), Amp(0), Amp(0), Amp(0)};
            int cnt = sc.initial.occ.count[u];
            if (cnt == 0) {
                f[p][0] = 1.0;
            } else if (cnt == 1) {
                int q = sc.initial.occupant[u][0];
                f[p][0] = qa[q][0];
                f[p][1] = qa[q][1];
            } else {
                int q0 = sc.initial.occupant[u][0];
                int q1 = sc.initial.occupant[u][1];
                for (int s0 = 0; s0 < 2; ++s0)
                    for (int s1 = 0; s1 < 2; ++s1)
                        f[p][2 * s0 + s1] = qa[q0][s0] * qa[q1][s1];
            }
        }
        std::vector<Amp> st(ub.total_dim);
        for (size_t i = 0; i < ub.total_dim; ++i) {
            Amp a = 1.0;
            for (size_t p = 0; p < ub.units.size(); ++p)
                a *= f[p][ub.level_of(i, int(p))];
            st[i] = a;
        }
        return st;
    };
    auto expected_phys = [&](const std::vector<Amp>& psi) {
        std::vector<Amp> exp_st(ub.total_dim, Amp(0));
        const Mapping& fm = sc.final_map;
        for (size_t L = 0; L < ldim; ++L) {
            size_t idx = 0;
            for (size_t p = 0; p < ub.units.size(); ++p) {
                int u = ub.units[p];
                int lvl = 0;
                if (fm.occ.count[u] == 1) {
                    lvl = int((L >> fm.occupant[u][0]) & 1);
                } else if (fm.occ.count[u] == 2) {
                    lvl = 2 * int((L >> fm.occupant[u][0]) & 1) +
                          int((L >> fm.occupant[u][1]) & 1);
                }
                idx += size_t(lvl) * ub.stride[p];
            }
            exp_st[idx] += psi[L];
        }
        return exp_st;
    };

    auto run_trial = [&](const std::vector<std::array<Amp, 2>>& qa, int trial) {
        std::vector<Amp> expect = expected_phys(run_logical(logical, logical_init(qa)));
        std::vector<Amp> phys = run_physical(sc, ub, physical_init(qa));
        double norm = 0.0;
        for (const Amp& a : phys)
            norm += std::norm(a);
        if (std::abs(norm - 1.0) > 1e-12) {
            res.ok = false;
            if (res.detail.empty())
                res.detail = "physical state norm drifted to " +
                             std::to_string(norm) + " on trial " + std::to_string(trial);
        }
        size_t ref = 0;
        while (ref < ub.total_dim && std::abs(expect[ref]) <= 1e-12)
            ++ref;
        if (ref == ub.total_dim)
            fail("expected state vanished");
        Amp lambda = phys[ref] / expect[ref];
        double dev = 0.0;
        for (size_t i = 0; i < ub.total_dim; ++i)
            dev = std::max(dev, std::abs(phys[i] - lambda * expect[i]));
        res.max_deviation = std::max(res.max_deviation, dev);
        if (dev >= 1e-9) {
            res.ok = false;
            if (res.detail.empty())
                res.detail = "deviation " + std::to_string(dev) + " on trial " +
                             std::to_string(trial);
        }
    };

    std::vector<std::array<Amp, 2>> qa(logical.num_qubits);
    for (int t = 0; t < basis_trials; ++t) {
        for (auto& amps : qa) {
            uint64_t bit = rng.below(2);
            amps = {Amp(bit == 0 ? 1.0 : 0.0), Amp(bit == 1 ? 1.0 : 0.0)};
        }
        run_trial(qa, t);
    }
    for (int t = 0; t < 2; ++t) {
        for (auto& amps : qa) {
            Amp a(rng.real() * 2.0 - 1.0, rng.real() * 2.0 - 1.0);
            Amp b(rng.real() * 2.0 - 1.0, rng.real() * 2.0 - 1.0);
            double n = std::sqrt(std::norm(a) + std::norm(b));
            if (n < 1e-6) {
                a = 1.0;
                b = 0.0;
                n = 1.0;
            }
            amps = {a / n, b / n};
        }
        run_trial(qa, basis_trials + t);
    }
    return res;
}

} // namespace qqc
