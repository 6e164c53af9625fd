#include "qqc/gateset.hpp"

#include "qqc/util.hpp"

#include <cmath>
#include <sstream>

namespace qqc {

namespace {

struct KindRow {
    PhysKind kind;
    const char* name;
    int64_t duration_ns;
    double fidelity;
    int units;
};

constexpr double F1 = 0.999;
constexpr double F2 = 0.99;

const KindRow kTable[] = {
    {PhysKind::X,      "x",       35, F1, 1},
    {PhysKind::X0,     "x0",      87, F1, 1},
    {PhysKind::X1,     "x1",      66, F1, 1},
    {PhysKind::X01,    "x01",     86, F1, 1},
    {PhysKind::CX0,    "cx0",     83, F1, 1},
    {PhysKind::CX1,    "cx1",     84, F1, 1},
    {PhysKind::SWAPin, "swap_in", 78, F1, 1},
    {PhysKind::CX2,    "cx2",    251, F2, 2},
    {PhysKind::SWAP2,  "swap2",  504, F2, 2},
    {PhysKind::CX0q,   "cx0q",   560, F2, 2},
    {PhysKind::CX1q,   "cx1q",   632, F2, 2},
    {PhysKind::CXq0,   "cxq0",   880, F2, 2},
    {PhysKind::CXq1,   "cxq1",   812, F2, 2},
    {PhysKind::SWAPq0, "swapq0", 680, F2, 2},
    {PhysKind::SWAPq1, "swapq1", 792, F2, 2},
    {PhysKind::ENC,    "enc",    608, F2, 2},
    {PhysKind::DEC,    "dec",    608, F2, 2},
    {PhysKind::CX00,   "cx00",   544, F2, 2},
    {PhysKind::CX01,   "cx01",   544, F2, 2},
    {PhysKind::CX10,   "cx10",   700, F2, 2},
    {PhysKind::CX11,   "cx11",   700, F2, 2},
    {PhysKind::SWAP00, "swap00", 916, F2, 2},
    {PhysKind::SWAP01, "swap01", 892, F2, 2},
    {PhysKind::SWAP11, "swap11", 964, F2, 2},
    {PhysKind::SWAP4,  "swap4", 1184, F2, 2},
};

static_assert(sizeof(kTable) / sizeof(kTable[0]) == size_t(kPhysKindCount));

} // namespace

const char* phys_name(PhysKind k) {
    for (const auto& row : kTable)
        if (row.kind == k)
            return row.name;
    return "?";
}

PhysKind phys_from_name(const std::string& name) {
    for (const auto& row : kTable)
        if (name == row.name)
            return row.kind;
    fail("unknown physical gate kind '", name, "'");
}

GateLibrary::GateLibrary() {
    for (const auto& row : kTable)
        specs_[size_t(row.kind)] = {row.kind, row.duration_ns, row.fidelity, row.units};
}

void GateLibrary::apply_overrides(const std::string& text) {
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.resize(hash);
        auto toks = split_ws(raw);
        if (toks.empty())
            continue;
        if (toks[0] != "gate" || toks.size() != 4)
            fail("line ", line, ": expected 'gate <kind> <duration_ns> <fidelity>'");
        PhysKind k = phys_from_name(toks[1]);
        int64_t dur = 0;
        double fid = 0;
        try {
            dur = std::stoll(toks[2]);
            fid = std::stod(toks[3]);
        } catch (const std::exception&) {
            fail("line ", line, ": bad numeric field");
        }
        if (dur <= 0)
            fail("line ", line, ": duration must be positive");
        if (!(fid > 0.0 && fid <= 1.0))
            fail("line ", line, ": fidelity must be in (0, 1]");
        specs_[size_t(k)].duration_ns = dur;
        specs_[size_t(k)].fidelity = fid;
    }
}

double gate_success(const GateSpec& spec, int radix_a, int radix_b,
                    const CoherenceParams& coh) {
    auto t1 = [&](int radix) {
        return radix == 4 ? coh.t1_ququart_ns : coh.t1_qubit_ns;
    };
    double s = spec.fidelity * std::exp(-double(spec.duration_ns) / t1(radix_a));
    if (spec.units == 2)
        s *= std::exp(-double(spec.duration_ns) / t1(radix_b));
    return s;
}

} // namespace qqc
