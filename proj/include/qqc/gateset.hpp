#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace qqc {

/// Physical gates available on a ququart device. Superscript convention from
/// the calibrated library: for CX kinds the first index is the control, the
/// second the target; 'q' marks a bare-qubit unit, '0'/'1' a slot inside an
/// encoded ququart.
enum class PhysKind : uint8_t {
    // single-unit, bare qubit
    X,
    // single-unit, encoded ququart
    X0, X1, X01, CX0, CX1, SWAPin,
    // two-unit, both bare
    CX2, SWAP2,
    // two-unit, ququart <-> bare
    CX0q, CX1q, CXq0, CXq1, SWAPq0, SWAPq1,
    // two-unit, encode/decode a qubit pair
    ENC, DEC,
    // two-unit, both ququarts
    CX00, CX01, CX10, CX11, SWAP00, SWAP01, SWAP11, SWAP4,
    COUNT
};

constexpr int kPhysKindCount = int(PhysKind::COUNT);

const char* phys_name(PhysKind k);
PhysKind phys_from_name(const std::string& name); // throws Error on unknown

struct GateSpec {
    PhysKind kind;
    int64_t duration_ns;
    double fidelity;
    int units; // 1 or 2
};

/// Calibrated gate library; defaults follow the reference pulse simulations
/// (0.999 single-unit fidelity, 0.99 for two-unit kinds and ENC/DEC).
class GateLibrary {
public:
    GateLibrary();

    const GateSpec& spec(PhysKind k) const { return specs_[size_t(k)]; }

    /// Applies override lines of the form "gate <kind> <duration_ns> <fidelity>".
    void apply_overrides(const std::string& text);

private:
    std::array<GateSpec, kPhysKindCount> specs_;
};

struct CoherenceParams {
    double t1_qubit_ns;
    double t1_ququart_ns;

    static CoherenceParams from_us(double t1_qubit_us, double ratio) {
        return {t1_qubit_us * 1000.0, t1_qubit_us * 1000.0 * ratio};
    }
    static CoherenceParams defaults() { return from_us(163.5, 1.0 / 3.0); }
};

/// Success probability of one gate: fidelity times one decay factor per
/// operand unit, exp(-duration / T1(unit radix)).
/// radix_a/radix_b: 2 for a bare-qubit unit, 4 for an encoded ququart;
/// radix_b is ignored for single-unit kinds.
double gate_success(const GateSpec& spec, int radix_a, int radix_b,
                    const CoherenceParams& coh);

} // namespace qqc
