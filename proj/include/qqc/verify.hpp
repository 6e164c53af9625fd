#pragma once

#include "qqc/router.hpp"

#include <complex>
#include <string>
#include <vector>

namespace qqc {

using Amp = std::complex<double>;

/// State space for simulating a schedule: one factor per unit that ever
/// holds a qubit, of dimension 4 if the unit is ever encoded and 2 otherwise.
struct UnitBasis {
    std::vector<int> units;   // ascending unit ids with state
    std::vector<int> dim;     // per listed unit
    std::vector<size_t> stride;
    std::vector<int> pos_of;  // unit id -> listed position, -1 if stateless
    size_t total_dim = 1;

    int level_of(size_t index, int pos) const {
        return int(index / stride[pos]) % dim[pos];
    }
};

UnitBasis unit_basis(const ScheduledCircuit& sc);

/// Simulates the logical circuit on 2^n amplitudes; qubit q is bit q of the
/// state index. Three-qubit gates are supported directly.
std::vector<Amp> run_logical(const Circuit& c, std::vector<Amp> state);

/// Simulates the physical schedule over the unit basis.
std::vector<Amp> run_physical(const ScheduledCircuit& sc, const UnitBasis& ub,
                              std::vector<Amp> state);

struct EquivalenceResult {
    bool ok = false;
    double max_deviation = 0.0;
    std::string detail;
};

/// Checks that the schedule implements the logical circuit: several random
/// computational basis states plus two random product superpositions are run
/// through both simulators, decoding the physical result through the final
/// mapping up to a global phase.
EquivalenceResult check_equivalence(const Circuit& logical, const ScheduledCircuit& sc,
                                    uint64_t seed, int basis_trials = 4);

} // namespace qqc
