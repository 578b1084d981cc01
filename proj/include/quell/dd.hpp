// Copyright 2026 The Quell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF
// ANY KIND, either express or implied. See the License for the specific
// language governing permissions and limitations under the License.

#ifndef QUELL_DD_HPP
#define QUELL_DD_HPP

#include <cstdint>
#include <vector>

#include "quell/device.hpp"
#include "quell/schedule.hpp"

namespace quell {

/// Decoupling sequences are described by pulse centers as fractions of the
/// idle window: {1/4, 3/4} is the two-pulse echo, {1/8, 3/8, 5/8, 7/8} the
/// four-pulse one. Both start and end with an even number of X pulses, so
/// the window's net action stays the identity.
struct DdOptions {
    /// Windows shorter than this multiple of the X-pulse duration are left
    /// alone; the pulses would not fit cleanly.
    std::int64_t min_window_factor = 4;
    /// Windows at least this multiple of the minimum length get a doubled
    /// sequence (each pulse pattern repeated in both halves).
    std::int64_t repeat_factor = 10;
};

struct DdPlan {
    struct Entry {
        int qubit;                     ///< physical qubit
        IdleWindow window;             ///< idle window being decoupled
        std::vector<double> fractions; ///< pulse centers, as fractions of it
    };
    std::vector<Entry> entries;
    std::vector<int> color;  ///< per-qubit sequence class; -1 = no pulses
};

/// Same two-pulse echo on every eligible idle window of every active qubit.
/// Refocuses slow single-qubit dephasing but leaves ZZ cross-phases intact,
/// because coupled neighbors flip their signs in lockstep.
DdPlan plan_uniform(const ScheduledCircuit& sc, const DeviceModel& dev, const DdOptions& opts = {});

/// Staggered assignment: qubits are 2-colored over the conflict graph whose
/// edges join coupled pairs with overlapping eligible windows (BFS layering
/// per component). Color 0 gets the two-pulse echo, color 1 the four-pulse
/// one, so the sign product across any properly colored edge integrates to
/// zero and the shared ZZ phase cancels.
DdPlan plan_dd(const ScheduledCircuit& sc, const DeviceModel& dev, const DdOptions& opts = {});

/// Inserts the planned X pulses into a copy of the schedule. Existing
/// operations never move; each pulse is centered at start + frac*len and
/// must fit inside its window, or a stage_error is raised. The returned
/// schedule has its idle windows recomputed (split around the new pulses).
ScheduledCircuit embed_dd(const ScheduledCircuit& sc, const DeviceModel& dev, const DdPlan& plan);

/// Normalized ZZ phase accumulated across one shared idle window when the
/// two qubits run the given pulse sequences: the integral over [0,1] of the
/// product of their toggling signs (each sign flips at a pulse fraction).
/// Computed in fixed-point rational arithmetic, so dyadic pulse fractions
/// (k/2, k/4, k/8, ...) give bit-exact results: 1.0 for equal sequences,
/// exactly 0.0 for the staggered two/four-pulse pair.
double residual_zz_phase(const std::vector<double>& fractions_a,
                         const std::vector<double>& fractions_b);

}  // namespace quell

#endif
