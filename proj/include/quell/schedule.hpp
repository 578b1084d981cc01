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

#ifndef QUELL_SCHEDULE_HPP
#define QUELL_SCHEDULE_HPP

#include <cstdint>
#include <vector>

#include "quell/circuit.hpp"
#include "quell/device.hpp"

namespace quell {

/// Half-open idle interval [t0, t1) on a single qubit.
struct IdleWindow {
    std::int64_t t0 = 0;
    std::int64_t t1 = 0;
    std::int64_t len() const { return t1 - t0; }
    bool operator==(const IdleWindow&) const = default;
};

struct TimedGate {
    Gate gate;
    std::int64_t start = 0;
    std::int64_t duration = 0;
    std::int64_t end() const { return start + duration; }
};

/// A circuit with concrete integer-nanosecond start times plus derived
/// per-qubit timing views (first-op starts, active-span ends, idle windows).
///
/// `timed` is kept ordered by (start, insertion order). The derived views
/// are rebuilt by recompute_views(), which the dynamical-decoupling embedder
/// calls after inserting pulses so that downstream noise simulation sees the
/// post-embedding idle structure.
struct ScheduledCircuit {
    int num_qubits = 0;
    int num_clbits = 0;
    std::vector<TimedGate> timed;
    std::int64_t total_duration = 0;

    /// Per-qubit start of the first real operation; -1 for untouched qubits.
    std::vector<std::int64_t> first_op_start;
    /// Per-qubit end of the active span: the start of the qubit's MEASURE
    /// when it is measured, otherwise the end of its last operation; -1 for
    /// untouched qubits.
    std::vector<std::int64_t> active_end;
    /// Per-qubit maximal gaps >= 1 ns between consecutive operations within
    /// the active span. BARRIERs are scheduling directives, not operations,
    /// and do not terminate a window.
    std::vector<std::vector<IdleWindow>> idle_windows;

    void recompute_views();

    /// Flattens back to a plain Circuit in time order.
    Circuit to_circuit() const;
};

/// As-soon-as-possible scheduler. Every gate starts at the latest ready time
/// of its operands; BARRIER synchronizes all qubits at zero duration; gate
/// durations come from the device table (validation_error when a kind has no
/// entry).
ScheduledCircuit schedule_asap(const Circuit& circuit, const DeviceModel& dev);

}  // namespace quell

#endif
