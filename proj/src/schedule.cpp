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

#include "quell/schedule.hpp"

#include <algorithm>
#include <numeric>

namespace quell {

void ScheduledCircuit::recompute_views() {
    std::stable_sort(timed.begin(), timed.end(),
                     [](const TimedGate& a, const TimedGate& b) { return a.start < b.start; });
    total_duration = 0;
    for (const TimedGate& tg : timed) total_duration = std::max(total_duration, tg.end());

    first_op_start.assign(static_cast<size_t>(num_qubits), -1);
    active_end.assign(static_cast<size_t>(num_qubits), -1);
    idle_windows.assign(static_cast<size_t>(num_qubits), {});

    // Per-qubit operation intervals in time order (barriers excluded).
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> ops(static_cast<size_t>(num_qubits));
    std::vector<std::int64_t> measure_start(static_cast<size_t>(num_qubits), -1);
    for (const TimedGate& tg : timed) {
        if (tg.gate.kind == GateKind::BARRIER) continue;
        for (int q : tg.gate.qubits) {
            if (tg.gate.kind == GateKind::MEASURE && measure_start[q] < 0) measure_start[q] = tg.start;
            ops[q].emplace_back(tg.start, tg.end());
        }
    }
    for (int q = 0; q < num_qubits; ++q) {
        if (ops[q].empty()) continue;
        first_op_start[q] = ops[q].front().first;
        std::int64_t span_end = measure_start[q] >= 0 ? measure_start[q] : ops[q].back().second;
        active_end[q] = span_end;
        std::int64_t cursor = ops[q].front().second;
        for (size_t i = 1; i < ops[q].size(); ++i) {
            auto [s, e] = ops[q][i];
            if (s >= span_end) break;
            if (s - cursor >= 1) idle_windows[q].push_back({cursor, s});
            cursor = std::max(cursor, e);
        }
        if (span_end - cursor >= 1) idle_windows[q].push_back({cursor, span_end});
    }
}

Circuit ScheduledCircuit::to_circuit() const {
    Circuit c(num_qubits, num_clbits);
    for (const TimedGate& tg : timed) c.gates.push_back(tg.gate);
    return c;
}

ScheduledCircuit schedule_asap(const Circuit& circuit, const DeviceModel& dev) {
    circuit.validate();
    if (circuit.num_qubits > dev.num_qubits)
        throw validation_error("schedule: circuit is wider than the device");
    ScheduledCircuit sc;
    sc.num_qubits = circuit.num_qubits;
    sc.num_clbits = circuit.num_clbits;
    std::vector<std::int64_t> ready(static_cast<size_t>(circuit.num_qubits), 0);
    for (const Gate& g : circuit.gates) {
        if (g.kind == GateKind::BARRIER) {
            std::int64_t t = ready.empty() ? 0 : *std::max_element(ready.begin(), ready.end());
            std::fill(ready.begin(), ready.end(), t);
            sc.timed.push_back({g, t, 0});
            continue;
        }
        std::int64_t dur = dev.duration_ns(g.kind);
        std::int64_t t = 0;
        for (int q : g.qubits) t = std::max(t, ready[static_cast<size_t>(q)]);
        for (int q : g.qubits) ready[static_cast<size_t>(q)] = t + dur;
        sc.timed.push_back({g, t, dur});
    }
    sc.recompute_views();
    return sc;
}

}  // namespace quell
