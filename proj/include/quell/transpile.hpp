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

#ifndef QUELL_TRANSPILE_HPP
#define QUELL_TRANSPILE_HPP

#include <vector>

#include "quell/circuit.hpp"
#include "quell/device.hpp"

namespace quell {

/// Placement of virtual circuit qubits onto physical device qubits.
struct Layout {
    std::vector<int> v2p;  ///< v2p[virtual] = physical

    static Layout identity(int n);
    void validate(int num_virtual, int num_physical) const;
};

/// Lowers a circuit to the native basis {RZ, SX, X, CX}: H becomes
/// RZ(pi/2).SX.RZ(pi/2) and U2Q gates are synthesized. Everything native
/// passes through unchanged; the result is equal up to global phase.
Circuit to_native(const Circuit& circuit);

/// Peephole simplifier, run to a fixed point: merges adjacent RZ rotations,
/// drops RZ angles that reduce to a global phase, cancels X.X / H.H / CX.CX
/// pairs and contracts SX.SX to X. "Adjacent" means no intervening operation
/// touches the operand qubits; barriers block every rewrite across them.
/// Preserves the circuit unitary up to global phase.
Circuit reduce(const Circuit& circuit);

struct RouteResult {
    Circuit circuit;             ///< physical-width circuit, CX only on edges
    std::vector<int> final_pos;  ///< final_pos[virtual] = physical qubit at exit
    int swap_count = 0;
};

/// Maps the circuit onto the device topology, inserting SWAPs (as three CX
/// gates) chosen by a greedy lookahead over the dependency front. Measures
/// follow their qubit, so measurement statistics are preserved exactly.
RouteResult route(const Circuit& circuit, const DeviceModel& dev, const Layout& layout);

/// Log-domain figure of merit for a placement: the routed, scheduled circuit
/// is scored as
///   sum ln(1 - gate error) over gates
///   - sum over active qubits of span/(2 T1) + idle/(2 Tphi)
///   + sum ln(1 - assignment error) over measured qubits,
/// i.e. an estimate of ln(success probability). Higher is better.
double score_layout(const Circuit& native, const DeviceModel& dev, const Layout& layout);

/// Error-aware placement: grows one BFS-connected candidate region from each
/// physical qubit (capped at max_candidates), scores each with score_layout,
/// and returns the best. Ties break toward fewer CX gates after routing,
/// then toward the lexicographically smallest assignment.
Layout select_layout(const Circuit& native, const DeviceModel& dev, int max_candidates = 64);

struct GateCounts {
    int cx = 0;
    int one_qubit = 0;
    int swaps_hint = 0;  ///< filled by callers that know the routing history
    int depth = 0;       ///< over non-directive gates
};

GateCounts count_gates(const Circuit& circuit);

}  // namespace quell

#endif
