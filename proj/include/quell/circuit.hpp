// Copyright 2026 The Quell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QUELL_CIRCUIT_HPP
#define QUELL_CIRCUIT_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "quell/errors.hpp"

namespace quell {

/// Gate vocabulary of the intermediate representation.
///
/// The native set targeted by the transpiler is {RZ, SX, X, CX}. H and U2Q
/// are accepted as input and lowered by `to_native`. MEASURE and BARRIER are
/// scheduling/readout directives rather than unitaries.
enum class GateKind : std::uint8_t {
    RZ,       ///< Z rotation by `angle` (virtual, zero duration on hardware).
    SX,       ///< sqrt(X).
    X,        ///< Pauli X.
    H,        ///< Hadamard (input-only; lowered to RZ.SX.RZ).
    CX,       ///< CNOT; qubits = {control, target}.
    U2Q,      ///< Arbitrary two-qubit unitary; `matrix` holds 16 row-major
              ///< entries, with the first listed qubit as the high-order bit
              ///< of the 4-dimensional gate index.
    MEASURE,  ///< Projective Z measurement of qubits[0] into `clbit`.
    BARRIER,  ///< Full-width synchronization point for the scheduler.
};

/// Printable lower-case name for a gate kind ("rz", "sx", ...).
const char* gate_kind_name(GateKind kind);

/// One instruction of a circuit.
///
/// Value-semantic and comparable; `operator==` compares angles bit-exactly,
/// which is what the QASM round-trip guarantee is stated against.
struct Gate {
    GateKind kind = GateKind::RZ;
    std::vector<int> qubits;                   ///< Ordered operands.
    double angle = 0.0;                        ///< RZ only.
    int clbit = -1;                            ///< MEASURE only.
    std::vector<std::complex<double>> matrix;  ///< U2Q only (16 entries).

    bool operator==(const Gate&) const = default;

    static Gate rz(int q, double angle);
    static Gate sx(int q);
    static Gate x(int q);
    static Gate h(int q);
    static Gate cx(int control, int target);
    static Gate u2q(int q0, int q1, std::vector<std::complex<double>> m);
    static Gate measure(int q, int clbit);
    static Gate barrier();

    /// True for MEASURE/BARRIER, i.e. instructions without a unitary action.
    bool is_directive() const { return kind == GateKind::MEASURE || kind == GateKind::BARRIER; }
    /// Number of qubit operands expected for `kind` (BARRIER reports 0).
    static int arity(GateKind kind);
};

/// A flat, ordered list of gates over `num_qubits` qubits and `num_clbits`
/// classical bits.
///
/// Bit conventions used throughout the toolchain:
///  * basis-state indices are little-endian: bit q of an index is qubit q;
///  * distribution bitstrings are clbit-ordered with character i = clbit i.
struct Circuit {
    int num_qubits = 0;
    int num_clbits = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    Circuit(int nq, int nc) : num_qubits(nq), num_clbits(nc) {}

    bool operator==(const Circuit&) const = default;

    Circuit& add(Gate g) {
        gates.push_back(std::move(g));
        return *this;
    }

    /// Throws validation_error unless every gate is well formed: operand
    /// counts match the kind, indices are in range, no gate lists the same
    /// qubit twice, U2Q matrices have 16 entries and are unitary to 1e-9,
    /// and no clbit is written by more than one MEASURE.
    void validate() const;

    /// Qubits touched by at least one gate, ascending.
    std::vector<int> active_qubits() const;

    /// measured_qubit(c) for each clbit c, or -1 when the clbit is never
    /// written.
    std::vector<int> clbit_sources() const;
};

}  // namespace quell

#endif
