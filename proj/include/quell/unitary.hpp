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

#ifndef QUELL_UNITARY_HPP
#define QUELL_UNITARY_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstddef>

#include "quell/circuit.hpp"

namespace quell {

/// Dense unitary of a measurement-free circuit, little-endian basis
/// ordering (bit q of the index is qubit q). Exact reference semantics for
/// equivalence tests; capped at 10 qubits. BARRIERs are skipped; a MEASURE
/// raises validation_error.
Eigen::MatrixXcd unitary_of(const Circuit& circuit);

/// Largest |difference| between two matrices after removing the global
/// phase that best aligns them (phase taken from the largest entry of `a`).
double phase_aligned_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

namespace detail {

using cplx = std::complex<double>;

/// Expands a compact index to a full index with a zero inserted at bit `q`:
/// iterates exactly the amplitudes with that bit clear, without scanning
/// (and branching on) the whole register.
inline std::size_t insert_zero(std::size_t k, int q) {
    const std::size_t low = (std::size_t{1} << q) - 1;
    return ((k & ~low) << 1) | (k & low);
}

/// 2x2 matrix for a single-qubit gate kind (RZ uses `angle`).
void gate_matrix_1q(const Gate& g, cplx out[4]);

/// 4x4 row-major matrix of any two-qubit gate (CX or U2Q), first listed
/// qubit = high bit of the gate index.
void gate_matrix_2q(const Gate& g, cplx out[16]);

/// In-place kernels on a 2^n statevector.
void apply_1q(cplx* amp, int n, int q, const cplx m[4]);
void apply_2q(cplx* amp, int n, int q_hi, int q_lo, const cplx m[16]);

/// Dispatch for unitary gates; BARRIER is a no-op, MEASURE throws.
void apply_gate(cplx* amp, int n, const Gate& g);

}  // namespace detail

}  // namespace quell

#endif
