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

#ifndef QUELL_SYNTH2Q_HPP
#define QUELL_SYNTH2Q_HPP

#include <complex>
#include <vector>

#include "quell/circuit.hpp"

namespace quell {

/// Rewrites an arbitrary single-qubit unitary (2x2 row-major) as at most
/// RZ.SX.RZ.SX.RZ on qubit q, dropping pulses that degenerate to identity.
/// Exact up to global phase.
std::vector<Gate> synth_1q(const std::complex<double> u[4], int q);

/// Decomposes a U2Q gate into native gates (RZ/SX/X/CX) on its operands.
///
/// The Cartan (KAK) coordinates of the target select the cheapest template
/// with the same interaction content — 0, 1, 2 or 3 CX gates — and the
/// single-qubit legs are fused so the result is exact up to global phase.
/// Throws stage_error if the reconstruction drifts beyond 1e-6.
std::vector<Gate> synth_2q(const Gate& g);

}  // namespace quell

#endif
