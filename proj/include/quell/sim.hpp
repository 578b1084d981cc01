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

#ifndef QUELL_SIM_HPP
#define QUELL_SIM_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "quell/circuit.hpp"
#include "quell/device.hpp"
#include "quell/distribution.hpp"
#include "quell/schedule.hpp"

namespace quell {

/// How independent trajectories are executed.
enum class ExecPolicy {
    Serial,  ///< single thread; the reference path
    OpenMP,  ///< shots distributed across OpenMP threads
};

struct SimOptions {
    /// Number of sampled trajectories. 0 selects exact mode, which evolves
    /// the state once and reads probabilities directly; exact mode refuses
    /// devices with any nonzero stochastic rate (gate Pauli errors, T1/T2
    /// decay on idle windows, readout flips). Deterministic ZZ phase
    /// accumulation is permitted in both modes.
    std::int64_t shots = 4096;
    std::uint64_t seed = 1;
    ExecPolicy policy = ExecPolicy::OpenMP;
};

/// Simulates a scheduled circuit on a noisy device model.
///
/// The noise model applied per trajectory:
///  - after each gate, with probability equal to the device error rate for
///    that gate, a uniformly random non-identity Pauli on its operands;
///  - on each per-qubit idle window of length t, amplitude damping with
///    p = 1 - exp(-t/T1) followed by a phase flip with
///    p = (1 - exp(-t/Tphi))/2;
///  - on each maximal interval where both endpoints of a coupled pair are
///    simultaneously idle, the always-on coupling exp(-i zeta*t/2 Z(x)Z);
///  - sampled readout flips drawn from each measured qubit's confusion
///    matrix.
///
/// Events tied at the same timestamp apply idle-window noise before gates
/// that start there. Each shot draws from an independent random stream
/// keyed by (seed, shot index), so serial and OpenMP execution produce
/// bit-identical distributions.
///
/// Only qubits that appear in some operation are simulated; unused device
/// qubits have no operations, hence no idle windows and no coupling
/// intervals, so dropping them is exact.
Distribution simulate(const ScheduledCircuit& sc, const DeviceModel& dev, const SimOptions& opts);

/// Noiseless reference distribution for a circuit (measurement statistics
/// over its classical bits; unmeasured clbits read 0). Limited to 16 qubits.
Distribution exact_distribution(const Circuit& circuit);

/// Noiseless final state of a circuit applied to |0...0>, with MEASURE and
/// BARRIER ignored. Amplitude index bit q corresponds to qubit q.
std::vector<std::complex<double>> statevector(const Circuit& circuit);

}  // namespace quell

#endif
