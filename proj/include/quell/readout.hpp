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

#ifndef QUELL_READOUT_HPP
#define QUELL_READOUT_HPP

#include <functional>
#include <string>
#include <vector>

#include "quell/circuit.hpp"
#include "quell/device.hpp"
#include "quell/distribution.hpp"

namespace quell {

/// Tensored measurement-error mitigation.
///
/// Measured qubits are partitioned into small topology-connected groups; one
/// confusion matrix per group is estimated from joint calibration circuits
/// (every group is prepared simultaneously, so the circuit count is
/// 2^max|G_i| regardless of the total qubit count), and corrections are
/// applied per group and recombined multiplicatively over the observed joint
/// outcomes. The correction is exact when inter-group readout correlations
/// vanish, which grouping along coupling edges targets.
struct ReadoutCalibration {
    std::vector<std::vector<int>> groups;  ///< disjoint physical-qubit groups
    /// Per group: row-major 2^|G| x 2^|G| column-stochastic matrix,
    /// confusion[observed][prepared]; bit j of an index is the group's j-th
    /// qubit.
    std::vector<std::vector<double>> confusion;
    std::string device_hash;  ///< DeviceModel::content_hash at calibration time

    std::string to_json_text(int indent = 2) const;
    static ReadoutCalibration from_json_text(const std::string& text);
};

/// Greedy connected grouping of the measured qubits: ascending by index,
/// each group grows along coupling edges until it reaches max_group or runs
/// out of unassigned neighbors.
std::vector<std::vector<int>> choose_groups(const DeviceModel& dev, std::vector<int> qubits,
                                            int max_group);

/// Executes a prepared calibration circuit and returns its sampled counts.
/// Injected so calibration can run against the trajectory simulator, a
/// cached store, or a test double that counts invocations.
using ExecuteFn = std::function<Distribution(const Circuit&)>;

/// Runs exactly 2^max|G_i| calibration circuits (basis pattern b is prepared
/// in every group simultaneously) and estimates each group's confusion
/// matrix column-wise from the returned counts.
ReadoutCalibration calibrate_readout(const DeviceModel& dev,
                                     const std::vector<std::vector<int>>& groups,
                                     const ExecuteFn& execute);

/// Applies the calibration to a measured distribution. clbit_qubits[c] names
/// the physical qubit recorded in clbit c; every group must be fully present.
/// Per group, solves min ||C p - q||^2 over the probability simplex
/// (projected gradient, 500 iterations, 1e-8 tolerance) for the group's
/// marginal q, then reweights each observed bitstring by the per-group ratio
/// p(bits)/q(bits) and renormalizes.
Distribution mitigate_readout(const Distribution& measured, const ReadoutCalibration& cal,
                              const std::vector<int>& clbit_qubits);

}  // namespace quell

#endif
