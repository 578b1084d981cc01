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

#ifndef QUELL_DEVICE_HPP
#define QUELL_DEVICE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "quell/circuit.hpp"

namespace quell {

/// Canonical map key for an undirected coupling edge: "min-max".
std::string edge_key(int a, int b);

/// Static description of a (possibly synthetic) backend: topology, qubit
/// lifetimes, gate timing/error tables, residual ZZ rates, and per-qubit
/// readout confusion. All times are held in nanoseconds and all ZZ rates in
/// rad/ns internally; the JSON schema uses microseconds / rad-per-us for the
/// lifetime and ZZ fields (suffix `_us`).
///
/// JSON schema (all fields required unless noted):
///   {
///     "name": str, "synthetic": bool, "num_qubits": int,
///     "edges": [[a, b], ...],
///     "t1_us": [..], "t2_us": [..],
///     "durations_ns": {"rz": 0, "sx": 20, "x": 20, "cx": 300,
///                      "u2q": 300, "measure": 400, "barrier": 0},
///     "gate_error": {"rz": 0.0, "sx": 2e-4, "x": 2e-4, "cx": 7e-3},
///     "gate_error_overrides": {"cx:2-3": 0.02, "sx:4": 1e-3},   // optional
///     "zz_rate_rad_per_us": {"*": 0.05, "0-1": 0.12},            // optional
///     "readout_error": [[e01, e10], ...],   // P(read 1|prep 0), P(read 0|prep 1)
///     "gate_params": {"0-1": [alpha, beta, gamma]},              // optional
///     "miscalibration": {"magnitude": 0.06, "seed": 4242}        // optional
///   }
///
/// For synthetic devices, "miscalibration" describes the hidden per-edge
/// drift of the analog gate parameters (Gaussian, reproducible from the
/// seed). Gate calibration treats it as the ground truth that its
/// closed-loop experiments probe; it is part of the device file so the
/// simulated hardware is fully reproducible.
struct DeviceModel {
    std::string name;
    bool synthetic = true;
    int num_qubits = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<double> t1_ns;
    std::vector<double> t2_ns;
    std::map<std::string, std::int64_t> durations_ns;
    std::map<std::string, double> gate_error;            ///< per-kind defaults
    std::map<std::string, double> gate_error_overrides;  ///< "kind:q" / "kind:a-b"
    double zz_default_rad_ns = 0.0;
    std::map<std::string, double> zz_rad_ns;             ///< per-edge override
    std::vector<std::array<double, 2>> readout_error;    ///< {e01, e10} per qubit
    std::map<std::string, std::array<double, 3>> gate_params;
    double miscal_magnitude = 0.0;       ///< per-component drift std-dev (rad)
    std::uint64_t miscal_seed = 0;

    bool is_edge(int a, int b) const;

    /// Duration of a gate kind; throws validation_error when the kind has no
    /// entry so that scheduling never silently invents timing.
    std::int64_t duration_ns(GateKind kind) const;

    /// Error probability for a concrete gate: a "kind:operands" override if
    /// present, otherwise the kind default; throws when neither exists.
    /// MEASURE and BARRIER carry no gate error and return 0.
    double error_for(const Gate& g) const;

    /// Residual ZZ rate (rad/ns) on edge (a,b); 0 when (a,b) is not coupled.
    double zz(int a, int b) const;

    /// Pure-dephasing time from 1/Tphi = 1/T2 - 1/(2 T1); +inf when T2 == 2 T1.
    double tphi_ns(int q) const;

    /// 2x2 column-stochastic confusion matrix, C[read][prepared].
    std::array<std::array<double, 2>, 2> confusion(int q) const;

    /// Symmetrized assignment error (e01 + e10) / 2, used by layout scoring.
    double readout_assignment_error(int q) const;

    /// Structural checks: consistent array sizes, connected coupling graph,
    /// T2 <= 2*T1, probabilities in range. Throws validation_error.
    void validate() const;

    std::string to_json_text(int indent = 2) const;
    static DeviceModel from_json_text(const std::string& text);
    static DeviceModel load(const std::string& path);
    void save(const std::string& path) const;

    /// FNV-1a hash of the canonical JSON dump; stamped into reports so a
    /// result can be traced to the exact device table that produced it.
    std::string content_hash() const;
};

}  // namespace quell

#endif
