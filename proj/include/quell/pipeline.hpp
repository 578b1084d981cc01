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

#ifndef QUELL_PIPELINE_HPP
#define QUELL_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quell/circuit.hpp"
#include "quell/dd.hpp"
#include "quell/device.hpp"
#include "quell/distribution.hpp"
#include "quell/gatecal.hpp"
#include "quell/readout.hpp"
#include "quell/sim.hpp"

namespace quell {

/// Independent toggles for the error-suppression stages. Every circuit is
/// always lowered to the native basis, placed, routed and scheduled; the
/// flags only control the optional passes layered on top of that. The two
/// presets bracket the design space: "default" runs everything off (identity
/// placement, factory gate table, no decoupling, raw readout) and
/// "suppressed" runs everything on.
struct PipelineConfig {
    bool reduce = false;               ///< peephole simplification
    bool error_aware_layout = false;   ///< score-driven placement
    bool dynamical_decoupling = false; ///< staggered idle-window echoes
    bool optimized_gates = false;      ///< closed-loop CX recalibration
    bool readout_mitigation = false;   ///< confusion-matrix unfolding

    static PipelineConfig none();
    static PipelineConfig full();
    /// "default" or "suppressed"; anything else is a validation error.
    static PipelineConfig named(const std::string& name);
    /// Preset name when the flags match one, "custom" otherwise.
    std::string name() const;
};

/// Everything produced by pushing one logical circuit through the stages.
struct RunResult {
    Distribution raw;        ///< as sampled from the device model
    Distribution mitigated;  ///< unfolded readout; == raw when mitigation is off
    std::vector<int> clbit_qubits;  ///< physical qubit measured into each clbit
    DdPlan dd_plan;                 ///< empty when decoupling is off
    int swap_count = 0;
    int cx_count = 0;               ///< after routing
    int dd_pulse_count = 0;
    std::int64_t duration_ns = 0;   ///< scheduled wall time of the circuit
    double gate_error_limit = 1.0;  ///< stochastic-gate-error success ceiling
    double t1_limit = 1.0;          ///< relaxation success ceiling
};

/// Executable pipeline bound to one device and one stage configuration.
///
/// Construction performs the configured calibrations once, so that every
/// circuit subsequently run shares the same calibrated device: gate
/// recalibration rewrites the CX parameter/error tables per edge, and
/// readout calibration measures per-qubit confusion matrices (singleton
/// groups, so any later subset of measured qubits stays coverable). Both
/// are deterministic in the construction seed.
class Pipeline {
  public:
    Pipeline(const DeviceModel& dev, const PipelineConfig& cfg, std::uint64_t seed);

    /// Stage order: lower to native basis, simplify (optional), place, route,
    /// schedule, embed decoupling (optional), simulate, unfold readout
    /// (optional). `seed` drives only the trajectory sampling of this run.
    RunResult run(const Circuit& logical, std::int64_t shots, std::uint64_t seed,
                  ExecPolicy policy = ExecPolicy::OpenMP) const;

    const DeviceModel& device() const { return dev_; }
    const PipelineConfig& config() const { return cfg_; }
    /// Present only when the corresponding stage is enabled.
    const GateCalResult* gate_calibration() const { return gatecal_ ? &*gatecal_ : nullptr; }
    const ReadoutCalibration* readout_calibration() const { return readout_ ? &*readout_ : nullptr; }

  private:
    DeviceModel dev_;
    PipelineConfig cfg_;
    std::optional<GateCalResult> gatecal_;
    std::optional<ReadoutCalibration> readout_;
};

}  // namespace quell

#endif
