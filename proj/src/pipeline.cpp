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

#include "quell/pipeline.hpp"

#include <numeric>
#include <tuple>

#include "quell/errors.hpp"
#include "quell/metrics.hpp"
#include "quell/schedule.hpp"
#include "quell/transpile.hpp"

namespace quell {

namespace {

// Shots spent on each readout-calibration circuit at pipeline construction.
constexpr std::int64_t kReadoutCalShots = 4096;
// Seed offset separating the calibration sampling stream from run streams.
constexpr std::uint64_t kReadoutCalSeedOffset = 0x9e3779b9;

}  // namespace

PipelineConfig PipelineConfig::none() { return PipelineConfig{}; }

PipelineConfig PipelineConfig::full() {
    PipelineConfig c;
    c.reduce = true;
    c.error_aware_layout = true;
    c.dynamical_decoupling = true;
    c.optimized_gates = true;
    c.readout_mitigation = true;
    return c;
}

PipelineConfig PipelineConfig::named(const std::string& name) {
    if (name == "default") return none();
    if (name == "suppressed") return full();
    throw validation_error("pipeline: unknown preset '" + name + "' (expected 'default' or 'suppressed')");
}

std::string PipelineConfig::name() const {
    auto as_tuple = [](const PipelineConfig& c) {
        return std::tuple(c.reduce, c.error_aware_layout, c.dynamical_decoupling,
                          c.optimized_gates, c.readout_mitigation);
    };
    if (as_tuple(*this) == as_tuple(none())) return "default";
    if (as_tuple(*this) == as_tuple(full())) return "suppressed";
    return "custom";
}

Pipeline::Pipeline(const DeviceModel& dev, const PipelineConfig& cfg, std::uint64_t seed)
    : dev_(dev), cfg_(cfg) {
    dev_.validate();

    if (cfg_.optimized_gates) {
        const auto offsets = make_miscalibration(dev_, dev_.miscal_magnitude, dev_.miscal_seed);
        gatecal_ = calibrate_device(dev_, offsets, GateCalOptions{}, seed);
    }

    if (cfg_.readout_mitigation) {
        // Singleton groups: the device's readout model is per-qubit, and
        // one-qubit groups keep every possible measured subset coverable.
        std::vector<int> all(static_cast<std::size_t>(dev_.num_qubits));
        std::iota(all.begin(), all.end(), 0);
        const auto groups = choose_groups(dev_, all, 1);
        const std::uint64_t cal_seed = seed + kReadoutCalSeedOffset;
        readout_ = calibrate_readout(dev_, groups, [&](const Circuit& c) {
            SimOptions so;
            so.shots = kReadoutCalShots;
            so.seed = cal_seed;
            return simulate(schedule_asap(c, dev_), dev_, so);
        });
    }
}

RunResult Pipeline::run(const Circuit& logical, std::int64_t shots, std::uint64_t seed,
                        ExecPolicy policy) const {
    logical.validate();

    Circuit native = to_native(logical);
    if (cfg_.reduce) native = reduce(native);

    const Layout layout = cfg_.error_aware_layout ? select_layout(native, dev_)
                                                  : Layout::identity(native.num_qubits);
    layout.validate(native.num_qubits, dev_.num_qubits);
    RouteResult routed = route(native, dev_, layout);

    ScheduledCircuit sc = schedule_asap(routed.circuit, dev_);
    RunResult out;
    if (cfg_.dynamical_decoupling) {
        out.dd_plan = plan_dd(sc, dev_, DdOptions{});
        sc = embed_dd(sc, dev_, out.dd_plan);
        for (const auto& e : out.dd_plan.entries)
            out.dd_pulse_count += static_cast<int>(e.fractions.size());
    }

    SimOptions so;
    so.shots = shots;
    so.seed = seed;
    so.policy = policy;
    out.raw = simulate(sc, dev_, so);

    out.clbit_qubits = routed.circuit.clbit_sources();
    out.swap_count = routed.swap_count;
    out.cx_count = count_gates(routed.circuit).cx;
    out.duration_ns = sc.total_duration;
    out.gate_error_limit = gate_error_limit(sc, dev_);
    out.t1_limit = t1_limit(sc, dev_);

    out.mitigated = cfg_.readout_mitigation ? mitigate_readout(out.raw, *readout_, out.clbit_qubits)
                                            : out.raw;
    return out;
}

}  // namespace quell
