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

#ifndef QUELL_REPORT_HPP
#define QUELL_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "quell/device.hpp"
#include "quell/distribution.hpp"
#include "quell/metrics.hpp"
#include "quell/pipeline.hpp"

namespace quell {

/// Result of one circuit instance inside a benchmark run: the sampled and
/// mitigated distributions plus a flat scalar-metric map (success
/// probability, selectivity, limits, gate counts, ... keys vary by family).
struct InstanceReport {
    std::string label;
    std::string target;  ///< success-target bitstring; empty when not applicable
    Distribution raw;
    Distribution mitigated;
    std::map<std::string, double> metrics;
};

/// Self-contained record of one benchmark family run through one pipeline
/// configuration on one device. Serialization is canonical (sorted keys,
/// shortest-roundtrip numbers), so two runs with equal inputs produce
/// byte-identical JSON except for the wall-clock field.
struct BenchReport {
    std::string benchmark;
    std::string pipeline;  ///< preset name of `config`
    PipelineConfig config;
    std::string device_name;
    std::string device_hash;
    std::int64_t shots = 0;
    std::uint64_t seed = 0;
    int qubits_lo = 0;
    int qubits_hi = 0;
    std::vector<InstanceReport> instances;
    std::map<std::string, double> summary;
    Landscape landscape;  ///< cost landscapes only (qaoa); empty otherwise
    bool has_landscape = false;
    double wall_ms = 0.0;

    std::string to_json_text(int indent = 2) const;
    /// to_json_text with wall_ms forced to zero: equal for equal-seed runs.
    std::string canonical_json_text(int indent = 2) const;
    static BenchReport from_json_text(const std::string& text);
    static BenchReport load(const std::string& path);
    void save(const std::string& path) const;
};

/// Options shared by every benchmark family. The qubit range applies to the
/// families that sweep size (bv, qft, qv); fixed-size families validate it
/// instead. `count` is the number of model circuits per size (qv only).
struct BenchOptions {
    int qubits_lo = 0;  ///< 0 = family default
    int qubits_hi = 0;
    std::int64_t shots = 8192;
    std::uint64_t seed = 1;
    int count = 100;
    ExecPolicy policy = ExecPolicy::OpenMP;
    /// vqe only: Hamiltonian text ("coeff pauli_string" lines); empty selects
    /// the builtin transverse-field Ising ring at the requested width.
    std::string ham_text;
};

/// Runs one benchmark family end to end and assembles the report. Known
/// families: bv, qft, grover, qaoa, vqe, qec-rep, qec-5q, qv. Instance k is
/// sampled with seed `opt.seed + k`; the pipeline (with its calibrations) is
/// built once from `opt.seed`. Summary keys are family-specific; every
/// family also records the mean of each per-instance metric as "mean_<key>".
BenchReport run_benchmark(const std::string& family, const DeviceModel& dev,
                          const PipelineConfig& cfg, const BenchOptions& opt);

/// Human-readable side-by-side digest of two reports (summary metrics and
/// the per-instance deltas they share). Reports must describe the same
/// benchmark family.
std::string compare_reports(const BenchReport& a, const BenchReport& b);

/// Per-instance metric table, one row per instance ("label,metric,...").
/// For landscape reports this is instead the landscape CSV itself.
std::string report_csv(const BenchReport& r);

}  // namespace quell

#endif
