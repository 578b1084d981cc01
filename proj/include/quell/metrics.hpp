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

#ifndef QUELL_METRICS_HPP
#define QUELL_METRICS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "quell/device.hpp"
#include "quell/distribution.hpp"
#include "quell/schedule.hpp"

namespace quell {

/// Probability assigned to `target`, 0 when unobserved.
double success_probability(const Distribution& dist, const std::string& target);

/// Hellinger distance H = sqrt(1 - sum_s sqrt(a_s b_s)).
double hellinger_loss(const Distribution& a, const Distribution& b);

/// Distribution-level infidelity I = 1 - (1 - H^2)^2 with H the Hellinger
/// distance; symmetric, 0 iff equal, 1 on disjoint supports.
double circuit_infidelity(const Distribution& measured, const Distribution& ideal);

/// Selectivity S = log2(p_target / p_next) where p_next is the largest
/// non-target probability. S > 1: the target dominates decisively; 0 < S <= 1:
/// target leads but weakly; S <= 0: a wrong outcome is at least as likely.
struct SelectivityResult {
    double value = 0.0;  ///< -infinity when p_target = 0
    double p_target = 0.0;
    double p_next = 0.0;
    bool floored = false;  ///< p_next was floored at 1/(4*shots)
};

/// When every shot landed on the target, p_next is floored at 1/(4*shots)
/// (and flagged) instead of reporting +infinity; this requires a sampled
/// distribution. p_target = 0 yields -infinity.
SelectivityResult selectivity(const Distribution& dist, const std::string& target);

/// Relative number of shots needed to resolve the target at a given
/// selectivity: p_t^-1 S^-2 (unit constant).
double required_shots(double p_t, double s);

/// Rectangular grid of cost values over a 2-parameter sweep, with the axis
/// ranges carried alongside. Serializes to CSV with a two-line axis header:
///
///   # rows: <name>,<min>,<max>,<count>
///   # cols: <name>,<min>,<max>,<count>
///   v00,v01,...
struct Landscape {
    std::vector<std::vector<double>> grid;  ///< [row][col]
    std::string row_name = "p1";
    std::string col_name = "p2";
    double row_min = 0.0, row_max = 1.0;
    double col_min = 0.0, col_max = 1.0;

    int rows() const { return static_cast<int>(grid.size()); }
    int cols() const { return grid.empty() ? 0 : static_cast<int>(grid[0].size()); }
    void validate() const;  ///< rectangular, non-empty, finite values

    std::string to_csv_text() const;
    static Landscape from_csv_text(const std::string& text);
};

/// Mean local structural similarity between two equally-shaped landscapes
/// (>= 8x8), sliding a 7x7 uniform window; constants C1 = (0.01 L)^2,
/// C2 = (0.03 L)^2 with the dynamic range L = max - min of the FIRST
/// argument. Anchoring L to the ideal landscape makes the score
/// ground-truth-referenced but breaks ssim(a,b) == ssim(b,a) in general.
/// A constant ideal (L = 0) is defined as 1 when the grids are identical
/// and is an error otherwise.
double ssim(const Landscape& ideal, const Landscape& measured);

/// 1 - sample Pearson correlation; invariant under positive affine maps of
/// either series. Lengths must match and be >= 3; zero variance in either
/// series is an error.
double pearson_distance(const std::vector<double>& ideal, const std::vector<double>& measured);

/// Bitstrings whose ideal probability strictly exceeds the median over all
/// 2^n outcomes, zeros included. Sorted lexicographically.
std::vector<std::string> heavy_output_set(const Distribution& ideal);

/// Total measured probability of the given heavy set.
double heavy_output_probability(const Distribution& measured,
                                const std::vector<std::string>& heavy);

struct QvResult {
    int n = 0;
    double mean = 0.0;
    double std_err = 0.0;  ///< bootstrap standard error of the mean
    bool passes = false;   ///< mean - 2*std_err > 2/3
    std::uint64_t quantum_volume = 0;  ///< 2^n when passing, else 0
};

/// Quantum-volume decision for one circuit width from per-circuit heavy
/// output probabilities (>= 30 circuits): nonparametric bootstrap of the
/// mean (default 1000 resamples, deterministic per seed).
QvResult qv_analysis(const std::vector<double>& ho_probs, int n, int resamples = 1000,
                     std::uint64_t seed = 1);

/// Product of (1 - error) over every gate in the schedule: the success
/// probability a circuit could reach if gate error were the only noise.
double gate_error_limit(const ScheduledCircuit& sc, const DeviceModel& dev);

/// Product over participating qubits of exp(-T_q / 2 T1_q), T_q the active
/// span (first operation to measurement): the relaxation-only bound.
double t1_limit(const ScheduledCircuit& sc, const DeviceModel& dev);

/// Joint distribution of (measured syndrome, expected syndrome) over m
/// syndrome bits; entries non-negative and summing to 1 within 1e-9.
struct JointSyndromeDistribution {
    int m = 0;
    std::vector<std::vector<double>> matrix;  ///< [measured][expected], 2^m x 2^m
    void validate() const;
};

/// Probability that measured and expected syndromes agree: the trace of the
/// joint distribution.
double detection_success(const JointSyndromeDistribution& j);

/// Chance-corrected improvement (a - chance)/(b - chance); requires
/// b > chance.
double enhancement_ratio(double a, double b, double chance);

}  // namespace quell

#endif
