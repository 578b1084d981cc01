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

#ifndef QUELL_GATECAL_HPP
#define QUELL_GATECAL_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "quell/device.hpp"

namespace quell {

/// Control parameters of the echoed cross-resonance pulse that implements
/// the entangling gate. The effective drive Hamiltonian gives
///
///   U(p) = (X (x) I) . exp(-i/2 (alpha ZX + beta IX + gamma ZI)) . (X (x) I)
///
/// with the first (control) qubit carrying the Z factors. At the ideal point
/// the gate equals CX up to global phase.
struct GateParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

/// Parameter point where U(p) = e^{-i pi/4} CX: (pi/2, pi/2, -pi/2).
GateParams ideal_cx_params();

/// 4x4 row-major matrix of U(p); the control qubit is the high index bit.
std::array<std::complex<double>, 16> cr_gate_matrix(const GateParams& p);

/// Error-per-gate estimate for a commanded parameter point when the
/// hardware actually applies U(commanded + offset). Runs a repeated-gate
/// experiment on two CX fixed points (|00> measured in Z, |++> measured in
/// X), samples each survival probability with `shots` Bernoulli draws, and
/// returns the least-squares slope of mean infidelity versus repetition
/// count over n_list, fitted through the origin (a zero-length sequence has
/// zero infidelity by construction, which keeps the fit meaningful when
/// long sequences saturate). Deterministic for a fixed seed.
double epg_estimate(const GateParams& commanded, const GateParams& offset,
                    const std::vector<int>& n_list, int shots, std::uint64_t seed);

/// Repetition counts used by the calibration experiments.
std::vector<int> default_n_list();

struct AnnealOptions {
    double t0 = 0.1;        ///< initial temperature
    double cooling = 0.95;  ///< geometric decay per step
    int steps = 300;
    /// Proposals farther than this (Euclidean, radians) from the initial
    /// point are rejected outright; 0 disables the bound. Calibration uses
    /// it as a trust region: the two survival probes share their fixed
    /// points with a one-parameter family of non-CX gates, so an unbounded
    /// walk can wander along that family at no apparent cost.
    double trust_radius = 0.0;
};

/// Simulated annealing over GateParams: Gaussian proposals with standard
/// deviation sqrt(T) on every component, Metropolis acceptance, geometric
/// cooling. Returns the best point ever visited (best-seen, not last).
GateParams anneal(const std::function<double(const GateParams&)>& cost, GateParams init,
                  const AnnealOptions& opt, std::uint64_t seed);

/// Partitions the coupling edges into blocks that can be calibrated
/// concurrently: two edges conflict when they share a qubit or when any
/// qubit of one is coupled to a qubit of the other (spectator drive).
/// Greedy smallest-color over edges in canonical (min,max) order.
std::vector<std::vector<std::pair<int, int>>> color_edges(const DeviceModel& dev);

/// Seeded per-edge parameter offsets (Gaussian, standard deviation
/// `magnitude` per component), representing drift the calibration must
/// cancel. Keyed by edge_key().
std::map<std::string, GateParams> make_miscalibration(const DeviceModel& dev, double magnitude,
                                                      std::uint64_t seed);

struct GateCalOptions {
    /// Shallow amplification depths: drifts of several hundredths of a
    /// radian wrap the survival oscillation well before 64 repetitions, so
    /// device calibration amplifies less aggressively than the generic
    /// default_n_list().
    std::vector<int> n_list = {1, 2, 4, 8};
    int shots = 4096;
    std::uint64_t epg_seed = 17;  ///< freezes the sampled cost landscape
    /// Device-tuned schedule: initial proposal scale sqrt(t0) ~ the drift
    /// magnitude, trust region wide enough to reach any plausible offset.
    AnnealOptions anneal{0.004, 0.95, 300, 0.35};
};

struct GateCalResult {
    std::map<std::string, GateParams> params;  ///< optimized point per edge
    std::map<std::string, double> epg_before;
    std::map<std::string, double> epg_after;
    int blocks = 0;  ///< number of concurrency blocks used
};

/// Full-device gate calibration: edges are colored into conflict-free
/// blocks, blocks run sequentially, and every edge within a block is
/// annealed concurrently against its own frozen EPG landscape. Writes the
/// optimized parameters into dev.gate_params and the achieved EPG into the
/// per-edge cx error override (floored at the device's per-kind cx error,
/// since tuning the pulse parameters cannot remove incoherent error), so
/// downstream simulation and layout scoring see the calibrated rates.
GateCalResult calibrate_device(DeviceModel& dev,
                               const std::map<std::string, GateParams>& offsets,
                               const GateCalOptions& opt, std::uint64_t seed);

}  // namespace quell

#endif
