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

#ifndef QUELL_TESTS_TEST_UTIL_HPP
#define QUELL_TESTS_TEST_UTIL_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "quell/circuit.hpp"
#include "quell/device.hpp"
#include "quell/distribution.hpp"
#include "quell/rng.hpp"
#include "quell/schedule.hpp"

namespace quell::testutil {

/// Line-coupled synthetic device with uniform parameters. Tests use it
/// wherever they need one noise term isolated: every rate defaults to zero
/// (and lifetimes to infinity) so the caller enables exactly what the test
/// is about. Times are microseconds here, matching the JSON schema.
inline DeviceModel line_device(int n, double t1_us = INFINITY, double t2_us = INFINITY,
                               double zz_rad_us = 0.0, double err_1q = 0.0, double err_cx = 0.0,
                               double e01 = 0.0, double e10 = 0.0) {
    DeviceModel dev;
    dev.name = "line" + std::to_string(n);
    dev.synthetic = true;
    dev.num_qubits = n;
    for (int q = 0; q + 1 < n; ++q) dev.edges.emplace_back(q, q + 1);
    dev.t1_ns.assign(n, t1_us * 1000.0);
    dev.t2_ns.assign(n, t2_us * 1000.0);
    dev.durations_ns = {{"rz", 0},   {"sx", 20},      {"x", 20},      {"cx", 300},
                        {"u2q", 300}, {"measure", 400}, {"barrier", 0}};
    dev.gate_error = {
        {"rz", 0.0}, {"sx", err_1q}, {"x", err_1q}, {"cx", err_cx}, {"u2q", err_cx}};
    dev.zz_default_rad_ns = zz_rad_us / 1000.0;
    dev.readout_error.assign(n, {e01, e10});
    dev.validate();
    return dev;
}

/// Copy of a circuit with MEASURE directives removed, for unitary_of.
inline Circuit unitary_part(const Circuit& c) {
    Circuit out(c.num_qubits, 0);
    for (const Gate& g : c.gates)
        if (g.kind != GateKind::MEASURE) out.add(g);
    return out;
}

/// Haar-random U(4) as a row-major 16-entry vector (QR of a complex
/// Gaussian matrix with the R diagonal's phases folded back into Q). Global
/// phase is irrelevant to every consumer, so no determinant fix-up.
inline std::vector<std::complex<double>> haar_u4(Rng& rng) {
    Eigen::Matrix4cd g;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) g(r, c) = std::complex<double>(rng.normal(), rng.normal());
    Eigen::HouseholderQR<Eigen::Matrix4cd> qr(g);
    Eigen::Matrix4cd q = qr.householderQ();
    const Eigen::Matrix4cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < 4; ++c) q.col(c) *= r(c, c) / std::abs(r(c, c));
    std::vector<std::complex<double>> out;
    out.reserve(16);
    for (int row = 0; row < 4; ++row)
        for (int col = 0; col < 4; ++col) out.push_back(q(row, col));
    return out;
}

/// Haar-random U(2), same construction, row-major 4 entries.
inline std::vector<std::complex<double>> haar_u2(Rng& rng) {
    Eigen::Matrix2cd g;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) g(r, c) = std::complex<double>(rng.normal(), rng.normal());
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(g);
    Eigen::Matrix2cd q = qr.householderQ();
    const Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < 2; ++c) q.col(c) *= r(c, c) / std::abs(r(c, c));
    return {q(0, 0), q(0, 1), q(1, 0), q(1, 1)};
}

/// Total-variation distance between two distributions over the union of
/// their supports.
inline double tv_distance(const Distribution& a, const Distribution& b) {
    double acc = 0.0;
    for (const auto& [s, p] : a.probs) acc += std::abs(p - b.prob(s));
    for (const auto& [s, p] : b.probs)
        if (a.probs.find(s) == a.probs.end()) acc += p;
    return 0.5 * acc;
}

/// Ramsey-style schedule: every qubit 0..nq-1 gets an H block (rz, sx, rz in
/// native form), a shared idle gap of tau_ns, a second H block, and a
/// measurement into its own clbit. Built with explicit start times so the
/// idle window is exactly [20, 20 + tau_ns) on every qubit — the scheduler
/// would pack the gap away. Assumes 20 ns sx and 400 ns measure.
inline ScheduledCircuit ramsey_schedule(int nq, std::int64_t tau_ns) {
    const double half_pi = 1.5707963267948966;
    ScheduledCircuit sc;
    sc.num_qubits = nq;
    sc.num_clbits = nq;
    auto put = [&sc](Gate g, std::int64_t start, std::int64_t dur) {
        sc.timed.push_back({std::move(g), start, dur});
    };
    const std::int64_t t1 = 20 + tau_ns;  // start of the second H block
    for (int q = 0; q < nq; ++q) {
        put(Gate::rz(q, half_pi), 0, 0);
        put(Gate::sx(q), 0, 20);
        put(Gate::rz(q, half_pi), 20, 0);
        put(Gate::rz(q, half_pi), t1, 0);
        put(Gate::sx(q), t1, 20);
        put(Gate::rz(q, half_pi), t1 + 20, 0);
        put(Gate::measure(q, q), t1 + 20, 400);
    }
    sc.total_duration = t1 + 20 + 400;
    sc.recompute_views();
    return sc;
}

/// Single-qubit <X> read off a Ramsey output: the final H maps X onto Z, so
/// it is P(clbit = 0) - P(clbit = 1).
inline double expect_x(const Distribution& d, int clbit) {
    const Distribution m = marginal(d, {clbit});
    return m.prob("0") - m.prob("1");
}

/// Random logical circuit over {H, X, SX, RZ, CX} with a trailing
/// full-register measurement, for transpiler equivalence sweeps.
inline Circuit random_logical_circuit(Rng& rng, int nq, int n_gates) {
    Circuit c(nq, nq);
    for (int i = 0; i < n_gates; ++i) {
        switch (rng.below(5)) {
            case 0: c.add(Gate::h(static_cast<int>(rng.below(nq)))); break;
            case 1: c.add(Gate::x(static_cast<int>(rng.below(nq)))); break;
            case 2: c.add(Gate::sx(static_cast<int>(rng.below(nq)))); break;
            case 3:
                c.add(Gate::rz(static_cast<int>(rng.below(nq)),
                               rng.uniform() * 6.283185307179586));
                break;
            default: {
                const int a = static_cast<int>(rng.below(nq));
                int b = static_cast<int>(rng.below(nq - 1));
                if (b >= a) ++b;
                c.add(Gate::cx(a, b));
                break;
            }
        }
    }
    for (int q = 0; q < nq; ++q) c.add(Gate::measure(q, q));
    return c;
}

/// Largest amplitude deviation between a routed physical circuit and the
/// logical circuit it claims to implement, after accounting for the entry
/// placement `v2p`, the exit placement `final_pos`, and one global phase.
///
/// For every logical basis input x the routed unitary is applied to the
/// physical basis state carrying x at the entry placement (all other
/// physical qubits |0>), and the result is compared against the logical
/// column re-embedded at the exit placement. Unmapped physical qubits must
/// come back to |0> — SWAP networks only ever permute them — so any leakage
/// shows up as a deviation too.
inline double routing_deviation(const Circuit& logical, const Circuit& routed,
                                const std::vector<int>& v2p, const std::vector<int>& final_pos,
                                const Eigen::MatrixXcd& logical_u, const Eigen::MatrixXcd& routed_u) {
    const int nv = logical.num_qubits;
    const long dim_v = 1L << nv;
    const long dim_p = routed_u.rows();
    Eigen::MatrixXcd actual(dim_p, dim_v);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(dim_p, dim_v);
    for (long x = 0; x < dim_v; ++x) {
        long in_idx = 0;
        for (int v = 0; v < nv; ++v)
            if (x >> v & 1) in_idx |= 1L << v2p[static_cast<std::size_t>(v)];
        actual.col(x) = routed_u.col(in_idx);
        for (long z = 0; z < dim_v; ++z) {
            long out_idx = 0;
            for (int v = 0; v < nv; ++v)
                if (z >> v & 1) out_idx |= 1L << final_pos[static_cast<std::size_t>(v)];
            expected(out_idx, x) = logical_u(z, x);
        }
    }
    // Fit the single global phase on the largest expected entry.
    long rmax = 0, cmax = 0;
    expected.cwiseAbs().maxCoeff(&rmax, &cmax);
    const std::complex<double> lambda = actual(rmax, cmax) / expected(rmax, cmax);
    return (actual - lambda * expected).cwiseAbs().maxCoeff();
}

}  // namespace quell::testutil

#endif
