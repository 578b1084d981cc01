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

// Trajectory simulator: exact mode, sampled mode, the individual noise
// channels against their analytic laws, and the bit-for-bit agreement
// between serial and parallel execution.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "quell/device.hpp"
#include "quell/errors.hpp"
#include "quell/generators.hpp"
#include "quell/schedule.hpp"
#include "quell/sim.hpp"
#include "quell/transpile.hpp"
#include "quell/unitary.hpp"
#include "test_util.hpp"

using namespace quell;
using testutil::line_device;
using testutil::ramsey_schedule;
using testutil::tv_distance;
using testutil::unitary_part;

namespace {

// 4-sigma binomial tolerance for a probability estimated from n shots.
double tol4(double p, double n) { return 4.0 * std::sqrt(p * (1.0 - p) / n); }

ScheduledCircuit asap(const Circuit& c, const DeviceModel& dev) {
    return schedule_asap(c, dev);
}

}  // namespace

TEST_CASE("exact distribution reproduces textbook states") {
    SUBCASE("bell pair") {
        Circuit c(2, 2);
        c.add(Gate::h(0)).add(Gate::cx(0, 1));
        c.add(Gate::measure(0, 0)).add(Gate::measure(1, 1));
        const Distribution d = exact_distribution(c);
        CHECK(d.shots == 0);
        CHECK(d.prob("00") == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(d.prob("11") == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(d.prob("01") == 0.0);
    }
    SUBCASE("bit placement follows the clbit order") {
        Circuit c(3, 3);
        c.add(Gate::x(2));
        for (int q = 0; q < 3; ++q) c.add(Gate::measure(q, q));
        // Character i of the bitstring is clbit i.
        CHECK(exact_distribution(c).prob("001") == doctest::Approx(1.0));
    }
    SUBCASE("unmeasured clbits read zero") {
        Circuit c(2, 3);
        c.add(Gate::x(0)).add(Gate::measure(0, 2));
        CHECK(exact_distribution(c).prob("001") == doctest::Approx(1.0));
    }
}

TEST_CASE("statevector uses little-endian amplitude indices") {
    Circuit c(2, 0);
    c.add(Gate::x(1));
    const auto amp = statevector(c);
    REQUIRE(amp.size() == 4);
    CHECK(std::abs(amp[2] - std::complex<double>(1.0, 0.0)) < 1e-12);

    Circuit h(1, 0);
    h.add(Gate::h(0));
    const auto plus = statevector(h);
    CHECK(std::abs(plus[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(plus[1] - 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("statevector agrees with the dense reference") {
    Rng rng(11);
    for (int trial = 0; trial < 8; ++trial) {
        const Circuit c = unitary_part(testutil::random_logical_circuit(rng, 4, 20));
        const auto amp = statevector(c);
        const Eigen::MatrixXcd u = unitary_of(c);
        for (int i = 0; i < 16; ++i)
            CHECK(std::abs(amp[static_cast<std::size_t>(i)] - u(i, 0)) < 1e-12);
    }
}

TEST_CASE("sampling a noiseless device converges to the exact law") {
    const DeviceModel dev = line_device(2);
    Circuit c(2, 2);
    c.add(Gate::h(0)).add(Gate::cx(0, 1));
    c.add(Gate::measure(0, 0)).add(Gate::measure(1, 1));
    const Circuit native = to_native(c);

    SimOptions opts;
    opts.shots = 4096;
    opts.seed = 9;
    const Distribution d = simulate(asap(native, dev), dev, opts);
    std::int64_t total = 0;
    for (const auto& [s, n] : d.counts) total += n;
    CHECK(total == 4096);
    CHECK(tv_distance(d, exact_distribution(c)) < 0.03);
}

TEST_CASE("serial and parallel execution agree bit for bit") {
    const DeviceModel dev = DeviceModel::load(std::string(QUELL_DATA_DIR) + "/hex16.json");
    const Circuit native = to_native(gen_bv(6));
    const RouteResult rr = route(native, dev, Layout::identity(6));
    const ScheduledCircuit sc = asap(rr.circuit, dev);

    SimOptions serial{2048, 5, ExecPolicy::Serial};
    SimOptions parallel{2048, 5, ExecPolicy::OpenMP};
    const Distribution a = simulate(sc, dev, serial);
    const Distribution b = simulate(sc, dev, parallel);
    REQUIRE(a.counts == b.counts);

    // Re-running with the same options reproduces the counts; a different
    // seed must not.
    CHECK(simulate(sc, dev, serial).counts == a.counts);
    SimOptions other{2048, 6, ExecPolicy::OpenMP};
    CHECK(simulate(sc, dev, other).counts != a.counts);
}

TEST_CASE("amplitude damping follows the exponential law") {
    // X at t=0, measure after one T1 of idle time: survival e^{-1}. T2 is
    // pinned at 2*T1 so pure dephasing is off.
    const double t1_us = 50.0;
    const DeviceModel dev = line_device(2, t1_us, 2.0 * t1_us);
    ScheduledCircuit sc;
    sc.num_qubits = 2;
    sc.num_clbits = 1;
    const std::int64_t tau = static_cast<std::int64_t>(t1_us * 1000.0);
    sc.timed.push_back({Gate::x(0), 0, 20});
    sc.timed.push_back({Gate::measure(0, 0), 20 + tau, 400});
    sc.total_duration = 20 + tau + 400;
    sc.recompute_views();

    SimOptions opts;
    opts.shots = 40000;
    opts.seed = 21;
    const Distribution d = simulate(sc, dev, opts);
    const double want = std::exp(-1.0);
    CHECK(std::abs(d.prob("1") - want) < tol4(want, 40000));
}

TEST_CASE("dephasing damps coherence at the documented rate") {
    // Ramsey on one qubit: <X> decays as exp(-tau/Tphi) with
    // 1/Tphi = 1/T2 - 1/(2 T1). T1 is infinite here, so Tphi = T2 = 40 us.
    const DeviceModel dev = line_device(2, INFINITY, 40.0);
    const std::int64_t tau = 20000;  // 20 us = T2/2
    const ScheduledCircuit sc = ramsey_schedule(1, tau);
    ScheduledCircuit wide = sc;
    wide.num_qubits = 2;
    wide.recompute_views();

    SimOptions opts;
    opts.shots = 40000;
    opts.seed = 22;
    const Distribution d = simulate(wide, dev, opts);
    const double want = std::exp(-0.5);
    const double got = testutil::expect_x(d, 0);
    CHECK(std::abs(got - want) < 2.0 * tol4((1.0 + want) / 2.0, 40000));
}

TEST_CASE("coupled idles accumulate the exact zz phase") {
    // Two |+> qubits share a 400 ns idle with zeta*tau = pi. In exact mode
    // the sampled machinery is bypassed entirely, so the output must match
    // the dense oracle H (x) H . exp(-i pi/2 Z(x)Z) . H (x) H to 1e-9.
    const double zeta_rad_us = 1000.0 * 3.14159265358979323846 / 400.0;
    const DeviceModel dev = line_device(2, INFINITY, INFINITY, zeta_rad_us);
    const ScheduledCircuit sc = ramsey_schedule(2, 400);

    SimOptions opts;
    opts.shots = 0;
    const Distribution d = simulate(sc, dev, opts);

    // Oracle: the same native H blocks around the diagonal coupling phase.
    Circuit hh(2, 0);
    const double half_pi = 1.5707963267948966;
    for (int q = 0; q < 2; ++q)
        hh.add(Gate::rz(q, half_pi)).add(Gate::sx(q)).add(Gate::rz(q, half_pi));
    const Eigen::MatrixXcd m = unitary_of(hh);
    Eigen::Vector4cd zz;
    const std::complex<double> i(0.0, 1.0);
    const double phi = 3.14159265358979323846;
    zz << std::exp(-i * (phi / 2.0)), std::exp(i * (phi / 2.0)), std::exp(i * (phi / 2.0)),
        std::exp(-i * (phi / 2.0));
    const Eigen::Vector4cd psi = m * (zz.asDiagonal() * (m * Eigen::Vector4cd(1, 0, 0, 0)));

    // Basis index bit q is qubit q; clbit q is qubit q too.
    const std::string keys[4] = {"00", "10", "01", "11"};
    for (int k = 0; k < 4; ++k) CHECK(std::abs(d.prob(keys[k]) - std::norm(psi(k))) < 1e-9);
}

TEST_CASE("gate errors inject uniform non-identity paulis") {
    // A single CX with error 0.2 on |00>: 3 of the 15 Paulis are purely
    // diagonal, 4 flip only the control, 4 only the target, 4 both.
    const DeviceModel dev = line_device(2, INFINITY, INFINITY, 0.0, 0.0, 0.2);
    Circuit c(2, 2);
    c.add(Gate::cx(0, 1));
    c.add(Gate::measure(0, 0)).add(Gate::measure(1, 1));

    SimOptions opts;
    opts.shots = 8192;
    opts.seed = 23;
    const Distribution d = simulate(asap(c, dev), dev, opts);
    const double n = 8192.0;
    CHECK(std::abs(d.prob("00") - (0.8 + 0.2 * 3.0 / 15.0)) < tol4(0.84, n));
    CHECK(std::abs(d.prob("10") - 0.2 * 4.0 / 15.0) < tol4(0.2 * 4.0 / 15.0, n));
    CHECK(std::abs(d.prob("01") - 0.2 * 4.0 / 15.0) < tol4(0.2 * 4.0 / 15.0, n));
    CHECK(std::abs(d.prob("11") - 0.2 * 4.0 / 15.0) < tol4(0.2 * 4.0 / 15.0, n));
}

TEST_CASE("readout flips follow the confusion matrix") {
    const DeviceModel dev = line_device(2, INFINITY, INFINITY, 0.0, 0.0, 0.0, 0.3, 0.1);
    SimOptions opts;
    opts.shots = 20000;
    opts.seed = 24;

    SUBCASE("prepared zero misreads at e01") {
        Circuit c(2, 1);
        c.add(Gate::measure(0, 0));
        const Distribution d = simulate(asap(c, dev), dev, opts);
        CHECK(std::abs(d.prob("1") - 0.3) < tol4(0.3, 20000.0));
    }
    SUBCASE("prepared one misreads at e10") {
        Circuit c(2, 1);
        c.add(Gate::x(0)).add(Gate::measure(0, 0));
        const Distribution d = simulate(asap(c, dev), dev, opts);
        CHECK(std::abs(d.prob("0") - 0.1) < tol4(0.1, 20000.0));
    }
}

TEST_CASE("exact mode refuses stochastic devices") {
    SimOptions exact;
    exact.shots = 0;

    Circuit c(2, 2);
    c.add(Gate::h(0)).add(Gate::cx(0, 1));
    c.add(Gate::measure(0, 0)).add(Gate::measure(1, 1));

    SUBCASE("readout error") {
        const DeviceModel dev = line_device(2, INFINITY, INFINITY, 0.0, 0.0, 0.0, 0.02, 0.03);
        CHECK_THROWS_AS(simulate(asap(to_native(c), dev), dev, exact), validation_error);
    }
    SUBCASE("gate error") {
        const DeviceModel dev = line_device(2, INFINITY, INFINITY, 0.0, 1e-4, 1e-3);
        CHECK_THROWS_AS(simulate(asap(to_native(c), dev), dev, exact), validation_error);
    }
    SUBCASE("finite lifetimes with an idle window") {
        const DeviceModel dev = line_device(2, 100.0, 150.0);
        const ScheduledCircuit sc = ramsey_schedule(2, 400);
        CHECK_THROWS_AS(simulate(sc, dev, exact), validation_error);
    }
    SUBCASE("noiseless passes") {
        const DeviceModel dev = line_device(2);
        CHECK_NOTHROW(simulate(asap(to_native(c), dev), dev, exact));
    }
}

TEST_CASE("simulate validates its inputs") {
    const DeviceModel dev = line_device(2);
    Circuit c(2, 0);
    c.add(Gate::x(0));
    // No classical bits: nothing to sample.
    CHECK_THROWS_AS(simulate(asap(c, dev), dev, SimOptions{}), validation_error);

    Circuit wide(3, 1);
    wide.add(Gate::x(2)).add(Gate::measure(2, 0));
    ScheduledCircuit sc;
    sc.num_qubits = 3;
    sc.num_clbits = 1;
    sc.timed.push_back({Gate::x(2), 0, 20});
    sc.timed.push_back({Gate::measure(2, 0), 20, 400});
    sc.total_duration = 420;
    sc.recompute_views();
    // Circuit is wider than the 2-qubit device.
    CHECK_THROWS_AS(simulate(sc, dev, SimOptions{}), validation_error);
}
