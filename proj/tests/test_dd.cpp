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

// Scheduling and dynamical decoupling. The refocusing arithmetic is exact
// for dyadic pulse positions, so several checks below compare doubles with
// operator== on purpose.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "quell/circuit.hpp"
#include "quell/dd.hpp"
#include "quell/errors.hpp"
#include "quell/schedule.hpp"
#include "quell/sim.hpp"
#include "quell/transpile.hpp"
#include "quell/unitary.hpp"
#include "test_util.hpp"

using namespace quell;
using testutil::line_device;
using testutil::ramsey_schedule;
using testutil::unitary_part;

namespace {

const std::vector<double> kEcho = {0.25, 0.75};
const std::vector<double> kFour = {0.125, 0.375, 0.625, 0.875};

int count_x_pulses(const ScheduledCircuit& sc) {
    int n = 0;
    for (const TimedGate& tg : sc.timed)
        if (tg.gate.kind == GateKind::X) ++n;
    return n;
}

}  // namespace

TEST_CASE("residual zz phase is exact on dyadic sequences") {
    CHECK(residual_zz_phase({}, {}) == 1.0);
    CHECK(residual_zz_phase(kEcho, kEcho) == 1.0);
    CHECK(residual_zz_phase(kFour, kFour) == 1.0);

    // The staggered two/four-pulse pair integrates to exactly zero; so does
    // an echo against an undecoupled neighbor.
    CHECK(residual_zz_phase(kEcho, kFour) == 0.0);
    CHECK(residual_zz_phase(kFour, kEcho) == 0.0);
    CHECK(residual_zz_phase(kEcho, {}) == 0.0);
    CHECK(residual_zz_phase({0.5}, {}) == 0.0);
    CHECK(residual_zz_phase({0.5}, kEcho) == 0.0);
}

TEST_CASE("asap schedule starts gates at operand readiness") {
    const DeviceModel dev = line_device(3);
    Circuit c(3, 3);
    c.add(Gate::x(0)).add(Gate::x(0));        // q0 busy until 40
    c.add(Gate::sx(1));                       // q1 free at 20
    c.add(Gate::cx(0, 1));                    // must wait for q0
    c.add(Gate::measure(0, 0)).add(Gate::measure(1, 1));
    const ScheduledCircuit sc = schedule_asap(c, dev);

    // x: [0,20) [20,40); sx: [0,20); cx: [40,340); measures: [340,740).
    REQUIRE(sc.timed.size() == 6);
    CHECK(sc.timed[0].start == 0);
    CHECK(sc.timed[3].gate.kind == GateKind::CX);
    CHECK(sc.timed[3].start == 40);
    CHECK(sc.timed[3].duration == 300);
    CHECK(sc.total_duration == 740);

    // q1 idles between its sx and the cx.
    REQUIRE(sc.idle_windows[1].size() == 1);
    CHECK(sc.idle_windows[1][0] == IdleWindow{20, 40});
    CHECK(sc.idle_windows[0].empty());

    CHECK(sc.first_op_start[1] == 0);
    CHECK(sc.active_end[1] == 340);  // at its measure start
    CHECK(sc.first_op_start[2] == -1);
    CHECK(sc.active_end[2] == -1);
}

TEST_CASE("barrier synchronizes every qubit at zero width") {
    const DeviceModel dev = line_device(2);
    Circuit c(2, 2);
    c.add(Gate::x(0)).add(Gate::barrier()).add(Gate::sx(1));
    c.add(Gate::measure(0, 0)).add(Gate::measure(1, 1));
    const ScheduledCircuit sc = schedule_asap(c, dev);
    // The sx on q1 cannot start before the barrier at t=20.
    for (const TimedGate& tg : sc.timed)
        if (tg.gate.kind == GateKind::SX) CHECK(tg.start == 20);
}

TEST_CASE("schedule rejects gates without a duration entry") {
    DeviceModel dev = line_device(2);
    dev.durations_ns.erase("sx");
    Circuit c(2, 0);
    c.add(Gate::sx(0));
    CHECK_THROWS_AS(schedule_asap(c, dev), validation_error);
}

TEST_CASE("uniform plan echoes every eligible window") {
    const DeviceModel dev = line_device(2);

    SUBCASE("standard window gets the two-pulse echo") {
        const ScheduledCircuit sc = ramsey_schedule(2, 400);
        const DdPlan plan = plan_uniform(sc, dev);
        REQUIRE(plan.entries.size() == 2);
        for (const auto& e : plan.entries) {
            CHECK(e.window == IdleWindow{20, 420});
            CHECK(e.fractions == kEcho);
        }
    }
    SUBCASE("short windows are left alone") {
        // 60 ns < 4 pulse widths: nothing fits cleanly.
        const ScheduledCircuit sc = ramsey_schedule(2, 60);
        CHECK(plan_uniform(sc, dev).entries.empty());
    }
    SUBCASE("long windows get the doubled sequence") {
        // >= 10x the minimum window: the echo is repeated in both halves.
        const ScheduledCircuit sc = ramsey_schedule(2, 1000);
        const DdPlan plan = plan_uniform(sc, dev);
        REQUIRE(plan.entries.size() == 2);
        CHECK(plan.entries[0].fractions == kFour);
    }
}

TEST_CASE("staggered plan separates coupled neighbors") {
    const DeviceModel dev = line_device(3, INFINITY, INFINITY, 0.05);
    const ScheduledCircuit sc = ramsey_schedule(3, 400);
    const DdPlan plan = plan_dd(sc, dev);
    REQUIRE(plan.entries.size() == 3);
    REQUIRE(plan.color.size() == 3);

    // Proper 2-coloring of the line: ends agree, middle differs.
    CHECK(plan.color[0] != plan.color[1]);
    CHECK(plan.color[1] != plan.color[2]);

    // Any properly colored edge refocuses exactly.
    std::vector<std::vector<double>> fr(3);
    for (const auto& e : plan.entries) fr[static_cast<std::size_t>(e.qubit)] = e.fractions;
    CHECK(residual_zz_phase(fr[0], fr[1]) == 0.0);
    CHECK(residual_zz_phase(fr[1], fr[2]) == 0.0);
}

TEST_CASE("inactive qubits get no sequence class") {
    const DeviceModel dev = line_device(3);
    const ScheduledCircuit sc = ramsey_schedule(2, 400);  // q2 untouched
    ScheduledCircuit wide = sc;
    wide.num_qubits = 3;
    wide.recompute_views();
    const DdPlan plan = plan_dd(wide, dev);
    REQUIRE(plan.color.size() == 3);
    CHECK(plan.color[2] == -1);
}

TEST_CASE("embedding inserts centered pulses without moving gates") {
    const DeviceModel dev = line_device(2);
    const ScheduledCircuit sc = ramsey_schedule(2, 400);
    const DdPlan plan = plan_dd(sc, dev);
    const ScheduledCircuit out = embed_dd(sc, dev, plan);

    // Every original operation survives at its original start time.
    for (const TimedGate& tg : sc.timed) {
        bool found = false;
        for (const TimedGate& og : out.timed)
            if (og.gate == tg.gate && og.start == tg.start) found = true;
        CHECK(found);
    }

    int want = 0;
    for (const auto& e : plan.entries) want += static_cast<int>(e.fractions.size());
    CHECK(count_x_pulses(out) == want);

    // The window [20,420) is split around the inserted pulses: a two-pulse
    // qubit ends up with three sub-windows, a four-pulse one with five.
    for (const auto& e : plan.entries) {
        const auto& wins = out.idle_windows[static_cast<std::size_t>(e.qubit)];
        CHECK(wins.size() == e.fractions.size() + 1);
    }

    // Pulse pairs multiply to the identity, so the circuit unitary is
    // untouched (2 qubits: dense comparison is cheap).
    const Eigen::MatrixXcd a = unitary_of(unitary_part(sc.to_circuit()));
    const Eigen::MatrixXcd b = unitary_of(unitary_part(out.to_circuit()));
    CHECK(phase_aligned_distance(a, b) < 1e-12);
}

TEST_CASE("embedding rejects pulses that do not fit their window") {
    const DeviceModel dev = line_device(2);
    const ScheduledCircuit sc = ramsey_schedule(2, 400);

    DdPlan plan;
    plan.color = {0, -1};
    plan.entries.push_back({0, IdleWindow{20, 420}, {0.995}});  // runs past the end
    CHECK_THROWS_AS(embed_dd(sc, dev, plan), stage_error);

    plan.entries[0].fractions = {0.01};  // starts before the window
    CHECK_THROWS_AS(embed_dd(sc, dev, plan), stage_error);
}

TEST_CASE("staggered embedding cancels the shared zz phase") {
    // Pure-ZZ pair: lifetimes infinite, gates and readout error-free, and
    // the accumulated angle over the 400 ns gap is exactly pi. Without
    // decoupling |++> picks up the full cross phase and the closing
    // Hadamards map it to "11"; with the staggered pair embedded the signed
    // segment lengths cancel termwise and the state returns to "00".
    const double zeta_rad_us = 1000.0 * 3.14159265358979323846 / 400.0;
    const DeviceModel dev = line_device(2, INFINITY, INFINITY, zeta_rad_us);
    const ScheduledCircuit sc = ramsey_schedule(2, 400);
    SimOptions opts;
    opts.shots = 0;  // exact mode: nothing stochastic in this device

    const Distribution bare = simulate(sc, dev, opts);
    CHECK(bare.prob("11") == doctest::Approx(1.0).epsilon(1e-9));

    const ScheduledCircuit dd = embed_dd(sc, dev, plan_dd(sc, dev));
    const Distribution kept = simulate(dd, dev, opts);
    CHECK(kept.prob("00") >= 1.0 - 1e-9);
}
