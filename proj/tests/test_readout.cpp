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

// Tensored readout mitigation: grouping, joint calibration, and unfolding.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "quell/device.hpp"
#include "quell/errors.hpp"
#include "quell/metrics.hpp"
#include "quell/readout.hpp"
#include "quell/schedule.hpp"
#include "quell/sim.hpp"
#include "quell/transpile.hpp"
#include "test_util.hpp"

using namespace quell;
using testutil::line_device;

namespace {

// Sampling executor bound to one device; advances its seed per call so
// calibration circuits do not share trajectories.
ExecuteFn sampler(const DeviceModel& dev, std::int64_t shots, std::uint64_t seed0) {
    auto seed = std::make_shared<std::uint64_t>(seed0);
    return [&dev, shots, seed](const Circuit& c) {
        SimOptions opts;
        opts.shots = shots;
        opts.seed = (*seed)++;
        return simulate(schedule_asap(c, dev), dev, opts);
    };
}

// Single-qubit confusion column entries for uniform (e01, e10) devices.
double conf1(int obs, int prep, double e01, double e10) {
    if (prep == 0) return obs == 0 ? 1.0 - e01 : e01;
    return obs == 1 ? 1.0 - e10 : e10;
}

}  // namespace

TEST_CASE("grouping follows coupling edges up to the size cap") {
    const DeviceModel dev = DeviceModel::load(std::string(QUELL_DATA_DIR) + "/hex16.json");

    SUBCASE("pairs along a chain") {
        const auto g = choose_groups(dev, {0, 1, 2, 3}, 2);
        REQUIRE(g.size() == 2);
        CHECK(g[0] == std::vector<int>{0, 1});
        CHECK(g[1] == std::vector<int>{2, 3});
    }
    SUBCASE("cap one forces singletons") {
        const auto g = choose_groups(dev, {0, 1, 2, 3}, 1);
        REQUIRE(g.size() == 4);
        for (int i = 0; i < 4; ++i) CHECK(g[static_cast<std::size_t>(i)] == std::vector<int>{i});
    }
    SUBCASE("disconnected qubits stay alone even under a large cap") {
        // Of the odd qubits only 3-5 are coupled; nothing else neighbors
        // anything else in the set.
        const auto g = choose_groups(dev, {1, 3, 5, 7, 9, 11}, 3);
        REQUIRE(g.size() == 5);
        CHECK(g[0] == std::vector<int>{1});
        CHECK(g[1] == std::vector<int>{3, 5});
        CHECK(g[2] == std::vector<int>{7});
        CHECK(g[3] == std::vector<int>{9});
        CHECK(g[4] == std::vector<int>{11});
    }
    SUBCASE("invalid requests are rejected") {
        CHECK_THROWS_AS(choose_groups(dev, {0, 1}, 0), validation_error);
        CHECK_THROWS_AS(choose_groups(dev, {0, 99}, 2), validation_error);
    }
}

TEST_CASE("calibration runs one circuit per joint basis pattern") {
    const DeviceModel dev = line_device(5, INFINITY, INFINITY, 0.0, 0.0, 0.0, 0.05, 0.03);
    const std::vector<std::vector<int>> groups{{0, 1}, {2, 3}, {4}};

    int calls = 0;
    ExecuteFn counting = [&](const Circuit& c) {
        ++calls;
        // Every calibration circuit measures exactly the union of the groups.
        int measures = 0;
        for (const auto& g : c.gates)
            if (g.kind == GateKind::MEASURE) ++measures;
        CHECK(measures == 5);
        SimOptions opts;
        opts.shots = 2000;
        opts.seed = static_cast<std::uint64_t>(calls);
        return simulate(schedule_asap(c, dev), dev, opts);
    };

    const ReadoutCalibration cal = calibrate_readout(dev, groups, counting);
    CHECK(calls == 4);  // 2^max|G| patterns, not 2^5
    CHECK(cal.groups == groups);
    REQUIRE(cal.confusion.size() == 3);
    CHECK(cal.confusion[0].size() == 16);
    CHECK(cal.confusion[1].size() == 16);
    CHECK(cal.confusion[2].size() == 4);
    CHECK(cal.device_hash == dev.content_hash());
}

TEST_CASE("estimated confusion matches the device's tensor-product truth") {
    const double e01 = 0.07, e10 = 0.04;
    const DeviceModel dev = line_device(4, INFINITY, INFINITY, 0.0, 0.0, 0.0, e01, e10);
    const std::vector<std::vector<int>> groups{{0, 1}, {2, 3}};
    const ReadoutCalibration cal = calibrate_readout(dev, groups, sampler(dev, 200000, 31));

    for (const auto& m : cal.confusion) {
        REQUIRE(m.size() == 16);
        for (int obs = 0; obs < 4; ++obs)
            for (int prep = 0; prep < 4; ++prep) {
                const double want = conf1(obs & 1, prep & 1, e01, e10) *
                                    conf1((obs >> 1) & 1, (prep >> 1) & 1, e01, e10);
                CHECK(std::abs(m[static_cast<std::size_t>(obs * 4 + prep)] - want) < 0.01);
            }
    }
}

TEST_CASE("unfolding inverts a known single-qubit confusion") {
    // C = [[0.9, 0.2], [0.1, 0.8]] applied to p = (0.7, 0.3) measures
    // q = (0.69, 0.31); the constrained solve must recover p.
    ReadoutCalibration cal;
    cal.groups = {{0}};
    cal.confusion = {{0.9, 0.2, 0.1, 0.8}};
    const Distribution q = Distribution::from_probs(1, {{"0", 0.69}, {"1", 0.31}});
    const Distribution p = mitigate_readout(q, cal, {0});
    CHECK(std::abs(p.prob("0") - 0.7) < 1e-5);
    CHECK(std::abs(p.prob("1") - 0.3) < 1e-5);
}

TEST_CASE("unfolding is exact on product distributions across groups") {
    ReadoutCalibration cal;
    cal.groups = {{0}, {1}};
    cal.confusion = {{0.95, 0.1, 0.05, 0.9}, {0.85, 0.15, 0.15, 0.85}};
    // True marginals (0.6, 0.4) and (0.9, 0.1); measured marginals are
    // C0 p0 = (0.61, 0.39) and C1 p1 = (0.78, 0.22).
    const Distribution q = Distribution::from_probs(2, {{"00", 0.61 * 0.78},
                                                        {"10", 0.39 * 0.78},
                                                        {"01", 0.61 * 0.22},
                                                        {"11", 0.39 * 0.22}});
    const Distribution p = mitigate_readout(q, cal, {0, 1});
    CHECK(std::abs(p.prob("00") - 0.6 * 0.9) < 1e-5);
    CHECK(std::abs(p.prob("10") - 0.4 * 0.9) < 1e-5);
    CHECK(std::abs(p.prob("01") - 0.6 * 0.1) < 1e-5);
    CHECK(std::abs(p.prob("11") - 0.4 * 0.1) < 1e-5);
}

TEST_CASE("mitigation shrinks the Hellinger loss of a noisy bell pair") {
    const DeviceModel dev = line_device(2, INFINITY, INFINITY, 0.0, 0.0, 0.0, 0.08, 0.05);
    const ReadoutCalibration cal =
        calibrate_readout(dev, choose_groups(dev, {0, 1}, 2), sampler(dev, 200000, 7));

    Circuit bell(2, 2);
    bell.add(Gate::h(0)).add(Gate::cx(0, 1));
    bell.add(Gate::measure(0, 0)).add(Gate::measure(1, 1));
    const Circuit native = to_native(bell);

    SimOptions opts;
    opts.shots = 40000;
    opts.seed = 12;
    const Distribution raw = simulate(schedule_asap(native, dev), dev, opts);
    const Distribution mit = mitigate_readout(raw, cal, {0, 1});

    const Distribution ideal =
        Distribution::from_probs(2, {{"00", 0.5}, {"11", 0.5}});
    const double h_raw = hellinger_loss(raw, ideal);
    const double h_mit = hellinger_loss(mit, ideal);
    CHECK(h_mit < 0.5 * h_raw);
    CHECK(h_mit < 0.05);
}

TEST_CASE("calibration json round-trips") {
    ReadoutCalibration cal;
    cal.groups = {{0, 1}, {3}};
    cal.confusion = {{0.9, 0.05, 0.02, 0.01, 0.04, 0.9, 0.01, 0.02, 0.03, 0.02, 0.95, 0.03,
                      0.03, 0.03, 0.02, 0.94},
                     {0.97, 0.06, 0.03, 0.94}};
    cal.device_hash = "feedc0de00000000";
    const ReadoutCalibration back = ReadoutCalibration::from_json_text(cal.to_json_text());
    CHECK(back.groups == cal.groups);
    CHECK(back.confusion == cal.confusion);
    CHECK(back.device_hash == cal.device_hash);
    CHECK_THROWS_AS(ReadoutCalibration::from_json_text("{\"groups\": [[0]]}"), validation_error);
}

TEST_CASE("mitigation validates group coverage") {
    ReadoutCalibration cal;
    cal.groups = {{0, 1}};
    cal.confusion = {std::vector<double>(16, 0.0)};
    for (int i = 0; i < 4; ++i) cal.confusion[0][static_cast<std::size_t>(i * 4 + i)] = 1.0;

    const Distribution d = Distribution::from_probs(1, {{"0", 1.0}});
    // Clbit 0 reads qubit 0 but qubit 1's column of the group is missing.
    CHECK_THROWS_AS(mitigate_readout(d, cal, {0}), validation_error);
    // Width mismatch between clbit_qubits and the distribution.
    CHECK_THROWS_AS(mitigate_readout(d, cal, {0, 1}), validation_error);
}
