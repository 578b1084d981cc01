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

// Closed-loop gate calibration: the pulse model, the EPG experiment, edge
// coloring, the annealer, and the full-device loop.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quell/device.hpp"
#include "quell/errors.hpp"
#include "quell/gatecal.hpp"
#include "quell/unitary.hpp"

using namespace quell;

namespace {

Eigen::Matrix4cd to_eigen(const std::array<std::complex<double>, 16>& m) {
    Eigen::Matrix4cd out;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out(r, c) = m[static_cast<std::size_t>(r * 4 + c)];
    return out;
}

double mean(const std::map<std::string, double>& m) {
    double s = 0.0;
    for (const auto& [k, v] : m) s += v;
    return s / static_cast<double>(m.size());
}

}  // namespace

TEST_CASE("the ideal pulse point realizes CX exactly") {
    const Eigen::Matrix4cd u = to_eigen(cr_gate_matrix(ideal_cx_params()));

    // Control is the high-order index bit: |10> -> |11>, |11> -> |10>.
    Eigen::Matrix4cd cx = Eigen::Matrix4cd::Zero();
    cx(0, 0) = cx(1, 1) = cx(2, 3) = cx(3, 2) = 1.0;
    CHECK(phase_aligned_distance(u, cx) < 1e-12);

    // The documented global phase is exactly e^{-i pi/4}.
    const std::complex<double> phase = std::exp(std::complex<double>(0.0, -0.25 * M_PI));
    CHECK((u - phase * cx).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pulse parameters move the gate smoothly away from CX") {
    Eigen::Matrix4cd cx = Eigen::Matrix4cd::Zero();
    cx(0, 0) = cx(1, 1) = cx(2, 3) = cx(3, 2) = 1.0;

    GateParams p = ideal_cx_params();
    p.alpha += 0.3;
    const double far = phase_aligned_distance(to_eigen(cr_gate_matrix(p)), cx);
    p.alpha -= 0.2;
    const double near = phase_aligned_distance(to_eigen(cr_gate_matrix(p)), cx);
    CHECK(far > near);
    CHECK(near > 1e-3);
}

TEST_CASE("epg vanishes at zero offset and grows with the drift") {
    const GateParams ideal = ideal_cx_params();
    const GateParams none;
    const double at_zero = epg_estimate(ideal, none, default_n_list(), 8192, 17);
    CHECK(at_zero >= 0.0);
    CHECK(at_zero < 2e-3);  // sampling noise only

    GateParams small, large;
    small.alpha = 0.02;
    large.alpha = 0.15;
    const double e_small = epg_estimate(ideal, small, {1, 2, 4, 8}, 8192, 17);
    const double e_large = epg_estimate(ideal, large, {1, 2, 4, 8}, 8192, 17);
    CHECK(e_small > at_zero);
    CHECK(e_large > e_small);

    CHECK_THROWS_AS(epg_estimate(ideal, none, {4}, 1024, 1), validation_error);
}

TEST_CASE("edge coloring yields conflict-free concurrency blocks") {
    auto touches = [](const std::pair<int, int>& e, int q) {
        return e.first == q || e.second == q;
    };

    SUBCASE("a line needs three blocks because of spectator coupling") {
        const DeviceModel dev = testutil::line_device(5);
        const auto blocks = color_edges(dev);
        REQUIRE(blocks.size() == 3);
        CHECK(blocks[0] == std::vector<std::pair<int, int>>{{0, 1}, {3, 4}});
        CHECK(blocks[1] == std::vector<std::pair<int, int>>{{1, 2}});
        CHECK(blocks[2] == std::vector<std::pair<int, int>>{{2, 3}});
    }

    SUBCASE("the 16-qubit lattice partitions its edges into at most four blocks") {
        const DeviceModel dev = DeviceModel::load(std::string(QUELL_DATA_DIR) + "/hex16.json");
        const auto blocks = color_edges(dev);
        CHECK(blocks.size() <= 4);

        std::set<std::pair<int, int>> seen;
        for (const auto& block : blocks) {
            for (std::size_t i = 0; i < block.size(); ++i) {
                CHECK(seen.insert(block[i]).second);
                for (std::size_t j = i + 1; j < block.size(); ++j) {
                    // No shared qubit within a block...
                    for (int q : {block[i].first, block[i].second})
                        CHECK_FALSE(touches(block[j], q));
                    // ...and no coupling between the two edges' qubits.
                    for (int a : {block[i].first, block[i].second})
                        for (int b : {block[j].first, block[j].second})
                            CHECK_FALSE(dev.coupled(a, b));
                }
            }
        }
        CHECK(seen.size() == dev.edges.size());
    }
}

TEST_CASE("annealing minimizes a smooth cost within the trust region") {
    const auto cost = [](const GateParams& p) {
        const double da = p.alpha - 0.3, db = p.beta + 0.2, dg = p.gamma - 0.1;
        return da * da + db * db + dg * dg;
    };
    AnnealOptions opt{0.01, 0.95, 400, 0.0};
    const GateParams best = anneal(cost, GateParams{}, opt, 5);
    CHECK(cost(best) < 0.05);  // init cost is 0.14

    // A tight trust region bounds every accepted point.
    opt.trust_radius = 0.05;
    const GateParams bounded = anneal(cost, GateParams{}, opt, 5);
    const double r = std::sqrt(bounded.alpha * bounded.alpha + bounded.beta * bounded.beta +
                               bounded.gamma * bounded.gamma);
    CHECK(r <= 0.05 + 1e-12);
}

TEST_CASE("seeded drift tables are reproducible") {
    const DeviceModel dev = DeviceModel::load(std::string(QUELL_DATA_DIR) + "/hex16.json");
    const auto a = make_miscalibration(dev, 0.078, 4242);
    const auto b = make_miscalibration(dev, 0.078, 4242);
    REQUIRE(a.size() == dev.edges.size());
    for (const auto& [key, pa] : a) {
        REQUIRE(b.count(key) == 1);
        const GateParams& pb = b.at(key);
        CHECK(pa.alpha == pb.alpha);
        CHECK(pa.beta == pb.beta);
        CHECK(pa.gamma == pb.gamma);
    }

    for (const auto& [key, p] : make_miscalibration(dev, 0.0, 4242)) {
        CHECK(p.alpha == 0.0);
        CHECK(p.beta == 0.0);
        CHECK(p.gamma == 0.0);
    }
}

TEST_CASE("device calibration halves the drift-induced error per gate") {
    DeviceModel dev = DeviceModel::load(std::string(QUELL_DATA_DIR) + "/hex16.json");
    const auto drift = make_miscalibration(dev, 0.078, 4242);
    const GateCalResult res = calibrate_device(dev, drift, GateCalOptions{}, 99);

    REQUIRE(res.epg_before.size() == dev.edges.size());
    REQUIRE(res.epg_after.size() == dev.edges.size());
    const double before = mean(res.epg_before);
    const double after = mean(res.epg_after);
    CHECK(before > 0.005);
    CHECK(before < 0.08);
    CHECK(after <= 0.5 * before);
    CHECK(res.blocks <= 4);

    // The achieved EPG lands in the device tables: tuned parameters for every
    // edge, and cx overrides floored at the per-kind incoherent rate.
    const double floor = dev.gate_error.at("cx");
    for (const auto& [a, b] : dev.edges) {
        const std::string key = edge_key(a, b);
        REQUIRE(res.params.count(key) == 1);
        REQUIRE(dev.gate_error_overrides.count("cx:" + key) == 1);
        CHECK(dev.gate_error_overrides.at("cx:" + key) >= floor);
    }

    // Same drift, same seed: byte-identical outcome.
    DeviceModel dev2 = DeviceModel::load(std::string(QUELL_DATA_DIR) + "/hex16.json");
    const GateCalResult res2 = calibrate_device(dev2, drift, GateCalOptions{}, 99);
    CHECK(res2.epg_after == res.epg_after);
    CHECK(res2.epg_before == res.epg_before);
}
