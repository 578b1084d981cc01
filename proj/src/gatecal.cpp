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

#include "quell/gatecal.hpp"

#include <algorithm>
#include <cmath>

#include "quell/errors.hpp"
#include "quell/rng.hpp"

namespace quell {

namespace {

using cplx = std::complex<double>;

constexpr cplx kI{0.0, 1.0};

void apply_mat4(const std::array<cplx, 16>& m, std::array<cplx, 4>& v) {
    std::array<cplx, 4> out{};
    for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k) out[r] += m[r * 4 + k] * v[k];
    v = out;
}

// Survival probabilities of the two CX fixed points after N applications of
// u: |00> measured in Z and |++> measured in X (global phase drops out).
std::pair<double, double> survival(const std::array<cplx, 16>& u, int n) {
    std::array<cplx, 4> z{cplx{1.0, 0.0}, cplx{}, cplx{}, cplx{}};
    std::array<cplx, 4> x{cplx{0.5, 0.0}, cplx{0.5, 0.0}, cplx{0.5, 0.0}, cplx{0.5, 0.0}};
    for (int i = 0; i < n; ++i) {
        apply_mat4(u, z);
        apply_mat4(u, x);
    }
    const double pz = std::norm(z[0]);
    cplx plus{};  // <++|psi>
    for (const cplx& a : x) plus += 0.5 * a;
    return {pz, std::norm(plus)};
}

double sample_probability(double p, int shots, Rng& rng) {
    int hits = 0;
    for (int s = 0; s < shots; ++s)
        if (rng.uniform() < p) ++hits;
    return static_cast<double>(hits) / static_cast<double>(shots);
}

}  // namespace

GateParams ideal_cx_params() {
    constexpr double kHalfPi = 1.5707963267948966;
    return {kHalfPi, kHalfPi, -kHalfPi};
}

std::array<cplx, 16> cr_gate_matrix(const GateParams& p) {
    // exp(-i/2 (a ZX + b IX + g ZI)) is block diagonal over the control
    // qubit: e^{-ig/2} RX(a+b) in the Z=+1 block and e^{+ig/2} RX(b-a) in
    // the Z=-1 block. Conjugating with (X (x) I) swaps the blocks.
    const auto rx = [](double theta, double phase, cplx out[4]) {
        const cplx ph = std::exp(kI * phase);
        out[0] = ph * std::cos(theta / 2.0);
        out[1] = ph * (-kI) * std::sin(theta / 2.0);
        out[2] = out[1];
        out[3] = out[0];
    };
    cplx hi[4], lo[4];
    rx(p.beta - p.alpha, +p.gamma / 2.0, hi);  // control |0> after the X frame
    rx(p.alpha + p.beta, -p.gamma / 2.0, lo);  // control |1>
    std::array<cplx, 16> u{};
    u[0 * 4 + 0] = hi[0];
    u[0 * 4 + 1] = hi[1];
    u[1 * 4 + 0] = hi[2];
    u[1 * 4 + 1] = hi[3];
    u[2 * 4 + 2] = lo[0];
    u[2 * 4 + 3] = lo[1];
    u[3 * 4 + 2] = lo[2];
    u[3 * 4 + 3] = lo[3];
    return u;
}

std::vector<int> default_n_list() { return {1, 4, 16, 64}; }

double epg_estimate(const GateParams& commanded, const GateParams& offset,
                    const std::vector<int>& n_list, int shots, std::uint64_t seed) {
    if (n_list.size() < 2) throw validation_error("epg_estimate: need at least two N values");
    for (int n : n_list)
        if (n < 1) throw validation_error("epg_estimate: repetition counts must be >= 1");
    if (shots < 1) throw validation_error("epg_estimate: shots must be >= 1");

    const GateParams applied{commanded.alpha + offset.alpha, commanded.beta + offset.beta,
                             commanded.gamma + offset.gamma};
    const auto u = cr_gate_matrix(applied);

    Rng rng(seed, 0);
    // Slope through the origin: a zero-length sequence leaves the probe
    // untouched, so the infidelity intercept is exactly zero by
    // construction. Anchoring there keeps the fit informative even when the
    // longest sequences saturate (a free-intercept fit would report zero
    // error for a uniformly scrambled gate), and with non-negative
    // infidelities the estimate is non-negative.
    double sxy = 0.0, sxx = 0.0;
    for (int n : n_list) {
        const auto [pz, px] = survival(u, n);
        const double hz = sample_probability(pz, shots, rng);
        const double hx = sample_probability(px, shots, rng);
        const double y = 1.0 - 0.5 * (hz + hx);
        sxy += static_cast<double>(n) * y;
        sxx += static_cast<double>(n) * static_cast<double>(n);
    }
    return sxy / sxx;
}

GateParams anneal(const std::function<double(const GateParams&)>& cost, GateParams init,
                  const AnnealOptions& opt, std::uint64_t seed) {
    if (opt.steps < 1 || opt.t0 <= 0.0 || opt.cooling <= 0.0 || opt.cooling >= 1.0)
        throw validation_error("anneal: bad options");
    Rng rng(seed, 0);
    GateParams cur = init;
    double cur_cost = cost(cur);
    GateParams best = cur;
    double best_cost = cur_cost;
    double t = opt.t0;
    for (int step = 0; step < opt.steps; ++step, t *= opt.cooling) {
        const double sigma = std::sqrt(t);
        GateParams prop{cur.alpha + sigma * rng.normal(), cur.beta + sigma * rng.normal(),
                        cur.gamma + sigma * rng.normal()};
        if (opt.trust_radius > 0.0) {
            const double da = prop.alpha - init.alpha;
            const double db = prop.beta - init.beta;
            const double dg = prop.gamma - init.gamma;
            if (da * da + db * db + dg * dg > opt.trust_radius * opt.trust_radius) continue;
        }
        const double c = cost(prop);
        const double delta = c - cur_cost;
        if (delta < 0.0 || rng.uniform() < std::exp(-delta / t)) {
            cur = prop;
            cur_cost = c;
            if (c < best_cost) {
                best = prop;
                best_cost = c;
            }
        }
    }
    return best;
}

std::vector<std::vector<std::pair<int, int>>> color_edges(const DeviceModel& dev) {
    std::vector<std::pair<int, int>> edges;
    for (auto [a, b] : dev.edges) edges.emplace_back(std::min(a, b), std::max(a, b));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    const auto conflict = [&](const std::pair<int, int>& e, const std::pair<int, int>& f) {
        const int eq[2] = {e.first, e.second};
        const int fq[2] = {f.first, f.second};
        for (int a : eq)
            for (int b : fq)
                if (a == b || dev.is_edge(a, b)) return true;
        return false;
    };

    std::vector<int> color(edges.size(), -1);
    int n_colors = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        std::vector<bool> used(static_cast<std::size_t>(n_colors) + 1, false);
        for (std::size_t j = 0; j < i; ++j)
            if (conflict(edges[i], edges[j])) used[static_cast<std::size_t>(color[j])] = true;
        int c = 0;
        while (used[static_cast<std::size_t>(c)]) ++c;
        color[i] = c;
        n_colors = std::max(n_colors, c + 1);
    }

    std::vector<std::vector<std::pair<int, int>>> blocks(static_cast<std::size_t>(n_colors));
    for (std::size_t i = 0; i < edges.size(); ++i)
        blocks[static_cast<std::size_t>(color[i])].push_back(edges[i]);
    return blocks;
}

std::map<std::string, GateParams> make_miscalibration(const DeviceModel& dev, double magnitude,
                                                      std::uint64_t seed) {
    std::vector<std::pair<int, int>> edges;
    for (auto [a, b] : dev.edges) edges.emplace_back(std::min(a, b), std::max(a, b));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::map<std::string, GateParams> offsets;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        Rng rng(seed, i);
        offsets[edge_key(edges[i].first, edges[i].second)] =
            GateParams{magnitude * rng.normal(), magnitude * rng.normal(),
                       magnitude * rng.normal()};
    }
    return offsets;
}

GateCalResult calibrate_device(DeviceModel& dev,
                               const std::map<std::string, GateParams>& offsets,
                               const GateCalOptions& opt, std::uint64_t seed) {
    const auto blocks = color_edges(dev);

    // Stable per-edge index (canonical edge order) so RNG streams and frozen
    // EPG landscapes do not depend on block membership or thread schedule.
    std::map<std::string, std::uint64_t> edge_index;
    for (const auto& block : blocks)
        for (auto [a, b] : block) edge_index.emplace(edge_key(a, b), 0);
    std::uint64_t next = 0;
    for (auto& [key, idx] : edge_index) idx = next++;

    for (const auto& [key, idx] : edge_index)
        if (!offsets.count(key))
            throw validation_error("calibrate_device: no offset for edge " + key);

    // Validate the shared options up front: worker threads must not throw.
    if (opt.n_list.size() < 2 || opt.shots < 1)
        throw validation_error("calibrate_device: bad EPG experiment options");
    for (int n : opt.n_list)
        if (n < 1) throw validation_error("calibrate_device: bad EPG experiment options");
    if (opt.anneal.steps < 1 || opt.anneal.t0 <= 0.0 || opt.anneal.cooling <= 0.0 ||
        opt.anneal.cooling >= 1.0)
        throw validation_error("calibrate_device: bad anneal options");

    GateCalResult result;
    result.blocks = static_cast<int>(blocks.size());
    for (const auto& block : blocks) {
        const int n = static_cast<int>(block.size());
        std::vector<GateParams> best(static_cast<std::size_t>(n));
        std::vector<double> before(static_cast<std::size_t>(n)), after(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) {
            const auto [a, b] = block[static_cast<std::size_t>(i)];
            const std::string key = edge_key(a, b);
            const auto off_it = offsets.find(key);
            const std::uint64_t idx = edge_index.at(key);
            const std::uint64_t cost_seed = opt.epg_seed + 1000003 * idx;
            const auto cost = [&](const GateParams& p) {
                return epg_estimate(p, off_it->second, opt.n_list, opt.shots, cost_seed);
            };
            GateParams init = ideal_cx_params();
            if (auto it = dev.gate_params.find(key); it != dev.gate_params.end())
                init = GateParams{it->second[0], it->second[1], it->second[2]};
            before[static_cast<std::size_t>(i)] = cost(init);
            best[static_cast<std::size_t>(i)] = anneal(cost, init, opt.anneal, seed + idx);
            after[static_cast<std::size_t>(i)] = cost(best[static_cast<std::size_t>(i)]);
        }
        for (int i = 0; i < n; ++i) {
            const auto [a, b] = block[static_cast<std::size_t>(i)];
            const std::string key = edge_key(a, b);
            const GateParams& p = best[static_cast<std::size_t>(i)];
            dev.gate_params[key] = {p.alpha, p.beta, p.gamma};
            // The written error rate is floored twice: at the device's
            // intrinsic per-kind cx error (calibration tunes the coherent
            // part only, it cannot remove incoherent error), and at the
            // fit's statistical resolution (a measured slope of exactly
            // zero does not license an error-free gate downstream).
            double intrinsic = 0.0;
            if (auto it = dev.gate_error.find("cx"); it != dev.gate_error.end())
                intrinsic = it->second;
            dev.gate_error_overrides["cx:" + key] =
                std::max({after[static_cast<std::size_t>(i)], intrinsic, 1e-4});
            result.params[key] = p;
            result.epg_before[key] = before[static_cast<std::size_t>(i)];
            result.epg_after[key] = after[static_cast<std::size_t>(i)];
        }
    }
    return result;
}

}  // namespace quell
