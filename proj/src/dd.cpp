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

#include "quell/dd.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "quell/errors.hpp"

namespace quell {

namespace {

const std::vector<double> kEcho2{0.25, 0.75};
const std::vector<double> kEcho4{0.125, 0.375, 0.625, 0.875};

std::vector<double> doubled(const std::vector<double>& base) {
    std::vector<double> out;
    out.reserve(base.size() * 2);
    for (double f : base) out.push_back(f / 2.0);
    for (double f : base) out.push_back(0.5 + f / 2.0);
    return out;
}

std::int64_t x_duration(const DeviceModel& dev) {
    std::int64_t d = dev.duration_ns(GateKind::X);
    if (d <= 0) throw validation_error("dd: X pulse duration must be positive");
    return d;
}

const std::vector<double>& base_for_color(int color) { return color % 2 == 0 ? kEcho2 : kEcho4; }

DdPlan plan_with_colors(const ScheduledCircuit& sc, const DeviceModel& dev,
                        const DdOptions& opts, const std::vector<int>& color) {
    const std::int64_t xdur = x_duration(dev);
    const std::int64_t min_len = opts.min_window_factor * xdur;
    const std::int64_t long_len = opts.repeat_factor * min_len;

    DdPlan plan;
    plan.color = color;
    for (int q = 0; q < sc.num_qubits; ++q) {
        if (color[static_cast<size_t>(q)] < 0) continue;
        for (const IdleWindow& w : sc.idle_windows[static_cast<size_t>(q)]) {
            if (w.len() < min_len) continue;
            std::vector<double> fr = base_for_color(color[static_cast<size_t>(q)]);
            if (w.len() >= long_len) fr = doubled(fr);
            plan.entries.push_back({q, w, std::move(fr)});
        }
    }
    return plan;
}

// Qubits owning at least one eligible window.
std::vector<bool> has_eligible_window(const ScheduledCircuit& sc, const DeviceModel& dev,
                                      const DdOptions& opts) {
    const std::int64_t min_len = opts.min_window_factor * x_duration(dev);
    std::vector<bool> eligible(static_cast<size_t>(sc.num_qubits), false);
    for (int q = 0; q < sc.num_qubits; ++q)
        for (const IdleWindow& w : sc.idle_windows[static_cast<size_t>(q)])
            if (w.len() >= min_len) eligible[static_cast<size_t>(q)] = true;
    return eligible;
}

}  // namespace

DdPlan plan_uniform(const ScheduledCircuit& sc, const DeviceModel& dev, const DdOptions& opts) {
    std::vector<bool> eligible = has_eligible_window(sc, dev, opts);
    std::vector<int> color(static_cast<size_t>(sc.num_qubits), -1);
    for (int q = 0; q < sc.num_qubits; ++q)
        if (eligible[static_cast<size_t>(q)]) color[static_cast<size_t>(q)] = 0;
    return plan_with_colors(sc, dev, opts, color);
}

DdPlan plan_dd(const ScheduledCircuit& sc, const DeviceModel& dev, const DdOptions& opts) {
    std::vector<bool> eligible = has_eligible_window(sc, dev, opts);
    const std::int64_t min_len = opts.min_window_factor * x_duration(dev);

    // Conflict graph: coupled qubits whose eligible windows overlap in time
    // would accumulate a shared ZZ phase, so they must alternate sequences.
    std::vector<std::vector<int>> conflicts(static_cast<size_t>(sc.num_qubits));
    for (const auto& [a, b] : dev.edges) {
        if (a >= sc.num_qubits || b >= sc.num_qubits) continue;
        if (!eligible[static_cast<size_t>(a)] || !eligible[static_cast<size_t>(b)]) continue;
        bool overlap = false;
        for (const IdleWindow& wa : sc.idle_windows[static_cast<size_t>(a)]) {
            if (wa.len() < min_len) continue;
            for (const IdleWindow& wb : sc.idle_windows[static_cast<size_t>(b)]) {
                if (wb.len() < min_len) continue;
                if (std::max(wa.t0, wb.t0) < std::min(wa.t1, wb.t1)) overlap = true;
            }
        }
        if (overlap) {
            conflicts[static_cast<size_t>(a)].push_back(b);
            conflicts[static_cast<size_t>(b)].push_back(a);
        }
    }

    // BFS layering two-colors each component (exact on bipartite graphs; an
    // odd cycle leaves one edge same-colored, which degrades that edge to
    // the uniform behavior rather than failing).
    std::vector<int> color(static_cast<size_t>(sc.num_qubits), -1);
    for (int s = 0; s < sc.num_qubits; ++s) {
        if (!eligible[static_cast<size_t>(s)] || color[static_cast<size_t>(s)] >= 0) continue;
        color[static_cast<size_t>(s)] = 0;
        std::deque<int> q{s};
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int v : conflicts[static_cast<size_t>(u)])
                if (color[static_cast<size_t>(v)] < 0) {
                    color[static_cast<size_t>(v)] = 1 - color[static_cast<size_t>(u)];
                    q.push_back(v);
                }
        }
    }
    return plan_with_colors(sc, dev, opts, color);
}

ScheduledCircuit embed_dd(const ScheduledCircuit& sc, const DeviceModel& dev, const DdPlan& plan) {
    const std::int64_t xdur = x_duration(dev);
    ScheduledCircuit out = sc;
    for (const DdPlan::Entry& e : plan.entries) {
        std::int64_t prev_end = e.window.t0;
        for (double f : e.fractions) {
            const std::int64_t center =
                e.window.t0 + std::llround(f * static_cast<double>(e.window.len()));
            const std::int64_t start = center - xdur / 2;
            if (start < prev_end || start + xdur > e.window.t1)
                throw stage_error("dd: pulse does not fit inside its idle window");
            out.timed.push_back({Gate::x(e.qubit), start, xdur});
            prev_end = start + xdur;
        }
    }
    out.recompute_views();
    return out;
}

double residual_zz_phase(const std::vector<double>& fractions_a,
                         const std::vector<double>& fractions_b) {
    // Fixed-point grid fine enough that dyadic fractions land exactly.
    constexpr std::int64_t kOne = std::int64_t{1} << 40;
    auto to_fix = [](double f) {
        if (f < 0.0 || f > 1.0) throw validation_error("dd: pulse fraction outside [0, 1]");
        return std::llround(f * static_cast<double>(kOne));
    };

    struct Flip {
        std::int64_t t;
        int who;  // 0 = a, 1 = b
    };
    std::vector<Flip> flips;
    for (double f : fractions_a) flips.push_back({to_fix(f), 0});
    for (double f : fractions_b) flips.push_back({to_fix(f), 1});
    std::sort(flips.begin(), flips.end(), [](const Flip& x, const Flip& y) { return x.t < y.t; });

    std::int64_t acc = 0;  // integral numerator over denominator kOne
    std::int64_t prev = 0;
    int sa = 1, sb = 1;
    for (const Flip& fl : flips) {
        acc += sa * sb * (fl.t - prev);
        prev = fl.t;
        if (fl.who == 0) sa = -sa;
        else sb = -sb;
    }
    acc += sa * sb * (kOne - prev);
    if (acc == 0) return 0.0;
    return static_cast<double>(acc) / static_cast<double>(kOne);
}

}  // namespace quell
