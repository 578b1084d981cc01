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

#include "quell/transpile.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

#include "quell/errors.hpp"
#include "quell/schedule.hpp"
#include "quell/synth2q.hpp"

namespace quell {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool rz_is_trivial(double angle) {
    double t = std::fmod(angle, 2.0 * kPi);
    if (t < 0) t += 2.0 * kPi;
    return t < 1e-12 || 2.0 * kPi - t < 1e-12;
}

// Breadth-first distances from every node over the coupling graph.
std::vector<std::vector<int>> all_pairs_distance(const DeviceModel& dev) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(dev.num_qubits));
    for (auto [a, b] : dev.edges) {
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    for (auto& v : adj) std::sort(v.begin(), v.end());
    std::vector<std::vector<int>> dist(static_cast<size_t>(dev.num_qubits),
                                       std::vector<int>(static_cast<size_t>(dev.num_qubits), -1));
    for (int s = 0; s < dev.num_qubits; ++s) {
        std::deque<int> q{s};
        dist[static_cast<size_t>(s)][static_cast<size_t>(s)] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int v : adj[static_cast<size_t>(u)])
                if (dist[static_cast<size_t>(s)][static_cast<size_t>(v)] < 0) {
                    dist[static_cast<size_t>(s)][static_cast<size_t>(v)] =
                        dist[static_cast<size_t>(s)][static_cast<size_t>(u)] + 1;
                    q.push_back(v);
                }
        }
    }
    return dist;
}

}  // namespace

Layout Layout::identity(int n) {
    Layout l;
    l.v2p.resize(static_cast<size_t>(n));
    std::iota(l.v2p.begin(), l.v2p.end(), 0);
    return l;
}

void Layout::validate(int num_virtual, int num_physical) const {
    if (static_cast<int>(v2p.size()) != num_virtual)
        throw validation_error("layout: size does not match the circuit width");
    std::vector<bool> seen(static_cast<size_t>(num_physical), false);
    for (int p : v2p) {
        if (p < 0 || p >= num_physical) throw validation_error("layout: physical index out of range");
        if (seen[static_cast<size_t>(p)]) throw validation_error("layout: duplicate physical qubit");
        seen[static_cast<size_t>(p)] = true;
    }
}

Circuit to_native(const Circuit& circuit) {
    circuit.validate();
    Circuit out(circuit.num_qubits, circuit.num_clbits);
    for (const Gate& g : circuit.gates) {
        switch (g.kind) {
            case GateKind::H:
                out.add(Gate::rz(g.qubits[0], kPi / 2));
                out.add(Gate::sx(g.qubits[0]));
                out.add(Gate::rz(g.qubits[0], kPi / 2));
                break;
            case GateKind::U2Q:
                for (const Gate& n : synth_2q(g)) out.add(n);
                break;
            default:
                out.add(g);
        }
    }
    return out;
}

Circuit reduce(const Circuit& circuit) {
    circuit.validate();
    std::vector<Gate> gates = circuit.gates;

    auto touches = [](const Gate& g, const Gate& h) {
        if (g.kind == GateKind::BARRIER || h.kind == GateKind::BARRIER) return true;
        for (int a : g.qubits)
            for (int b : h.qubits)
                if (a == b) return true;
        return false;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < gates.size() && !changed; ++i) {
            Gate& g = gates[i];
            if (g.kind == GateKind::RZ && rz_is_trivial(g.angle)) {
                gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
            if (g.is_directive() || g.kind == GateKind::MEASURE) continue;
            // Next gate sharing a qubit; rewrites only fire when the operand
            // lists coincide, so nothing can slip between the pair.
            for (size_t j = i + 1; j < gates.size(); ++j) {
                const Gate& h = gates[j];
                if (!touches(g, h)) continue;
                if (g.qubits == h.qubits && g.kind == h.kind &&
                    (g.kind == GateKind::X || g.kind == GateKind::H ||
                     (g.kind == GateKind::CX))) {
                    gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(j));
                    gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(i));
                    changed = true;
                } else if (g.qubits == h.qubits && g.kind == GateKind::RZ && h.kind == GateKind::RZ) {
                    g.angle += h.angle;
                    gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(j));
                    changed = true;
                } else if (g.qubits == h.qubits && g.kind == GateKind::SX && h.kind == GateKind::SX) {
                    g = Gate::x(g.qubits[0]);
                    gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(j));
                    changed = true;
                }
                break;  // nearest toucher decides; later gates are blocked
            }
        }
    }

    Circuit out(circuit.num_qubits, circuit.num_clbits);
    out.gates = std::move(gates);
    return out;
}

RouteResult route(const Circuit& circuit, const DeviceModel& dev, const Layout& layout) {
    circuit.validate();
    layout.validate(circuit.num_qubits, dev.num_qubits);
    const auto dist = all_pairs_distance(dev);

    // pos[v] = current physical home of virtual qubit v.
    std::vector<int> pos = layout.v2p;

    RouteResult res;
    res.circuit = Circuit(dev.num_qubits, circuit.num_clbits);
    Circuit& out = res.circuit;

    // Dependency tracking: per virtual qubit, the ordered list of gate
    // indices touching it, plus a cursor. A gate is ready when it is at the
    // head of every operand's list. Barriers participate on all qubits.
    const auto& gates = circuit.gates;
    std::vector<std::vector<int>> peruq(static_cast<size_t>(circuit.num_qubits));
    for (size_t gi = 0; gi < gates.size(); ++gi) {
        if (gates[gi].kind == GateKind::BARRIER) {
            for (int q = 0; q < circuit.num_qubits; ++q) peruq[static_cast<size_t>(q)].push_back(static_cast<int>(gi));
        } else {
            for (int q : gates[gi].qubits) peruq[static_cast<size_t>(q)].push_back(static_cast<int>(gi));
        }
    }
    std::vector<size_t> cursor(static_cast<size_t>(circuit.num_qubits), 0);
    std::vector<int> remaining_operands(gates.size(), 0);
    for (size_t gi = 0; gi < gates.size(); ++gi)
        remaining_operands[gi] = gates[gi].kind == GateKind::BARRIER ? circuit.num_qubits
                                                                     : static_cast<int>(gates[gi].qubits.size());

    // Measurements are deferred to the end of the routed circuit: a swap
    // inserted for a still-pending gate may move an already-measured state,
    // so the clbit must bind to the qubit's *final* physical home.
    std::vector<std::pair<int, int>> pending_measures;  // (virtual qubit, clbit)

    auto emit = [&](const Gate& g) {
        if (g.kind == GateKind::MEASURE) {
            pending_measures.emplace_back(g.qubits[0], g.clbit);
            return;
        }
        Gate p = g;
        if (g.kind == GateKind::BARRIER) {
            p = Gate::barrier();  // full device width after placement
        } else {
            for (int& q : p.qubits) q = pos[static_cast<size_t>(q)];
        }
        out.add(p);
    };

    auto emit_swap = [&](int pa, int pb) {
        out.add(Gate::cx(pa, pb));
        out.add(Gate::cx(pb, pa));
        out.add(Gate::cx(pa, pb));
        ++res.swap_count;
    };

    size_t done = 0;

    while (done < gates.size()) {
        // Retire everything executable that is not a blocked 2-qubit gate.
        bool progressed = true;
        while (progressed) {
            progressed = false;
            for (int q = 0; q < circuit.num_qubits; ++q) {
                auto& lst = peruq[static_cast<size_t>(q)];
                while (cursor[static_cast<size_t>(q)] < lst.size()) {
                    int gi = lst[cursor[static_cast<size_t>(q)]];
                    const Gate& g = gates[static_cast<size_t>(gi)];
                    bool head_everywhere = true;
                    if (g.kind == GateKind::BARRIER) {
                        for (int r = 0; r < circuit.num_qubits; ++r)
                            if (cursor[static_cast<size_t>(r)] >= peruq[static_cast<size_t>(r)].size() ||
                                peruq[static_cast<size_t>(r)][cursor[static_cast<size_t>(r)]] != gi) {
                                head_everywhere = false;
                                break;
                            }
                    } else {
                        for (int r : g.qubits)
                            if (peruq[static_cast<size_t>(r)][cursor[static_cast<size_t>(r)]] != gi) {
                                head_everywhere = false;
                                break;
                            }
                    }
                    if (!head_everywhere) break;
                    bool two_q = Gate::arity(g.kind) == 2;
                    if (two_q && !dev.is_edge(pos[static_cast<size_t>(g.qubits[0])],
                                              pos[static_cast<size_t>(g.qubits[1])]))
                        break;  // needs routing
                    emit(g);
                    ++done;
                    if (g.kind == GateKind::BARRIER) {
                        for (int r = 0; r < circuit.num_qubits; ++r) ++cursor[static_cast<size_t>(r)];
                    } else {
                        for (int r : g.qubits) ++cursor[static_cast<size_t>(r)];
                    }
                    progressed = true;
                }
            }
        }
        if (done == gates.size()) break;

        // Front = blocked two-qubit gates at the head of both operand lists.
        std::vector<int> front;
        for (int q = 0; q < circuit.num_qubits; ++q) {
            auto& lst = peruq[static_cast<size_t>(q)];
            if (cursor[static_cast<size_t>(q)] >= lst.size()) continue;
            int gi = lst[cursor[static_cast<size_t>(q)]];
            const Gate& g = gates[static_cast<size_t>(gi)];
            if (Gate::arity(g.kind) != 2) continue;
            bool head = true;
            for (int r : g.qubits)
                if (peruq[static_cast<size_t>(r)][cursor[static_cast<size_t>(r)]] != gi) head = false;
            if (head && std::find(front.begin(), front.end(), gi) == front.end()) front.push_back(gi);
        }
        if (front.empty())
            throw stage_error("route: dependency front is empty but gates remain");

        // Second layer: for each front gate, the next two-qubit gate queued
        // behind it on either operand.
        std::vector<int> second;
        for (int gi : front) {
            for (int q : gates[static_cast<size_t>(gi)].qubits) {
                auto& lst = peruq[static_cast<size_t>(q)];
                for (size_t k = cursor[static_cast<size_t>(q)] + 1; k < lst.size(); ++k) {
                    const Gate& g = gates[static_cast<size_t>(lst[k])];
                    if (g.kind == GateKind::BARRIER) break;
                    if (Gate::arity(g.kind) == 2) {
                        second.push_back(lst[k]);
                        break;
                    }
                }
            }
        }

        auto pair_dist = [&](int gi, const std::vector<int>& p) {
            const Gate& g = gates[static_cast<size_t>(gi)];
            return dist[static_cast<size_t>(p[static_cast<size_t>(g.qubits[0])])]
                       [static_cast<size_t>(p[static_cast<size_t>(g.qubits[1])])];
        };

        // Candidate swaps: device edges touching any physical qubit hosting
        // a front operand.
        std::set<int> hot;
        for (int gi : front)
            for (int q : gates[static_cast<size_t>(gi)].qubits) hot.insert(pos[static_cast<size_t>(q)]);
        std::vector<int> p2v(static_cast<size_t>(dev.num_qubits), -1);
        for (int v = 0; v < circuit.num_qubits; ++v) p2v[static_cast<size_t>(pos[static_cast<size_t>(v)])] = v;

        double best_score = std::numeric_limits<double>::infinity();
        std::pair<int, int> best_edge{-1, -1};
        for (auto [ea, eb] : dev.edges) {
            if (!hot.count(ea) && !hot.count(eb)) continue;
            std::vector<int> trial = pos;
            int va = p2v[static_cast<size_t>(ea)];
            int vb = p2v[static_cast<size_t>(eb)];
            if (va >= 0) trial[static_cast<size_t>(va)] = eb;
            if (vb >= 0) trial[static_cast<size_t>(vb)] = ea;
            double score = 0;
            for (int gi : front) score += pair_dist(gi, trial);
            for (int gi : second) score += 0.5 * pair_dist(gi, trial);
            if (score < best_score - 1e-9) {
                best_score = score;
                best_edge = {ea, eb};
            }
        }

        double current = 0;
        for (int gi : front) current += pair_dist(gi, pos);
        for (int gi : second) current += 0.5 * pair_dist(gi, pos);

        if (best_edge.first >= 0 && best_score < current - 1e-9) {
            // Strict improvement only; the score is bounded below and drops
            // by at least 1/2 per accepted swap, so this branch cannot loop.
            auto [ea, eb] = best_edge;
            emit_swap(ea, eb);
            int va = p2v[static_cast<size_t>(ea)];
            int vb = p2v[static_cast<size_t>(eb)];
            if (va >= 0) pos[static_cast<size_t>(va)] = eb;
            if (vb >= 0) pos[static_cast<size_t>(vb)] = ea;
        } else {
            // Local minimum: walk the first front gate's control toward its
            // target along a shortest path until they are adjacent.
            const Gate& g = gates[static_cast<size_t>(front[0])];
            while (true) {
                int pa = pos[static_cast<size_t>(g.qubits[0])];
                int pb = pos[static_cast<size_t>(g.qubits[1])];
                if (dev.is_edge(pa, pb)) break;
                int next = -1;
                for (auto [ea, eb] : dev.edges) {
                    int other = ea == pa ? eb : (eb == pa ? ea : -1);
                    if (other < 0) continue;
                    if (dist[static_cast<size_t>(other)][static_cast<size_t>(pb)] + 1 ==
                        dist[static_cast<size_t>(pa)][static_cast<size_t>(pb)]) {
                        next = other;
                        break;
                    }
                }
                if (next < 0) throw stage_error("route: no shortest-path step found");
                emit_swap(pa, next);
                int va = p2v[static_cast<size_t>(pa)];
                int vb = p2v[static_cast<size_t>(next)];
                if (va >= 0) pos[static_cast<size_t>(va)] = next;
                if (vb >= 0) pos[static_cast<size_t>(vb)] = pa;
                p2v[static_cast<size_t>(pa)] = vb;
                p2v[static_cast<size_t>(next)] = va;
            }
        }
    }

    for (auto [v, clbit] : pending_measures)
        out.add(Gate::measure(pos[static_cast<size_t>(v)], clbit));

    res.final_pos = pos;
    res.circuit.validate();
    return res;
}

double score_layout(const Circuit& native, const DeviceModel& dev, const Layout& layout) {
    RouteResult routed = route(native, dev, layout);
    ScheduledCircuit sc = schedule_asap(routed.circuit, dev);

    double score = 0.0;
    std::vector<bool> measured(static_cast<size_t>(dev.num_qubits), false);
    for (const TimedGate& tg : sc.timed) {
        const Gate& g = tg.gate;
        if (g.kind == GateKind::BARRIER) continue;
        if (g.kind == GateKind::MEASURE) {
            measured[static_cast<size_t>(g.qubits[0])] = true;
            continue;
        }
        double eps = dev.error_for(g);
        score += std::log(std::max(1e-300, 1.0 - eps));
    }
    for (int q = 0; q < dev.num_qubits; ++q) {
        if (sc.first_op_start[static_cast<size_t>(q)] < 0) continue;
        double span = static_cast<double>(sc.active_end[static_cast<size_t>(q)] -
                                          sc.first_op_start[static_cast<size_t>(q)]);
        double idle = 0.0;
        for (const IdleWindow& w : sc.idle_windows[static_cast<size_t>(q)])
            idle += static_cast<double>(w.len());
        score -= span / (2.0 * dev.t1_ns[static_cast<size_t>(q)]);
        double tphi = dev.tphi_ns(q);
        if (!std::isinf(tphi)) score -= idle / (2.0 * tphi);
        if (measured[static_cast<size_t>(q)])
            score += std::log(std::max(1e-300, 1.0 - dev.readout_assignment_error(q)));
    }
    return score;
}

Layout select_layout(const Circuit& native, const DeviceModel& dev, int max_candidates) {
    native.validate();
    if (native.num_qubits > dev.num_qubits)
        throw validation_error("select_layout: circuit is wider than the device");
    const int k = native.num_qubits;

    std::vector<std::vector<int>> adj(static_cast<size_t>(dev.num_qubits));
    for (auto [a, b] : dev.edges) {
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    for (auto& v : adj) std::sort(v.begin(), v.end());
    auto degree = [&](int q) { return static_cast<int>(adj[static_cast<size_t>(q)].size()); };

    // One candidate region per seed: grow a connected set, preferring
    // well-connected neighbors, and assign virtual qubits in growth order.
    std::vector<Layout> candidates;
    for (int seed = 0; seed < dev.num_qubits && static_cast<int>(candidates.size()) < max_candidates;
         ++seed) {
        std::vector<int> grown{seed};
        std::vector<bool> in(static_cast<size_t>(dev.num_qubits), false);
        in[static_cast<size_t>(seed)] = true;
        while (static_cast<int>(grown.size()) < k) {
            int pick = -1;
            for (int g : grown)
                for (int nb : adj[static_cast<size_t>(g)]) {
                    if (in[static_cast<size_t>(nb)]) continue;
                    if (pick < 0 || degree(nb) > degree(pick) || (degree(nb) == degree(pick) && nb < pick))
                        pick = nb;
                }
            if (pick < 0) break;  // island smaller than the circuit
            grown.push_back(pick);
            in[static_cast<size_t>(pick)] = true;
        }
        if (static_cast<int>(grown.size()) < k) continue;
        Layout l;
        l.v2p = grown;
        bool dup = false;
        for (const Layout& c : candidates)
            if (c.v2p == l.v2p) dup = true;
        if (!dup) candidates.push_back(std::move(l));
    }
    if (candidates.empty()) throw stage_error("select_layout: no connected placement found");

    std::vector<double> scores(candidates.size());
    std::vector<int> cx_counts(candidates.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(candidates.size()); ++i) {
        scores[static_cast<size_t>(i)] = score_layout(native, dev, candidates[static_cast<size_t>(i)]);
        cx_counts[static_cast<size_t>(i)] =
            count_gates(route(native, dev, candidates[static_cast<size_t>(i)]).circuit).cx;
    }

    size_t best = 0;
    for (size_t i = 1; i < candidates.size(); ++i) {
        if (scores[i] > scores[best] + 1e-12) {
            best = i;
        } else if (std::abs(scores[i] - scores[best]) <= 1e-12) {
            if (cx_counts[i] < cx_counts[best]) {
                best = i;
            } else if (cx_counts[i] == cx_counts[best] && candidates[i].v2p < candidates[best].v2p) {
                best = i;
            }
        }
    }
    return candidates[best];
}

GateCounts count_gates(const Circuit& circuit) {
    GateCounts gc;
    std::vector<int> depth(static_cast<size_t>(circuit.num_qubits), 0);
    for (const Gate& g : circuit.gates) {
        if (g.is_directive()) continue;
        if (g.kind == GateKind::CX || g.kind == GateKind::U2Q) ++gc.cx;
        else if (g.kind != GateKind::MEASURE) ++gc.one_qubit;
        int d = 0;
        for (int q : g.qubits) d = std::max(d, depth[static_cast<size_t>(q)]);
        for (int q : g.qubits) depth[static_cast<size_t>(q)] = d + 1;
    }
    for (int d : depth) gc.depth = std::max(gc.depth, d);
    return gc;
}

}  // namespace quell
