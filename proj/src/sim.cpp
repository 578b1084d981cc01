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

#include "quell/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "quell/errors.hpp"
#include "quell/rng.hpp"
#include "quell/unitary.hpp"

namespace quell {

namespace {

using detail::cplx;

constexpr int kMaxQubits = 16;

// A fully resolved trajectory program: gates remapped onto the compact
// register of active qubits, interleaved with precomputed noise events.
struct Event {
    enum Kind { kGate, kIdle, kZz } kind;
    std::int64_t time;
    int priority;  // idle/zz windows apply before gates tied at `time`
    Gate gate;     // kGate
    double error = 0.0;
    int q = -1;               // kIdle
    double p_damp = 0.0;      // kIdle
    double p_flip = 0.0;      // kIdle
    int a = -1, b = -1;       // kZz
    double theta = 0.0;       // kZz: exp(-i theta/2 Z(x)Z)
};

struct Program {
    int n = 0;  // compact register width
    std::vector<Event> events;
    std::vector<int> clbit_src;  // clbit -> compact qubit, -1 if unmeasured
    int num_clbits = 0;
    // Per clbit: probability of misreading [true bit 0, true bit 1].
    std::vector<std::array<double, 2>> flip;
    bool stochastic = false;
};

Program build_program(const ScheduledCircuit& sc, const DeviceModel& dev) {
    if (sc.num_qubits > dev.num_qubits)
        throw validation_error("sim: circuit is wider than the device");

    // Compact map: device qubit -> dense simulated index.
    std::vector<int> qmap(static_cast<size_t>(sc.num_qubits), -1);
    int n = 0;
    for (const TimedGate& tg : sc.timed) {
        if (tg.gate.kind == GateKind::BARRIER) continue;
        for (int q : tg.gate.qubits)
            if (qmap[static_cast<size_t>(q)] < 0) qmap[static_cast<size_t>(q)] = n++;
    }
    if (n > kMaxQubits) throw validation_error("sim: more than 16 active qubits");

    Program pr;
    pr.n = std::max(n, 1);
    pr.num_clbits = sc.num_clbits;
    pr.clbit_src.assign(static_cast<size_t>(sc.num_clbits), -1);
    pr.flip.assign(static_cast<size_t>(sc.num_clbits), {0.0, 0.0});

    std::vector<std::int64_t> measured_at(static_cast<size_t>(sc.num_qubits), -1);
    for (const TimedGate& tg : sc.timed) {
        const Gate& g = tg.gate;
        if (g.kind == GateKind::BARRIER) continue;
        for (int q : g.qubits) {
            if (measured_at[static_cast<size_t>(q)] >= 0 && tg.start >= measured_at[static_cast<size_t>(q)])
                throw validation_error("sim: operation on qubit " + std::to_string(q) +
                                       " after its measurement");
        }
        if (g.kind == GateKind::MEASURE) {
            int q = g.qubits[0];
            measured_at[static_cast<size_t>(q)] = tg.start;
            pr.clbit_src[static_cast<size_t>(g.clbit)] = qmap[static_cast<size_t>(q)];
            auto c = dev.confusion(q);
            pr.flip[static_cast<size_t>(g.clbit)] = {c[1][0], c[0][1]};
            if (c[1][0] > 0.0 || c[0][1] > 0.0) pr.stochastic = true;
            continue;
        }
        Event ev;
        ev.kind = Event::kGate;
        ev.time = tg.start;
        ev.priority = 1;
        ev.gate = g;
        for (int& q : ev.gate.qubits) q = qmap[static_cast<size_t>(q)];
        ev.error = dev.error_for(g);
        if (ev.error > 0.0) pr.stochastic = true;
        pr.events.push_back(std::move(ev));
    }

    // Idle-window decay, one event per window applied at the window's end.
    for (int q = 0; q < sc.num_qubits; ++q) {
        if (qmap[static_cast<size_t>(q)] < 0) continue;
        double t1 = dev.t1_ns[static_cast<size_t>(q)];
        double tphi = dev.tphi_ns(q);
        for (const IdleWindow& w : sc.idle_windows[static_cast<size_t>(q)]) {
            Event ev;
            ev.kind = Event::kIdle;
            ev.time = w.t1;
            ev.priority = 0;
            ev.q = qmap[static_cast<size_t>(q)];
            double t = static_cast<double>(w.len());
            ev.p_damp = std::isinf(t1) ? 0.0 : 1.0 - std::exp(-t / t1);
            ev.p_flip = std::isinf(tphi) ? 0.0 : 0.5 * (1.0 - std::exp(-t / tphi));
            if (ev.p_damp > 0.0 || ev.p_flip > 0.0) {
                pr.stochastic = true;
                pr.events.push_back(ev);
            }
        }
    }

    // Always-on ZZ coupling over maximal intervals where both endpoints of
    // an edge are idle, applied at the interval's end.
    for (const auto& [ea, eb] : dev.edges) {
        if (ea >= sc.num_qubits || eb >= sc.num_qubits) continue;
        if (qmap[static_cast<size_t>(ea)] < 0 || qmap[static_cast<size_t>(eb)] < 0) continue;
        double zeta = dev.zz(ea, eb);
        if (zeta == 0.0) continue;
        const auto& wa = sc.idle_windows[static_cast<size_t>(ea)];
        const auto& wb = sc.idle_windows[static_cast<size_t>(eb)];
        size_t i = 0, j = 0;
        while (i < wa.size() && j < wb.size()) {
            std::int64_t lo = std::max(wa[i].t0, wb[j].t0);
            std::int64_t hi = std::min(wa[i].t1, wb[j].t1);
            if (hi > lo) {
                Event ev;
                ev.kind = Event::kZz;
                ev.time = hi;
                ev.priority = 0;
                ev.a = qmap[static_cast<size_t>(ea)];
                ev.b = qmap[static_cast<size_t>(eb)];
                ev.theta = zeta * static_cast<double>(hi - lo);
                pr.events.push_back(ev);
            }
            if (wa[i].t1 <= wb[j].t1) ++i;
            else ++j;
        }
    }

    std::stable_sort(pr.events.begin(), pr.events.end(), [](const Event& x, const Event& y) {
        if (x.time != y.time) return x.time < y.time;
        return x.priority < y.priority;
    });
    return pr;
}

// X, Y or Z (p = 1, 2, 3) applied in place.
void apply_pauli(cplx* amp, int n, int q, int p) {
    const size_t bit = size_t{1} << q;
    if (p == 3) {
        const size_t dim = size_t{1} << n;
        for (size_t i = 0; i < dim; ++i)
            if (i & bit) amp[i] = -amp[i];
        return;
    }
    const size_t half = size_t{1} << (n - 1);
    for (size_t k = 0; k < half; ++k) {
        const size_t i0 = detail::insert_zero(k, q);
        cplx& a0 = amp[i0];
        cplx& a1 = amp[i0 | bit];
        if (p == 1) {
            std::swap(a0, a1);
        } else {
            cplx t = a0;
            a0 = cplx(0, -1) * a1;
            a1 = cplx(0, 1) * t;
        }
    }
}

// |1> population of qubit bit `bit`, summed in index order so every caller
// produces the bit-identical double.
double population1(const cplx* amp, size_t dim, size_t bit) {
    double p1 = 0.0;
    for (size_t i = 0; i < dim; ++i)
        if (i & bit) p1 += std::norm(amp[i]);
    return p1;
}

void damp_jump(cplx* amp, int n, int q, double p1) {
    const size_t half = size_t{1} << (n - 1);
    const size_t bit = size_t{1} << q;
    const double s = 1.0 / std::sqrt(p1);
    for (size_t k = 0; k < half; ++k) {
        const size_t base = detail::insert_zero(k, q);
        amp[base] = amp[base | bit] * s;
        amp[base | bit] = 0.0;
    }
}

void damp_no_jump(cplx* amp, size_t dim, size_t bit, double p, double q1) {
    const double norm = std::sqrt(1.0 - q1);
    const double s0 = 1.0 / norm;
    const double s1 = std::sqrt(1.0 - p) / norm;
    for (size_t i = 0; i < dim; ++i) amp[i] *= (i & bit) ? s1 : s0;
}

void apply_amplitude_damping(cplx* amp, int n, int q, double p, Rng& rng) {
    const size_t dim = size_t{1} << n;
    const size_t bit = size_t{1} << q;
    const double p1 = population1(amp, dim, bit);
    const double q1 = p * p1;  // probability of the decay branch
    if (rng.uniform() < q1) damp_jump(amp, n, q, p1);
    else damp_no_jump(amp, dim, bit, p, q1);
}

void apply_zz(cplx* amp, int n, int qa, int qb, double theta) {
    const size_t dim = size_t{1} << n;
    const size_t ba = size_t{1} << qa;
    const size_t bb = size_t{1} << qb;
    const cplx same = std::polar(1.0, -0.5 * theta);
    const cplx diff = std::polar(1.0, 0.5 * theta);
    for (size_t i = 0; i < dim; ++i)
        amp[i] *= (((i & ba) != 0) == ((i & bb) != 0)) ? same : diff;
}

// The deterministic no-deviation trajectory: no Pauli fires and every
// damping event takes its no-jump branch. Each shot follows this evolution
// exactly until its first deviation, so the shared prefix is computed once
// instead of once per shot; a shot with no deviation at all never touches a
// statevector (its outcome is sampled straight from the reference CDF).
struct Reference {
    static constexpr int kStride = 16;       // events per checkpoint
    std::vector<std::vector<cplx>> checkpoints;  // state before event k*kStride
    std::vector<double> q1;   // per-event damping jump threshold (idle only)
    std::vector<double> cdf;  // inclusive prefix sums of the final |amp|^2
};

// Advances `amp` across one event of the no-deviation trajectory. `q1` is
// the precomputed jump threshold for idle events (pass ev_q1 from the
// reference when replaying).
void apply_reference_event(const Program& pr, const Event& ev, cplx* amp, double ev_q1) {
    const size_t dim = size_t{1} << pr.n;
    switch (ev.kind) {
        case Event::kGate:
            detail::apply_gate(amp, pr.n, ev.gate);
            break;
        case Event::kIdle:
            if (ev.p_damp > 0.0)
                damp_no_jump(amp, dim, size_t{1} << ev.q, ev.p_damp, ev_q1);
            break;
        case Event::kZz:
            apply_zz(amp, pr.n, ev.a, ev.b, ev.theta);
            break;
    }
}

Reference build_reference(const Program& pr) {
    Reference ref;
    const size_t dim = size_t{1} << pr.n;
    ref.q1.assign(pr.events.size(), 0.0);
    std::vector<cplx> amp(dim, cplx(0));
    amp[0] = 1.0;
    for (size_t e = 0; e < pr.events.size(); ++e) {
        if (e % Reference::kStride == 0) ref.checkpoints.push_back(amp);
        const Event& ev = pr.events[e];
        if (ev.kind == Event::kIdle && ev.p_damp > 0.0)
            ref.q1[e] = ev.p_damp * population1(amp.data(), dim, size_t{1} << ev.q);
        apply_reference_event(pr, ev, amp.data(), ref.q1[e]);
    }
    ref.cdf.resize(dim);
    double acc = 0.0;
    for (size_t i = 0; i < dim; ++i) {
        acc += std::norm(amp[i]);
        ref.cdf[i] = acc;
    }
    return ref;
}

// Measurement + readout misassignment, shared by both shot paths. `rng`
// must be positioned exactly after the last event draw.
std::uint32_t readout_word(const Program& pr, size_t outcome, Rng& rng) {
    std::uint32_t word = 0;
    for (int c = 0; c < pr.num_clbits; ++c) {
        int src = pr.clbit_src[static_cast<size_t>(c)];
        int bit = src < 0 ? 0 : static_cast<int>((outcome >> src) & 1);
        double pf = pr.flip[static_cast<size_t>(c)][static_cast<size_t>(bit)];
        if (pf > 0.0 && rng.uniform() < pf) bit ^= 1;
        word |= static_cast<std::uint32_t>(bit) << c;
    }
    return word;
}

// One trajectory; returns the readout word (bit i = clbit i). The draw
// sequence is a pure function of (seed, shot) and is identical whether the
// shot is resolved against the reference or evolved event by event, so the
// sampled distribution does not depend on the execution strategy.
std::uint32_t run_shot(const Program& pr, const Reference& ref, std::vector<cplx>& amp,
                       std::uint64_t seed, std::int64_t shot) {
    const size_t dim = size_t{1} << pr.n;

    // Pass 1: scalar walk of the decision stream against the reference
    // thresholds, to find the first event where this shot deviates.
    Rng rng(seed, static_cast<std::uint64_t>(shot));
    size_t first = pr.events.size();
    std::uint64_t draws = 0;  // uniforms consumed before event `first`
    for (size_t e = 0; e < pr.events.size() && first == pr.events.size(); ++e) {
        const Event& ev = pr.events[e];
        if (ev.kind == Event::kGate) {
            if (ev.error > 0.0) {
                if (rng.uniform() < ev.error) first = e;
                else ++draws;
            }
        } else if (ev.kind == Event::kIdle) {
            std::uint64_t mine = 0;
            if (ev.p_damp > 0.0) {
                if (rng.uniform() < ref.q1[e]) first = e;
                else ++mine;
            }
            if (first == pr.events.size() && ev.p_flip > 0.0) {
                if (rng.uniform() < ev.p_flip) first = e;
                else ++mine;
            }
            if (first == pr.events.size()) draws += mine;
        }
    }

    if (first == pr.events.size()) {
        // No deviation: `rng` sits exactly where the event loop would have
        // left it, and the final state is the reference state.
        const double r = rng.uniform();
        const auto it = std::upper_bound(ref.cdf.begin(), ref.cdf.end(), r);
        const size_t outcome = it == ref.cdf.end() ? dim - 1
                                                   : static_cast<size_t>(it - ref.cdf.begin());
        return readout_word(pr, outcome, rng);
    }

    // Deviating shot: restore the nearest checkpoint, replay the untouched
    // reference prefix, then run the remaining events with a re-seeded
    // generator fast-forwarded past the prefix draws (so event `first`
    // re-draws the same uniforms and deviates again).
    const size_t cp = first / Reference::kStride;
    amp = ref.checkpoints[cp];
    for (size_t e = cp * Reference::kStride; e < first; ++e)
        apply_reference_event(pr, pr.events[e], amp.data(), ref.q1[e]);

    Rng tail(seed, static_cast<std::uint64_t>(shot));
    for (std::uint64_t i = 0; i < draws; ++i) tail.uniform();

    for (size_t e = first; e < pr.events.size(); ++e) {
        const Event& ev = pr.events[e];
        switch (ev.kind) {
            case Event::kGate: {
                detail::apply_gate(amp.data(), pr.n, ev.gate);
                if (ev.error > 0.0 && tail.uniform() < ev.error) {
                    if (ev.gate.qubits.size() == 1) {
                        apply_pauli(amp.data(), pr.n, ev.gate.qubits[0],
                                    static_cast<int>(tail.below(3)) + 1);
                    } else {
                        int k = static_cast<int>(tail.below(15)) + 1;
                        if (k >> 2) apply_pauli(amp.data(), pr.n, ev.gate.qubits[0], k >> 2);
                        if (k & 3) apply_pauli(amp.data(), pr.n, ev.gate.qubits[1], k & 3);
                    }
                }
                break;
            }
            case Event::kIdle: {
                if (ev.p_damp > 0.0)
                    apply_amplitude_damping(amp.data(), pr.n, ev.q, ev.p_damp, tail);
                if (ev.p_flip > 0.0 && tail.uniform() < ev.p_flip)
                    apply_pauli(amp.data(), pr.n, ev.q, 3);
                break;
            }
            case Event::kZz:
                apply_zz(amp.data(), pr.n, ev.a, ev.b, ev.theta);
                break;
        }
    }

    // Projective measurement of the full register.
    const double r = tail.uniform();
    size_t outcome = dim - 1;
    double acc = 0.0;
    for (size_t i = 0; i < dim; ++i) {
        acc += std::norm(amp[i]);
        if (r < acc) {
            outcome = i;
            break;
        }
    }
    return readout_word(pr, outcome, tail);
}

std::string word_to_bits(std::uint32_t word, int width) {
    std::string s(static_cast<size_t>(width), '0');
    for (int i = 0; i < width; ++i)
        if ((word >> i) & 1) s[static_cast<size_t>(i)] = '1';
    return s;
}

Distribution counts_from_table(const std::vector<std::int64_t>& table, int width) {
    std::map<std::string, std::int64_t> counts;
    for (size_t w = 0; w < table.size(); ++w)
        if (table[w] > 0) counts[word_to_bits(static_cast<std::uint32_t>(w), width)] = table[w];
    return Distribution::from_counts(width, std::move(counts));
}

}  // namespace

Distribution simulate(const ScheduledCircuit& sc, const DeviceModel& dev, const SimOptions& opts) {
    if (sc.num_clbits < 1 || sc.num_clbits > kMaxQubits)
        throw validation_error("sim: classical register must have 1..16 bits");
    const Program pr = build_program(sc, dev);
    const size_t dim = size_t{1} << pr.n;
    const size_t words = size_t{1} << sc.num_clbits;

    if (opts.shots == 0) {
        if (pr.stochastic)
            throw validation_error(
                "sim: exact mode requires zero gate, decay and readout error rates");
        std::vector<cplx> amp(dim, cplx(0));
        amp[0] = 1.0;
        for (const Event& ev : pr.events) {
            if (ev.kind == Event::kGate) detail::apply_gate(amp.data(), pr.n, ev.gate);
            else if (ev.kind == Event::kZz) apply_zz(amp.data(), pr.n, ev.a, ev.b, ev.theta);
        }
        std::vector<double> table(words, 0.0);
        for (size_t i = 0; i < dim; ++i) {
            double p = std::norm(amp[i]);
            if (p == 0.0) continue;
            std::uint32_t word = 0;
            for (int c = 0; c < pr.num_clbits; ++c) {
                int src = pr.clbit_src[static_cast<size_t>(c)];
                if (src >= 0 && ((i >> src) & 1)) word |= 1u << c;
            }
            table[word] += p;
        }
        std::map<std::string, double> probs;
        for (size_t w = 0; w < words; ++w)
            if (table[w] > 0.0) probs[word_to_bits(static_cast<std::uint32_t>(w), sc.num_clbits)] = table[w];
        return Distribution::from_probs(sc.num_clbits, std::move(probs));
    }

    if (opts.shots < 0) throw validation_error("sim: negative shot count");
    const Reference ref = build_reference(pr);
    std::vector<std::int64_t> table(words, 0);

    if (opts.policy == ExecPolicy::OpenMP) {
#pragma omp parallel
        {
            std::vector<cplx> amp(dim);
            std::vector<std::int64_t> local(words, 0);
#pragma omp for schedule(static)
            for (std::int64_t shot = 0; shot < opts.shots; ++shot)
                ++local[run_shot(pr, ref, amp, opts.seed, shot)];
#pragma omp critical
            for (size_t w = 0; w < words; ++w) table[w] += local[w];
        }
    } else {
        std::vector<cplx> amp(dim);
        for (std::int64_t shot = 0; shot < opts.shots; ++shot)
            ++table[run_shot(pr, ref, amp, opts.seed, shot)];
    }
    return counts_from_table(table, sc.num_clbits);
}

std::vector<std::complex<double>> statevector(const Circuit& circuit) {
    circuit.validate();
    if (circuit.num_qubits > kMaxQubits) throw validation_error("sim: more than 16 qubits");
    const size_t dim = size_t{1} << circuit.num_qubits;
    std::vector<cplx> amp(dim, cplx(0));
    amp[0] = 1.0;
    for (const Gate& g : circuit.gates) {
        if (g.kind == GateKind::MEASURE || g.kind == GateKind::BARRIER) continue;
        detail::apply_gate(amp.data(), circuit.num_qubits, g);
    }
    return amp;
}

Distribution exact_distribution(const Circuit& circuit) {
    circuit.validate();
    if (circuit.num_qubits > kMaxQubits) throw validation_error("sim: more than 16 qubits");
    if (circuit.num_clbits < 1 || circuit.num_clbits > kMaxQubits)
        throw validation_error("sim: classical register must have 1..16 bits");
    std::vector<cplx> amp = statevector(circuit);
    std::vector<int> clbit_src(static_cast<size_t>(circuit.num_clbits), -1);
    for (const Gate& g : circuit.gates)
        if (g.kind == GateKind::MEASURE) clbit_src[static_cast<size_t>(g.clbit)] = g.qubits[0];

    std::map<std::string, double> probs;
    std::vector<double> table(size_t{1} << circuit.num_clbits, 0.0);
    for (size_t i = 0; i < amp.size(); ++i) {
        double p = std::norm(amp[i]);
        if (p == 0.0) continue;
        std::uint32_t word = 0;
        for (int c = 0; c < circuit.num_clbits; ++c) {
            int src = clbit_src[static_cast<size_t>(c)];
            if (src >= 0 && ((i >> src) & 1)) word |= 1u << c;
        }
        table[word] += p;
    }
    for (size_t w = 0; w < table.size(); ++w)
        if (table[w] > 0.0) probs[word_to_bits(static_cast<std::uint32_t>(w), circuit.num_clbits)] = table[w];
    return Distribution::from_probs(circuit.num_clbits, std::move(probs));
}

}  // namespace quell
