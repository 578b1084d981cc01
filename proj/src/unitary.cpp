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

#include "quell/unitary.hpp"

#include <cmath>

namespace quell {

namespace detail {

void gate_matrix_1q(const Gate& g, cplx out[4]) {
    switch (g.kind) {
        case GateKind::RZ: {
            out[0] = std::polar(1.0, -0.5 * g.angle);
            out[1] = 0.0;
            out[2] = 0.0;
            out[3] = std::polar(1.0, 0.5 * g.angle);
            return;
        }
        case GateKind::SX: {
            out[0] = cplx(0.5, 0.5);
            out[1] = cplx(0.5, -0.5);
            out[2] = cplx(0.5, -0.5);
            out[3] = cplx(0.5, 0.5);
            return;
        }
        case GateKind::X: {
            out[0] = 0.0;
            out[1] = 1.0;
            out[2] = 1.0;
            out[3] = 0.0;
            return;
        }
        case GateKind::H: {
            const double s = 1.0 / std::sqrt(2.0);
            out[0] = s;
            out[1] = s;
            out[2] = s;
            out[3] = -s;
            return;
        }
        default: throw validation_error("gate_matrix_1q: not a single-qubit unitary");
    }
}

void gate_matrix_2q(const Gate& g, cplx out[16]) {
    if (g.kind == GateKind::CX) {
        for (int i = 0; i < 16; ++i) out[i] = 0.0;
        out[0 * 4 + 0] = 1.0;   // |00> -> |00>
        out[1 * 4 + 1] = 1.0;   // |01> -> |01>
        out[2 * 4 + 3] = 1.0;   // |11> -> |10>  (control = high bit)
        out[3 * 4 + 2] = 1.0;   // |10> -> |11>
        return;
    }
    if (g.kind == GateKind::U2Q) {
        for (int i = 0; i < 16; ++i) out[i] = g.matrix[static_cast<size_t>(i)];
        return;
    }
    throw validation_error("gate_matrix_2q: not a two-qubit gate");
}

void apply_1q(cplx* amp, int n, int q, const cplx m[4]) {
    const std::size_t half = std::size_t{1} << (n - 1);
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t k = 0; k < half; ++k) {
        const std::size_t i0 = insert_zero(k, q);
        const std::size_t i1 = i0 | bit;
        const cplx a0 = amp[i0];
        const cplx a1 = amp[i1];
        amp[i0] = m[0] * a0 + m[1] * a1;
        amp[i1] = m[2] * a0 + m[3] * a1;
    }
}

void apply_2q(cplx* amp, int n, int q_hi, int q_lo, const cplx m[16]) {
    const std::size_t quarter = std::size_t{1} << (n - 2);
    const std::size_t bh = std::size_t{1} << q_hi;
    const std::size_t bl = std::size_t{1} << q_lo;
    const int q_min = q_hi < q_lo ? q_hi : q_lo;
    const int q_max = q_hi < q_lo ? q_lo : q_hi;
    for (std::size_t k = 0; k < quarter; ++k) {
        const std::size_t base = insert_zero(insert_zero(k, q_min), q_max);
        const std::size_t idx[4] = {base, base | bl, base | bh, base | bh | bl};
        cplx v[4];
        for (int r = 0; r < 4; ++r) v[r] = amp[idx[r]];
        for (int r = 0; r < 4; ++r)
            amp[idx[r]] = m[r * 4 + 0] * v[0] + m[r * 4 + 1] * v[1] + m[r * 4 + 2] * v[2] + m[r * 4 + 3] * v[3];
    }
}

void apply_gate(cplx* amp, int n, const Gate& g) {
    switch (g.kind) {
        case GateKind::BARRIER: return;
        case GateKind::MEASURE: throw validation_error("apply_gate: MEASURE has no unitary action");
        case GateKind::RZ: {
            // Diagonal: one multiply per amplitude, no pairing pass.
            const std::size_t dim = std::size_t{1} << n;
            const std::size_t bit = std::size_t{1} << g.qubits[0];
            const cplx e0 = std::polar(1.0, -0.5 * g.angle);
            const cplx e1 = std::polar(1.0, 0.5 * g.angle);
            for (std::size_t i = 0; i < dim; ++i) amp[i] *= (i & bit) ? e1 : e0;
            return;
        }
        case GateKind::X: {
            const std::size_t half = std::size_t{1} << (n - 1);
            const std::size_t bit = std::size_t{1} << g.qubits[0];
            for (std::size_t k = 0; k < half; ++k) {
                const std::size_t i0 = insert_zero(k, g.qubits[0]);
                std::swap(amp[i0], amp[i0 | bit]);
            }
            return;
        }
        case GateKind::CX: {
            // Permutation: swap the target pair wherever the control is set.
            const std::size_t quarter = std::size_t{1} << (n - 2);
            const std::size_t bc = std::size_t{1} << g.qubits[0];
            const std::size_t bt = std::size_t{1} << g.qubits[1];
            const int q_min = g.qubits[0] < g.qubits[1] ? g.qubits[0] : g.qubits[1];
            const int q_max = g.qubits[0] < g.qubits[1] ? g.qubits[1] : g.qubits[0];
            for (std::size_t k = 0; k < quarter; ++k) {
                const std::size_t i0 = insert_zero(insert_zero(k, q_min), q_max) | bc;
                std::swap(amp[i0], amp[i0 | bt]);
            }
            return;
        }
        case GateKind::U2Q: {
            cplx m[16];
            gate_matrix_2q(g, m);
            apply_2q(amp, n, g.qubits[0], g.qubits[1], m);
            return;
        }
        default: {
            cplx m[4];
            gate_matrix_1q(g, m);
            apply_1q(amp, n, g.qubits[0], m);
            return;
        }
    }
}

}  // namespace detail

Eigen::MatrixXcd unitary_of(const Circuit& circuit) {
    circuit.validate();
    if (circuit.num_qubits > 10)
        throw validation_error("unitary_of: capped at 10 qubits (got " + std::to_string(circuit.num_qubits) + ")");
    const std::size_t dim = std::size_t{1} << circuit.num_qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(static_cast<long>(dim), static_cast<long>(dim));
    for (const Gate& g : circuit.gates) {
        if (g.kind == GateKind::MEASURE) throw validation_error("unitary_of: circuit contains a measurement");
        for (long col = 0; col < static_cast<long>(dim); ++col)
            detail::apply_gate(u.col(col).data(), circuit.num_qubits, g);
    }
    return u;
}

double phase_aligned_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
    Eigen::Index r = 0, c = 0;
    a.cwiseAbs().maxCoeff(&r, &c);
    std::complex<double> pa = a(r, c);
    std::complex<double> pb = b(r, c);
    if (std::abs(pa) < 1e-12 || std::abs(pb) < 1e-12) return (a - b).cwiseAbs().maxCoeff();
    std::complex<double> phase = (pa / std::abs(pa)) / (pb / std::abs(pb));
    return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace quell
