// Copyright 2026 The Quell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quell/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace quell {

const char* gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::RZ: return "rz";
        case GateKind::SX: return "sx";
        case GateKind::X: return "x";
        case GateKind::H: return "h";
        case GateKind::CX: return "cx";
        case GateKind::U2Q: return "u2q";
        case GateKind::MEASURE: return "measure";
        case GateKind::BARRIER: return "barrier";
    }
    return "?";
}

int Gate::arity(GateKind kind) {
    switch (kind) {
        case GateKind::CX:
        case GateKind::U2Q: return 2;
        case GateKind::BARRIER: return 0;
        default: return 1;
    }
}

Gate Gate::rz(int q, double angle) { return Gate{GateKind::RZ, {q}, angle, -1, {}}; }
Gate Gate::sx(int q) { return Gate{GateKind::SX, {q}, 0.0, -1, {}}; }
Gate Gate::x(int q) { return Gate{GateKind::X, {q}, 0.0, -1, {}}; }
Gate Gate::h(int q) { return Gate{GateKind::H, {q}, 0.0, -1, {}}; }
Gate Gate::cx(int control, int target) { return Gate{GateKind::CX, {control, target}, 0.0, -1, {}}; }

Gate Gate::u2q(int q0, int q1, std::vector<std::complex<double>> m) {
    return Gate{GateKind::U2Q, {q0, q1}, 0.0, -1, std::move(m)};
}

Gate Gate::measure(int q, int clbit) { return Gate{GateKind::MEASURE, {q}, 0.0, clbit, {}}; }
Gate Gate::barrier() { return Gate{GateKind::BARRIER, {}, 0.0, -1, {}}; }

namespace {

// |sum_k U[i][k]*conj(U[j][k]) - delta_ij| checked row by row.
bool is_unitary_4x4(const std::vector<std::complex<double>>& m, double tol) {
    if (m.size() != 16) return false;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            std::complex<double> s = 0.0;
            for (int k = 0; k < 4; ++k) s += m[i * 4 + k] * std::conj(m[j * 4 + k]);
            if (std::abs(s - (i == j ? 1.0 : 0.0)) > tol) return false;
        }
    }
    return true;
}

}  // namespace

void Circuit::validate() const {
    if (num_qubits < 0 || num_clbits < 0) throw validation_error("negative register size");
    std::vector<char> clbit_written(static_cast<size_t>(num_clbits), 0);
    for (size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        const std::string where = "gate " + std::to_string(i) + " (" + gate_kind_name(g.kind) + ")";
        if (g.kind != GateKind::BARRIER && static_cast<int>(g.qubits.size()) != Gate::arity(g.kind))
            throw validation_error(where + ": expected " + std::to_string(Gate::arity(g.kind)) +
                                   " qubit operand(s)");
        std::set<int> seen;
        for (int q : g.qubits) {
            if (q < 0 || q >= num_qubits)
                throw validation_error(where + ": qubit " + std::to_string(q) + " out of range");
            if (!seen.insert(q).second)
                throw validation_error(where + ": duplicate qubit operand " + std::to_string(q));
        }
        if (g.kind == GateKind::U2Q && !is_unitary_4x4(g.matrix, 1e-9))
            throw validation_error(where + ": matrix is not a 4x4 unitary");
        if (g.kind == GateKind::MEASURE) {
            if (g.clbit < 0 || g.clbit >= num_clbits)
                throw validation_error(where + ": clbit " + std::to_string(g.clbit) + " out of range");
            if (clbit_written[static_cast<size_t>(g.clbit)]++)
                throw validation_error(where + ": clbit " + std::to_string(g.clbit) +
                                       " written more than once");
        }
        if (g.kind != GateKind::RZ && g.angle != 0.0)
            throw validation_error(where + ": angle on non-RZ gate");
    }
}

std::vector<int> Circuit::active_qubits() const {
    std::set<int> act;
    for (const Gate& g : gates)
        for (int q : g.qubits) act.insert(q);
    return {act.begin(), act.end()};
}

std::vector<int> Circuit::clbit_sources() const {
    std::vector<int> src(static_cast<size_t>(num_clbits), -1);
    for (const Gate& g : gates)
        if (g.kind == GateKind::MEASURE) src[static_cast<size_t>(g.clbit)] = g.qubits[0];
    return src;
}

}  // namespace quell
