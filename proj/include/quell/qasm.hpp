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

#ifndef QUELL_QASM_HPP
#define QUELL_QASM_HPP

#include <string>

#include "quell/circuit.hpp"

namespace quell {

/// Parses an OpenQASM 2.0 subset into a Circuit.
///
/// Supported: a single `qreg` and a single `creg`; statements `h`, `x`,
/// `sx`, `rz(expr)`, `cx`, `barrier`, `measure q[i] -> c[j]`; `//` comments;
/// angle expressions over float literals and `pi` with + - * / and
/// parentheses. `include "qelib1.inc";` is accepted and ignored. Any other
/// construct raises validation_error naming the offending token and its
/// line:column position.
///
/// A bare `barrier;` and a qubit-list `barrier q[i], ...;` both normalize to
/// the full-width BARRIER of the IR (the scheduler treats every barrier as a
/// global synchronization point).
Circuit parse_qasm(const std::string& text);

/// Renders a Circuit back to the same OpenQASM 2.0 subset. Angles are
/// printed with enough digits that parse_qasm(emit_qasm(c)) reproduces the
/// circuit gate-for-gate, angles bit-identical. Circuits containing U2Q
/// gates are rejected (lower them with synth_2q first).
std::string emit_qasm(const Circuit& circuit);

}  // namespace quell

#endif
