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

// Intermediate representation, OpenQASM text form, and measurement
// distributions.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "quell/circuit.hpp"
#include "quell/distribution.hpp"
#include "quell/errors.hpp"
#include "quell/qasm.hpp"

using namespace quell;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("gate factories fill the documented fields") {
    CHECK(Gate::rz(3, 0.5).qubits == std::vector<int>{3});
    CHECK(Gate::rz(3, 0.5).angle == 0.5);
    CHECK(Gate::cx(2, 5).qubits == std::vector<int>{2, 5});
    CHECK(Gate::measure(1, 4).clbit == 4);
    CHECK(Gate::barrier().qubits.empty());
    CHECK(Gate::h(0).kind == GateKind::H);

    CHECK(Gate::arity(GateKind::RZ) == 1);
    CHECK(Gate::arity(GateKind::CX) == 2);
    CHECK(Gate::arity(GateKind::U2Q) == 2);
    CHECK(Gate::arity(GateKind::BARRIER) == 0);

    CHECK(std::string(gate_kind_name(GateKind::RZ)) == "rz");
    CHECK(std::string(gate_kind_name(GateKind::SX)) == "sx");
    CHECK(std::string(gate_kind_name(GateKind::CX)) == "cx");
    CHECK(std::string(gate_kind_name(GateKind::MEASURE)) == "measure");

    CHECK(Gate::measure(0, 0).is_directive());
    CHECK(Gate::barrier().is_directive());
    CHECK_FALSE(Gate::x(0).is_directive());
}

TEST_CASE("circuit validation rejects malformed gates") {
    SUBCASE("wrong operand count") {
        Circuit c(2, 0);
        Gate g;
        g.kind = GateKind::CX;
        g.qubits = {0};
        c.add(g);
        CHECK_THROWS_AS(c.validate(), validation_error);
    }
    SUBCASE("qubit index out of range") {
        Circuit c(3, 0);
        c.add(Gate::cx(0, 5));
        CHECK_THROWS_AS(c.validate(), validation_error);
    }
    SUBCASE("repeated operand") {
        Circuit c(3, 0);
        c.add(Gate::cx(1, 1));
        CHECK_THROWS_AS(c.validate(), validation_error);
    }
    SUBCASE("two-qubit matrix must have 16 entries") {
        Circuit c(2, 0);
        Gate g;
        g.kind = GateKind::U2Q;
        g.qubits = {0, 1};
        g.matrix.assign(4, {1.0, 0.0});
        c.add(g);
        CHECK_THROWS_AS(c.validate(), validation_error);
    }
    SUBCASE("two-qubit matrix must be unitary") {
        Circuit c(2, 0);
        c.add(Gate::u2q(0, 1, std::vector<std::complex<double>>(16, {1.0, 0.0})));
        CHECK_THROWS_AS(c.validate(), validation_error);
    }
    SUBCASE("clbit written twice") {
        Circuit c(2, 1);
        c.add(Gate::measure(0, 0)).add(Gate::measure(1, 0));
        CHECK_THROWS_AS(c.validate(), validation_error);
    }
    SUBCASE("well-formed circuit passes") {
        Circuit c(2, 2);
        c.add(Gate::h(0)).add(Gate::cx(0, 1)).add(Gate::barrier());
        c.add(Gate::measure(0, 0)).add(Gate::measure(1, 1));
        CHECK_NOTHROW(c.validate());
    }
}

TEST_CASE("active qubits and clbit sources") {
    Circuit c(4, 3);
    c.add(Gate::h(0)).add(Gate::cx(0, 2)).add(Gate::measure(2, 1));
    CHECK(c.active_qubits() == std::vector<int>{0, 2});
    CHECK(c.clbit_sources() == std::vector<int>{-1, 2, -1});
}

TEST_CASE("qasm round-trip is gate-exact") {
    // Angles chosen to exercise the printer: an irrational sum, a tiny
    // negative magnitude, a value one ulp away from 1, and plain pi.
    Circuit c(3, 2);
    c.add(Gate::h(0));
    c.add(Gate::x(1));
    c.add(Gate::sx(2));
    c.add(Gate::rz(0, 0.1 + kPi / 3.0));
    c.add(Gate::rz(1, -2.5e-17));
    c.add(Gate::rz(2, std::nextafter(1.0, 2.0)));
    c.add(Gate::rz(0, kPi));
    c.add(Gate::cx(0, 2));
    c.add(Gate::barrier());
    c.add(Gate::measure(0, 0));
    c.add(Gate::measure(2, 1));

    const Circuit back = parse_qasm(emit_qasm(c));
    REQUIRE(back.num_qubits == c.num_qubits);
    REQUIRE(back.num_clbits == c.num_clbits);
    // Gate operator== compares angles bit-exactly, which is the guarantee
    // the emitter makes.
    CHECK(back == c);
}

TEST_CASE("qasm parser handles the documented subset") {
    const std::string text = R"(OPENQASM 2.0;
include "qelib1.inc";
// prepare, entangle, read out
qreg q[3];
creg c[2];
h q[0];
rz(pi/4) q[0];
rz(-3*pi/8 + 0.25) q[1];
rz((pi)/2*3) q[2];
sx q[1];
cx q[0], q[2];
barrier q[0], q[1];
measure q[0] -> c[0];
measure q[2] -> c[1];
)";
    const Circuit c = parse_qasm(text);
    REQUIRE(c.num_qubits == 3);
    REQUIRE(c.num_clbits == 2);
    REQUIRE(c.gates.size() == 9);
    CHECK(c.gates[0].kind == GateKind::H);
    CHECK(c.gates[1].angle == doctest::Approx(kPi / 4.0).epsilon(1e-15));
    CHECK(c.gates[2].angle == doctest::Approx(-3.0 * kPi / 8.0 + 0.25).epsilon(1e-15));
    CHECK(c.gates[3].angle == doctest::Approx(kPi / 2.0 * 3.0).epsilon(1e-15));
    // A qubit-list barrier normalizes to the full-width directive.
    CHECK(c.gates[6].kind == GateKind::BARRIER);
    CHECK(c.gates[6].qubits.empty());
    CHECK(c.gates[7].kind == GateKind::MEASURE);
    CHECK(c.gates[7].qubits == std::vector<int>{0});
    CHECK(c.gates[7].clbit == 0);
}

TEST_CASE("qasm parser names the offending token and position") {
    const std::string text = "OPENQASM 2.0;\nqreg q[2];\ncreg c[2];\nfoo q[0];\n";
    try {
        parse_qasm(text);
        FAIL("expected validation_error");
    } catch (const validation_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("foo") != std::string::npos);
        CHECK(msg.find("4:") != std::string::npos);
    }
}

TEST_CASE("qasm parser rejects constructs outside the subset") {
    CHECK_THROWS_AS(parse_qasm("OPENQASM 2.0;\nqreg q[1];\nqreg r[1];\n"), validation_error);
    CHECK_THROWS_AS(parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncreg c[2];\nry(0.5) q[0];\n"),
                    validation_error);
    CHECK_THROWS_AS(parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncreg c[2];\nx q[0]\n"),
                    validation_error);  // missing semicolon
    CHECK_THROWS_AS(parse_qasm(""), validation_error);
}

TEST_CASE("qasm emitter refuses unlowered two-qubit unitaries") {
    Circuit c(2, 0);
    std::vector<std::complex<double>> id(16, {0.0, 0.0});
    for (int i = 0; i < 4; ++i) id[static_cast<std::size_t>(i) * 4 + i] = {1.0, 0.0};
    c.add(Gate::u2q(0, 1, id));
    CHECK_THROWS_AS(emit_qasm(c), validation_error);
}

TEST_CASE("sampled distributions derive probabilities from counts") {
    const Distribution d = Distribution::from_counts(2, {{"01", 3}, {"11", 1}});
    CHECK(d.shots == 4);
    CHECK(d.width == 2);
    CHECK(d.prob("01") == 0.75);
    CHECK(d.prob("11") == 0.25);
    CHECK(d.prob("00") == 0.0);
}

TEST_CASE("marginal reorders and sums over discarded clbits") {
    const Distribution d = Distribution::from_counts(3, {{"010", 2}, {"110", 1}, {"001", 5}});
    // Output character i is clbits[i] of the parent string.
    const Distribution m = marginal(d, {2, 0});
    CHECK(m.width == 2);
    CHECK(m.shots == 8);
    CHECK(m.counts.at("00") == 2);
    CHECK(m.counts.at("01") == 1);
    CHECK(m.counts.at("10") == 5);
}

TEST_CASE("pauli expectation is a parity over the supported clbits") {
    const Distribution bell = Distribution::from_probs(2, {{"00", 0.5}, {"11", 0.5}});
    CHECK(pauli_expectation(bell, "ZZ") == doctest::Approx(1.0));
    CHECK(pauli_expectation(bell, "ZI") == doctest::Approx(0.0));
    // X and Z act identically here: basis rotation is the caller's job.
    CHECK(pauli_expectation(bell, "XZ") == doctest::Approx(1.0));
    CHECK(pauli_expectation(bell, "II") == 1.0);

    const Distribution anti = Distribution::from_probs(2, {{"01", 0.5}, {"10", 0.5}});
    CHECK(pauli_expectation(anti, "ZZ") == doctest::Approx(-1.0));
}

TEST_CASE("distribution json round-trip") {
    const Distribution sampled = Distribution::from_counts(2, {{"00", 7}, {"10", 9}});
    const Distribution s2 = Distribution::from_json_text(sampled.to_json_text());
    CHECK(s2.width == sampled.width);
    CHECK(s2.shots == sampled.shots);
    CHECK(s2.counts == sampled.counts);
    CHECK(s2.probs == sampled.probs);

    const Distribution exact = Distribution::from_probs(1, {{"0", 0.25}, {"1", 0.75}});
    const Distribution e2 = Distribution::from_json_text(exact.to_json_text());
    CHECK(e2.shots == 0);
    CHECK(e2.probs == exact.probs);

    CHECK_THROWS_AS(Distribution::from_json_text("{not json"), validation_error);
}
