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

#ifndef QUELL_GENERATORS_HPP
#define QUELL_GENERATORS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "quell/circuit.hpp"
#include "quell/distribution.hpp"
#include "quell/metrics.hpp"

namespace quell {

// Benchmark circuit generators. Every generator emits plain logical circuits
// (H/X/RZ/SX/CX plus measurements) that the transpiler lowers to the native
// set; none of them assume a particular device. Multi-controlled gates are
// expanded here, so downstream passes only ever see one- and two-qubit gates.

// ---------------------------------------------------------------------------
// Gate-construction helpers (exposed for reuse in tests and calibration).

/// Appends RY(theta) as SX, RZ(theta + pi), SX, RZ(pi).
void append_ry(Circuit& c, int q, double theta);

/// Appends a controlled phase diag(1,1,1,e^{i*theta}) on (control, target)
/// using two CX and three RZ (exact up to global phase).
void append_cp(Circuit& c, int control, int target, double theta);

/// Appends a Toffoli on (a, b) -> target via the standard six-CX network.
void append_ccx(Circuit& c, int a, int b, int target);

/// Appends a doubly-controlled Z (symmetric) as H-conjugated Toffoli.
void append_ccz(Circuit& c, int a, int b, int target);

// ---------------------------------------------------------------------------
// Bernstein-Vazirani.

/// Hidden-string circuit on n qubits: qubits 0..n-2 carry the query register,
/// qubit n-1 is the |-> ancilla. `oracle` holds the hidden string (character
/// i is qubit i); an empty string means all ones. Measures the query register
/// into clbits 0..n-2; noiseless output is a point mass on the hidden string.
Circuit gen_bv(int n, const std::string& oracle = "");

// ---------------------------------------------------------------------------
// Quantum Fourier transform echo.

/// Prepares the Fourier dual of basis state `input` (one H and one RZ per
/// qubit), applies the forward transform, and measures all n qubits. The
/// noiseless output is a point mass on `input` (character i = clbit i =
/// qubit i), so any spread is attributable to noise in the phase ladder.
Circuit gen_qft(int n, const std::string& input);

// ---------------------------------------------------------------------------
// Grover search over 5 bits.

/// Grover search on qubits 0..4 with work ancillas 5 and 6. `target` is the
/// 5-bit marked string (character i = qubit i); `iterations` is the number of
/// oracle+diffusion rounds (1 or 2). Measures qubits 0..4 into clbits 0..4.
Circuit gen_grover5(const std::string& target, int iterations = 2);

/// Exact success probability of textbook Grover search: sin^2((2k+1)*theta)
/// with theta = asin(2^{-n_bits/2}), independent of the marked string.
double grover_ideal_p(int n_bits, int iterations);

// ---------------------------------------------------------------------------
// QAOA energy landscape on a fixed weighted MaxCut instance.

/// Weighted undirected graph for MaxCut instances.
struct WeightedGraph {
    struct Edge {
        int a = 0;
        int b = 0;
        double w = 0.0;
    };
    int nodes = 0;
    std::vector<Edge> edges;

    double total_weight() const;
    void validate() const;

    std::string to_json_text(int indent = -1) const;
    static WeightedGraph from_json_text(const std::string& text);
};

/// The builtin 7-node instance used by the landscape benchmark: a 7-cycle
/// with three chords and mixed weights (total weight 5.5).
WeightedGraph maxcut7_instance();

/// Average cut weight of a measured distribution over `g.nodes` clbits
/// (character i = node i): sum over edges of w * P[endpoints differ].
double maxcut_cut_weight(const WeightedGraph& g, const Distribution& d);

/// A depth-p QAOA scan over a 2-D angle grid. Circuits are stored row-major:
/// circuits[iu * cols + iv] uses u = u_max * iu / (rows-1) and
/// v = v_max * iv / (cols-1). The per-layer angles follow a fixed interior
/// ramp: gamma_l = u * sin((l - 1/2) * pi / (2p)), beta_l = v * cos((l - 1/2)
/// * pi / (2p)), so (u, v) = (0, 0) is the identity circuit.
struct QaoaScan {
    WeightedGraph graph;
    int p = 0;
    int rows = 0;
    int cols = 0;
    double u_max = 0.0;
    double v_max = 0.0;
    std::vector<Circuit> circuits;
};

QaoaScan gen_qaoa_landscape(const WeightedGraph& g, int p = 3, int rows = 24, int cols = 24);

// ---------------------------------------------------------------------------
// Hardware-efficient VQE.

/// Sum of weighted Pauli strings. Character i of each string is qubit i;
/// letters are I/X/Y/Z. Text form is one term per line, "coeff paulis", with
/// '#' comments and blank lines ignored.
struct PauliHamiltonian {
    int width = 0;
    std::vector<std::pair<std::string, double>> terms;

    void validate() const;
    static PauliHamiltonian parse(const std::string& text);
};

/// One measurement circuit per Hamiltonian term, in term order. Each circuit
/// is the shared RY/CX-chain ansatz (layers of per-qubit RY separated by a
/// linear CX chain; 3n parameters for the 2-layer-plus-final-RY form)
/// followed by that term's basis rotations and a full measurement.
std::vector<Circuit> gen_vqe(int n, const std::vector<double>& params, const PauliHamiltonian& ham);

/// Combines per-term measurement distributions (in `ham.terms` order) into
/// the energy estimate: sum_t coeff_t * pauli_expectation(dists[t], pauli_t).
double vqe_energy(const PauliHamiltonian& ham, const std::vector<Distribution>& dists);

/// Builtin transverse-field Ising ring on n qubits: ZZ couplings of unit
/// strength around the ring plus a 0.75 X field on every site.
PauliHamiltonian sample_hamiltonian(int n);

// ---------------------------------------------------------------------------
// Repetition-code error detection.

/// Five-qubit repetition code protecting a GHZ-encoded |+_L> state, with four
/// ancilla-assisted ZZ parity checks. Data qubits are 0..4, ancillas 5..8.
/// `inject_x` < 0 runs clean; otherwise a single X error is injected on data
/// qubit `inject_x` between encoding and the parity checks. All nine qubits
/// are measured: ancilla 5+i lands in clbit i (the syndrome), data d in
/// clbit 4+d.
Circuit gen_repetition5(int inject_x = -1);

/// Syndrome bits implied by the data bits of a repetition-code readout:
/// bit i of the result is parity(data_i, data_i+1). `data` holds clbits 4..8
/// as characters (data qubit d at index d).
std::string repetition_data_syndrome(const std::string& data);

/// Joint distribution of (syndrome measured by the ancillas, syndrome
/// implied by the data readout) for a gen_repetition5 output. Row index is
/// the measured 4-bit value (clbit i = bit i), column index the data-derived
/// value; detection_success of the result is the probability they agree.
JointSyndromeDistribution repetition_joint_syndromes(const Distribution& d);

// ---------------------------------------------------------------------------
// Five-qubit perfect code.

/// The four stabilizer generators, character i = qubit i.
std::array<std::string, 4> five_qubit_generators();

/// Encodes |0_L> of the [[5,1,3]] code on qubits 0..4, optionally injects a
/// single-qubit Pauli error, measures all four stabilizer generators via
/// ancillas 5..8, then measures the data in a basis diagonalizing generator
/// `check_generator` (H is applied wherever that generator has an X).
/// Ancilla a (generator a's outcome) lands in clbit a; data qubit d lands in
/// clbit 4+d. `inject` is empty for a clean run or a letter-digit pair such
/// as "X2" or "Y0".
Circuit gen_five_qubit_code(int check_generator, const std::string& inject = "");

/// Parity of the `check_generator` stabilizer implied by the data readout of
/// gen_five_qubit_code (data measured in the generator's diagonal basis);
/// returns the probability that it agrees with the corresponding ancilla bit.
double five_qubit_agreement(const Distribution& d, int check_generator);

/// Noiseless syndrome for a single-qubit injection (e.g. "Y3"): bit g is 1
/// exactly when the injected Pauli anticommutes with generator g, i.e. when
/// the generator's letter at that site is neither I nor the injected letter.
/// An empty injection gives "0000".
std::string five_qubit_expected_syndrome(const std::string& inject);

// ---------------------------------------------------------------------------
// Quantum volume model circuits.

/// `circuits` QV model circuits on n qubits: each is n layers of a random
/// qubit permutation with Haar-random SU(4) blocks on adjacent pairs (the
/// odd qubit of a layer idles). Deterministic in `seed`; circuit k depends
/// only on (seed, k). All qubits are measured, clbit i = qubit i.
std::vector<Circuit> gen_qv(int n, int circuits, std::uint64_t seed);

}  // namespace quell

#endif
