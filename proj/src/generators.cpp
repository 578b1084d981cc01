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

#include "quell/generators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>

#include "quell/errors.hpp"
#include "quell/rng.hpp"

namespace quell {

namespace {

constexpr double kPi = std::numbers::pi;

void check_bitstring(const std::string& s, int width, const char* what) {
    if (static_cast<int>(s.size()) != width)
        throw validation_error(std::string(what) + ": '" + s + "' must have exactly " +
                               std::to_string(width) + " characters");
    for (char c : s)
        if (c != '0' && c != '1')
            throw validation_error(std::string(what) + ": '" + s + "' contains non-binary characters");
}

}  // namespace

// ---------------------------------------------------------------------------
// Helpers.

void append_ry(Circuit& c, int q, double theta) {
    c.add(Gate::sx(q));
    c.add(Gate::rz(q, theta + kPi));
    c.add(Gate::sx(q));
    c.add(Gate::rz(q, kPi));
}

void append_cp(Circuit& c, int control, int target, double theta) {
    c.add(Gate::rz(control, theta / 2.0));
    c.add(Gate::rz(target, theta / 2.0));
    c.add(Gate::cx(control, target));
    c.add(Gate::rz(target, -theta / 2.0));
    c.add(Gate::cx(control, target));
}

void append_ccx(Circuit& c, int a, int b, int target) {
    const double t = kPi / 4.0;
    c.add(Gate::h(target));
    c.add(Gate::cx(b, target));
    c.add(Gate::rz(target, -t));
    c.add(Gate::cx(a, target));
    c.add(Gate::rz(target, t));
    c.add(Gate::cx(b, target));
    c.add(Gate::rz(target, -t));
    c.add(Gate::cx(a, target));
    c.add(Gate::rz(b, t));
    c.add(Gate::rz(target, t));
    c.add(Gate::h(target));
    c.add(Gate::cx(a, b));
    c.add(Gate::rz(a, t));
    c.add(Gate::rz(b, -t));
    c.add(Gate::cx(a, b));
}

void append_ccz(Circuit& c, int a, int b, int target) {
    c.add(Gate::h(target));
    append_ccx(c, a, b, target);
    c.add(Gate::h(target));
}

// ---------------------------------------------------------------------------
// Bernstein-Vazirani.

Circuit gen_bv(int n, const std::string& oracle) {
    if (n < 2) throw validation_error("gen_bv: need at least 2 qubits");
    std::string hidden = oracle.empty() ? std::string(static_cast<std::size_t>(n - 1), '1') : oracle;
    check_bitstring(hidden, n - 1, "gen_bv oracle");

    Circuit c(n, n - 1);
    for (int q = 0; q < n - 1; ++q) c.add(Gate::h(q));
    c.add(Gate::x(n - 1));
    c.add(Gate::h(n - 1));
    for (int q = 0; q < n - 1; ++q)
        if (hidden[static_cast<std::size_t>(q)] == '1') c.add(Gate::cx(q, n - 1));
    for (int q = 0; q < n - 1; ++q) c.add(Gate::h(q));
    for (int q = 0; q < n - 1; ++q) c.add(Gate::measure(q, q));
    return c;
}

// ---------------------------------------------------------------------------
// QFT echo.
//
// The transform follows the little-endian product form: after processing
// qubit j (H plus controlled phases from every lower qubit), qubit j carries
// e^{2 pi i (x mod 2^{j+1}) / 2^{j+1}}; the trailing swap network moves that
// component to its output position. The preparation stage applies the
// conjugate per-qubit phases, so transform(prep(x)) == |x> exactly.

Circuit gen_qft(int n, const std::string& input) {
    if (n < 2) throw validation_error("gen_qft: need at least 2 qubits");
    check_bitstring(input, n, "gen_qft input");

    std::uint64_t x = 0;
    for (int i = 0; i < n; ++i)
        if (input[static_cast<std::size_t>(i)] == '1') x |= (std::uint64_t{1} << i);

    Circuit c(n, n);
    for (int k = 0; k < n; ++k) {
        c.add(Gate::h(k));
        const std::uint64_t denom = std::uint64_t{1} << (n - k);
        const std::uint64_t rem = x & (denom - 1);
        if (rem != 0) c.add(Gate::rz(k, -2.0 * kPi * static_cast<double>(rem) / static_cast<double>(denom)));
    }
    for (int j = n - 1; j >= 0; --j) {
        c.add(Gate::h(j));
        for (int m = j - 1; m >= 0; --m)
            append_cp(c, m, j, 2.0 * kPi / static_cast<double>(std::uint64_t{1} << (j - m + 1)));
    }
    for (int j = 0; j < n / 2; ++j) {
        int k = n - 1 - j;
        c.add(Gate::cx(j, k));
        c.add(Gate::cx(k, j));
        c.add(Gate::cx(j, k));
    }
    for (int q = 0; q < n; ++q) c.add(Gate::measure(q, q));
    return c;
}

// ---------------------------------------------------------------------------
// Grover.

namespace {

// Phase flip on |11111> of qubits 0..4, computed through two AND ancillas:
// a5 = q0 & q1, a6 = q2 & q3, phase = CCZ(a5, a6, q4), then uncompute.
void append_c4z(Circuit& c) {
    append_ccx(c, 0, 1, 5);
    append_ccx(c, 2, 3, 6);
    append_ccz(c, 5, 6, 4);
    append_ccx(c, 2, 3, 6);
    append_ccx(c, 0, 1, 5);
}

}  // namespace

Circuit gen_grover5(const std::string& target, int iterations) {
    check_bitstring(target, 5, "gen_grover5 target");
    if (iterations < 0 || iterations > 4)
        throw validation_error("gen_grover5: iterations must be in [0, 4]");

    Circuit c(7, 5);
    for (int q = 0; q < 5; ++q) c.add(Gate::h(q));
    for (int round = 0; round < iterations; ++round) {
        // Oracle: phase flip on the marked string.
        for (int q = 0; q < 5; ++q)
            if (target[static_cast<std::size_t>(q)] == '0') c.add(Gate::x(q));
        append_c4z(c);
        for (int q = 0; q < 5; ++q)
            if (target[static_cast<std::size_t>(q)] == '0') c.add(Gate::x(q));
        // Diffusion: reflection about the uniform state.
        for (int q = 0; q < 5; ++q) c.add(Gate::h(q));
        for (int q = 0; q < 5; ++q) c.add(Gate::x(q));
        append_c4z(c);
        for (int q = 0; q < 5; ++q) c.add(Gate::x(q));
        for (int q = 0; q < 5; ++q) c.add(Gate::h(q));
    }
    for (int q = 0; q < 5; ++q) c.add(Gate::measure(q, q));
    return c;
}

double grover_ideal_p(int n_bits, int iterations) {
    if (n_bits < 1 || iterations < 0) throw validation_error("grover_ideal_p: invalid arguments");
    const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(std::uint64_t{1} << n_bits)));
    const double s = std::sin((2.0 * iterations + 1.0) * theta);
    return s * s;
}

// ---------------------------------------------------------------------------
// QAOA landscape.

double WeightedGraph::total_weight() const {
    double t = 0.0;
    for (const auto& e : edges) t += e.w;
    return t;
}

void WeightedGraph::validate() const {
    if (nodes < 2) throw validation_error("graph: need at least 2 nodes");
    if (edges.empty()) throw validation_error("graph: no edges");
    for (const auto& e : edges) {
        if (e.a < 0 || e.a >= nodes || e.b < 0 || e.b >= nodes || e.a == e.b)
            throw validation_error("graph: bad edge (" + std::to_string(e.a) + ", " +
                                   std::to_string(e.b) + ")");
        if (!(e.w > 0.0) || !std::isfinite(e.w))
            throw validation_error("graph: edge weights must be positive and finite");
    }
}

std::string WeightedGraph::to_json_text(int indent) const {
    nlohmann::json j;
    j["nodes"] = nodes;
    j["edges"] = nlohmann::json::array();
    for (const auto& e : edges) j["edges"].push_back({e.a, e.b, e.w});
    return j.dump(indent);
}

WeightedGraph WeightedGraph::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(std::string("graph: invalid JSON: ") + e.what());
    }
    if (!j.contains("nodes") || !j.contains("edges"))
        throw validation_error("graph: missing 'nodes' or 'edges'");
    WeightedGraph g;
    g.nodes = j.at("nodes").get<int>();
    for (const auto& item : j.at("edges")) {
        if (!item.is_array() || item.size() != 3)
            throw validation_error("graph: each edge must be [a, b, weight]");
        g.edges.push_back({item[0].get<int>(), item[1].get<int>(), item[2].get<double>()});
    }
    g.validate();
    return g;
}

WeightedGraph maxcut7_instance() {
    WeightedGraph g;
    g.nodes = 7;
    g.edges = {{0, 1, 0.8}, {1, 2, 0.3}, {2, 3, 0.6}, {3, 4, 1.0}, {4, 5, 0.4},
               {5, 6, 0.9}, {6, 0, 0.2}, {0, 3, 0.7}, {1, 4, 0.5}, {2, 5, 0.1}};
    return g;
}

double maxcut_cut_weight(const WeightedGraph& g, const Distribution& d) {
    g.validate();
    if (d.width < g.nodes)
        throw validation_error("maxcut_cut_weight: distribution narrower than the graph");
    double acc = 0.0;
    for (const auto& [key, p] : d.probs) {
        double cut = 0.0;
        for (const auto& e : g.edges)
            if (key[static_cast<std::size_t>(e.a)] != key[static_cast<std::size_t>(e.b)]) cut += e.w;
        acc += p * cut;
    }
    return acc;
}

QaoaScan gen_qaoa_landscape(const WeightedGraph& g, int p, int rows, int cols) {
    g.validate();
    if (p < 1) throw validation_error("gen_qaoa_landscape: depth must be positive");
    if (rows < 2 || cols < 2) throw validation_error("gen_qaoa_landscape: grid must be at least 2x2");

    QaoaScan scan;
    scan.graph = g;
    scan.p = p;
    scan.rows = rows;
    scan.cols = cols;
    scan.u_max = kPi;
    scan.v_max = kPi / 2.0;
    scan.circuits.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));

    for (int iu = 0; iu < rows; ++iu) {
        const double u = scan.u_max * iu / (rows - 1);
        for (int iv = 0; iv < cols; ++iv) {
            const double v = scan.v_max * iv / (cols - 1);
            Circuit c(g.nodes, g.nodes);
            for (int q = 0; q < g.nodes; ++q) c.add(Gate::h(q));
            for (int l = 1; l <= p; ++l) {
                const double ramp = (l - 0.5) * kPi / (2.0 * p);
                const double gamma = u * std::sin(ramp);
                const double beta = v * std::cos(ramp);
                for (const auto& e : g.edges) {
                    c.add(Gate::cx(e.a, e.b));
                    c.add(Gate::rz(e.b, gamma * e.w));
                    c.add(Gate::cx(e.a, e.b));
                }
                for (int q = 0; q < g.nodes; ++q) {
                    c.add(Gate::h(q));
                    c.add(Gate::rz(q, 2.0 * beta));
                    c.add(Gate::h(q));
                }
            }
            for (int q = 0; q < g.nodes; ++q) c.add(Gate::measure(q, q));
            scan.circuits.push_back(std::move(c));
        }
    }
    return scan;
}

// ---------------------------------------------------------------------------
// VQE.

void PauliHamiltonian::validate() const {
    if (width < 1) throw validation_error("hamiltonian: width must be positive");
    if (terms.empty()) throw validation_error("hamiltonian: no terms");
    for (const auto& [pauli, coeff] : terms) {
        if (static_cast<int>(pauli.size()) != width)
            throw validation_error("hamiltonian: term '" + pauli + "' does not have width " +
                                   std::to_string(width));
        for (char c : pauli)
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
                throw validation_error("hamiltonian: term '" + pauli + "' has letters outside IXYZ");
        if (!std::isfinite(coeff))
            throw validation_error("hamiltonian: non-finite coefficient for '" + pauli + "'");
    }
}

PauliHamiltonian PauliHamiltonian::parse(const std::string& text) {
    PauliHamiltonian h;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        double coeff = 0.0;
        std::string pauli;
        if (!(fields >> coeff)) continue;  // blank or comment-only line
        if (!(fields >> pauli))
            throw validation_error("hamiltonian: line " + std::to_string(lineno) +
                                   " has a coefficient but no Pauli string");
        std::string extra;
        if (fields >> extra)
            throw validation_error("hamiltonian: line " + std::to_string(lineno) +
                                   " has trailing content '" + extra + "'");
        if (h.width == 0) h.width = static_cast<int>(pauli.size());
        h.terms.emplace_back(pauli, coeff);
    }
    h.validate();
    return h;
}

namespace {

void append_vqe_ansatz(Circuit& c, int n, const std::vector<double>& params) {
    std::size_t k = 0;
    for (int layer = 0; layer < 2; ++layer) {
        for (int q = 0; q < n; ++q) append_ry(c, q, params[k++]);
        for (int q = 0; q + 1 < n; ++q) c.add(Gate::cx(q, q + 1));
    }
    for (int q = 0; q < n; ++q) append_ry(c, q, params[k++]);
}

}  // namespace

std::vector<Circuit> gen_vqe(int n, const std::vector<double>& params, const PauliHamiltonian& ham) {
    if (n < 2) throw validation_error("gen_vqe: need at least 2 qubits");
    if (static_cast<int>(params.size()) != 3 * n)
        throw validation_error("gen_vqe: expected " + std::to_string(3 * n) + " parameters, got " +
                               std::to_string(params.size()));
    ham.validate();
    if (ham.width != n)
        throw validation_error("gen_vqe: hamiltonian width " + std::to_string(ham.width) +
                               " does not match qubit count " + std::to_string(n));

    std::vector<Circuit> out;
    out.reserve(ham.terms.size());
    for (const auto& [pauli, coeff] : ham.terms) {
        (void)coeff;
        Circuit c(n, n);
        append_vqe_ansatz(c, n, params);
        for (int q = 0; q < n; ++q) {
            char basis = pauli[static_cast<std::size_t>(q)];
            if (basis == 'X') {
                c.add(Gate::h(q));
            } else if (basis == 'Y') {
                c.add(Gate::rz(q, -kPi / 2.0));
                c.add(Gate::h(q));
            }
        }
        for (int q = 0; q < n; ++q) c.add(Gate::measure(q, q));
        out.push_back(std::move(c));
    }
    return out;
}

PauliHamiltonian sample_hamiltonian(int n) {
    if (n < 3) throw validation_error("sample_hamiltonian: need at least 3 qubits for the ring");
    PauliHamiltonian h;
    h.width = n;
    for (int i = 0; i < n; ++i) {
        std::string zz(static_cast<std::size_t>(n), 'I');
        zz[static_cast<std::size_t>(i)] = 'Z';
        zz[static_cast<std::size_t>((i + 1) % n)] = 'Z';
        h.terms.emplace_back(zz, 1.0);
    }
    for (int i = 0; i < n; ++i) {
        std::string x(static_cast<std::size_t>(n), 'I');
        x[static_cast<std::size_t>(i)] = 'X';
        h.terms.emplace_back(x, 0.75);
    }
    return h;
}

double vqe_energy(const PauliHamiltonian& ham, const std::vector<Distribution>& dists) {
    ham.validate();
    if (dists.size() != ham.terms.size())
        throw validation_error("vqe_energy: got " + std::to_string(dists.size()) +
                               " distributions for " + std::to_string(ham.terms.size()) + " terms");
    double e = 0.0;
    for (std::size_t t = 0; t < ham.terms.size(); ++t)
        e += ham.terms[t].second * pauli_expectation(dists[t], ham.terms[t].first);
    return e;
}

// ---------------------------------------------------------------------------
// Repetition code.

Circuit gen_repetition5(int inject_x) {
    if (inject_x > 4) throw validation_error("gen_repetition5: inject_x must be a data qubit (0..4)");
    Circuit c(9, 9);
    c.add(Gate::h(0));
    for (int d = 0; d + 1 < 5; ++d) c.add(Gate::cx(d, d + 1));
    if (inject_x >= 0) c.add(Gate::x(inject_x));
    for (int i = 0; i < 4; ++i) {
        c.add(Gate::cx(i, 5 + i));
        c.add(Gate::cx(i + 1, 5 + i));
    }
    for (int i = 0; i < 4; ++i) c.add(Gate::measure(5 + i, i));
    for (int d = 0; d < 5; ++d) c.add(Gate::measure(d, 4 + d));
    return c;
}

std::string repetition_data_syndrome(const std::string& data) {
    check_bitstring(data, 5, "repetition_data_syndrome");
    std::string s(4, '0');
    for (int i = 0; i < 4; ++i)
        s[static_cast<std::size_t>(i)] =
            (data[static_cast<std::size_t>(i)] != data[static_cast<std::size_t>(i + 1)]) ? '1' : '0';
    return s;
}

JointSyndromeDistribution repetition_joint_syndromes(const Distribution& d) {
    if (d.width != 9)
        throw validation_error("repetition_joint_syndromes: expected a 9-clbit distribution");
    JointSyndromeDistribution j;
    j.m = 4;
    j.matrix.assign(16, std::vector<double>(16, 0.0));
    for (const auto& [key, p] : d.probs) {
        int measured = 0;
        for (int i = 0; i < 4; ++i)
            if (key[static_cast<std::size_t>(i)] == '1') measured |= 1 << i;
        const std::string derived = repetition_data_syndrome(key.substr(4));
        int expected = 0;
        for (int i = 0; i < 4; ++i)
            if (derived[static_cast<std::size_t>(i)] == '1') expected |= 1 << i;
        j.matrix[static_cast<std::size_t>(measured)][static_cast<std::size_t>(expected)] += p;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Five-qubit perfect code.

std::array<std::string, 4> five_qubit_generators() {
    return {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"};
}

namespace {

// Clifford encoder mapping |00000> to the logical |0_L> of the [[5,1,3]]
// code (all four generators and logical Z stabilize the result). The network
// was derived by reducing the code's binary-symplectic tableau to the trivial
// one and inverting the elimination sequence; only H, X and CX appear.
struct EncOp {
    char kind;  // 'h', 'x', or 'c'
    int a;
    int b;  // CX target ('c' only)
};

const EncOp kFiveQubitEncoder[] = {
    {'x', 2, 0}, {'x', 3, 0}, {'h', 3, 0}, {'h', 4, 0}, {'c', 3, 4}, {'h', 4, 0}, {'c', 3, 4},
    {'h', 2, 0}, {'h', 4, 0}, {'c', 2, 4}, {'h', 4, 0}, {'h', 3, 0}, {'c', 2, 3}, {'h', 3, 0},
    {'c', 2, 3}, {'h', 1, 0}, {'h', 3, 0}, {'c', 1, 3}, {'h', 3, 0}, {'h', 2, 0}, {'c', 1, 2},
    {'h', 2, 0}, {'c', 1, 4}, {'h', 0, 0}, {'h', 2, 0}, {'c', 0, 2}, {'h', 2, 0}, {'h', 1, 0},
    {'c', 0, 1}, {'h', 1, 0}, {'c', 0, 3},
};

}  // namespace

Circuit gen_five_qubit_code(int check_generator, const std::string& inject) {
    if (check_generator < 0 || check_generator > 3)
        throw validation_error("gen_five_qubit_code: check_generator must be in 0..3");
    char pauli = 0;
    int site = -1;
    if (!inject.empty()) {
        if (inject.size() != 2 || (inject[0] != 'X' && inject[0] != 'Y' && inject[0] != 'Z') ||
            inject[1] < '0' || inject[1] > '4')
            throw validation_error("gen_five_qubit_code: inject must look like \"X2\" (Pauli in XYZ, qubit 0..4)");
        pauli = inject[0];
        site = inject[1] - '0';
    }

    const auto gens = five_qubit_generators();
    Circuit c(9, 9);
    for (const auto& op : kFiveQubitEncoder) {
        if (op.kind == 'x')
            c.add(Gate::x(op.a));
        else if (op.kind == 'h')
            c.add(Gate::h(op.a));
        else
            c.add(Gate::cx(op.a, op.b));
    }
    if (site >= 0) {
        if (pauli == 'Z' || pauli == 'Y') c.add(Gate::rz(site, kPi));
        if (pauli == 'X' || pauli == 'Y') c.add(Gate::x(site));
    }
    for (int g = 0; g < 4; ++g) {
        const int anc = 5 + g;
        c.add(Gate::h(anc));
        for (int d = 0; d < 5; ++d) {
            char letter = gens[static_cast<std::size_t>(g)][static_cast<std::size_t>(d)];
            if (letter == 'X') {
                c.add(Gate::cx(anc, d));
            } else if (letter == 'Z') {
                c.add(Gate::h(d));
                c.add(Gate::cx(anc, d));
                c.add(Gate::h(d));
            }
        }
        c.add(Gate::h(anc));
        c.add(Gate::measure(anc, g));
    }
    for (int d = 0; d < 5; ++d)
        if (gens[static_cast<std::size_t>(check_generator)][static_cast<std::size_t>(d)] == 'X')
            c.add(Gate::h(d));
    for (int d = 0; d < 5; ++d) c.add(Gate::measure(d, 4 + d));
    return c;
}

std::string five_qubit_expected_syndrome(const std::string& inject) {
    if (inject.empty()) return "0000";
    if (inject.size() != 2 || (inject[0] != 'X' && inject[0] != 'Y' && inject[0] != 'Z') ||
        inject[1] < '0' || inject[1] > '4')
        throw validation_error("five_qubit_expected_syndrome: bad injection '" + inject + "'");
    const int site = inject[1] - '0';
    const auto gens = five_qubit_generators();
    std::string s(4, '0');
    for (int g = 0; g < 4; ++g) {
        char letter = gens[static_cast<std::size_t>(g)][static_cast<std::size_t>(site)];
        if (letter != 'I' && letter != inject[0]) s[static_cast<std::size_t>(g)] = '1';
    }
    return s;
}

double five_qubit_agreement(const Distribution& d, int check_generator) {
    if (check_generator < 0 || check_generator > 3)
        throw validation_error("five_qubit_agreement: check_generator must be in 0..3");
    if (d.width != 9) throw validation_error("five_qubit_agreement: expected a 9-clbit distribution");
    const std::string gen = five_qubit_generators()[static_cast<std::size_t>(check_generator)];
    double agree = 0.0;
    for (const auto& [key, p] : d.probs) {
        int parity = 0;
        for (int q = 0; q < 5; ++q)
            if (gen[static_cast<std::size_t>(q)] != 'I')
                parity ^= (key[static_cast<std::size_t>(4 + q)] == '1');
        const int anc = key[static_cast<std::size_t>(check_generator)] == '1';
        if (parity == anc) agree += p;
    }
    return agree;
}

// ---------------------------------------------------------------------------
// Quantum volume.

namespace {

// Haar-random 4x4 unitary: modified Gram-Schmidt on a complex Ginibre matrix.
// The QR diagonal comes out real-positive, which makes the result uniform.
std::vector<std::complex<double>> haar_u4(Rng& rng) {
    std::complex<double> col[4][4];
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) col[j][i] = {rng.normal(), rng.normal()};
    for (int j = 0; j < 4; ++j) {
        for (int prev = 0; prev < j; ++prev) {
            std::complex<double> dot = 0.0;
            for (int i = 0; i < 4; ++i) dot += std::conj(col[prev][i]) * col[j][i];
            for (int i = 0; i < 4; ++i) col[j][i] -= dot * col[prev][i];
        }
        double norm = 0.0;
        for (int i = 0; i < 4; ++i) norm += std::norm(col[j][i]);
        norm = std::sqrt(norm);
        for (int i = 0; i < 4; ++i) col[j][i] /= norm;
    }
    std::vector<std::complex<double>> m(16);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[static_cast<std::size_t>(4 * i + j)] = col[j][i];
    return m;
}

}  // namespace

std::vector<Circuit> gen_qv(int n, int circuits, std::uint64_t seed) {
    if (n < 2) throw validation_error("gen_qv: need at least 2 qubits");
    if (circuits < 1) throw validation_error("gen_qv: need at least one circuit");

    std::vector<Circuit> out;
    out.reserve(static_cast<std::size_t>(circuits));
    for (int k = 0; k < circuits; ++k) {
        Rng rng(seed, static_cast<std::uint64_t>(k));
        Circuit c(n, n);
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int layer = 0; layer < n; ++layer) {
            for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
            for (int i = n - 1; i > 0; --i)
                std::swap(perm[static_cast<std::size_t>(i)],
                          perm[rng.below(static_cast<std::uint64_t>(i + 1))]);
            for (int pair = 0; pair + 1 < n; pair += 2)
                c.add(Gate::u2q(perm[static_cast<std::size_t>(pair)],
                                perm[static_cast<std::size_t>(pair + 1)], haar_u4(rng)));
        }
        for (int q = 0; q < n; ++q) c.add(Gate::measure(q, q));
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace quell
