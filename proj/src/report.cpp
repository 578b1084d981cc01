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

#include "quell/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "quell/errors.hpp"
#include "quell/generators.hpp"
#include "quell/rng.hpp"
#include "quell/sim.hpp"

namespace quell {

namespace {

using nlohmann::json;

json config_to_json(const PipelineConfig& c) {
    json j;
    j["reduce"] = c.reduce;
    j["error_aware_layout"] = c.error_aware_layout;
    j["dynamical_decoupling"] = c.dynamical_decoupling;
    j["optimized_gates"] = c.optimized_gates;
    j["readout_mitigation"] = c.readout_mitigation;
    return j;
}

PipelineConfig config_from_json(const json& j) {
    PipelineConfig c;
    c.reduce = j.at("reduce").get<bool>();
    c.error_aware_layout = j.at("error_aware_layout").get<bool>();
    c.dynamical_decoupling = j.at("dynamical_decoupling").get<bool>();
    c.optimized_gates = j.at("optimized_gates").get<bool>();
    c.readout_mitigation = j.at("readout_mitigation").get<bool>();
    return c;
}

json report_to_json(const BenchReport& r, bool with_wall) {
    json j;
    j["benchmark"] = r.benchmark;
    j["pipeline"] = r.pipeline;
    j["config"] = config_to_json(r.config);
    j["device"] = {{"name", r.device_name}, {"hash", r.device_hash}};
    j["shots"] = r.shots;
    j["seed"] = r.seed;
    j["qubits"] = {r.qubits_lo, r.qubits_hi};
    j["instances"] = json::array();
    for (const auto& ins : r.instances) {
        json ji;
        ji["label"] = ins.label;
        if (!ins.target.empty()) ji["target"] = ins.target;
        ji["raw"] = json::parse(ins.raw.to_json_text());
        ji["mitigated"] = json::parse(ins.mitigated.to_json_text());
        ji["metrics"] = ins.metrics;
        j["instances"].push_back(std::move(ji));
    }
    j["summary"] = r.summary;
    if (r.has_landscape) j["landscape_csv"] = r.landscape.to_csv_text();
    j["wall_ms"] = with_wall ? r.wall_ms : 0.0;
    return j;
}

}  // namespace

std::string BenchReport::to_json_text(int indent) const {
    return report_to_json(*this, true).dump(indent);
}

std::string BenchReport::canonical_json_text(int indent) const {
    return report_to_json(*this, false).dump(indent);
}

BenchReport BenchReport::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw validation_error(std::string("report: invalid JSON: ") + e.what());
    }
    BenchReport r;
    try {
        r.benchmark = j.at("benchmark").get<std::string>();
        r.pipeline = j.at("pipeline").get<std::string>();
        r.config = config_from_json(j.at("config"));
        r.device_name = j.at("device").at("name").get<std::string>();
        r.device_hash = j.at("device").at("hash").get<std::string>();
        r.shots = j.at("shots").get<std::int64_t>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.qubits_lo = j.at("qubits").at(0).get<int>();
        r.qubits_hi = j.at("qubits").at(1).get<int>();
        for (const auto& ji : j.at("instances")) {
            InstanceReport ins;
            ins.label = ji.at("label").get<std::string>();
            if (ji.contains("target")) ins.target = ji.at("target").get<std::string>();
            ins.raw = Distribution::from_json_text(ji.at("raw").dump());
            ins.mitigated = Distribution::from_json_text(ji.at("mitigated").dump());
            for (const auto& [k, v] : ji.at("metrics").items()) ins.metrics[k] = v.get<double>();
            r.instances.push_back(std::move(ins));
        }
        for (const auto& [k, v] : j.at("summary").items()) r.summary[k] = v.get<double>();
        if (j.contains("landscape_csv")) {
            r.landscape = Landscape::from_csv_text(j.at("landscape_csv").get<std::string>());
            r.has_landscape = true;
        }
        r.wall_ms = j.value("wall_ms", 0.0);
    } catch (const json::exception& e) {
        throw validation_error(std::string("report: malformed report JSON: ") + e.what());
    }
    return r;
}

BenchReport BenchReport::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("report: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

void BenchReport::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw validation_error("report: cannot write '" + path + "'");
    out << to_json_text() << "\n";
    if (!out) throw stage_error("report: write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// Benchmark runners.

namespace {

// Stage statistics shared by every family.
void put_run_stats(InstanceReport& ins, const RunResult& rr) {
    ins.metrics["swap_count"] = rr.swap_count;
    ins.metrics["cx_count"] = rr.cx_count;
    ins.metrics["dd_pulse_count"] = rr.dd_pulse_count;
    ins.metrics["duration_ns"] = static_cast<double>(rr.duration_ns);
    ins.metrics["gate_error_limit"] = rr.gate_error_limit;
    ins.metrics["t1_limit"] = rr.t1_limit;
}

// Point-mass-target metrics (bv, qft, grover): success probability against
// `target`, selectivity, and distance to the noiseless distribution.
void put_target_metrics(InstanceReport& ins, const Distribution& ideal) {
    const auto& d = ins.mitigated;
    ins.metrics["success_probability"] = success_probability(d, ins.target);
    const SelectivityResult s = selectivity(d, ins.target);
    ins.metrics["selectivity"] = s.value;
    ins.metrics["p_target"] = s.p_target;
    ins.metrics["p_next"] = s.p_next;
    ins.metrics["hellinger_loss"] = hellinger_loss(d, ideal);
    ins.metrics["circuit_infidelity"] = circuit_infidelity(d, ideal);
    std::string mode;
    double best = -1.0;
    for (const auto& [k, p] : d.probs)
        if (p > best) {
            best = p;
            mode = k;
        }
    ins.metrics["mode_is_target"] = (mode == ins.target) ? 1.0 : 0.0;
}

struct FamilyRange {
    int lo;
    int hi;
};

FamilyRange resolve_range(const BenchOptions& opt, int def_lo, int def_hi, bool fixed,
                          const std::string& family) {
    if (opt.qubits_lo == 0 && opt.qubits_hi == 0) return {def_lo, def_hi};
    int lo = opt.qubits_lo, hi = opt.qubits_hi == 0 ? opt.qubits_lo : opt.qubits_hi;
    if (lo < 2 || hi < lo)
        throw validation_error("run_benchmark: bad qubit range for '" + family + "'");
    if (fixed && (lo != def_lo || hi != def_hi))
        throw validation_error("run_benchmark: '" + family + "' has a fixed width of " +
                               std::to_string(def_lo) + " qubits");
    return {lo, hi};
}

void summarize_means(BenchReport& r) {
    std::map<std::string, std::pair<double, int>> acc;
    for (const auto& ins : r.instances)
        for (const auto& [k, v] : ins.metrics)
            if (std::isfinite(v)) {
                acc[k].first += v;
                acc[k].second += 1;
            }
    for (const auto& [k, sv] : acc)
        if (sv.second > 0) r.summary["mean_" + k] = sv.first / sv.second;
}

void put_gatecal_summary(BenchReport& r, const Pipeline& pipe) {
    const GateCalResult* gc = pipe.gate_calibration();
    if (!gc) return;
    double before = 0.0, after = 0.0;
    for (const auto& [k, v] : gc->epg_before) before += v;
    for (const auto& [k, v] : gc->epg_after) after += v;
    const double n = static_cast<double>(gc->epg_before.size());
    r.summary["gatecal_epg_before_mean"] = before / n;
    r.summary["gatecal_epg_after_mean"] = after / n;
    r.summary["gatecal_blocks"] = gc->blocks;
}

void run_bv(BenchReport& r, const Pipeline& pipe, const BenchOptions& opt) {
    int k = 0;
    for (int n = r.qubits_lo; n <= r.qubits_hi; ++n, ++k) {
        const Circuit logical = gen_bv(n);
        RunResult rr = pipe.run(logical, opt.shots, opt.seed + static_cast<std::uint64_t>(k),
                                opt.policy);
        InstanceReport ins;
        ins.label = "n=" + std::to_string(n);
        ins.target = std::string(static_cast<std::size_t>(n - 1), '1');
        ins.raw = std::move(rr.raw);
        ins.mitigated = std::move(rr.mitigated);
        put_run_stats(ins, rr);
        put_target_metrics(ins, exact_distribution(logical));
        r.instances.push_back(std::move(ins));
    }
}

// Ten seeded random initial states per width, mirroring the per-width
// averaging of the success probability over a fixed set of inputs.
constexpr int kQftInputsPerWidth = 10;

void run_qft(BenchReport& r, const Pipeline& pipe, const BenchOptions& opt) {
    int k = 0;
    for (int n = r.qubits_lo; n <= r.qubits_hi; ++n) {
        Rng inputs(opt.seed, 0x9f7u ^ static_cast<std::uint64_t>(n));
        for (int rep = 0; rep < kQftInputsPerWidth; ++rep, ++k) {
            std::string input(static_cast<std::size_t>(n), '0');
            for (int i = 0; i < n; ++i)
                if (inputs.below(2)) input[static_cast<std::size_t>(i)] = '1';
            const Circuit logical = gen_qft(n, input);
            RunResult rr = pipe.run(logical, opt.shots, opt.seed + static_cast<std::uint64_t>(k),
                                    opt.policy);
            InstanceReport ins;
            ins.label = "n=" + std::to_string(n) + " input=" + input;
            ins.target = input;
            ins.raw = std::move(rr.raw);
            ins.mitigated = std::move(rr.mitigated);
            put_run_stats(ins, rr);
            put_target_metrics(ins, exact_distribution(logical));
            r.instances.push_back(std::move(ins));
        }
    }
}

void run_grover(BenchReport& r, const Pipeline& pipe, const BenchOptions& opt) {
    const double ideal_p = grover_ideal_p(5, 2);
    int positive = 0;
    for (int t = 0; t < 32; ++t) {
        std::string target(5, '0');
        for (int i = 0; i < 5; ++i)
            if (t & (1 << i)) target[static_cast<std::size_t>(i)] = '1';
        const Circuit logical = gen_grover5(target, 2);
        RunResult rr = pipe.run(logical, opt.shots, opt.seed + static_cast<std::uint64_t>(t),
                                opt.policy);
        InstanceReport ins;
        ins.label = "target=" + target;
        ins.target = target;
        ins.raw = std::move(rr.raw);
        ins.mitigated = std::move(rr.mitigated);
        put_run_stats(ins, rr);
        put_target_metrics(ins, exact_distribution(logical));
        ins.metrics["ideal_p"] = ideal_p;
        if (ins.metrics["selectivity"] > 0.0) ++positive;
        r.instances.push_back(std::move(ins));
    }
    r.summary["selectivity_positive_count"] = positive;
}

void run_qaoa(BenchReport& r, const Pipeline& pipe, const BenchOptions& opt) {
    const WeightedGraph g = maxcut7_instance();
    const QaoaScan scan = gen_qaoa_landscape(g, 3, 24, 24);

    Landscape measured;
    measured.row_name = "u";
    measured.col_name = "v";
    measured.row_min = 0.0;
    measured.row_max = scan.u_max;
    measured.col_min = 0.0;
    measured.col_max = scan.v_max;
    measured.grid.assign(static_cast<std::size_t>(scan.rows),
                         std::vector<double>(static_cast<std::size_t>(scan.cols), 0.0));
    Landscape ideal = measured;

    std::vector<double> flat_measured, flat_ideal;
    int k = 0;
    for (int iu = 0; iu < scan.rows; ++iu) {
        for (int iv = 0; iv < scan.cols; ++iv, ++k) {
            const Circuit& logical = scan.circuits[static_cast<std::size_t>(k)];
            RunResult rr = pipe.run(logical, opt.shots, opt.seed + static_cast<std::uint64_t>(k),
                                    opt.policy);
            const double cm = maxcut_cut_weight(g, rr.mitigated);
            const double ci = maxcut_cut_weight(g, exact_distribution(logical));
            measured.grid[static_cast<std::size_t>(iu)][static_cast<std::size_t>(iv)] = cm;
            ideal.grid[static_cast<std::size_t>(iu)][static_cast<std::size_t>(iv)] = ci;
            flat_measured.push_back(cm);
            flat_ideal.push_back(ci);
        }
    }
    r.landscape = std::move(measured);
    r.has_landscape = true;
    r.summary["ssim_vs_ideal"] = ssim(ideal, r.landscape);
    r.summary["pearson_distance_vs_ideal"] = pearson_distance(flat_ideal, flat_measured);
    r.summary["cut_weight_origin"] = flat_measured.front();
    r.summary["cut_weight_best"] = *std::max_element(flat_measured.begin(), flat_measured.end());
    r.summary["cut_weight_best_ideal"] = *std::max_element(flat_ideal.begin(), flat_ideal.end());
}

void run_vqe(BenchReport& r, const Pipeline& pipe, const BenchOptions& opt) {
    const int n = r.qubits_lo;
    const PauliHamiltonian ham =
        opt.ham_text.empty() ? sample_hamiltonian(n) : PauliHamiltonian::parse(opt.ham_text);
    if (ham.width != n)
        throw validation_error("vqe: Hamiltonian width " + std::to_string(ham.width) +
                               " does not match requested --qubits " + std::to_string(n));
    // A fixed generic parameter point: correlated, non-degenerate angles so
    // every term has a nontrivial expectation.
    std::vector<double> params(static_cast<std::size_t>(3 * n));
    for (std::size_t i = 0; i < params.size(); ++i)
        params[i] = 0.35 * std::sin(0.9 * static_cast<double>(i + 1));

    const auto circuits = gen_vqe(n, params, ham);
    std::vector<Distribution> measured, ideal;
    for (std::size_t k = 0; k < circuits.size(); ++k) {
        const Circuit& logical = circuits[k];
        const std::string& pauli = ham.terms[k].first;
        RunResult rr = pipe.run(logical, opt.shots, opt.seed + static_cast<std::uint64_t>(k),
                                opt.policy);
        InstanceReport ins;
        ins.label = "term=" + pauli;
        ins.raw = std::move(rr.raw);
        ins.mitigated = rr.mitigated;
        put_run_stats(ins, rr);
        const Distribution id = exact_distribution(logical);
        ins.metrics["expectation"] = pauli_expectation(rr.mitigated, pauli);
        ins.metrics["expectation_ideal"] = pauli_expectation(id, pauli);
        ins.metrics["abs_error"] =
            std::abs(ins.metrics["expectation"] - ins.metrics["expectation_ideal"]);
        measured.push_back(std::move(rr.mitigated));
        ideal.push_back(id);
        r.instances.push_back(std::move(ins));
    }
    r.summary["energy"] = vqe_energy(ham, measured);
    r.summary["energy_ideal"] = vqe_energy(ham, ideal);
    r.summary["energy_abs_error"] = std::abs(r.summary["energy"] - r.summary["energy_ideal"]);
}

void run_qec_rep(BenchReport& r, const Pipeline& pipe, const BenchOptions& opt) {
    double injected_sum = 0.0;
    for (int inject = -1; inject <= 4; ++inject) {
        const Circuit logical = gen_repetition5(inject);
        RunResult rr = pipe.run(logical, opt.shots, opt.seed + static_cast<std::uint64_t>(inject + 1),
                                opt.policy);
        InstanceReport ins;
        ins.label = inject < 0 ? "clean" : "inject=" + std::to_string(inject);
        ins.raw = std::move(rr.raw);
        ins.mitigated = std::move(rr.mitigated);
        put_run_stats(ins, rr);
        const JointSyndromeDistribution joint = repetition_joint_syndromes(ins.mitigated);
        joint.validate();
        ins.metrics["detection_success"] = detection_success(joint);
        // Probability that the ancillas report the noiseless syndrome.
        std::string expected(4, '0');
        if (inject >= 0) {
            if (inject > 0) expected[static_cast<std::size_t>(inject - 1)] = '1';
            if (inject < 4) expected[static_cast<std::size_t>(inject)] = '1';
        }
        ins.metrics["p_expected_syndrome"] =
            marginal(ins.mitigated, {0, 1, 2, 3}).prob(expected);
        if (inject >= 0) injected_sum += ins.metrics["detection_success"];
        else r.summary["detection_clean"] = ins.metrics["detection_success"];
        r.instances.push_back(std::move(ins));
    }
    r.summary["detection_mean_injected"] = injected_sum / 5.0;
}

void run_qec_5q(BenchReport& r, const Pipeline& pipe, const BenchOptions& opt) {
    std::uint64_t k = 0;
    for (int g = 0; g < 4; ++g) {
        const Circuit logical = gen_five_qubit_code(g);
        RunResult rr = pipe.run(logical, opt.shots, opt.seed + k++, opt.policy);
        InstanceReport ins;
        ins.label = "clean check=" + std::to_string(g);
        ins.raw = std::move(rr.raw);
        ins.mitigated = std::move(rr.mitigated);
        put_run_stats(ins, rr);
        ins.metrics["agreement"] = five_qubit_agreement(ins.mitigated, g);
        ins.metrics["p_expected_syndrome"] = marginal(ins.mitigated, {0, 1, 2, 3}).prob("0000");
        r.instances.push_back(std::move(ins));
    }
    std::set<std::string> modal;
    for (char p : {'X', 'Y', 'Z'}) {
        for (int site = 0; site < 5; ++site) {
            const std::string inject = std::string(1, p) + std::to_string(site);
            const Circuit logical = gen_five_qubit_code(0, inject);
            RunResult rr = pipe.run(logical, opt.shots, opt.seed + k++, opt.policy);
            InstanceReport ins;
            ins.label = "inject=" + inject;
            ins.raw = std::move(rr.raw);
            ins.mitigated = std::move(rr.mitigated);
            put_run_stats(ins, rr);
            ins.metrics["agreement"] = five_qubit_agreement(ins.mitigated, 0);
            const Distribution syn = marginal(ins.mitigated, {0, 1, 2, 3});
            ins.metrics["p_expected_syndrome"] = syn.prob(five_qubit_expected_syndrome(inject));
            std::string mode;
            double best = -1.0;
            for (const auto& [key, v] : syn.probs)
                if (v > best) {
                    best = v;
                    mode = key;
                }
            modal.insert(mode);
            r.instances.push_back(std::move(ins));
        }
    }
    r.summary["distinct_modal_syndromes"] = static_cast<double>(modal.size());
}

void run_qv(BenchReport& r, const Pipeline& pipe, const BenchOptions& opt) {
    // The volume protocol scores raw counts, so run_benchmark() withholds
    // the mitigation stage for this family (see dispatch below); raw and
    // mitigated coincide here.
    for (int n = r.qubits_lo; n <= r.qubits_hi; ++n) {
        const auto circuits = gen_qv(n, opt.count, opt.seed);
        std::vector<double> ho;
        ho.reserve(circuits.size());
        for (std::size_t k = 0; k < circuits.size(); ++k) {
            RunResult rr = pipe.run(circuits[k], opt.shots, opt.seed + static_cast<std::uint64_t>(k),
                                    opt.policy);
            InstanceReport ins;
            ins.label = "n=" + std::to_string(n) + " k=" + std::to_string(k);
            ins.raw = std::move(rr.raw);
            ins.mitigated = ins.raw;
            put_run_stats(ins, rr);
            const auto heavy = heavy_output_set(exact_distribution(circuits[k]));
            ins.metrics["ho_prob"] = heavy_output_probability(ins.raw, heavy);
            ho.push_back(ins.metrics["ho_prob"]);
            r.instances.push_back(std::move(ins));
        }
        const QvResult qv = qv_analysis(ho, n, 1000, opt.seed);
        const std::string suffix = "_n" + std::to_string(n);
        r.summary["ho_mean" + suffix] = qv.mean;
        r.summary["ho_std_err" + suffix] = qv.std_err;
        r.summary["passes" + suffix] = qv.passes ? 1.0 : 0.0;
        if (qv.passes) r.summary["quantum_volume"] =
            std::max(r.summary.count("quantum_volume") ? r.summary["quantum_volume"] : 0.0,
                     static_cast<double>(qv.quantum_volume));
    }
    if (!r.summary.count("quantum_volume")) r.summary["quantum_volume"] = 1.0;
}

}  // namespace

BenchReport run_benchmark(const std::string& family, const DeviceModel& dev,
                          const PipelineConfig& cfg, const BenchOptions& opt) {
    if (opt.shots < 1) throw validation_error("run_benchmark: shots must be positive");
    const auto t0 = std::chrono::steady_clock::now();

    BenchReport r;
    r.benchmark = family;
    r.pipeline = cfg.name();
    r.config = cfg;
    r.device_name = dev.name;
    r.device_hash = dev.content_hash();
    r.shots = opt.shots;
    r.seed = opt.seed;

    FamilyRange range{0, 0};
    PipelineConfig run_cfg = cfg;
    if (family == "bv") range = resolve_range(opt, 4, 12, false, family);
    else if (family == "qft") range = resolve_range(opt, 3, 7, false, family);
    else if (family == "grover") range = resolve_range(opt, 7, 7, true, family);
    else if (family == "qaoa") range = resolve_range(opt, 7, 7, true, family);
    else if (family == "vqe") {
        range = resolve_range(opt, 4, 4, false, family);
        if (range.lo != range.hi)
            throw validation_error("run_benchmark: vqe runs a single size, not a range");
    } else if (family == "qec-rep" || family == "qec-5q") {
        range = resolve_range(opt, 9, 9, true, family);
    } else if (family == "qv") {
        range = resolve_range(opt, 5, 5, false, family);
        run_cfg.readout_mitigation = false;  // the protocol scores raw counts
    } else {
        throw validation_error("run_benchmark: unknown benchmark family '" + family + "'");
    }
    r.qubits_lo = range.lo;
    r.qubits_hi = range.hi;

    const Pipeline pipe(dev, run_cfg, opt.seed);
    if (family == "bv") run_bv(r, pipe, opt);
    else if (family == "qft") run_qft(r, pipe, opt);
    else if (family == "grover") run_grover(r, pipe, opt);
    else if (family == "qaoa") run_qaoa(r, pipe, opt);
    else if (family == "vqe") run_vqe(r, pipe, opt);
    else if (family == "qec-rep") run_qec_rep(r, pipe, opt);
    else if (family == "qec-5q") run_qec_5q(r, pipe, opt);
    else run_qv(r, pipe, opt);

    summarize_means(r);
    put_gatecal_summary(r, pipe);
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
    return r;
}

// ---------------------------------------------------------------------------
// Comparison and CSV export.

std::string compare_reports(const BenchReport& a, const BenchReport& b) {
    if (a.benchmark != b.benchmark)
        throw validation_error("compare: reports describe different benchmarks ('" + a.benchmark +
                               "' vs '" + b.benchmark + "')");
    std::ostringstream out;
    out << "benchmark: " << a.benchmark << "\n";
    out << "  A: pipeline=" << a.pipeline << " device=" << a.device_name << " shots=" << a.shots
        << " seed=" << a.seed << "\n";
    out << "  B: pipeline=" << b.pipeline << " device=" << b.device_name << " shots=" << b.shots
        << " seed=" << b.seed << "\n\n";

    out << "summary:\n";
    std::set<std::string> keys;
    for (const auto& [k, v] : a.summary) keys.insert(k);
    for (const auto& [k, v] : b.summary) keys.insert(k);
    char line[256];
    for (const auto& k : keys) {
        const bool ina = a.summary.count(k), inb = b.summary.count(k);
        std::snprintf(line, sizeof line, "  %-34s", k.c_str());
        out << line;
        if (ina) {
            std::snprintf(line, sizeof line, " %12.6g", a.summary.at(k));
            out << line;
        } else {
            out << "            -";
        }
        if (inb) {
            std::snprintf(line, sizeof line, " %12.6g", b.summary.at(k));
            out << line;
        } else {
            out << "            -";
        }
        if (ina && inb && a.summary.at(k) != 0.0) {
            std::snprintf(line, sizeof line, "  (B/A %.3g)", b.summary.at(k) / a.summary.at(k));
            out << line;
        }
        out << "\n";
    }

    // Per-instance deltas for the headline metric of the family, when the
    // instance labels line up.
    const char* headline = nullptr;
    for (const char* key : {"success_probability", "detection_success", "agreement", "ho_prob",
                            "expectation"}) {
        if (!a.instances.empty() && a.instances.front().metrics.count(key)) {
            headline = key;
            break;
        }
    }
    if (headline) {
        std::map<std::string, double> bvals;
        for (const auto& ins : b.instances)
            if (ins.metrics.count(headline)) bvals[ins.label] = ins.metrics.at(headline);
        out << "\ninstances (" << headline << "):\n";
        for (const auto& ins : a.instances) {
            if (!ins.metrics.count(headline) || !bvals.count(ins.label)) continue;
            std::snprintf(line, sizeof line, "  %-24s %10.6f -> %10.6f\n", ins.label.c_str(),
                          ins.metrics.at(headline), bvals.at(ins.label));
            out << line;
        }
    }
    return out.str();
}

std::string report_csv(const BenchReport& r) {
    if (r.has_landscape) return r.landscape.to_csv_text();
    std::set<std::string> keys;
    for (const auto& ins : r.instances)
        for (const auto& [k, v] : ins.metrics) keys.insert(k);
    std::ostringstream out;
    out << "label";
    for (const auto& k : keys) out << "," << k;
    out << "\n";
    for (const auto& ins : r.instances) {
        out << ins.label;
        for (const auto& k : keys) {
            out << ",";
            auto it = ins.metrics.find(k);
            if (it != ins.metrics.end()) out << it->second;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace quell
