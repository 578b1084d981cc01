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

// Command-line front end: benchmark runs, the two calibration flows, and
// report comparison. Exit codes: 0 success, 2 rejected input, 3 a pipeline
// stage failed while processing valid input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "quell/errors.hpp"
#include "quell/gatecal.hpp"
#include "quell/generators.hpp"
#include "quell/pipeline.hpp"
#include "quell/readout.hpp"
#include "quell/report.hpp"
#include "quell/schedule.hpp"
#include "quell/sim.hpp"

namespace {

using namespace quell;

// "a..b" (or a bare "a") -> [lo, hi].
std::pair<int, int> parse_range(const std::string& text) {
    if (text.empty()) return {0, 0};
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            int v = std::stoi(text);
            return {v, v};
        }
        int lo = std::stoi(text.substr(0, dots));
        int hi = std::stoi(text.substr(dots + 2));
        return {lo, hi};
    } catch (const std::exception&) {
        throw validation_error("--qubits: expected 'a..b', got '" + text + "'");
    }
}

std::string stem_of(const std::string& path) {
    const auto dot = path.rfind(".json");
    return dot == std::string::npos ? path : path.substr(0, dot);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write '" + path + "'");
    out << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
    if (!out) throw stage_error("write to '" + path + "' failed");
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// One representative logical circuit per family, used for plan inspection.
Circuit representative_circuit(const std::string& family, int n) {
    if (family == "bv") return gen_bv(n);
    if (family == "qft") {
        std::string input(static_cast<std::size_t>(n), '0');
        for (int i = 0; i < n; i += 2) input[static_cast<std::size_t>(i)] = '1';
        return gen_qft(n, input);
    }
    if (family == "grover") return gen_grover5("11111", 2);
    if (family == "qaoa") return gen_qaoa_landscape(maxcut7_instance(), 3, 2, 2).circuits[3];
    if (family == "vqe") {
        const auto ham = sample_hamiltonian(n);
        std::vector<double> params(static_cast<std::size_t>(3 * n), 0.35);
        return gen_vqe(n, params, ham).front();
    }
    if (family == "qec-rep") return gen_repetition5(2);
    if (family == "qec-5q") return gen_five_qubit_code(0, "X2");
    return gen_qv(n, 1, 7).front();
}

int cmd_run(const std::string& bench, const std::string& device_path, const std::string& pipeline,
            const std::string& qubits, std::int64_t shots, std::uint64_t seed,
            const std::string& out_path, const std::string& ham_path, bool emit_csv,
            bool emit_dd_plan) {
    const DeviceModel dev = DeviceModel::load(device_path);
    const PipelineConfig cfg = PipelineConfig::named(pipeline);

    BenchOptions opt;
    std::tie(opt.qubits_lo, opt.qubits_hi) = parse_range(qubits);
    opt.shots = shots;
    opt.seed = seed;
    if (!ham_path.empty()) opt.ham_text = read_text(ham_path);

    const BenchReport report = run_benchmark(bench, dev, cfg, opt);
    report.save(out_path);
    std::printf("wrote %s (%s, pipeline=%s, %zu instances, %.0f ms)\n", out_path.c_str(),
                bench.c_str(), report.pipeline.c_str(), report.instances.size(), report.wall_ms);
    for (const auto& [k, v] : report.summary) std::printf("  %-34s %.6g\n", k.c_str(), v);

    if (emit_csv) {
        const std::string csv_path = stem_of(out_path) + ".csv";
        write_text(csv_path, report_csv(report));
        std::printf("wrote %s\n", csv_path.c_str());
    }
    if (emit_dd_plan) {
        // Plan for one representative instance at this seed; shots are
        // irrelevant to the plan, so a single trajectory keeps it cheap.
        const Pipeline pipe(dev, cfg, seed);
        const RunResult rr = pipe.run(representative_circuit(bench, report.qubits_lo), 1, seed);
        nlohmann::json j;
        j["benchmark"] = bench;
        j["color"] = rr.dd_plan.color;
        j["entries"] = nlohmann::json::array();
        for (const auto& e : rr.dd_plan.entries)
            j["entries"].push_back({{"qubit", e.qubit},
                                    {"window_start_ns", e.window.t0},
                                    {"window_end_ns", e.window.t1},
                                    {"fractions", e.fractions}});
        const std::string plan_path = stem_of(out_path) + "_dd.json";
        write_text(plan_path, j.dump(2));
        std::printf("wrote %s (%zu decoupled windows)\n", plan_path.c_str(),
                    rr.dd_plan.entries.size());
    }
    return 0;
}

int cmd_calibrate_readout(const std::string& device_path, const std::string& out_path,
                          std::int64_t shots, std::uint64_t seed, int max_group,
                          const std::string& qubits) {
    const DeviceModel dev = DeviceModel::load(device_path);
    std::vector<int> qs;
    if (qubits.empty()) {
        qs.resize(static_cast<std::size_t>(dev.num_qubits));
        std::iota(qs.begin(), qs.end(), 0);
    } else {
        auto [lo, hi] = parse_range(qubits);
        for (int q = lo; q <= hi; ++q) qs.push_back(q);
    }
    if (shots < 1) throw validation_error("--shots must be positive");

    const auto groups = choose_groups(dev, qs, max_group);
    int circuits = 0;
    const ReadoutCalibration cal = calibrate_readout(dev, groups, [&](const Circuit& c) {
        ++circuits;
        SimOptions so;
        so.shots = shots;
        so.seed = seed;
        return simulate(schedule_asap(c, dev), dev, so);
    });
    write_text(out_path, cal.to_json_text());
    std::printf("wrote %s (%zu groups, %d calibration circuits, %lld shots each)\n",
                out_path.c_str(), cal.groups.size(), circuits, static_cast<long long>(shots));
    return 0;
}

int cmd_calibrate_gates(const std::string& device_path, const std::string& out_path,
                        std::uint64_t seed) {
    DeviceModel dev = DeviceModel::load(device_path);
    const auto offsets = make_miscalibration(dev, dev.miscal_magnitude, dev.miscal_seed);
    const GateCalResult res = calibrate_device(dev, offsets, GateCalOptions{}, seed);

    double before = 0.0, after = 0.0;
    std::printf("%-8s %12s %12s\n", "edge", "epg before", "epg after");
    for (const auto& [key, b] : res.epg_before) {
        const double a = res.epg_after.at(key);
        std::printf("%-8s %12.3e %12.3e\n", key.c_str(), b, a);
        before += b;
        after += a;
    }
    const double n = static_cast<double>(res.epg_before.size());
    std::printf("%-8s %12.3e %12.3e  (%d blocks)\n", "mean", before / n, after / n, res.blocks);

    dev.save(out_path);
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

int cmd_report_compare(const std::string& a_path, const std::string& b_path) {
    const BenchReport a = BenchReport::load(a_path);
    const BenchReport b = BenchReport::load(b_path);
    std::fputs(compare_reports(a, b).c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic error-suppression toolchain for noisy quantum devices"};
    app.require_subcommand(1);

    // --- run ---------------------------------------------------------------
    auto* run = app.add_subcommand("run", "Run one benchmark family through a pipeline preset");
    std::string bench, device_path, pipeline = "default", qubits, out_path = "report.json";
    std::string ham_path;
    std::int64_t shots = 8192;
    std::uint64_t seed = 1;
    bool emit_csv = false, emit_dd_plan = false;
    run->add_option("--bench", bench, "bv|qft|grover|qaoa|vqe|qec-rep|qec-5q|qv")->required();
    run->add_option("--device", device_path, "device model JSON")->required();
    run->add_option("--pipeline", pipeline, "default|suppressed");
    run->add_option("--qubits", qubits, "size range a..b (families with fixed width ignore it)");
    run->add_option("--shots", shots, "shots per circuit instance");
    run->add_option("--seed", seed, "master seed (calibration and sampling)");
    run->add_option("--out", out_path, "report JSON path");
    run->add_option("--ham", ham_path, "Pauli-Hamiltonian file for --bench vqe (coeff pauli lines)");
    run->add_flag("--emit-csv", emit_csv, "also write the per-instance metric table (or landscape) as CSV");
    run->add_flag("--emit-dd-plan", emit_dd_plan, "also write the decoupling plan of a representative instance");

    // --- calibrate-readout ---------------------------------------------------
    auto* cal_ro = app.add_subcommand("calibrate-readout", "Measure per-group readout confusion matrices");
    std::string ro_device, ro_out = "readout_cal.json", ro_qubits;
    std::int64_t ro_shots = 8192;
    std::uint64_t ro_seed = 1;
    int ro_max_group = 2;
    cal_ro->add_option("--device", ro_device, "device model JSON")->required();
    cal_ro->add_option("--out", ro_out, "calibration JSON path");
    cal_ro->add_option("--shots", ro_shots, "shots per calibration circuit");
    cal_ro->add_option("--seed", ro_seed, "sampling seed");
    cal_ro->add_option("--max-group", ro_max_group, "largest group size");
    cal_ro->add_option("--qubits", ro_qubits, "qubit range a..b (default: all)");

    // --- calibrate-gates -------------------------------------------------------
    auto* cal_g = app.add_subcommand("calibrate-gates", "Re-tune CX pulse parameters against the drift model");
    std::string g_device, g_out = "device_calibrated.json";
    std::uint64_t g_seed = 1;
    cal_g->add_option("--device", g_device, "device model JSON")->required();
    cal_g->add_option("--out", g_out, "calibrated device JSON path");
    cal_g->add_option("--seed", g_seed, "annealing seed");

    // --- report -----------------------------------------------------------------
    auto* rep = app.add_subcommand("report", "Inspect or compare saved reports");
    std::vector<std::string> compare_paths;
    rep->add_option("--compare", compare_paths, "two report JSON files")->expected(2);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(bench, device_path, pipeline, qubits, shots, seed, out_path, ham_path,
                           emit_csv, emit_dd_plan);
        if (cal_ro->parsed())
            return cmd_calibrate_readout(ro_device, ro_out, ro_shots, ro_seed, ro_max_group,
                                         ro_qubits);
        if (cal_g->parsed()) return cmd_calibrate_gates(g_device, g_out, g_seed);
        if (rep->parsed()) {
            if (compare_paths.size() != 2)
                throw validation_error("report: --compare takes exactly two files");
            return cmd_report_compare(compare_paths[0], compare_paths[1]);
        }
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const stage_error& e) {
        std::cerr << "stage failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
