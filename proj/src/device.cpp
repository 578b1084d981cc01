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

#include "quell/device.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>

#include <json.hpp>

namespace quell {

using nlohmann::json;

std::string edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return std::to_string(a) + "-" + std::to_string(b);
}

bool DeviceModel::is_edge(int a, int b) const {
    for (const auto& [u, v] : edges)
        if ((u == a && v == b) || (u == b && v == a)) return true;
    return false;
}

std::int64_t DeviceModel::duration_ns(GateKind kind) const {
    auto it = durations_ns.find(gate_kind_name(kind));
    if (it == durations_ns.end())
        throw validation_error(std::string("device '") + name + "' has no duration for gate kind '" +
                               gate_kind_name(kind) + "'");
    return it->second;
}

double DeviceModel::error_for(const Gate& g) const {
    if (g.is_directive()) return 0.0;
    std::string key = gate_kind_name(g.kind);
    key += ':';
    if (g.qubits.size() == 2) {
        key += edge_key(g.qubits[0], g.qubits[1]);
    } else {
        key += std::to_string(g.qubits[0]);
    }
    if (auto it = gate_error_overrides.find(key); it != gate_error_overrides.end()) return it->second;
    if (auto it = gate_error.find(gate_kind_name(g.kind)); it != gate_error.end()) return it->second;
    throw validation_error(std::string("device '") + name + "' has no error rate for gate kind '" +
                           gate_kind_name(g.kind) + "'");
}

double DeviceModel::zz(int a, int b) const {
    if (!is_edge(a, b)) return 0.0;
    if (auto it = zz_rad_ns.find(edge_key(a, b)); it != zz_rad_ns.end()) return it->second;
    return zz_default_rad_ns;
}

double DeviceModel::tphi_ns(int q) const {
    double inv = 1.0 / t2_ns[static_cast<size_t>(q)] - 0.5 / t1_ns[static_cast<size_t>(q)];
    if (inv <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / inv;
}

std::array<std::array<double, 2>, 2> DeviceModel::confusion(int q) const {
    double e01 = readout_error[static_cast<size_t>(q)][0];  // P(read 1 | prep 0)
    double e10 = readout_error[static_cast<size_t>(q)][1];  // P(read 0 | prep 1)
    return {{{1.0 - e01, e10}, {e01, 1.0 - e10}}};
}

double DeviceModel::readout_assignment_error(int q) const {
    return 0.5 * (readout_error[static_cast<size_t>(q)][0] + readout_error[static_cast<size_t>(q)][1]);
}

void DeviceModel::validate() const {
    if (num_qubits <= 0) throw validation_error("device: num_qubits must be positive");
    auto expect_size = [&](size_t got, const char* what) {
        if (got != static_cast<size_t>(num_qubits))
            throw validation_error(std::string("device: ") + what + " must have one entry per qubit");
    };
    expect_size(t1_ns.size(), "t1_us");
    expect_size(t2_ns.size(), "t2_us");
    expect_size(readout_error.size(), "readout_error");
    for (int q = 0; q < num_qubits; ++q) {
        if (t1_ns[q] <= 0 || t2_ns[q] <= 0) throw validation_error("device: T1/T2 must be positive");
        if (t2_ns[q] > 2.0 * t1_ns[q] + 1e-9)
            throw validation_error("device: T2 must not exceed 2*T1 (qubit " + std::to_string(q) + ")");
        for (double e : readout_error[q])
            if (e < 0.0 || e >= 1.0) throw validation_error("device: readout error out of [0,1)");
    }
    if (edges.empty() && num_qubits > 1) throw validation_error("device: coupling graph has no edges");
    std::vector<std::vector<int>> adj(static_cast<size_t>(num_qubits));
    for (const auto& [a, b] : edges) {
        if (a < 0 || b < 0 || a >= num_qubits || b >= num_qubits || a == b)
            throw validation_error("device: malformed coupling edge");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    // The layout search assumes it can grow a connected region anywhere, so
    // require global connectivity up front.
    std::vector<char> seen(static_cast<size_t>(num_qubits), 0);
    std::queue<int> bfs;
    bfs.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!bfs.empty()) {
        int u = bfs.front();
        bfs.pop();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                bfs.push(v);
            }
    }
    if (num_qubits > 1 && reached != num_qubits) throw validation_error("device: coupling graph is not connected");
    for (const auto& [k, v] : gate_error)
        if (v < 0.0 || v >= 1.0) throw validation_error("device: gate error '" + k + "' out of [0,1)");
    for (const auto& [k, v] : gate_error_overrides)
        if (v < 0.0 || v >= 1.0) throw validation_error("device: gate error override '" + k + "' out of [0,1)");
    for (const auto& [k, v] : durations_ns)
        if (v < 0) throw validation_error("device: negative duration for '" + k + "'");
}

std::string DeviceModel::to_json_text(int indent) const {
    json j;
    j["name"] = name;
    j["synthetic"] = synthetic;
    j["num_qubits"] = num_qubits;
    json je = json::array();
    for (const auto& [a, b] : edges) je.push_back(json::array({a, b}));
    j["edges"] = je;
    auto scale = [](const std::vector<double>& v, double f) {
        std::vector<double> out;
        out.reserve(v.size());
        for (double x : v) out.push_back(x * f);
        return out;
    };
    j["t1_us"] = scale(t1_ns, 1e-3);
    j["t2_us"] = scale(t2_ns, 1e-3);
    j["durations_ns"] = durations_ns;
    j["gate_error"] = gate_error;
    if (!gate_error_overrides.empty()) j["gate_error_overrides"] = gate_error_overrides;
    json jz;
    jz["*"] = zz_default_rad_ns * 1e3;
    for (const auto& [k, v] : zz_rad_ns) jz[k] = v * 1e3;
    j["zz_rate_rad_per_us"] = jz;
    j["readout_error"] = readout_error;
    if (!gate_params.empty()) {
        json jp;
        for (const auto& [k, v] : gate_params) jp[k] = v;
        j["gate_params"] = jp;
    }
    if (miscal_magnitude != 0.0) {
        j["miscalibration"] = {{"magnitude", miscal_magnitude}, {"seed", miscal_seed}};
    }
    return indent >= 0 ? j.dump(indent) : j.dump();
}

DeviceModel DeviceModel::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw validation_error(std::string("device JSON: ") + e.what());
    }
    DeviceModel d;
    try {
        d.name = j.at("name").get<std::string>();
        d.synthetic = j.value("synthetic", true);
        d.num_qubits = j.at("num_qubits").get<int>();
        for (const auto& e : j.at("edges")) d.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        for (double v : j.at("t1_us")) d.t1_ns.push_back(v * 1e3);
        for (double v : j.at("t2_us")) d.t2_ns.push_back(v * 1e3);
        for (auto& [k, v] : j.at("durations_ns").items()) d.durations_ns[k] = v.get<std::int64_t>();
        for (auto& [k, v] : j.at("gate_error").items()) d.gate_error[k] = v.get<double>();
        if (j.contains("gate_error_overrides"))
            for (auto& [k, v] : j["gate_error_overrides"].items()) d.gate_error_overrides[k] = v.get<double>();
        if (j.contains("zz_rate_rad_per_us")) {
            for (auto& [k, v] : j["zz_rate_rad_per_us"].items()) {
                if (k == "*")
                    d.zz_default_rad_ns = v.get<double>() * 1e-3;
                else
                    d.zz_rad_ns[k] = v.get<double>() * 1e-3;
            }
        }
        for (const auto& r : j.at("readout_error"))
            d.readout_error.push_back({r.at(0).get<double>(), r.at(1).get<double>()});
        if (j.contains("gate_params"))
            for (auto& [k, v] : j["gate_params"].items())
                d.gate_params[k] = {v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>()};
        if (j.contains("miscalibration")) {
            d.miscal_magnitude = j["miscalibration"].at("magnitude").get<double>();
            d.miscal_seed = j["miscalibration"].at("seed").get<std::uint64_t>();
        }
    } catch (const json::exception& e) {
        throw validation_error(std::string("device JSON: ") + e.what());
    }
    d.validate();
    return d;
}

DeviceModel DeviceModel::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open device file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

void DeviceModel::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write device file: " + path);
    out << to_json_text(2) << "\n";
}

std::string DeviceModel::content_hash() const {
    std::string dump = to_json_text(-1);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace quell
