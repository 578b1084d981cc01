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

#include "quell/readout.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "quell/errors.hpp"

namespace quell {

namespace {

// Euclidean projection onto the probability simplex (Held/Wolfe/Crowder
// threshold method): subtract the largest uniform shift that keeps the
// clipped vector summing to one.
void project_simplex(std::vector<double>& v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cum = 0.0;
    double theta = 0.0;
    int support = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        cum += u[j];
        const double t = (cum - 1.0) / static_cast<double>(j + 1);
        if (u[j] - t > 0.0) {
            theta = t;
            support = static_cast<int>(j + 1);
        }
    }
    if (support == 0) {  // all mass clipped; fall back to uniform
        std::fill(v.begin(), v.end(), 1.0 / static_cast<double>(v.size()));
        return;
    }
    for (double& x : v) x = std::max(0.0, x - theta);
}

// min ||C p - q||^2 over the simplex by projected gradient descent. C is
// row-major dim x dim. The step size 1/(2 ||C||_F^2) is below the inverse
// Lipschitz constant of the gradient, so descent is monotone.
std::vector<double> solve_simplex_least_squares(const std::vector<double>& c,
                                                const std::vector<double>& q, int dim) {
    double fro2 = 0.0;
    for (double x : c) fro2 += x * x;
    const double step = 1.0 / (2.0 * std::max(fro2, 1e-12));

    std::vector<double> p(q);  // warm start at the raw marginal
    project_simplex(p);
    std::vector<double> resid(dim), grad(dim), next(dim);
    for (int iter = 0; iter < 500; ++iter) {
        for (int r = 0; r < dim; ++r) {
            double acc = -q[r];
            for (int k = 0; k < dim; ++k) acc += c[r * dim + k] * p[k];
            resid[r] = acc;
        }
        for (int k = 0; k < dim; ++k) {
            double acc = 0.0;
            for (int r = 0; r < dim; ++r) acc += c[r * dim + k] * resid[r];
            grad[k] = 2.0 * acc;
        }
        for (int k = 0; k < dim; ++k) next[k] = p[k] - step * grad[k];
        project_simplex(next);
        double delta = 0.0;
        for (int k = 0; k < dim; ++k) delta = std::max(delta, std::abs(next[k] - p[k]));
        p.swap(next);
        if (delta < 1e-8) break;
    }
    return p;
}

}  // namespace

std::vector<std::vector<int>> choose_groups(const DeviceModel& dev, std::vector<int> qubits,
                                            int max_group) {
    if (max_group < 1) throw validation_error("choose_groups: max_group must be >= 1");
    std::sort(qubits.begin(), qubits.end());
    qubits.erase(std::unique(qubits.begin(), qubits.end()), qubits.end());
    for (int q : qubits)
        if (q < 0 || q >= dev.num_qubits)
            throw validation_error("choose_groups: qubit " + std::to_string(q) +
                                   " outside device");

    std::set<int> pending(qubits.begin(), qubits.end());
    std::vector<std::vector<int>> groups;
    while (!pending.empty()) {
        std::vector<int> group{*pending.begin()};
        pending.erase(pending.begin());
        while (static_cast<int>(group.size()) < max_group) {
            // Lowest-index unassigned qubit coupled to any current member.
            int next = -1;
            for (int cand : pending) {
                bool coupled = false;
                for (int m : group)
                    if (dev.is_edge(m, cand)) {
                        coupled = true;
                        break;
                    }
                if (coupled) {
                    next = cand;
                    break;
                }
            }
            if (next < 0) break;
            group.push_back(next);
            pending.erase(next);
        }
        groups.push_back(std::move(group));
    }
    return groups;
}

ReadoutCalibration calibrate_readout(const DeviceModel& dev,
                                     const std::vector<std::vector<int>>& groups,
                                     const ExecuteFn& execute) {
    if (groups.empty()) throw validation_error("calibrate_readout: no groups");
    std::set<int> seen;
    int max_size = 0;
    int total = 0;
    for (const auto& g : groups) {
        if (g.empty()) throw validation_error("calibrate_readout: empty group");
        for (int q : g) {
            if (q < 0 || q >= dev.num_qubits)
                throw validation_error("calibrate_readout: qubit outside device");
            if (!seen.insert(q).second)
                throw validation_error("calibrate_readout: groups overlap on qubit " +
                                       std::to_string(q));
        }
        max_size = std::max(max_size, static_cast<int>(g.size()));
        total += static_cast<int>(g.size());
    }

    // Clbit layout: groups packed in order, group i occupying clbits
    // [offset[i], offset[i] + |G_i|).
    std::vector<int> offset(groups.size());
    for (std::size_t i = 1; i < groups.size(); ++i)
        offset[i] = offset[i - 1] + static_cast<int>(groups[i - 1].size());

    ReadoutCalibration cal;
    cal.groups = groups;
    cal.device_hash = dev.content_hash();
    std::vector<std::vector<double>> raw(groups.size());
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const int dim = 1 << groups[i].size();
        raw[i].assign(static_cast<std::size_t>(dim) * dim, 0.0);
    }

    // One circuit per basis pattern of the *largest* group; pattern b is
    // prepared in every group at once (smaller groups use the low bits), so
    // each column of every confusion matrix is hit at least once.
    const int patterns = 1 << max_size;
    for (int b = 0; b < patterns; ++b) {
        Circuit c(dev.num_qubits, total);
        for (std::size_t i = 0; i < groups.size(); ++i)
            for (std::size_t j = 0; j < groups[i].size(); ++j)
                if ((b >> j) & 1) c.add(Gate::x(groups[i][j]));
        for (std::size_t i = 0; i < groups.size(); ++i)
            for (std::size_t j = 0; j < groups[i].size(); ++j)
                c.add(Gate::measure(groups[i][j], offset[i] + static_cast<int>(j)));

        const Distribution d = execute(c);
        if (d.width != total)
            throw stage_error("calibrate_readout: backend returned width " +
                              std::to_string(d.width) + ", expected " + std::to_string(total));
        for (const auto& [key, p] : d.probs) {
            for (std::size_t i = 0; i < groups.size(); ++i) {
                const int size = static_cast<int>(groups[i].size());
                const int dim = 1 << size;
                const int prepared = b & (dim - 1);
                int observed = 0;
                for (int j = 0; j < size; ++j)
                    if (key[static_cast<std::size_t>(offset[i] + j)] == '1') observed |= 1 << j;
                raw[i][static_cast<std::size_t>(observed) * dim + prepared] += p;
            }
        }
    }

    // Column-normalize the accumulated tallies.
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const int dim = 1 << groups[i].size();
        for (int col = 0; col < dim; ++col) {
            double sum = 0.0;
            for (int row = 0; row < dim; ++row) sum += raw[i][static_cast<std::size_t>(row) * dim + col];
            if (sum <= 0.0)
                throw stage_error("calibrate_readout: empty calibration column");
            for (int row = 0; row < dim; ++row) raw[i][static_cast<std::size_t>(row) * dim + col] /= sum;
        }
        cal.confusion.push_back(std::move(raw[i]));
    }
    return cal;
}

Distribution mitigate_readout(const Distribution& measured, const ReadoutCalibration& cal,
                              const std::vector<int>& clbit_qubits) {
    if (static_cast<int>(clbit_qubits.size()) != measured.width)
        throw validation_error("mitigate_readout: clbit_qubits size != distribution width");
    if (measured.probs.empty())
        throw validation_error("mitigate_readout: empty distribution");

    // Locate each group's qubits among the clbits. Groups entirely absent
    // from this measurement are skipped; partial presence is an error since
    // a joint confusion matrix cannot be marginalized per qubit.
    std::vector<std::vector<int>> group_clbits;   // clbit of each group member
    std::vector<const std::vector<double>*> mats;
    std::vector<bool> covered(clbit_qubits.size(), false);
    for (std::size_t i = 0; i < cal.groups.size(); ++i) {
        std::vector<int> cls;
        for (int q : cal.groups[i]) {
            auto it = std::find(clbit_qubits.begin(), clbit_qubits.end(), q);
            if (it != clbit_qubits.end())
                cls.push_back(static_cast<int>(it - clbit_qubits.begin()));
        }
        if (cls.empty()) continue;
        if (cls.size() != cal.groups[i].size())
            throw validation_error("mitigate_readout: group only partially measured");
        for (int c : cls) covered[static_cast<std::size_t>(c)] = true;
        group_clbits.push_back(std::move(cls));
        mats.push_back(&cal.confusion[i]);
    }
    for (std::size_t c = 0; c < covered.size(); ++c)
        if (!covered[c])
            throw validation_error("mitigate_readout: measured qubit " +
                                   std::to_string(clbit_qubits[c]) +
                                   " has no calibration group");

    // Per-group observed marginals, corrected marginals, and per-pattern
    // reweighting ratios.
    std::vector<std::vector<double>> ratio(group_clbits.size());
    for (std::size_t i = 0; i < group_clbits.size(); ++i) {
        const int size = static_cast<int>(group_clbits[i].size());
        const int dim = 1 << size;
        std::vector<double> q(dim, 0.0);
        for (const auto& [key, p] : measured.probs) {
            int pat = 0;
            for (int j = 0; j < size; ++j)
                if (key[static_cast<std::size_t>(group_clbits[i][j])] == '1') pat |= 1 << j;
            q[pat] += p;
        }
        const std::vector<double> p = solve_simplex_least_squares(*mats[i], q, dim);
        ratio[i].assign(dim, 0.0);
        for (int pat = 0; pat < dim; ++pat)
            if (q[pat] > 0.0) ratio[i][pat] = p[pat] / q[pat];
    }

    // Multiplicative recombination over the observed support.
    std::map<std::string, double> out;
    double norm = 0.0;
    for (const auto& [key, p] : measured.probs) {
        double w = p;
        for (std::size_t i = 0; i < group_clbits.size(); ++i) {
            const int size = static_cast<int>(group_clbits[i].size());
            int pat = 0;
            for (int j = 0; j < size; ++j)
                if (key[static_cast<std::size_t>(group_clbits[i][j])] == '1') pat |= 1 << j;
            w *= ratio[i][pat];
        }
        if (w > 0.0) {
            out[key] = w;
            norm += w;
        }
    }
    if (norm <= 0.0)
        throw stage_error("mitigate_readout: correction removed all observed outcomes");
    for (auto& [key, p] : out) p /= norm;
    return Distribution::from_probs(measured.width, out);
}

std::string ReadoutCalibration::to_json_text(int indent) const {
    nlohmann::json j;
    j["device_hash"] = device_hash;
    j["groups"] = groups;
    j["confusion"] = confusion;
    return j.dump(indent) + "\n";
}

ReadoutCalibration ReadoutCalibration::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("readout calibration: bad JSON: ") + e.what());
    }
    ReadoutCalibration cal;
    try {
        cal.device_hash = j.at("device_hash").get<std::string>();
        cal.groups = j.at("groups").get<std::vector<std::vector<int>>>();
        cal.confusion = j.at("confusion").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("readout calibration: bad schema: ") + e.what());
    }
    if (cal.groups.size() != cal.confusion.size())
        throw validation_error("readout calibration: groups/confusion size mismatch");
    for (std::size_t i = 0; i < cal.groups.size(); ++i) {
        const std::size_t dim = std::size_t{1} << cal.groups[i].size();
        if (cal.confusion[i].size() != dim * dim)
            throw validation_error("readout calibration: confusion matrix has wrong shape");
    }
    return cal;
}

}  // namespace quell
