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

#include "quell/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "quell/errors.hpp"
#include "quell/rng.hpp"

namespace quell {

double success_probability(const Distribution& dist, const std::string& target) {
    if (static_cast<int>(target.size()) != dist.width)
        throw validation_error("success_probability: target width mismatch");
    auto it = dist.probs.find(target);
    return it == dist.probs.end() ? 0.0 : it->second;
}

double hellinger_loss(const Distribution& a, const Distribution& b) {
    if (a.width != b.width) throw validation_error("hellinger_loss: width mismatch");
    double bc = 0.0;  // Bhattacharyya coefficient
    for (const auto& [key, pa] : a.probs) {
        auto it = b.probs.find(key);
        if (it != b.probs.end()) bc += std::sqrt(pa * it->second);
    }
    return std::sqrt(std::max(0.0, 1.0 - bc));
}

double circuit_infidelity(const Distribution& measured, const Distribution& ideal) {
    const double h2 = hellinger_loss(measured, ideal);
    const double f = 1.0 - h2 * h2;  // classical fidelity sum sqrt(p q), squared below
    return std::clamp(1.0 - f * f, 0.0, 1.0);
}

SelectivityResult selectivity(const Distribution& dist, const std::string& target) {
    if (static_cast<int>(target.size()) != dist.width)
        throw validation_error("selectivity: target width mismatch");
    SelectivityResult r;
    r.p_target = success_probability(dist, target);
    for (const auto& [key, p] : dist.probs)
        if (key != target) r.p_next = std::max(r.p_next, p);
    if (r.p_target <= 0.0) {
        r.value = -std::numeric_limits<double>::infinity();
        return r;
    }
    if (r.p_next <= 0.0) {
        if (dist.shots <= 0)
            throw validation_error(
                "selectivity: single-outcome exact distribution has no finite selectivity");
        r.p_next = 1.0 / (4.0 * static_cast<double>(dist.shots));
        r.floored = true;
    }
    r.value = std::log2(r.p_target / r.p_next);
    return r;
}

double required_shots(double p_t, double s) {
    if (p_t <= 0.0 || s <= 0.0)
        throw validation_error("required_shots: p_t and S must be positive");
    return 1.0 / (p_t * s * s);
}

void Landscape::validate() const {
    if (grid.empty() || grid[0].empty()) throw validation_error("landscape: empty grid");
    for (const auto& row : grid) {
        if (row.size() != grid[0].size()) throw validation_error("landscape: ragged grid");
        for (double v : row)
            if (!std::isfinite(v)) throw validation_error("landscape: non-finite value");
    }
}

std::string Landscape::to_csv_text() const {
    validate();
    std::ostringstream out;
    out.precision(17);
    out << "# rows: " << row_name << "," << row_min << "," << row_max << "," << rows() << "\n";
    out << "# cols: " << col_name << "," << col_min << "," << col_max << "," << cols() << "\n";
    for (const auto& row : grid) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
        out << "\n";
    }
    return out.str();
}

namespace {

// Parses "# rows: name,min,max,count"; returns {name, min, max, count}.
std::tuple<std::string, double, double, int> parse_axis_header(const std::string& line,
                                                               const char* which) {
    const std::string prefix = std::string("# ") + which + ": ";
    if (line.rfind(prefix, 0) != 0)
        throw validation_error(std::string("landscape CSV: expected '") + prefix + "' header");
    std::stringstream ss(line.substr(prefix.size()));
    std::string name, smin, smax, scount;
    if (!std::getline(ss, name, ',') || !std::getline(ss, smin, ',') ||
        !std::getline(ss, smax, ',') || !std::getline(ss, scount))
        throw validation_error("landscape CSV: malformed axis header");
    try {
        return {name, std::stod(smin), std::stod(smax), std::stoi(scount)};
    } catch (const std::exception&) {
        throw validation_error("landscape CSV: malformed axis header");
    }
}

}  // namespace

Landscape Landscape::from_csv_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Landscape l;
    if (!std::getline(in, line)) throw validation_error("landscape CSV: empty");
    int expect_rows = 0, expect_cols = 0;
    std::tie(l.row_name, l.row_min, l.row_max, expect_rows) = parse_axis_header(line, "rows");
    if (!std::getline(in, line)) throw validation_error("landscape CSV: missing cols header");
    std::tie(l.col_name, l.col_min, l.col_max, expect_cols) = parse_axis_header(line, "cols");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw validation_error("landscape CSV: bad cell '" + cell + "'");
            }
        }
        l.grid.push_back(std::move(row));
    }
    l.validate();
    if (l.rows() != expect_rows || l.cols() != expect_cols)
        throw validation_error("landscape CSV: header/grid shape mismatch");
    return l;
}

double ssim(const Landscape& ideal, const Landscape& measured) {
    ideal.validate();
    measured.validate();
    const int h = ideal.rows(), w = ideal.cols();
    if (h != measured.rows() || w != measured.cols())
        throw validation_error("ssim: landscape shapes differ");
    if (h < 8 || w < 8) throw validation_error("ssim: grids must be at least 8x8");

    double lo = ideal.grid[0][0], hi = lo;
    for (const auto& row : ideal.grid)
        for (double v : row) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    const double range = hi - lo;
    if (range == 0.0) {
        if (ideal.grid == measured.grid) return 1.0;
        throw validation_error("ssim: constant ideal landscape has no dynamic range");
    }
    const double c1 = (0.01 * range) * (0.01 * range);
    const double c2 = (0.03 * range) * (0.03 * range);

    constexpr int kWin = 7;
    const double inv_n = 1.0 / (kWin * kWin);
    double acc = 0.0;
    int windows = 0;
    for (int r = 0; r + kWin <= h; ++r) {
        for (int c = 0; c + kWin <= w; ++c) {
            double ma = 0.0, mb = 0.0;
            for (int i = 0; i < kWin; ++i)
                for (int j = 0; j < kWin; ++j) {
                    ma += ideal.grid[r + i][c + j];
                    mb += measured.grid[r + i][c + j];
                }
            ma *= inv_n;
            mb *= inv_n;
            double va = 0.0, vb = 0.0, cov = 0.0;
            for (int i = 0; i < kWin; ++i)
                for (int j = 0; j < kWin; ++j) {
                    const double da = ideal.grid[r + i][c + j] - ma;
                    const double db = measured.grid[r + i][c + j] - mb;
                    va += da * da;
                    vb += db * db;
                    cov += da * db;
                }
            va *= inv_n;
            vb *= inv_n;
            cov *= inv_n;
            acc += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
                   ((ma * ma + mb * mb + c1) * (va + vb + c2));
            ++windows;
        }
    }
    return acc / windows;
}

double pearson_distance(const std::vector<double>& ideal, const std::vector<double>& measured) {
    if (ideal.size() != measured.size())
        throw validation_error("pearson_distance: length mismatch");
    if (ideal.size() < 3) throw validation_error("pearson_distance: need at least 3 points");
    const double n = static_cast<double>(ideal.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < ideal.size(); ++i) {
        ma += ideal[i];
        mb += measured[i];
    }
    ma /= n;
    mb /= n;
    double va = 0.0, vb = 0.0, cov = 0.0;
    for (std::size_t i = 0; i < ideal.size(); ++i) {
        va += (ideal[i] - ma) * (ideal[i] - ma);
        vb += (measured[i] - mb) * (measured[i] - mb);
        cov += (ideal[i] - ma) * (measured[i] - mb);
    }
    if (va == 0.0 || vb == 0.0)
        throw validation_error("pearson_distance: zero variance series");
    return 1.0 - cov / std::sqrt(va * vb);
}

std::vector<std::string> heavy_output_set(const Distribution& ideal) {
    if (ideal.width > 20)
        throw validation_error("heavy_output_set: enumeration capped at 20 bits");
    const std::size_t total = std::size_t{1} << ideal.width;
    std::vector<double> probs(total, 0.0);
    for (const auto& [key, p] : ideal.probs) {
        std::size_t idx = 0;
        for (int b = 0; b < ideal.width; ++b)
            if (key[static_cast<std::size_t>(b)] == '1') idx |= std::size_t{1} << b;
        probs[idx] = p;
    }
    std::vector<double> sorted = probs;
    std::sort(sorted.begin(), sorted.end());
    // 2^n entries is even for n >= 1: median is the mean of the middle pair.
    const double median = 0.5 * (sorted[total / 2 - 1] + sorted[total / 2]);

    std::vector<std::string> heavy;
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (probs[idx] > median) {
            std::string key(static_cast<std::size_t>(ideal.width), '0');
            for (int b = 0; b < ideal.width; ++b)
                if ((idx >> b) & 1) key[static_cast<std::size_t>(b)] = '1';
            heavy.push_back(std::move(key));
        }
    }
    std::sort(heavy.begin(), heavy.end());
    return heavy;
}

double heavy_output_probability(const Distribution& measured,
                                const std::vector<std::string>& heavy) {
    double acc = 0.0;
    for (const auto& key : heavy) {
        auto it = measured.probs.find(key);
        if (it != measured.probs.end()) acc += it->second;
    }
    return acc;
}

QvResult qv_analysis(const std::vector<double>& ho_probs, int n, int resamples,
                     std::uint64_t seed) {
    if (ho_probs.size() < 30)
        throw validation_error("qv_analysis: need at least 30 circuits");
    if (resamples < 1) throw validation_error("qv_analysis: resamples must be >= 1");
    QvResult r;
    r.n = n;
    for (double p : ho_probs) r.mean += p;
    r.mean /= static_cast<double>(ho_probs.size());

    Rng rng(seed, 0);
    double acc = 0.0, acc2 = 0.0;
    for (int b = 0; b < resamples; ++b) {
        double m = 0.0;
        for (std::size_t i = 0; i < ho_probs.size(); ++i)
            m += ho_probs[rng.below(static_cast<std::uint64_t>(ho_probs.size()))];
        m /= static_cast<double>(ho_probs.size());
        acc += m;
        acc2 += m * m;
    }
    const double bm = acc / resamples;
    r.std_err = std::sqrt(std::max(0.0, acc2 / resamples - bm * bm));
    r.passes = r.mean - 2.0 * r.std_err > 2.0 / 3.0;
    r.quantum_volume = r.passes ? (std::uint64_t{1} << n) : 0;
    return r;
}

double gate_error_limit(const ScheduledCircuit& sc, const DeviceModel& dev) {
    double limit = 1.0;
    for (const auto& tg : sc.timed) limit *= 1.0 - dev.error_for(tg.gate);
    return limit;
}

double t1_limit(const ScheduledCircuit& sc, const DeviceModel& dev) {
    double limit = 1.0;
    for (int q = 0; q < sc.num_qubits; ++q) {
        if (sc.first_op_start[static_cast<std::size_t>(q)] < 0) continue;
        const double span = static_cast<double>(sc.active_end[static_cast<std::size_t>(q)] -
                                                sc.first_op_start[static_cast<std::size_t>(q)]);
        limit *= std::exp(-span / (2.0 * dev.t1_ns[static_cast<std::size_t>(q)]));
    }
    return limit;
}

void JointSyndromeDistribution::validate() const {
    const std::size_t dim = std::size_t{1} << m;
    if (matrix.size() != dim) throw validation_error("joint syndromes: wrong row count");
    double total = 0.0;
    for (const auto& row : matrix) {
        if (row.size() != dim) throw validation_error("joint syndromes: wrong column count");
        for (double v : row) {
            if (v < 0.0) throw validation_error("joint syndromes: negative entry");
            total += v;
        }
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw validation_error("joint syndromes: entries must sum to 1");
}

double detection_success(const JointSyndromeDistribution& j) {
    j.validate();
    double tr = 0.0;
    for (std::size_t s = 0; s < j.matrix.size(); ++s) tr += j.matrix[s][s];
    return tr;
}

double enhancement_ratio(double a, double b, double chance) {
    if (b <= chance)
        throw validation_error("enhancement_ratio: baseline does not exceed chance");
    return (a - chance) / (b - chance);
}

}  // namespace quell
