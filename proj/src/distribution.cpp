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

#include "quell/distribution.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "quell/errors.hpp"

namespace quell {

namespace {

void check_key(const std::string& s, int width) {
    if (static_cast<int>(s.size()) != width)
        throw validation_error("distribution: bitstring '" + s + "' does not have width " +
                               std::to_string(width));
    for (char c : s)
        if (c != '0' && c != '1')
            throw validation_error("distribution: bitstring '" + s + "' contains non-binary characters");
}

}  // namespace

Distribution Distribution::from_counts(int width, std::map<std::string, std::int64_t> counts) {
    Distribution d;
    d.width = width;
    std::int64_t total = 0;
    for (const auto& [key, value] : counts) {
        check_key(key, width);
        if (value < 0) throw validation_error("distribution: negative count for '" + key + "'");
        total += value;
    }
    if (total <= 0) throw validation_error("distribution: counts are empty");
    d.counts = std::move(counts);
    d.shots = total;
    for (const auto& [key, value] : d.counts)
        if (value > 0) d.probs[key] = static_cast<double>(value) / static_cast<double>(total);
    return d;
}

Distribution Distribution::from_probs(int width, std::map<std::string, double> probs, double prune) {
    Distribution d;
    d.width = width;
    double total = 0.0;
    for (const auto& [key, value] : probs) {
        check_key(key, width);
        if (value < -1e-12 || !std::isfinite(value))
            throw validation_error("distribution: invalid probability for '" + key + "'");
        total += value;
    }
    if (std::abs(total - 1.0) > 1e-6)
        throw validation_error("distribution: probabilities sum to " + std::to_string(total));
    for (const auto& [key, value] : probs)
        if (value > prune) d.probs[key] = value / total;
    return d;
}

std::string Distribution::to_json_text(int indent) const {
    nlohmann::json j;
    j["width"] = width;
    j["shots"] = shots;
    if (shots > 0) {
        nlohmann::json c = nlohmann::json::object();
        for (const auto& [key, value] : counts) c[key] = value;
        j["counts"] = c;
    } else {
        nlohmann::json p = nlohmann::json::object();
        for (const auto& [key, value] : probs) p[key] = value;
        j["probs"] = p;
    }
    return j.dump(indent);
}

Distribution marginal(const Distribution& d, const std::vector<int>& clbits) {
    if (clbits.empty()) throw validation_error("marginal: no clbits selected");
    for (int c : clbits)
        if (c < 0 || c >= d.width)
            throw validation_error("marginal: clbit " + std::to_string(c) + " outside width " +
                                   std::to_string(d.width));
    const int w = static_cast<int>(clbits.size());
    Distribution out;
    out.width = w;
    out.shots = d.shots;
    auto reduce = [&](const std::string& s) {
        std::string key(static_cast<std::size_t>(w), '0');
        for (int i = 0; i < w; ++i) key[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(clbits[static_cast<std::size_t>(i)])];
        return key;
    };
    if (d.shots > 0) {
        for (const auto& [key, value] : d.counts) out.counts[reduce(key)] += value;
        for (const auto& [key, value] : out.counts)
            if (value > 0) out.probs[key] = static_cast<double>(value) / static_cast<double>(out.shots);
    } else {
        for (const auto& [key, value] : d.probs) out.probs[reduce(key)] += value;
    }
    return out;
}

double pauli_expectation(const Distribution& d, const std::string& pauli) {
    std::vector<int> support;
    for (int i = 0; i < static_cast<int>(pauli.size()); ++i) {
        char c = pauli[static_cast<std::size_t>(i)];
        if (c == 'I' || c == 'i') continue;
        if (c != 'X' && c != 'Y' && c != 'Z' && c != 'x' && c != 'y' && c != 'z')
            throw validation_error(std::string("pauli_expectation: unknown Pauli character '") + c + "'");
        if (i >= d.width)
            throw validation_error("pauli_expectation: support at clbit " + std::to_string(i) +
                                   " exceeds distribution width " + std::to_string(d.width));
        support.push_back(i);
    }
    if (support.empty()) return 1.0;
    double acc = 0.0;
    for (const auto& [key, value] : d.probs) {
        int parity = 0;
        for (int i : support) parity ^= (key[static_cast<std::size_t>(i)] == '1');
        acc += parity ? -value : value;
    }
    return acc;
}

Distribution Distribution::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(std::string("distribution: invalid JSON: ") + e.what());
    }
    if (!j.contains("width") || !j.contains("shots"))
        throw validation_error("distribution: missing 'width' or 'shots'");
    int width = j.at("width").get<int>();
    std::int64_t shots = j.at("shots").get<std::int64_t>();
    if (shots > 0) {
        if (!j.contains("counts")) throw validation_error("distribution: sampled form requires 'counts'");
        std::map<std::string, std::int64_t> counts;
        for (const auto& [key, value] : j.at("counts").items()) counts[key] = value.get<std::int64_t>();
        Distribution d = from_counts(width, std::move(counts));
        if (d.shots != shots)
            throw validation_error("distribution: 'shots' disagrees with the sum of counts");
        return d;
    }
    if (!j.contains("probs")) throw validation_error("distribution: exact form requires 'probs'");
    std::map<std::string, double> probs;
    for (const auto& [key, value] : j.at("probs").items()) probs[key] = value.get<double>();
    return from_probs(width, std::move(probs));
}

}  // namespace quell
