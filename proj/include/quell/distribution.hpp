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

#ifndef QUELL_DISTRIBUTION_HPP
#define QUELL_DISTRIBUTION_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace quell {

/// Probability distribution over classical bitstrings.
///
/// Bitstring convention: character i is clbit i ("01" means clbit0=0,
/// clbit1=1). A sampled distribution carries `counts` and `shots` > 0 with
/// probs = counts/shots; an exact distribution carries probs only and
/// shots == 0.
///
/// Serialized form: {"width": w, "shots": n, "counts": {...}} when sampled,
/// {"width": w, "shots": 0, "probs": {...}} when exact.
struct Distribution {
    int width = 0;
    std::int64_t shots = 0;
    std::map<std::string, double> probs;
    std::map<std::string, std::int64_t> counts;

    double prob(const std::string& s) const {
        auto it = probs.find(s);
        return it == probs.end() ? 0.0 : it->second;
    }

    /// Builds a sampled distribution; probs are derived as counts/shots.
    static Distribution from_counts(int width, std::map<std::string, std::int64_t> counts);
    /// Builds an exact distribution (entries below `prune` are dropped).
    static Distribution from_probs(int width, std::map<std::string, double> probs, double prune = 1e-15);

    std::string to_json_text(int indent = -1) const;
    static Distribution from_json_text(const std::string& text);
};

/// Marginalizes a distribution onto the listed clbits. Character i of each
/// output bitstring is the value of `clbits[i]` in the parent string; counts
/// (or probs, for exact distributions) are summed over the discarded bits.
Distribution marginal(const Distribution& d, const std::vector<int>& clbits);

/// Expectation of a Pauli-string observable evaluated on measurement data.
///
/// Character i of `pauli` refers to clbit i; any non-I character marks the
/// clbit as part of the observable's support. The caller is responsible for
/// having rotated each supported qubit into the measurement basis, so X, Y,
/// and Z act identically here: the expectation is sum_s p(s) * (-1)^parity(s)
/// with the parity taken over the supported clbits. An all-identity string
/// yields exactly 1.
double pauli_expectation(const Distribution& d, const std::string& pauli);

}  // namespace quell

#endif
