// Copyright 2026 The qembed Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace qembed {

struct Sample {
    std::vector<double> features;
    int label = 0;

    friend bool operator==(const Sample &, const Sample &) = default;
};

/// Binary-labelled samples sharing one feature dimension.
struct LabeledDataset {
    std::string name;
    std::size_t feature_dim = 0;
    std::vector<Sample> samples;

    std::size_t size() const noexcept { return samples.size(); }
    bool empty() const noexcept { return samples.empty(); }

    std::vector<int> labels() const {
        std::vector<int> out;
        out.reserve(samples.size());
        for (const auto &s : samples) out.push_back(s.label);
        return out;
    }

    std::size_t count_label(int label) const {
        std::size_t n = 0;
        for (const auto &s : samples) n += s.label == label ? 1 : 0;
        return n;
    }

    /// Throws InputError unless every sample has `feature_dim` values and a 0/1 label.
    void validate() const {
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (samples[i].features.size() != feature_dim) {
                throw InputError(name + ": sample " + std::to_string(i) + " has " +
                                 std::to_string(samples[i].features.size()) + " features, expected " +
                                 std::to_string(feature_dim));
            }
            if (samples[i].label != 0 && samples[i].label != 1) {
                throw InputError(name + ": sample " + std::to_string(i) + " has non-binary label");
            }
        }
    }

    friend bool operator==(const LabeledDataset &, const LabeledDataset &) = default;
};

} // namespace qembed
