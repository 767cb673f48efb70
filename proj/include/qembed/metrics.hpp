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

#include "errors.hpp"

namespace qembed {

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;
};

namespace detail {
inline void check_lengths(std::span<const int> predictions, std::span<const int> labels) {
    if (predictions.size() != labels.size()) {
        throw InputError("prediction/label length mismatch: " + std::to_string(predictions.size()) +
                         " vs " + std::to_string(labels.size()));
    }
    if (predictions.empty()) throw InputError("metrics of an empty prediction set");
}
} // namespace detail

inline ConfusionCounts confusion(std::span<const int> predictions, std::span<const int> labels,
                                 int positive = 1) {
    detail::check_lengths(predictions, labels);
    ConfusionCounts c;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const bool pred_pos = predictions[i] == positive;
        const bool true_pos = labels[i] == positive;
        if (pred_pos && true_pos) ++c.tp;
        else if (pred_pos) ++c.fp;
        else if (true_pos) ++c.fn;
        else ++c.tn;
    }
    return c;
}

inline double accuracy(std::span<const int> predictions, std::span<const int> labels) {
    detail::check_lengths(predictions, labels);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) hits += predictions[i] == labels[i];
    return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

/// F1 of the `positive` class; 0 when there are no true positives.
inline double f1_score(std::span<const int> predictions, std::span<const int> labels,
                       int positive = 1) {
    const ConfusionCounts c = confusion(predictions, labels, positive);
    if (c.tp == 0) return 0.0;
    const double precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    const double recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    return 2.0 * precision * recall / (precision + recall);
}

} // namespace qembed
