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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dataset.hpp"
#include "errors.hpp"

namespace qembed {

/// Per-feature affine map onto [lo, hi], fitted on one split and reused on others.
struct RangeScaler {
    double lo = 0.0;
    double hi = std::numbers::pi / 2.0;
    std::vector<double> mins;
    std::vector<double> maxs;

    static RangeScaler fit(const LabeledDataset &train, double lo, double hi) {
        if (train.empty()) throw InputError("cannot fit a scaler on an empty dataset");
        if (!(lo < hi)) throw ConfigError("rescale range needs lo < hi");
        RangeScaler s{lo, hi, train.samples.front().features, train.samples.front().features};
        for (const auto &sample : train.samples) {
            for (std::size_t j = 0; j < s.mins.size(); ++j) {
                s.mins[j] = std::min(s.mins[j], sample.features[j]);
                s.maxs[j] = std::max(s.maxs[j], sample.features[j]);
            }
        }
        return s;
    }

    /// Constant training features map to `lo`; out-of-range values clamp to [lo, hi].
    std::vector<double> apply(std::span<const double> x) const {
        if (x.size() != mins.size()) throw InputError("scaler applied to wrong feature count");
        std::vector<double> out(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double span = maxs[j] - mins[j];
            if (span <= 0.0) {
                out[j] = lo;
                continue;
            }
            const double t = (x[j] - mins[j]) / span;
            out[j] = std::clamp(lo + t * (hi - lo), lo, hi);
        }
        return out;
    }

    LabeledDataset apply(const LabeledDataset &data) const {
        LabeledDataset out{data.name, data.feature_dim, {}};
        out.samples.reserve(data.size());
        for (const auto &s : data.samples) out.samples.push_back({apply(s.features), s.label});
        return out;
    }
};

struct RescaledSplit {
    LabeledDataset train;
    LabeledDataset test;
    RangeScaler scaler;
};

/// Fits the per-feature range on `train` only and applies it to both splits.
inline RescaledSplit rescale_to_range(const LabeledDataset &train, const LabeledDataset &test,
                                      double lo = 0.0, double hi = std::numbers::pi / 2.0) {
    RangeScaler scaler = RangeScaler::fit(train, lo, hi);
    return {scaler.apply(train), scaler.apply(test), std::move(scaler)};
}

/// Scales to unit L2 norm; the zero vector becomes e_0.
inline std::vector<double> l2_normalize(std::span<const double> x) {
    std::vector<double> out(x.begin(), x.end());
    double sq = 0.0;
    for (double v : x) sq += v * v;
    if (sq == 0.0) {
        if (!out.empty()) out[0] = 1.0;
        return out;
    }
    const double inv = 1.0 / std::sqrt(sq);
    for (double &v : out) v *= inv;
    return out;
}

inline LabeledDataset l2_normalize(const LabeledDataset &data) {
    LabeledDataset out{data.name, data.feature_dim, {}};
    out.samples.reserve(data.size());
    for (const auto &s : data.samples) out.samples.push_back({l2_normalize(s.features), s.label});
    return out;
}

namespace detail {
inline std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    return idx;
}

inline LabeledDataset gather(const LabeledDataset &data, std::span<const std::size_t> idx,
                             const std::string &suffix) {
    LabeledDataset out{data.name + suffix, data.feature_dim, {}};
    out.samples.reserve(idx.size());
    for (std::size_t i : idx) out.samples.push_back(data.samples[i]);
    return out;
}
} // namespace detail

/// Number of training samples for a split of `m` at `ratio` (nearest integer).
inline std::size_t train_split_size(std::size_t m, double ratio) {
    return static_cast<std::size_t>(std::llround(ratio * static_cast<double>(m)));
}

/// Seeded shuffle, then the first round(ratio * m) samples train and the rest test.
inline std::pair<LabeledDataset, LabeledDataset> split_train_test(const LabeledDataset &data,
                                                                  double ratio, std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError("split ratio must be in (0, 1)");
    const auto idx = detail::shuffled_indices(data.size(), seed);
    const std::size_t n_train = train_split_size(data.size(), ratio);
    const std::span<const std::size_t> all(idx);
    return {detail::gather(data, all.first(n_train), ""),
            detail::gather(data, all.subspan(n_train), "")};
}

/// Keeps the first `n` columns of `ranked`, in ranked order.
inline LabeledDataset select_features(const LabeledDataset &data,
                                      std::span<const std::size_t> ranked, std::size_t n) {
    if (ranked.size() < n) {
        throw ConfigError("need " + std::to_string(n) + " ranked features, got " +
                          std::to_string(ranked.size()));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (ranked[i] >= data.feature_dim) {
            throw ConfigError("feature index " + std::to_string(ranked[i]) + " >= " +
                              std::to_string(data.feature_dim));
        }
    }
    LabeledDataset out{data.name, n, {}};
    out.samples.reserve(data.size());
    for (const auto &s : data.samples) {
        Sample t{{}, s.label};
        t.features.reserve(n);
        for (std::size_t i = 0; i < n; ++i) t.features.push_back(s.features[ranked[i]]);
        out.samples.push_back(std::move(t));
    }
    return out;
}

/**
 * Seeded subsample of `cap` samples without replacement, in original order.
 * If the draw misses a class the dataset contains, one slot is swapped for
 * that class.
 */
inline LabeledDataset cap_samples(const LabeledDataset &data, std::size_t cap, std::uint64_t seed) {
    if (cap < 1) throw ConfigError("sample cap must be >= 1");
    if (cap >= data.size()) return data;
    const auto idx = detail::shuffled_indices(data.size(), seed);
    std::vector<std::size_t> chosen(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(cap));
    if (cap >= 2) {
        for (int label : {0, 1}) {
            const bool present = std::any_of(chosen.begin(), chosen.end(), [&](std::size_t i) {
                return data.samples[i].label == label;
            });
            if (present) continue;
            auto it = std::find_if(idx.begin() + static_cast<std::ptrdiff_t>(cap), idx.end(),
                                   [&](std::size_t i) { return data.samples[i].label == label; });
            if (it != idx.end()) chosen.back() = *it;
        }
    }
    std::sort(chosen.begin(), chosen.end());
    LabeledDataset out = detail::gather(data, chosen, "");
    return out;
}

/**
 * Two Gaussian blobs with unit variance and centres +-separation/2 along the
 * diagonal direction. Labels alternate 0, 1, 0, ... so classes stay balanced.
 */
inline LabeledDataset synth_binary_dataset(std::size_t m, std::size_t dim, std::uint64_t seed,
                                           double separation = 4.0) {
    if (m < 2 || dim < 2) throw ConfigError("synthetic dataset needs m >= 2 and dim >= 2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    const double offset = separation / 2.0 / std::sqrt(static_cast<double>(dim));
    LabeledDataset out{"synth", dim, {}};
    out.samples.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        Sample s{std::vector<double>(dim), static_cast<int>(i % 2)};
        const double centre = s.label == 1 ? offset : -offset;
        for (double &v : s.features) v = centre + noise(rng);
        out.samples.push_back(std::move(s));
    }
    return out;
}

} // namespace qembed
