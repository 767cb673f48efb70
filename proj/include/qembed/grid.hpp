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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "data_io.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "feature_maps.hpp"
#include "metrics.hpp"
#include "model.hpp"
#include "parallel.hpp"
#include "pca.hpp"
#include "preprocess.hpp"
#include "trainer.hpp"

namespace qembed {

enum class DatasetKind { Wdbc, Mnist, Synth, Csv };

/// Where a benchmark dataset comes from and how its features are chosen.
struct DatasetRef {
    DatasetKind kind = DatasetKind::Synth;
    std::string name;

    // wdbc / csv
    std::filesystem::path csv_path;
    std::string label_column = "-1";
    std::string positive_label = "1";
    /// Columns by decreasing importance; empty means file order.
    std::vector<std::size_t> ranked_features;

    // mnist: the test pair is optional, otherwise the train pair is split.
    std::filesystem::path mnist_images;
    std::filesystem::path mnist_labels;
    std::filesystem::path mnist_test_images;
    std::filesystem::path mnist_test_labels;
    int class_a = 0;
    int class_b = 1;

    // synth
    std::size_t synth_samples = 1000;
    std::size_t synth_dim = 8;
    double synth_separation = 4.0;
};

/// WDBC columns (0-based, label excluded) ordered by permutation importance,
/// keeping only features with pairwise |correlation| < 0.9.
inline const std::vector<std::size_t> kWdbcRankedFeatures{23, 21, 27, 15, 13, 9, 24, 18};

/// The bundled WDBC file: `diagnosis` column, malignant (M) is the positive class.
inline DatasetRef wdbc_reference(const std::filesystem::path &csv_path) {
    DatasetRef ref;
    ref.kind = DatasetKind::Wdbc;
    ref.csv_path = csv_path;
    ref.label_column = "diagnosis";
    ref.positive_label = "M";
    ref.ranked_features = kWdbcRankedFeatures;
    return ref;
}

struct GridSpec {
    std::vector<DatasetRef> datasets;
    std::vector<EncodingSpec> encodings;
    std::vector<std::size_t> features{4, 6, 8};
    std::vector<std::size_t> layers{2, 4};
    std::size_t train_cap = 4000;
    std::size_t test_cap = 2000;
    double split = 0.8;
    std::uint64_t seed = 0;
    TrainConfig train;
    /// Grid cells run concurrently on this many workers; 0 = hardware concurrency.
    std::size_t jobs = 1;

    void validate() const {
        if (datasets.empty() || encodings.empty() || features.empty() || layers.empty()) {
            throw ConfigError("grid needs at least one dataset, encoding, feature count and layer count");
        }
        for (auto n : features) {
            if (n < 2) throw ConfigError("feature counts must be >= 2");
        }
        for (auto m : layers) {
            if (m < 1) throw ConfigError("layer counts must be >= 1");
        }
        if (!(split > 0.0 && split < 1.0)) throw ConfigError("split ratio must be in (0, 1)");
        if (train_cap < 1 || test_cap < 1) throw ConfigError("sample caps must be >= 1");
        train.validate();
    }
};

/// One benchmark row plus the test predictions it was scored from.
struct RunRecord {
    std::string dataset;
    std::string encoding;
    std::optional<std::string> axis;
    std::size_t num_features = 0;
    std::size_t num_layers = 0;
    std::vector<double> epoch_accuracies;
    double test_accuracy = 0.0;
    double f1 = 0.0;
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;
    std::vector<int> test_predictions;
    std::vector<int> test_labels;
    std::optional<std::string> error;

    bool ok() const noexcept { return !error.has_value(); }

    friend bool operator==(const RunRecord &, const RunRecord &) = default;
};

inline std::string default_dataset_name(const DatasetRef &ref) {
    if (!ref.name.empty()) return ref.name;
    switch (ref.kind) {
    case DatasetKind::Wdbc: return "wdbc";
    case DatasetKind::Mnist: return "mnist" + std::to_string(ref.class_a) + std::to_string(ref.class_b);
    case DatasetKind::Synth: return "synth";
    case DatasetKind::Csv: return ref.csv_path.stem().string();
    }
    return "dataset";
}

/// splitmix64 finaliser.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Training seed of a cell: master seed mixed with a hash of the cell's identity.
inline std::uint64_t cell_seed(std::uint64_t master, const std::string &cell_key) {
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
    for (unsigned char c : cell_key) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix64(master ^ mix64(h));
}

inline std::string cell_key(const std::string &dataset, const EncodingSpec &enc, std::size_t n,
                            std::size_t m) {
    std::string key = dataset + "|" + std::string(encoding_key(enc.kind));
    if (enc.kind == EncodingKind::SimpleAngle) key += "-" + std::string(axis_key(enc.axis));
    if (enc.kind == EncodingKind::IQP) key += "-" + std::to_string(enc.iqp_layers);
    return key + "|" + std::to_string(n) + "F|" + std::to_string(m) + "L";
}

/// A dataset split into capped train/test parts, before feature reduction.
struct PreparedSplit {
    LabeledDataset train;
    LabeledDataset test;
};

/// Loads `ref`, splits it (seeded), and applies the sample caps.
inline PreparedSplit load_split(const DatasetRef &ref, const GridSpec &spec) {
    PreparedSplit out;
    switch (ref.kind) {
    case DatasetKind::Wdbc:
    case DatasetKind::Csv: {
        auto all = load_csv(ref.csv_path, ref.label_column, ref.positive_label);
        std::tie(out.train, out.test) = split_train_test(all, spec.split, spec.seed);
        break;
    }
    case DatasetKind::Synth: {
        auto all = synth_binary_dataset(ref.synth_samples, ref.synth_dim, spec.seed, ref.synth_separation);
        std::tie(out.train, out.test) = split_train_test(all, spec.split, spec.seed);
        break;
    }
    case DatasetKind::Mnist: {
        auto train = load_mnist_idx(ref.mnist_images, ref.mnist_labels, ref.class_a, ref.class_b);
        if (!ref.mnist_test_images.empty()) {
            out.train = std::move(train);
            out.test = load_mnist_idx(ref.mnist_test_images, ref.mnist_test_labels, ref.class_a,
                                      ref.class_b);
        } else {
            std::tie(out.train, out.test) = split_train_test(train, spec.split, spec.seed);
        }
        break;
    }
    }
    out.train = cap_samples(out.train, spec.train_cap, spec.seed);
    out.test = cap_samples(out.test, spec.test_cap, mix64(spec.seed));
    const std::string name = default_dataset_name(ref);
    out.train.name = name;
    out.test.name = name;
    if (out.train.empty() || out.test.empty()) throw InputError(name + ": empty train or test split");
    return out;
}

/**
 * Reduces a split to `n` angle-ready features in [0, pi/2]: PCA (fitted on
 * train) for MNIST, ranked column selection otherwise, then a train-fitted
 * range map.
 */
inline PreparedSplit reduce_features(const PreparedSplit &split, const DatasetRef &ref, std::size_t n) {
    PreparedSplit reduced;
    if (ref.kind == DatasetKind::Mnist) {
        const PcaModel pca = pca_fit(split.train, n);
        reduced = {pca_transform(pca, split.train), pca_transform(pca, split.test)};
    } else {
        std::vector<std::size_t> ranked = ref.ranked_features;
        if (ranked.empty()) {
            ranked.resize(split.train.feature_dim);
            for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i] = i;
        }
        reduced = {select_features(split.train, ranked, n), select_features(split.test, ranked, n)};
    }
    auto scaled = rescale_to_range(reduced.train, reduced.test, 0.0, std::numbers::pi / 2.0);
    return {std::move(scaled.train), std::move(scaled.test)};
}

/// Trains and scores one cell on already-reduced data.
inline RunRecord run_cell(const PreparedSplit &data, const EncodingSpec &enc, std::size_t n_features,
                          std::size_t n_layers, const TrainConfig &base, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.dataset = data.train.name;
    rec.encoding = std::string(encoding_key(enc.kind));
    if (enc.kind == EncodingKind::SimpleAngle) rec.axis = std::string(axis_key(enc.axis));
    rec.num_features = n_features;
    rec.num_layers = n_layers;
    rec.seed = seed;

    LabeledDataset train_set = data.train;
    LabeledDataset test_set = data.test;
    if (enc.kind == EncodingKind::Amplitude) {
        train_set = l2_normalize(train_set);
        test_set = l2_normalize(test_set);
    }
    const ModelConfig model{enc, n_features, n_layers};
    TrainConfig tcfg = base;
    tcfg.seed = seed;
    const TrainHistory history = train(train_set, model, tcfg);
    rec.epoch_accuracies = history.epoch_train_accuracy;
    rec.test_predictions = predict_all(test_set, model, history.final_params, tcfg.threads);
    rec.test_labels = test_set.labels();
    rec.test_accuracy = accuracy(rec.test_predictions, rec.test_labels);
    rec.f1 = f1_score(rec.test_predictions, rec.test_labels);
    rec.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

/**
 * Runs every (dataset, N, M, encoding) cell in that nesting order.
 *
 * Failures (bad data, too few columns, ...) become records with `error` set;
 * other cells still run. Output order does not depend on `spec.jobs`.
 */
inline std::vector<RunRecord> run_grid(const GridSpec &spec) {
    spec.validate();

    struct Cell {
        std::size_t dataset;
        std::size_t n;
        std::size_t m;
        EncodingSpec enc;
    };
    std::vector<Cell> cells;
    for (std::size_t d = 0; d < spec.datasets.size(); ++d) {
        for (auto n : spec.features) {
            for (auto m : spec.layers) {
                for (const auto &enc : spec.encodings) cells.push_back({d, n, m, enc});
            }
        }
    }

    // Data preparation is shared by every cell of a (dataset, N) pair.
    std::vector<std::optional<PreparedSplit>> splits(spec.datasets.size());
    std::vector<std::string> split_errors(spec.datasets.size());
    std::map<std::pair<std::size_t, std::size_t>, PreparedSplit> reduced;
    std::map<std::pair<std::size_t, std::size_t>, std::string> reduce_errors;
    for (std::size_t d = 0; d < spec.datasets.size(); ++d) {
        try {
            splits[d] = load_split(spec.datasets[d], spec);
        } catch (const std::exception &e) {
            split_errors[d] = e.what();
            continue;
        }
        for (auto n : spec.features) {
            if (reduced.contains({d, n}) || reduce_errors.contains({d, n})) continue;
            try {
                reduced.emplace(std::pair{d, n}, reduce_features(*splits[d], spec.datasets[d], n));
            } catch (const std::exception &e) {
                reduce_errors[{d, n}] = e.what();
            }
        }
    }

    std::vector<RunRecord> records(cells.size());
    parallel_for(cells.size(), spec.jobs, [&](std::size_t i) {
        const Cell &cell = cells[i];
        const std::string name = default_dataset_name(spec.datasets[cell.dataset]);
        const std::uint64_t seed = cell_seed(spec.seed, cell_key(name, cell.enc, cell.n, cell.m));
        RunRecord &rec = records[i];
        try {
            if (!split_errors[cell.dataset].empty()) throw InputError(split_errors[cell.dataset]);
            if (auto it = reduce_errors.find({cell.dataset, cell.n}); it != reduce_errors.end()) {
                throw InputError(it->second);
            }
            rec = run_cell(reduced.at({cell.dataset, cell.n}), cell.enc, cell.n, cell.m, spec.train, seed);
        } catch (const std::exception &e) {
            rec = RunRecord{};
            rec.dataset = name;
            rec.encoding = std::string(encoding_key(cell.enc.kind));
            if (cell.enc.kind == EncodingKind::SimpleAngle) rec.axis = std::string(axis_key(cell.enc.axis));
            rec.num_features = cell.n;
            rec.num_layers = cell.m;
            rec.seed = seed;
            rec.error = e.what();
        }
    });
    return records;
}

} // namespace qembed
