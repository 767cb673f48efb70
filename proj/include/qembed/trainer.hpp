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
#include <vector>

#include "dataset.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "parallel.hpp"

namespace qembed {

struct TrainConfig {
    std::size_t epochs = 5;
    double learning_rate = 0.1;
    std::size_t batch_size = 32;
    std::uint64_t seed = 0;
    /// Workers for per-sample gradients; 0 = hardware concurrency. Results do not depend on it.
    std::size_t threads = 1;

    void validate() const {
        if (epochs < 1) throw ConfigError("epochs must be >= 1");
        if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
            throw ConfigError("learning rate must be finite and non-negative");
        }
        if (batch_size < 1) throw ConfigError("batch size must be >= 1");
    }
};

struct TrainHistory {
    std::vector<double> epoch_train_accuracy;
    ModelParams final_params;
};

inline constexpr double kProbabilityEpsilon = 1e-12;

inline double clamp_probability(double p) {
    return std::clamp(p, kProbabilityEpsilon, 1.0 - kProbabilityEpsilon);
}

/// Binary cross-entropy of predicted P(label = 1) against label y.
inline double bce_loss(double p, int y) {
    p = clamp_probability(p);
    return y == 1 ? -std::log(p) : -std::log1p(-p);
}

/// d bce_loss / dp at the clamped probability.
inline double bce_loss_derivative(double p, int y) {
    p = clamp_probability(p);
    return y == 1 ? -1.0 / p : 1.0 / (1.0 - p);
}

inline double sample_loss(std::span<const double> x, int y, const ModelConfig &config,
                          const ModelParams &params) {
    return bce_loss(probability_from_expectation(forward(x, config, params)), y);
}

/**
 * d<Z>/d theta_i by the two-term parameter shift at +-pi/2.
 *
 * The state just before each trainable gate is shared by both shifted runs
 * and carried forward, so only the suffix after the gate is re-simulated.
 */
inline std::vector<double> expectation_gradient(std::span<const double> x,
                                                const ModelConfig &config,
                                                const ModelParams &params) {
    const ModelCircuit model = build_model(x, config, params.theta);
    const auto &gates = model.circuit.gates;
    const std::size_t last = model.circuit.num_qubits - 1;
    validate_circuit(model.circuit);

    auto shifted_run = [&](const StateVector &prefix, std::size_t at, double angle) {
        StateVector s = prefix;
        GateOp g = gates[at];
        g.angle = angle;
        apply_gate_inplace(s, g);
        for (std::size_t k = at + 1; k < gates.size(); ++k) apply_gate_inplace(s, gates[k]);
        return expectation_z(s, last);
    };

    std::vector<double> grad(params.theta.size());
    constexpr double shift = std::numbers::pi / 2.0;
    StateVector prefix = zero_state(model.circuit.num_qubits);
    std::size_t applied = 0;
    for (std::size_t i = 0; i < grad.size(); ++i) {
        const std::size_t at = model.param_gates[i];
        while (applied < at) apply_gate_inplace(prefix, gates[applied++]);
        const double angle = gates[at].angle;
        grad[i] = (shifted_run(prefix, at, angle + shift) - shifted_run(prefix, at, angle - shift)) / 2.0;
    }
    return grad;
}

/// Gradient of the BCE loss of one sample with respect to theta.
inline std::vector<double> grad_params(std::span<const double> x, int y,
                                       const ModelConfig &config, const ModelParams &params) {
    const double z = forward(x, config, params);
    const double dloss_dz = bce_loss_derivative(probability_from_expectation(z), y) * -0.5;
    std::vector<double> grad = expectation_gradient(x, config, params);
    for (double &g : grad) g *= dloss_dz;
    return grad;
}

/// Uniform draws in [0, 2pi), consuming `rng`.
inline ModelParams init_params(const ModelConfig &config, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> dist(0.0, 2.0 * std::numbers::pi);
    ModelParams p;
    p.theta.resize(config.num_params());
    for (double &t : p.theta) t = dist(rng);
    return p;
}

inline std::vector<int> predict_all(const LabeledDataset &data, const ModelConfig &config,
                                    const ModelParams &params, std::size_t threads = 1) {
    std::vector<int> out(data.size());
    parallel_for(data.size(), threads,
                 [&](std::size_t i) { out[i] = predict(data.samples[i].features, config, params); });
    return out;
}

inline double dataset_accuracy(const LabeledDataset &data, const ModelConfig &config,
                               const ModelParams &params, std::size_t threads = 1) {
    if (data.empty()) throw InputError("accuracy of an empty dataset");
    const std::vector<int> pred = predict_all(data, config, params, threads);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == data.samples[i].label;
    return static_cast<double>(hits) / static_cast<double>(pred.size());
}

/**
 * Mini-batch SGD on the BCE loss.
 *
 * The seed drives both the initial angles and the per-epoch shuffles. Batch
 * gradients are reduced in sample order, so the history is identical for any
 * thread count.
 */
inline TrainHistory train(const LabeledDataset &data, const ModelConfig &config,
                          const TrainConfig &tcfg) {
    if (data.empty()) throw InputError("cannot train on an empty dataset");
    config.validate();
    tcfg.validate();
    data.validate();
    if (data.feature_dim != config.num_features) {
        throw InputError("dataset has " + std::to_string(data.feature_dim) +
                         " features, model expects " + std::to_string(config.num_features));
    }

    std::mt19937_64 rng(tcfg.seed);
    TrainHistory history;
    history.final_params = init_params(config, rng);
    ModelParams &params = history.final_params;

    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<std::vector<double>> per_sample;

    for (std::size_t epoch = 0; epoch < tcfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < order.size(); start += tcfg.batch_size) {
            const std::size_t stop = std::min(order.size(), start + tcfg.batch_size);
            per_sample.assign(stop - start, {});
            parallel_for(stop - start, tcfg.threads, [&](std::size_t b) {
                const Sample &s = data.samples[order[start + b]];
                per_sample[b] = grad_params(s.features, s.label, config, params);
            });
            std::vector<double> mean(params.theta.size(), 0.0);
            for (const auto &g : per_sample) {
                for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += g[i];
            }
            const double scale = tcfg.learning_rate / static_cast<double>(per_sample.size());
            for (std::size_t i = 0; i < mean.size(); ++i) params.theta[i] -= scale * mean[i];
        }
        history.epoch_train_accuracy.push_back(dataset_accuracy(data, config, params, tcfg.threads));
    }
    return history;
}

} // namespace qembed
