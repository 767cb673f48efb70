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

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "feature_maps.hpp"
#include "statevector.hpp"

namespace qembed {

/// Shape of the re-uploading classifier.
struct ModelConfig {
    EncodingSpec encoding;
    std::size_t num_features = 4;
    std::size_t num_layers = 2;

    std::size_t num_qubits() const { return required_qubits(encoding.kind, num_features); }
    std::size_t num_params() const { return num_layers * num_qubits(); }

    void validate() const {
        if (num_features < 2) throw ConfigError("model needs at least 2 features");
        if (num_layers < 1) throw ConfigError("model needs at least 1 layer");
        if (encoding.kind == EncodingKind::IQP && encoding.iqp_layers < 2) {
            throw ConfigError("IQP embedding needs at least 2 layers");
        }
    }
};

/// Trainable RY angles, layer-major: theta[l * n + j] rotates qubit j in layer l.
struct ModelParams {
    std::vector<double> theta;

    friend bool operator==(const ModelParams &, const ModelParams &) = default;
};

/// A model circuit plus the gate index of every trainable rotation, in theta order.
struct ModelCircuit {
    Circuit circuit;
    std::vector<std::size_t> param_gates;
};

/**
 * Builds the layered circuit with parameter bookkeeping.
 *
 * Each layer is the encoding block for `x`, RY(theta) on every qubit, then the
 * entangling ring CNOT(n-1 -> 0), CNOT(0 -> 1), ..., CNOT(n-2 -> n-1). A
 * single-qubit model has no ring.
 */
inline ModelCircuit build_model(std::span<const double> x, const ModelConfig &config,
                                std::span<const double> theta) {
    config.validate();
    if (x.size() != config.num_features) {
        throw InputError("sample has " + std::to_string(x.size()) + " features, model expects " +
                         std::to_string(config.num_features));
    }
    const std::size_t n = config.num_qubits();
    if (theta.size() != config.num_layers * n) {
        throw ParameterError("expected " + std::to_string(config.num_layers * n) +
                             " parameters, got " + std::to_string(theta.size()));
    }
    const Circuit block = encode(x, config.encoding);

    ModelCircuit out{{n, {}}, {}};
    out.param_gates.reserve(theta.size());
    for (std::size_t l = 0; l < config.num_layers; ++l) {
        out.circuit.append(block);
        for (std::size_t j = 0; j < n; ++j) {
            out.param_gates.push_back(out.circuit.gates.size());
            out.circuit.add(GateOp::ry(j, theta[l * n + j]));
        }
        if (n > 1) {
            out.circuit.add(GateOp::cnot(n - 1, 0));
            for (std::size_t j = 0; j + 1 < n; ++j) out.circuit.add(GateOp::cnot(j, j + 1));
        }
    }
    return out;
}

inline Circuit build_model_circuit(std::span<const double> x, const ModelConfig &config,
                                   const ModelParams &params) {
    return build_model(x, config, params.theta).circuit;
}

/// <Z> of the last qubit after running `circuit` on |0...0>.
inline double measure_last(const Circuit &circuit) {
    return expectation_z(simulate(circuit), circuit.num_qubits - 1);
}

inline double forward(std::span<const double> x, const ModelConfig &config,
                      const ModelParams &params) {
    return measure_last(build_model_circuit(x, config, params));
}

/// Maps <Z> in [-1, 1] to P(label = 1) = (1 - <Z>) / 2.
inline double probability_from_expectation(double z) { return (1.0 - z) / 2.0; }

inline int label_from_expectation(double z) {
    return probability_from_expectation(z) > 0.5 ? 1 : 0;
}

inline int predict(std::span<const double> x, const ModelConfig &config,
                   const ModelParams &params) {
    return label_from_expectation(forward(x, config, params));
}

} // namespace qembed
