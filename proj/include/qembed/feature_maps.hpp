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
#include <bit>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "statevector.hpp"

namespace qembed {

enum class EncodingKind { SimpleAngle, Pi4Angle, EntangledAngle, Amplitude, IQP };
enum class Axis { X, Y };

/// Which feature map to build, with its per-kind options.
struct EncodingSpec {
    EncodingKind kind = EncodingKind::SimpleAngle;
    Axis axis = Axis::X;        // SimpleAngle only
    std::size_t iqp_layers = 2; // IQP only, >= 2

    friend bool operator==(const EncodingSpec &, const EncodingSpec &) = default;
};

inline std::string_view encoding_key(EncodingKind k) {
    switch (k) {
    case EncodingKind::SimpleAngle: return "simple";
    case EncodingKind::Pi4Angle: return "pi4";
    case EncodingKind::EntangledAngle: return "entangled";
    case EncodingKind::Amplitude: return "amplitude";
    case EncodingKind::IQP: return "iqp";
    }
    return "?";
}

inline std::string_view encoding_display_name(EncodingKind k) {
    switch (k) {
    case EncodingKind::SimpleAngle: return "Simple Angle";
    case EncodingKind::Pi4Angle: return "pi/4-Angle";
    case EncodingKind::EntangledAngle: return "Entangled Angle";
    case EncodingKind::Amplitude: return "Amplitude";
    case EncodingKind::IQP: return "IQP";
    }
    return "?";
}

inline std::optional<EncodingKind> parse_encoding_kind(std::string_view s) {
    for (auto k : {EncodingKind::SimpleAngle, EncodingKind::Pi4Angle, EncodingKind::EntangledAngle,
                   EncodingKind::Amplitude, EncodingKind::IQP}) {
        if (encoding_key(k) == s) return k;
    }
    return std::nullopt;
}

inline std::string_view axis_key(Axis a) { return a == Axis::X ? "x" : "y"; }

inline std::optional<Axis> parse_axis(std::string_view s) {
    if (s == "x" || s == "X") return Axis::X;
    if (s == "y" || s == "Y") return Axis::Y;
    return std::nullopt;
}

/// ceil(log2(n)) with the n <= 2 case mapped to a single qubit.
inline std::size_t ceil_log2(std::size_t n) {
    return n <= 2 ? 1 : static_cast<std::size_t>(std::bit_width(n - 1));
}

/// Qubits needed to encode `num_features` values: N for angle/IQP maps, ceil(log2 N) for amplitude.
inline std::size_t required_qubits(EncodingKind kind, std::size_t num_features) {
    if (num_features < 2) throw InputError("feature maps need at least 2 features");
    return kind == EncodingKind::Amplitude ? ceil_log2(num_features) : num_features;
}

namespace detail {
inline void require_features(std::span<const double> x) {
    if (x.size() < 2) throw InputError("feature maps need at least 2 features");
}
} // namespace detail

inline Circuit encode_simple_angle(std::span<const double> x, Axis axis = Axis::X) {
    detail::require_features(x);
    Circuit c{x.size(), {}};
    for (std::size_t j = 0; j < x.size(); ++j) {
        c.add(axis == Axis::X ? GateOp::rx(j, x[j]) : GateOp::ry(j, x[j]));
    }
    return c;
}

/// U(x) = [[cos(pi/4 - x), sin(pi/4 - x)], [-sin(pi/4 - x), cos(pi/4 - x)]].
inline Matrix2 pi4_unitary(double x) {
    const double c = std::cos(std::numbers::pi / 4.0 - x);
    const double s = std::sin(std::numbers::pi / 4.0 - x);
    return {c, s, -s, c};
}

/// Per qubit: H, then U(x_j). Leaves qubit j in cos(x_j)|0> + sin(x_j)|1>.
inline Circuit encode_pi4_angle(std::span<const double> x) {
    detail::require_features(x);
    Circuit c{x.size(), {}};
    for (std::size_t j = 0; j < x.size(); ++j) {
        c.add(GateOp::h(j));
        c.add(GateOp::u1q(j, pi4_unitary(x[j])));
    }
    return c;
}

/// H layer, RY(x_j) layer, then a CNOT chain j -> j+1 closed by (N-1) -> 0.
inline Circuit encode_entangled_angle(std::span<const double> x) {
    detail::require_features(x);
    const std::size_t n = x.size();
    Circuit c{n, {}};
    for (std::size_t j = 0; j < n; ++j) c.add(GateOp::h(j));
    for (std::size_t j = 0; j < n; ++j) c.add(GateOp::ry(j, x[j]));
    for (std::size_t j = 0; j + 1 < n; ++j) c.add(GateOp::cnot(j, j + 1));
    c.add(GateOp::cnot(n - 1, 0));
    return c;
}

/**
 * Rotation angles of the binary-tree amplitude loader.
 *
 * `angles` has 2^n - 1 entries ordered root first, then each tree level
 * left to right. Entry 2^l - 1 + k belongs to node k of level l.
 */
struct AmplitudeAngles {
    std::size_t num_qubits = 0;
    std::vector<double> angles;
};

/**
 * Computes the loader angles for a unit vector `x` (zero-padded to 2^n).
 *
 * Each level halves the vector by pairwise norms; the node with parent norm
 * p and right child r gets 2*asin(r / p). Nodes whose parent norm is exactly
 * zero get angle 0.
 */
inline AmplitudeAngles amplitude_angles(std::span<const double> x) {
    detail::require_features(x);
    double sq = 0.0;
    for (double v : x) sq += v * v;
    if (std::abs(sq - 1.0) > 1e-9) {
        throw NormalizationError("amplitude encoding needs a unit vector, got squared norm " +
                                 std::to_string(sq));
    }
    const std::size_t n = ceil_log2(x.size());
    std::vector<double> level(std::size_t{1} << n, 0.0);
    std::copy(x.begin(), x.end(), level.begin());

    std::vector<std::vector<double>> bottom_up;
    while (level.size() > 1) {
        const std::size_t half = level.size() / 2;
        std::vector<double> parent(half);
        std::vector<double> angles(half);
        for (std::size_t k = 0; k < half; ++k) {
            const double left = level[2 * k];
            const double right = level[2 * k + 1];
            parent[k] = std::sqrt(left * left + right * right);
            if (parent[k] == 0.0) {
                angles[k] = 0.0;
                continue;
            }
            const double ratio = std::clamp(right / parent[k], -1.0, 1.0);
            angles[k] = parent[k] > 0.0 ? 2.0 * std::asin(ratio)
                                        : 2.0 * std::numbers::pi - 2.0 * std::asin(ratio);
        }
        bottom_up.push_back(std::move(angles));
        level = std::move(parent);
    }

    AmplitudeAngles out{n, {}};
    out.angles.reserve((std::size_t{1} << n) - 1);
    for (auto it = bottom_up.rbegin(); it != bottom_up.rend(); ++it) {
        out.angles.insert(out.angles.end(), it->begin(), it->end());
    }
    return out;
}

/// Loader circuit: RY on qubit 0, then one multi-controlled RY per tree node.
inline Circuit encode_amplitude(std::span<const double> x) {
    const AmplitudeAngles tree = amplitude_angles(x);
    const std::size_t n = tree.num_qubits;
    Circuit c{n, {}};
    c.add(GateOp::ry(0, tree.angles[0]));
    for (std::size_t lvl = 1; lvl < n; ++lvl) {
        const std::size_t width = std::size_t{1} << lvl;
        for (std::size_t k = 0; k < width; ++k) {
            std::vector<Control> controls;
            controls.reserve(lvl);
            for (std::size_t q = 0; q < lvl; ++q) {
                controls.push_back({q, static_cast<int>((k >> (lvl - 1 - q)) & 1U)});
            }
            c.add(GateOp::mcry(std::move(controls), lvl, tree.angles[width - 1 + k]));
        }
    }
    return c;
}

/// `layers` repetitions of: H on all qubits, RZ(x_j), RZZ(x_j x_k) for each pair j < k.
inline Circuit encode_iqp(std::span<const double> x, std::size_t layers = 2) {
    detail::require_features(x);
    if (layers < 2) throw ConfigError("IQP embedding needs at least 2 layers");
    const std::size_t n = x.size();
    Circuit c{n, {}};
    for (std::size_t l = 0; l < layers; ++l) {
        for (std::size_t j = 0; j < n; ++j) c.add(GateOp::h(j));
        for (std::size_t j = 0; j < n; ++j) c.add(GateOp::rz(j, x[j]));
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) c.add(GateOp::rzz(j, k, x[j] * x[k]));
        }
    }
    return c;
}

inline Circuit encode(std::span<const double> x, const EncodingSpec &spec) {
    switch (spec.kind) {
    case EncodingKind::SimpleAngle: return encode_simple_angle(x, spec.axis);
    case EncodingKind::Pi4Angle: return encode_pi4_angle(x);
    case EncodingKind::EntangledAngle: return encode_entangled_angle(x);
    case EncodingKind::Amplitude: return encode_amplitude(x);
    case EncodingKind::IQP: return encode_iqp(x, spec.iqp_layers);
    }
    throw ConfigError("unknown encoding");
}

} // namespace qembed
