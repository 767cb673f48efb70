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

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace qembed {

using Complex = std::complex<double>;

/// 2x2 row-major matrix: {m00, m01, m10, m11}.
using Matrix2 = std::array<Complex, 4>;

inline constexpr std::size_t kMaxQubits = 24;

/**
 * Dense statevector over `num_qubits` qubits.
 *
 * Qubit 0 is the most significant bit of the basis index, so basis state
 * |q0 q1 ... q_{n-1}> lives at index q0*2^{n-1} + ... + q_{n-1}.
 */
class StateVector {
  public:
    explicit StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
        if (num_qubits < 1 || num_qubits > kMaxQubits) {
            throw SizeError("qubit count " + std::to_string(num_qubits) +
                            " outside [1, " + std::to_string(kMaxQubits) + "]");
        }
        amplitudes_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
        amplitudes_[0] = 1.0;
    }

    /// Wraps explicit amplitudes; length must be 2^n and the norm 1 within `tol`.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes,
                                       double tol = 1e-12) {
        const std::size_t dim = amplitudes.size();
        if (dim < 2 || (dim & (dim - 1)) != 0) {
            throw SizeError("amplitude count " + std::to_string(dim) +
                            " is not a power of two >= 2");
        }
        StateVector s(static_cast<std::size_t>(std::countr_zero(dim)));
        s.amplitudes_ = std::move(amplitudes);
        if (std::abs(s.norm_squared() - 1.0) > tol) {
            throw NormalizationError("state is not unit-norm");
        }
        return s;
    }

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    std::size_t dim() const noexcept { return amplitudes_.size(); }

    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    std::span<Complex> amplitudes() noexcept { return amplitudes_; }

    const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm_squared() const noexcept {
        double acc = 0.0;
        for (const auto &a : amplitudes_) acc += std::norm(a);
        return acc;
    }

    /// Bit mask of `qubit` inside a basis index.
    std::size_t mask(std::size_t qubit) const noexcept {
        return std::size_t{1} << (num_qubits_ - 1 - qubit);
    }

  private:
    std::size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

inline StateVector zero_state(std::size_t num_qubits) { return StateVector(num_qubits); }

enum class GateKind { RX, RY, RZ, H, CNOT, RZZ, MCRY, U1Q };

inline const char *to_string(GateKind k) {
    switch (k) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::H: return "H";
    case GateKind::CNOT: return "CNOT";
    case GateKind::RZZ: return "RZZ";
    case GateKind::MCRY: return "MCRY";
    case GateKind::U1Q: return "U1Q";
    }
    return "?";
}

/// A control wire. `polarity` 1 fires on |1> (closed dot), 0 fires on |0> (open dot).
struct Control {
    std::size_t qubit;
    int polarity = 1;

    friend bool operator==(const Control &, const Control &) = default;
};

/**
 * One gate of a circuit.
 *
 * `partner` is only used by RZZ (its second qubit). `controls` is only
 * non-empty for CNOT and MCRY. `matrix` is only read for U1Q.
 */
struct GateOp {
    GateKind kind = GateKind::H;
    std::size_t target = 0;
    std::size_t partner = 0;
    std::vector<Control> controls;
    double angle = 0.0;
    Matrix2 matrix{};

    static GateOp rx(std::size_t q, double a) { return {GateKind::RX, q, 0, {}, a, {}}; }
    static GateOp ry(std::size_t q, double a) { return {GateKind::RY, q, 0, {}, a, {}}; }
    static GateOp rz(std::size_t q, double a) { return {GateKind::RZ, q, 0, {}, a, {}}; }
    static GateOp h(std::size_t q) { return {GateKind::H, q, 0, {}, 0.0, {}}; }
    static GateOp cnot(std::size_t control, std::size_t target) {
        return {GateKind::CNOT, target, 0, {{control, 1}}, 0.0, {}};
    }
    static GateOp rzz(std::size_t q1, std::size_t q2, double a) {
        return {GateKind::RZZ, q1, q2, {}, a, {}};
    }
    static GateOp mcry(std::vector<Control> controls, std::size_t target, double a) {
        return {GateKind::MCRY, target, 0, std::move(controls), a, {}};
    }
    static GateOp u1q(std::size_t q, const Matrix2 &m) { return {GateKind::U1Q, q, 0, {}, 0.0, m}; }

    bool is_rotation() const noexcept {
        return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ ||
               kind == GateKind::RZZ || kind == GateKind::MCRY;
    }
};

struct Circuit {
    std::size_t num_qubits = 0;
    std::vector<GateOp> gates;

    void add(GateOp g) { gates.push_back(std::move(g)); }
    void append(const Circuit &other) {
        gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    }
};

/// Matrix of a single-qubit gate kind (RX, RY, RZ, H, or U1Q's stored matrix).
inline Matrix2 single_qubit_matrix(GateKind kind, double angle, const Matrix2 &u = {}) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const Complex i{0.0, 1.0};
    switch (kind) {
    case GateKind::RX: return {c, -i * s, -i * s, c};
    case GateKind::RY:
    case GateKind::MCRY: return {c, -s, s, c};
    case GateKind::RZ: return {std::polar(1.0, -angle / 2.0), 0.0, 0.0, std::polar(1.0, angle / 2.0)};
    case GateKind::H: {
        const double r = 1.0 / std::numbers::sqrt2;
        return {r, r, r, -r};
    }
    case GateKind::CNOT: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::U1Q: return u;
    case GateKind::RZZ: break;
    }
    throw std::invalid_argument("RZZ has no single-qubit matrix");
}

inline bool is_unitary(const Matrix2 &m, double tol = 1e-12) {
    // rows of m orthonormal <=> m m^dagger = I
    const Complex a = m[0] * std::conj(m[0]) + m[1] * std::conj(m[1]);
    const Complex b = m[2] * std::conj(m[2]) + m[3] * std::conj(m[3]);
    const Complex c = m[0] * std::conj(m[2]) + m[1] * std::conj(m[3]);
    return std::abs(a - 1.0) <= tol && std::abs(b - 1.0) <= tol && std::abs(c) <= tol;
}

/// Throws IndexError / std::invalid_argument if `g` cannot act on `num_qubits` qubits.
inline void validate_gate(const GateOp &g, std::size_t num_qubits) {
    auto check = [&](std::size_t q, const char *what) {
        if (q >= num_qubits) {
            throw IndexError(std::string(to_string(g.kind)) + " " + what + " qubit " +
                             std::to_string(q) + " >= " + std::to_string(num_qubits));
        }
    };
    check(g.target, "target");
    if (g.kind == GateKind::RZZ) {
        check(g.partner, "partner");
        if (g.partner == g.target) throw IndexError("RZZ acts on the same qubit twice");
    }
    std::uint64_t seen = 0;
    for (const auto &c : g.controls) {
        check(c.qubit, "control");
        if (c.qubit == g.target) throw IndexError("control qubit equals target");
        if (seen & (std::uint64_t{1} << c.qubit)) throw IndexError("duplicate control qubit");
        seen |= std::uint64_t{1} << c.qubit;
        if (c.polarity != 0 && c.polarity != 1) {
            throw std::invalid_argument("control polarity must be 0 or 1");
        }
    }
    if (g.kind == GateKind::U1Q && !is_unitary(g.matrix)) {
        throw std::invalid_argument("U1Q matrix is not unitary");
    }
}

namespace detail {

// Spelled out so GCC does not route every product through the NaN-checking __muldc3.
inline Complex cmul(const Complex &a, const Complex &b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

/// Calls fn(i0, i1) for every amplitude pair that differs only in bit `t`
/// and whose control bits match.
template <class Fn>
inline void for_each_pair(std::size_t dim, std::size_t t, std::size_t ctrl_mask,
                          std::size_t ctrl_value, Fn &&fn) {
    const std::size_t low = t - 1;
    for (std::size_t k = 0; k < dim / 2; ++k) {
        const std::size_t i0 = ((k & ~low) << 1) | (k & low);
        if ((i0 & ctrl_mask) != ctrl_value) continue;
        fn(i0, i0 | t);
    }
}

inline void apply_matrix(StateVector &state, std::size_t target, const Matrix2 &m,
                         std::size_t ctrl_mask, std::size_t ctrl_value) {
    Complex *amps = state.amplitudes().data();
    const std::size_t dim = state.dim();
    const std::size_t t = state.mask(target);
    const bool real = m[0].imag() == 0.0 && m[1].imag() == 0.0 && m[2].imag() == 0.0 &&
                      m[3].imag() == 0.0;
    if (m[1] == 0.0 && m[2] == 0.0) {
        for_each_pair(dim, t, ctrl_mask, ctrl_value, [&](std::size_t i0, std::size_t i1) {
            amps[i0] = cmul(m[0], amps[i0]);
            amps[i1] = cmul(m[3], amps[i1]);
        });
    } else if (m[0] == 0.0 && m[3] == 0.0 && m[1] == 1.0 && m[2] == 1.0) {
        for_each_pair(dim, t, ctrl_mask, ctrl_value,
                      [&](std::size_t i0, std::size_t i1) { std::swap(amps[i0], amps[i1]); });
    } else if (real) {
        const double r00 = m[0].real(), r01 = m[1].real(), r10 = m[2].real(), r11 = m[3].real();
        for_each_pair(dim, t, ctrl_mask, ctrl_value, [&](std::size_t i0, std::size_t i1) {
            const Complex a0 = amps[i0], a1 = amps[i1];
            amps[i0] = {r00 * a0.real() + r01 * a1.real(), r00 * a0.imag() + r01 * a1.imag()};
            amps[i1] = {r10 * a0.real() + r11 * a1.real(), r10 * a0.imag() + r11 * a1.imag()};
        });
    } else {
        for_each_pair(dim, t, ctrl_mask, ctrl_value, [&](std::size_t i0, std::size_t i1) {
            const Complex a0 = amps[i0], a1 = amps[i1];
            amps[i0] = cmul(m[0], a0) + cmul(m[1], a1);
            amps[i1] = cmul(m[2], a0) + cmul(m[3], a1);
        });
    }
}

inline void apply_rzz(StateVector &state, std::size_t q1, std::size_t q2, double angle) {
    auto amps = state.amplitudes();
    const std::size_t m1 = state.mask(q1);
    const std::size_t m2 = state.mask(q2);
    const Complex even = std::polar(1.0, -angle / 2.0);
    const Complex odd = std::polar(1.0, angle / 2.0);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const bool parity = ((i & m1) != 0) != ((i & m2) != 0);
        amps[i] = cmul(amps[i], parity ? odd : even);
    }
}

} // namespace detail

/// Applies `g` to `state` in place. Indices are assumed validated.
inline void apply_gate_inplace(StateVector &state, const GateOp &g) {
    if (g.kind == GateKind::RZZ) {
        detail::apply_rzz(state, g.target, g.partner, g.angle);
        return;
    }
    std::size_t ctrl_mask = 0;
    std::size_t ctrl_value = 0;
    for (const auto &c : g.controls) {
        ctrl_mask |= state.mask(c.qubit);
        if (c.polarity == 1) ctrl_value |= state.mask(c.qubit);
    }
    detail::apply_matrix(state, g.target, single_qubit_matrix(g.kind, g.angle, g.matrix),
                         ctrl_mask, ctrl_value);
}

inline StateVector apply_gate(StateVector state, const GateOp &g) {
    validate_gate(g, state.num_qubits());
    apply_gate_inplace(state, g);
    return state;
}

inline void validate_circuit(const Circuit &c) {
    for (const auto &g : c.gates) validate_gate(g, c.num_qubits);
}

inline StateVector apply_circuit(StateVector state, const Circuit &circuit) {
    if (circuit.num_qubits != state.num_qubits()) {
        throw SizeError("circuit has " + std::to_string(circuit.num_qubits) +
                        " qubits, state has " + std::to_string(state.num_qubits()));
    }
    validate_circuit(circuit);
    for (const auto &g : circuit.gates) apply_gate_inplace(state, g);
    return state;
}

/// Runs `circuit` on |0...0>.
inline StateVector simulate(const Circuit &circuit) {
    return apply_circuit(zero_state(circuit.num_qubits), circuit);
}

/// <Z> on `qubit`: +|a|^2 where the qubit reads 0, -|a|^2 where it reads 1.
inline double expectation_z(const StateVector &state, std::size_t qubit) {
    if (qubit >= state.num_qubits()) {
        throw IndexError("measured qubit " + std::to_string(qubit) + " >= " +
                         std::to_string(state.num_qubits()));
    }
    const std::size_t m = state.mask(qubit);
    double acc = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double p = std::norm(state[i]);
        acc += (i & m) ? -p : p;
    }
    return acc;
}

} // namespace qembed
