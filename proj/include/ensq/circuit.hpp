// Copyright 2026 The ensq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * Circuit IR shared by the simulator and the compiler.
 *
 * A circuit is written in exactly one alphabet:
 *
 *   native    iswap(theta) phase(theta, phi) cswap cs(phi) cz         over physical nodes
 *   standard  h s t x z rx(theta) rz(theta) u(alpha, beta, gamma, delta)
 *             cnot cz cphase(phi) swap toffoli mcu(alpha, beta, gamma, delta)
 *                                                                     over logical qubits
 *
 * `u` is e^{i alpha} Rz(beta) Rx(gamma) Rz(delta). `mcu` takes t >= 1 control
 * wires followed by the target and applies that same unitary when every
 * control is |1>. `cphase` matches the native controlled phase,
 * diag(1, 1, 1, e^{-i phi}).
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ensq/linalg.hpp"
#include "ensq/native_gates.hpp"

namespace ensq {

enum class Alphabet { Native, Standard };

inline std::string_view alphabet_name(Alphabet a) { return a == Alphabet::Native ? "native" : "standard"; }

struct Gate {
    std::string name;
    std::vector<double> params;
    std::vector<std::size_t> targets;

    bool operator==(const Gate&) const = default;
};

struct Circuit {
    Alphabet alphabet = Alphabet::Standard;
    std::size_t num_wires = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    Circuit(Alphabet a, std::size_t wires) : alphabet(a), num_wires(wires) {}

    Circuit& add(std::string name, std::vector<std::size_t> targets, std::vector<double> params = {}) {
        gates.push_back(Gate{std::move(name), std::move(params), std::move(targets)});
        return *this;
    }

    Circuit& add(const NativeGate& g, std::vector<std::size_t> targets) {
        return add(std::string(g.name()), std::move(targets), g.params());
    }

    /// Appends `other`; alphabets must agree and the wider register wins.
    Circuit& append(const Circuit& other) {
        if (other.alphabet != alphabet) throw Error(Errc::InvalidArgument, "cannot mix circuit alphabets");
        num_wires = std::max(num_wires, other.num_wires);
        if (&other == this) {
            const std::vector<Gate> copy = gates;
            gates.insert(gates.end(), copy.begin(), copy.end());
        } else {
            gates.insert(gates.end(), other.gates.begin(), other.gates.end());
        }
        return *this;
    }

    std::size_t size() const noexcept { return gates.size(); }
    bool empty() const noexcept { return gates.empty(); }

    std::size_t count(std::string_view name) const {
        std::size_t n = 0;
        for (const auto& g : gates) n += g.name == name;
        return n;
    }

    bool operator==(const Circuit&) const = default;
};

namespace detail {

struct StandardSignature {
    std::string_view name;
    std::size_t params;
    std::size_t arity;  // 0 marks variadic (mcu)
};

inline constexpr StandardSignature kStandardGates[] = {
    {"h", 0, 1},     {"s", 0, 1},    {"t", 0, 1},     {"x", 0, 1},      {"z", 0, 1},
    {"rx", 1, 1},    {"rz", 1, 1},   {"u", 4, 1},     {"cnot", 0, 2},   {"cz", 0, 2},
    {"cphase", 1, 2}, {"swap", 0, 2}, {"toffoli", 0, 3}, {"mcu", 4, 0},
};

inline const StandardSignature* find_standard(std::string_view name) {
    for (const auto& sig : kStandardGates) {
        if (sig.name == name) return &sig;
    }
    return nullptr;
}

}  // namespace detail

/// e^{i alpha} Rz(beta) Rx(gamma) Rz(delta)
inline Matrix zxz_unitary(double alpha, double beta, double gamma, double delta) {
    return std::polar(1.0, alpha) * (rotation_z(beta) * rotation_x(gamma) * rotation_z(delta));
}

/// Unitary on 1 + controls.size() wires, controls first.
inline Matrix multi_controlled(const Matrix& u, std::size_t num_controls) {
    const std::size_t dim = std::size_t{2} << num_controls;
    Matrix m = Matrix::identity(dim);
    m(dim - 2, dim - 2) = u(0, 0);
    m(dim - 2, dim - 1) = u(0, 1);
    m(dim - 1, dim - 2) = u(1, 0);
    m(dim - 1, dim - 1) = u(1, 1);
    return m;
}

/// Matrix of one standard-alphabet gate over its own targets.
inline Matrix standard_gate_matrix(const Gate& g) {
    using namespace std::complex_literals;
    const auto& p = g.params;
    const double r = 1.0 / std::numbers::sqrt2;
    if (g.name == "h") return {{r, r}, {r, -r}};
    if (g.name == "s") return {{1, 0}, {0, 1i}};
    if (g.name == "t") return {{1, 0}, {0, std::polar(1.0, std::numbers::pi / 4)}};
    if (g.name == "x") return {{0, 1}, {1, 0}};
    if (g.name == "z") return {{1, 0}, {0, -1}};
    if (g.name == "rx") return rotation_x(p.at(0));
    if (g.name == "rz") return rotation_z(p.at(0));
    if (g.name == "u") return zxz_unitary(p.at(0), p.at(1), p.at(2), p.at(3));
    if (g.name == "cnot") return multi_controlled(Matrix{{0, 1}, {1, 0}}, 1);
    if (g.name == "cz") return multi_controlled(Matrix{{1, 0}, {0, -1}}, 1);
    if (g.name == "cphase") return multi_controlled(Matrix{{1, 0}, {0, std::polar(1.0, -p.at(0))}}, 1);
    if (g.name == "swap") return {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    if (g.name == "toffoli") return multi_controlled(Matrix{{0, 1}, {1, 0}}, 2);
    if (g.name == "mcu") {
        return multi_controlled(zxz_unitary(p.at(0), p.at(1), p.at(2), p.at(3)), g.targets.size() - 1);
    }
    throw Error(Errc::UnsupportedGate, "unknown standard gate '" + g.name + "'");
}

/// Checks names, parameter counts, arities and wire indices.
inline void validate(const Circuit& c) {
    for (const auto& g : c.gates) {
        std::set<std::size_t> seen;
        for (std::size_t t : g.targets) {
            if (t >= c.num_wires) {
                throw Error(Errc::IndexOutOfRange, g.name + " targets wire " + std::to_string(t) + " of " +
                                                       std::to_string(c.num_wires));
            }
            if (!seen.insert(t).second) throw Error(Errc::DuplicateTarget, g.name + " repeats a wire");
        }
        for (double v : g.params) {
            if (!std::isfinite(v)) throw Error(Errc::NonFinite, g.name + " has a non-finite parameter");
        }
        if (c.alphabet == Alphabet::Native) {
            auto native = native_from_name(g.name, g.params);
            if (!native) throw Error(Errc::UnsupportedGate, "'" + g.name + "' is not a native gate");
            if (g.targets.size() != native->arity()) throw Error(Errc::BadArity, g.name + " arity");
        } else {
            const auto* sig = detail::find_standard(g.name);
            if (!sig) throw Error(Errc::UnsupportedGate, "'" + g.name + "' is not a standard gate");
            if (g.params.size() != sig->params) throw Error(Errc::BadArity, g.name + " parameter count");
            const bool arity_ok = sig->arity == 0 ? g.targets.size() >= 2 : g.targets.size() == sig->arity;
            if (!arity_ok) throw Error(Errc::BadArity, g.name + " arity");
        }
    }
}

inline Matrix gate_matrix(const Gate& g, Alphabet alphabet) {
    if (alphabet == Alphabet::Native) {
        auto native = native_from_name(g.name, g.params);
        if (!native) throw Error(Errc::UnsupportedGate, "'" + g.name + "' is not a native gate");
        return native->matrix();
    }
    return standard_gate_matrix(g);
}

/// Runs the circuit on `state`, which must span exactly the circuit's wires.
inline StateVector simulate(const Circuit& c, StateVector state) {
    validate(c);
    if (state.num_nodes() != c.num_wires) throw Error(Errc::DimensionMismatch, "state width differs from circuit");
    for (const auto& g : c.gates) state.apply(gate_matrix(g, c.alphabet), g.targets);
    return state;
}

/// Dense unitary of the circuit over `num_nodes` wires (at least c.num_wires).
inline Matrix circuit_unitary(const Circuit& c, std::size_t num_nodes) {
    if (num_nodes > kMaxMatrixNodes) throw Error(Errc::TooManyNodes, "dense unitary limited to 12 nodes");
    if (num_nodes < c.num_wires) throw Error(Errc::DimensionMismatch, "register narrower than circuit");
    Circuit widened = c;
    widened.num_wires = num_nodes;
    validate(widened);
    std::vector<Matrix> mats;
    mats.reserve(c.gates.size());
    for (const auto& g : c.gates) mats.push_back(gate_matrix(g, c.alphabet));

    const std::size_t dim = std::size_t{1} << num_nodes;
    Matrix out(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        StateVector s = StateVector::basis(num_nodes, col);
        for (std::size_t i = 0; i < mats.size(); ++i) s.apply(mats[i], c.gates[i].targets);
        for (std::size_t row = 0; row < dim; ++row) out(row, col) = s[row];
    }
    return out;
}

inline Matrix circuit_unitary(const Circuit& c) { return circuit_unitary(c, c.num_wires); }

}  // namespace ensq
