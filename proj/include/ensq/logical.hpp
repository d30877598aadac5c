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
 * Pairwise (dual-rail) logical qubits: |0_L> = |01>, |1_L> = |10> on an
 * ordered node pair (node_a, node_b). The logical value equals node_a.
 *
 * Every circuit produced here is native and acts on a register of
 * LogicalRegister::total_nodes() physical nodes.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ensq/circuit.hpp"
#include "ensq/linalg.hpp"
#include "ensq/native_gates.hpp"

namespace ensq {

struct NodePair {
    std::size_t a = 0;
    std::size_t b = 0;

    bool operator==(const NodePair&) const = default;
};

class LogicalRegister {
public:
    LogicalRegister() = default;

    LogicalRegister(std::vector<NodePair> pairs, std::vector<std::size_t> ancillas)
        : pairs_(std::move(pairs)), ancillas_(std::move(ancillas)) {
        const std::size_t total = total_nodes();
        std::set<std::size_t> seen;
        auto claim = [&](std::size_t node) {
            if (node >= total) throw Error(Errc::IndexOutOfRange, "register node index beyond total_nodes");
            if (!seen.insert(node).second) throw Error(Errc::DuplicateTarget, "register node used twice");
        };
        for (const auto& p : pairs_) {
            claim(p.a);
            claim(p.b);
        }
        for (std::size_t n : ancillas_) claim(n);
    }

    /// Logical qubit q on nodes (2q, 2q+1); ancillas follow the pairs.
    static LogicalRegister contiguous(std::size_t num_logical, std::size_t num_ancillas = 0) {
        std::vector<NodePair> pairs;
        for (std::size_t q = 0; q < num_logical; ++q) pairs.push_back({2 * q, 2 * q + 1});
        std::vector<std::size_t> anc;
        for (std::size_t i = 0; i < num_ancillas; ++i) anc.push_back(2 * num_logical + i);
        return LogicalRegister(std::move(pairs), std::move(anc));
    }

    std::size_t num_logical() const noexcept { return pairs_.size(); }
    std::size_t total_nodes() const noexcept { return 2 * pairs_.size() + ancillas_.size(); }
    const std::vector<NodePair>& pairs() const noexcept { return pairs_; }
    const std::vector<std::size_t>& ancilla_nodes() const noexcept { return ancillas_; }

    const NodePair& pair(std::size_t logical) const {
        if (logical >= pairs_.size()) throw Error(Errc::IndexOutOfRange, "logical qubit " + std::to_string(logical));
        return pairs_[logical];
    }

    /// Physical basis index encoding logical basis index `logical` (qubit 0 most significant).
    std::uint64_t encode_index(std::uint64_t logical) const {
        const std::size_t n = total_nodes();
        std::uint64_t index = 0;
        for (std::size_t q = 0; q < pairs_.size(); ++q) {
            const bool one = (logical >> (pairs_.size() - 1 - q)) & 1U;
            const std::size_t node = one ? pairs_[q].a : pairs_[q].b;
            index |= std::uint64_t{1} << (n - 1 - node);
        }
        return index;
    }

    bool operator==(const LogicalRegister&) const = default;

private:
    std::vector<NodePair> pairs_;
    std::vector<std::size_t> ancillas_;
};

inline std::string to_bitstring(std::uint64_t value, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t i = 0; i < width; ++i) {
        if ((value >> (width - 1 - i)) & 1U) s[i] = '1';
    }
    return s;
}

inline std::uint64_t parse_bitstring(std::string_view bits) {
    std::uint64_t value = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') throw Error(Errc::ParseError, "bitstring may contain only 0 and 1");
        value = (value << 1) | static_cast<std::uint64_t>(ch == '1');
    }
    return value;
}

/// Probability mass outside span{encoded logical basis states}.
inline double leaked_weight(const StateVector& physical, const LogicalRegister& reg) {
    if (physical.num_nodes() != reg.total_nodes()) throw Error(Errc::DimensionMismatch, "state/register width");
    double inside = 0.0;
    for (std::uint64_t l = 0; l < (std::uint64_t{1} << reg.num_logical()); ++l) {
        inside += std::norm(physical[reg.encode_index(l)]);
    }
    return std::max(0.0, physical.norm_squared() - inside);
}

struct LogicalState {
    LogicalRegister reg;
    StateVector physical;

    double leaked_weight() const { return ensq::leaked_weight(physical, reg); }
    bool in_code_space(double tol = kDefaultTol) const { return leaked_weight() <= tol; }
};

inline LogicalState encode(const LogicalRegister& reg, std::string_view logical_basis) {
    if (logical_basis.size() != reg.num_logical()) {
        throw Error(Errc::LengthMismatch, "bitstring has " + std::to_string(logical_basis.size()) +
                                              " bits for " + std::to_string(reg.num_logical()) + " logical qubits");
    }
    const auto index = reg.encode_index(parse_bitstring(logical_basis));
    return LogicalState{reg, StateVector::basis(reg.total_nodes(), index)};
}

/// Contiguous register without ancillas, sized by the bitstring.
inline LogicalState encode(std::string_view logical_basis) {
    return encode(LogicalRegister::contiguous(logical_basis.size()), logical_basis);
}

/// Logical amplitudes keyed by bitstring; amplitudes are reported even when zero.
inline std::map<std::string, Complex> decode(const LogicalState& state, double tol = kDefaultTol) {
    const double leaked = state.leaked_weight();
    if (leaked > tol) throw Error(Errc::LeakedState, "weight " + std::to_string(leaked) + " outside the code space");
    std::map<std::string, Complex> out;
    const std::size_t n = state.reg.num_logical();
    for (std::uint64_t l = 0; l < (std::uint64_t{1} << n); ++l) {
        out.emplace(to_bitstring(l, n), state.physical[state.reg.encode_index(l)]);
    }
    return out;
}

struct CodeSpaceAction {
    Matrix block;               ///< <enc(i)| U |enc(j)>, 2^L x 2^L
    double max_leakage = 0.0;   ///< worst weight leaving the code space over basis inputs
};

/// Restriction of a native circuit to the code space of `reg`.
inline CodeSpaceAction code_space_action(const Circuit& native, const LogicalRegister& reg) {
    if (native.alphabet != Alphabet::Native) throw Error(Errc::InvalidArgument, "code-space action needs a native circuit");
    Circuit widened = native;
    if (widened.num_wires > reg.total_nodes()) throw Error(Errc::DimensionMismatch, "circuit wider than register");
    widened.num_wires = reg.total_nodes();
    const std::size_t dim = std::size_t{1} << reg.num_logical();
    CodeSpaceAction action{Matrix(dim, dim), 0.0};
    for (std::uint64_t col = 0; col < dim; ++col) {
        const StateVector out = simulate(widened, StateVector::basis(reg.total_nodes(), reg.encode_index(col)));
        for (std::uint64_t row = 0; row < dim; ++row) action.block(row, col) = out[reg.encode_index(row)];
        action.max_leakage = std::max(action.max_leakage, leaked_weight(out, reg));
    }
    return action;
}

struct EulerAngles {
    double alpha = 0.0;  ///< global phase
    double beta = 0.0;
    double gamma = 0.0;
    double delta = 0.0;

    /// e^{i alpha} Rz(beta) Rx(gamma) Rz(delta)
    Matrix matrix() const { return zxz_unitary(alpha, beta, gamma, delta); }
};

/// Z-X-Z decomposition of a 2x2 unitary. When gamma is 0 or pi the
/// decomposition is not unique; delta is then pinned to 0.
inline EulerAngles euler_decompose(const Matrix& u, double tol = kDefaultTol) {
    using namespace std::complex_literals;
    if (u.rows() != 2 || u.cols() != 2) throw Error(Errc::DimensionMismatch, "euler_decompose needs a 2x2 matrix");
    if (!u.is_unitary(tol)) throw Error(Errc::NotUnitary, "euler_decompose input is not unitary");

    EulerAngles e;
    const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    e.alpha = std::arg(det) / 2;
    const Matrix v = u * std::polar(1.0, -e.alpha);  // special unitary

    const double cos_half = std::abs(v(1, 1));
    const double sin_half = std::abs(v(1, 0));
    e.gamma = 2 * std::atan2(sin_half, cos_half);

    constexpr double kDegenerate = 1e-12;
    if (sin_half < kDegenerate) {
        e.beta = 2 * std::arg(v(1, 1));
        e.gamma = 0.0;
    } else if (cos_half < kDegenerate) {
        e.beta = 2 * std::arg(1i * v(1, 0));
        e.gamma = std::numbers::pi;
    } else {
        const double sum = 2 * std::arg(v(1, 1));         // beta + delta
        const double diff = 2 * std::arg(1i * v(1, 0));   // beta - delta
        e.beta = (sum + diff) / 2;
        e.delta = (sum - diff) / 2;
    }
    return e;
}

namespace detail {

inline bool is_trivial_angle(double theta) {
    return std::abs(std::remainder(theta, 2 * std::numbers::pi)) <= 1e-12;
}

inline Circuit native_on(const LogicalRegister& reg) { return Circuit(Alphabet::Native, reg.total_nodes()); }

}  // namespace detail

/// Logical NOT: iSWAP(pi) on the pair, i.e. X up to the phase i.
inline Circuit logical_x(const LogicalRegister& reg, std::size_t q) {
    const auto& p = reg.pair(q);
    return detail::native_on(reg).add(iswap_theta(std::numbers::pi), {p.a, p.b});
}

/// Rx(theta) on the code space via iSWAP(-theta).
inline Circuit logical_rx(const LogicalRegister& reg, std::size_t q, double theta) {
    const auto& p = reg.pair(q);
    return detail::native_on(reg).add(iswap_theta(-theta), {p.a, p.b});
}

/// Rz(theta) on the code space via PHASE(theta, 0).
inline Circuit logical_rz(const LogicalRegister& reg, std::size_t q, double theta) {
    const auto& p = reg.pair(q);
    return detail::native_on(reg).add(phase_theta_phi(theta, 0.0), {p.a, p.b});
}

/// Any single-qubit unitary, up to global phase, in at most three gates:
/// PHASE(delta), iSWAP(-gamma), PHASE(beta) in time order. Rotations by a
/// multiple of 2*pi are dropped.
inline Circuit logical_1q(const LogicalRegister& reg, std::size_t q, const Matrix& u) {
    const auto& p = reg.pair(q);
    const EulerAngles e = euler_decompose(u);
    Circuit c = detail::native_on(reg);
    if (!detail::is_trivial_angle(e.delta)) c.add(phase_theta_phi(e.delta, 0.0), {p.a, p.b});
    if (!detail::is_trivial_angle(e.gamma)) c.add(iswap_theta(-e.gamma), {p.a, p.b});
    if (!detail::is_trivial_angle(e.beta)) c.add(phase_theta_phi(e.beta, 0.0), {p.a, p.b});
    return c;
}

/// Encoded CNOT in one C(SWAP): control node_a of `control`, swapping the target pair.
inline Circuit logical_cnot(const LogicalRegister& reg, std::size_t control, std::size_t target) {
    if (control == target) throw Error(Errc::SameQubit, "CNOT control equals target");
    const auto& c = reg.pair(control);
    const auto& t = reg.pair(target);
    return detail::native_on(reg).add(cswap(), {c.a, t.a, t.b});
}

/// Encoded controlled phase diag(1, 1, 1, e^{-i phi}) between the first nodes of two pairs.
inline Circuit logical_cz(const LogicalRegister& reg, std::size_t control, std::size_t target,
                          double phi = std::numbers::pi) {
    if (control == target) throw Error(Errc::SameQubit, "controlled phase on a single qubit");
    const auto& c = reg.pair(control);
    const auto& t = reg.pair(target);
    return detail::native_on(reg).add(controlled_phase(phi), {c.a, t.a});
}

/// True when a swapping gate on `swap_targets` is safe: the pair is jointly
/// |11> with probability at most `tol`.
inline bool leakage_guard(const StateVector& state, NodePair swap_targets, double tol = kDefaultTol) {
    if (swap_targets.a >= state.num_nodes() || swap_targets.b >= state.num_nodes()) {
        throw Error(Errc::IndexOutOfRange, "leakage_guard node");
    }
    const auto mask = state.node_mask(swap_targets.a) | state.node_mask(swap_targets.b);
    double both = 0.0;
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        if ((i & mask) == mask) both += std::norm(state[i]);
    }
    return both <= tol;
}

}  // namespace ensq
