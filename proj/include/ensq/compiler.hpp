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
 * Lowering of standard-alphabet circuits over logical qubits to native
 * circuits over physical nodes.
 *
 * Cost contract of the emitted code:
 *   1q gate          <= 3 native gates (1 for x, rx, rz, s, t)
 *   cnot             1 cswap
 *   cz, cphase       1 controlled phase
 *   toffoli          3 cswap + 1 ancilla node
 *   mcu, t controls  2(t-1) cascade cswaps + t-1 ancilla nodes + a controlled-U block
 *
 * Every ancilla is returned to |0> by the gate that borrowed it, so the pool
 * is reused from one gate to the next.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <numbers>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ensq/circuit.hpp"
#include "ensq/linalg.hpp"
#include "ensq/logical.hpp"
#include "ensq/native_gates.hpp"

namespace ensq {

struct CompileReport {
    std::size_t native_gate_count = 0;
    std::size_t cswap_count = 0;
    std::size_t ancilla_nodes_used = 0;
    std::size_t total_physical_nodes = 0;

    static CompileReport of(const Circuit& native, std::size_t ancillas_used) {
        return CompileReport{native.size(), native.count("cswap"), ancillas_used, native.num_wires};
    }

    bool operator==(const CompileReport&) const = default;
};

/// Bump allocator over a register's ancilla nodes.
class AncillaAllocator {
public:
    explicit AncillaAllocator(std::span<const std::size_t> pool) : pool_(pool.begin(), pool.end()) {}

    std::size_t acquire() {
        if (next_ == pool_.size()) {
            throw Error(Errc::NoAncillaAvailable, "ancilla pool of " + std::to_string(pool_.size()) + " exhausted");
        }
        peak_ = std::max(peak_, next_ + 1);
        return pool_[next_++];
    }

    /// Every borrowed ancilla is back in |0>.
    void release_all() noexcept { next_ = 0; }

    std::size_t peak() const noexcept { return peak_; }

private:
    std::vector<std::size_t> pool_;
    std::size_t next_ = 0;
    std::size_t peak_ = 0;
};

namespace detail {

inline void require_distinct(std::span<const std::size_t> logical) {
    std::set<std::size_t> seen(logical.begin(), logical.end());
    if (seen.size() != logical.size()) throw Error(Errc::SameQubit, "controls and target must be distinct");
}

inline bool is_pauli_x(const Matrix& u) { return u.max_abs_diff(Matrix{{0, 1}, {1, 0}}) <= 1e-12; }

inline bool is_diagonal(const Matrix& u) { return std::abs(u(0, 1)) <= 1e-12 && std::abs(u(1, 0)) <= 1e-12; }

}  // namespace detail

/// U on logical qubit `target`, conditioned on the physical node `control`
/// being |1>. Exact, including the phase of U.
inline Circuit controlled_u_block(const LogicalRegister& reg, std::size_t control, std::size_t target, const Matrix& u) {
    if (!u.is_unitary()) throw Error(Errc::NotUnitary, "controlled block needs a unitary");
    const auto& t = reg.pair(target);
    if (control == t.a || control == t.b) throw Error(Errc::SameQubit, "control node inside target pair");
    Circuit c = detail::native_on(reg);

    // Phase e^{i lambda} on control=1 with the target pair's one-hot node.
    auto controlled_phase_on = [&](std::size_t node, double lambda) {
        if (!detail::is_trivial_angle(lambda)) c.add(controlled_phase(-lambda), {control, node});
    };

    if (detail::is_pauli_x(u)) {
        c.add(cswap(), {control, t.a, t.b});
        return c;
    }
    if (detail::is_diagonal(u)) {
        controlled_phase_on(t.b, std::arg(u(0, 0)));
        controlled_phase_on(t.a, std::arg(u(1, 1)));
        return c;
    }

    // U = e^{i alpha} A X B X C with ABC = I, from the ZXZ angles rewritten in
    // ZYZ form: Rz(b) Rx(g) Rz(d) = Rz(b - pi/2) Ry(g) Rz(d + pi/2).
    const EulerAngles e = euler_decompose(u);
    const double b = e.beta - std::numbers::pi / 2;
    const double d = e.delta + std::numbers::pi / 2;
    const Matrix a_part = rotation_z(b) * rotation_y(e.gamma / 2);
    const Matrix b_part = rotation_y(-e.gamma / 2) * rotation_z(-(d + b) / 2);
    const Matrix c_part = rotation_z((d - b) / 2);

    c.append(logical_1q(reg, target, c_part));
    c.add(cswap(), {control, t.a, t.b});
    c.append(logical_1q(reg, target, b_part));
    c.add(cswap(), {control, t.a, t.b});
    c.append(logical_1q(reg, target, a_part));
    controlled_phase_on(t.a, e.alpha);
    controlled_phase_on(t.b, e.alpha);
    return c;
}

struct ControlledConstruction {
    Circuit circuit;
    CompileReport report;
    std::size_t cascade_cswaps = 0;  ///< AND-cascade compute plus uncompute gates
};

namespace detail {

/// AND-cascade of Fredkin gates: CSWAP(x; y, anc) with anc = |0> leaves
/// anc = x AND y. Operands are combined pairwise in queue order, giving the
/// balanced tree for t = 4. Returns the node holding the AND of all controls.
inline std::size_t emit_and_cascade(std::vector<std::size_t> operands, AncillaAllocator& pool, Circuit& out) {
    std::deque<std::size_t> queue(operands.begin(), operands.end());
    while (queue.size() > 1) {
        const std::size_t x = queue.front();
        queue.pop_front();
        const std::size_t y = queue.front();
        queue.pop_front();
        const std::size_t anc = pool.acquire();
        out.add(cswap(), {x, y, anc});
        queue.push_back(anc);
    }
    return queue.front();
}

inline Circuit multi_controlled_with(const LogicalRegister& reg, std::span<const std::size_t> controls,
                                     std::size_t target, const Matrix& u, AncillaAllocator& pool,
                                     std::size_t* cascade = nullptr) {
    std::vector<std::size_t> all(controls.begin(), controls.end());
    all.push_back(target);
    require_distinct(all);
    reg.pair(target);

    std::vector<std::size_t> operands;
    for (std::size_t q : controls) operands.push_back(reg.pair(q).a);

    Circuit compute = native_on(reg);
    const std::size_t flag = emit_and_cascade(std::move(operands), pool, compute);

    Circuit out = compute;
    out.append(controlled_u_block(reg, flag, target, u));
    for (auto it = compute.gates.rbegin(); it != compute.gates.rend(); ++it) out.gates.push_back(*it);
    if (cascade) *cascade = 2 * compute.size();
    return out;
}

}  // namespace detail

/// Encoded Toffoli from three C(SWAP)s and one ancilla node in |0>:
/// CSWAP(c1; c2.a, anc), CSWAP(anc; target pair), CSWAP(c1; c2.a, anc).
inline Circuit toffoli_construction(const LogicalRegister& reg, std::size_t c1, std::size_t c2, std::size_t target) {
    AncillaAllocator pool(reg.ancilla_nodes());
    const std::size_t controls[] = {c1, c2};
    return detail::multi_controlled_with(reg, controls, target, Matrix{{0, 1}, {1, 0}}, pool);
}

/// C^t(U) for t >= 2 using t-1 ancilla nodes of `reg`.
inline ControlledConstruction multi_controlled_u(const LogicalRegister& reg, std::span<const std::size_t> controls,
                                                 std::size_t target, const Matrix& u) {
    if (controls.size() < 2) throw Error(Errc::InvalidArgument, "multi_controlled_u needs at least two controls");
    if (u.rows() != 2 || u.cols() != 2) throw Error(Errc::DimensionMismatch, "U must be 2x2");
    AncillaAllocator pool(reg.ancilla_nodes());
    ControlledConstruction result;
    result.circuit = detail::multi_controlled_with(reg, controls, target, u, pool, &result.cascade_cswaps);
    result.report = CompileReport::of(result.circuit, pool.peak());
    return result;
}

struct EquivalenceResult {
    bool equivalent = false;
    double phase = 0.0;
    double max_deviation = 0.0;
    double max_leakage = 0.0;
};

struct LowerOptions {
    std::optional<std::size_t> ancilla_pool;  ///< default: the most any single gate needs
    bool verify = false;
    double verify_tol = 1e-8;
};

struct LowerResult {
    Circuit native;
    CompileReport report;
    LogicalRegister reg;
    std::optional<EquivalenceResult> verification;
    bool verification_skipped = false;
    /// The code-space action of `native` is e^{i global_phase} times the standard unitary.
    double global_phase = 0.0;
};

inline constexpr std::size_t kMaxVerifiedLogical = 4;

/// Compares the code-space action of a lowered circuit with a standard circuit.
inline EquivalenceResult verify_lowering(const Circuit& standard, const Circuit& native, const LogicalRegister& reg,
                                         double tol = 1e-8) {
    if (reg.num_logical() > kMaxVerifiedLogical) {
        throw Error(Errc::TooManyQubitsForVerification, "oracle check limited to 4 logical qubits");
    }
    const Matrix expected = circuit_unitary(standard, reg.num_logical());
    const CodeSpaceAction action = code_space_action(native, reg);
    const PhaseFit fit = fit_global_phase(action.block, expected);
    return EquivalenceResult{fit.max_deviation <= tol && action.max_leakage <= tol, fit.phase, fit.max_deviation,
                             action.max_leakage};
}

namespace detail {

/// Product of the code-space blocks of the two-node native gates in `c`,
/// all of which must act on one pair in (a, b) order.
inline Matrix single_pair_action(const Circuit& c) {
    Matrix m = Matrix::identity(2);
    for (const auto& g : c.gates) {
        if (g.targets.size() != 2 || (g.name != "iswap" && g.name != "phase")) continue;
        m = gate_matrix(g, Alphabet::Native).block(1, 1, 2, 2) * m;
    }
    return m;
}

inline std::size_t ancillas_needed(const Gate& g) {
    if (g.name == "toffoli") return 1;
    if (g.name == "mcu" && g.targets.size() > 2) return g.targets.size() - 2;
    return 0;
}

}  // namespace detail

inline LowerResult lower(const Circuit& standard, const LowerOptions& options = {}) {
    if (standard.alphabet != Alphabet::Standard) throw Error(Errc::InvalidArgument, "lower expects a standard circuit");
    validate(standard);

    std::size_t need = 0;
    for (const auto& g : standard.gates) need = std::max(need, detail::ancillas_needed(g));
    const std::size_t pool_size = options.ancilla_pool.value_or(need);

    LowerResult result;
    result.reg = LogicalRegister::contiguous(standard.num_wires, pool_size);
    const auto& reg = result.reg;
    AncillaAllocator pool(reg.ancilla_nodes());
    Circuit out = detail::native_on(reg);

    for (const auto& g : standard.gates) {
        const auto& q = g.targets;
        if (q.size() == 1) {
            Circuit piece = g.name == "x"    ? logical_x(reg, q[0])
                            : g.name == "rx" ? logical_rx(reg, q[0], g.params[0])
                            : g.name == "rz" ? logical_rz(reg, q[0], g.params[0])
                                             : logical_1q(reg, q[0], standard_gate_matrix(g));
            result.global_phase += fit_global_phase(detail::single_pair_action(piece), standard_gate_matrix(g)).phase;
            out.append(piece);
        } else if (g.name == "cnot") {
            out.append(logical_cnot(reg, q[0], q[1]));
        } else if (g.name == "cz") {
            out.append(logical_cz(reg, q[0], q[1]));
        } else if (g.name == "cphase") {
            out.append(logical_cz(reg, q[0], q[1], g.params[0]));
        } else if (g.name == "swap") {
            out.append(logical_cnot(reg, q[0], q[1]));
            out.append(logical_cnot(reg, q[1], q[0]));
            out.append(logical_cnot(reg, q[0], q[1]));
        } else if (g.name == "toffoli" || g.name == "mcu") {
            const Matrix u = g.name == "toffoli" ? Matrix{{0, 1}, {1, 0}}
                                                 : zxz_unitary(g.params[0], g.params[1], g.params[2], g.params[3]);
            const std::span<const std::size_t> controls(q.data(), q.size() - 1);
            const Circuit piece = controls.size() == 1
                                      ? controlled_u_block(reg, reg.pair(controls[0]).a, q.back(), u)
                                      : detail::multi_controlled_with(reg, controls, q.back(), u, pool);
            // with the controls off only the unconditional single-pair gates act
            result.global_phase += fit_global_phase(detail::single_pair_action(piece), Matrix::identity(2)).phase;
            out.append(piece);
        } else {
            throw Error(Errc::UnsupportedGate, "cannot lower '" + g.name + "'");
        }
        pool.release_all();
    }

    result.global_phase = std::remainder(result.global_phase, 2 * std::numbers::pi);
    result.native = std::move(out);
    result.report = CompileReport::of(result.native, pool.peak());
    if (options.verify) {
        if (reg.num_logical() > kMaxVerifiedLogical) {
            result.verification_skipped = true;
        } else {
            result.verification = verify_lowering(standard, result.native, reg, options.verify_tol);
        }
    }
    return result;
}

/// Gate counts of the lowered circuit next to a standard-set baseline: the
/// Toffoli costs 3 CNOTs + 4 rotations unless built from C(SWAP)s, and an
/// exchange-only encoding spends 19 serial exchange gates per CNOT.
struct CostComparison {
    std::size_t native_gates = 0;
    std::size_t native_cswaps = 0;
    std::size_t standard_gates = 0;
    std::size_t standard_cnots = 0;
    std::size_t exchange_only_serial_gates = 0;
};

inline constexpr std::size_t kExchangeOnlySerialPerCnot = 19;
inline constexpr std::size_t kToffoliBaselineGates = 7;
inline constexpr std::size_t kToffoliBaselineCnots = 3;

inline CostComparison compare_costs(const Circuit& standard) {
    const LowerResult lowered = lower(standard);
    CostComparison cmp;
    cmp.native_gates = lowered.report.native_gate_count;
    cmp.native_cswaps = lowered.report.cswap_count;
    for (const auto& g : standard.gates) {
        if (g.name == "toffoli") {
            cmp.standard_gates += kToffoliBaselineGates;
            cmp.standard_cnots += kToffoliBaselineCnots;
        } else if (g.name == "mcu" && g.targets.size() > 2) {
            const std::size_t toffolis = 2 * (g.targets.size() - 2);
            cmp.standard_gates += toffolis * kToffoliBaselineGates + 1;
            cmp.standard_cnots += toffolis * kToffoliBaselineCnots;
        } else if (g.name == "swap") {
            cmp.standard_gates += 3;
            cmp.standard_cnots += 3;
        } else {
            cmp.standard_gates += 1;
            cmp.standard_cnots += g.name == "cnot";
        }
    }
    cmp.exchange_only_serial_gates = cmp.standard_cnots * kExchangeOnlySerialPerCnot;
    return cmp;
}

enum class ClassicalOp { Not, And, Fanout };

struct FredkinResult {
    std::vector<int> outputs;  ///< NOT: {not A, A}; AND: {A and B}; FANOUT: {A, A}
    std::array<int, 3> wires{};  ///< all three output wires of the Fredkin gate
};

/// Classical logic from one Fredkin gate on wires (control, swap_a, swap_b):
/// NOT and FANOUT feed (A, 1, 0), AND feeds (A, B, 0).
inline FredkinResult fredkin_classical(ClassicalOp op, std::span<const int> inputs) {
    const std::size_t arity = op == ClassicalOp::And ? 2 : 1;
    if (inputs.size() != arity) throw Error(Errc::BadArity, "classical op arity");
    for (int b : inputs) {
        if (b != 0 && b != 1) throw Error(Errc::InvalidArgument, "classical inputs are bits");
    }
    const std::array<int, 3> in = op == ClassicalOp::And ? std::array<int, 3>{inputs[0], inputs[1], 0}
                                                         : std::array<int, 3>{inputs[0], 1, 0};
    const std::uint64_t index = (in[0] << 2) | (in[1] << 1) | in[2];
    Circuit c(Alphabet::Native, 3);
    c.add(cswap(), {0, 1, 2});
    const StateVector out = simulate(c, StateVector::basis(3, index));

    std::uint64_t result = 0;
    for (std::uint64_t i = 0; i < out.dim(); ++i) {
        if (std::abs(out[i]) > 0.5) result = i;
    }
    FredkinResult r;
    r.wires = {static_cast<int>((result >> 2) & 1U), static_cast<int>((result >> 1) & 1U),
               static_cast<int>(result & 1U)};
    switch (op) {
        case ClassicalOp::Not: r.outputs = {r.wires[1], r.wires[2]}; break;
        case ClassicalOp::And: r.outputs = {r.wires[2]}; break;
        case ClassicalOp::Fanout: r.outputs = {r.wires[0], r.wires[2]}; break;
    }
    return r;
}

}  // namespace ensq
