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
 * Dense complex linear algebra over registers of processing nodes.
 *
 * Basis-state labels follow ket notation: node 0 is the most significant bit,
 * so |01> on two nodes has node 0 in |0> and node 1 in |1> (index 1).
 * Gate matrices are indexed the same way over their own target list.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <span>
#include <vector>

#include "ensq/error.hpp"

namespace ensq {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;
inline constexpr std::size_t kMaxMatrixNodes = 12;
inline constexpr std::size_t kMaxStateNodes = 24;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    /// Row-major entries; every row must have the same length.
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) {
                throw Error(Errc::DimensionMismatch, "ragged matrix literal");
            }
            for (Complex z : row) {
                if (!is_finite(z)) throw Error(Errc::NonFinite, "matrix entry is not finite");
                data_.push_back(z);
            }
        }
    }

    static Matrix identity(std::size_t dim) {
        Matrix m(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix diagonal(std::span<const Complex> entries) {
        Matrix m(entries.size(), entries.size());
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (!is_finite(entries[i])) throw Error(Errc::NonFinite, "diagonal entry is not finite");
            m(i, i) = entries[i];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> data() const noexcept { return data_; }

    Matrix adjoint() const {
        Matrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    Matrix operator*(const Matrix& rhs) const {
        if (cols_ != rhs.rows_) throw Error(Errc::DimensionMismatch, "matrix product shape");
        Matrix out(rows_, rhs.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const Complex a = (*this)(r, k);
                if (a == Complex{}) continue;
                for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
            }
        }
        return out;
    }

    Matrix operator*(Complex s) const {
        Matrix out = *this;
        for (auto& z : out.data_) z *= s;
        return out;
    }

    friend Matrix operator*(Complex s, const Matrix& m) { return m * s; }

    /// Largest absolute entrywise difference. Shapes must agree.
    double max_abs_diff(const Matrix& other) const {
        if (rows_ != other.rows_ || cols_ != other.cols_) {
            throw Error(Errc::DimensionMismatch, "max_abs_diff shape");
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
        }
        return worst;
    }

    /// ||U^dagger U - I||_max <= tol.
    bool is_unitary(double tol = kDefaultTol) const {
        if (!is_square()) return false;
        return (adjoint() * *this).max_abs_diff(identity(rows_)) <= tol;
    }

    /// Top-left-anchored sub-block.
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(Errc::IndexOutOfRange, "block outside matrix");
        Matrix out(nr, nc);
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
        return out;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Kronecker product a (x) b; a occupies the more significant index bits.
inline Matrix tensor(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex s = a(ar, ac);
            if (s == Complex{}) continue;
            for (std::size_t br = 0; br < b.rows(); ++br)
                for (std::size_t bc = 0; bc < b.cols(); ++bc)
                    out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
        }
    return out;
}

// Single-qubit rotations about the Bloch axes.
inline Matrix rotation_x(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {{c, Complex(0, -s)}, {Complex(0, -s), c}};
}

inline Matrix rotation_z(double theta) {
    return {{std::polar(1.0, -theta / 2), 0.0}, {0.0, std::polar(1.0, theta / 2)}};
}

inline Matrix rotation_y(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {{c, -s}, {s, c}};
}

struct PhaseFit {
    double phase = 0.0;          ///< phi such that a ~ e^{i phi} b
    double max_deviation = 0.0;  ///< ||a - e^{i phi} b||_max
};

/// Fits the global phase from the largest-magnitude entry of `b`.
inline PhaseFit fit_global_phase(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(Errc::DimensionMismatch, "global-phase comparison shape");
    }
    std::size_t pivot = 0;
    double best = -1.0;
    const auto bd = b.data();
    for (std::size_t i = 0; i < bd.size(); ++i) {
        if (std::abs(bd[i]) > best) {
            best = std::abs(bd[i]);
            pivot = i;
        }
    }
    PhaseFit fit;
    if (bd.empty()) return fit;
    const Complex ap = a.data()[pivot];
    if (std::abs(ap) > 0.0 && best > 0.0) fit.phase = std::arg(ap / bd[pivot]);
    fit.max_deviation = a.max_abs_diff(b * std::polar(1.0, fit.phase));
    return fit;
}

inline bool equal_up_to_global_phase(const Matrix& a, const Matrix& b, double tol = kDefaultTol) {
    return fit_global_phase(a, b).max_deviation <= tol;
}

class StateVector {
public:
    StateVector() = default;

    /// Computational basis state |index> on `num_nodes` nodes.
    static StateVector basis(std::size_t num_nodes, std::uint64_t index) {
        check_nodes(num_nodes);
        StateVector s;
        s.num_nodes_ = num_nodes;
        s.amps_.assign(std::size_t{1} << num_nodes, Complex{});
        if (index >= s.amps_.size()) throw Error(Errc::IndexOutOfRange, "basis index");
        s.amps_[index] = 1.0;
        return s;
    }

    /// Takes ownership of raw amplitudes; they must have power-of-two length and unit norm.
    static StateVector from_amplitudes(std::vector<Complex> amps, double tol = kDefaultTol) {
        std::size_t n = 0;
        while ((std::size_t{1} << n) < amps.size()) ++n;
        if (amps.empty() || (std::size_t{1} << n) != amps.size()) {
            throw Error(Errc::DimensionMismatch, "amplitude count is not a power of two");
        }
        check_nodes(n);
        double norm = 0.0;
        for (Complex z : amps) {
            if (!is_finite(z)) throw Error(Errc::NonFinite, "amplitude is not finite");
            norm += std::norm(z);
        }
        if (std::abs(norm - 1.0) > tol) throw Error(Errc::InvalidArgument, "state is not normalised");
        StateVector s;
        s.num_nodes_ = n;
        s.amps_ = std::move(amps);
        return s;
    }

    std::size_t num_nodes() const noexcept { return num_nodes_; }
    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    Complex operator[](std::size_t i) const { return amps_[i]; }

    double norm_squared() const {
        double total = 0.0;
        for (Complex z : amps_) total += std::norm(z);
        return total;
    }

    /// Bit mask of `node` inside a basis index.
    std::uint64_t node_mask(std::size_t node) const {
        return std::uint64_t{1} << (num_nodes_ - 1 - node);
    }

    StateVector tensor(const StateVector& rhs) const {
        StateVector s;
        s.num_nodes_ = num_nodes_ + rhs.num_nodes_;
        check_nodes(s.num_nodes_);
        s.amps_.resize(amps_.size() * rhs.amps_.size());
        for (std::size_t i = 0; i < amps_.size(); ++i)
            for (std::size_t j = 0; j < rhs.amps_.size(); ++j) s.amps_[i * rhs.amps_.size() + j] = amps_[i] * rhs.amps_[j];
        return s;
    }

    /// Applies `gate` to `targets` in place (targets[0] is the gate's most significant bit).
    void apply(const Matrix& gate, std::span<const std::size_t> targets) {
        const std::size_t k = targets.size();
        if (!gate.is_square() || gate.rows() != (std::size_t{1} << k)) {
            throw Error(Errc::DimensionMismatch, "gate dimension does not match target count");
        }
        std::uint64_t target_mask = 0;
        std::vector<std::uint64_t> offsets(gate.rows(), 0);
        for (std::size_t j = 0; j < k; ++j) {
            if (targets[j] >= num_nodes_) throw Error(Errc::IndexOutOfRange, "target node out of range");
            const std::uint64_t bit = node_mask(targets[j]);
            if (target_mask & bit) throw Error(Errc::DuplicateTarget, "target node repeated");
            target_mask |= bit;
            for (std::size_t local = 0; local < gate.rows(); ++local) {
                if (local & (std::size_t{1} << (k - 1 - j))) offsets[local] |= bit;
            }
        }
        std::vector<Complex> in(gate.rows()), out(gate.rows());
        for (std::uint64_t base = 0; base < amps_.size(); ++base) {
            if (base & target_mask) continue;
            for (std::size_t l = 0; l < in.size(); ++l) in[l] = amps_[base | offsets[l]];
            for (std::size_t r = 0; r < out.size(); ++r) {
                Complex acc{};
                for (std::size_t c = 0; c < in.size(); ++c) acc += gate(r, c) * in[c];
                out[r] = acc;
            }
            for (std::size_t l = 0; l < out.size(); ++l) amps_[base | offsets[l]] = out[l];
        }
    }

    /// <this|other>
    Complex inner(const StateVector& other) const {
        if (dim() != other.dim()) throw Error(Errc::DimensionMismatch, "inner product dimension");
        Complex acc{};
        for (std::size_t i = 0; i < amps_.size(); ++i) acc += std::conj(amps_[i]) * other.amps_[i];
        return acc;
    }

    double max_abs_diff(const StateVector& other) const {
        if (dim() != other.dim()) throw Error(Errc::DimensionMismatch, "state dimension");
        double worst = 0.0;
        for (std::size_t i = 0; i < amps_.size(); ++i) worst = std::max(worst, std::abs(amps_[i] - other.amps_[i]));
        return worst;
    }

private:
    static void check_nodes(std::size_t n) {
        if (n > kMaxStateNodes) throw Error(Errc::TooManyNodes, "statevector limited to 24 nodes");
    }

    std::size_t num_nodes_ = 0;
    std::vector<Complex> amps_;
};

/// Pure form of StateVector::apply; the gate must be unitary.
inline StateVector apply_gate(StateVector state, const Matrix& gate, std::span<const std::size_t> targets) {
    if (gate.is_square() && gate.rows() == (std::size_t{1} << targets.size()) && !gate.is_unitary()) {
        throw Error(Errc::NotUnitary, "apply_gate requires a unitary");
    }
    state.apply(gate, targets);
    return state;
}

inline StateVector apply_gate(StateVector state, const Matrix& gate, std::initializer_list<std::size_t> targets) {
    return apply_gate(std::move(state), gate, std::span<const std::size_t>(targets.begin(), targets.size()));
}

/// Matrix of `gate` acting on `targets` of an n-node register, identity elsewhere.
inline Matrix embed(const Matrix& gate, std::span<const std::size_t> targets, std::size_t num_nodes) {
    if (num_nodes > kMaxMatrixNodes) throw Error(Errc::TooManyNodes, "dense matrices limited to 12 nodes");
    const std::size_t dim = std::size_t{1} << num_nodes;
    Matrix out(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        StateVector s = StateVector::basis(num_nodes, col);
        s.apply(gate, targets);
        for (std::size_t row = 0; row < dim; ++row) out(row, col) = s[row];
    }
    return out;
}

}  // namespace ensq
