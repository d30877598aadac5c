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
 * Gates provided directly by the multi-ensemble cavity hardware.
 *
 *   iswap(theta)      partial exchange; {|01>,|10>} block [[c, i s], [i s, c]]
 *   phase(theta, phi) diag(1, e^{i(phi-theta)/2}, e^{i(phi+theta)/2}, e^{i phi})
 *   cswap             Fredkin gate, node order (control, target_a, target_b)
 *   cs(phi) / cz      controlled phase diag(1, 1, 1, e^{-i phi}); cz is phi = pi
 */
#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ensq/linalg.hpp"

namespace ensq {

enum class NativeKind { IswapTheta, PhaseThetaPhi, Cswap, CsPhi, Cz };

class NativeGate {
public:
    NativeKind kind() const noexcept { return kind_; }
    const std::vector<double>& params() const noexcept { return params_; }
    std::size_t arity() const noexcept { return kind_ == NativeKind::Cswap ? 3 : 2; }

    /// Circuit-JSON name.
    std::string_view name() const noexcept {
        switch (kind_) {
            case NativeKind::IswapTheta: return "iswap";
            case NativeKind::PhaseThetaPhi: return "phase";
            case NativeKind::Cswap: return "cswap";
            case NativeKind::CsPhi: return "cs";
            case NativeKind::Cz: return "cz";
        }
        return "";
    }

    Matrix matrix() const {
        using namespace std::complex_literals;
        switch (kind_) {
            case NativeKind::IswapTheta: {
                const double c = std::cos(params_[0] / 2), s = std::sin(params_[0] / 2);
                return {{1, 0, 0, 0}, {0, c, 1i * s, 0}, {0, 1i * s, c, 0}, {0, 0, 0, 1}};
            }
            case NativeKind::PhaseThetaPhi: {
                const double theta = params_[0], phi = params_[1];
                const Complex d[4] = {1.0, std::polar(1.0, -theta / 2 + phi / 2), std::polar(1.0, theta / 2 + phi / 2),
                                      std::polar(1.0, phi)};
                return Matrix::diagonal(d);
            }
            case NativeKind::Cswap: {
                Matrix m = Matrix::identity(8);
                m(5, 5) = m(6, 6) = 0.0;
                m(5, 6) = m(6, 5) = 1.0;
                return m;
            }
            case NativeKind::CsPhi:
            case NativeKind::Cz: {
                const double phi = kind_ == NativeKind::Cz ? std::numbers::pi : params_[0];
                const Complex d[4] = {1.0, 1.0, 1.0, kind_ == NativeKind::Cz ? Complex(-1.0) : std::polar(1.0, -phi)};
                return Matrix::diagonal(d);
            }
        }
        throw Error(Errc::UnsupportedGate, "unknown native kind");
    }

    bool operator==(const NativeGate&) const = default;

    friend NativeGate iswap_theta(double theta);
    friend NativeGate phase_theta_phi(double theta, double phi);
    friend NativeGate cswap();
    friend NativeGate controlled_phase(double phi);
    friend std::optional<NativeGate> native_from_name(std::string_view name, const std::vector<double>& params);

private:
    NativeGate(NativeKind kind, std::vector<double> params) : kind_(kind), params_(std::move(params)) {
        for (double p : params_) {
            if (!std::isfinite(p)) throw Error(Errc::NonFinite, "gate angle is not finite");
        }
    }

    NativeKind kind_;
    std::vector<double> params_;
};

inline NativeGate iswap_theta(double theta) {
    if (!std::isfinite(theta)) throw Error(Errc::NonFinite, "iswap angle is not finite");
    // The matrix has period 4*pi in theta.
    return NativeGate(NativeKind::IswapTheta, {std::remainder(theta, 4 * std::numbers::pi)});
}

inline NativeGate phase_theta_phi(double theta, double phi) {
    return NativeGate(NativeKind::PhaseThetaPhi, {theta, phi});
}

inline NativeGate cswap() { return NativeGate(NativeKind::Cswap, {}); }

/// phi == pi yields the dedicated Cz kind.
inline NativeGate controlled_phase(double phi) {
    if (phi == std::numbers::pi) return NativeGate(NativeKind::Cz, {});
    return NativeGate(NativeKind::CsPhi, {phi});
}

/// Reconstructs a native gate from its circuit-JSON name, or nullopt for
/// names outside the native alphabet. Wrong parameter counts raise BadArity.
inline std::optional<NativeGate> native_from_name(std::string_view name, const std::vector<double>& params) {
    auto need = [&](std::size_t n) {
        if (params.size() != n) {
            throw Error(Errc::BadArity, std::string(name) + " expects " + std::to_string(n) + " parameter(s)");
        }
    };
    if (name == "iswap") {
        need(1);
        return NativeGate(NativeKind::IswapTheta, params);
    }
    if (name == "phase") {
        need(2);
        return NativeGate(NativeKind::PhaseThetaPhi, params);
    }
    if (name == "cswap") {
        need(0);
        return NativeGate(NativeKind::Cswap, {});
    }
    if (name == "cs") {
        need(1);
        return NativeGate(NativeKind::CsPhi, params);
    }
    if (name == "cz") {
        need(0);
        return NativeGate(NativeKind::Cz, {});
    }
    return std::nullopt;
}

inline Matrix matrix(const NativeGate& g) { return g.matrix(); }

}  // namespace ensq
