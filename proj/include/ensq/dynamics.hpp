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
 * Photon-controlled exchange between two atomic ensembles in a cavity.
 *
 * Two nodes of N1 and N2 atoms share one excitation: psi2 = |1>|0>,
 * psi3 = |0>|1>. With n photons in the cavity mode the amplitudes obey
 *
 *   dc2/dt = i E2(n) c2 - i k c3,     dc3/dt = i E3(n) c3 - i k c2,
 *
 * with k = sqrt(N1 N2) Omega_s and (hbar = 1)
 *
 *   Ebar(n) = (N1 (w1 + 2n Omega1) + N2 (w2 + 2n Omega2)) / 2
 *   E2(n)   = Ebar(n) - (w1 + 2n Omega1) - N1 Omega1
 *   E3(n)   = Ebar(n) - (w2 + 2n Omega2) - N2 Omega2.
 *
 * Writing D = (E2 - E3)/2, the solution rotates at S(n) = sqrt(D^2 + k^2)
 * around the mean phase rate Delta(n) = (E2 + E3)/2. Under the
 * equal-resonance condition w1 + N1 Omega1 = w2 + N2 Omega2 this reduces to
 * D = n (Omega2 - Omega1) and S(n) = sqrt(n^2 (Omega1 - Omega2)^2 + N1 N2 Omega_s^2).
 *
 * The vacuum sector swaps psi2 <-> psi3 at S(0) t = pi/2; a photon detunes
 * the exchange, so the gate realised is a swap controlled by photon absence.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <future>
#include <numbers>
#include <optional>
#include <tuple>
#include <vector>

#include "ensq/error.hpp"
#include "ensq/linalg.hpp"

namespace ensq {

struct Couplings {
    double g1 = 0.0;
    double g2 = 0.0;
    double delta1 = 1.0;
    double delta2 = 1.0;
};

struct DerivedFrequencies {
    double omega1 = 0.0;
    double omega2 = 0.0;
    double omega_s = 0.0;
};

/// Photon-induced shifts Omega1, Omega2 and the inter-node exchange Omega_s.
inline DerivedFrequencies from_couplings(const Couplings& c) {
    if (c.delta1 == 0.0 || c.delta2 == 0.0) throw Error(Errc::ZeroDetuning, "detunings must be nonzero");
    return DerivedFrequencies{
        c.g1 * c.g1 / c.delta1,
        c.g2 * c.g2 / c.delta2,
        c.g1 * c.g2 / 2 * (1 / c.delta1 + 1 / c.delta2),
    };
}

struct EnsembleParams {
    int n1 = 1;
    int n2 = 1;
    double omega1 = 0.0;
    double omega2 = 0.0;
    double omega_s = 0.0;
    double node_freq1 = 0.0;
    double node_freq2 = 0.0;
    int photon_n = 0;

    /// Fills node_freq2 so that the two nodes are resonant.
    static EnsembleParams resonant(int n1, int n2, double omega1, double omega2, double omega_s, double node_freq1,
                                   int photon_n = 0) {
        EnsembleParams p{n1, n2, omega1, omega2, omega_s, node_freq1, 0.0, photon_n};
        p.node_freq2 = node_freq1 + n1 * omega1 - n2 * omega2;
        return p;
    }

    static EnsembleParams from_couplings(const Couplings& c, int n1, int n2, double node_freq1, double node_freq2,
                                         int photon_n = 0) {
        const auto f = ensq::from_couplings(c);
        return EnsembleParams{n1, n2, f.omega1, f.omega2, f.omega_s, node_freq1, node_freq2, photon_n};
    }

    void validate() const {
        if (n1 < 1 || n2 < 1) throw Error(Errc::InvalidArgument, "atom counts must be >= 1");
        if (photon_n < 0) throw Error(Errc::InvalidArgument, "photon number must be >= 0");
        for (double v : {omega1, omega2, omega_s, node_freq1, node_freq2}) {
            if (!std::isfinite(v)) throw Error(Errc::NonFinite, "ensemble parameter is not finite");
        }
    }

    EnsembleParams with_photons(int n) const {
        EnsembleParams p = *this;
        p.photon_n = n;
        return p;
    }

    /// Relabels node 1 <-> node 2.
    EnsembleParams swapped_nodes() const {
        return EnsembleParams{n2, n1, omega2, omega1, omega_s, node_freq2, node_freq1, photon_n};
    }

    /// (w1 + N1 Omega1) - (w2 + N2 Omega2)
    double resonance_mismatch() const { return (node_freq1 + n1 * omega1) - (node_freq2 + n2 * omega2); }

    bool operator==(const EnsembleParams&) const = default;
};

/// Diagonal energies and coupling of the two-amplitude system, general route.
struct SectorEnergies {
    double e2 = 0.0;
    double e3 = 0.0;
    double coupling = 0.0;  ///< sqrt(N1 N2) Omega_s

    double mean() const { return (e2 + e3) / 2; }
    double half_split() const { return (e2 - e3) / 2; }
    double rabi() const { return std::hypot(half_split(), coupling); }
};

inline SectorEnergies sector_energies(const EnsembleParams& p) {
    p.validate();
    const double n = p.photon_n;
    const double w1 = p.node_freq1 + 2 * n * p.omega1;
    const double w2 = p.node_freq2 + 2 * n * p.omega2;
    const double mean = (p.n1 * w1 + p.n2 * w2) / 2;
    return SectorEnergies{mean - (w1 + p.n1 * p.omega1), mean - (w2 + p.n2 * p.omega2),
                          std::sqrt(static_cast<double>(p.n1) * p.n2) * p.omega_s};
}

namespace detail {

inline void require_resonance(const EnsembleParams& p) {
    const double scale = std::max({1.0, std::abs(p.node_freq1) + p.n1 * std::abs(p.omega1),
                                   std::abs(p.node_freq2) + p.n2 * std::abs(p.omega2)});
    if (std::abs(p.resonance_mismatch()) > 1e-9 * scale) {
        throw Error(Errc::ResonanceMismatch, "nodes are not resonant: w1 + N1 Omega1 != w2 + N2 Omega2");
    }
}

}  // namespace detail

/// Effective Rabi frequency S(n) on resonant nodes.
inline double s_of_n(const EnsembleParams& p) {
    p.validate();
    detail::require_resonance(p);
    const double n = p.photon_n;
    const double dw = p.omega1 - p.omega2;
    return std::sqrt(n * n * dw * dw + static_cast<double>(p.n1) * p.n2 * p.omega_s * p.omega_s);
}

/// S(n) from the full diagonal energies; no resonance requirement.
inline double s_of_n_general(const EnsembleParams& p) { return sector_energies(p).rabi(); }

struct AmplitudeSolution {
    double big_delta = 0.0;  ///< mean phase rate Delta(n)
    double big_s = 0.0;      ///< Rabi frequency S(n)
    double a1 = 1.0;
    double a2 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;

    /// c2(t) = e^{i Delta t} (A1 e^{iSt} + A2 e^{-iSt})
    Complex c2(double t) const {
        return std::polar(1.0, big_delta * t) * (a1 * std::polar(1.0, big_s * t) + a2 * std::polar(1.0, -big_s * t));
    }

    /// c3(t) = e^{i Delta t} (B1 e^{iSt} + B2 e^{-iSt})
    Complex c3(double t) const {
        return std::polar(1.0, big_delta * t) * (b1 * std::polar(1.0, big_s * t) + b2 * std::polar(1.0, -big_s * t));
    }
};

namespace detail {

inline AmplitudeSolution solution_from(double delta, double split, double coupling, double s) {
    AmplitudeSolution sol;
    sol.big_delta = delta;
    sol.big_s = s;
    if (s == 0.0) return sol;  // fully decoupled: c2 stays 1
    sol.a1 = (1 + split / s) / 2;
    sol.a2 = (1 - split / s) / 2;
    sol.b1 = -coupling / (2 * s);
    sol.b2 = -sol.b1;
    return sol;
}

}  // namespace detail

/// Closed-form amplitudes for c2(0) = 1, c3(0) = 0 on resonant nodes:
/// A1,2 = (1 +- n (Omega2 - Omega1) / S(n)) / 2, B1 = -B2 = -S(0) / (2 S(n)).
inline AmplitudeSolution closed_form(const EnsembleParams& p) {
    const double s = s_of_n(p);
    const SectorEnergies e = sector_energies(p);
    const double split = p.photon_n * (p.omega2 - p.omega1);
    return detail::solution_from(e.mean(), split, e.coupling, s);
}

/// Same solution built from the general diagonal energies.
inline AmplitudeSolution closed_form_general(const EnsembleParams& p) {
    const SectorEnergies e = sector_energies(p);
    return detail::solution_from(e.mean(), e.half_split(), e.coupling, e.rabi());
}

struct Trajectory {
    std::vector<double> t;
    std::vector<Complex> c2;
    std::vector<Complex> c3;
};

inline constexpr std::size_t kStepsPerPeriod = 1000;

/// Fewest steps the oracle accepts for [0, t_end]: 1000 per period of S(n).
inline std::size_t minimum_steps(const EnsembleParams& p, double t_end) {
    const double s = s_of_n_general(p);
    const double periods = t_end * s / (2 * std::numbers::pi);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(kStepsPerPeriod * periods - 1e-9)));
}

/// 1000 steps per period of the fastest rate in the system, which also
/// resolves the e^{i Delta t} carrier when it dominates S(n).
inline std::size_t recommended_steps(const EnsembleParams& p, double t_end) {
    const SectorEnergies e = sector_energies(p);
    const double fastest = std::max({e.rabi(), std::abs(e.e2), std::abs(e.e3)});
    const double periods = t_end * fastest / (2 * std::numbers::pi);
    return std::max(minimum_steps(p, t_end), static_cast<std::size_t>(std::ceil(kStepsPerPeriod * periods)));
}

/// Fixed-step RK4 integration of the coupled amplitude equations from
/// c2 = 1, c3 = 0. Returns steps + 1 samples including both endpoints.
inline Trajectory ode_oracle(const EnsembleParams& p, double t_end, std::size_t steps) {
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error(Errc::InvalidArgument, "t_end must be >= 0");
    if (steps < minimum_steps(p, t_end)) {
        throw Error(Errc::StepTooCoarse, "need at least " + std::to_string(minimum_steps(p, t_end)) + " steps");
    }
    const SectorEnergies e = sector_energies(p);
    const Complex i(0.0, 1.0);
    auto rhs = [&](Complex c2, Complex c3) {
        return std::pair<Complex, Complex>{i * e.e2 * c2 - i * e.coupling * c3, i * e.e3 * c3 - i * e.coupling * c2};
    };

    Trajectory tr;
    tr.t.reserve(steps + 1);
    tr.c2.reserve(steps + 1);
    tr.c3.reserve(steps + 1);
    Complex c2 = 1.0, c3 = 0.0;
    const double h = t_end / static_cast<double>(steps);
    tr.t.push_back(0.0);
    tr.c2.push_back(c2);
    tr.c3.push_back(c3);
    for (std::size_t k = 0; k < steps; ++k) {
        const auto [k1a, k1b] = rhs(c2, c3);
        const auto [k2a, k2b] = rhs(c2 + h / 2 * k1a, c3 + h / 2 * k1b);
        const auto [k3a, k3b] = rhs(c2 + h / 2 * k2a, c3 + h / 2 * k2b);
        const auto [k4a, k4b] = rhs(c2 + h * k3a, c3 + h * k3b);
        c2 += h / 6 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        c3 += h / 6 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        tr.t.push_back(h * static_cast<double>(k + 1));
        tr.c2.push_back(c2);
        tr.c3.push_back(c3);
    }
    return tr;
}

/// Timing of the swap gate from dynamical elimination of the photon sector:
/// S(0) T = pi/2 + n pi (full swap without a photon) and S(1) T = pi (1 + m)
/// (no swap with one photon), so S(1) / S(0) = (1 + m) / (1/2 + n).
struct CswapTiming {
    int m = 0;
    int n = 0;
    double time = 0.0;         ///< T
    double rabi_ratio = 0.0;   ///< S(1) / S(0)
    std::optional<double> detuning_ratio;  ///< |Omega1 - Omega2| / Omega_s; empty when S(1) < S(0) would be needed

    bool feasible() const noexcept { return detuning_ratio.has_value(); }
};

inline CswapTiming solve_cswap_timing(int m, int n, int n1, int n2, double omega_s) {
    if (m < 0 || n < 0) throw Error(Errc::InvalidArgument, "timing indices must be >= 0");
    if (n1 < 1 || n2 < 1) throw Error(Errc::InvalidArgument, "atom counts must be >= 1");
    if (!(omega_s != 0.0) || !std::isfinite(omega_s)) throw Error(Errc::InvalidArgument, "omega_s must be nonzero");
    const double pi = std::numbers::pi;
    const double root_nn = std::sqrt(static_cast<double>(n1) * n2);
    const double s0 = root_nn * std::abs(omega_s);

    CswapTiming t;
    t.m = m;
    t.n = n;
    t.time = (pi / 2 + n * pi) / s0;
    t.rabi_ratio = (1.0 + m) / (0.5 + n);
    // S(1)^2 = (Omega1 - Omega2)^2 + S(0)^2
    const double excess = t.rabi_ratio * t.rabi_ratio - 1.0;
    if (excess > 0.0) t.detuning_ratio = root_nn * std::sqrt(excess);
    return t;
}

/// Base parameters retuned to the timing: Omega1 = Omega2 + ratio |Omega_s|,
/// node_freq2 adjusted to keep resonance.
inline EnsembleParams apply_timing(const EnsembleParams& base, const CswapTiming& timing) {
    if (!timing.feasible()) {
        throw Error(Errc::InfeasibleTiming, "m=" + std::to_string(timing.m) + ", n=" + std::to_string(timing.n) +
                                                " needs S(1) < S(0)");
    }
    return EnsembleParams::resonant(base.n1, base.n2, base.omega2 + *timing.detuning_ratio * std::abs(base.omega_s),
                                    base.omega2, base.omega_s, base.node_freq1, base.photon_n);
}

/// Omega1 / Omega2 (> 1) solving |Omega1 - Omega2| = c N sqrt(Omega1 Omega2),
/// the equal-atom-number, equal-detuning case where Omega_s^2 = Omega1 Omega2.
inline double equal_detuning_frequency_ratio(int n_atoms, double c) {
    if (n_atoms < 1 || !(c >= 0.0)) throw Error(Errc::InvalidArgument, "need N >= 1 and c >= 0");
    const double k = c * n_atoms;
    const double x = (k + std::sqrt(k * k + 4)) / 2;  // x = sqrt(Omega1 / Omega2), x^2 - k x - 1 = 0
    return x * x;
}

struct BlockadeAnalysis {
    double ratio = 0.0;         ///< r = |Omega2 - Omega1| / (sqrt(N1 N2) Omega_s)
    double max_leakage = 0.0;   ///< S(0) / S(1) = 1 / sqrt(1 + r^2)
    double t_cswap = 0.0;       ///< pi / (2 Omega_s sqrt(N1 N2))
    bool blockade = false;      ///< r >= threshold
};

inline BlockadeAnalysis blockade_analysis(const EnsembleParams& p, double threshold = 10.0) {
    p.validate();
    const double s0 = std::sqrt(static_cast<double>(p.n1) * p.n2) * std::abs(p.omega_s);
    if (s0 == 0.0) throw Error(Errc::InvalidArgument, "omega_s must be nonzero");
    BlockadeAnalysis b;
    b.ratio = std::abs(p.omega2 - p.omega1) / s0;
    const double s1 = std::hypot(p.omega1 - p.omega2, s0);
    b.max_leakage = s0 / s1;
    b.t_cswap = std::numbers::pi / (2 * s0);
    b.blockade = b.ratio >= threshold;
    return b;
}

/// Base parameters retuned to blockade ratio r, keeping resonance.
inline EnsembleParams apply_blockade(const EnsembleParams& base, double r) {
    if (!(r >= 0.0)) throw Error(Errc::InvalidArgument, "blockade ratio must be >= 0");
    const double s0 = std::sqrt(static_cast<double>(base.n1) * base.n2) * std::abs(base.omega_s);
    return EnsembleParams::resonant(base.n1, base.n2, base.omega2 + r * s0, base.omega2, base.omega_s, base.node_freq1,
                                    base.photon_n);
}

/// Propagator on (psi2, psi3) for `photon_n` photons over time t, times e^{-i compensation}.
inline Matrix sector_evolution(const EnsembleParams& p, int photon_n, double t, double compensation = 0.0) {
    const SectorEnergies e = sector_energies(p.with_photons(photon_n));
    const double s = e.rabi();
    const double c = std::cos(s * t);
    // sin(St)/S, continuous at S = 0
    const double sinc = s == 0.0 ? t : std::sin(s * t) / s;
    const Complex i(0.0, 1.0);
    const Complex phase = std::polar(1.0, e.mean() * t - compensation);
    return phase * Matrix{{c + i * e.half_split() * sinc, -i * e.coupling * sinc},
                          {-i * e.coupling * sinc, c - i * e.half_split() * sinc}};
}

/// How well evolution for time T realises the photon-controlled swap: the
/// vacuum sector should exchange psi2 <-> psi3, the one-photon sector should
/// leave both alone. Mean of |<ideal|actual>| over the four (photon, atomic)
/// basis inputs after per-sector phase compensation e^{-i phi_n}.
inline double gate_fidelity(const EnsembleParams& p, double T, std::array<double, 2> phase_compensation) {
    if (!(T >= 0.0) || !std::isfinite(T)) throw Error(Errc::InvalidArgument, "gate time must be >= 0");
    const Matrix vacuum = sector_evolution(p, 0, T, phase_compensation[0]);
    const Matrix photon = sector_evolution(p, 1, T, phase_compensation[1]);
    // ideal vacuum: psi2 -> psi3, psi3 -> psi2; ideal photon: identity
    const double total = std::abs(vacuum(1, 0)) + std::abs(vacuum(0, 1)) + std::abs(photon(0, 0)) +
                         std::abs(photon(1, 1));
    return total / 4;
}

/// Compensation e^{-i Delta(n) T} for both sectors.
inline std::array<double, 2> mean_phase_compensation(const EnsembleParams& p, double T) {
    return {sector_energies(p.with_photons(0)).mean() * T, sector_energies(p.with_photons(1)).mean() * T};
}

/// One line of the sweep CSV.
struct DynamicsRow {
    int n1 = 1;
    int n2 = 1;
    double omega1 = 0.0;
    double omega2 = 0.0;
    double omega_s = 0.0;
    int photon_n = 0;
    double t = 0.0;
    double abs_c2 = 0.0;
    double abs_c3 = 0.0;
    double fidelity = 0.0;

    auto key() const { return std::tie(n1, n2, omega1, omega2, omega_s, photon_n, t); }
};

/// Rows for photon numbers 0 and 1 at every sample time.
inline std::vector<DynamicsRow> trajectory_rows(const EnsembleParams& p, const std::vector<double>& times) {
    std::vector<DynamicsRow> rows;
    rows.reserve(2 * times.size());
    for (int n : {0, 1}) {
        const AmplitudeSolution sol = closed_form_general(p.with_photons(n));
        for (double t : times) {
            rows.push_back(DynamicsRow{p.n1, p.n2, p.omega1, p.omega2, p.omega_s, n, t, std::abs(sol.c2(t)),
                                       std::abs(sol.c3(t)), gate_fidelity(p, t, mean_phase_compensation(p, t))});
        }
    }
    return rows;
}

/// `count + 1` evenly spaced times on [0, t_end].
inline std::vector<double> uniform_times(double t_end, std::size_t count) {
    std::vector<double> times;
    times.reserve(count + 1);
    for (std::size_t k = 0; k <= count; ++k) {
        times.push_back(k == count ? t_end : t_end * static_cast<double>(k) / static_cast<double>(count));
    }
    return times;
}

/// Evaluates every point concurrently; output is sorted by parameter tuple and time.
template <class Point, class Fn>
std::vector<DynamicsRow> sweep(const std::vector<Point>& points, Fn&& rows_for) {
    std::vector<std::future<std::vector<DynamicsRow>>> jobs;
    jobs.reserve(points.size());
    for (const auto& p : points) jobs.push_back(std::async(std::launch::async, [&rows_for, p] { return rows_for(p); }));
    std::vector<DynamicsRow> rows;
    for (auto& j : jobs) {
        auto part = j.get();
        rows.insert(rows.end(), part.begin(), part.end());
    }
    std::stable_sort(rows.begin(), rows.end(), [](const DynamicsRow& a, const DynamicsRow& b) { return a.key() < b.key(); });
    return rows;
}

}  // namespace ensq
