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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "ensq/ensq.hpp"

namespace {

using ensq::Errc;
using ensq::json;

constexpr int kExitDiffer = 1;
constexpr int kExitParse = 2;
constexpr int kExitLeaked = 3;
constexpr int kExitUnsupported = 4;
constexpr int kExitTooManyNodes = 5;
constexpr int kExitResonance = 6;
constexpr int kExitInfeasible = 7;
constexpr int kExitOther = 8;

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  1  verify: circuits differ\n"
    "  2  parse or usage error (bad JSON, bad bitstring, bad arity)\n"
    "  3  simulate: state leaked out of the code space\n"
    "  4  compile: unsupported gate or ancilla pool exhausted\n"
    "  5  verify: more than 12 nodes\n"
    "  6  dynamics: nodes are not resonant\n"
    "  7  dynamics: requested swap timing is infeasible\n"
    "  8  any other error\n";

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::ParseError:
        case Errc::BadArity:
        case Errc::LengthMismatch:
        case Errc::IndexOutOfRange:
        case Errc::DuplicateTarget:
        case Errc::NonFinite:
        case Errc::InvalidArgument:
        case Errc::SameQubit:
            return kExitParse;
        case Errc::LeakedState: return kExitLeaked;
        case Errc::UnsupportedGate:
        case Errc::NoAncillaAvailable:
            return kExitUnsupported;
        case Errc::TooManyNodes: return kExitTooManyNodes;
        case Errc::ResonanceMismatch: return kExitResonance;
        case Errc::InfeasibleTiming: return kExitInfeasible;
        default: return kExitOther;
    }
}

/// Writes through a temporary sibling and renames, so a failed run leaves no file behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ensq::Error(Errc::ParseError, "cannot write " + path.string());
        out << contents;
        if (!out) {
            std::filesystem::remove(tmp);
            throw ensq::Error(Errc::ParseError, "cannot write " + path.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string fmt(double v) { return ensq::format_double(v); }

struct Globals {
    double tol = ensq::kDefaultTol;
    bool json_out = false;
};

int run_simulate(const Globals& g, const std::string& circuit_path, const std::string& bits) {
    const ensq::Circuit circuit = ensq::circuit_from_json(ensq::read_json_file(circuit_path));
    ensq::validate(circuit);
    ensq::parse_bitstring(bits);

    ensq::Circuit native;
    ensq::LogicalRegister reg;
    double phase = 0.0;
    if (circuit.alphabet == ensq::Alphabet::Standard) {
        if (bits.size() != circuit.num_wires) {
            throw ensq::Error(Errc::LengthMismatch, "bitstring width differs from circuit wires");
        }
        auto lowered = ensq::lower(circuit);
        native = std::move(lowered.native);
        reg = std::move(lowered.reg);
        phase = lowered.global_phase;
    } else {
        if (2 * bits.size() > circuit.num_wires) {
            throw ensq::Error(Errc::LengthMismatch, "native circuit has too few nodes for the bitstring");
        }
        native = circuit;
        reg = ensq::LogicalRegister::contiguous(bits.size(), circuit.num_wires - 2 * bits.size());
    }

    ensq::LogicalState state = ensq::encode(reg, bits);
    state.physical = ensq::simulate(native, state.physical);
    const auto amplitudes = ensq::decode(state, g.tol);

    json logical = json::object();
    for (const auto& [key, raw] : amplitudes) {
        // report the standard circuit's amplitudes, not the lowered one's
        const ensq::Complex amp = raw * std::polar(1.0, -phase);
        if (std::abs(amp) > g.tol) logical[key] = json::array({amp.real(), amp.imag()});
    }
    const json out{{"logical", logical}, {"leaked_weight", state.leaked_weight()}};
    if (g.json_out) {
        std::cout << out.dump() << '\n';
    } else {
        for (const auto& [key, amp] : logical.items()) {
            std::cout << key << "  " << fmt(amp[0].get<double>()) << " " << (amp[1].get<double>() < 0 ? "-" : "+")
                      << " " << fmt(std::abs(amp[1].get<double>())) << "i\n";
        }
        std::cout << "leaked weight " << fmt(state.leaked_weight()) << '\n';
    }
    return 0;
}

int run_compile(const Globals& g, const std::string& circuit_path, const std::string& out_path,
                const std::string& report_path) {
    const ensq::Circuit circuit = ensq::circuit_from_json(ensq::read_json_file(circuit_path));
    if (circuit.alphabet != ensq::Alphabet::Standard) {
        throw ensq::Error(Errc::ParseError, "compile expects a standard-alphabet circuit");
    }
    const auto lowered = ensq::lower(circuit);
    const json report = ensq::to_json(lowered.report);
    write_file_atomic(out_path, ensq::to_json(lowered.native).dump(2) + "\n");
    if (!report_path.empty()) write_file_atomic(report_path, report.dump(2) + "\n");
    if (g.json_out) {
        std::cout << report.dump() << '\n';
    } else {
        std::cout << "native gates " << lowered.report.native_gate_count << ", cswap "
                  << lowered.report.cswap_count << ", ancilla nodes " << lowered.report.ancilla_nodes_used
                  << ", physical nodes " << lowered.report.total_physical_nodes << '\n';
    }
    return 0;
}

/// Standard circuits compare as logical unitaries; a native/standard pair is
/// compared on the native circuit's code space.
int run_verify(const Globals& g, const std::string& a_path, const std::string& b_path) {
    const ensq::Circuit a = ensq::circuit_from_json(ensq::read_json_file(a_path));
    const ensq::Circuit b = ensq::circuit_from_json(ensq::read_json_file(b_path));
    ensq::validate(a);
    ensq::validate(b);

    ensq::Matrix ua, ub;
    if (a.alphabet == b.alphabet) {
        const std::size_t nodes = std::max(a.num_wires, b.num_wires);
        if (nodes > ensq::kMaxMatrixNodes) throw ensq::Error(Errc::TooManyNodes, "verify is limited to 12 nodes");
        ua = ensq::circuit_unitary(a, nodes);
        ub = ensq::circuit_unitary(b, nodes);
    } else {
        const ensq::Circuit& native = a.alphabet == ensq::Alphabet::Native ? a : b;
        const ensq::Circuit& standard = a.alphabet == ensq::Alphabet::Native ? b : a;
        if (native.num_wires > ensq::kMaxMatrixNodes) {
            throw ensq::Error(Errc::TooManyNodes, "verify is limited to 12 nodes");
        }
        if (native.num_wires < 2 * standard.num_wires) {
            throw ensq::Error(Errc::DimensionMismatch, "native circuit cannot hold the logical qubits");
        }
        const auto reg = ensq::LogicalRegister::contiguous(standard.num_wires, native.num_wires - 2 * standard.num_wires);
        const ensq::Matrix restricted = ensq::code_space_action(native, reg).block;
        const ensq::Matrix logical = ensq::circuit_unitary(standard);
        ua = a.alphabet == ensq::Alphabet::Native ? restricted : logical;
        ub = a.alphabet == ensq::Alphabet::Native ? logical : restricted;
    }

    const ensq::PhaseFit fit = ensq::fit_global_phase(ua, ub);
    const bool same = fit.max_deviation <= g.tol;
    if (g.json_out) {
        std::cout << json{{"equivalent", same}, {"phase", fit.phase}, {"max_deviation", fit.max_deviation}}.dump()
                  << '\n';
    } else if (same) {
        std::cout << "EQUIVALENT (global phase \xcf\x86=" << fmt(fit.phase) << ")\n";
    } else {
        std::cout << "DIFFER (max deviation d=" << fmt(fit.max_deviation) << ")\n";
    }
    return same ? 0 : kExitDiffer;
}

struct DynamicsArgs {
    std::string params_path;
    std::string out_path;
    std::string summary_path;
    std::vector<int> timing;
    std::optional<double> blockade;
    std::optional<double> t_end;
    std::size_t samples = 100;
};

int run_dynamics(const Globals& g, const DynamicsArgs& args) {
    const ensq::EnsembleParams base = ensq::params_from_json(ensq::read_json_file(args.params_path));
    ensq::s_of_n(base);  // resonance check before any retuning

    ensq::EnsembleParams p = base;
    json summary;
    double gate_time = 0.0;
    if (!args.timing.empty()) {
        const auto timing = ensq::solve_cswap_timing(args.timing[0], args.timing[1], base.n1, base.n2, base.omega_s);
        p = ensq::apply_timing(base, timing);
        gate_time = timing.time;
        summary["mode"] = "timing";
        summary["m"] = timing.m;
        summary["n"] = timing.n;
        summary["detuning_ratio"] = *timing.detuning_ratio;
        summary["T"] = gate_time;
    } else if (args.blockade) {
        p = ensq::apply_blockade(base, *args.blockade);
        const auto analysis = ensq::blockade_analysis(p, *args.blockade);
        gate_time = analysis.t_cswap;
        summary["mode"] = "blockade";
        summary["r"] = analysis.ratio;
        summary["max_leak"] = analysis.max_leakage;
        summary["t_cswap"] = analysis.t_cswap;
    } else {
        gate_time = std::numbers::pi / (2 * ensq::s_of_n(p.with_photons(0)));
        summary["mode"] = "free";
        summary["t_swap"] = gate_time;
    }
    summary["S0"] = ensq::s_of_n(p.with_photons(0));
    summary["S1"] = ensq::s_of_n(p.with_photons(1));
    summary["fidelity"] = ensq::gate_fidelity(p, gate_time, ensq::mean_phase_compensation(p, gate_time));
    summary["params"] = ensq::to_json(p);

    const double t_end = args.t_end.value_or(gate_time);
    if (!(t_end >= 0.0)) throw ensq::Error(Errc::InvalidArgument, "--t-end must be >= 0");
    const auto rows = ensq::trajectory_rows(p, ensq::uniform_times(t_end, args.samples));
    write_file_atomic(args.out_path, ensq::to_csv(rows));
    if (!args.summary_path.empty()) write_file_atomic(args.summary_path, summary.dump(2) + "\n");

    if (g.json_out) {
        std::cout << summary.dump() << '\n';
    } else {
        std::cout << "mode " << summary["mode"].get<std::string>() << ": S(0)=" << fmt(summary["S0"].get<double>())
                  << " S(1)=" << fmt(summary["S1"].get<double>()) << " gate time " << fmt(gate_time)
                  << " fidelity " << fmt(summary["fidelity"].get<double>()) << '\n';
    }
    return 0;
}

struct SweepArgs {
    std::string params_path;
    std::string out_path;
    std::vector<double> blockade_range;
    std::vector<int> timing_grid;
};

int run_sweep(const Globals& g, const SweepArgs& args) {
    const ensq::EnsembleParams base = ensq::params_from_json(ensq::read_json_file(args.params_path));
    ensq::s_of_n(base);

    // each point carries its gate time
    std::vector<std::pair<ensq::EnsembleParams, double>> points;
    if (!args.blockade_range.empty()) {
        const double lo = args.blockade_range[0], hi = args.blockade_range[1];
        const double count_f = args.blockade_range[2];
        if (!(count_f >= 1) || count_f != std::floor(count_f) || !(hi >= lo)) {
            throw ensq::Error(Errc::InvalidArgument, "bad --blockade-range");
        }
        const auto count = static_cast<std::size_t>(count_f);
        for (std::size_t k = 0; k < count; ++k) {
            const double r = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
            const auto p = ensq::apply_blockade(base, r);
            points.emplace_back(p, ensq::blockade_analysis(p).t_cswap);
        }
    } else {
        if (args.timing_grid[0] < 0 || args.timing_grid[1] < 0) {
            throw ensq::Error(Errc::InvalidArgument, "bad --timing-grid");
        }
        for (int m = 0; m <= args.timing_grid[0]; ++m) {
            for (int n = 0; n <= args.timing_grid[1]; ++n) {
                const auto t = ensq::solve_cswap_timing(m, n, base.n1, base.n2, base.omega_s);
                if (t.feasible()) points.emplace_back(ensq::apply_timing(base, t), t.time);
            }
        }
    }

    const auto rows = ensq::sweep(points, [](const std::pair<ensq::EnsembleParams, double>& point) {
        return ensq::trajectory_rows(point.first, {point.second});
    });
    write_file_atomic(args.out_path, ensq::to_csv(rows));
    if (g.json_out) {
        std::cout << json{{"points", points.size()}, {"rows", rows.size()}}.dump() << '\n';
    } else {
        std::cout << points.size() << " parameter points, " << rows.size() << " rows\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Encoded-qubit simulator and compiler for multi-ensemble cavity processors"};
    app.footer(kExitCodeHelp);
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--tol", g.tol, "comparison tolerance")->capture_default_str();
    app.add_flag("--json", g.json_out, "print raw JSON instead of a human summary");

    std::string circuit_path, bits, out_path, report_path, a_path, b_path;

    auto* simulate = app.add_subcommand("simulate", "run a circuit on an encoded basis state");
    simulate->add_option("-c,--circuit", circuit_path, "circuit JSON")->required()->check(CLI::ExistingFile);
    simulate->add_option("-i,--input", bits, "logical basis bitstring")->required();

    auto* compile = app.add_subcommand("compile", "lower a standard circuit to native gates");
    compile->add_option("-c,--circuit", circuit_path, "standard circuit JSON")->required()->check(CLI::ExistingFile);
    compile->add_option("-o,--out", out_path, "native circuit JSON output")->required();
    compile->add_option("-r,--report", report_path, "compile report JSON output");

    auto* verify = app.add_subcommand("verify", "compare two circuits up to global phase");
    verify->add_option("-a", a_path, "first circuit JSON")->required()->check(CLI::ExistingFile);
    verify->add_option("-b", b_path, "second circuit JSON")->required()->check(CLI::ExistingFile);

    DynamicsArgs dyn;
    auto* dynamics = app.add_subcommand("dynamics", "photon-controlled swap trajectories");
    dynamics->add_option("-p,--params", dyn.params_path, "ensemble parameter JSON")->required()->check(CLI::ExistingFile);
    auto* timing_opt = dynamics->add_option("--timing", dyn.timing, "swap timing indices M N")->expected(2);
    auto* blockade_opt = dynamics->add_option("--blockade", dyn.blockade, "blockade ratio R");
    timing_opt->excludes(blockade_opt);
    dynamics->add_option("--t-end", dyn.t_end, "end time (default: gate time)");
    dynamics->add_option("--samples", dyn.samples, "time intervals on [0, t_end]")->capture_default_str();
    dynamics->add_option("-o,--out", dyn.out_path, "CSV output")->required();
    dynamics->add_option("--summary", dyn.summary_path, "summary JSON output");

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "gate figures of merit over a parameter grid");
    sweep->add_option("-p,--params", sw.params_path, "ensemble parameter JSON")->required()->check(CLI::ExistingFile);
    auto* range_opt = sweep->add_option("--blockade-range", sw.blockade_range, "RMIN RMAX COUNT")->expected(3);
    auto* grid_opt = sweep->add_option("--timing-grid", sw.timing_grid, "MMAX NMAX")->expected(2);
    range_opt->excludes(grid_opt);
    sweep->add_option("-o,--out", sw.out_path, "CSV output")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (*simulate) return run_simulate(g, circuit_path, bits);
        if (*compile) return run_compile(g, circuit_path, out_path, report_path);
        if (*verify) return run_verify(g, a_path, b_path);
        if (*dynamics) return run_dynamics(g, dyn);
        if (*sweep) {
            if (sw.blockade_range.empty() && sw.timing_grid.empty()) {
                throw ensq::Error(Errc::InvalidArgument, "sweep needs --blockade-range or --timing-grid");
            }
            return run_sweep(g, sw);
        }
    } catch (const ensq::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitOther;
    }
    return 0;
}
