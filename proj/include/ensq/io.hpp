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

// JSON and CSV formats.
//
//   circuit  {"alphabet": "standard"|"native", "wires": n,
//             "gates": [{"name": str, "params": [f64...], "targets": [int...]}]}
//   report   {"native_gate_count", "cswap_count", "ancilla_nodes_used", "total_physical_nodes"}
//   params   EnsembleParams field names
//   sweep    n1,n2,omega1,omega2,omega_s,photon_n,t,abs_c2,abs_c3,fidelity
#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ensq/circuit.hpp"
#include "ensq/compiler.hpp"
#include "ensq/dynamics.hpp"

namespace ensq {

using json = nlohmann::ordered_json;

inline json to_json(const Circuit& c) {
    json gates = json::array();
    for (const auto& g : c.gates) {
        gates.push_back(json{{"name", g.name}, {"params", g.params}, {"targets", g.targets}});
    }
    return json{{"alphabet", alphabet_name(c.alphabet)}, {"wires", c.num_wires}, {"gates", std::move(gates)}};
}

inline Circuit circuit_from_json(const json& j) {
    try {
        Circuit c;
        const auto alphabet = j.at("alphabet").get<std::string>();
        if (alphabet == "native") {
            c.alphabet = Alphabet::Native;
        } else if (alphabet == "standard") {
            c.alphabet = Alphabet::Standard;
        } else {
            throw Error(Errc::ParseError, "alphabet must be 'standard' or 'native'");
        }
        auto index = [](const json& v) {
            if (!v.is_number_unsigned()) throw Error(Errc::ParseError, "expected a non-negative integer, got " + v.dump());
            return v.get<std::size_t>();
        };
        c.num_wires = index(j.at("wires"));
        for (const auto& g : j.at("gates")) {
            Gate gate;
            gate.name = g.at("name").get<std::string>();
            if (g.contains("params")) gate.params = g.at("params").get<std::vector<double>>();
            for (const auto& t : g.at("targets")) gate.targets.push_back(index(t));
            c.gates.push_back(std::move(gate));
        }
        return c;
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, e.what());
    }
}

inline json to_json(const CompileReport& r) {
    return json{{"native_gate_count", r.native_gate_count},
                {"cswap_count", r.cswap_count},
                {"ancilla_nodes_used", r.ancilla_nodes_used},
                {"total_physical_nodes", r.total_physical_nodes}};
}

inline json to_json(const EnsembleParams& p) {
    return json{{"n1", p.n1},         {"n2", p.n2},
                {"omega1", p.omega1}, {"omega2", p.omega2},
                {"omega_s", p.omega_s}, {"node_freq1", p.node_freq1},
                {"node_freq2", p.node_freq2}, {"photon_n", p.photon_n}};
}

/// node_freq2 may be omitted, in which case it is chosen for resonance.
inline EnsembleParams params_from_json(const json& j) {
    try {
        EnsembleParams p;
        p.n1 = j.at("n1").get<int>();
        p.n2 = j.at("n2").get<int>();
        p.omega1 = j.at("omega1").get<double>();
        p.omega2 = j.at("omega2").get<double>();
        p.omega_s = j.at("omega_s").get<double>();
        p.node_freq1 = j.value("node_freq1", 0.0);
        p.photon_n = j.value("photon_n", 0);
        p.node_freq2 = j.contains("node_freq2") ? j.at("node_freq2").get<double>()
                                                : p.node_freq1 + p.n1 * p.omega1 - p.n2 * p.omega2;
        p.validate();
        return p;
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, e.what());
    }
}

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, path.string() + ": " + e.what());
    }
}

/// Shortest round-trip formatting, so output is byte-stable.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    // prefer the shorter representation when it round-trips
    for (int prec = 1; prec < 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return s;
}

inline constexpr const char* kSweepHeader = "n1,n2,omega1,omega2,omega_s,photon_n,t,abs_c2,abs_c3,fidelity";

inline std::string to_csv(const std::vector<DynamicsRow>& rows) {
    std::ostringstream out;
    out << kSweepHeader << '\n';
    for (const auto& r : rows) {
        out << r.n1 << ',' << r.n2 << ',' << format_double(r.omega1) << ',' << format_double(r.omega2) << ','
            << format_double(r.omega_s) << ',' << r.photon_n << ',' << format_double(r.t) << ','
            << format_double(r.abs_c2) << ',' << format_double(r.abs_c3) << ',' << format_double(r.fidelity) << '\n';
    }
    return out.str();
}

}  // namespace ensq
