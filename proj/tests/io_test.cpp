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

#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "ensq/ensq.hpp"
#include "oracles.hpp"

namespace ensq {
namespace {

TEST(CircuitJson, RoundTrip) {
    std::mt19937_64 rng(51);
    const Circuit c = oracle::random_standard_circuit(rng, 3, 10);
    EXPECT_EQ(circuit_from_json(json::parse(to_json(c).dump())), c);
    const Circuit native = lower(c).native;
    EXPECT_EQ(circuit_from_json(json::parse(to_json(native).dump())), native);
}

TEST(CircuitJson, ParamsOptional) {
    const Circuit c = circuit_from_json(json::parse(R"({"alphabet":"standard","wires":1,"gates":[{"name":"h","targets":[0]}]})"));
    ASSERT_EQ(c.size(), 1u);
    EXPECT_TRUE(c.gates[0].params.empty());
}

TEST(CircuitJson, Malformed) {
    for (const char* text : {R"({"alphabet":"qutrit","wires":1,"gates":[]})", R"({"wires":1,"gates":[]})",
                             R"({"alphabet":"native","wires":-1,"gates":[]})",
                             R"({"alphabet":"native","wires":2,"gates":[{"name":"cz","targets":[0,-1]}]})",
                             R"({"alphabet":"native","wires":2,"gates":[{"name":"cz"}]})"}) {
        try {
            circuit_from_json(json::parse(text));
            ADD_FAILURE() << text;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::ParseError) << text;
        }
    }
}

TEST(ParamsJson, DefaultsToResonance) {
    const EnsembleParams p = params_from_json(json::parse(R"({"n1":2,"n2":3,"omega1":0.5,"omega2":0.2,"omega_s":1})"));
    EXPECT_NEAR(p.resonance_mismatch(), 0.0, 1e-15);
    EXPECT_EQ(params_from_json(to_json(p)), p);
}

TEST(Csv, HeaderAndShortestDoubles) {
    const std::string csv = to_csv({DynamicsRow{2, 3, 0.1, 0.25, 1.0, 1, 0.5, 1.0, 0.0, 0.75}});
    EXPECT_EQ(csv, std::string(kSweepHeader) + "\n2,3,0.1,0.25,1,1,0.5,1,0,0.75\n");
}

TEST(Csv, FormatRoundTrips) {
    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> d(-1e6, 1e6);
    for (int k = 0; k < 1000; ++k) {
        const double v = d(rng) / (1 + k);
        EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
    }
}

TEST(Report, Fields) {
    const json j = to_json(CompileReport{3, 3, 1, 7});
    EXPECT_EQ(j.dump(), R"({"native_gate_count":3,"cswap_count":3,"ancilla_nodes_used":1,"total_physical_nodes":7})");
}

}  // namespace
}  // namespace ensq
