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
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ensq/ensq.hpp"

namespace ensq {
namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("ensq_cli_") + info->name() + "_" + std::to_string(::getpid()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    static std::string sample(const std::string& name) { return std::string(ENSQ_SAMPLES_DIR) + "/" + name; }
    std::string tmp(const std::string& name) const { return (dir_ / name).string(); }

    static std::string slurp(const std::string& path) {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void write(const std::string& name, const std::string& contents) const { std::ofstream(tmp(name)) << contents; }

    RunResult run(const std::string& args) const {
        const std::string out = tmp("stdout.txt"), err = tmp("stderr.txt");
        const std::string cmd = std::string("\"") + ENSQ_CLI_PATH + "\" " + args + " >\"" + out + "\" 2>\"" + err + "\"";
        const int status = std::system(cmd.c_str());
        RunResult r;
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = slurp(out);
        r.err = slurp(err);
        return r;
    }

    fs::path dir_;
};

TEST_F(Cli, SimulateCnot) {
    const RunResult r = run("--json simulate -c " + sample("cnot.json") + " -i 10");
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["logical"].size(), 1u);
    EXPECT_EQ(j["logical"]["11"], json::array({1.0, 0.0}));
    EXPECT_EQ(j["leaked_weight"], 0.0);
}

TEST_F(Cli, SimulateEmpty) {
    const RunResult r = run("simulate --json -c " + sample("empty.json") + " -i 0");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["logical"], json::parse(R"({"0":[1.0,0.0]})"));
}

TEST_F(Cli, SimulateHadamardTwice) {
    const RunResult r = run("--json simulate -c " + sample("hh.json") + " -i 0");
    ASSERT_EQ(r.code, 0) << r.err;
    const json logical = json::parse(r.out)["logical"];
    ASSERT_EQ(logical.size(), 1u);
    EXPECT_NEAR(logical["0"][0].get<double>(), 1.0, 1e-9);
    EXPECT_NEAR(logical["0"][1].get<double>(), 0.0, 1e-9);
}

TEST_F(Cli, SimulateErrors) {
    EXPECT_EQ(run("simulate -c " + sample("cnot.json") + " -i 1x").code, 2);
    EXPECT_EQ(run("simulate -c " + sample("cnot.json") + " -i 101").code, 2);
    write("bad.json", "{\"alphabet\": ");
    const RunResult bad = run("simulate -c " + tmp("bad.json") + " -i 0");
    EXPECT_EQ(bad.code, 2);
    EXPECT_EQ(std::count(bad.err.begin(), bad.err.end(), '\n'), 1);
    EXPECT_EQ(run("simulate -c " + tmp("missing.json") + " -i 0").code, 2);
}

TEST_F(Cli, SimulateLeakedState) {
    write("leak.json", R"({"alphabet":"native","wires":4,"gates":[{"name":"iswap","params":[3.141592653589793],"targets":[1,2]}]})");
    EXPECT_EQ(run("simulate -c " + tmp("leak.json") + " -i 00").code, 3);
}

TEST_F(Cli, CompileToffoli) {
    const RunResult r = run("--json compile -c " + sample("toffoli.json") + " -o " + tmp("out.json") + " -r " +
                            tmp("report.json"));
    ASSERT_EQ(r.code, 0) << r.err;
    const json report = json::parse(slurp(tmp("report.json")));
    EXPECT_EQ(report["cswap_count"], 3);
    EXPECT_EQ(report["ancilla_nodes_used"], 1);
    EXPECT_EQ(json::parse(r.out), report);
    const Circuit native = circuit_from_json(read_json_file(tmp("out.json")));
    EXPECT_EQ(native.alphabet, Alphabet::Native);
    EXPECT_EQ(native.count("cswap"), 3u);
}

TEST_F(Cli, CompileFourControlU) {
    const RunResult r = run("--json compile -c " + sample("c4u.json") + " -o " + tmp("out.json"));
    ASSERT_EQ(r.code, 0) << r.err;
    const json report = json::parse(r.out);
    EXPECT_EQ(report["ancilla_nodes_used"], 3);
    // 6 cascade gates plus the two inside the controlled-U block
    EXPECT_EQ(report["cswap_count"], 8);
    const Circuit native = circuit_from_json(read_json_file(tmp("out.json")));
    std::size_t cascade = 0;
    for (const auto& g : native.gates) cascade += g.name == "cswap" && g.targets[2] >= 10;
    EXPECT_EQ(cascade, 6u);
}

TEST_F(Cli, CompileT) {
    const RunResult r = run("--json compile -c " + sample("t.json") + " -o " + tmp("out.json"));
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["native_gate_count"], 1);
}

TEST_F(Cli, CompileDeterministic) {
    ASSERT_EQ(run("compile -c " + sample("c4u.json") + " -o " + tmp("a.json")).code, 0);
    ASSERT_EQ(run("compile -c " + sample("c4u.json") + " -o " + tmp("b.json")).code, 0);
    EXPECT_EQ(slurp(tmp("a.json")), slurp(tmp("b.json")));
}

TEST_F(Cli, CompileUnsupported) {
    write("bad.json", R"({"alphabet":"standard","wires":1,"gates":[{"name":"sqrt_x","targets":[0]}]})");
    EXPECT_EQ(run("compile -c " + tmp("bad.json") + " -o " + tmp("out.json")).code, 4);
    EXPECT_FALSE(fs::exists(tmp("out.json")));
    EXPECT_FALSE(fs::exists(tmp("out.json.tmp")));
}

TEST_F(Cli, VerifyLoweredHadamard) {
    ASSERT_EQ(run("compile -c " + sample("h.json") + " -o " + tmp("h_native.json")).code, 0);
    const RunResult r = run("verify -a " + tmp("h_native.json") + " -b " + sample("h.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("EQUIVALENT (global phase", 0), 0u) << r.out;
}

TEST_F(Cli, VerifyCzSandwich) {
    const RunResult r = run("verify -a " + sample("cz_sandwich.json") + " -b " + sample("cnot.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("EQUIVALENT", 0), 0u) << r.out;
}

TEST_F(Cli, VerifyDiffer) {
    const RunResult r = run("verify -a " + sample("x.json") + " -b " + sample("z.json"));
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out.rfind("DIFFER (max deviation d=", 0), 0u) << r.out;
}

TEST_F(Cli, VerifyTooManyNodes) {
    write("big.json", R"({"alphabet":"standard","wires":13,"gates":[]})");
    EXPECT_EQ(run("verify -a " + tmp("big.json") + " -b " + tmp("big.json")).code, 5);
}

TEST_F(Cli, DynamicsFeasibleTiming) {
    const RunResult r = run("--json dynamics -p " + sample("params.json") + " --timing 1 1 -o " + tmp("t.csv") +
                            " --summary " + tmp("s.json"));
    ASSERT_EQ(r.code, 0) << r.err;
    const json s = json::parse(slurp(tmp("s.json")));
    EXPECT_NEAR(s["fidelity"].get<double>(), 1.0, 1e-9);
    EXPECT_EQ(json::parse(r.out), s);
}

TEST_F(Cli, DynamicsInfeasibleTiming) {
    const RunResult r = run("dynamics -p " + sample("params.json") + " --timing 0 1 -o " + tmp("t.csv"));
    EXPECT_EQ(r.code, 7);
    EXPECT_FALSE(fs::exists(tmp("t.csv")));
}

TEST_F(Cli, DynamicsBlockade) {
    const RunResult r = run("--json dynamics -p " + sample("params.json") + " --blockade 10 -o " + tmp("b.csv"));
    ASSERT_EQ(r.code, 0) << r.err;
    const json s = json::parse(r.out);
    EXPECT_NEAR(s["max_leak"].get<double>(), 1 / std::sqrt(101.0), 1e-12);

    // last vacuum row sits at t = pi / (2 S(0)), where the swap is complete
    std::ifstream csv(tmp("b.csv"));
    std::string line, last_vacuum;
    std::getline(csv, line);
    EXPECT_EQ(line, kSweepHeader);
    while (std::getline(csv, line)) {
        std::vector<std::string> cols;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
        ASSERT_EQ(cols.size(), 10u);
        if (cols[5] == "0") last_vacuum = line;
    }
    std::vector<std::string> cols;
    std::stringstream ss(last_vacuum);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    EXPECT_NEAR(std::stod(cols[6]), std::numbers::pi / (2 * s["S0"].get<double>()), 1e-12);
    EXPECT_NEAR(std::stod(cols[8]), 1.0, 1e-6);
}

TEST_F(Cli, DynamicsResonanceMismatch) {
    write("p.json", R"({"n1":2,"n2":2,"omega1":1,"omega2":0.5,"omega_s":1,"node_freq1":0,"node_freq2":0})");
    const RunResult r = run("dynamics -p " + tmp("p.json") + " --blockade 3 -o " + tmp("x.csv"));
    EXPECT_EQ(r.code, 6);
    EXPECT_FALSE(fs::exists(tmp("x.csv")));
}

TEST_F(Cli, SweepBlockadeRange) {
    const RunResult r = run("sweep -p " + sample("params.json") + " --blockade-range 1 10 4 -o " + tmp("s.csv"));
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string csv = slurp(tmp("s.csv"));
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 9);
    ASSERT_EQ(run("sweep -p " + sample("params.json") + " --blockade-range 1 10 4 -o " + tmp("t.csv")).code, 0);
    EXPECT_EQ(csv, slurp(tmp("t.csv")));
}

TEST_F(Cli, SweepTimingGrid) {
    const RunResult r = run("sweep -p " + sample("params.json") + " --timing-grid 2 2 -o " + tmp("s.csv"));
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream csv(tmp("s.csv"));
    std::string line;
    std::getline(csv, line);
    std::size_t rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        EXPECT_NEAR(std::stod(line.substr(line.rfind(',') + 1)), 1.0, 1e-9) << line;
    }
    EXPECT_GT(rows, 0u);
}

TEST_F(Cli, HelpListsExitCodes) {
    const RunResult r = run("--help");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("Exit codes"), std::string::npos);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
}

}  // namespace
}  // namespace ensq
