// Copyright 2026 The eppflags Authors
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "commands.hpp"

namespace eppflags::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_tool(const std::string& args) {
    const std::string cmd = std::string(EPPFLAGS_TOOL_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config_path(const std::string& name) { return std::string(EPPFLAGS_CONFIG_DIR) + "/" + name; }

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("eppflags_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

TEST_F(CliTest, IterateWritesDataAndManifest) {
    ASSERT_EQ(run_tool("iterate --config " + config_path("white_p92.cfg") + " --out " + (dir_ / "a").string()), 0);
    const std::string csv = slurp(dir_ / "a" / "iterate.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "n,F,F_cond,N_keep,A00,A01,A10,A11,C00,C01,C10,C11,D00,D01,D10,D11,B00,B01,B10,B11");
    const auto manifest = nlohmann::json::parse(slurp(dir_ / "a" / "iterate.manifest.json"));
    EXPECT_EQ(manifest["tool"], "eppflags");
    EXPECT_EQ(manifest["subcommand"], "iterate");
    EXPECT_EQ(manifest["format"], "csv");
    EXPECT_EQ(manifest["parameters"]["steps"], "12");
    EXPECT_EQ(manifest["outputs"][0], "iterate.csv");
    EXPECT_TRUE(manifest["ok"].get<bool>());
}

TEST_F(CliTest, ManifestReplayIsByteIdentical) {
    const std::string first = (dir_ / "first").string();
    const std::string second = (dir_ / "second").string();
    ASSERT_EQ(run_tool("fixpoint --config " + config_path("binary_fixpoint_sweep.cfg") + " --format json --out " + first),
              0);
    ASSERT_EQ(run_tool("fixpoint --config " + first + "/fixpoint.manifest.json --out " + second), 0);
    EXPECT_EQ(slurp(dir_ / "first" / "fixpoint.json"), slurp(dir_ / "second" / "fixpoint.json"));
    EXPECT_EQ(slurp(dir_ / "first" / "fixpoint.manifest.json"), slurp(dir_ / "second" / "fixpoint.manifest.json"));
}

TEST_F(CliTest, SeededMonteCarloRepeats) {
    const std::string args = " --set n_pairs=20000 --set rounds=3 --seed 12 --out ";
    ASSERT_EQ(run_tool("mc --config " + config_path("mc_p96.cfg") + args + (dir_ / "a").string()), 0);
    ASSERT_EQ(run_tool("mc --config " + config_path("mc_p96.cfg") + args + (dir_ / "b").string()), 0);
    EXPECT_EQ(slurp(dir_ / "a" / "mc.csv"), slurp(dir_ / "b" / "mc.csv"));
    const auto manifest = nlohmann::json::parse(slurp(dir_ / "a" / "mc.manifest.json"));
    EXPECT_EQ(manifest["seed"], "12");
}

TEST_F(CliTest, UsageErrorsExitWithTwo) {
    const std::string out = " --out " + dir_.string();
    EXPECT_EQ(run_tool("critical --set lower=0.8 --set upper=0.76" + out), kExitUsage);
    EXPECT_EQ(run_tool("iterate --format xml" + out), kExitUsage);
    EXPECT_EQ(run_tool("iterate --config /nonexistent/file.cfg" + out), kExitUsage);
    EXPECT_EQ(run_tool("bogus"), kExitUsage);
    EXPECT_EQ(run_tool(""), kExitUsage);
    EXPECT_EQ(run_tool("iterate --set steps=many" + out), kExitUsage);
}

TEST_F(CliTest, ManifestForOtherCommandIsRejected) {
    ASSERT_EQ(run_tool("iterate --set steps=2 --out " + dir_.string()), 0);
    EXPECT_EQ(run_tool("mc --config " + (dir_ / "iterate.manifest.json").string() + " --out " + dir_.string()),
              kExitUsage);
}

TEST_F(CliTest, NoSignChangeExitsWithOne) {
    EXPECT_EQ(run_tool("critical --set family=white --set lower=0.95 --set upper=0.99 --out " + dir_.string()),
              kExitNotConverged);
}

TEST(Compute, HeadersAreFixed) {
    const auto header = [](const std::string& command, const std::string& text) {
        const auto h = compute(command, Config::parse(text)).table.header();
        std::string joined;
        for (const auto& c : h) {
            joined += (joined.empty() ? "" : ",") + c;
        }
        return joined;
    };
    EXPECT_EQ(header("fixpoint", "model = binary\nf00 = 0.81\nf01 = 0.09\nf10 = 0.09\nf11 = 0.01\nmode = binary\n"),
              "parameter,F_inf,F_cond_inf,iterations,regime");
    EXPECT_EQ(header("critical", "family = binary\n"), "family,critical,lower,upper,width,halvings");
    EXPECT_EQ(header("scan", "scan.points = 2\nsamples = 3\n"), "f00,samples,high_noise,intermediate,security,warnings");
    EXPECT_EQ(header("mc", "n_pairs = 100\nrounds = 1\n").substr(0, 33), "round,remaining,F_hat,F_cond_hat,");
    EXPECT_EQ(header("curve", "model = binary\nf00 = 0.81\nf01 = 0.09\nf10 = 0.09\nf11 = 0.01\nn_max = 2\n"),
              "segment,t,F_cond,F_cond_next");
    EXPECT_EQ(header("resources", "settings = 0.99:0.99\n"), "p1,p2,round,eps,N");
}

TEST(Compute, ResolvedParametersIncludeDefaults) {
    const CommandResult r = compute("iterate", Config());
    EXPECT_TRUE(r.resolved.contains("steps"));
    EXPECT_TRUE(r.resolved.contains("mode"));
    EXPECT_THROW(compute("nothing", Config()), UsageError);
}

}  // namespace
}  // namespace eppflags::cli
