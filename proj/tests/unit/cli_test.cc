// Copyright 2026 The Xfer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/cli.h"

namespace xfer::cli {
namespace {

const std::string kData = XFER_TEST_DATA_DIR;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result RunArgs(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Result result;
  result.code = Run(args, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

std::string ReadAll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("xfer_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
    unsetenv("XFER_SEED");
  }
  void TearDown() override {
    unsetenv("XFER_SEED");
    std::filesystem::remove_all(dir_);
  }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

TEST_F(CliTest, UnknownSubcommandPrintsUsage) {
  const Result result = RunArgs({"frobnicate"});
  EXPECT_EQ(result.code, kExitUsage);
  EXPECT_NE(result.err.find("unknown subcommand"), std::string::npos);
  EXPECT_NE(result.err.find("Subcommands:"), std::string::npos);
  EXPECT_EQ(RunArgs({}).code, kExitUsage);
  EXPECT_EQ(RunArgs({"--help"}).code, kExitOk);
}

TEST_F(CliTest, ConvertRoundTripIsBitwise) {
  const std::string input = kData + "/toy_parses.jsonl";
  ASSERT_EQ(RunArgs({"convert", "--in", input, "--out", Path("flat.jsonl")}).code, kExitOk);
  ASSERT_EQ(RunArgs({"convert", "--in", Path("flat.jsonl"), "--out", Path("back.jsonl")}).code,
            kExitOk);
  EXPECT_EQ(ReadAll(Path("back.jsonl")), ReadAll(input));
  EXPECT_NE(ReadAll(Path("flat.jsonl")).find("B-GET-CONTACT"), std::string::npos);
}

TEST_F(CliTest, EvalOnIdenticalFilesIsPerfect) {
  const std::string gold = kData + "/toy_parses.jsonl";
  const Result result =
      RunArgs({"eval", "--gold", gold, "--pred", gold, "--report", Path("report.json")});
  ASSERT_EQ(result.code, kExitOk) << result.err;
  EXPECT_NE(result.out.find("100.00"), std::string::npos);
  EXPECT_NE(ReadAll(Path("report.json")).find("\"exact_match\": 100.0"), std::string::npos);
  const std::string conll = kData + "/toy.conll";
  const Result tagging = RunArgs({"eval", "--gold", conll, "--pred", conll});
  ASSERT_EQ(tagging.code, kExitOk) << tagging.err;
  EXPECT_NE(tagging.out.find("f1                        100.00"), std::string::npos);
}

TEST_F(CliTest, ShuffleWithZeroBoundReproducesInput) {
  const std::string input = kData + "/toy.conll";
  ASSERT_EQ(RunArgs({"augment", "shuffle", "--in", input, "--out", Path("out.conll"), "--k", "0"})
                .code,
            kExitOk);
  EXPECT_EQ(ReadAll(Path("out.conll")), ReadAll(input));
}

TEST_F(CliTest, ExitCodesDistinguishValidationAndRuntimeErrors) {
  std::ofstream(Path("bad.jsonl")) << "{\"tokens\":[\"a\"],\"parse\":\"[IN:X a\"}\n";
  const Result bad = RunArgs({"convert", "--in", Path("bad.jsonl"), "--out", Path("x.jsonl")});
  EXPECT_EQ(bad.code, kExitValidationError);
  EXPECT_NE(bad.err.find("bad.jsonl:1"), std::string::npos) << bad.err;
  EXPECT_EQ(RunArgs({"convert", "--in", Path("missing.jsonl"), "--out", Path("x.jsonl")}).code,
            kExitRuntimeError);
  EXPECT_EQ(RunArgs({"convert", "--out", Path("x.jsonl")}).code, kExitValidationError);
  EXPECT_EQ(RunArgs({"train", "parser", "--train", "a", "--out", "b"}).code, kExitValidationError);
  EXPECT_EQ(RunArgs({"augment", "shuffle", "--in", kData + "/toy.conll", "--out",
                     Path("o.conll"), "--k", "-3"})
                .code,
            kExitValidationError);
}

TEST_F(CliTest, ConfigOverridesAndSeedEnvironment) {
  const std::string input = kData + "/toy.conll";
  std::ofstream(Path("aug.cfg")) << "seed = 1\n";
  auto shuffle = [&](const std::string& out, std::vector<std::string> extra) {
    std::vector<std::string> args = {"augment", "shuffle", "--in", input, "--out", Path(out),
                                     "--copies", "4", "--config", Path("aug.cfg")};
    args.insert(args.end(), extra.begin(), extra.end());
    return RunArgs(args).code;
  };
  ASSERT_EQ(shuffle("a.conll", {}), kExitOk);
  ASSERT_EQ(shuffle("b.conll", {"--set", "seed=1"}), kExitOk);
  ASSERT_EQ(shuffle("c.conll", {"--set", "seed=2"}), kExitOk);
  EXPECT_EQ(ReadAll(Path("a.conll")), ReadAll(Path("b.conll")));
  EXPECT_NE(ReadAll(Path("a.conll")), ReadAll(Path("c.conll")));
  setenv("XFER_SEED", "2", 1);
  ASSERT_EQ(shuffle("d.conll", {"--set", "seed=1"}), kExitOk);
  EXPECT_EQ(ReadAll(Path("d.conll")), ReadAll(Path("c.conll")));
  setenv("XFER_SEED", "abc", 1);
  EXPECT_EQ(shuffle("e.conll", {}), kExitValidationError);
}

TEST_F(CliTest, TrainEvalAndBenchParser) {
  const std::string data = kData + "/toy_parses.jsonl";
  const std::vector<std::string> train = {"train", "x2parser", "--train", data, "--out",
                                          Path("model"), "--set", "steps=40", "--set",
                                          "slot_encoder.hidden_dim=16", "--report",
                                          Path("train.json")};
  const Result trained = RunArgs(train);
  ASSERT_EQ(trained.code, kExitOk) << trained.err;
  const Result eval = RunArgs({"eval", "--gold", data, "--model", Path("model"), "--report",
                               Path("eval.json")});
  ASSERT_EQ(eval.code, kExitOk) << eval.err;
  EXPECT_NE(ReadAll(Path("eval.json")).find("exact_match"), std::string::npos);
  const Result bench = RunArgs({"bench", "--model", Path("model"), "--repeats", "2", "--warmup",
                                "0", "--buckets", "5,40", "--report", Path("bench.json")});
  ASSERT_EQ(bench.code, kExitOk) << bench.err;
  const std::string report = ReadAll(Path("bench.json"));
  EXPECT_NE(report.find("\"length\": 40"), std::string::npos);
  EXPECT_NE(report.find("\"decoder_passes\": 1"), std::string::npos);
  EXPECT_NE(report.find("\"median_ms\": 0.0"), std::string::npos);
}

}  // namespace
}  // namespace xfer::cli
