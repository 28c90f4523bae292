// Copyright 2026 The Clarify Authors
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
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "test_support.hpp"

namespace {

using clarify::testing::DataDir;
using clarify::testing::TempDir;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  Result Run(const std::string& args, const std::string& env = "") {
    const auto out = dir_ / "stdout.txt";
    const auto err = dir_ / "stderr.txt";
    const std::string cmd = "cd '" + dir_.path().string() + "' && " + env + " '" +
                            std::string(CLARIFY_CLI_PATH) + "' " + args + " >'" +
                            out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = Slurp(out);
    r.err = Slurp(err);
    return r;
  }

  std::string Fixture() const {
    return (DataDir() / "dialogue_samples.json").string();
  }

  TempDir dir_;
};

TEST_F(CliTest, PipelineWithOracleScoresOneEverywhere) {
  ASSERT_EQ(Run("synth --seed 5 --out c.json").code, 0);
  ASSERT_EQ(Run("extract-ce --corpus c.json --out ces.json").code, 0);
  ASSERT_EQ(Run("tag --corpus c.json --ces ces.json --out t.json").code, 0);
  ASSERT_EQ(Run("resolve --corpus c.json --resolver oracle --out o.jsonl").code, 0);
  const Result r = Run(
      "evaluate --corpus c.json --ces t.json --predictions o.jsonl --format structured");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& row : j["rows"]) {
    if (row.contains("score")) {
      EXPECT_EQ(row["score"]["f1_micro"], 1.0);
    } else if (row["n_ces"].get<int>() > 0) {
      EXPECT_EQ(row["before"]["f1_micro"], 1.0);
      EXPECT_EQ(row["after"]["f1_micro"], 1.0);
      EXPECT_EQ(row["delta_pct"], 0.0);
    }
  }
}

TEST_F(CliTest, MarkdownReportOnFixture) {
  ASSERT_EQ(Run("tag --corpus '" + Fixture() + "' --out t.json").code, 0);
  ASSERT_EQ(Run("resolve --corpus '" + Fixture() + "' --out o.jsonl").code, 0);
  const Result r = Run("evaluate --corpus '" + Fixture() +
                       "' --ces t.json --predictions o.jsonl --format markdown");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("| CR Turns | 100.0 (.00) | 100.0 (.00) | +0.0% | 5 |"),
            std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("Truncated exchanges excluded: 0."), std::string::npos);
}

TEST_F(CliTest, MissingCorpusIsExitTwo) {
  const Result r = Run("extract-ce --corpus missing-file");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("missing-file"), std::string::npos);
}

TEST_F(CliTest, UnknownFlagPrintsUsageAndExitsOne) {
  const Result r = Run("stats --bogus");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_EQ(Run("").code, 1);
  EXPECT_EQ(Run("frobnicate").code, 1);
}

TEST_F(CliTest, RefusesToOverwriteWithoutForce) {
  std::ofstream(dir_ / "c.json") << "keep";
  const Result r = Run("synth --seed 1 --out c.json");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(Slurp(dir_ / "c.json"), "keep");
  EXPECT_EQ(Run("synth --seed 1 --out c.json --force").code, 0);
  EXPECT_NE(Slurp(dir_ / "c.json"), "keep");
}

TEST_F(CliTest, ValidationAndConfigErrorsExitOne) {
  std::ofstream(dir_ / "bad.json") << R"({"corpus_id":"x","scenes":{},"dialogues":[
    {"dialogue_id":"d","turns":[{"turn_idx":0,"user_utterance":"u",
     "system_utterance":"s","user_referenced_objects":[],"is_ambiguous":false,
     "scene_id":"nope"}]}]})";
  EXPECT_EQ(Run("stats --corpus bad.json").code, 1);
  EXPECT_EQ(Run("stats --corpus bad.json --mode lenient").code, 0);

  std::ofstream(dir_ / "cfg.json") << R"({"ambiguity_rate": 0.9})";
  EXPECT_EQ(Run("synth --config cfg.json").code, 1);
  std::ofstream(dir_ / "broken.json") << "{";
  EXPECT_EQ(Run("synth --config broken.json").code, 2);
}

TEST_F(CliTest, RulesFromEnvironment) {
  auto rules = nlohmann::json::parse(Slurp(std::filesystem::path(CLARIFY_SOURCE_DIR) /
                                           "data" / "default_rules.json"));
  rules["type_only_counts"] = false;
  std::ofstream(dir_ / "strict.json") << rules.dump();
  const Result r = Run("tag --corpus '" + Fixture() + "'", "CLARIFY_RULES=strict.json");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ces = nlohmann::json::parse(r.out);
  EXPECT_EQ(ces.back()["tags"], nlohmann::json::array({"Unclassified"}));
  const Result d = Run("tag --corpus '" + Fixture() + "'");
  EXPECT_EQ(nlohmann::json::parse(d.out).back()["tags"],
            nlohmann::json::array({"IndividualProperty"}));
  EXPECT_EQ(Run("tag --corpus '" + Fixture() + "'", "CLARIFY_RULES=absent.json").code, 2);
}

TEST_F(CliTest, StrictEvaluateRejectsMissingPredictions) {
  ASSERT_EQ(Run("tag --corpus '" + Fixture() + "' --out t.json").code, 0);
  std::ofstream(dir_ / "p.jsonl")
      << R"({"dialogue_id":"sample-1","turn_idx":0,"predicted_objects":[]})" "\n";
  const std::string args = "evaluate --corpus '" + Fixture() +
                           "' --ces t.json --predictions p.jsonl";
  EXPECT_EQ(Run(args).code, 1);
  EXPECT_EQ(Run(args + " --mode lenient").code, 0);
}

TEST_F(CliTest, SimmcIngest) {
  const auto simmc = DataDir() / "simmc";
  const Result r = Run("ingest --simmc-dialogs '" + (simmc / "dialogs.json").string() +
                       "' --simmc-scenes '" + (simmc / "scenes").string() +
                       "' --simmc-metadata '" +
                       (simmc / "fashion_prefab_metadata.json").string() + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["dialogues"].size(), 2u);
}

TEST_F(CliTest, HelpExitsZero) {
  const Result r = Run("--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("evaluate"), std::string::npos);
}

}  // namespace
