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

#include <cstdlib>
#include <string>

#include "clarify/clarify.h"
#include "json.hpp"
#include "test_support.hpp"

namespace {

using nlohmann::json;

std::string Take(char* s) {
  std::string out = s == nullptr ? std::string() : std::string(s);
  clr_string_free(s);
  return out;
}

std::string FixturePath() {
  return (clarify::testing::DataDir() / "dialogue_samples.json").string();
}

TEST(CApiTest, VersionAndStatusNames) {
  EXPECT_STREQ(clr_version(), "0.1.0");
  EXPECT_STREQ(clr_status_name(CLR_OK), "ok");
  EXPECT_STREQ(clr_status_name(CLR_ERR_FORMAT), "format");
}

TEST(CApiTest, NullArgumentsAreRejected) {
  EXPECT_EQ(clr_corpus_load(nullptr, CLR_MODE_STRICT, nullptr),
            CLR_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(clr_last_error()).find("invalid argument"),
            std::string::npos);
  EXPECT_EQ(clr_corpus_dialogue_count(nullptr), 0u);
  clr_corpus_free(nullptr);
}

TEST(CApiTest, ErrorKindsMapToStatuses) {
  clr_corpus* c = nullptr;
  EXPECT_EQ(clr_corpus_load("/nonexistent.json", CLR_MODE_STRICT, &c), CLR_ERR_IO);
  EXPECT_EQ(c, nullptr);
  EXPECT_EQ(clr_corpus_from_json("{", CLR_MODE_STRICT, &c), CLR_ERR_FORMAT);
  EXPECT_EQ(clr_corpus_from_json(
                R"({"corpus_id":"x","scenes":{},"dialogues":[{"dialogue_id":"d",
                    "turns":[{"turn_idx":0,"user_utterance":"u","system_utterance":"s",
                    "user_referenced_objects":[],"is_ambiguous":false,"scene_id":"nope"}]}]})",
                CLR_MODE_STRICT, &c),
            CLR_ERR_VALIDATION);
  clr_rules* r = nullptr;
  EXPECT_EQ(clr_rules_from_json(R"({"phrases":{}})", &r), CLR_ERR_CONFIG);
  EXPECT_FALSE(std::string(clr_last_error()).empty());
}

TEST(CApiTest, SynthesizeExtractTagResolveEvaluate) {
  clr_corpus* corpus = nullptr;
  ASSERT_EQ(clr_corpus_synthesize(R"({"n_dialogues": 50})", 3, &corpus), CLR_OK)
      << clr_last_error();
  EXPECT_EQ(clr_corpus_dialogue_count(corpus), 50u);

  clr_ces* ces = nullptr;
  ASSERT_EQ(clr_ces_extract(corpus, &ces), CLR_OK);
  EXPECT_GT(clr_ces_count(ces), 0u);
  ASSERT_EQ(clr_ces_tag(ces, corpus, nullptr, 2), CLR_OK);

  clr_resolver_spec spec{"oracle", 0, 0, 0};
  clr_predictions* preds = nullptr;
  ASSERT_EQ(clr_resolve(corpus, ces, nullptr, &spec, 2, &preds), CLR_OK);

  clr_eval_options opts;
  clr_eval_options_init(&opts);
  clr_report* report = nullptr;
  ASSERT_EQ(clr_evaluate(corpus, preds, ces, &opts, &report), CLR_OK)
      << clr_last_error();
  char* text = nullptr;
  ASSERT_EQ(clr_report_render(report, CLR_FORMAT_STRUCTURED, &text), CLR_OK);
  const json j = json::parse(Take(text));
  EXPECT_EQ(j["rows"][1]["subset"], "CRTurns");
  EXPECT_EQ(j["rows"][1]["after"]["f1_micro"], 1.0);

  ASSERT_EQ(clr_report_render(report, CLR_FORMAT_MARKDOWN, &text), CLR_OK);
  EXPECT_NE(Take(text).find("| CR Turns |"), std::string::npos);

  ASSERT_EQ(clr_corpus_stats(corpus, ces, &text), CLR_OK);
  EXPECT_EQ(json::parse(Take(text))["corpus"]["n_dialogues"], 50);

  clr_report_free(report);
  clr_predictions_free(preds);
  clr_ces_free(ces);
  clr_corpus_free(corpus);
}

TEST(CApiTest, UnknownResolverIsConfigError) {
  clr_corpus* corpus = nullptr;
  ASSERT_EQ(clr_corpus_load(FixturePath().c_str(), CLR_MODE_STRICT, &corpus), CLR_OK);
  clr_resolver_spec spec{"neural", 0, 0, 0};
  clr_predictions* preds = nullptr;
  EXPECT_EQ(clr_resolve(corpus, nullptr, nullptr, &spec, 1, &preds), CLR_ERR_CONFIG);
  clr_corpus_free(corpus);
}

TEST(CApiTest, EvaluateUntaggedIsIntegrityError) {
  clr_corpus* corpus = nullptr;
  ASSERT_EQ(clr_corpus_load(FixturePath().c_str(), CLR_MODE_STRICT, &corpus), CLR_OK);
  clr_ces* ces = nullptr;
  ASSERT_EQ(clr_ces_extract(corpus, &ces), CLR_OK);
  clr_resolver_spec spec{"oracle", 0, 0, 0};
  clr_predictions* preds = nullptr;
  ASSERT_EQ(clr_resolve(corpus, ces, nullptr, &spec, 1, &preds), CLR_OK);
  clr_report* report = nullptr;
  EXPECT_EQ(clr_evaluate(corpus, preds, ces, nullptr, &report), CLR_ERR_INTEGRITY);
  clr_predictions_free(preds);
  clr_ces_free(ces);
  clr_corpus_free(corpus);
}

TEST(CApiTest, RulesAndValidationDocuments) {
  char* text = nullptr;
  ASSERT_EQ(clr_rules_default_json(&text), CLR_OK);
  const std::string rules = Take(text);
  clr_rules* r = nullptr;
  ASSERT_EQ(clr_rules_from_json(rules.c_str(), &r), CLR_OK);
  clr_rules_free(r);

  clr_corpus* corpus = nullptr;
  ASSERT_EQ(clr_corpus_load(FixturePath().c_str(), CLR_MODE_STRICT, &corpus), CLR_OK);
  size_t n_errors = 99;
  ASSERT_EQ(clr_corpus_validate(corpus, CLR_MODE_STRICT, &text, &n_errors), CLR_OK);
  EXPECT_EQ(n_errors, 0u);
  Take(text);
  ASSERT_EQ(clr_corpus_to_json(corpus, &text), CLR_OK);
  clr_corpus* again = nullptr;
  EXPECT_EQ(clr_corpus_from_json(Take(text).c_str(), CLR_MODE_STRICT, &again), CLR_OK);
  clr_corpus_free(again);
  clr_corpus_free(corpus);
}

}  // namespace
