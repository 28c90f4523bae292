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

#include <fstream>

#include "clarify/ce_extractor.hpp"
#include "clarify/error.hpp"
#include "test_support.hpp"

namespace clarify {
namespace {

using testing::SmallCorpus;
using testing::TempDir;

TEST(ExtractTest, OneExchangePerAmbiguousTurn) {
  const Extraction ex = extract_ces(SmallCorpus());
  ASSERT_EQ(ex.ces.size(), 2u);

  const auto& a = ex.ces[0];
  EXPECT_EQ(a.dialogue_id, "d1");
  EXPECT_EQ(a.before_turn_idx, 1);
  EXPECT_EQ(a.after_turn_idx, 2);
  EXPECT_EQ(a.cr_text, "Which one do you mean?");
  EXPECT_EQ(a.response_text, "The blue jacket.");
  EXPECT_FALSE(a.truncated());
  EXPECT_FALSE(a.tags.has_value());

  const auto& b = ex.ces[1];
  EXPECT_EQ(b.dialogue_id, "d2");
  EXPECT_TRUE(b.truncated());
  EXPECT_FALSE(b.response_text.has_value());
  EXPECT_FALSE(b.after_key().has_value());
}

TEST(ExtractTest, StatsCountTruncatedBothWays) {
  const Extraction ex = extract_ces(SmallCorpus());
  EXPECT_EQ(ex.stats.n_ces, 2u);
  EXPECT_EQ(ex.stats.n_truncated, 1u);
  EXPECT_EQ(ex.stats.n_system_turns, 6u);
  EXPECT_DOUBLE_EQ(ex.stats.cr_rate, 2.0 / 6.0);
  EXPECT_DOUBLE_EQ(ex.stats.cr_rate_excluding_truncated, 1.0 / 6.0);
}

TEST(ExtractTest, OrderIsByDialogueIdThenTurn) {
  Corpus c = SmallCorpus();
  std::swap(c.dialogues[0], c.dialogues[1]);
  const Extraction ex = extract_ces(c);
  EXPECT_EQ(ex.ces[0].dialogue_id, "d1");
  EXPECT_EQ(ex.ces[1].dialogue_id, "d2");
}

TEST(ExtractTest, NoAmbiguityNoExchanges) {
  Corpus c = SmallCorpus();
  for (auto& d : c.dialogues) {
    for (auto& t : d.turns) t.is_ambiguous = false;
  }
  const Extraction ex = extract_ces(c);
  EXPECT_TRUE(ex.ces.empty());
  EXPECT_EQ(ex.stats.cr_rate, 0.0);
}

TEST(LabelTurnsTest, PhasesPerSide) {
  const Corpus c = SmallCorpus();
  const auto labels = label_turns(c, extract_ces(c).ces);
  ASSERT_EQ(labels.size(), 6u);
  const auto& before = labels.at({"d1", 1});
  EXPECT_EQ(before.user, std::set<CEPhase>{CEPhase::kBeforeCR});
  EXPECT_EQ(before.system, std::set<CEPhase>{CEPhase::kCR});
  EXPECT_EQ(labels.at({"d1", 2}).user, std::set<CEPhase>{CEPhase::kAfterCR});
  EXPECT_EQ(labels.at({"d1", 2}).system, std::set<CEPhase>{CEPhase::kOther});
  EXPECT_EQ(labels.at({"d1", 0}).user, std::set<CEPhase>{CEPhase::kOther});
  EXPECT_EQ(labels.at({"d2", 1}).user, std::set<CEPhase>{CEPhase::kBeforeCR});
}

TEST(LabelTurnsTest, AdjacentExchangesShareATurn) {
  Corpus c = SmallCorpus();
  c.dialogues[0].turns[2].is_ambiguous = true;
  const auto labels = label_turns(c, extract_ces(c).ces);
  EXPECT_EQ(labels.at({"d1", 2}).user,
            (std::set<CEPhase>{CEPhase::kBeforeCR, CEPhase::kAfterCR}));
}

TEST(LabelTurnsTest, InconsistentExchangeIsIntegrityError) {
  const Corpus c = SmallCorpus();
  auto ces = extract_ces(c).ces;
  ces[0].after_turn_idx = 3;
  try {
    label_turns(c, ces);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIntegrity);
  }

  ces = extract_ces(c).ces;
  ces[0].before_turn_idx = 0;
  ces[0].after_turn_idx = 1;
  EXPECT_THROW(label_turns(c, ces), Error);

  ces = extract_ces(c).ces;
  ces[0].dialogue_id = "nope";
  EXPECT_THROW(label_turns(c, ces), Error);

  ces = extract_ces(c).ces;
  ces[0].after_turn_idx.reset();
  ces[0].response_text.reset();
  EXPECT_THROW(label_turns(c, ces), Error);
}

TEST(CeSerializationTest, RoundTripWithTags) {
  auto ces = extract_ces(SmallCorpus()).ces;
  TagSet ts;
  ts.tags = {PropertyTag::kIndividualProperty, PropertyTag::kRelationalContext};
  ts.matched_spans = {{"color", "blue", 4, 8, SpanSource::kResponse}};
  ces[0].tags = ts;
  const auto back = ces_from_json(ces_to_json(ces));
  EXPECT_EQ(back, ces);
  EXPECT_EQ(ces_to_json(ces)[0]["tags"].dump(),
            R"(["IndividualProperty","RelationalContext"])");
}

TEST(CeSerializationTest, FileRoundTrip) {
  TempDir dir;
  const auto ces = extract_ces(SmallCorpus()).ces;
  std::ofstream(dir / "ces.json") << ces_to_json(ces).dump(2);
  EXPECT_EQ(load_ces(dir / "ces.json"), ces);
}

TEST(CeSerializationTest, RejectsBadDocuments) {
  using nlohmann::json;
  auto kind = [](const json& j) {
    try {
      ces_from_json(j);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kConfig;
  };
  EXPECT_EQ(kind(json::object()), ErrorKind::kFormat);
  EXPECT_EQ(kind(json::parse(R"([{"dialogue_id": "d", "cr_text": "x"}])")),
            ErrorKind::kFormat);
  EXPECT_EQ(kind(json::parse(
                R"([{"dialogue_id": "d", "before_turn_idx": 0, "cr_text": "x",
                     "after_turn_idx": 1}])")),
            ErrorKind::kFormat);
  EXPECT_EQ(kind(json::parse(
                R"([{"dialogue_id": "d", "before_turn_idx": 0, "cr_text": "x",
                     "tags": ["Colour"]}])")),
            ErrorKind::kFormat);
  EXPECT_EQ(kind(json::parse(
                R"([{"dialogue_id": "d", "before_turn_idx": 0, "cr_text": "x",
                     "tags": ["Unclassified", "DialogueHistory"]}])")),
            ErrorKind::kFormat);
  EXPECT_EQ(kind(json::parse(
                R"([{"dialogue_id": "d", "before_turn_idx": 0, "cr_text": "x",
                     "tags": []}])")),
            ErrorKind::kFormat);
}

}  // namespace
}  // namespace clarify
