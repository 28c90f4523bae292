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
#include <string>

#include "clarify/corpus.hpp"
#include "clarify/error.hpp"
#include "test_support.hpp"

namespace clarify {
namespace {

using testing::DataDir;
using testing::TempDir;

Corpus LoadFixture(ValidationMode mode = ValidationMode::kStrict) {
  const auto dir = DataDir() / "simmc";
  return load_simmc_corpus(dir / "dialogs.json", dir / "scenes",
                           {dir / "fashion_prefab_metadata.json"}, mode);
}

TEST(SimmcTest, LoadsDialoguesAndTurns) {
  const Corpus c = LoadFixture();
  ASSERT_EQ(c.dialogues.size(), 2u);
  const Dialogue& d = c.dialogues[0];
  EXPECT_EQ(d.dialogue_id, "7");
  EXPECT_EQ(d.domain_label, "fashion");
  ASSERT_EQ(d.turns.size(), 4u);
  EXPECT_EQ(d.turns[1].user_utterance, "How much is that jacket?");
  EXPECT_EQ(d.turns[1].system_utterance, "Which jacket do you mean?");
  EXPECT_TRUE(d.turns[1].is_ambiguous);
  EXPECT_FALSE(d.turns[2].is_ambiguous);
  EXPECT_EQ(d.turns[0].user_referenced_objects, (ObjectSet{0, 1}));
}

TEST(SimmcTest, TurnUsesLatestSceneStartingAtOrBeforeIt) {
  const Corpus c = LoadFixture();
  const Dialogue& d = c.dialogues[0];
  EXPECT_EQ(d.turns[0].scene_id, "m_cloth_store_1");
  EXPECT_EQ(d.turns[1].scene_id, "m_cloth_store_1");
  EXPECT_EQ(d.turns[2].scene_id, "cloth_store_2");
  EXPECT_EQ(d.turns[3].scene_id, "cloth_store_2");
}

TEST(SimmcTest, MapsMetadataOntoSceneObjects) {
  const Corpus c = LoadFixture();
  const Scene* s = c.scene("cloth_store_1");
  ASSERT_NE(s, nullptr);
  ASSERT_EQ(s->objects.size(), 4u);
  const SceneObject& jacket = s->objects[0];
  EXPECT_EQ(*jacket.attribute("type"), "jacket");
  EXPECT_EQ(*jacket.attribute("color"), "black");
  EXPECT_EQ(*jacket.attribute("brand"), "Yogi Fit");
  EXPECT_EQ(*jacket.attribute("state"), "hanging");
  EXPECT_EQ(*s->objects[2].attribute("color"), "grey, brown");
}

TEST(SimmcTest, BboxIsReorderedAndDegenerateBoxesDropped) {
  const Corpus c = LoadFixture();
  const Scene* s = c.scene("cloth_store_1");
  ASSERT_TRUE(s->objects[0].bbox.has_value());
  // Distribution order is [x, y, h, w].
  EXPECT_EQ(*s->objects[0].bbox, (BoundingBox{10, 20, 50, 100}));
  EXPECT_FALSE(s->objects[3].bbox.has_value());
  ASSERT_TRUE(s->objects[3].position.has_value());
}

TEST(SimmcTest, MissingMetadataIsFormatError) {
  const auto dir = DataDir() / "simmc";
  try {
    load_simmc_corpus(dir / "dialogs.json", dir / "scenes", {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kFormat);
    EXPECT_NE(std::string(e.what()).find("unmapped distribution field"),
              std::string::npos);
  }
}

TEST(SimmcTest, MissingSceneFileIsDanglingReference) {
  TempDir tmp;
  const auto dir = DataDir() / "simmc";
  std::ofstream(tmp / "dialogs.json") << R"({"dialogue_data": [
    {"dialogue_idx": 1, "scene_ids": {"0": "nowhere"}, "dialogue": [
      {"turn_idx": 0, "transcript": "hi", "system_transcript": "hello",
       "transcript_annotated": {"act_attributes": {"objects": []}}}]}]})";
  EXPECT_THROW(load_simmc_corpus(tmp / "dialogs.json", dir / "scenes",
                                 {dir / "fashion_prefab_metadata.json"}),
               Error);
  const Corpus c = load_simmc_corpus(tmp / "dialogs.json", dir / "scenes",
                                     {dir / "fashion_prefab_metadata.json"},
                                     ValidationMode::kLenient);
  EXPECT_EQ(c.dialogues.size(), 1u);
  EXPECT_EQ(c.scene("nowhere"), nullptr);
}

TEST(SimmcTest, MissingRequiredFieldNamesIt) {
  TempDir tmp;
  const auto dir = DataDir() / "simmc";
  std::ofstream(tmp / "dialogs.json") << R"({"dialogue_data": [
    {"dialogue_idx": 1, "scene_ids": {"0": "cloth_store_1"}, "dialogue": [
      {"turn_idx": 0, "system_transcript": "hello",
       "transcript_annotated": {"act_attributes": {"objects": []}}}]}]})";
  try {
    load_simmc_corpus(tmp / "dialogs.json", dir / "scenes",
                      {dir / "fashion_prefab_metadata.json"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kFormat);
    EXPECT_NE(std::string(e.what()).find("'transcript'"), std::string::npos);
  }
}

}  // namespace
}  // namespace clarify
