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

#include <algorithm>
#include <cmath>
#include <map>

#include "clarify/ce_extractor.hpp"
#include "clarify/error.hpp"
#include "clarify/synth.hpp"
#include "clarify/tagger.hpp"

namespace clarify {
namespace {

using nlohmann::json;

SynthConfig Small(int n = 200) {
  SynthConfig cfg = SynthConfig::defaults();
  cfg.n_dialogues = n;
  return cfg;
}

TEST(SynthConfigTest, DefaultsMatchShippedShape) {
  const SynthConfig cfg = SynthConfig::defaults();
  EXPECT_EQ(cfg.n_dialogues, 500);
  EXPECT_EQ(cfg.turns_per_dialogue, (IntRange{4, 6}));
  EXPECT_EQ(cfg.objects_per_scene, (IntRange{20, 34}));
  EXPECT_DOUBLE_EQ(cfg.ambiguity_rate, 0.1);
  EXPECT_TRUE(cfg.solvable_after_cr);
  EXPECT_NO_THROW(cfg.validate());
}

TEST(SynthConfigTest, JsonRoundTrip) {
  SynthConfig cfg = Small(17);
  cfg.tag_mix = {{PropertyTag::kDialogueHistory, 1.0}};
  EXPECT_EQ(SynthConfig::from_json(cfg.to_json()), cfg);
}

TEST(SynthConfigTest, RejectsInfeasibleSettings) {
  auto rejects = [](auto mutate) {
    SynthConfig cfg = Small();
    mutate(cfg);
    try {
      cfg.validate();
    } catch (const Error& e) {
      return e.kind() == ErrorKind::kConfig;
    }
    return false;
  };
  EXPECT_TRUE(rejects([](SynthConfig& c) { c.n_dialogues = 0; }));
  EXPECT_TRUE(rejects([](SynthConfig& c) { c.ambiguity_rate = 1.5; }));
  EXPECT_TRUE(rejects([](SynthConfig& c) { c.ambiguity_rate = 0.4; }));
  EXPECT_TRUE(rejects([](SynthConfig& c) { c.turns_per_dialogue = {5, 3}; }));
  EXPECT_TRUE(rejects([](SynthConfig& c) { c.tag_mix.clear(); }));
  EXPECT_TRUE(rejects([](SynthConfig& c) {
    c.tag_mix = {{PropertyTag::kIndividualProperty, -1.0}};
  }));
  EXPECT_TRUE(rejects([](SynthConfig& c) { c.attribute_pools.erase("type"); }));
  EXPECT_TRUE(rejects([](SynthConfig& c) { c.attribute_pools["color"] = {"red"}; }));
  EXPECT_TRUE(rejects([](SynthConfig& c) { c.max_distractors = 40; }));
}

TEST(SynthConfigTest, BadJsonIsConfigError) {
  json j = Small().to_json();
  j["ambiguity_rate"] = "often";
  EXPECT_THROW(SynthConfig::from_json(j), Error);
}

TEST(SynthTest, SameSeedSameCorpus) {
  EXPECT_EQ(generate_corpus(Small(), 42), generate_corpus(Small(), 42));
  EXPECT_NE(generate_corpus(Small(), 42), generate_corpus(Small(), 43));
}

TEST(SynthTest, OutputIsStrictlyValidAndInRange) {
  const SynthConfig cfg = Small();
  const Corpus c = generate_corpus(cfg, 9);
  EXPECT_TRUE(validate_corpus(c, ValidationMode::kStrict).ok());
  ASSERT_EQ(c.dialogues.size(), 200u);
  for (const auto& d : c.dialogues) {
    EXPECT_GE(static_cast<int>(d.turns.size()), cfg.turns_per_dialogue.min);
    EXPECT_LE(static_cast<int>(d.turns.size()), cfg.turns_per_dialogue.max);
    EXPECT_FALSE(d.turns.front().is_ambiguous);
    EXPECT_FALSE(d.turns.back().is_ambiguous);
    for (std::size_t i = 1; i < d.turns.size(); ++i) {
      EXPECT_FALSE(d.turns[i].is_ambiguous && d.turns[i - 1].is_ambiguous);
    }
    for (const auto& t : d.turns) EXPECT_FALSE(t.user_referenced_objects.empty());
  }
  for (const auto& [id, s] : c.scenes) {
    EXPECT_GE(static_cast<int>(s.objects.size()), cfg.objects_per_scene.min);
    EXPECT_LE(static_cast<int>(s.objects.size()), cfg.objects_per_scene.max);
  }
}

TEST(SynthTest, AmbiguityRateNearTarget) {
  SynthConfig cfg = Small(3000);
  const Corpus c = generate_corpus(cfg, 1);
  const ExtractionStats s = extract_ces(c).stats;
  EXPECT_NEAR(s.cr_rate, 0.1, 0.015);
  EXPECT_EQ(s.n_truncated, 0u);

  cfg.ambiguity_rate = 0;
  EXPECT_EQ(extract_ces(generate_corpus(cfg, 1)).stats.n_ces, 0u);
}

// The tagger recovers the planted property from the generated exchange.
TEST(SynthTest, TagMixIsHonouredAndRecoverable) {
  SynthConfig cfg = Small(1000);
  cfg.tag_mix = {{PropertyTag::kIndividualProperty, 0.4},
                 {PropertyTag::kRelationalContext, 0.3},
                 {PropertyTag::kDialogueHistory, 0.2},
                 {PropertyTag::kUnclassified, 0.1}};
  const Corpus c = generate_corpus(cfg, 2);
  auto ces = extract_ces(c).ces;
  tag_all(ces, build_lexicon(c, RuleSet::defaults()), RuleSet::defaults());
  std::map<PropertyTag, int> counts;
  for (const auto& ce : ces) {
    ASSERT_EQ(ce.tags->tags.size(), 1u) << ce.cr_text << " / " << *ce.response_text;
    ++counts[*ce.tags->tags.begin()];
  }
  const double n = static_cast<double>(ces.size());
  for (const auto& [tag, w] : cfg.tag_mix) {
    EXPECT_LE(std::abs(counts[tag] - w * n), 1.0) << tag_name(tag);
  }
}

TEST(SynthTest, HistoryOnlyMix) {
  SynthConfig cfg = Small(300);
  cfg.tag_mix = {{PropertyTag::kDialogueHistory, 1.0}};
  const Corpus c = generate_corpus(cfg, 4);
  auto ces = extract_ces(c).ces;
  ASSERT_FALSE(ces.empty());
  tag_all(ces, build_lexicon(c, RuleSet::defaults()), RuleSet::defaults());
  for (const auto& ce : ces) {
    EXPECT_EQ(ce.tags->tags, std::set<PropertyTag>{PropertyTag::kDialogueHistory});
    // The referent is the object of the turn before the ambiguous one.
    const Dialogue* d = c.dialogue(ce.dialogue_id);
    EXPECT_EQ(d->turns[ce.before_turn_idx].user_referenced_objects,
              d->turns[ce.before_turn_idx - 1].user_referenced_objects);
  }
}

TEST(SynthTest, SolvableExchangesSingleOutTheTarget) {
  SynthConfig cfg = Small(400);
  const Corpus c = generate_corpus(cfg, 8);
  int checked = 0;
  for (const auto& ce : extract_ces(c).ces) {
    const Dialogue* d = c.dialogue(ce.dialogue_id);
    const Turn& before = d->turns[ce.before_turn_idx];
    const Scene* s = c.scene(before.scene_id);
    const ObjectId target = *before.user_referenced_objects.begin();
    const SceneObject* t = s->find(target);
    const std::string type = t->attributes.at("type");
    int same_type = 0;
    for (const auto& o : s->objects) same_type += o.attributes.at("type") == type;
    EXPECT_GE(same_type, 2) << "exchange without a same-type distractor";

    const std::string& resp = *ce.response_text;
    if (resp.find(" on the left") != std::string::npos ||
        resp.find(" on the right") != std::string::npos) {
      const bool left = resp.find("left") != std::string::npos;
      for (const auto& o : s->objects) {
        if (o.object_id == target || o.attributes.at("type") != type) continue;
        if (left) {
          EXPECT_LT(t->position->at(0), o.position->at(0));
        } else {
          EXPECT_GT(t->position->at(0), o.position->at(0));
        }
      }
      ++checked;
    } else if (resp.find(t->attributes.at("color")) != std::string::npos) {
      for (const auto& o : s->objects) {
        if (o.object_id == target || o.attributes.at("type") != type) continue;
        EXPECT_NE(o.attributes.at("color"), t->attributes.at("color"));
      }
      ++checked;
    }
  }
  EXPECT_GT(checked, 20);
}

}  // namespace
}  // namespace clarify
