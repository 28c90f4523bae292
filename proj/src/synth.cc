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

#include "clarify/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>

#include "clarify/error.hpp"
#include "embedded.hpp"

namespace clarify {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Config

namespace {

IntRange RangeFromJson(const json& j, const char* name) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer()) {
    throw ConfigError(std::string("synth config: '") + name +
                      "' must be [min, max] integers");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

double TotalWeight(const std::map<PropertyTag, double>& mix) {
  double total = 0;
  for (const auto& [t, w] : mix) total += w;
  return total;
}

}  // namespace

void SynthConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError("synth config: " + m); };
  if (n_dialogues <= 0) fail("n_dialogues must be positive");
  for (const auto& [name, r] : {std::pair{"turns_per_dialogue", turns_per_dialogue},
                                std::pair{"objects_per_scene", objects_per_scene}}) {
    if (r.min < 1 || r.min > r.max) fail(std::string(name) + " must satisfy 1 <= min <= max");
  }
  if (objects_per_scene.min < 4) fail("objects_per_scene.min must be at least 4");
  if (ambiguity_rate < 0 || ambiguity_rate > 1) fail("ambiguity_rate must lie in [0, 1]");
  if (max_distractors < 1) fail("max_distractors must be at least 1");
  if (max_distractors >= objects_per_scene.min) {
    fail("max_distractors must be below objects_per_scene.min");
  }
  if (ambiguity_rate > 0) {
    // Turn 0 and the last turn never open an exchange and exchanges never
    // chain, so the per-dialogue rate over eligible turns is capped at 1/2.
    const int n = turns_per_dialogue.min;
    if (n < 3) fail("ambiguity_rate > 0 needs at least 3 turns per dialogue");
    if (ambiguity_rate * n / (n - 2) > 0.5) {
      fail("ambiguity_rate too high for turns_per_dialogue.min");
    }
  }
  for (const auto& [tag, w] : tag_mix) {
    if (w < 0) fail("tag_mix weights must be non-negative");
  }
  if (TotalWeight(tag_mix) <= 0) fail("tag_mix weights must not all be zero");
  for (const auto& [cat, pool] : attribute_pools) {
    if (pool.empty()) fail("attribute pool '" + cat + "' is empty");
  }
  auto pool_size = [&](const char* cat) -> std::size_t {
    auto it = attribute_pools.find(cat);
    return it == attribute_pools.end() ? 0 : it->second.size();
  };
  if (pool_size("type") == 0) fail("attribute_pools.type is required");
  auto weight = [&](PropertyTag t) {
    auto it = tag_mix.find(t);
    return it == tag_mix.end() ? 0.0 : it->second;
  };
  if (weight(PropertyTag::kIndividualProperty) > 0 && pool_size("color") < 2) {
    fail("IndividualProperty exchanges need at least two colors in attribute_pools");
  }
}

SynthConfig SynthConfig::from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("synth config: expected an object");
  static const std::set<std::string> kKnown = {
      "corpus_id",     "n_dialogues",    "turns_per_dialogue",
      "objects_per_scene", "attribute_pools", "ambiguity_rate",
      "tag_mix",       "solvable_after_cr", "max_distractors"};
  for (const auto& [k, v] : doc.items()) {
    if (!kKnown.contains(k)) throw ConfigError("synth config: unknown key '" + k + "'");
  }
  // Keys left out keep their shipped values; a given key replaces the
  // shipped value whole (a tag_mix lists every weight it wants).
  json merged = json::parse(internal::DefaultSynthConfigJson());
  merged.update(doc);
  return FromCompleteJson(merged);
}

SynthConfig SynthConfig::FromCompleteJson(const json& doc) {
  SynthConfig c;
  try {
    if (doc.contains("corpus_id")) c.corpus_id = doc.at("corpus_id").get<std::string>();
    if (doc.contains("n_dialogues")) c.n_dialogues = doc.at("n_dialogues").get<int>();
    if (doc.contains("turns_per_dialogue")) {
      c.turns_per_dialogue = RangeFromJson(doc["turns_per_dialogue"], "turns_per_dialogue");
    }
    if (doc.contains("objects_per_scene")) {
      c.objects_per_scene = RangeFromJson(doc["objects_per_scene"], "objects_per_scene");
    }
    if (doc.contains("attribute_pools")) {
      c.attribute_pools =
          doc.at("attribute_pools").get<std::map<std::string, std::vector<std::string>>>();
    }
    if (doc.contains("ambiguity_rate")) c.ambiguity_rate = doc.at("ambiguity_rate").get<double>();
    if (doc.contains("tag_mix")) {
      for (const auto& [name, w] : doc.at("tag_mix").items()) {
        auto tag = parse_tag(name);
        if (!tag) throw ConfigError("synth config: unknown tag '" + name + "' in tag_mix");
        c.tag_mix[*tag] = w.get<double>();
      }
    }
    if (doc.contains("solvable_after_cr")) {
      c.solvable_after_cr = doc.at("solvable_after_cr").get<bool>();
    }
    if (doc.contains("max_distractors")) c.max_distractors = doc.at("max_distractors").get<int>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("synth config: ") + e.what());
  }
  c.validate();
  return c;
}

SynthConfig SynthConfig::load(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return from_json(doc);
}

SynthConfig SynthConfig::defaults() {
  return FromCompleteJson(json::parse(internal::DefaultSynthConfigJson()));
}

json SynthConfig::to_json() const {
  json mix = json::object();
  for (const auto& [t, w] : tag_mix) mix[std::string(tag_name(t))] = w;
  return {{"corpus_id", corpus_id},
          {"n_dialogues", n_dialogues},
          {"turns_per_dialogue", {turns_per_dialogue.min, turns_per_dialogue.max}},
          {"objects_per_scene", {objects_per_scene.min, objects_per_scene.max}},
          {"attribute_pools", attribute_pools},
          {"ambiguity_rate", ambiguity_rate},
          {"tag_mix", mix},
          {"solvable_after_cr", solvable_after_cr},
          {"max_distractors", max_distractors}};
}

// ---------------------------------------------------------------------------
// Generation

namespace {

using Rng = std::mt19937_64;

int Uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

template <class T>
const T& Pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(Uniform(rng, 0, static_cast<int>(v.size()) - 1))];
}

// Hands out tags so that the realised mix tracks the weights as closely as
// possible: each exchange gets the tag furthest below its quota.
class TagQuota {
 public:
  explicit TagQuota(const std::map<PropertyTag, double>& mix) {
    const double total = TotalWeight(mix);
    for (const auto& [t, w] : mix) {
      if (w > 0) shares_.emplace_back(t, w / total);
    }
  }

  PropertyTag Next() {
    ++issued_;
    PropertyTag best = shares_.front().first;
    double best_deficit = -1e300;
    for (const auto& [t, share] : shares_) {
      const double deficit = share * static_cast<double>(issued_) -
                             static_cast<double>(counts_[t]);
      if (deficit > best_deficit) {
        best_deficit = deficit;
        best = t;
      }
    }
    ++counts_[best];
    return best;
  }

 private:
  std::vector<std::pair<PropertyTag, double>> shares_;
  std::map<PropertyTag, long> counts_;
  long issued_ = 0;
};

const std::string* Attr(const SceneObject& o, const char* cat) {
  return o.attribute(cat);
}

std::string Describe(const SceneObject& o) {
  std::string out;
  if (const auto* c = Attr(o, "color")) out += *c + " ";
  out += *Attr(o, "type");
  return out;
}

Scene RandomScene(Rng& rng, const SynthConfig& cfg, const std::string& id) {
  Scene scene;
  scene.scene_id = id;
  const int n = Uniform(rng, cfg.objects_per_scene.min, cfg.objects_per_scene.max);
  // Each object gets its own column so left/right extremes are never tied.
  std::vector<int> columns(static_cast<std::size_t>(n));
  std::iota(columns.begin(), columns.end(), 0);
  std::shuffle(columns.begin(), columns.end(), rng);
  for (int i = 0; i < n; ++i) {
    SceneObject o;
    o.object_id = i;
    for (const auto& [cat, pool] : cfg.attribute_pools) o.attributes[cat] = Pick(rng, pool);
    const int x = columns[static_cast<std::size_t>(i)];
    const int y = Uniform(rng, 0, 3);
    o.position = std::array<double, 3>{double(x), double(y), 0.0};
    o.bbox = BoundingBox{x * 100.0 + 10.0, y * 150.0 + 10.0, 80.0, 130.0};
    scene.objects.push_back(std::move(o));
  }
  return scene;
}

SceneObject& ById(Scene& scene, ObjectId id) {
  for (auto& o : scene.objects) {
    if (o.object_id == id) return o;
  }
  throw std::logic_error("synth: object id not in scene");
}

std::vector<SceneObject*> Others(Scene& scene, ObjectId exclude) {
  std::vector<SceneObject*> out;
  for (auto& o : scene.objects) {
    if (o.object_id != exclude) out.push_back(&o);
  }
  return out;
}

// Makes the Before-CR utterance ambiguous: 1..max_distractors other objects
// share the target's type.
void PlantDistractors(Rng& rng, const SynthConfig& cfg, Scene& scene, ObjectId target) {
  const std::string type = *Attr(ById(scene, target), "type");
  auto others = Others(scene, target);
  std::shuffle(others.begin(), others.end(), rng);
  const int k = Uniform(rng, 1, cfg.max_distractors);
  for (int i = 0; i < k && i < static_cast<int>(others.size()); ++i) {
    others[static_cast<std::size_t>(i)]->attributes["type"] = type;
  }
}

// Target becomes the only object of its type with its color, and its color
// is at least as common in the scene as its type, so the color alone never
// narrows the scene more than the type did.
void PlantUniqueColor(Rng& rng, const SynthConfig& cfg, Scene& scene, ObjectId target) {
  const auto& colors = cfg.attribute_pools.at("color");
  SceneObject& t = ById(scene, target);
  const std::string type = *Attr(t, "type");
  const std::string color = *Attr(t, "color");
  std::vector<std::string> other_colors;
  for (const auto& c : colors) {
    if (c != color) other_colors.push_back(c);
  }
  std::size_t type_count = 1;
  std::size_t color_count = 1;
  std::vector<SceneObject*> recolorable;
  for (SceneObject* o : Others(scene, target)) {
    if (*Attr(*o, "type") == type) {
      ++type_count;
      if (*Attr(*o, "color") == color) o->attributes["color"] = Pick(rng, other_colors);
    } else if (*Attr(*o, "color") == color) {
      ++color_count;
    } else {
      recolorable.push_back(o);
    }
  }
  std::shuffle(recolorable.begin(), recolorable.end(), rng);
  for (SceneObject* o : recolorable) {
    if (color_count >= type_count) break;
    o->attributes["color"] = color;
    ++color_count;
  }
}

// Target becomes the leftmost (or rightmost) object of its type.
void PlantExtreme(Scene& scene, ObjectId target, bool left) {
  SceneObject& t = ById(scene, target);
  const std::string type = *Attr(t, "type");
  SceneObject* extreme = &t;
  for (auto& o : scene.objects) {
    if (*Attr(o, "type") != type) continue;
    const double x = (*o.position)[0];
    const double ex = (*extreme->position)[0];
    if (left ? x < ex : x > ex) extreme = &o;
  }
  if (extreme != &t) {
    std::swap(extreme->position, t.position);
    std::swap(extreme->bbox, t.bbox);
  }
}

const std::vector<std::string> kRegularUser = {
    "What do you think of the {obj}?",
    "Can you tell me more about the {obj}?",
    "I like that {obj}. Does it come in other sizes?",
    "How much does the {obj} cost?",
};
const std::vector<std::string> kFirstUser = {
    "Hello, what do you think of the {obj}?",
    "Hi, can you show me the {obj}?",
};
const std::vector<std::string> kRegularSystem = {
    "Sure, here is what I know about it.",
    "It is one of our most popular items.",
    "Let me check that for you.",
};
const std::vector<std::string> kBeforeUser = {
    "What's the price of that {type}?",
    "How much is that {type}?",
    "Who makes that {type}?",
};
const std::vector<std::string> kClarificationRequest = {
    "Which one do you mean?",
    "Sorry, which one are you asking about?",
    "Could you tell me which one?",
};
const std::vector<std::string> kIndividualResponse = {
    "The {color} one.",
    "I mean the {color} one.",
};
const std::vector<std::string> kRelationalResponse = {
    "The one on the {dir}.",
    "I mean the one on the {dir}.",
};
const std::vector<std::string> kHistoryResponse = {
    "The one you recommended earlier.",
    "The one you showed me.",
    "The one I asked about before.",
};
const std::vector<std::string> kUnclassifiedResponse = {
    "I'm not sure.",
    "Never mind, any of them.",
};

std::string Fill(std::string tmpl, const std::string& slot, const std::string& value) {
  const std::string key = "{" + slot + "}";
  for (auto pos = tmpl.find(key); pos != std::string::npos; pos = tmpl.find(key)) {
    tmpl.replace(pos, key.size(), value);
  }
  return tmpl;
}

struct PendingResponse {
  std::string text;
  ObjectId target = 0;
};

}  // namespace

Corpus generate_corpus(const SynthConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Corpus corpus;
  corpus.corpus_id = cfg.corpus_id;
  TagQuota quota(cfg.tag_mix);

  for (int di = 0; di < cfg.n_dialogues; ++di) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(di)};
    Rng rng(seq);

    char id_buf[32];
    std::snprintf(id_buf, sizeof id_buf, "synth-%05d", di);
    Dialogue d;
    d.dialogue_id = id_buf;
    d.domain_label = "fashion";

    const int n = Uniform(rng, cfg.turns_per_dialogue.min, cfg.turns_per_dialogue.max);
    std::vector<bool> ambiguous(static_cast<std::size_t>(n), false);
    if (cfg.ambiguity_rate > 0 && n >= 3) {
      // Eligible turns are 1..n-2 and an ambiguous turn is never followed by
      // another, so open with probability q = p' / (1 - p') where p' is the
      // target rate rescaled to the eligible turns.
      const double rate = cfg.ambiguity_rate * n / (n - 2);
      std::bernoulli_distribution open(rate / (1.0 - rate));
      for (int i = 1; i <= n - 2; ++i) {
        ambiguous[static_cast<std::size_t>(i)] =
            !ambiguous[static_cast<std::size_t>(i - 1)] && open(rng);
      }
    }

    int scene_no = 0;
    auto next_scene_id = [&] { return d.dialogue_id + "/s" + std::to_string(scene_no++); };
    Scene current = RandomScene(rng, cfg, next_scene_id());
    corpus.scenes[current.scene_id] = current;

    std::optional<PendingResponse> pending;
    for (int i = 0; i < n; ++i) {
      Turn turn;
      turn.turn_idx = i;

      if (pending) {
        turn.user_utterance = pending->text;
        turn.user_referenced_objects = {pending->target};
        turn.system_utterance =
            "Great, that one is " + std::to_string(Uniform(rng, 10, 200)) + " dollars.";
        turn.scene_id = current.scene_id;
        pending.reset();
      } else if (ambiguous[static_cast<std::size_t>(i)]) {
        const PropertyTag tag = quota.Next();
        Scene next = current;
        next.scene_id = next_scene_id();

        ObjectId target;
        if (tag == PropertyTag::kDialogueHistory) {
          target = *d.turns.back().user_referenced_objects.begin();
        } else {
          target = Pick(rng, next.objects).object_id;
        }
        PlantDistractors(rng, cfg, next, target);

        PendingResponse resp;
        resp.target = target;
        switch (tag) {
          case PropertyTag::kIndividualProperty:
            if (cfg.solvable_after_cr) PlantUniqueColor(rng, cfg, next, target);
            resp.text = Fill(Pick(rng, kIndividualResponse), "color",
                             *Attr(ById(next, target), "color"));
            break;
          case PropertyTag::kRelationalContext: {
            const bool left = Uniform(rng, 0, 1) == 0;
            if (cfg.solvable_after_cr) PlantExtreme(next, target, left);
            resp.text = Fill(Pick(rng, kRelationalResponse), "dir", left ? "left" : "right");
            break;
          }
          case PropertyTag::kDialogueHistory:
            resp.text = Pick(rng, kHistoryResponse);
            break;
          case PropertyTag::kUnclassified:
            resp.text = Pick(rng, kUnclassifiedResponse);
            break;
        }

        turn.user_utterance =
            Fill(Pick(rng, kBeforeUser), "type", *Attr(ById(next, target), "type"));
        turn.system_utterance = tag == PropertyTag::kUnclassified
                                    ? "Sorry, which one?"
                                    : Pick(rng, kClarificationRequest);
        turn.user_referenced_objects = {target};
        turn.is_ambiguous = true;
        turn.scene_id = next.scene_id;
        corpus.scenes[next.scene_id] = next;
        current = std::move(next);
        pending = std::move(resp);
      } else {
        const SceneObject& o = Pick(rng, current.objects);
        turn.user_utterance =
            Fill(Pick(rng, i == 0 ? kFirstUser : kRegularUser), "obj", Describe(o));
        turn.system_utterance = Pick(rng, kRegularSystem);
        turn.user_referenced_objects = {o.object_id};
        turn.scene_id = current.scene_id;
      }
      d.turns.push_back(std::move(turn));
    }
    corpus.dialogues.push_back(std::move(d));
  }
  return corpus;
}

}  // namespace clarify
