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

#include "clarify/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "clarify/error.hpp"
#include "numeric.hpp"

namespace clarify {

using nlohmann::json;

const std::string* SceneObject::attribute(const std::string& category) const {
  auto it = attributes.find(category);
  return it == attributes.end() ? nullptr : &it->second;
}

const SceneObject* Scene::find(ObjectId id) const {
  for (const auto& o : objects) {
    if (o.object_id == id) return &o;
  }
  return nullptr;
}

const Scene* Corpus::scene(const std::string& scene_id) const {
  auto it = scenes.find(scene_id);
  return it == scenes.end() ? nullptr : &it->second;
}

const Dialogue* Corpus::dialogue(const std::string& dialogue_id) const {
  for (const auto& d : dialogues) {
    if (d.dialogue_id == dialogue_id) return &d;
  }
  return nullptr;
}

std::string to_string(const TurnKey& key) {
  return key.dialogue_id + "#" + std::to_string(key.turn_idx);
}

// ---------------------------------------------------------------------------
// Validation

std::size_t ValidationReport::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [](const auto& v) {
        return v.severity == Violation::Severity::kError;
      }));
}

ValidationReport validate_corpus(const Corpus& corpus, ValidationMode mode) {
  ValidationReport report;
  const auto soft = mode == ValidationMode::kStrict
                        ? Violation::Severity::kError
                        : Violation::Severity::kWarning;
  auto add = [&](Violation::Severity s, std::string locus, std::string msg) {
    report.violations.push_back({s, std::move(locus), std::move(msg)});
  };

  for (const auto& [key, scene] : corpus.scenes) {
    const std::string locus = "scene " + key;
    if (scene.scene_id != key) {
      add(Violation::Severity::kError, locus,
          "scene_id '" + scene.scene_id + "' does not match its key");
    }
    if (scene.objects.empty()) add(soft, locus, "scene has no objects");
    std::set<ObjectId> seen;
    for (const auto& o : scene.objects) {
      const std::string olocus = locus + " object " + std::to_string(o.object_id);
      if (!seen.insert(o.object_id).second) {
        add(Violation::Severity::kError, olocus, "duplicate object_id");
      }
      if (o.bbox && (o.bbox->width <= 0 || o.bbox->height <= 0 ||
                     o.bbox->x < 0 || o.bbox->y < 0)) {
        add(Violation::Severity::kError, olocus,
            "bbox must be non-negative with positive width and height");
      }
    }
  }

  std::set<std::string> dialogue_ids;
  for (const auto& d : corpus.dialogues) {
    const std::string locus = "dialogue " + d.dialogue_id;
    if (!dialogue_ids.insert(d.dialogue_id).second) {
      add(Violation::Severity::kError, locus, "duplicate dialogue_id");
    }
    if (d.turns.empty()) add(Violation::Severity::kError, locus, "no turns");
    for (std::size_t i = 0; i < d.turns.size(); ++i) {
      const Turn& t = d.turns[i];
      const std::string tlocus = locus + " turn " + std::to_string(t.turn_idx);
      if (t.turn_idx != static_cast<int>(i)) {
        add(Violation::Severity::kError, tlocus,
            "turn_idx does not equal its position " + std::to_string(i));
      }
      const Scene* scene = corpus.scene(t.scene_id);
      if (scene == nullptr) {
        add(soft, tlocus, "dangling scene reference '" + t.scene_id + "'");
        continue;
      }
      for (ObjectId id : t.user_referenced_objects) {
        if (scene->find(id) == nullptr) {
          add(soft, tlocus,
              "referenced object " + std::to_string(id) + " not in scene '" +
                  t.scene_id + "'");
        }
      }
    }
  }
  return report;
}

void require_valid(const ValidationReport& report) {
  const std::size_t n = report.error_count();
  if (n == 0) return;
  for (const auto& v : report.violations) {
    if (v.severity != Violation::Severity::kError) continue;
    std::string msg = v.locus + ": " + v.message;
    if (n > 1) msg += " (and " + std::to_string(n - 1) + " more violations)";
    throw ValidationError(msg);
  }
}

json validation_report_to_json(const ValidationReport& report) {
  json out = json::object();
  out["n_errors"] = report.error_count();
  out["n_warnings"] = report.violations.size() - report.error_count();
  json items = json::array();
  for (const auto& v : report.violations) {
    items.push_back({{"severity", v.severity == Violation::Severity::kError
                                      ? "error"
                                      : "warning"},
                     {"locus", v.locus},
                     {"message", v.message}});
  }
  out["violations"] = std::move(items);
  return out;
}

// ---------------------------------------------------------------------------
// Canonical format

namespace {

json ObjectToJson(const SceneObject& o) {
  json j = {{"object_id", o.object_id}, {"attributes", o.attributes}};
  if (o.bbox) {
    j["bbox"] = {o.bbox->x, o.bbox->y, o.bbox->width, o.bbox->height};
  }
  if (o.position) j["position"] = *o.position;
  return j;
}

json TurnToJson(const Turn& t) {
  return {{"turn_idx", t.turn_idx},
          {"user_utterance", t.user_utterance},
          {"system_utterance", t.system_utterance},
          {"user_referenced_objects", t.user_referenced_objects},
          {"is_ambiguous", t.is_ambiguous},
          {"scene_id", t.scene_id}};
}

// Field accessors that report where a schema violation happened.
class Reader {
 public:
  Reader(const json& j, std::string locus) : j_(j), locus_(std::move(locus)) {
    if (!j_.is_object()) Fail("", "expected an object");
  }

  const json& Get(const char* field) const {
    auto it = j_.find(field);
    if (it == j_.end()) Fail(field, "missing");
    return *it;
  }

  const json* Optional(const char* field) const {
    auto it = j_.find(field);
    if (it == j_.end()) return nullptr;
    if (it->is_null()) Fail(field, "null is not allowed; omit the field");
    return &*it;
  }

  std::string String(const char* field) const {
    const json& v = Get(field);
    if (!v.is_string()) Fail(field, "expected a string");
    return v.get<std::string>();
  }

  int Int(const char* field) const { return AsInt(Get(field), field); }

  bool Bool(const char* field) const {
    const json& v = Get(field);
    if (!v.is_boolean()) Fail(field, "expected a boolean");
    return v.get<bool>();
  }

  const json& Array(const char* field) const {
    const json& v = Get(field);
    if (!v.is_array()) Fail(field, "expected an array");
    return v;
  }

  int AsInt(const json& v, const char* field) const {
    if (!v.is_number_integer()) Fail(field, "expected an integer");
    return v.get<int>();
  }

  double AsNumber(const json& v, const char* field) const {
    if (!v.is_number()) Fail(field, "expected a number");
    return v.get<double>();
  }

  [[noreturn]] void Fail(const std::string& field,
                         const std::string& what) const {
    std::string msg = locus_;
    if (!field.empty()) msg += ": field '" + field + "'";
    throw FormatError(msg + ": " + what);
  }

 private:
  const json& j_;
  std::string locus_;
};

SceneObject ObjectFromJson(const json& j, const std::string& locus) {
  Reader r(j, locus);
  SceneObject o;
  o.object_id = r.Int("object_id");
  const std::string olocus = locus + " object " + std::to_string(o.object_id);
  Reader ro(j, olocus);
  const json& attrs = ro.Get("attributes");
  if (!attrs.is_object()) ro.Fail("attributes", "expected an object");
  for (const auto& [k, v] : attrs.items()) {
    if (!v.is_string()) ro.Fail("attributes." + k, "expected a string");
    o.attributes.emplace(k, v.get<std::string>());
  }
  if (const json* b = ro.Optional("bbox")) {
    if (!b->is_array() || b->size() != 4) ro.Fail("bbox", "expected 4 numbers");
    o.bbox = BoundingBox{ro.AsNumber((*b)[0], "bbox"),
                         ro.AsNumber((*b)[1], "bbox"),
                         ro.AsNumber((*b)[2], "bbox"),
                         ro.AsNumber((*b)[3], "bbox")};
  }
  if (const json* p = ro.Optional("position")) {
    if (!p->is_array() || p->size() != 3) {
      ro.Fail("position", "expected 3 numbers");
    }
    o.position = std::array<double, 3>{ro.AsNumber((*p)[0], "position"),
                                       ro.AsNumber((*p)[1], "position"),
                                       ro.AsNumber((*p)[2], "position")};
  }
  return o;
}

Turn TurnFromJson(const json& j, const std::string& dialogue_locus,
                  std::size_t position) {
  const std::string locus =
      dialogue_locus + " turn " +
      (j.is_object() && j.contains("turn_idx") && j["turn_idx"].is_number()
           ? j["turn_idx"].dump()
           : std::to_string(position));
  Reader r(j, locus);
  Turn t;
  t.turn_idx = r.Int("turn_idx");
  t.user_utterance = r.String("user_utterance");
  t.system_utterance = r.String("system_utterance");
  for (const auto& id : r.Array("user_referenced_objects")) {
    t.user_referenced_objects.insert(r.AsInt(id, "user_referenced_objects"));
  }
  t.is_ambiguous = r.Bool("is_ambiguous");
  t.scene_id = r.String("scene_id");
  return t;
}

}  // namespace

json corpus_to_json(const Corpus& corpus) {
  json scenes = json::object();
  for (const auto& [id, scene] : corpus.scenes) {
    json objects = json::array();
    for (const auto& o : scene.objects) objects.push_back(ObjectToJson(o));
    scenes[id] = {{"scene_id", scene.scene_id}, {"objects", std::move(objects)}};
  }
  json dialogues = json::array();
  for (const auto& d : corpus.dialogues) {
    json turns = json::array();
    for (const auto& t : d.turns) turns.push_back(TurnToJson(t));
    json jd = {{"dialogue_id", d.dialogue_id}, {"turns", std::move(turns)}};
    if (d.domain_label) jd["domain_label"] = *d.domain_label;
    dialogues.push_back(std::move(jd));
  }
  return {{"corpus_id", corpus.corpus_id},
          {"scenes", std::move(scenes)},
          {"dialogues", std::move(dialogues)}};
}

Corpus corpus_from_json(const json& doc) {
  Reader top(doc, "corpus");
  Corpus corpus;
  corpus.corpus_id = top.String("corpus_id");

  const json& scenes = top.Get("scenes");
  if (!scenes.is_object()) top.Fail("scenes", "expected an object");
  for (const auto& [key, js] : scenes.items()) {
    const std::string locus = "scene " + key;
    Reader r(js, locus);
    Scene scene;
    scene.scene_id = r.String("scene_id");
    for (const auto& jo : r.Array("objects")) {
      scene.objects.push_back(ObjectFromJson(jo, locus));
    }
    corpus.scenes.emplace(key, std::move(scene));
  }

  for (const auto& jd : top.Array("dialogues")) {
    const std::string provisional =
        jd.is_object() && jd.contains("dialogue_id") && jd["dialogue_id"].is_string()
            ? jd["dialogue_id"].get<std::string>()
            : std::to_string(corpus.dialogues.size());
    const std::string locus = "dialogue " + provisional;
    Reader r(jd, locus);
    Dialogue d;
    d.dialogue_id = r.String("dialogue_id");
    std::size_t pos = 0;
    for (const auto& jt : r.Array("turns")) {
      d.turns.push_back(TurnFromJson(jt, locus, pos++));
    }
    if (const json* dl = r.Optional("domain_label")) {
      if (!dl->is_string()) r.Fail("domain_label", "expected a string");
      d.domain_label = dl->get<std::string>();
    }
    corpus.dialogues.push_back(std::move(d));
  }
  return corpus;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return ss.str();
}

json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

Corpus load_canonical_corpus(const std::filesystem::path& path,
                             ValidationMode mode) {
  Corpus corpus = corpus_from_json(read_json_file(path));
  require_valid(validate_corpus(corpus, mode));
  return corpus;
}

void save_canonical_corpus(const Corpus& corpus,
                           const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << corpus_to_json(corpus).dump(2) << '\n';
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// Statistics

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats s;
  s.n_dialogues = corpus.dialogues.size();
  s.n_scenes = corpus.scenes.size();

  std::vector<double> turn_counts;
  std::vector<double> unique_refs;
  for (const auto& d : corpus.dialogues) {
    turn_counts.push_back(static_cast<double>(d.turns.size()));
    s.n_turns += d.turns.size();
    ObjectSet referenced;
    for (const auto& t : d.turns) {
      referenced.insert(t.user_referenced_objects.begin(),
                        t.user_referenced_objects.end());
    }
    unique_refs.push_back(static_cast<double>(referenced.size()));
  }
  std::vector<double> object_counts;
  for (const auto& [id, scene] : corpus.scenes) {
    object_counts.push_back(static_cast<double>(scene.objects.size()));
    s.max_scene_objects = std::max(s.max_scene_objects, scene.objects.size());
  }

  s.mean_turn_pairs = internal::Mean(turn_counts);
  s.sd_turn_pairs = internal::PopulationSd(turn_counts);
  s.mean_scene_objects = internal::Mean(object_counts);
  s.mean_unique_referenced_per_dialogue = internal::Mean(unique_refs);
  s.sd_unique_referenced = internal::PopulationSd(unique_refs);
  return s;
}

json corpus_stats_to_json(const CorpusStats& s) {
  return {{"n_dialogues", s.n_dialogues},
          {"n_turns", s.n_turns},
          {"n_scenes", s.n_scenes},
          {"mean_turn_pairs", s.mean_turn_pairs},
          {"sd_turn_pairs", s.sd_turn_pairs},
          {"mean_scene_objects", s.mean_scene_objects},
          {"max_scene_objects", s.max_scene_objects},
          {"mean_unique_referenced_per_dialogue",
           s.mean_unique_referenced_per_dialogue},
          {"sd_unique_referenced", s.sd_unique_referenced},
          {"sd_convention", "population"}};
}

}  // namespace clarify
