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

// Adapter for the public SIMMC 2.0 distribution.
//
//   dialogue file:  {"dialogue_data": [{"dialogue_idx", "domain", "scene_ids",
//                     "dialogue": [{"turn_idx", "transcript",
//                     "system_transcript", "transcript_annotated": {
//                     "act_attributes": {"objects": [...]},
//                     "disambiguation_label"?}}]}]}
//   scene files:    <scene_dir>/<scene_id>_scene.json with
//                   {"scenes": [{"objects": [{"index", "prefab_path",
//                   "bbox": [x, y, h, w], "position"?}]}]}
//   metadata files: {prefab_path: {"type", "color", "assetType", ...}}

#include <algorithm>
#include <map>

#include "clarify/corpus.hpp"
#include "clarify/error.hpp"

namespace clarify {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void Unmapped(const std::string& where, const std::string& field,
                           const std::string& what) {
  throw FormatError(where + ": unmapped distribution field '" + field +
                    "': " + what);
}

const json& Field(const json& j, const char* field, const std::string& where) {
  if (!j.is_object()) Unmapped(where, field, "parent is not an object");
  auto it = j.find(field);
  if (it == j.end()) Unmapped(where, field, "missing");
  return *it;
}

std::string AttributeString(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (const auto& e : v) {
      if (!out.empty()) out += ", ";
      out += e.is_string() ? e.get<std::string>() : e.dump();
    }
    return out;
  }
  return v.dump();
}

using Metadata = std::map<std::string, AttributeMap>;

Metadata LoadMetadata(const std::vector<fs::path>& files) {
  Metadata meta;
  for (const auto& file : files) {
    const json doc = read_json_file(file);
    if (!doc.is_object()) {
      throw FormatError(file.string() + ": expected an object of prefabs");
    }
    for (const auto& [prefab, record] : doc.items()) {
      if (!record.is_object()) {
        Unmapped(file.string(), prefab, "expected an attribute record");
      }
      AttributeMap attrs;
      for (const auto& [k, v] : record.items()) {
        if (v.is_null()) continue;
        attrs[k] = AttributeString(v);
      }
      // "jacket_hanging" -> state "hanging".
      if (auto it = attrs.find("assetType"); it != attrs.end()) {
        if (auto us = it->second.rfind('_'); us != std::string::npos) {
          attrs.try_emplace("state", it->second.substr(us + 1));
        }
      }
      if (!attrs.contains("type")) {
        Unmapped(file.string() + " prefab " + prefab, "type", "missing");
      }
      meta[prefab] = std::move(attrs);
    }
  }
  return meta;
}

std::optional<fs::path> SceneFile(const fs::path& dir, const std::string& id) {
  fs::path p = dir / (id + "_scene.json");
  if (fs::exists(p)) return p;
  if (id.starts_with("m_")) {
    p = dir / (id.substr(2) + "_scene.json");
    if (fs::exists(p)) return p;
  }
  return std::nullopt;
}

Scene LoadScene(const fs::path& file, const std::string& scene_id,
                const Metadata& meta) {
  const std::string where = file.string();
  const json doc = read_json_file(file);
  const json& scenes = Field(doc, "scenes", where);
  if (!scenes.is_array() || scenes.empty()) {
    Unmapped(where, "scenes", "expected a non-empty array");
  }
  const json& objects = Field(scenes[0], "objects", where);
  if (!objects.is_array()) Unmapped(where, "objects", "expected an array");

  Scene scene;
  scene.scene_id = scene_id;
  for (const auto& jo : objects) {
    const json& index = Field(jo, "index", where);
    if (!index.is_number_integer()) Unmapped(where, "index", "not an integer");
    SceneObject o;
    o.object_id = index.get<int>();
    const std::string owhere = where + " object " + std::to_string(o.object_id);

    const json& prefab = Field(jo, "prefab_path", owhere);
    if (!prefab.is_string()) Unmapped(owhere, "prefab_path", "not a string");
    auto m = meta.find(prefab.get<std::string>());
    if (m == meta.end()) {
      Unmapped(owhere, "prefab_path",
               "'" + prefab.get<std::string>() + "' not found in metadata");
    }
    o.attributes = m->second;

    if (auto b = jo.find("bbox"); b != jo.end()) {
      if (!b->is_array() || b->size() != 4) {
        Unmapped(owhere, "bbox", "expected 4 numbers");
      }
      // Distribution order is [x, y, height, width]. Degenerate boxes are
      // dropped rather than failing the whole scene.
      const double x = (*b)[0].get<double>();
      const double y = (*b)[1].get<double>();
      const double h = (*b)[2].get<double>();
      const double w = (*b)[3].get<double>();
      if (w > 0 && h > 0 && x >= 0 && y >= 0) o.bbox = BoundingBox{x, y, w, h};
    }
    if (auto p = jo.find("position"); p != jo.end() && p->is_array() &&
                                      p->size() == 3) {
      o.position = std::array<double, 3>{(*p)[0].get<double>(),
                                         (*p)[1].get<double>(),
                                         (*p)[2].get<double>()};
    }
    scene.objects.push_back(std::move(o));
  }
  return scene;
}

}  // namespace

Corpus load_simmc_corpus(const fs::path& dialogue_file, const fs::path& scene_dir,
                         const std::vector<fs::path>& metadata_files,
                         ValidationMode mode) {
  const Metadata meta = LoadMetadata(metadata_files);
  const json doc = read_json_file(dialogue_file);
  const std::string where = dialogue_file.string();

  Corpus corpus;
  corpus.corpus_id = dialogue_file.stem().string();

  const json& data = Field(doc, "dialogue_data", where);
  if (!data.is_array()) Unmapped(where, "dialogue_data", "expected an array");

  for (const auto& jd : data) {
    const json& idx = Field(jd, "dialogue_idx", where);
    if (!idx.is_number_integer()) {
      Unmapped(where, "dialogue_idx", "not an integer");
    }
    Dialogue d;
    d.dialogue_id = std::to_string(idx.get<long long>());
    const std::string dwhere = where + " dialogue " + d.dialogue_id;
    if (auto dom = jd.find("domain"); dom != jd.end() && dom->is_string()) {
      d.domain_label = dom->get<std::string>();
    }

    // turn index -> scene id; a turn uses the latest assignment at or
    // before it.
    std::map<int, std::string> scene_assignments;
    const json& scene_ids = Field(jd, "scene_ids", dwhere);
    if (!scene_ids.is_object()) Unmapped(dwhere, "scene_ids", "not an object");
    for (const auto& [k, v] : scene_ids.items()) {
      if (!v.is_string()) Unmapped(dwhere, "scene_ids." + k, "not a string");
      try {
        scene_assignments[std::stoi(k)] = v.get<std::string>();
      } catch (const std::exception&) {
        Unmapped(dwhere, "scene_ids." + k, "key is not a turn index");
      }
    }

    const json& turns = Field(jd, "dialogue", dwhere);
    if (!turns.is_array()) Unmapped(dwhere, "dialogue", "expected an array");
    for (std::size_t i = 0; i < turns.size(); ++i) {
      const json& jt = turns[i];
      const std::string twhere = dwhere + " turn " + std::to_string(i);
      Turn t;
      const json& ti = Field(jt, "turn_idx", twhere);
      if (!ti.is_number_integer()) Unmapped(twhere, "turn_idx", "not an integer");
      t.turn_idx = ti.get<int>();
      const json& user = Field(jt, "transcript", twhere);
      const json& sys = Field(jt, "system_transcript", twhere);
      if (!user.is_string()) Unmapped(twhere, "transcript", "not a string");
      if (!sys.is_string()) Unmapped(twhere, "system_transcript", "not a string");
      t.user_utterance = user.get<std::string>();
      t.system_utterance = sys.get<std::string>();

      const json& ann = Field(jt, "transcript_annotated", twhere);
      const json& acts = Field(ann, "act_attributes", twhere);
      const json& objects = Field(acts, "objects", twhere);
      if (!objects.is_array()) Unmapped(twhere, "objects", "expected an array");
      for (const auto& id : objects) {
        if (!id.is_number_integer()) Unmapped(twhere, "objects", "not an integer");
        t.user_referenced_objects.insert(id.get<int>());
      }
      if (auto dl = ann.find("disambiguation_label"); dl != ann.end()) {
        if (!dl->is_number_integer()) {
          Unmapped(twhere, "disambiguation_label", "not an integer");
        }
        t.is_ambiguous = dl->get<int>() == 1;
      }

      auto it = scene_assignments.upper_bound(t.turn_idx);
      if (it != scene_assignments.begin()) t.scene_id = std::prev(it)->second;
      d.turns.push_back(std::move(t));
    }
    corpus.dialogues.push_back(std::move(d));
  }

  // Load every referenced scene once; missing files surface as dangling
  // references during validation.
  for (const auto& d : corpus.dialogues) {
    for (const auto& t : d.turns) {
      if (t.scene_id.empty() || corpus.scenes.contains(t.scene_id)) continue;
      if (auto file = SceneFile(scene_dir, t.scene_id)) {
        corpus.scenes.emplace(t.scene_id, LoadScene(*file, t.scene_id, meta));
      }
    }
  }

  require_valid(validate_corpus(corpus, mode));
  return corpus;
}

}  // namespace clarify
