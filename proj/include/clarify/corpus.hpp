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

#ifndef CLARIFY_CORPUS_HPP_
#define CLARIFY_CORPUS_HPP_

// In-memory corpus of situated dialogues: scenes with annotated objects and
// dialogues made of user/system utterance pairs carrying gold coreference
// sets and ambiguity flags.

#include <array>
#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace clarify {

using ObjectId = int;
using ObjectSet = std::set<ObjectId>;
using AttributeMap = std::map<std::string, std::string>;

struct BoundingBox {
  double x = 0;
  double y = 0;
  double width = 0;
  double height = 0;

  bool operator==(const BoundingBox&) const = default;
};

struct SceneObject {
  ObjectId object_id = 0;
  AttributeMap attributes;
  std::optional<BoundingBox> bbox;
  std::optional<std::array<double, 3>> position;

  // Attribute value for `category`, or nullptr.
  const std::string* attribute(const std::string& category) const;

  bool operator==(const SceneObject&) const = default;
};

struct Scene {
  std::string scene_id;
  std::vector<SceneObject> objects;

  const SceneObject* find(ObjectId id) const;

  bool operator==(const Scene&) const = default;
};

// One user/assistant utterance pair. Ambiguity and the gold object set
// belong to the user side.
struct Turn {
  int turn_idx = 0;
  std::string user_utterance;
  std::string system_utterance;
  ObjectSet user_referenced_objects;
  bool is_ambiguous = false;
  std::string scene_id;

  bool operator==(const Turn&) const = default;
};

struct Dialogue {
  std::string dialogue_id;
  std::vector<Turn> turns;
  std::optional<std::string> domain_label;

  bool operator==(const Dialogue&) const = default;
};

struct Corpus {
  std::string corpus_id;
  std::map<std::string, Scene> scenes;
  std::vector<Dialogue> dialogues;

  const Scene* scene(const std::string& scene_id) const;
  const Dialogue* dialogue(const std::string& dialogue_id) const;

  bool operator==(const Corpus&) const = default;
};

// Identifies a user turn across the corpus.
struct TurnKey {
  std::string dialogue_id;
  int turn_idx = 0;

  auto operator<=>(const TurnKey&) const = default;
};

std::string to_string(const TurnKey& key);

enum class ValidationMode { kStrict, kLenient };

struct Violation {
  enum class Severity { kError, kWarning };

  Severity severity = Severity::kError;
  std::string locus;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  std::size_t error_count() const;
  bool ok() const { return error_count() == 0; }
};

// Checks every corpus invariant. Lenient mode downgrades dangling scene
// references, out-of-scene object ids and empty scenes to warnings.
ValidationReport validate_corpus(const Corpus& corpus, ValidationMode mode);

// Throws ValidationError summarising the report when it has errors.
void require_valid(const ValidationReport& report);

nlohmann::json validation_report_to_json(const ValidationReport& report);

// Canonical on-disk format.
nlohmann::json corpus_to_json(const Corpus& corpus);
Corpus corpus_from_json(const nlohmann::json& doc);
Corpus load_canonical_corpus(const std::filesystem::path& path,
                             ValidationMode mode = ValidationMode::kStrict);
void save_canonical_corpus(const Corpus& corpus,
                           const std::filesystem::path& path);

// SIMMC 2.0 distribution layout: one dialogue json, a directory of
// `<scene>_scene.json` files and prefab metadata files.
Corpus load_simmc_corpus(const std::filesystem::path& dialogue_file,
                         const std::filesystem::path& scene_dir,
                         const std::vector<std::filesystem::path>& metadata_files,
                         ValidationMode mode = ValidationMode::kStrict);

// Standard deviations are population (divide by n).
struct CorpusStats {
  std::size_t n_dialogues = 0;
  std::size_t n_turns = 0;
  std::size_t n_scenes = 0;
  double mean_turn_pairs = 0;
  double sd_turn_pairs = 0;
  double mean_scene_objects = 0;
  std::size_t max_scene_objects = 0;
  double mean_unique_referenced_per_dialogue = 0;
  double sd_unique_referenced = 0;
};

CorpusStats corpus_stats(const Corpus& corpus);
nlohmann::json corpus_stats_to_json(const CorpusStats& stats);

// Reads a whole file; throws IoError.
std::string read_file(const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace clarify

#endif  // CLARIFY_CORPUS_HPP_
