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

#ifndef CLARIFY_SYNTH_HPP_
#define CLARIFY_SYNTH_HPP_

// Deterministic generator of small situated shopping dialogues with
// annotated clarificational exchanges.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "clarify/corpus.hpp"
#include "clarify/tags.hpp"
#include "json.hpp"

namespace clarify {

struct IntRange {
  int min = 1;
  int max = 1;

  bool operator==(const IntRange&) const = default;
};

struct SynthConfig {
  std::string corpus_id = "synthetic";
  int n_dialogues = 1;
  IntRange turns_per_dialogue{4, 6};
  IntRange objects_per_scene{20, 34};
  std::map<std::string, std::vector<std::string>> attribute_pools;
  // Fraction of system turns that are clarification requests.
  double ambiguity_rate = 0.1;
  std::map<PropertyTag, double> tag_mix;
  // Make the After-CR referent recoverable from the Before-CR utterance plus
  // the clarification response.
  bool solvable_after_cr = true;
  // Extra same-type objects planted per exchange: 1..max_distractors.
  int max_distractors = 3;

  // Throws ConfigError for infeasible settings.
  void validate() const;

  // Keys missing from `doc` take the shipped defaults.
  static SynthConfig from_json(const nlohmann::json& doc);
  static SynthConfig load(const std::filesystem::path& path);
  static SynthConfig defaults();
  nlohmann::json to_json() const;

  bool operator==(const SynthConfig&) const = default;

 private:
  static SynthConfig FromCompleteJson(const nlohmann::json& doc);
};

Corpus generate_corpus(const SynthConfig& config, std::uint64_t seed);

}  // namespace clarify

#endif  // CLARIFY_SYNTH_HPP_
