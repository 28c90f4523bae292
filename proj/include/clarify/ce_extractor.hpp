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

#ifndef CLARIFY_CE_EXTRACTOR_HPP_
#define CLARIFY_CE_EXTRACTOR_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "clarify/corpus.hpp"
#include "clarify/tags.hpp"
#include "json.hpp"

namespace clarify {

// An ambiguous user turn, the system clarification request answering it, and
// the user's following turn (absent when the dialogue ends).
struct ClarificationExchange {
  std::string dialogue_id;
  int before_turn_idx = 0;
  std::optional<int> after_turn_idx;
  std::string cr_text;
  std::optional<std::string> response_text;
  std::optional<TagSet> tags;  // filled by the tagger

  bool truncated() const { return !after_turn_idx.has_value(); }
  TurnKey before_key() const { return {dialogue_id, before_turn_idx}; }
  std::optional<TurnKey> after_key() const;

  bool operator==(const ClarificationExchange&) const = default;
};

struct ExtractionStats {
  std::size_t n_ces = 0;
  std::size_t n_truncated = 0;
  std::size_t n_system_turns = 0;
  // CRs over all system turns, counting truncated exchanges.
  double cr_rate = 0;
  // Same, without truncated exchanges.
  double cr_rate_excluding_truncated = 0;
};

struct Extraction {
  std::vector<ClarificationExchange> ces;
  ExtractionStats stats;
};

// One exchange per ambiguous user turn, ordered by (dialogue_id,
// before_turn_idx).
Extraction extract_ces(const Corpus& corpus);

ExtractionStats extraction_stats(const Corpus& corpus,
                                 const std::vector<ClarificationExchange>& ces);

enum class CEPhase { kBeforeCR, kCR, kAfterCR, kOther };

std::string_view phase_name(CEPhase phase);

struct TurnPhases {
  std::set<CEPhase> user;
  std::set<CEPhase> system;
};

// Phase labels for every turn of the corpus. A user turn closing one exchange
// and opening the next carries both kAfterCR and kBeforeCR. Throws
// IntegrityError when an exchange points outside its dialogue.
std::map<TurnKey, TurnPhases> label_turns(
    const Corpus& corpus, const std::vector<ClarificationExchange>& ces);

// Checks that every exchange matches the corpus it claims to come from.
void check_ces_against(const Corpus& corpus,
                       const std::vector<ClarificationExchange>& ces);

nlohmann::json ces_to_json(const std::vector<ClarificationExchange>& ces);
std::vector<ClarificationExchange> ces_from_json(const nlohmann::json& doc);
std::vector<ClarificationExchange> load_ces(const std::filesystem::path& path);

}  // namespace clarify

#endif  // CLARIFY_CE_EXTRACTOR_HPP_
