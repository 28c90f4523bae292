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

#include <algorithm>
#include <set>

#include "clarify/eval.hpp"

namespace clarify {

using nlohmann::json;

json corpus_report(const Corpus& corpus,
                   const std::vector<ClarificationExchange>& ces) {
  const ExtractionStats ex = extraction_stats(corpus, ces);
  json out = {{"corpus_id", corpus.corpus_id},
              {"corpus", corpus_stats_to_json(corpus_stats(corpus))},
              {"extraction",
               {{"n_ces", ex.n_ces},
                {"n_truncated", ex.n_truncated},
                {"n_system_turns", ex.n_system_turns},
                {"cr_rate", ex.cr_rate},
                {"cr_rate_excluding_truncated", ex.cr_rate_excluding_truncated}}}};

  std::set<std::string> attributes;
  for (const auto& [id, scene] : corpus.scenes) {
    for (const auto& o : scene.objects) {
      for (const auto& [k, v] : o.attributes) attributes.insert(k);
    }
  }

  std::vector<std::pair<Subset, std::set<TurnKey>>> subsets;
  {
    std::set<TurnKey> all;
    for (const auto& d : corpus.dialogues) {
      for (const auto& t : d.turns) all.insert({d.dialogue_id, t.turn_idx});
    }
    subsets.emplace_back(Subset::kAllTurns, std::move(all));
    std::set<TurnKey> cr;
    for (const auto& ce : ces) cr.insert(ce.before_key());
    subsets.emplace_back(Subset::kCRTurns, std::move(cr));
  }
  const bool tagged = !ces.empty() && std::all_of(ces.begin(), ces.end(), [](const auto& ce) {
    return ce.tags.has_value();
  });
  if (tagged) {
    for (auto [subset, tag] : {std::pair{Subset::kIndividualProperty, PropertyTag::kIndividualProperty},
                               std::pair{Subset::kDialogueHistory, PropertyTag::kDialogueHistory},
                               std::pair{Subset::kRelationalContext, PropertyTag::kRelationalContext},
                               std::pair{Subset::kUnclassified, PropertyTag::kUnclassified}}) {
      std::set<TurnKey> keys;
      for (const auto& ce : ces) {
        if (ce.tags->has(tag)) keys.insert(ce.before_key());
      }
      subsets.emplace_back(subset, std::move(keys));
    }
    json tag_counts = json::object();
    for (PropertyTag t : kAllTags) {
      tag_counts[std::string(tag_name(t))] = std::count_if(
          ces.begin(), ces.end(), [t](const auto& ce) { return ce.tags->has(t); });
    }
    out["tag_counts"] = std::move(tag_counts);
  }

  json candidates = json::array();
  for (const auto& [subset, keys] : subsets) {
    json row = {{"subset", subset_name(subset)}, {"n_turns", keys.size()}};
    for (const char* attr : {"type", "color"}) {
      if (!attributes.contains(attr)) continue;
      const AmbiguityStats s = candidate_object_stats(corpus, keys, attr);
      row[attr] = {{"mean_candidates", s.mean_candidates},
                   {"sd_candidates", s.sd_candidates},
                   {"n_observations", s.n_observations}};
    }
    candidates.push_back(std::move(row));
  }
  out["candidate_objects"] = std::move(candidates);
  return out;
}

}  // namespace clarify
