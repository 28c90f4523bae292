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

#include "clarify/metrics.hpp"

#include <cmath>
#include <map>
#include <vector>

#include "clarify/error.hpp"
#include "numeric.hpp"

namespace clarify {

std::string_view aggregation_name(Aggregation a) {
  return a == Aggregation::kMicro ? "micro" : "macro";
}

TurnScore score_counts(std::int64_t tp, std::int64_t fp, std::int64_t fn,
                       F1Mode mode) {
  TurnScore s{tp, fp, fn, 0, 0, 0};
  if (tp + fp > 0) {
    s.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  } else {
    s.precision = fn == 0 ? 1.0 : 0.0;
  }
  if (tp + fn > 0) {
    s.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  } else {
    s.recall = fp == 0 ? 1.0 : 0.0;
  }
  const double sum = s.precision + s.recall;
  if (mode == F1Mode::kArithmetic) {
    s.f1 = sum / 2.0;
  } else {
    s.f1 = sum > 0 ? 2.0 * s.precision * s.recall / sum : 0.0;
  }
  return s;
}

TurnScore turn_object_f1(const ObjectSet& gold, const ObjectSet& pred,
                         F1Mode mode) {
  std::int64_t tp = 0;
  for (ObjectId id : pred) tp += gold.contains(id) ? 1 : 0;
  const auto fp = static_cast<std::int64_t>(pred.size()) - tp;
  const auto fn = static_cast<std::int64_t>(gold.size()) - tp;
  return score_counts(tp, fp, fn, mode);
}

AggregateScore aggregate(std::span<const TurnScore> scores,
                         const AggregateOptions& options) {
  AggregateScore a;
  a.n_turns = scores.size();
  if (scores.empty()) return a;

  std::vector<double> per_turn;
  per_turn.reserve(scores.size());
  for (const auto& s : scores) {
    a.tp += s.tp;
    a.fp += s.fp;
    a.fn += s.fn;
    if (options.skip_empty && s.both_empty()) continue;
    per_turn.push_back(s.f1);
  }
  const TurnScore pooled = score_counts(a.tp, a.fp, a.fn, options.f1_mode);
  a.precision_micro = pooled.precision;
  a.recall_micro = pooled.recall;
  a.f1_micro = pooled.f1;

  a.n_macro = per_turn.size();
  a.f1_macro_mean = internal::Mean(per_turn);
  if (per_turn.size() > 1) {
    a.f1_macro_se = internal::SampleSd(per_turn) /
                    std::sqrt(static_cast<double>(per_turn.size()));
  }
  return a;
}

std::optional<double> relative_delta_pct(double before, double after) {
  if (before == 0.0) return std::nullopt;
  return (after - before) / before * 100.0;
}

DeltaResult relative_delta(const AggregateScore& before,
                           const AggregateScore& after,
                           Aggregation aggregation) {
  DeltaResult d{before, after, aggregation, std::nullopt};
  if (before.n_turns == 0 || after.n_turns == 0) return d;
  d.delta_pct = relative_delta_pct(before.f1(aggregation), after.f1(aggregation));
  return d;
}

AmbiguityStats candidate_object_stats(const Corpus& corpus,
                                      const std::set<TurnKey>& subset,
                                      const std::string& attribute) {
  std::set<std::string> available;
  for (const auto& [id, scene] : corpus.scenes) {
    for (const auto& o : scene.objects) {
      for (const auto& [k, v] : o.attributes) available.insert(k);
    }
  }
  if (!available.contains(attribute)) {
    std::string names;
    for (const auto& n : available) names += (names.empty() ? "" : ", ") + n;
    throw ConfigError("unknown attribute category '" + attribute +
                      "'; available: " + (names.empty() ? "(none)" : names));
  }

  std::map<std::string, const Dialogue*> dialogues;
  for (const auto& d : corpus.dialogues) dialogues.emplace(d.dialogue_id, &d);

  std::vector<double> observations;
  for (const TurnKey& key : subset) {
    auto it = dialogues.find(key.dialogue_id);
    if (it == dialogues.end() || key.turn_idx < 0 ||
        key.turn_idx >= static_cast<int>(it->second->turns.size())) {
      throw IntegrityError("turn " + to_string(key) + " not in corpus");
    }
    const Turn& turn = it->second->turns[key.turn_idx];
    const Scene* scene = corpus.scene(turn.scene_id);
    if (scene == nullptr) continue;
    for (ObjectId id : turn.user_referenced_objects) {
      const SceneObject* target = scene->find(id);
      if (target == nullptr) continue;
      const std::string* value = target->attribute(attribute);
      if (value == nullptr) continue;
      std::size_t count = 0;
      for (const auto& o : scene->objects) {
        const std::string* v = o.attribute(attribute);
        if (v != nullptr && *v == *value) ++count;
      }
      observations.push_back(static_cast<double>(count));
    }
  }

  AmbiguityStats s;
  s.attribute = attribute;
  s.n_observations = observations.size();
  s.mean_candidates = internal::Mean(observations);
  s.sd_candidates = internal::PopulationSd(observations);
  return s;
}

}  // namespace clarify
