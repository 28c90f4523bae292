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

#include "clarify/error.hpp"
#include "clarify/eval.hpp"
#include "parallel.hpp"

namespace clarify {

std::string_view subset_name(Subset s) {
  switch (s) {
    case Subset::kAllTurns: return "AllTurns";
    case Subset::kCRTurns: return "CRTurns";
    case Subset::kIndividualProperty: return "IndividualProperty";
    case Subset::kDialogueHistory: return "DialogueHistory";
    case Subset::kRelationalContext: return "RelationalContext";
    case Subset::kUnclassified: return "Unclassified";
  }
  return "AllTurns";
}

std::string_view subset_display_name(Subset s) {
  switch (s) {
    case Subset::kAllTurns: return "All Turns";
    case Subset::kCRTurns: return "CR Turns";
    case Subset::kIndividualProperty: return "Individual Property";
    case Subset::kDialogueHistory: return "Dialogue History";
    case Subset::kRelationalContext: return "Relational Context";
    case Subset::kUnclassified: return "Unclassified";
  }
  return "All Turns";
}

const ReportRow* EvalReport::row(Subset s) const {
  for (const auto& r : rows) {
    if (r.subset == s) return &r;
  }
  return nullptr;
}

namespace {

PropertyTag TagOf(Subset s) {
  switch (s) {
    case Subset::kDialogueHistory: return PropertyTag::kDialogueHistory;
    case Subset::kRelationalContext: return PropertyTag::kRelationalContext;
    case Subset::kUnclassified: return PropertyTag::kUnclassified;
    default: return PropertyTag::kIndividualProperty;
  }
}

}  // namespace

EvalReport evaluate(const Corpus& corpus, const PredictionSet& preds,
                    const std::vector<ClarificationExchange>& ces_in,
                    const EvalOptions& options) {
  check_ces_against(corpus, ces_in);
  std::vector<const ClarificationExchange*> ces;
  for (const auto& ce : ces_in) {
    if (!ce.tags) {
      throw IntegrityError("exchange " + to_string(ce.before_key()) +
                           " has no tags; tag the exchanges first");
    }
    ces.push_back(&ce);
  }
  std::sort(ces.begin(), ces.end(), [](const auto* a, const auto* b) {
    return a->before_key() < b->before_key();
  });

  // Prediction coverage.
  std::set<TurnKey> user_turns;
  for (const auto& d : corpus.dialogues) {
    for (const auto& t : d.turns) user_turns.insert({d.dialogue_id, t.turn_idx});
  }
  if (options.mode == ValidationMode::kStrict) {
    for (const auto& [key, objs] : preds.predictions) {
      if (!user_turns.contains(key)) {
        throw ValidationError("prediction for unknown turn " + to_string(key));
      }
    }
    for (const auto& key : user_turns) {
      if (!preds.predictions.contains(key)) {
        throw ValidationError("missing prediction for turn " + to_string(key) +
                              " (use lenient mode to score it as empty)");
      }
    }
  }

  // Per-turn scores, computed per dialogue.
  const auto& dialogues = corpus.dialogues;
  std::vector<std::vector<TurnScore>> per_dialogue(dialogues.size());
  internal::ParallelFor(dialogues.size(), options.jobs, [&](std::size_t di) {
    const Dialogue& d = dialogues[di];
    static const ObjectSet kEmpty;
    for (const auto& t : d.turns) {
      auto it = preds.predictions.find({d.dialogue_id, t.turn_idx});
      const ObjectSet& pred = it == preds.predictions.end() ? kEmpty : it->second;
      per_dialogue[di].push_back(
          turn_object_f1(t.user_referenced_objects, pred, options.scoring.f1_mode));
    }
  });
  std::map<TurnKey, TurnScore> scores;
  for (std::size_t di = 0; di < dialogues.size(); ++di) {
    for (std::size_t i = 0; i < dialogues[di].turns.size(); ++i) {
      scores.emplace(TurnKey{dialogues[di].dialogue_id, dialogues[di].turns[i].turn_idx},
                     per_dialogue[di][i]);
    }
  }

  EvalReport report;
  report.model_name = preds.model_name;
  report.aggregation = options.aggregation;
  report.f1_mode = options.scoring.f1_mode;
  report.skip_empty = options.scoring.skip_empty;
  report.all_turns_complement = options.all_turns_complement;

  {
    std::set<TurnKey> in_ce;
    if (options.all_turns_complement) {
      for (const auto* ce : ces) {
        in_ce.insert(ce->before_key());
        if (auto a = ce->after_key()) in_ce.insert(*a);
      }
    }
    std::vector<TurnScore> all;
    for (const auto& [key, s] : scores) {
      if (!in_ce.contains(key)) all.push_back(s);
    }
    ReportRow row;
    row.subset = Subset::kAllTurns;
    row.single = aggregate(all, options.scoring);
    report.rows.push_back(std::move(row));
  }

  auto paired_row = [&](Subset subset, auto&& include) {
    std::vector<TurnScore> before, after;
    ReportRow row;
    row.subset = subset;
    for (const auto* ce : ces) {
      if (ce->truncated() || !include(*ce)) continue;
      ++row.n_ces;
      before.push_back(scores.at(ce->before_key()));
      after.push_back(scores.at(*ce->after_key()));
    }
    row.delta = relative_delta(aggregate(before, options.scoring),
                               aggregate(after, options.scoring),
                               options.aggregation);
    report.rows.push_back(std::move(row));
  };

  paired_row(Subset::kCRTurns, [](const ClarificationExchange&) { return true; });
  for (Subset s : {Subset::kIndividualProperty, Subset::kDialogueHistory,
                   Subset::kRelationalContext, Subset::kUnclassified}) {
    const PropertyTag tag = TagOf(s);
    paired_row(s, [tag](const ClarificationExchange& ce) { return ce.tags->has(tag); });
  }
  report.n_truncated_excluded = static_cast<std::size_t>(std::count_if(
      ces.begin(), ces.end(), [](const auto* ce) { return ce->truncated(); }));
  return report;
}

}  // namespace clarify
