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

// Heuristic stand-ins for coreference models. They make the evaluation
// pipeline testable end to end without any trained model.

#include <algorithm>
#include <limits>
#include <random>

#include "clarify/eval.hpp"
#include "parallel.hpp"

namespace clarify {

std::string_view resolver_name(ResolverKind kind) {
  switch (kind) {
    case ResolverKind::kOracle: return "oracle";
    case ResolverKind::kRandom: return "random";
    case ResolverKind::kRecentMention: return "recent_mention";
    case ResolverKind::kPropertyMatch: return "property_match";
  }
  return "oracle";
}

std::optional<ResolverKind> parse_resolver(std::string_view name) {
  for (auto k : {ResolverKind::kOracle, ResolverKind::kRandom,
                 ResolverKind::kRecentMention, ResolverKind::kPropertyMatch}) {
    if (resolver_name(k) == name) return k;
  }
  return std::nullopt;
}

namespace {

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::mt19937_64 TurnRng(std::uint64_t seed, const std::string& dialogue_id,
                        int turn_idx) {
  const std::uint64_t h = Fnv1a(dialogue_id);
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h),
                    static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(turn_idx)};
  return std::mt19937_64(seq);
}

std::optional<std::pair<double, double>> Coordinates(const SceneObject& o) {
  if (o.position) return std::pair{(*o.position)[0], (*o.position)[1]};
  if (o.bbox) {
    return std::pair{o.bbox->x + o.bbox->width / 2, o.bbox->y + o.bbox->height / 2};
  }
  return std::nullopt;
}

enum class Direction { kLeft, kRight, kTop, kBottom };

std::optional<Direction> ParseDirection(const std::string& word) {
  if (word == "left" || word == "leftmost") return Direction::kLeft;
  if (word == "right" || word == "rightmost") return Direction::kRight;
  if (word == "top" || word == "upper" || word == "high" || word == "above") {
    return Direction::kTop;
  }
  if (word == "bottom" || word == "lower" || word == "low" || word == "below") {
    return Direction::kBottom;
  }
  return std::nullopt;
}

// Keeps the candidates lying furthest in `dir`; image coordinates, y down.
std::vector<const SceneObject*> Extreme(std::vector<const SceneObject*> objs,
                                        Direction dir) {
  double best = 0;
  bool any = false;
  auto key = [&](const SceneObject& o) {
    auto c = *Coordinates(o);
    switch (dir) {
      case Direction::kLeft: return -c.first;
      case Direction::kRight: return c.first;
      case Direction::kTop: return -c.second;
      case Direction::kBottom: return c.second;
    }
    return 0.0;
  };
  for (const auto* o : objs) {
    if (!Coordinates(*o)) continue;
    const double k = key(*o);
    if (!any || k > best) best = k;
    any = true;
  }
  if (!any) return objs;
  std::vector<const SceneObject*> out;
  for (const auto* o : objs) {
    if (Coordinates(*o) && key(*o) == best) out.push_back(o);
  }
  return out;
}

}  // namespace

ObjectSet property_match(const Scene& scene, const std::string& text,
                         const Lexicon& lexicon, const RuleSet& rules) {
  std::set<std::string> attribute_categories;
  for (const auto& [attr, cat] : rules.attribute_categories()) {
    attribute_categories.insert(cat);
  }

  const TagSet found = tag_utterance(text, lexicon, rules);
  std::vector<std::pair<std::string, std::string>> wanted;  // (category, phrase)
  std::optional<Direction> direction;
  for (const auto& span : found.matched_spans) {
    if (attribute_categories.contains(span.category)) {
      wanted.emplace_back(span.category, span.surface);
    } else if (!direction && span.category == "positional") {
      direction = ParseDirection(span.surface);
    }
  }
  if (wanted.empty()) return {};

  std::vector<const SceneObject*> candidates;
  for (const auto& o : scene.objects) {
    std::map<std::string, std::set<std::string>> phrases;
    for (const auto& [attr, value] : o.attributes) {
      auto cat = rules.lexicon_category_for_attribute(attr);
      if (!cat) continue;
      phrases[*cat].merge(attribute_phrases(value, *cat));
    }
    const bool all = std::all_of(wanted.begin(), wanted.end(), [&](const auto& w) {
      auto it = phrases.find(w.first);
      return it != phrases.end() && it->second.contains(w.second);
    });
    if (all) candidates.push_back(&o);
  }
  if (direction && candidates.size() > 1) {
    candidates = Extreme(std::move(candidates), *direction);
  }

  ObjectSet out;
  for (const auto* o : candidates) out.insert(o->object_id);
  return out;
}

PredictionSet run_resolver(const Corpus& corpus, const ResolverSpec& spec,
                           const std::vector<ClarificationExchange>& ces,
                           const Lexicon& lexicon, const RuleSet& rules,
                           int jobs) {
  std::vector<std::size_t> gold_sizes;
  for (const auto& d : corpus.dialogues) {
    for (const auto& t : d.turns) gold_sizes.push_back(t.user_referenced_objects.size());
  }
  std::map<TurnKey, const ClarificationExchange*> by_after;
  for (const auto& ce : ces) {
    if (auto k = ce.after_key()) by_after.emplace(*k, &ce);
  }

  const auto& dialogues = corpus.dialogues;
  std::vector<std::vector<ObjectSet>> per_dialogue(dialogues.size());

  internal::ParallelFor(dialogues.size(), jobs, [&](std::size_t di) {
    const Dialogue& d = dialogues[di];
    auto& out = per_dialogue[di];
    out.resize(d.turns.size());
    for (std::size_t i = 0; i < d.turns.size(); ++i) {
      const Turn& turn = d.turns[i];
      const Scene* scene = corpus.scene(turn.scene_id);
      switch (spec.kind) {
        case ResolverKind::kOracle:
          out[i] = turn.user_referenced_objects;
          break;

        case ResolverKind::kRandom: {
          if (scene == nullptr || scene->objects.empty() || gold_sizes.empty()) break;
          auto rng = TurnRng(spec.seed, d.dialogue_id, turn.turn_idx);
          std::uniform_int_distribution<std::size_t> pick_size(0, gold_sizes.size() - 1);
          const std::size_t k = std::min(gold_sizes[pick_size(rng)], scene->objects.size());
          std::vector<ObjectId> ids;
          for (const auto& o : scene->objects) ids.push_back(o.object_id);
          std::sort(ids.begin(), ids.end());
          for (std::size_t j = 0; j < k; ++j) {
            std::uniform_int_distribution<std::size_t> pick(j, ids.size() - 1);
            std::swap(ids[j], ids[pick(rng)]);
            out[i].insert(ids[j]);
          }
          break;
        }

        case ResolverKind::kRecentMention: {
          const std::size_t lowest =
              spec.context_window > 0 && i > static_cast<std::size_t>(spec.context_window)
                  ? i - static_cast<std::size_t>(spec.context_window)
                  : 0;
          for (std::size_t j = i; j-- > lowest;) {
            if (!d.turns[j].user_referenced_objects.empty()) {
              out[i] = d.turns[j].user_referenced_objects;
              break;
            }
          }
          break;
        }

        case ResolverKind::kPropertyMatch: {
          if (scene == nullptr) break;
          std::string text = turn.user_utterance;
          if (spec.use_after_cr) {
            auto it = by_after.find({d.dialogue_id, turn.turn_idx});
            if (it != by_after.end()) {
              const ClarificationExchange& ce = *it->second;
              text = d.turns[ce.before_turn_idx].user_utterance + "\n" +
                     ce.cr_text + "\n" + text;
            }
          }
          out[i] = property_match(*scene, text, lexicon, rules);
          break;
        }
      }
    }
  });

  PredictionSet preds;
  preds.model_name = std::string(resolver_name(spec.kind));
  if (spec.kind == ResolverKind::kPropertyMatch && spec.use_after_cr) {
    preds.model_name += "+after_cr";
  }
  for (std::size_t di = 0; di < dialogues.size(); ++di) {
    for (std::size_t i = 0; i < dialogues[di].turns.size(); ++i) {
      preds.predictions[{dialogues[di].dialogue_id, dialogues[di].turns[i].turn_idx}] =
          std::move(per_dialogue[di][i]);
    }
  }
  return preds;
}

}  // namespace clarify
