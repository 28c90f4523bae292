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

#include "clarify/ce_extractor.hpp"

#include <algorithm>

#include "clarify/error.hpp"

namespace clarify {

using nlohmann::json;

std::optional<TurnKey> ClarificationExchange::after_key() const {
  if (!after_turn_idx) return std::nullopt;
  return TurnKey{dialogue_id, *after_turn_idx};
}

std::string_view phase_name(CEPhase phase) {
  switch (phase) {
    case CEPhase::kBeforeCR: return "BeforeCR";
    case CEPhase::kCR: return "CR";
    case CEPhase::kAfterCR: return "AfterCR";
    case CEPhase::kOther: return "Other";
  }
  return "Other";
}

ExtractionStats extraction_stats(const Corpus& corpus,
                                 const std::vector<ClarificationExchange>& ces) {
  ExtractionStats s;
  for (const auto& d : corpus.dialogues) s.n_system_turns += d.turns.size();
  s.n_ces = ces.size();
  s.n_truncated = static_cast<std::size_t>(std::count_if(
      ces.begin(), ces.end(), [](const auto& ce) { return ce.truncated(); }));
  if (s.n_system_turns > 0) {
    const double n = static_cast<double>(s.n_system_turns);
    s.cr_rate = static_cast<double>(s.n_ces) / n;
    s.cr_rate_excluding_truncated =
        static_cast<double>(s.n_ces - s.n_truncated) / n;
  }
  return s;
}

Extraction extract_ces(const Corpus& corpus) {
  std::vector<const Dialogue*> order;
  for (const auto& d : corpus.dialogues) order.push_back(&d);
  std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    return a->dialogue_id < b->dialogue_id;
  });

  Extraction out;
  for (const Dialogue* d : order) {
    for (std::size_t i = 0; i < d->turns.size(); ++i) {
      const Turn& t = d->turns[i];
      if (!t.is_ambiguous) continue;
      ClarificationExchange ce;
      ce.dialogue_id = d->dialogue_id;
      ce.before_turn_idx = t.turn_idx;
      ce.cr_text = t.system_utterance;
      if (i + 1 < d->turns.size()) {
        ce.after_turn_idx = d->turns[i + 1].turn_idx;
        ce.response_text = d->turns[i + 1].user_utterance;
      }
      out.ces.push_back(std::move(ce));
    }
  }
  out.stats = extraction_stats(corpus, out.ces);
  return out;
}

void check_ces_against(const Corpus& corpus,
                       const std::vector<ClarificationExchange>& ces) {
  std::map<std::string, const Dialogue*> by_id;
  for (const auto& d : corpus.dialogues) by_id.emplace(d.dialogue_id, &d);
  for (const auto& ce : ces) {
    const std::string locus = "exchange " + to_string(ce.before_key());
    auto it = by_id.find(ce.dialogue_id);
    if (it == by_id.end()) {
      throw IntegrityError(locus + ": unknown dialogue '" + ce.dialogue_id + "'");
    }
    const auto n = static_cast<int>(it->second->turns.size());
    if (ce.before_turn_idx < 0 || ce.before_turn_idx >= n) {
      throw IntegrityError(locus + ": before_turn_idx outside the dialogue");
    }
    if (ce.after_turn_idx) {
      if (*ce.after_turn_idx != ce.before_turn_idx + 1) {
        throw IntegrityError(locus + ": after_turn_idx must be before_turn_idx + 1");
      }
      if (*ce.after_turn_idx >= n) {
        throw IntegrityError(locus + ": after_turn_idx outside the dialogue");
      }
    } else if (ce.before_turn_idx + 1 < n) {
      throw IntegrityError(locus + ": marked truncated but the dialogue continues");
    }
    if (!it->second->turns[ce.before_turn_idx].is_ambiguous) {
      throw IntegrityError(locus + ": turn is not annotated as ambiguous");
    }
  }
}

std::map<TurnKey, TurnPhases> label_turns(
    const Corpus& corpus, const std::vector<ClarificationExchange>& ces) {
  check_ces_against(corpus, ces);
  std::map<TurnKey, TurnPhases> labels;
  for (const auto& d : corpus.dialogues) {
    for (const auto& t : d.turns) labels[{d.dialogue_id, t.turn_idx}];
  }
  for (const auto& ce : ces) {
    labels[ce.before_key()].user.insert(CEPhase::kBeforeCR);
    labels[ce.before_key()].system.insert(CEPhase::kCR);
    if (auto after = ce.after_key()) labels[*after].user.insert(CEPhase::kAfterCR);
  }
  for (auto& [key, phases] : labels) {
    if (phases.user.empty()) phases.user.insert(CEPhase::kOther);
    if (phases.system.empty()) phases.system.insert(CEPhase::kOther);
  }
  return labels;
}

// ---------------------------------------------------------------------------
// Serialisation

namespace {

void TagSetToJson(const TagSet& ts, json& out) {
  std::vector<std::string> names;
  for (PropertyTag t : ts.tags) names.emplace_back(tag_name(t));
  std::sort(names.begin(), names.end());
  out["tags"] = names;
  json spans = json::array();
  for (const auto& s : ts.matched_spans) {
    spans.push_back({{"category", s.category},
                     {"surface", s.surface},
                     {"char_start", s.char_start},
                     {"char_end", s.char_end},
                     {"source", span_source_name(s.source)}});
  }
  out["matched_spans"] = std::move(spans);
}

[[noreturn]] void Bad(std::size_t i, const std::string& what) {
  throw FormatError("exchange " + std::to_string(i) + ": " + what);
}

}  // namespace

json ces_to_json(const std::vector<ClarificationExchange>& ces) {
  json out = json::array();
  for (const auto& ce : ces) {
    json j = {{"dialogue_id", ce.dialogue_id},
              {"before_turn_idx", ce.before_turn_idx}};
    if (ce.after_turn_idx) j["after_turn_idx"] = *ce.after_turn_idx;
    j["cr_text"] = ce.cr_text;
    if (ce.response_text) j["response_text"] = *ce.response_text;
    if (ce.tags) TagSetToJson(*ce.tags, j);
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<ClarificationExchange> ces_from_json(const json& doc) {
  if (!doc.is_array()) throw FormatError("exchange list: expected an array");
  std::vector<ClarificationExchange> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& j = doc[i];
    if (!j.is_object()) Bad(i, "expected an object");
    auto str = [&](const char* f) {
      if (!j.contains(f) || !j[f].is_string()) {
        Bad(i, std::string("field '") + f + "' missing or not a string");
      }
      return j[f].get<std::string>();
    };
    auto integer = [&](const char* f) {
      if (!j.contains(f) || !j[f].is_number_integer()) {
        Bad(i, std::string("field '") + f + "' missing or not an integer");
      }
      return j[f].get<int>();
    };
    ClarificationExchange ce;
    ce.dialogue_id = str("dialogue_id");
    ce.before_turn_idx = integer("before_turn_idx");
    if (j.contains("after_turn_idx")) ce.after_turn_idx = integer("after_turn_idx");
    ce.cr_text = str("cr_text");
    if (j.contains("response_text")) ce.response_text = str("response_text");
    if (ce.after_turn_idx.has_value() != ce.response_text.has_value()) {
      Bad(i, "after_turn_idx and response_text must appear together");
    }
    if (j.contains("tags")) {
      TagSet ts;
      if (!j["tags"].is_array()) Bad(i, "field 'tags' not an array");
      for (const auto& t : j["tags"]) {
        auto tag = t.is_string() ? parse_tag(t.get<std::string>()) : std::nullopt;
        if (!tag) Bad(i, "unknown tag " + t.dump());
        ts.tags.insert(*tag);
      }
      if (ts.tags.empty()) Bad(i, "field 'tags' is empty");
      if (ts.tags.size() > 1 && ts.has(PropertyTag::kUnclassified)) {
        Bad(i, "Unclassified cannot be combined with other tags");
      }
      if (j.contains("matched_spans")) {
        if (!j["matched_spans"].is_array()) Bad(i, "matched_spans not an array");
        for (const auto& s : j["matched_spans"]) {
          try {
            MatchedSpan span;
            span.category = s.at("category").get<std::string>();
            span.surface = s.at("surface").get<std::string>();
            span.char_start = s.at("char_start").get<std::size_t>();
            span.char_end = s.at("char_end").get<std::size_t>();
            const auto src = s.at("source").get<std::string>();
            if (src == "cr") {
              span.source = SpanSource::kCr;
            } else if (src == "response") {
              span.source = SpanSource::kResponse;
            } else {
              Bad(i, "unknown span source '" + src + "'");
            }
            ts.matched_spans.push_back(std::move(span));
          } catch (const json::exception& e) {
            Bad(i, std::string("malformed matched span: ") + e.what());
          }
        }
      }
      ce.tags = std::move(ts);
    }
    out.push_back(std::move(ce));
  }
  return out;
}

std::vector<ClarificationExchange> load_ces(const std::filesystem::path& path) {
  return ces_from_json(read_json_file(path));
}

}  // namespace clarify
