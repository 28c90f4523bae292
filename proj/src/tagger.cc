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

#include "clarify/tagger.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

#include "clarify/error.hpp"
#include "clarify/text.hpp"
#include "embedded.hpp"
#include "parallel.hpp"

namespace clarify {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Tag names

std::string_view tag_name(PropertyTag tag) {
  switch (tag) {
    case PropertyTag::kIndividualProperty: return "IndividualProperty";
    case PropertyTag::kDialogueHistory: return "DialogueHistory";
    case PropertyTag::kRelationalContext: return "RelationalContext";
    case PropertyTag::kUnclassified: return "Unclassified";
  }
  return "Unclassified";
}

std::string_view tag_display_name(PropertyTag tag) {
  switch (tag) {
    case PropertyTag::kIndividualProperty: return "Individual Property";
    case PropertyTag::kDialogueHistory: return "Dialogue History";
    case PropertyTag::kRelationalContext: return "Relational Context";
    case PropertyTag::kUnclassified: return "Unclassified";
  }
  return "Unclassified";
}

std::optional<PropertyTag> parse_tag(std::string_view name) {
  for (PropertyTag t : kAllTags) {
    if (tag_name(t) == name) return t;
  }
  return std::nullopt;
}

std::string_view span_source_name(SpanSource source) {
  return source == SpanSource::kCr ? "cr" : "response";
}

// ---------------------------------------------------------------------------
// Lexicon

void Lexicon::add(const std::string& category, std::string_view phrase) {
  std::string norm = normalize_phrase(phrase);
  if (norm.empty()) return;
  auto [it, inserted] = entries_[category].insert(norm);
  if (!inserted) return;
  std::vector<std::string> words = split_words(norm);
  const std::string first = words.front();
  by_first_word_[first].push_back({category, std::move(words)});
}

void Lexicon::merge(const Lexicon& other) {
  for (const auto& [cat, phrases] : other.entries_) {
    entries_[cat];  // keep empty categories visible
    for (const auto& p : phrases) add(cat, p);
  }
}

bool Lexicon::contains(const std::string& category,
                       const std::string& phrase) const {
  auto it = entries_.find(category);
  return it != entries_.end() && it->second.contains(normalize_phrase(phrase));
}

const std::vector<Lexicon::Candidate>* Lexicon::starting_with(
    const std::string& word) const {
  auto it = by_first_word_.find(word);
  return it == by_first_word_.end() ? nullptr : &it->second;
}

Lexicon Lexicon::from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("lexicon: expected an object");
  Lexicon lex;
  for (const auto& [cat, phrases] : doc.items()) {
    if (!phrases.is_array()) {
      throw ConfigError("lexicon category '" + cat + "': expected an array");
    }
    lex.entries_[cat];
    for (const auto& p : phrases) {
      if (!p.is_string()) {
        throw ConfigError("lexicon category '" + cat + "': non-string phrase");
      }
      lex.add(cat, p.get<std::string>());
    }
  }
  return lex;
}

json Lexicon::to_json() const {
  json out = json::object();
  for (const auto& [cat, phrases] : entries_) out[cat] = phrases;
  return out;
}

// ---------------------------------------------------------------------------
// RuleSet

namespace {

std::regex CompilePattern(const std::string& category, const std::string& src) {
  try {
    return std::regex("\\b(?:" + src + ")\\b",
                      std::regex::ECMAScript | std::regex::optimize);
  } catch (const std::regex_error& e) {
    throw ConfigError("malformed pattern for '" + category + "': \"" + src +
                      "\": " + e.what());
  }
}

const json& ObjectSection(const json& doc, const char* name, bool required) {
  static const json kEmpty = json::object();
  auto it = doc.find(name);
  if (it == doc.end()) {
    if (required) throw ConfigError(std::string("rules: missing section '") + name + "'");
    return kEmpty;
  }
  if (!it->is_object()) {
    throw ConfigError(std::string("rules: section '") + name + "' must be an object");
  }
  return *it;
}

}  // namespace

RuleSet RuleSet::from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("rules: expected an object");
  static const std::set<std::string> kKnown = {
      "category_map", "attribute_categories", "phrases", "patterns",
      "type_only_counts"};
  for (const auto& [k, v] : doc.items()) {
    if (!kKnown.contains(k)) throw ConfigError("rules: unknown section '" + k + "'");
  }

  RuleSet rules;
  for (const auto& [cat, tag] : ObjectSection(doc, "category_map", true).items()) {
    auto parsed = tag.is_string() ? parse_tag(tag.get<std::string>()) : std::nullopt;
    if (!parsed || *parsed == PropertyTag::kUnclassified) {
      throw ConfigError("rules: category '" + cat + "' maps to invalid tag " +
                        tag.dump());
    }
    rules.category_map_[cat] = *parsed;
  }
  auto require_mapped = [&](const std::string& cat, const std::string& where) {
    if (!rules.category_map_.contains(cat)) {
      throw ConfigError("rules: " + where + " uses category '" + cat +
                        "' missing from category_map");
    }
  };

  for (const auto& [attr, cat] :
       ObjectSection(doc, "attribute_categories", false).items()) {
    if (!cat.is_string()) {
      throw ConfigError("rules: attribute_categories." + attr + " must be a string");
    }
    require_mapped(cat.get<std::string>(), "attribute_categories." + attr);
    rules.attribute_categories_[attr] = cat.get<std::string>();
  }

  const json& phrases = ObjectSection(doc, "phrases", false);
  for (const auto& [cat, list] : phrases.items()) require_mapped(cat, "phrases");
  rules.phrases_ = Lexicon::from_json(phrases);

  for (const auto& [cat, list] : ObjectSection(doc, "patterns", false).items()) {
    require_mapped(cat, "patterns");
    if (!list.is_array()) throw ConfigError("rules: patterns." + cat + " must be an array");
    for (const auto& p : list) {
      if (!p.is_string()) throw ConfigError("rules: patterns." + cat + ": non-string");
      const std::string src = p.get<std::string>();
      rules.patterns_.push_back({cat, src, CompilePattern(cat, src)});
    }
  }

  if (auto it = doc.find("type_only_counts"); it != doc.end()) {
    if (!it->is_boolean()) throw ConfigError("rules: type_only_counts must be a boolean");
    rules.type_only_counts_ = it->get<bool>();
  }
  return rules;
}

RuleSet RuleSet::load(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return from_json(doc);
}

const std::string& RuleSet::default_json() { return internal::DefaultRulesJson(); }

const RuleSet& RuleSet::defaults() {
  static const RuleSet kRules = from_json(json::parse(default_json()));
  return kRules;
}

std::optional<PropertyTag> RuleSet::tag_for(const std::string& category) const {
  auto it = category_map_.find(category);
  if (it == category_map_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> RuleSet::patterns_for(PropertyTag tag) const {
  std::vector<std::string> out;
  for (const auto& p : patterns_) {
    if (tag_for(p.category) == tag) out.push_back(p.source);
  }
  return out;
}

std::optional<std::string> RuleSet::lexicon_category_for_attribute(
    const std::string& attribute) const {
  auto it = attribute_categories_.find(attribute);
  if (it == attribute_categories_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// Lexicon construction

std::set<std::string> attribute_phrases(std::string_view value,
                                        std::string_view lexicon_category) {
  std::vector<std::string_view> parts{value};
  std::size_t start = 0;
  for (std::size_t i = 0; i <= value.size(); ++i) {
    if (i == value.size() || value[i] == ',' || value[i] == '/') {
      if (start > 0 || i < value.size()) parts.push_back(value.substr(start, i - start));
      start = i + 1;
    }
  }
  std::set<std::string> out;
  for (std::string_view part : parts) {
    std::string p = normalize_phrase(split_camel_case(part));
    const bool numeric = std::all_of(p.begin(), p.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c)) || c == ' ';
    });
    if (p.empty() || numeric) continue;
    if (lexicon_category == "type") out.insert(pluralize(p));
    out.insert(std::move(p));
  }
  return out;
}

Lexicon build_lexicon(const Corpus& corpus, const RuleSet& rules,
                      const Lexicon* overrides) {
  Lexicon lex;
  for (const auto& [id, scene] : corpus.scenes) {
    for (const auto& o : scene.objects) {
      for (const auto& [attr, value] : o.attributes) {
        auto cat = rules.lexicon_category_for_attribute(attr);
        if (!cat) continue;
        for (const auto& p : attribute_phrases(value, *cat)) lex.add(*cat, p);
      }
    }
  }
  lex.merge(rules.default_phrases());
  if (overrides != nullptr) {
    for (const auto& [cat, phrases] : overrides->entries()) {
      if (!rules.tag_for(cat)) {
        throw ConfigError("lexicon override uses unknown category '" + cat + "'");
      }
    }
    lex.merge(*overrides);
  }
  return lex;
}

// ---------------------------------------------------------------------------
// Tagging

namespace {

std::set<PropertyTag> TagsFromSpans(const std::vector<MatchedSpan>& spans,
                                    const RuleSet& rules) {
  std::set<PropertyTag> tags;
  for (const auto& s : spans) {
    if (s.category == "type" && !rules.type_only_counts()) continue;
    if (auto tag = rules.tag_for(s.category)) tags.insert(*tag);
  }
  if (tags.empty()) tags.insert(PropertyTag::kUnclassified);
  return tags;
}

std::vector<MatchedSpan> FindSpans(std::string_view text, const Lexicon& lexicon,
                                   const RuleSet& rules, SpanSource source) {
  const NormalizedText norm = normalize_text(text);
  const std::vector<Token> tokens = tokenize(norm.text);
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (const Token& t : tokens) {
    words.push_back(norm.text.substr(t.begin, t.end - t.begin));
  }

  std::vector<MatchedSpan> spans;
  auto add_span = [&](const std::string& category, std::size_t b, std::size_t e) {
    MatchedSpan s;
    s.category = category;
    s.surface = norm.text.substr(b, e - b);
    s.char_start = norm.origin[b];
    s.char_end = norm.origin[e - 1] + 1;
    s.source = source;
    spans.push_back(std::move(s));
  };

  // Longest phrase per category at each position; a category does not
  // re-match inside its own previous hit.
  std::map<std::string, std::size_t> covered_until;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto* candidates = lexicon.starting_with(words[i]);
    if (candidates == nullptr) continue;
    std::map<std::string, std::size_t> best;
    for (const auto& c : *candidates) {
      const std::size_t len = c.words.size();
      if (i + len > words.size()) continue;
      if (!std::equal(c.words.begin(), c.words.end(), words.begin() + i)) continue;
      auto& b = best[c.category];
      b = std::max(b, len);
    }
    for (const auto& [cat, len] : best) {
      auto& until = covered_until[cat];
      if (i < until) continue;
      add_span(cat, tokens[i].begin, tokens[i + len - 1].end);
      until = i + len;
    }
  }

  for (const auto& rule : rules.patterns()) {
    for (auto it = std::sregex_iterator(norm.text.begin(), norm.text.end(), rule.regex);
         it != std::sregex_iterator(); ++it) {
      const auto b = static_cast<std::size_t>(it->position(0));
      const auto len = static_cast<std::size_t>(it->length(0));
      if (len == 0) continue;
      add_span(rule.category, b, b + len);
    }
  }

  std::sort(spans.begin(), spans.end(), [](const auto& a, const auto& b) {
    return std::tie(a.char_start, a.char_end, a.category) <
           std::tie(b.char_start, b.char_end, b.category);
  });
  spans.erase(std::unique(spans.begin(), spans.end(),
                          [](const auto& a, const auto& b) {
                            return a.char_start == b.char_start &&
                                   a.char_end == b.char_end &&
                                   a.category == b.category;
                          }),
              spans.end());
  return spans;
}

}  // namespace

TagSet tag_utterance(std::string_view text, const Lexicon& lexicon,
                     const RuleSet& rules, SpanSource source) {
  TagSet ts;
  ts.matched_spans = FindSpans(text, lexicon, rules, source);
  ts.tags = TagsFromSpans(ts.matched_spans, rules);
  return ts;
}

std::vector<MatchedSpan> explain_tags(const ClarificationExchange& ce,
                                      const Lexicon& lexicon,
                                      const RuleSet& rules) {
  std::vector<MatchedSpan> spans = FindSpans(ce.cr_text, lexicon, rules, SpanSource::kCr);
  if (ce.response_text) {
    auto more = FindSpans(*ce.response_text, lexicon, rules, SpanSource::kResponse);
    spans.insert(spans.end(), more.begin(), more.end());
  }
  return spans;
}

TagSet tag_ce(const ClarificationExchange& ce, const Lexicon& lexicon,
              const RuleSet& rules) {
  TagSet ts;
  ts.matched_spans = explain_tags(ce, lexicon, rules);
  ts.tags = TagsFromSpans(ts.matched_spans, rules);
  return ts;
}

void tag_all(std::vector<ClarificationExchange>& ces, const Lexicon& lexicon,
             const RuleSet& rules, int jobs) {
  internal::ParallelFor(ces.size(), jobs, [&](std::size_t i) {
    ces[i].tags = tag_ce(ces[i], lexicon, rules);
  });
}

}  // namespace clarify
