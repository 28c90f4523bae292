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

#ifndef CLARIFY_TAGGER_HPP_
#define CLARIFY_TAGGER_HPP_

// Keyword and pattern tagging of clarificational exchanges by the property
// they use to single out the referent.

#include <filesystem>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "clarify/ce_extractor.hpp"
#include "clarify/corpus.hpp"
#include "clarify/tags.hpp"
#include "json.hpp"

namespace clarify {

// Normalised phrases by lexicon category (color, type, positional, ...).
class Lexicon {
 public:
  // Normalises `phrase`; empty results are ignored.
  void add(const std::string& category, std::string_view phrase);
  void merge(const Lexicon& other);

  bool contains(const std::string& category, const std::string& phrase) const;
  const std::map<std::string, std::set<std::string>>& entries() const {
    return entries_;
  }

  // Phrases whose first word is `word`, as (category, words).
  struct Candidate {
    std::string category;
    std::vector<std::string> words;
  };
  const std::vector<Candidate>* starting_with(const std::string& word) const;

  static Lexicon from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;

  bool operator==(const Lexicon& other) const {
    return entries_ == other.entries_;
  }

 private:
  std::map<std::string, std::set<std::string>> entries_;
  std::map<std::string, std::vector<Candidate>> by_first_word_;
};

struct PatternRule {
  std::string category;
  std::string source;
  std::regex regex;
};

// Category-to-tag mapping, shipped phrase lists, and regex patterns. All
// patterns are compiled when the rule set is built, so a malformed pattern
// fails here and never during tagging.
class RuleSet {
 public:
  static RuleSet from_json(const nlohmann::json& doc);
  static RuleSet load(const std::filesystem::path& path);
  // The rules compiled into the library.
  static const RuleSet& defaults();
  static const std::string& default_json();

  std::optional<PropertyTag> tag_for(const std::string& category) const;
  const std::map<std::string, PropertyTag>& category_map() const {
    return category_map_;
  }
  const std::vector<PatternRule>& patterns() const { return patterns_; }
  std::vector<std::string> patterns_for(PropertyTag tag) const;
  const Lexicon& default_phrases() const { return phrases_; }

  // Lexicon category that values of a scene-object attribute feed, if any.
  std::optional<std::string> lexicon_category_for_attribute(
      const std::string& attribute) const;
  const std::map<std::string, std::string>& attribute_categories() const {
    return attribute_categories_;
  }

  // When false, a bare object-type mention does not support
  // IndividualProperty on its own.
  bool type_only_counts() const { return type_only_counts_; }
  void set_type_only_counts(bool v) { type_only_counts_ = v; }

 private:
  std::map<std::string, PropertyTag> category_map_;
  std::map<std::string, std::string> attribute_categories_;
  std::vector<PatternRule> patterns_;
  Lexicon phrases_;
  bool type_only_counts_ = true;
};

// Phrases a scene-object attribute value contributes: the whole value, each
// comma-separated part, camel-case split, and plurals for object types.
std::set<std::string> attribute_phrases(std::string_view value,
                                        std::string_view lexicon_category);

// Union of attribute values seen in the corpus scenes (bucketed through the
// rule set's attribute mapping), the shipped phrase lists, and `overrides`.
// Throws ConfigError when an override uses a category the rules don't map.
Lexicon build_lexicon(const Corpus& corpus, const RuleSet& rules,
                      const Lexicon* overrides = nullptr);

TagSet tag_utterance(std::string_view text, const Lexicon& lexicon,
                     const RuleSet& rules, SpanSource source = SpanSource::kCr);

// Tags the CR and the response together; either side may carry the cue.
TagSet tag_ce(const ClarificationExchange& ce, const Lexicon& lexicon,
              const RuleSet& rules);

std::vector<MatchedSpan> explain_tags(const ClarificationExchange& ce,
                                      const Lexicon& lexicon,
                                      const RuleSet& rules);

// Fills `tags` on every exchange; `jobs` threads, same result for any value.
void tag_all(std::vector<ClarificationExchange>& ces, const Lexicon& lexicon,
             const RuleSet& rules, int jobs = 1);

}  // namespace clarify

#endif  // CLARIFY_TAGGER_HPP_
