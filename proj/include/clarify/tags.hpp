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

#ifndef CLARIFY_TAGS_HPP_
#define CLARIFY_TAGS_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace clarify {

// Kind of information a clarification exploits. A clarification may use
// several at once; kUnclassified is used alone.
enum class PropertyTag {
  kIndividualProperty,
  kDialogueHistory,
  kRelationalContext,
  kUnclassified,
};

inline constexpr PropertyTag kAllTags[] = {
    PropertyTag::kIndividualProperty, PropertyTag::kDialogueHistory,
    PropertyTag::kRelationalContext, PropertyTag::kUnclassified};

std::string_view tag_name(PropertyTag tag);
std::string_view tag_display_name(PropertyTag tag);
std::optional<PropertyTag> parse_tag(std::string_view name);

enum class SpanSource { kCr, kResponse };

std::string_view span_source_name(SpanSource source);

// One keyword or pattern hit. Offsets are byte offsets into the original
// (un-normalised) utterance; `surface` is the normalised matched text.
struct MatchedSpan {
  std::string category;
  std::string surface;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  SpanSource source = SpanSource::kCr;

  bool operator==(const MatchedSpan&) const = default;
};

struct TagSet {
  std::set<PropertyTag> tags;
  std::vector<MatchedSpan> matched_spans;

  bool has(PropertyTag tag) const { return tags.contains(tag); }
  bool operator==(const TagSet&) const = default;
};

}  // namespace clarify

#endif  // CLARIFY_TAGS_HPP_
