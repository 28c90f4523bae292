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

#ifndef CLARIFY_TEXT_HPP_
#define CLARIFY_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace clarify {

// Lowercased text with punctuation replaced by single spaces. Apostrophes
// and hyphens survive only between two word characters ("i'm",
// "long-sleeve"). `origin[i]` is the byte offset in the input of text[i].
struct NormalizedText {
  std::string text;
  std::vector<std::size_t> origin;
};

NormalizedText normalize_text(std::string_view input);

// normalize_text(...).text
std::string normalize_phrase(std::string_view input);

struct Token {
  std::size_t begin = 0;  // byte range in the normalised text
  std::size_t end = 0;
};

std::vector<Token> tokenize(const std::string& normalized);
std::vector<std::string> split_words(const std::string& normalized);

// "CoffeeTable" -> "Coffee Table"; other strings unchanged.
std::string split_camel_case(std::string_view input);

// English plural of the last word ("dress" -> "dresses").
std::string pluralize(const std::string& phrase);

}  // namespace clarify

#endif  // CLARIFY_TEXT_HPP_
