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

#include "clarify/text.hpp"

#include <cctype>

namespace clarify {

namespace {

bool IsWordByte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

}  // namespace

NormalizedText normalize_text(std::string_view input) {
  NormalizedText out;
  out.text.reserve(input.size());
  out.origin.reserve(input.size());
  bool pending_space = false;
  for (std::size_t i = 0; i < input.size(); ++i) {
    const auto c = static_cast<unsigned char>(input[i]);
    bool keep = IsWordByte(c);
    if (!keep && (c == '\'' || c == '-') && i > 0 && i + 1 < input.size()) {
      keep = IsWordByte(static_cast<unsigned char>(input[i - 1])) &&
             IsWordByte(static_cast<unsigned char>(input[i + 1]));
    }
    if (!keep) {
      pending_space = !out.text.empty();
      continue;
    }
    if (pending_space) {
      out.text.push_back(' ');
      out.origin.push_back(i);
      pending_space = false;
    }
    out.text.push_back(static_cast<char>(std::tolower(c)));
    out.origin.push_back(i);
  }
  return out;
}

std::string normalize_phrase(std::string_view input) {
  return normalize_text(input).text;
}

std::vector<Token> tokenize(const std::string& normalized) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < normalized.size()) {
    while (i < normalized.size() && normalized[i] == ' ') ++i;
    if (i >= normalized.size()) break;
    const std::size_t start = i;
    while (i < normalized.size() && normalized[i] != ' ') ++i;
    tokens.push_back({start, i});
  }
  return tokens;
}

std::vector<std::string> split_words(const std::string& normalized) {
  std::vector<std::string> words;
  for (const Token& t : tokenize(normalized)) {
    words.push_back(normalized.substr(t.begin, t.end - t.begin));
  }
  return words;
}

std::string split_camel_case(std::string_view input) {
  std::string out;
  for (std::size_t i = 0; i < input.size(); ++i) {
    const auto c = static_cast<unsigned char>(input[i]);
    if (i > 0 && std::isupper(c) &&
        std::islower(static_cast<unsigned char>(input[i - 1]))) {
      out.push_back(' ');
    }
    out.push_back(static_cast<char>(c));
  }
  return out;
}

std::string pluralize(const std::string& phrase) {
  if (phrase.empty()) return phrase;
  auto ends_with = [&](std::string_view s) { return phrase.ends_with(s); };
  if (ends_with("s") || ends_with("x") || ends_with("ch") || ends_with("sh")) {
    return phrase + "es";
  }
  if (phrase.size() >= 2 && phrase.back() == 'y' &&
      std::string_view("aeiou").find(phrase[phrase.size() - 2]) ==
          std::string_view::npos) {
    return phrase.substr(0, phrase.size() - 1) + "ies";
  }
  return phrase + "s";
}

}  // namespace clarify
