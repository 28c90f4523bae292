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

#include <sstream>

#include "clarify/error.hpp"
#include "clarify/eval.hpp"

namespace clarify {

using nlohmann::json;

PredictionSet parse_predictions(const std::string& text,
                                const std::string& model_name) {
  PredictionSet preds;
  preds.model_name = model_name;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where = "predictions line " + std::to_string(line_no);
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      throw FormatError(where + ": " + e.what());
    }
    if (!rec.is_object()) throw FormatError(where + ": expected an object");
    auto field = [&](const char* name) -> const json& {
      auto it = rec.find(name);
      if (it == rec.end()) {
        throw FormatError(where + ": missing field '" + name + "'");
      }
      return *it;
    };
    const json& did = field("dialogue_id");
    const json& tidx = field("turn_idx");
    const json& objs = field("predicted_objects");
    if (!did.is_string()) throw FormatError(where + ": dialogue_id must be a string");
    if (!tidx.is_number_integer()) throw FormatError(where + ": turn_idx must be an integer");
    if (!objs.is_array()) throw FormatError(where + ": predicted_objects must be an array");
    TurnKey key{did.get<std::string>(), tidx.get<int>()};
    ObjectSet set;
    for (const auto& o : objs) {
      if (!o.is_number_integer()) {
        throw FormatError(where + ": predicted_objects must hold integers");
      }
      set.insert(o.get<int>());
    }
    if (!preds.predictions.emplace(key, std::move(set)).second) {
      throw FormatError(where + ": duplicate prediction for " + to_string(key));
    }
  }
  return preds;
}

PredictionSet load_predictions(const std::filesystem::path& path) {
  return parse_predictions(read_file(path), path.stem().string());
}

std::string predictions_to_jsonl(const PredictionSet& preds) {
  std::string out;
  for (const auto& [key, objects] : preds.predictions) {
    json rec = {{"dialogue_id", key.dialogue_id},
                {"turn_idx", key.turn_idx},
                {"predicted_objects", objects}};
    out += rec.dump();
    out += '\n';
  }
  return out;
}

}  // namespace clarify
