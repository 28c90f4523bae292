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

#ifndef CLARIFY_SRC_EMBEDDED_HPP_
#define CLARIFY_SRC_EMBEDDED_HPP_

#include <string>

namespace clarify::internal {

// Contents of data/default_rules.json and data/default_synth_config.json at
// build time.
const std::string& DefaultRulesJson();
const std::string& DefaultSynthConfigJson();

}  // namespace clarify::internal

#endif  // CLARIFY_SRC_EMBEDDED_HPP_
