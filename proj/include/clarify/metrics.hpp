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

#ifndef CLARIFY_METRICS_HPP_
#define CLARIFY_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>

#include "clarify/corpus.hpp"

namespace clarify {

// How precision and recall combine into the per-turn score. kArithmetic
// (mean of P and R) exists for sensitivity analysis only.
enum class F1Mode { kHarmonic, kArithmetic };

enum class Aggregation { kMicro, kMacro };

std::string_view aggregation_name(Aggregation a);

struct TurnScore {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;

  bool both_empty() const { return tp == 0 && fp == 0 && fn == 0; }
};

// Precision is tp / (tp + fp); with nothing predicted it is 1 if nothing was
// expected either and 0 otherwise. Recall mirrors it. A turn with empty gold
// and empty prediction scores 1.
TurnScore score_counts(std::int64_t tp, std::int64_t fp, std::int64_t fn,
                       F1Mode mode = F1Mode::kHarmonic);

TurnScore turn_object_f1(const ObjectSet& gold, const ObjectSet& pred,
                         F1Mode mode = F1Mode::kHarmonic);

struct AggregateOptions {
  F1Mode f1_mode = F1Mode::kHarmonic;
  // Leave both-empty turns out of the macro statistics. Micro pooling is
  // unaffected since they contribute no counts.
  bool skip_empty = false;
};

struct AggregateScore {
  std::size_t n_turns = 0;
  std::size_t n_macro = 0;  // turns contributing to the macro statistics
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  double precision_micro = 0;
  double recall_micro = 0;
  double f1_micro = 0;
  double f1_macro_mean = 0;
  // Standard error of the per-turn F1 (sample SD / sqrt(n)).
  double f1_macro_se = 0;

  double f1(Aggregation a) const {
    return a == Aggregation::kMicro ? f1_micro : f1_macro_mean;
  }
};

// Scores must be in a fixed order (sorted turn keys) for the macro
// statistics to be bit-reproducible; micro results are exact regardless.
AggregateScore aggregate(std::span<const TurnScore> scores,
                         const AggregateOptions& options = {});

struct DeltaResult {
  AggregateScore before;
  AggregateScore after;
  Aggregation aggregation = Aggregation::kMicro;
  // (after - before) / before * 100; absent when before is 0.
  std::optional<double> delta_pct;
};

std::optional<double> relative_delta_pct(double before, double after);

DeltaResult relative_delta(const AggregateScore& before,
                           const AggregateScore& after,
                           Aggregation aggregation = Aggregation::kMicro);

struct AmbiguityStats {
  std::string attribute;
  double mean_candidates = 0;
  double sd_candidates = 0;  // population
  std::size_t n_observations = 0;
};

// For every gold object of every turn in `subset`: how many objects in the
// turn's scene share its `attribute` value, itself included. Throws
// ConfigError naming the available categories if no scene object has
// `attribute`.
AmbiguityStats candidate_object_stats(const Corpus& corpus,
                                      const std::set<TurnKey>& subset,
                                      const std::string& attribute);

}  // namespace clarify

#endif  // CLARIFY_METRICS_HPP_
