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

#ifndef CLARIFY_EVAL_HPP_
#define CLARIFY_EVAL_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clarify/ce_extractor.hpp"
#include "clarify/corpus.hpp"
#include "clarify/metrics.hpp"
#include "clarify/tagger.hpp"
#include "json.hpp"

namespace clarify {

struct PredictionSet {
  std::string model_name;
  std::map<TurnKey, ObjectSet> predictions;

  bool operator==(const PredictionSet&) const = default;
};

// Line-delimited records {"dialogue_id", "turn_idx", "predicted_objects"}.
// Blank lines are skipped. Duplicate keys are an error.
PredictionSet parse_predictions(const std::string& text,
                                const std::string& model_name);
PredictionSet load_predictions(const std::filesystem::path& path);
std::string predictions_to_jsonl(const PredictionSet& preds);

// ---------------------------------------------------------------------------
// Heuristic resolvers

enum class ResolverKind { kOracle, kRandom, kRecentMention, kPropertyMatch };

std::string_view resolver_name(ResolverKind kind);
std::optional<ResolverKind> parse_resolver(std::string_view name);

struct ResolverSpec {
  ResolverKind kind = ResolverKind::kOracle;
  std::uint64_t seed = 0;
  // Prior turns visible to recent_mention; 0 means the whole history.
  int context_window = 0;
  // property_match: on an After-CR turn, also read the Before-CR utterance
  // and the CR itself.
  bool use_after_cr = false;
};

// Predicts every user turn of the corpus. Random draws are seeded per turn
// from (seed, dialogue_id, turn_idx), so `jobs` never changes the output.
PredictionSet run_resolver(const Corpus& corpus, const ResolverSpec& spec,
                           const std::vector<ClarificationExchange>& ces,
                           const Lexicon& lexicon, const RuleSet& rules,
                           int jobs = 1);

// Objects of `scene` matching every attribute phrase found in `text`,
// narrowed by positional words (left/right/top/bottom). Empty when the text
// names no attribute.
ObjectSet property_match(const Scene& scene, const std::string& text,
                         const Lexicon& lexicon, const RuleSet& rules);

// ---------------------------------------------------------------------------
// Evaluation

enum class Subset {
  kAllTurns,
  kCRTurns,
  kIndividualProperty,
  kDialogueHistory,
  kRelationalContext,
  kUnclassified,
};

std::string_view subset_name(Subset s);
std::string_view subset_display_name(Subset s);

struct EvalOptions {
  ValidationMode mode = ValidationMode::kStrict;
  Aggregation aggregation = Aggregation::kMicro;
  AggregateOptions scoring;
  // All Turns row over user turns outside any exchange instead of all turns.
  bool all_turns_complement = false;
  int jobs = 1;
};

struct ReportRow {
  Subset subset = Subset::kAllTurns;
  std::size_t n_ces = 0;
  // All Turns: `single` only. Other rows: `delta`.
  std::optional<AggregateScore> single;
  std::optional<DeltaResult> delta;
};

struct EvalReport {
  std::string model_name;
  Aggregation aggregation = Aggregation::kMicro;
  F1Mode f1_mode = F1Mode::kHarmonic;
  bool skip_empty = false;
  bool all_turns_complement = false;
  std::size_t n_truncated_excluded = 0;
  std::vector<ReportRow> rows;

  const ReportRow* row(Subset s) const;
};

// Every exchange in `ces` must carry tags. Truncated exchanges are left out
// of every before/after row. A multi-tag exchange counts toward each of its
// tag rows.
EvalReport evaluate(const Corpus& corpus, const PredictionSet& preds,
                    const std::vector<ClarificationExchange>& ces,
                    const EvalOptions& options = {});

enum class ReportFormat { kMarkdown, kCsv, kStructured };

std::optional<ReportFormat> parse_report_format(std::string_view name);
std::string render_report(const EvalReport& report, ReportFormat format);
nlohmann::json report_to_json(const EvalReport& report);

// Corpus statistics, exchange counts and candidate-object ambiguity per
// subset (All Turns, CR Turns, and per tag when the exchanges are tagged).
// Subsets other than All Turns use the Before-CR turns of their exchanges.
nlohmann::json corpus_report(const Corpus& corpus,
                             const std::vector<ClarificationExchange>& ces);

// "+11.1%", "-20.1%", or "n/a".
std::string format_delta(const std::optional<double>& delta_pct);

}  // namespace clarify

#endif  // CLARIFY_EVAL_HPP_
