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

#include "clarify/clarify.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "clarify/ce_extractor.hpp"
#include "clarify/corpus.hpp"
#include "clarify/error.hpp"
#include "clarify/eval.hpp"
#include "clarify/synth.hpp"
#include "clarify/tagger.hpp"
#include "json.hpp"

struct clr_corpus {
  clarify::Corpus value;
};
struct clr_rules {
  clarify::RuleSet value;
};
struct clr_ces {
  std::vector<clarify::ClarificationExchange> value;
};
struct clr_predictions {
  clarify::PredictionSet value;
};
struct clr_report {
  clarify::EvalReport value;
};

namespace {

thread_local std::string g_last_error;

clr_status StatusFor(clarify::ErrorKind kind) {
  switch (kind) {
    case clarify::ErrorKind::kIo: return CLR_ERR_IO;
    case clarify::ErrorKind::kFormat: return CLR_ERR_FORMAT;
    case clarify::ErrorKind::kValidation: return CLR_ERR_VALIDATION;
    case clarify::ErrorKind::kConfig: return CLR_ERR_CONFIG;
    case clarify::ErrorKind::kIntegrity: return CLR_ERR_INTEGRITY;
  }
  return CLR_ERR_INTERNAL;
}

template <typename Fn>
clr_status Guard(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return CLR_OK;
  } catch (const clarify::Error& e) {
    g_last_error = e.what();
    return StatusFor(e.kind());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return CLR_ERR_FORMAT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CLR_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CLR_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return CLR_ERR_INTERNAL;
  }
}

clr_status InvalidArgument(const char* what) {
  g_last_error = std::string("invalid argument: ") + what;
  return CLR_ERR_INVALID_ARGUMENT;
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

clarify::ValidationMode ModeFor(clr_mode mode) {
  return mode == CLR_MODE_LENIENT ? clarify::ValidationMode::kLenient
                                  : clarify::ValidationMode::kStrict;
}

template <typename T, typename V>
T* Wrap(V&& value) {
  return new T{std::forward<V>(value)};
}

}  // namespace

extern "C" {

const char* clr_version(void) { return "0.1.0"; }

const char* clr_last_error(void) { return g_last_error.c_str(); }

const char* clr_status_name(clr_status status) {
  switch (status) {
    case CLR_OK: return "ok";
    case CLR_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case CLR_ERR_VALIDATION: return "validation";
    case CLR_ERR_CONFIG: return "config";
    case CLR_ERR_INTEGRITY: return "integrity";
    case CLR_ERR_IO: return "io";
    case CLR_ERR_FORMAT: return "format";
    case CLR_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void clr_string_free(char* s) { std::free(s); }

clr_status clr_corpus_load(const char* path, clr_mode mode, clr_corpus** out) {
  if (path == nullptr || out == nullptr) return InvalidArgument("path/out");
  return Guard([&] {
    *out = Wrap<clr_corpus>(clarify::load_canonical_corpus(path, ModeFor(mode)));
  });
}

clr_status clr_corpus_from_json(const char* json, clr_mode mode,
                                clr_corpus** out) {
  if (json == nullptr || out == nullptr) return InvalidArgument("json/out");
  return Guard([&] {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      throw clarify::FormatError(std::string("corpus: ") + e.what());
    }
    clarify::Corpus corpus = clarify::corpus_from_json(doc);
    clarify::require_valid(clarify::validate_corpus(corpus, ModeFor(mode)));
    *out = Wrap<clr_corpus>(std::move(corpus));
  });
}

clr_status clr_corpus_load_simmc(const char* dialogue_file,
                                 const char* scene_dir,
                                 const char* const* metadata_files,
                                 size_t n_metadata_files, clr_mode mode,
                                 clr_corpus** out) {
  if (dialogue_file == nullptr || scene_dir == nullptr || out == nullptr ||
      (n_metadata_files > 0 && metadata_files == nullptr)) {
    return InvalidArgument("dialogue_file/scene_dir/metadata_files/out");
  }
  return Guard([&] {
    std::vector<std::filesystem::path> meta(metadata_files,
                                            metadata_files + n_metadata_files);
    *out = Wrap<clr_corpus>(
        clarify::load_simmc_corpus(dialogue_file, scene_dir, meta, ModeFor(mode)));
  });
}

clr_status clr_corpus_synthesize(const char* config_json, uint64_t seed,
                                 clr_corpus** out) {
  if (out == nullptr) return InvalidArgument("out");
  return Guard([&] {
    clarify::SynthConfig config = clarify::SynthConfig::defaults();
    if (config_json != nullptr) {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(config_json);
      } catch (const nlohmann::json::parse_error& e) {
        throw clarify::FormatError(std::string("synth config: ") + e.what());
      }
      config = clarify::SynthConfig::from_json(doc);
    }
    *out = Wrap<clr_corpus>(clarify::generate_corpus(config, seed));
  });
}

clr_status clr_corpus_to_json(const clr_corpus* corpus, char** out) {
  if (corpus == nullptr || out == nullptr) return InvalidArgument("corpus/out");
  return Guard([&] {
    *out = CopyString(clarify::corpus_to_json(corpus->value).dump(2) + "\n");
  });
}

clr_status clr_corpus_validate(const clr_corpus* corpus, clr_mode mode,
                               char** out, size_t* n_errors) {
  if (corpus == nullptr || out == nullptr) return InvalidArgument("corpus/out");
  return Guard([&] {
    const auto report = clarify::validate_corpus(corpus->value, ModeFor(mode));
    *out = CopyString(clarify::validation_report_to_json(report).dump(2) + "\n");
    if (n_errors != nullptr) *n_errors = report.error_count();
  });
}

clr_status clr_corpus_stats(const clr_corpus* corpus, const clr_ces* ces,
                            char** out) {
  if (corpus == nullptr || out == nullptr) return InvalidArgument("corpus/out");
  return Guard([&] {
    nlohmann::json doc;
    if (ces != nullptr) {
      doc = clarify::corpus_report(corpus->value, ces->value);
    } else {
      doc = clarify::corpus_report(corpus->value,
                                   clarify::extract_ces(corpus->value).ces);
    }
    *out = CopyString(doc.dump(2) + "\n");
  });
}

size_t clr_corpus_dialogue_count(const clr_corpus* corpus) {
  return corpus == nullptr ? 0 : corpus->value.dialogues.size();
}

void clr_corpus_free(clr_corpus* corpus) { delete corpus; }

clr_status clr_rules_load(const char* path, clr_rules** out) {
  if (out == nullptr) return InvalidArgument("out");
  return Guard([&] {
    *out = path == nullptr ? Wrap<clr_rules>(clarify::RuleSet::defaults())
                           : Wrap<clr_rules>(clarify::RuleSet::load(path));
  });
}

clr_status clr_rules_from_json(const char* json, clr_rules** out) {
  if (json == nullptr || out == nullptr) return InvalidArgument("json/out");
  return Guard([&] {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      throw clarify::FormatError(std::string("rules: ") + e.what());
    }
    *out = Wrap<clr_rules>(clarify::RuleSet::from_json(doc));
  });
}

clr_status clr_rules_default_json(char** out) {
  if (out == nullptr) return InvalidArgument("out");
  return Guard([&] { *out = CopyString(clarify::RuleSet::default_json()); });
}

void clr_rules_free(clr_rules* rules) { delete rules; }

clr_status clr_ces_extract(const clr_corpus* corpus, clr_ces** out) {
  if (corpus == nullptr || out == nullptr) return InvalidArgument("corpus/out");
  return Guard([&] {
    *out = Wrap<clr_ces>(clarify::extract_ces(corpus->value).ces);
  });
}

clr_status clr_ces_load(const char* path, const clr_corpus* corpus,
                        clr_ces** out) {
  if (path == nullptr || corpus == nullptr || out == nullptr) {
    return InvalidArgument("path/corpus/out");
  }
  return Guard([&] {
    auto ces = clarify::load_ces(path);
    clarify::check_ces_against(corpus->value, ces);
    *out = Wrap<clr_ces>(std::move(ces));
  });
}

clr_status clr_ces_tag(clr_ces* ces, const clr_corpus* corpus,
                       const clr_rules* rules, int jobs) {
  if (ces == nullptr || corpus == nullptr) return InvalidArgument("ces/corpus");
  return Guard([&] {
    const clarify::RuleSet& r =
        rules == nullptr ? clarify::RuleSet::defaults() : rules->value;
    const clarify::Lexicon lexicon = clarify::build_lexicon(corpus->value, r);
    clarify::tag_all(ces->value, lexicon, r, jobs);
  });
}

clr_status clr_ces_to_json(const clr_ces* ces, char** out) {
  if (ces == nullptr || out == nullptr) return InvalidArgument("ces/out");
  return Guard([&] {
    *out = CopyString(clarify::ces_to_json(ces->value).dump(2) + "\n");
  });
}

size_t clr_ces_count(const clr_ces* ces) {
  return ces == nullptr ? 0 : ces->value.size();
}

void clr_ces_free(clr_ces* ces) { delete ces; }

clr_status clr_predictions_load(const char* path, clr_predictions** out) {
  if (path == nullptr || out == nullptr) return InvalidArgument("path/out");
  return Guard([&] {
    *out = Wrap<clr_predictions>(clarify::load_predictions(path));
  });
}

clr_status clr_resolve(const clr_corpus* corpus, const clr_ces* ces,
                       const clr_rules* rules, const clr_resolver_spec* spec,
                       int jobs, clr_predictions** out) {
  if (corpus == nullptr || spec == nullptr || spec->kind == nullptr ||
      out == nullptr) {
    return InvalidArgument("corpus/spec/out");
  }
  return Guard([&] {
    const auto kind = clarify::parse_resolver(spec->kind);
    if (!kind) {
      throw clarify::ConfigError(std::string("unknown resolver '") +
                                 spec->kind +
                                 "' (oracle, random, recent_mention, "
                                 "property_match)");
    }
    if (spec->context_window < 0) {
      throw clarify::ConfigError("context window must be >= 0");
    }
    clarify::ResolverSpec s;
    s.kind = *kind;
    s.seed = spec->seed;
    s.context_window = spec->context_window;
    s.use_after_cr = spec->use_after_cr != 0;
    const clarify::RuleSet& r =
        rules == nullptr ? clarify::RuleSet::defaults() : rules->value;
    const clarify::Lexicon lexicon = clarify::build_lexicon(corpus->value, r);
    std::vector<clarify::ClarificationExchange> extracted;
    if (ces == nullptr) extracted = clarify::extract_ces(corpus->value).ces;
    const auto& list = ces == nullptr ? extracted : ces->value;
    *out = Wrap<clr_predictions>(
        clarify::run_resolver(corpus->value, s, list, lexicon, r, jobs));
  });
}

clr_status clr_predictions_to_jsonl(const clr_predictions* preds, char** out) {
  if (preds == nullptr || out == nullptr) return InvalidArgument("preds/out");
  return Guard([&] {
    *out = CopyString(clarify::predictions_to_jsonl(preds->value));
  });
}

size_t clr_predictions_count(const clr_predictions* preds) {
  return preds == nullptr ? 0 : preds->value.predictions.size();
}

void clr_predictions_free(clr_predictions* preds) { delete preds; }

void clr_eval_options_init(clr_eval_options* options) {
  if (options == nullptr) return;
  *options = clr_eval_options{};
  options->mode = CLR_MODE_STRICT;
  options->macro_aggregation = 0;
  options->jobs = 1;
}

clr_status clr_evaluate(const clr_corpus* corpus, const clr_predictions* preds,
                        const clr_ces* ces, const clr_eval_options* options,
                        clr_report** out) {
  if (corpus == nullptr || preds == nullptr || ces == nullptr || out == nullptr) {
    return InvalidArgument("corpus/preds/ces/out");
  }
  return Guard([&] {
    clarify::EvalOptions o;
    if (options != nullptr) {
      o.mode = ModeFor(options->mode);
      o.aggregation = options->macro_aggregation ? clarify::Aggregation::kMacro
                                                 : clarify::Aggregation::kMicro;
      o.scoring.skip_empty = options->skip_empty != 0;
      o.scoring.f1_mode = options->arithmetic_f1 ? clarify::F1Mode::kArithmetic
                                                 : clarify::F1Mode::kHarmonic;
      o.all_turns_complement = options->all_turns_complement != 0;
      o.jobs = options->jobs;
    }
    *out = Wrap<clr_report>(
        clarify::evaluate(corpus->value, preds->value, ces->value, o));
  });
}

clr_status clr_report_render(const clr_report* report, clr_format format,
                             char** out) {
  if (report == nullptr || out == nullptr) return InvalidArgument("report/out");
  return Guard([&] {
    clarify::ReportFormat f = clarify::ReportFormat::kMarkdown;
    switch (format) {
      case CLR_FORMAT_MARKDOWN: f = clarify::ReportFormat::kMarkdown; break;
      case CLR_FORMAT_CSV: f = clarify::ReportFormat::kCsv; break;
      case CLR_FORMAT_STRUCTURED: f = clarify::ReportFormat::kStructured; break;
      default: throw clarify::ConfigError("unknown report format");
    }
    *out = CopyString(clarify::render_report(report->value, f));
  });
}

void clr_report_free(clr_report* report) { delete report; }

}  // extern "C"
