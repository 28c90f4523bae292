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

/*
 * C interface to the clarification-exchange toolkit.
 *
 * Every object is an opaque handle created by a clr_*_load / clr_*_create
 * style call and released with the matching clr_*_free. Functions return a
 * clr_status; on failure the message is available from clr_last_error() on
 * the same thread until the next call. Strings returned through `char**`
 * are owned by the caller and must be released with clr_string_free().
 */
#ifndef CLARIFY_CLARIFY_H_
#define CLARIFY_CLARIFY_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CLARIFY_BUILDING_LIBRARY)
#    define CLR_API __declspec(dllexport)
#  else
#    define CLR_API __declspec(dllimport)
#  endif
#else
#  define CLR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum clr_status {
  CLR_OK = 0,
  CLR_ERR_INVALID_ARGUMENT = 1,
  CLR_ERR_VALIDATION = 2,
  CLR_ERR_CONFIG = 3,
  CLR_ERR_INTEGRITY = 4,
  CLR_ERR_IO = 5,
  CLR_ERR_FORMAT = 6,
  CLR_ERR_INTERNAL = 7
} clr_status;

typedef enum clr_mode { CLR_MODE_STRICT = 0, CLR_MODE_LENIENT = 1 } clr_mode;

typedef enum clr_format {
  CLR_FORMAT_MARKDOWN = 0,
  CLR_FORMAT_CSV = 1,
  CLR_FORMAT_STRUCTURED = 2
} clr_format;

typedef struct clr_corpus clr_corpus;
typedef struct clr_rules clr_rules;
typedef struct clr_ces clr_ces;
typedef struct clr_predictions clr_predictions;
typedef struct clr_report clr_report;

CLR_API const char* clr_version(void);
CLR_API const char* clr_last_error(void);
CLR_API const char* clr_status_name(clr_status status);
CLR_API void clr_string_free(char* s);

/* Corpus ---------------------------------------------------------------- */

CLR_API clr_status clr_corpus_load(const char* path, clr_mode mode,
                                   clr_corpus** out);
CLR_API clr_status clr_corpus_from_json(const char* json, clr_mode mode,
                                        clr_corpus** out);
CLR_API clr_status clr_corpus_load_simmc(const char* dialogue_file,
                                         const char* scene_dir,
                                         const char* const* metadata_files,
                                         size_t n_metadata_files,
                                         clr_mode mode, clr_corpus** out);
/* config_json may be NULL for the built-in configuration. */
CLR_API clr_status clr_corpus_synthesize(const char* config_json,
                                         uint64_t seed, clr_corpus** out);
CLR_API clr_status clr_corpus_to_json(const clr_corpus* corpus, char** out);
/* Writes the validation report document; n_errors may be NULL. */
CLR_API clr_status clr_corpus_validate(const clr_corpus* corpus, clr_mode mode,
                                       char** out, size_t* n_errors);
/* Corpus, exchange and candidate-object statistics as a JSON document.
 * `ces` may be NULL; when given (tagged), candidate-object statistics are
 * broken down per subset. */
CLR_API clr_status clr_corpus_stats(const clr_corpus* corpus,
                                    const clr_ces* ces, char** out);
CLR_API size_t clr_corpus_dialogue_count(const clr_corpus* corpus);
CLR_API void clr_corpus_free(clr_corpus* corpus);

/* Tagging rules ---------------------------------------------------------- */

/* path may be NULL for the built-in rules. */
CLR_API clr_status clr_rules_load(const char* path, clr_rules** out);
CLR_API clr_status clr_rules_from_json(const char* json, clr_rules** out);
CLR_API clr_status clr_rules_default_json(char** out);
CLR_API void clr_rules_free(clr_rules* rules);

/* Clarificational exchanges ----------------------------------------------- */

CLR_API clr_status clr_ces_extract(const clr_corpus* corpus, clr_ces** out);
/* Loads an exchange list and checks it against `corpus`. */
CLR_API clr_status clr_ces_load(const char* path, const clr_corpus* corpus,
                                clr_ces** out);
CLR_API clr_status clr_ces_tag(clr_ces* ces, const clr_corpus* corpus,
                               const clr_rules* rules, int jobs);
CLR_API clr_status clr_ces_to_json(const clr_ces* ces, char** out);
CLR_API size_t clr_ces_count(const clr_ces* ces);
CLR_API void clr_ces_free(clr_ces* ces);

/* Predictions and resolvers ------------------------------------------------ */

typedef struct clr_resolver_spec {
  const char* kind; /* oracle | random | recent_mention | property_match */
  uint64_t seed;
  int context_window;
  int use_after_cr;
} clr_resolver_spec;

CLR_API clr_status clr_predictions_load(const char* path, clr_predictions** out);
/* `ces` may be NULL, in which case exchanges are extracted from `corpus`;
 * `rules` may be NULL for the built-in rules. */
CLR_API clr_status clr_resolve(const clr_corpus* corpus, const clr_ces* ces,
                               const clr_rules* rules,
                               const clr_resolver_spec* spec, int jobs,
                               clr_predictions** out);
CLR_API clr_status clr_predictions_to_jsonl(const clr_predictions* preds,
                                            char** out);
CLR_API size_t clr_predictions_count(const clr_predictions* preds);
CLR_API void clr_predictions_free(clr_predictions* preds);

/* Evaluation --------------------------------------------------------------- */

typedef struct clr_eval_options {
  clr_mode mode;
  int macro_aggregation;    /* 0: micro (pooled counts), 1: macro mean */
  int skip_empty;           /* leave both-empty turns out of macro stats */
  int arithmetic_f1;        /* mean of P and R instead of harmonic */
  int all_turns_complement; /* All Turns over non-exchange turns only */
  int jobs;
} clr_eval_options;

CLR_API void clr_eval_options_init(clr_eval_options* options);
CLR_API clr_status clr_evaluate(const clr_corpus* corpus,
                                const clr_predictions* preds,
                                const clr_ces* ces,
                                const clr_eval_options* options,
                                clr_report** out);
CLR_API clr_status clr_report_render(const clr_report* report,
                                     clr_format format, char** out);
CLR_API void clr_report_free(clr_report* report);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* CLARIFY_CLARIFY_H_ */
