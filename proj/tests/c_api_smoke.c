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

/* Plain C client of the shared library. */

#include <stdio.h>
#include <string.h>

#include "clarify/clarify.h"

static int check(clr_status s, const char* what) {
  if (s != CLR_OK) {
    fprintf(stderr, "%s: %s: %s\n", what, clr_status_name(s), clr_last_error());
    return 1;
  }
  return 0;
}

int main(int argc, char** argv) {
  clr_corpus* corpus = NULL;
  clr_ces* ces = NULL;
  clr_predictions* preds = NULL;
  clr_report* report = NULL;
  clr_eval_options opts;
  clr_resolver_spec spec;
  char* md = NULL;
  int rc = 0;

  if (argc != 2) {
    fprintf(stderr, "usage: %s corpus.json\n", argv[0]);
    return 2;
  }
  if (check(clr_corpus_load(argv[1], CLR_MODE_STRICT, &corpus), "load")) return 1;
  rc |= check(clr_ces_extract(corpus, &ces), "extract");
  rc |= check(clr_ces_tag(ces, corpus, NULL, 1), "tag");

  spec.kind = "oracle";
  spec.seed = 0;
  spec.context_window = 0;
  spec.use_after_cr = 0;
  rc |= check(clr_resolve(corpus, ces, NULL, &spec, 1, &preds), "resolve");

  clr_eval_options_init(&opts);
  rc |= check(clr_evaluate(corpus, preds, ces, &opts, &report), "evaluate");
  rc |= check(clr_report_render(report, CLR_FORMAT_MARKDOWN, &md), "render");
  if (rc == 0 && strstr(md, "| CR Turns | 100.0 (.00) | 100.0 (.00) | +0.0% |") == NULL) {
    fprintf(stderr, "unexpected report:\n%s", md);
    rc = 1;
  }

  clr_string_free(md);
  clr_report_free(report);
  clr_predictions_free(preds);
  clr_ces_free(ces);
  clr_corpus_free(corpus);
  return rc;
}
