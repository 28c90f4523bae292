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

// clarify: batch pipeline over clarificational exchanges.
//
//   clarify synth --seed 1 --out corpus.json
//   clarify extract-ce --corpus corpus.json --out ces.json
//   clarify tag --corpus corpus.json --ces ces.json --out tagged.json
//   clarify resolve --corpus corpus.json --resolver oracle --out preds.jsonl
//   clarify evaluate --corpus corpus.json --ces tagged.json \
//       --predictions preds.jsonl --format markdown

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "clarify/clarify.h"

namespace {

constexpr const char* kRulesEnv = "CLARIFY_RULES";

// Exit codes.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kIo = 2;

class Failure {
 public:
  Failure(int code, std::string message)
      : code_(code), message_(std::move(message)) {}
  int code() const { return code_; }
  const std::string& message() const { return message_; }

 private:
  int code_;
  std::string message_;
};

int ExitCodeFor(clr_status status) {
  switch (status) {
    case CLR_OK: return kOk;
    case CLR_ERR_IO:
    case CLR_ERR_FORMAT: return kIo;
    default: return kUsage;
  }
}

void Check(clr_status status) {
  if (status != CLR_OK) {
    throw Failure(ExitCodeFor(status), std::string(clr_status_name(status)) +
                                           " error: " + clr_last_error());
  }
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using CorpusPtr = std::unique_ptr<clr_corpus, Deleter<clr_corpus, clr_corpus_free>>;
using RulesPtr = std::unique_ptr<clr_rules, Deleter<clr_rules, clr_rules_free>>;
using CesPtr = std::unique_ptr<clr_ces, Deleter<clr_ces, clr_ces_free>>;
using PredsPtr =
    std::unique_ptr<clr_predictions, Deleter<clr_predictions, clr_predictions_free>>;
using ReportPtr = std::unique_ptr<clr_report, Deleter<clr_report, clr_report_free>>;

std::string TakeString(char* s) {
  std::string out(s);
  clr_string_free(s);
  return out;
}

struct Options {
  std::string corpus;
  std::string predictions;
  std::string ces;
  std::string rules;
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  std::string format = "markdown";
  std::string mode = "strict";
  int jobs = 1;
  bool force = false;

  // ingest
  std::string simmc_dialogs;
  std::string simmc_scenes;
  std::vector<std::string> simmc_metadata;

  // resolve
  std::string resolver = "oracle";
  int context_window = 0;
  bool use_after_cr = false;

  // evaluate
  std::string aggregation = "micro";
  bool skip_empty = false;
  bool arithmetic_f1 = false;
  bool all_turns_complement = false;
};

clr_mode Mode(const Options& o) {
  return o.mode == "lenient" ? CLR_MODE_LENIENT : CLR_MODE_STRICT;
}

// Refuses to clobber an existing file unless --force was given.
void CheckOutput(const Options& o) {
  if (o.out.empty() || o.force) return;
  std::error_code ec;
  if (std::filesystem::exists(o.out, ec)) {
    throw Failure(kUsage, "refusing to overwrite " + o.out + " (use --force)");
  }
}

void Emit(const Options& o, const std::string& data) {
  if (o.out.empty()) {
    std::cout << data;
    std::cout.flush();
    if (!std::cout) throw Failure(kIo, "io error: cannot write to stdout");
    return;
  }
  std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
  f << data;
  f.close();
  if (!f) throw Failure(kIo, "io error: cannot write " + o.out);
}

std::string Require(const std::string& value, const char* flag) {
  if (value.empty()) throw Failure(kUsage, std::string(flag) + " is required");
  return value;
}

CorpusPtr LoadCorpus(const Options& o) {
  clr_corpus* c = nullptr;
  Check(clr_corpus_load(Require(o.corpus, "--corpus").c_str(), Mode(o), &c));
  return CorpusPtr(c);
}

RulesPtr LoadRules(const Options& o) {
  std::string path = o.rules;
  if (path.empty()) {
    if (const char* env = std::getenv(kRulesEnv); env != nullptr && *env) {
      path = env;
    }
  }
  clr_rules* r = nullptr;
  Check(clr_rules_load(path.empty() ? nullptr : path.c_str(), &r));
  return RulesPtr(r);
}

CesPtr LoadCes(const Options& o, const clr_corpus* corpus) {
  clr_ces* c = nullptr;
  Check(clr_ces_load(Require(o.ces, "--ces").c_str(), corpus, &c));
  return CesPtr(c);
}

std::string ReadText(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Failure(kIo, "io error: cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void RunIngest(const Options& o) {
  CheckOutput(o);
  clr_corpus* c = nullptr;
  if (!o.simmc_dialogs.empty()) {
    std::vector<const char*> meta;
    for (const auto& m : o.simmc_metadata) meta.push_back(m.c_str());
    Check(clr_corpus_load_simmc(o.simmc_dialogs.c_str(),
                                Require(o.simmc_scenes, "--simmc-scenes").c_str(),
                                meta.data(), meta.size(), Mode(o), &c));
  } else {
    Check(clr_corpus_load(Require(o.corpus, "--corpus or --simmc-dialogs").c_str(),
                          Mode(o), &c));
  }
  CorpusPtr corpus(c);
  char* s = nullptr;
  Check(clr_corpus_to_json(corpus.get(), &s));
  Emit(o, TakeString(s));
}

void RunStats(const Options& o) {
  CheckOutput(o);
  CorpusPtr corpus = LoadCorpus(o);
  CesPtr ces;
  if (!o.ces.empty()) ces = LoadCes(o, corpus.get());
  char* s = nullptr;
  Check(clr_corpus_stats(corpus.get(), ces.get(), &s));
  Emit(o, TakeString(s));
}

void RunExtract(const Options& o) {
  CheckOutput(o);
  CorpusPtr corpus = LoadCorpus(o);
  clr_ces* c = nullptr;
  Check(clr_ces_extract(corpus.get(), &c));
  CesPtr ces(c);
  char* s = nullptr;
  Check(clr_ces_to_json(ces.get(), &s));
  Emit(o, TakeString(s));
}

void RunTag(const Options& o) {
  CheckOutput(o);
  CorpusPtr corpus = LoadCorpus(o);
  RulesPtr rules = LoadRules(o);
  CesPtr ces;
  if (o.ces.empty()) {
    clr_ces* c = nullptr;
    Check(clr_ces_extract(corpus.get(), &c));
    ces.reset(c);
  } else {
    ces = LoadCes(o, corpus.get());
  }
  Check(clr_ces_tag(ces.get(), corpus.get(), rules.get(), o.jobs));
  char* s = nullptr;
  Check(clr_ces_to_json(ces.get(), &s));
  Emit(o, TakeString(s));
}

void RunResolve(const Options& o) {
  CheckOutput(o);
  CorpusPtr corpus = LoadCorpus(o);
  RulesPtr rules = LoadRules(o);
  CesPtr ces;
  if (!o.ces.empty()) ces = LoadCes(o, corpus.get());
  clr_resolver_spec spec{o.resolver.c_str(), o.seed, o.context_window,
                         o.use_after_cr ? 1 : 0};
  clr_predictions* p = nullptr;
  Check(clr_resolve(corpus.get(), ces.get(), rules.get(), &spec, o.jobs, &p));
  PredsPtr preds(p);
  char* s = nullptr;
  Check(clr_predictions_to_jsonl(preds.get(), &s));
  Emit(o, TakeString(s));
}

void RunEvaluate(const Options& o) {
  CheckOutput(o);
  CorpusPtr corpus = LoadCorpus(o);
  CesPtr ces = LoadCes(o, corpus.get());
  clr_predictions* p = nullptr;
  Check(clr_predictions_load(Require(o.predictions, "--predictions").c_str(), &p));
  PredsPtr preds(p);

  clr_eval_options opts;
  clr_eval_options_init(&opts);
  opts.mode = Mode(o);
  opts.macro_aggregation = o.aggregation == "macro" ? 1 : 0;
  opts.skip_empty = o.skip_empty ? 1 : 0;
  opts.arithmetic_f1 = o.arithmetic_f1 ? 1 : 0;
  opts.all_turns_complement = o.all_turns_complement ? 1 : 0;
  opts.jobs = o.jobs;
  clr_report* r = nullptr;
  Check(clr_evaluate(corpus.get(), preds.get(), ces.get(), &opts, &r));
  ReportPtr report(r);

  static const std::map<std::string, clr_format> kFormats = {
      {"markdown", CLR_FORMAT_MARKDOWN},
      {"csv", CLR_FORMAT_CSV},
      {"structured", CLR_FORMAT_STRUCTURED}};
  char* s = nullptr;
  Check(clr_report_render(report.get(), kFormats.at(o.format), &s));
  Emit(o, TakeString(s));
}

void RunSynth(const Options& o) {
  CheckOutput(o);
  std::string config;
  if (!o.config.empty()) config = ReadText(o.config);
  clr_corpus* c = nullptr;
  Check(clr_corpus_synthesize(o.config.empty() ? nullptr : config.c_str(),
                              o.seed, &c));
  CorpusPtr corpus(c);
  char* s = nullptr;
  Check(clr_corpus_to_json(corpus.get(), &s));
  Emit(o, TakeString(s));
}

void AddCommon(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "Output file (default: stdout)");
  sub->add_flag("--force", o.force, "Overwrite an existing output file");
  sub->add_option("--mode", o.mode, "Corpus validation mode")
      ->check(CLI::IsMember({"strict", "lenient"}));
}

void AddCorpus(CLI::App* sub, Options& o) {
  sub->add_option("--corpus", o.corpus, "Canonical corpus file");
}

void AddRules(CLI::App* sub, Options& o) {
  sub->add_option("--rules", o.rules,
                  std::string("Tagging rules file (default: $") + kRulesEnv +
                      " or built-in rules)");
}

void AddJobs(CLI::App* sub, Options& o) {
  sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1, 1024));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clarificational exchange extraction, tagging and evaluation"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(clr_version()));
  Options o;

  auto* ingest = app.add_subcommand("ingest", "Convert a corpus to canonical form");
  AddCorpus(ingest, o);
  AddCommon(ingest, o);
  ingest->add_option("--simmc-dialogs", o.simmc_dialogs, "SIMMC dialogue json");
  ingest->add_option("--simmc-scenes", o.simmc_scenes, "SIMMC scene directory");
  ingest->add_option("--simmc-metadata", o.simmc_metadata,
                     "SIMMC prefab metadata file (repeatable)");

  auto* stats = app.add_subcommand("stats", "Corpus and ambiguity statistics");
  AddCorpus(stats, o);
  AddCommon(stats, o);
  stats->add_option("--ces", o.ces, "Tagged exchanges for per-tag breakdown");

  auto* extract = app.add_subcommand("extract-ce", "Extract clarificational exchanges");
  AddCorpus(extract, o);
  AddCommon(extract, o);

  auto* tag = app.add_subcommand("tag", "Tag exchanges by disambiguating property");
  AddCorpus(tag, o);
  AddCommon(tag, o);
  AddRules(tag, o);
  AddJobs(tag, o);
  tag->add_option("--ces", o.ces, "Exchanges (default: extracted from --corpus)");

  auto* resolve = app.add_subcommand("resolve", "Run a baseline resolver");
  AddCorpus(resolve, o);
  AddCommon(resolve, o);
  AddRules(resolve, o);
  AddJobs(resolve, o);
  resolve->add_option("--ces", o.ces, "Exchanges (default: extracted from --corpus)");
  resolve->add_option("--resolver", o.resolver, "Resolver")
      ->check(CLI::IsMember({"oracle", "random", "recent_mention", "property_match"}));
  resolve->add_option("--seed", o.seed, "Seed for the random resolver");
  resolve->add_option("--context-window", o.context_window,
                      "Prior turns visible to recent_mention (0: all)")
      ->check(CLI::NonNegativeNumber);
  resolve->add_flag("--use-after-cr", o.use_after_cr,
                    "property_match reads the exchange on After-CR turns");

  auto* evaluate = app.add_subcommand("evaluate", "Score predictions");
  AddCorpus(evaluate, o);
  AddCommon(evaluate, o);
  AddJobs(evaluate, o);
  evaluate->add_option("--predictions", o.predictions, "Predictions jsonl");
  evaluate->add_option("--ces", o.ces, "Tagged exchanges");
  evaluate->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"markdown", "csv", "structured"}));
  evaluate->add_option("--aggregation", o.aggregation, "Subset aggregation")
      ->check(CLI::IsMember({"micro", "macro"}));
  evaluate->add_flag("--skip-empty", o.skip_empty,
                     "Leave both-empty turns out of macro statistics");
  evaluate->add_flag("--arithmetic-f1", o.arithmetic_f1,
                     "Per-turn score as the mean of precision and recall");
  evaluate->add_flag("--all-turns-complement", o.all_turns_complement,
                     "All Turns row over turns outside any exchange");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  AddCommon(synth, o);
  synth->add_option("--config", o.config, "Generator config (default: built-in)");
  synth->add_option("--seed", o.seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "ingest") RunIngest(o);
    else if (name == "stats") RunStats(o);
    else if (name == "extract-ce") RunExtract(o);
    else if (name == "tag") RunTag(o);
    else if (name == "resolve") RunResolve(o);
    else if (name == "evaluate") RunEvaluate(o);
    else if (name == "synth") RunSynth(o);
  } catch (const Failure& f) {
    std::cerr << "clarify: " << f.message() << "\n";
    return f.code();
  }
  return kOk;
}
