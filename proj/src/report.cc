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

#include <cstdio>
#include <sstream>

#include "clarify/eval.hpp"

namespace clarify {

using nlohmann::json;

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "markdown") return ReportFormat::kMarkdown;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "structured") return ReportFormat::kStructured;
  return std::nullopt;
}

namespace {

std::string Printf(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string Percent(double fraction) { return Printf("%.1f", fraction * 100.0); }

// 0.0123 -> ".01"
std::string ShortSe(double se) {
  std::string s = Printf("%.2f", se);
  if (s.starts_with("0.")) s.erase(0, 1);
  return s;
}

std::string Cell(const AggregateScore& a, Aggregation agg) {
  if (a.n_turns == 0) return "n/a";
  return Percent(a.f1(agg)) + " (" + ShortSe(a.f1_macro_se) + ")";
}

json AggregateToJson(const AggregateScore& a) {
  return {{"n_turns", a.n_turns},
          {"n_macro", a.n_macro},
          {"tp", a.tp},
          {"fp", a.fp},
          {"fn", a.fn},
          {"precision_micro", a.precision_micro},
          {"recall_micro", a.recall_micro},
          {"f1_micro", a.f1_micro},
          {"f1_macro_mean", a.f1_macro_mean},
          {"f1_macro_se", a.f1_macro_se}};
}

std::string RenderMarkdown(const EvalReport& r) {
  std::ostringstream out;
  out << "# Clarification evaluation: " << r.model_name << "\n\n";
  out << "Object F1 (%) under " << aggregation_name(r.aggregation)
      << " aggregation; parentheses hold the standard error of per-turn F1. "
         "Δ is the relative change from Before-CR to After-CR.\n";
  out << "Exchanges with several tags count toward each tag row. "
      << "Truncated exchanges excluded: " << r.n_truncated_excluded << ".\n";
  out << "All Turns covers "
      << (r.all_turns_complement ? "user turns outside any exchange"
                                 : "every user turn")
      << ".\n\n";
  out << "| Split | Before-CR | After-CR | Δ | n |\n";
  out << "|:--|--:|--:|--:|--:|\n";
  bool tag_header = false;
  for (const auto& row : r.rows) {
    if (row.subset >= Subset::kIndividualProperty && !tag_header) {
      out << "| *Disambiguating Property* | | | | |\n";
      tag_header = true;
    }
    out << "| " << subset_display_name(row.subset) << " | ";
    if (row.single) {
      out << Cell(*row.single, r.aggregation) << " | | | " << row.single->n_turns
          << " |\n";
    } else if (row.delta) {
      out << Cell(row.delta->before, r.aggregation) << " | "
          << Cell(row.delta->after, r.aggregation) << " | "
          << format_delta(row.delta->delta_pct) << " | " << row.n_ces << " |\n";
    }
  }
  return out.str();
}

std::string RenderCsv(const EvalReport& r) {
  std::ostringstream out;
  out << "subset,n_before,n_after,before_f1,before_se,after_f1,after_se,delta_pct\n";
  auto f1 = [&](const AggregateScore& a) {
    return a.n_turns == 0 ? std::string() : Percent(a.f1(r.aggregation));
  };
  auto se = [&](const AggregateScore& a) {
    return a.n_turns == 0 ? std::string() : Printf("%.2f", a.f1_macro_se);
  };
  for (const auto& row : r.rows) {
    out << subset_name(row.subset) << ',';
    if (row.single) {
      out << row.single->n_turns << ",," << f1(*row.single) << ','
          << se(*row.single) << ",,,\n";
    } else if (row.delta) {
      const auto& d = *row.delta;
      out << d.before.n_turns << ',' << d.after.n_turns << ',' << f1(d.before)
          << ',' << se(d.before) << ',' << f1(d.after) << ',' << se(d.after)
          << ',' << (d.delta_pct ? Printf("%.1f", *d.delta_pct) : std::string())
          << '\n';
    }
  }
  return out.str();
}

}  // namespace

std::string format_delta(const std::optional<double>& delta_pct) {
  if (!delta_pct) return "n/a";
  return Printf(*delta_pct >= 0 ? "+%.1f%%" : "%.1f%%", *delta_pct);
}

json report_to_json(const EvalReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j = {{"subset", subset_name(row.subset)}};
    if (row.single) {
      j["score"] = AggregateToJson(*row.single);
    } else if (row.delta) {
      j["n_ces"] = row.n_ces;
      j["before"] = AggregateToJson(row.delta->before);
      j["after"] = AggregateToJson(row.delta->after);
      if (row.delta->delta_pct) j["delta_pct"] = *row.delta->delta_pct;
    }
    rows.push_back(std::move(j));
  }
  return {{"model_name", r.model_name},
          {"aggregation", aggregation_name(r.aggregation)},
          {"f1_mode", r.f1_mode == F1Mode::kHarmonic ? "harmonic" : "arithmetic"},
          {"skip_empty", r.skip_empty},
          {"all_turns_scope",
           r.all_turns_complement ? "non_exchange_user_turns" : "all_user_turns"},
          {"multi_tag_accounting", "each_matching_tag_row"},
          {"macro_se", "standard error of per-turn F1 (sample sd / sqrt(n))"},
          {"n_truncated_excluded", r.n_truncated_excluded},
          {"rows", std::move(rows)}};
}

std::string render_report(const EvalReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kMarkdown: return RenderMarkdown(report);
    case ReportFormat::kCsv: return RenderCsv(report);
    case ReportFormat::kStructured: return report_to_json(report).dump(2) + "\n";
  }
  return {};
}

}  // namespace clarify
