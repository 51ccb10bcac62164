// Copyright 2026 The ttpa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ttpa/report.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json_detail.hpp"
#include "ttpa/error.hpp"

namespace ttpa {

namespace {

using detail::json;

struct Bin {
  double lo, hi;
  const char* label;
};

constexpr std::array<Bin, 6> kErrorBins = {{{0.0, 0.01, "0.00-0.01"},
                                            {0.01, 0.05, "0.01-0.05"},
                                            {0.05, 0.10, "0.05-0.10"},
                                            {0.10, 0.25, "0.10-0.25"},
                                            {0.25, 0.50, "0.25-0.50"},
                                            {0.50, 2.00, "0.50-1.00"}}};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double round6(double v) { return std::round(v * 1e6) / 1e6; }

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    fail(ErrorCode::kParse, std::string("report: missing field '") + key + "'");
  }
  return j.at(key);
}

template <typename T>
T get(const json& j, const char* key) {
  try {
    return member(j, key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("report: field '") + key + "': " + e.what());
  }
}

void add_experiment(const json& ex, const char* name, std::size_t n,
                    std::vector<SummaryRow>& rows, std::string& table) {
  const auto trials = get<std::uint64_t>(ex, "trials");
  const double t = trials ? static_cast<double>(trials) : 1.0;
  auto counts = get<std::vector<std::uint64_t>>(ex, "accused_counts");
  if (counts.size() != n) fail(ErrorCode::kParse, "report: accused_counts length differs from n");
  const auto none = get<std::uint64_t>(ex, "none_count");
  const auto feasible = get<std::uint64_t>(ex, "feasible_count");
  const auto failures = get<std::uint64_t>(ex, "oracle_failures");
  auto coalition = get<std::vector<std::uint64_t>>(ex, "coalition");

  table += std::string(name) + "  trials=" + std::to_string(trials) +
           "  coalition size=" + std::to_string(coalition.size()) + "\n";
  table += "  user        count   frequency\n";
  auto line = [&](const std::string& key, std::uint64_t c) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "  %-10s %6llu   %9.6f\n", key.c_str(),
                  static_cast<unsigned long long>(c), static_cast<double>(c) / t);
    table += buf;
  };
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back({"accused", name, std::to_string(i), counts[i],
                    round6(static_cast<double>(counts[i]) / t)});
    line(std::to_string(i), counts[i]);
  }
  rows.push_back({"none", name, "none", none, round6(static_cast<double>(none) / t)});
  line("none", none);
  rows.push_back({"feasible", name, "feasible", feasible,
                  round6(static_cast<double>(feasible) / t)});
  rows.push_back({"oracle_failure", name, "oracle_failure", failures,
                  round6(static_cast<double>(failures) / t)});
  table += "  feasible words: " + std::to_string(feasible) + "/" + std::to_string(trials) +
           "   oracle failures: " + std::to_string(failures) + "\n";

  std::array<std::uint64_t, kErrorBins.size()> hist{};
  std::uint64_t measured = 0;
  for (const auto& rec : member(ex, "records")) {
    if (get<bool>(rec, "oracle_failure")) continue;
    double e = get<double>(rec, "max_error");
    for (std::size_t b = 0; b < kErrorBins.size(); ++b) {
      if (e >= kErrorBins[b].lo && e < kErrorBins[b].hi) {
        ++hist[b];
        break;
      }
    }
    ++measured;
  }
  const double m = measured ? static_cast<double>(measured) : 1.0;
  table += "  max answer error   count   frequency\n";
  for (std::size_t b = 0; b < kErrorBins.size(); ++b) {
    rows.push_back({"accuracy", name, kErrorBins[b].label, hist[b],
                    round6(static_cast<double>(hist[b]) / m)});
    char buf[96];
    std::snprintf(buf, sizeof buf, "  %-16s %7llu   %9.6f\n", kErrorBins[b].label,
                  static_cast<unsigned long long>(hist[b]), static_cast<double>(hist[b]) / m);
    table += buf;
  }
  table += "\n";
}

}  // namespace

Summary emit_summary(std::string_view report_json) {
  json j = detail::parse_json(report_json, "report");
  const json& params = member(j, "params");
  const auto n = get<std::size_t>(params, "n");
  Summary s;
  s.table = "attack report  n=" + std::to_string(n) +
            "  kappa=" + std::to_string(get<std::size_t>(params, "kappa")) +
            "  sanitizer=" + get<std::string>(member(params, "sanitizer"), "kind") +
            "  seed=" + std::to_string(get<std::uint64_t>(params, "seed")) + "\n\n";

  const json& exp1 = member(j, "exp1");
  const json& audit = member(j, "audit");
  const auto verdict = get<std::string>(audit, "verdict");
  s.inconclusive = get<std::uint64_t>(exp1, "trials") == 0 || verdict == "inconclusive";
  if (s.inconclusive) {
    s.table += "*** INCONCLUSIVE: " +
               (audit.contains("reason") ? get<std::string>(audit, "reason")
                                         : std::string("no trials")) +
               " ***\n\n";
  }
  add_experiment(exp1, "exp1", n, s.rows, s.table);
  const json& exp2 = member(j, "exp2");
  if (!exp2.is_null()) add_experiment(exp2, "exp2", n, s.rows, s.table);

  s.table += "audit  verdict=" + verdict;
  const json& istar = member(audit, "i_star");
  s.table += "  i*=" + (istar.is_null() ? std::string("none") : std::to_string(istar.get<long long>()));
  s.table += "  epsilon=" + fmt("%g", get<double>(audit, "epsilon")) +
             "  delta=" + fmt("%g", get<double>(audit, "delta")) + "\n";
  s.table += "  p_full=" + fmt("%.4f", get<double>(audit, "p_full")) +
             " (lower95 " + fmt("%.4f", get<double>(audit, "full_lower95")) + ")" +
             "  p_minus=" + fmt("%.4f", get<double>(audit, "p_minus")) +
             " (upper95 " + fmt("%.4f", get<double>(audit, "minus_upper95")) + ")\n";
  s.table += "  bound=" + fmt("%.4f", get<double>(audit, "bound")) +
             "  margin=" + fmt("%.4f", get<double>(audit, "margin")) + "\n";
  s.csv = summary_csv(s.rows);
  return s;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "section,experiment,key,count,frequency\n";
  for (const auto& r : rows) {
    out += r.section + "," + r.experiment + "," + r.key + "," + std::to_string(r.count) + "," +
           fmt("%.6f", r.frequency) + "\n";
  }
  return out;
}

std::vector<SummaryRow> parse_summary_csv(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line) || line != "section,experiment,key,count,frequency") {
    fail(ErrorCode::kParse, "summary CSV: bad header");
  }
  std::vector<SummaryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5) fail(ErrorCode::kParse, "summary CSV: expected 5 columns: " + line);
    SummaryRow r{cells[0], cells[1], cells[2], 0, 0};
    try {
      std::size_t used = 0;
      r.count = std::stoull(cells[3], &used);
      if (used != cells[3].size()) throw std::invalid_argument("count");
      r.frequency = std::stod(cells[4], &used);
      if (used != cells[4].size()) throw std::invalid_argument("frequency");
    } catch (const std::logic_error&) {
      fail(ErrorCode::kParse, "summary CSV: bad number in: " + line);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace ttpa
