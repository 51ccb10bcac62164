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

// Human and CSV summaries of attack reports.
//
// CSV columns: section,experiment,key,count,frequency. Sections are
// "accused" (key = user index), "none", "feasible", "oracle_failure" and
// "accuracy" (key = max-error bin such as "0.01-0.05").

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ttpa {

struct SummaryRow {
  std::string section;
  std::string experiment;
  std::string key;
  std::uint64_t count = 0;
  double frequency = 0;
  friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

struct Summary {
  std::string table;
  std::string csv;
  std::vector<SummaryRow> rows;
  bool inconclusive = false;
};

/// Accepts the JSON written by attack_report_to_json.
Summary emit_summary(std::string_view report_json);

std::string summary_csv(const std::vector<SummaryRow>& rows);
/// Throws kParse on malformed input. Frequencies are parsed from their
/// fixed 6-digit rendering.
std::vector<SummaryRow> parse_summary_csv(std::string_view csv);

}  // namespace ttpa
