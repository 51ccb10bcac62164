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

#include "ttpa/sanitize.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "json_detail.hpp"
#include "ttpa/error.hpp"

namespace ttpa {

Database::Database(BitMatrix rows) : rows_(std::move(rows)) {
  require(rows_.rows() >= 1, ErrorCode::kInvalidArgument, "database needs at least one row");
  require(rows_.cols() >= 1, ErrorCode::kInvalidArgument, "database rows need at least one bit");
  const std::size_t d = width();
  slices_.assign(block_count() * d, 0);
  for (std::size_t r = 0; r < size(); ++r) {
    auto row = rows_.row(r);
    std::uint64_t* blk = slices_.data() + (r / 64) * d;
    const std::uint64_t bit = std::uint64_t{1} << (r % 64);
    for (std::size_t k = 0; k < d; ++k) {
      if (row[k]) blk[k] |= bit;
    }
  }
}

std::uint64_t Database::block_mask(std::size_t b) const noexcept {
  std::size_t count = std::min<std::size_t>(64, size() - 64 * b);
  return count == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
}

Database database_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t d = 0;
  bool have_header = false;
  std::vector<Bits> rows;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    std::string_view body = std::string_view(line).substr(start);
    if (!have_header) {
      require(body.substr(0, 2) == "d=", ErrorCode::kParse,
              "database: first line must be 'd=<width>'");
      try {
        std::size_t used = 0;
        std::string num(body.substr(2));
        long long v = std::stoll(num, &used);
        require(used == num.size() && v >= 1, ErrorCode::kParse, "database: bad width");
        d = static_cast<std::size_t>(v);
      } catch (const std::logic_error&) {
        fail(ErrorCode::kParse, "database: bad width in header");
      }
      have_header = true;
      continue;
    }
    try {
      rows.push_back(from_hex(body, d));
    } catch (const Error& e) {
      fail(ErrorCode::kParse, "database line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  require(have_header, ErrorCode::kParse, "database: missing 'd=<width>' header");
  require(!rows.empty(), ErrorCode::kParse, "database: no rows");
  BitMatrix m(rows.size(), d);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return Database(std::move(m));
}

std::string database_to_text(const Database& db) {
  std::string out = "d=" + std::to_string(db.width()) + "\n";
  for (std::size_t r = 0; r < db.size(); ++r) {
    out += to_hex(db.rows().row(r));
    out += '\n';
  }
  return out;
}

namespace {

Fraction evaluate_with(const Circuit& q, const Database& db,
                       std::vector<std::uint64_t>& scratch) {
  if (q.input_width() != db.width()) {
    fail(ErrorCode::kShapeMismatch,
         "query width " + std::to_string(q.input_width()) + " differs from row width " +
         std::to_string(db.width()));
  }
  std::uint64_t count = 0;
  for (std::size_t b = 0; b < db.block_count(); ++b) {
    count += std::popcount(eval_circuit_sliced(q, db.block(b), scratch) & db.block_mask(b));
  }
  return Fraction{count, db.size()};
}

}  // namespace

Fraction evaluate_query(const Circuit& q, const Database& db) {
  std::vector<std::uint64_t> scratch;
  return evaluate_with(q, db, scratch);
}

QueryBatch::QueryBatch(std::size_t input_width, std::vector<Circuit> queries)
    : width_(input_width), queries_(std::move(queries)) {
  for (std::size_t j = 0; j < queries_.size(); ++j) {
    if (queries_[j].input_width() != width_) {
      fail(ErrorCode::kShapeMismatch,
           "query " + std::to_string(j) + " has width " +
           std::to_string(queries_[j].input_width()) + ", batch width is " +
           std::to_string(width_));
    }
  }
}

QueryBatch query_batch_from_json(std::string_view text) {
  using namespace detail;
  json j = parse_json(text, "query batch");
  require(j.is_array(), ErrorCode::kParse, "query batch: expected a JSON array of netlists");
  require(!j.empty(), ErrorCode::kParse, "query batch: empty");
  std::vector<Circuit> qs;
  qs.reserve(j.size());
  for (const auto& item : j) qs.push_back(circuit_from_value(item));
  std::size_t w = qs.front().input_width();
  return QueryBatch(w, std::move(qs));
}

const char* sanitizer_kind_name(SanitizerKind k) noexcept {
  return k == SanitizerKind::kExact ? "exact" : "laplace";
}

SanitizerKind parse_sanitizer_kind(std::string_view name) {
  if (name == "exact") return SanitizerKind::kExact;
  if (name == "laplace") return SanitizerKind::kLaplace;
  fail(ErrorCode::kInvalidArgument, "unknown sanitizer '" + std::string(name) + "'");
}

const char* composition_name(Composition c) noexcept {
  return c == Composition::kBasic ? "basic" : "advanced";
}

Composition parse_composition(std::string_view name) {
  if (name == "basic") return Composition::kBasic;
  if (name == "advanced") return Composition::kAdvanced;
  fail(ErrorCode::kInvalidArgument, "unknown composition '" + std::string(name) + "'");
}

void SanitizerConfig::validate() const {
  if (kind == SanitizerKind::kExact) return;
  require(epsilon > 0 && std::isfinite(epsilon), ErrorCode::kInvalidArgument,
          "epsilon must be positive");
  require(delta >= 0 && delta < 1, ErrorCode::kInvalidArgument, "delta must be in [0, 1)");
  require(composition == Composition::kBasic || delta > 0, ErrorCode::kInvalidArgument,
          "advanced composition needs delta > 0");
}

double laplace_scale(Composition comp, std::size_t k, std::size_t n, double eps,
                     double delta) {
  require(n >= 1 && k >= 1, ErrorCode::kInvalidArgument, "k and n must be positive");
  require(eps > 0, ErrorCode::kInvalidArgument, "epsilon must be positive");
  const double kk = static_cast<double>(k), nn = static_cast<double>(n);
  if (comp == Composition::kBasic) return kk / (eps * nn);
  require(delta > 0 && delta < 1, ErrorCode::kInvalidArgument,
          "advanced composition needs delta in (0, 1)");
  return std::sqrt(2 * kk * std::log(1 / delta)) / (eps * nn);
}

SanitizeResult sanitize(const SanitizerConfig& cfg, const Database& db,
                        const QuerySource& queries, Rng& rng) {
  cfg.validate();
  if (queries.input_width() != db.width()) {
    fail(ErrorCode::kShapeMismatch,
         "query width " + std::to_string(queries.input_width()) + " differs from row width " +
         std::to_string(db.width()));
  }
  const std::size_t k = queries.size();
  SanitizeResult res;
  res.truths.reserve(k);
  std::vector<std::uint64_t> scratch;
  for (std::size_t j = 0; j < k; ++j) {
    res.truths.push_back(evaluate_with(queries.query(j), db, scratch));
  }
  res.answers.resize(k);
  if (cfg.kind == SanitizerKind::kExact || k == 0) {
    for (std::size_t j = 0; j < k; ++j) res.answers[j] = res.truths[j].value();
    return res;
  }
  const std::size_t r = std::max<std::size_t>(cfg.rounds, 1);
  const double rr = static_cast<double>(r);
  const double scale =
      laplace_scale(cfg.composition, k, db.size(), cfg.epsilon / rr, cfg.delta / rr);
  std::vector<double> draws(r);
  for (std::size_t j = 0; j < k; ++j) {
    const double t = res.truths[j].value();
    for (auto& a : draws) a = std::clamp(t + rng.laplace(scale), 0.0, 1.0);
    if (r == 1) {
      res.answers[j] = draws[0];
      continue;
    }
    std::sort(draws.begin(), draws.end());
    res.answers[j] = r % 2 ? draws[r / 2] : 0.5 * (draws[r / 2 - 1] + draws[r / 2]);
  }
  return res;
}

AccuracyResult accuracy_check(std::span<const double> answers,
                              std::span<const double> truths, double alpha) {
  require(answers.size() == truths.size(), ErrorCode::kShapeMismatch,
          "answer and truth counts differ");
  require(alpha >= 0, ErrorCode::kInvalidArgument, "alpha must be non-negative");
  AccuracyResult r;
  for (std::size_t j = 0; j < answers.size(); ++j) {
    r.max_error = std::max(r.max_error, std::abs(answers[j] - truths[j]));
  }
  r.ok = r.max_error <= alpha;
  return r;
}

AccuracyResult accuracy_check(const SanitizeResult& r, double alpha) {
  std::vector<double> t(r.truths.size());
  for (std::size_t j = 0; j < t.size(); ++j) t[j] = r.truths[j].value();
  return accuracy_check(r.answers, t, alpha);
}

}  // namespace ttpa
