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

#include "ttpa/fpcode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json_detail.hpp"
#include "ttpa/error.hpp"

namespace ttpa {

namespace {

void check_params(std::size_t n, double eps, double a) {
  if (n < 2) {
    fail(ErrorCode::kInvalidArgument,
         "fingerprinting code needs n >= 2 users, got " + std::to_string(n));
  }
  require(eps > 0 && eps < 1, ErrorCode::kInvalidArgument,
          "fingerprinting error eps must be in (0, 1)");
  require(a > 0 && std::isfinite(a), ErrorCode::kInvalidArgument,
          "length constant must be positive");
}

// Counts of ones per column.
std::vector<std::uint32_t> column_ones(const BitMatrix& ws) {
  std::vector<std::uint32_t> ones(ws.cols(), 0);
  for (std::size_t i = 0; i < ws.rows(); ++i) {
    auto row = ws.row(i);
    for (std::size_t j = 0; j < ws.cols(); ++j) ones[j] += row[j];
  }
  return ones;
}

}  // namespace

std::size_t fp_length(std::size_t n, double eps, double a) {
  check_params(n, eps, a);
  double nn = static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(a * nn * nn * std::log(nn / eps)));
}

double fp_cutoff(std::size_t n) { return 1.0 / (300.0 * static_cast<double>(n)); }

double fp_threshold(std::size_t n, double eps) {
  double nn = static_cast<double>(n);
  return 20.0 * nn * std::log(nn / eps);
}

Codebook fp_gen(std::size_t n, double eps, Rng& rng, double a) {
  Codebook cb;
  cb.n = n;
  cb.eps = eps;
  cb.a = a;
  const std::size_t len = fp_length(n, eps, a);
  cb.cutoff = fp_cutoff(n);
  cb.threshold = fp_threshold(n, eps);

  const double u_lo = std::asin(std::sqrt(cb.cutoff));
  const double u_span = std::numbers::pi / 2 - 2 * u_lo;
  cb.biases.resize(len);
  for (auto& p : cb.biases) {
    double s = std::sin(u_lo + u_span * rng.uniform01());
    p = std::clamp(s * s, cb.cutoff, 1 - cb.cutoff);
  }
  cb.words = BitMatrix(n, len);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = cb.words.row(i);
    for (std::size_t j = 0; j < len; ++j) row[j] = rng.bernoulli(cb.biases[j]);
  }
  return cb;
}

std::vector<double> fp_scores(const Codebook& cb, BitSpan word) {
  if (word.size() != cb.length()) {
    fail(ErrorCode::kShapeMismatch,
         "word has length " + std::to_string(word.size()) + ", codebook has " +
         std::to_string(cb.length()));
  }
  std::vector<double> scores(cb.n, 0.0);
  std::vector<double> plus, minus;
  std::vector<std::size_t> marked;
  for (std::size_t j = 0; j < word.size(); ++j) {
    if (!word[j]) continue;
    double p = cb.biases[j];
    marked.push_back(j);
    plus.push_back(std::sqrt((1 - p) / p));
    minus.push_back(-std::sqrt(p / (1 - p)));
  }
  for (std::size_t i = 0; i < cb.n; ++i) {
    auto row = cb.word(i);
    double s = 0;
    for (std::size_t m = 0; m < marked.size(); ++m) {
      s += row[marked[m]] ? plus[m] : minus[m];
    }
    scores[i] = s;
  }
  return scores;
}

std::optional<std::size_t> fp_trace(const Codebook& cb, BitSpan word) {
  auto scores = fp_scores(cb, word);
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] > cb.threshold && (!best || scores[i] > scores[*best])) best = i;
  }
  return best;
}

bool fp_feasible(const BitMatrix& ws, BitSpan word) {
  require(ws.rows() >= 1, ErrorCode::kInvalidArgument, "coalition must be non-empty");
  require(word.size() == ws.cols(), ErrorCode::kShapeMismatch,
          "word length differs from codeword length");
  auto ones = column_ones(ws);
  for (std::size_t j = 0; j < word.size(); ++j) {
    if (word[j] ? ones[j] == 0 : ones[j] == ws.rows()) return false;
  }
  return true;
}

std::vector<std::size_t> fp_critical(const BitMatrix& ws) {
  require(ws.rows() >= 1, ErrorCode::kInvalidArgument, "coalition must be non-empty");
  auto ones = column_ones(ws);
  std::vector<std::size_t> crit;
  for (std::size_t j = 0; j < ones.size(); ++j) {
    if (ones[j] == 0 || ones[j] == ws.rows()) crit.push_back(j);
  }
  return crit;
}

const char* fp_strategy_name(FpStrategy s) noexcept {
  switch (s) {
    case FpStrategy::kMajority: return "majority";
    case FpStrategy::kMinority: return "minority";
    case FpStrategy::kRandomFeasible: return "random_feasible";
    case FpStrategy::kCopyOne: return "copy_one";
  }
  return "?";
}

FpStrategy parse_fp_strategy(std::string_view name) {
  for (auto s : {FpStrategy::kMajority, FpStrategy::kMinority,
                 FpStrategy::kRandomFeasible, FpStrategy::kCopyOne}) {
    if (name == fp_strategy_name(s)) return s;
  }
  fail(ErrorCode::kInvalidArgument, "unknown adversary strategy '" + std::string(name) + "'");
}

Bits fp_adversary(FpStrategy strategy, const BitMatrix& ws, Rng& rng) {
  require(ws.rows() >= 1, ErrorCode::kInvalidArgument, "coalition must be non-empty");
  const std::size_t rows = ws.rows();
  if (strategy == FpStrategy::kCopyOne) {
    auto r = ws.row(rng.uniform_below(rows));
    return Bits(r.begin(), r.end());
  }
  auto ones = column_ones(ws);
  Bits w(ws.cols());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const std::uint32_t c1 = ones[j];
    if (c1 == 0 || c1 == rows) {
      w[j] = c1 != 0;
      continue;
    }
    switch (strategy) {
      case FpStrategy::kMajority: w[j] = 2 * c1 >= rows; break;
      case FpStrategy::kMinority: w[j] = 2 * c1 < rows; break;
      default: w[j] = rng.bit(); break;
    }
  }
  return w;
}

std::string codebook_to_json(const Codebook& cb) {
  using detail::json;
  json words = json::array();
  for (std::size_t i = 0; i < cb.n; ++i) words.push_back(to_hex(cb.word(i)));
  json j = {{"n", cb.n},
            {"eps", cb.eps},
            {"a", cb.a},
            {"cutoff", cb.cutoff},
            {"threshold", cb.threshold},
            {"length", cb.length()},
            {"words", std::move(words)},
            {"biases", cb.biases}};
  return j.dump();
}

Codebook codebook_from_json(std::string_view text) {
  using namespace detail;
  constexpr const char* what = "codebook";
  json j = parse_json(text, what);
  Codebook cb;
  cb.n = field<std::size_t>(j, "n", what);
  cb.eps = field<double>(j, "eps", what);
  cb.a = field<double>(j, "a", what);
  cb.cutoff = field<double>(j, "cutoff", what);
  cb.threshold = field<double>(j, "threshold", what);
  const auto len = field<std::size_t>(j, "length", what);
  auto words = field<std::vector<std::string>>(j, "words", what);
  cb.biases = field<std::vector<double>>(j, "biases", what);
  require(cb.n >= 1 && words.size() == cb.n, ErrorCode::kParse,
          "codebook: word count differs from n");
  require(cb.biases.size() == len, ErrorCode::kParse,
          "codebook: bias count differs from length");
  for (double p : cb.biases) {
    require(p > 0 && p < 1, ErrorCode::kParse, "codebook: bias outside (0, 1)");
  }
  cb.words = BitMatrix(cb.n, len);
  for (std::size_t i = 0; i < cb.n; ++i) {
    Bits w = from_hex(words[i], len);
    std::copy(w.begin(), w.end(), cb.words.row(i).begin());
  }
  return cb;
}

std::string adversary_view_to_json(const Codebook& cb,
                                   std::span<const std::size_t> coalition) {
  using detail::json;
  require(!coalition.empty(), ErrorCode::kInvalidArgument, "coalition must be non-empty");
  json rows = json::array();
  for (auto i : coalition) {
    if (i >= cb.n) {
      fail(ErrorCode::kOutOfRange,
           "coalition member " + std::to_string(i) + " out of range");
    }
    rows.push_back(to_hex(cb.word(i)));
  }
  json j = {{"n", cb.n},
            {"length", cb.length()},
            {"coalition", std::vector<std::size_t>(coalition.begin(), coalition.end())},
            {"rows", std::move(rows)}};
  return j.dump();
}

BitMatrix adversary_view_rows(std::string_view text) {
  using namespace detail;
  constexpr const char* what = "adversary view";
  json j = parse_json(text, what);
  const auto len = field<std::size_t>(j, "length", what);
  auto rows = field<std::vector<std::string>>(j, "rows", what);
  require(!rows.empty(), ErrorCode::kParse, "adversary view: no rows");
  BitMatrix m(rows.size(), len);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Bits w = from_hex(rows[i], len);
    std::copy(w.begin(), w.end(), m.row(i).begin());
  }
  return m;
}

}  // namespace ttpa
