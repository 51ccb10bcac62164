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

// Counting queries and sanitizers.
//
// A counting query is a circuit over d-bit rows; its value on a database is
// the fraction of rows it accepts. Sanitizers answer a whole batch at once.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ttpa/bits.hpp"
#include "ttpa/circuit.hpp"
#include "ttpa/rng.hpp"

namespace ttpa {

/// n rows of d bits, stored both row-major and bit-sliced (64 rows per
/// block) for batched circuit evaluation.
class Database {
 public:
  explicit Database(BitMatrix rows);

  std::size_t size() const noexcept { return rows_.rows(); }
  std::size_t width() const noexcept { return rows_.cols(); }
  const BitMatrix& rows() const noexcept { return rows_; }

  std::size_t block_count() const noexcept { return (size() + 63) / 64; }
  /// Input slices of block b: width() words, bit t of word k is wire k of
  /// row 64 b + t.
  std::span<const std::uint64_t> block(std::size_t b) const {
    return {slices_.data() + b * width(), width()};
  }
  /// Mask of the rows present in block b.
  std::uint64_t block_mask(std::size_t b) const noexcept;

 private:
  BitMatrix rows_;
  std::vector<std::uint64_t> slices_;
};

/// Text format: a header line "d=<width>" then one hex-packed row per line.
/// Blank lines and lines starting with '#' are skipped.
Database database_from_text(std::string_view text);
std::string database_to_text(const Database& db);

/// Exact value count / n.
struct Fraction {
  std::uint64_t count = 0;
  std::uint64_t n = 1;
  double value() const noexcept {
    return static_cast<double>(count) / static_cast<double>(n);
  }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Throws kShapeMismatch on width mismatch.
Fraction evaluate_query(const Circuit& q, const Database& db);

/// A batch of k queries of one input width. Queries may be produced on
/// demand so large batches need not be held in memory at once.
class QuerySource {
 public:
  virtual ~QuerySource() = default;
  virtual std::size_t size() const = 0;
  virtual std::size_t input_width() const = 0;
  virtual Circuit query(std::size_t j) const = 0;
};

/// Materialized batch.
class QueryBatch final : public QuerySource {
 public:
  /// Throws kShapeMismatch unless every circuit has width `input_width`.
  QueryBatch(std::size_t input_width, std::vector<Circuit> queries);

  std::size_t size() const override { return queries_.size(); }
  std::size_t input_width() const override { return width_; }
  Circuit query(std::size_t j) const override { return queries_.at(j); }
  const Circuit& at(std::size_t j) const { return queries_.at(j); }

 private:
  std::size_t width_;
  std::vector<Circuit> queries_;
};

/// Batch from a JSON array of circuit netlists.
QueryBatch query_batch_from_json(std::string_view text);

enum class SanitizerKind { kExact, kLaplace };
enum class Composition { kBasic, kAdvanced };

const char* sanitizer_kind_name(SanitizerKind k) noexcept;
SanitizerKind parse_sanitizer_kind(std::string_view name);
const char* composition_name(Composition c) noexcept;
Composition parse_composition(std::string_view name);

struct SanitizerConfig {
  SanitizerKind kind = SanitizerKind::kExact;
  double epsilon = 1.0;
  double delta = 0.0;
  Composition composition = Composition::kBasic;
  /// Median amplification rounds; 0 disables it. Each round spends
  /// (epsilon / r, delta / r) so the whole release stays (epsilon, delta).
  std::size_t rounds = 0;

  /// Throws kInvalidArgument for LAPLACE with eps <= 0, delta outside [0, 1),
  /// or ADVANCED with delta == 0.
  void validate() const;
};

/// Per-query Laplace scale for k queries on n rows at (eps, delta):
/// BASIC k / (eps n), ADVANCED sqrt(2 k ln(1/delta)) / (eps n).
double laplace_scale(Composition comp, std::size_t k, std::size_t n, double eps,
                     double delta);

struct SanitizeResult {
  std::vector<double> answers;
  std::vector<Fraction> truths;  // for auditing; not part of the release
};

SanitizeResult sanitize(const SanitizerConfig& cfg, const Database& db,
                        const QuerySource& queries, Rng& rng);

struct AccuracyResult {
  bool ok = false;
  double max_error = 0;
};

AccuracyResult accuracy_check(std::span<const double> answers,
                              std::span<const double> truths, double alpha);
AccuracyResult accuracy_check(const SanitizeResult& r, double alpha);

}  // namespace ttpa
