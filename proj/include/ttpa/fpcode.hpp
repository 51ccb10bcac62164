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

// Tardos fingerprinting codes.
//
//   length     l = ceil(a * n^2 * ln(n / eps))
//   cutoff     t = 1 / (300 n)
//   bias       p_j = sin^2(u), u uniform on [asin(sqrt t), pi/2 - asin(sqrt t)]
//              (the arcsine density 1/sqrt(p(1-p)) truncated to [t, 1-t])
//   threshold  Z = 20 n ln(n / eps)
//
// Only columns where the pirate word has a 1 contribute to a user's score.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ttpa/bits.hpp"
#include "ttpa/rng.hpp"

namespace ttpa {

inline constexpr double kDefaultTardosConstant = 100.0;

std::size_t fp_length(std::size_t n, double eps, double a = kDefaultTardosConstant);
double fp_cutoff(std::size_t n);
double fp_threshold(std::size_t n, double eps);

/// Tracer-side codebook. `biases` are generation secrets and never leave
/// through the adversary view.
struct Codebook {
  std::size_t n = 0;
  double eps = 0;
  double a = kDefaultTardosConstant;
  double cutoff = 0;
  double threshold = 0;
  BitMatrix words;            // n x length
  std::vector<double> biases;  // one per column

  std::size_t length() const noexcept { return words.cols(); }
  BitSpan word(std::size_t i) const { return words.row(i); }
};

Codebook fp_gen(std::size_t n, double eps, Rng& rng,
                double a = kDefaultTardosConstant);

/// Accusation scores S_i for every user.
std::vector<double> fp_scores(const Codebook& cb, BitSpan word);

/// Highest-scoring user whose score exceeds the threshold (smallest index on
/// ties), or nullopt.
std::optional<std::size_t> fp_trace(const Codebook& cb, BitSpan word);

/// w is feasible for the rows of `ws` when every column of w matches at
/// least one row.
bool fp_feasible(const BitMatrix& ws, BitSpan word);

/// Columns on which every row of `ws` agrees, ascending.
std::vector<std::size_t> fp_critical(const BitMatrix& ws);

enum class FpStrategy { kMajority, kMinority, kRandomFeasible, kCopyOne };

const char* fp_strategy_name(FpStrategy s) noexcept;
FpStrategy parse_fp_strategy(std::string_view name);

/// Coalition strategies. MAJORITY breaks ties toward 1, MINORITY toward 0.
/// RANDOM_FEASIBLE picks a uniform bit on every non-critical column.
/// COPY_ONE returns a uniformly chosen row.
Bits fp_adversary(FpStrategy strategy, const BitMatrix& ws, Rng& rng);

/// Full codebook, biases included.
std::string codebook_to_json(const Codebook& cb);
Codebook codebook_from_json(std::string_view text);

/// Coalition rows only: {"n", "length", "coalition": [...], "rows": [hex...]}.
std::string adversary_view_to_json(const Codebook& cb,
                                   std::span<const std::size_t> coalition);
/// Reads the rows back out of an adversary view.
BitMatrix adversary_view_rows(std::string_view text);

}  // namespace ttpa
