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

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "ttpa/bits.hpp"

namespace ttpa {

/// Deterministic randomness stream. The engine is std::mt19937_64, whose
/// output sequence is fixed by the C++ standard; every derived quantity
/// (bounded integers, reals, Laplace draws) is computed here rather than via
/// <random> distributions so results are identical across standard libraries.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return engine_(); }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform01();

  /// Uniform in (0, 1).
  double uniform_open01();

  std::uint8_t bit();
  Bits bits(std::size_t count);
  bool bernoulli(double p) { return uniform01() < p; }

  /// Zero-mean Laplace draw with the given scale (density exp(-|x|/b)/2b).
  double laplace(double scale);

 private:
  std::mt19937_64 engine_;
  std::uint64_t bit_buffer_ = 0;
  unsigned bits_left_ = 0;
};

/// Derives an independent stream seed from (master, label, index) by hashing
/// the three with SHA-256. New labels never perturb existing streams.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                          std::uint64_t index = 0);

}  // namespace ttpa
