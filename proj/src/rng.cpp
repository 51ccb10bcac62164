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

#include "ttpa/rng.hpp"

#include <sodium.h>

#include <cmath>
#include <string>

#include "ttpa/error.hpp"

namespace ttpa {

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  require(bound > 0, ErrorCode::kInvalidArgument, "uniform_below: zero bound");
  // Lemire's multiply-shift with rejection.
  std::uint64_t x = engine_();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = engine_();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open01() {
  // (k + 0.5) / 2^53 never hits 0 or 1.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint8_t Rng::bit() {
  if (bits_left_ == 0) {
    bit_buffer_ = engine_();
    bits_left_ = 64;
  }
  auto b = static_cast<std::uint8_t>(bit_buffer_ & 1u);
  bit_buffer_ >>= 1;
  --bits_left_;
  return b;
}

Bits Rng::bits(std::size_t count) {
  Bits out(count);
  for (auto& b : out) b = bit();
  return out;
}

double Rng::laplace(double scale) {
  double u = uniform_open01() - 0.5;
  double mag = -scale * std::log1p(-2.0 * std::fabs(u));
  return u < 0 ? -mag : mag;
}

namespace {

struct SodiumInit {
  SodiumInit() {
    if (sodium_init() < 0) throw Error(ErrorCode::kRuntime, "sodium_init failed");
  }
};

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                          std::uint64_t index) {
  static const SodiumInit init;
  std::string msg = "ttpa-seed-v1";
  for (int k = 7; k >= 0; --k) msg.push_back(static_cast<char>(master >> (8 * k)));
  msg.push_back(static_cast<char>(label.size()));
  msg.append(label);
  for (int k = 7; k >= 0; --k) msg.push_back(static_cast<char>(index >> (8 * k)));
  unsigned char digest[crypto_hash_sha256_BYTES];
  crypto_hash_sha256(digest, reinterpret_cast<const unsigned char*>(msg.data()),
                     msg.size());
  std::uint64_t seed = 0;
  for (int k = 0; k < 8; ++k) seed = (seed << 8) | digest[k];
  return seed;
}

}  // namespace ttpa
