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

#include <cmath>
#include <cstdio>
#include <set>

#include "doctest.h"
#include "ttpa/bits.hpp"
#include "ttpa/error.hpp"
#include "ttpa/rng.hpp"

using namespace ttpa;

TEST_CASE("ceil_log2 small values") {
  CHECK(ceil_log2(0) == 0);
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(4) == 2);
  CHECK(ceil_log2(5) == 3);
  CHECK(ceil_log2(16) == 4);
  CHECK(ceil_log2(17) == 5);
  CHECK(ceil_log2(std::uint64_t{1} << 63) == 63);
  CHECK(ceil_log2((std::uint64_t{1} << 63) + 1) == 64);
}

TEST_CASE("ceil_log2 matches the defining inequality") {
  for (std::uint64_t v = 2; v < 5000; ++v) {
    unsigned w = ceil_log2(v);
    CHECK((std::uint64_t{1} << w) >= v);
    CHECK((std::uint64_t{1} << (w - 1)) < v);
  }
}

TEST_CASE("big-endian bit encoding") {
  CHECK(to_bits_be(5, 3) == Bits{1, 0, 1});
  CHECK(to_bits_be(2, 4) == Bits{0, 0, 1, 0});
  CHECK(read_be(Bits{1, 1, 0}) == 6);
  CHECK(read_be(Bits{}) == 0);
  Rng rng(7);
  for (int t = 0; t < 500; ++t) {
    unsigned w = 1 + static_cast<unsigned>(rng.uniform_below(64));
    std::uint64_t v = rng.next_u64();
    if (w < 64) v &= (std::uint64_t{1} << w) - 1;
    CHECK(read_be(to_bits_be(v, w)) == v);
  }
}

TEST_CASE("hex packing pads the last digit on the right") {
  CHECK(to_hex(Bits{1, 0, 1, 1}) == "b");
  CHECK(to_hex(Bits{1}) == "8");
  CHECK(to_hex(Bits{1, 0, 1, 1, 0, 0, 0, 1, 1, 0}) == "b18");
  CHECK(from_hex("b18", 10) == Bits{1, 0, 1, 1, 0, 0, 0, 1, 1, 0});
  CHECK(from_hex("B", 4) == Bits{1, 0, 1, 1});
  CHECK(to_hex(Bits{}).empty());
}

TEST_CASE("hex packing agrees with printf on whole bytes") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    std::uint64_t v = rng.next_u64();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    CHECK(to_hex(to_bits_be(v, 64)) == buf);
  }
}

TEST_CASE("from_hex rejects bad input") {
  CHECK_THROWS_AS(from_hex("g", 4), Error);
  CHECK_THROWS_AS(from_hex("ab", 4), Error);   // wrong length
  CHECK_THROWS_AS(from_hex("9", 1), Error);    // non-zero padding
  try {
    from_hex("zz", 8);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
  }
}

TEST_CASE("hex round trip at every length") {
  Rng rng(3);
  for (std::size_t len = 0; len < 70; ++len) {
    Bits b = rng.bits(len);
    CHECK(from_hex(to_hex(b), len) == b);
    CHECK(to_hex(b).size() == (len + 3) / 4);
  }
}

TEST_CASE("binary strings") {
  CHECK(from_binary("10_1 1") == Bits{1, 0, 1, 1});
  CHECK(to_binary(Bits{0, 1, 1}) == "011");
  CHECK_THROWS_AS(from_binary("102"), Error);
}

TEST_CASE("BitMatrix rows and selection") {
  BitMatrix m(3, 2);
  m(0, 1) = 1;
  m(2, 0) = 1;
  std::vector<std::size_t> which{2, 0};
  BitMatrix s = m.select_rows(which);
  CHECK(s.rows() == 2);
  CHECK(s(0, 0) == 1);
  CHECK(s(1, 1) == 1);
  CHECK(s(0, 1) == 0);
  std::vector<std::size_t> bad{3};
  CHECK_THROWS_AS(m.select_rows(bad), Error);
}

TEST_CASE("rng is reproducible and uniform_below stays in range") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng r(1);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) {
    auto v = r.uniform_below(7);
    REQUIRE(v < 7);
    ++hist[v];
  }
  // Each bucket has mean 10000 and sd ~93; 6 sd is a loose gate.
  for (int h : hist) CHECK(std::abs(h - 10000) < 560);
}

TEST_CASE("uniform01 and bits") {
  Rng r(5);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    double u = r.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / 100000 - 0.5) < 0.01);
  Bits bits = r.bits(100000);
  std::size_t ones = 0;
  for (auto v : bits) {
    REQUIRE(v <= 1);
    ones += v;
  }
  CHECK(std::abs(static_cast<double>(ones) - 50000.0) < 1000.0);
}

TEST_CASE("laplace draws match the scale") {
  Rng r(9);
  const double b = 2.5;
  double abs_sum = 0, sum = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double x = r.laplace(b);
    abs_sum += std::abs(x);
    sum += x;
  }
  CHECK(std::abs(abs_sum / n - b) / b < 0.02);
  CHECK(std::abs(sum / n) < 0.05);
}

TEST_CASE("derive_seed separates labels and indices") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 100; ++i) {
    seen.insert(derive_seed(1, "a", i));
    seen.insert(derive_seed(1, "b", i));
    seen.insert(derive_seed(2, "a", i));
  }
  CHECK(seen.size() == 300);
  CHECK(derive_seed(5, "x", 3) == derive_seed(5, "x", 3));
  // Label/index boundaries must not alias.
  CHECK(derive_seed(0, "ab", 0) != derive_seed(0, "a", 0));
}
