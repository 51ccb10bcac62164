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

#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "ttpa/circuit.hpp"
#include "ttpa/error.hpp"
#include "ttpa/rng.hpp"
#include "ttpa/ttscheme.hpp"

using namespace ttpa;

namespace {

BitMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  BitMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.bit();
  }
  return m;
}

// Rounds the fraction of users that decrypt 1, ties to 1. Stands in for a
// pirate built from an exact counting-query answer.
PirateOracle fraction_pirate(const TTKeySet& ks) {
  return PirateOracle([&ks](std::span<const TTCiphertext> batch) {
    Bits out(batch.size());
    for (std::size_t j = 0; j < batch.size(); ++j) {
      std::size_t ones = 0;
      for (std::size_t i = 0; i < ks.n; ++i) ones += tt_dec(ks, i, batch[j]);
      out[j] = 2 * ones >= ks.n;
    }
    return out;
  });
}

}  // namespace

TEST_CASE("row layout example") {
  const Bits key = from_binary("10110001");
  Bits row = tt_encode_row(16, 3, key, 2);
  CHECK(to_binary(row) == "1011000110000000");
  auto d = tt_decode_row(16, 3, row);
  CHECK(d.enc_key == key);
  CHECK(d.index == 2);
  row[15] = 1;
  CHECK_THROWS_AS(tt_decode_row(16, 3, row), Error);
  CHECK_THROWS_AS(tt_encode_row(16, 3, key, 3), Error);
  CHECK_THROWS_AS(tt_encode_row(16, 3, Bits(7, 0), 0), Error);
}

TEST_CASE("parameter checks") {
  CHECK_NOTHROW(tt_check_params(16, 1));
  CHECK_NOTHROW(tt_check_params(128, 1000));
  CHECK_THROWS_AS(tt_check_params(17, 2), Error);
  CHECK_THROWS_AS(tt_check_params(130, 2), Error);
  CHECK_THROWS_AS(tt_check_params(16, 0), Error);
  CHECK_THROWS_AS(tt_check_params(16, 257), Error);
  CHECK_NOTHROW(tt_check_params(16, 256));
}

TEST_CASE("property: encode and decode round trip") {
  Rng rng(1);
  for (int t = 0; t < 300; ++t) {
    const std::size_t kappa = 2 * (8 + rng.uniform_below(57));
    const std::size_t n = 1 + rng.uniform_below(300);
    Bits key = rng.bits(kappa / 2);
    const std::size_t i = rng.uniform_below(n);
    auto d = tt_decode_row(kappa, n, tt_encode_row(kappa, n, key, i));
    REQUIRE(d.enc_key == key);
    REQUIRE(d.index == i);
  }
}

TEST_CASE("tt_gen rows are distinct and decode to their index") {
  Rng rng(2);
  auto ks = tt_gen(32, 100, SchemeKind::kLocalPrg, rng);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < ks.n; ++i) {
    seen.insert(to_hex(ks.row(i)));
    CHECK(tt_decode_row(32, 100, ks.row(i)).index == i);
  }
  CHECK(seen.size() == 100);
  CHECK(ks.scheme.key_bits == 16);
  CHECK(ks.index_bits() == 7);
}

TEST_CASE("perfect correctness for every user and both bits") {
  Rng rng(3);
  for (auto kind : {SchemeKind::kLocalPrg, SchemeKind::kPrf}) {
    auto ks = tt_gen(32, 8, kind, rng);
    for (int t = 0; t < 100; ++t) {
      std::uint8_t b = rng.bit();
      auto c = tt_enc(ks, b, rng);
      REQUIRE(c.components.size() == 8);
      for (std::size_t i = 0; i < ks.n; ++i) REQUIRE(tt_dec(ks, i, c) == b);
    }
  }
}

TEST_CASE("single user degenerates to plain encryption") {
  Rng rng(4);
  auto ks = tt_gen(16, 1, SchemeKind::kLocalPrg, rng);
  CHECK(ks.index_bits() == 0);
  auto key = ks.enc_key(0);
  CHECK(std::equal(key.begin(), key.end(), ks.row(0).begin()));
  for (int t = 0; t < 50; ++t) {
    std::uint8_t b = rng.bit();
    auto c = tt_enc(ks, b, rng);
    CHECK(enc_decrypt(EncKey{ks.scheme, Bits(key.begin(), key.end())}, c.components[0]) == b);
    CHECK(tt_dec(ks, 0, c) == b);
  }
}

TEST_CASE("user i reads only component i") {
  Rng rng(5);
  auto ks = tt_gen(32, 5, SchemeKind::kLocalPrg, rng);
  for (int t = 0; t < 50; ++t) {
    auto c = tt_enc(ks, rng.bit(), rng);
    for (std::size_t i = 0; i < ks.n; ++i) {
      auto before = tt_dec(ks, i, c);
      auto altered = c;
      for (std::size_t j = 0; j < ks.n; ++j) {
        if (j != i) altered.components[j].masked ^= 1;
      }
      REQUIRE(tt_dec(ks, i, altered) == before);
    }
  }
}

TEST_CASE("tt_dec rejects malformed input") {
  Rng rng(6);
  auto ks = tt_gen(16, 3, SchemeKind::kLocalPrg, rng);
  auto c = tt_enc(ks, 1, rng);
  Bits row(ks.row(2).begin(), ks.row(2).end());
  row[9] = 1;  // index 3 has no component
  try {
    tt_dec(ks.scheme, ks.kappa, row, c);
    FAIL("index 3 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOutOfRange);
  }
  auto d = tt_enc(ks, 1, rng);
  d.components[0].masked = 3;
  CHECK_THROWS_AS(tt_dec(ks, 0, d), Error);
}

TEST_CASE("tr_enc decode matrix equals W") {
  Rng rng(7);
  auto ks = tt_gen(32, 10, SchemeKind::kLocalPrg, rng);
  auto w = random_matrix(rng, 10, 50);
  auto batch = tr_enc(ks, w, rng);
  REQUIRE(batch.size() == 50);
  for (std::size_t j = 0; j < 50; ++j) {
    for (std::size_t i = 0; i < 10; ++i) REQUIRE(tt_dec(ks, i, batch[j]) == w(i, j));
  }
  CHECK_THROWS_AS(tr_enc(ks, BitMatrix(9, 4), rng), Error);
}

TEST_CASE("tr_enc column example") {
  Rng rng(8);
  auto ks = tt_gen(16, 3, SchemeKind::kPrf, rng);
  BitMatrix w(3, 1);
  w(0, 0) = 1;
  w(2, 0) = 1;
  auto c = tr_enc(ks, w, rng);
  CHECK(tt_dec(ks, 0, c[0]) == 1);
  CHECK(tt_dec(ks, 1, c[0]) == 0);
  CHECK(tt_dec(ks, 2, c[0]) == 1);
}

TEST_CASE("threshold ciphertexts") {
  Rng rng(9);
  auto ks = tt_gen(16, 4, SchemeKind::kLocalPrg, rng);
  auto decode = [&](std::size_t i) {
    auto c = tr_enc_index(ks, i, rng);
    Bits out;
    for (std::size_t u = 0; u < 4; ++u) out.push_back(tt_dec(ks, u, c));
    return out;
  };
  CHECK(decode(0) == Bits{0, 0, 0, 0});
  CHECK(decode(2) == Bits{1, 1, 0, 0});
  CHECK(decode(4) == Bits{1, 1, 1, 1});
  CHECK_THROWS_AS(tr_enc_index(ks, 5, rng), Error);
}

TEST_CASE("decryption circuit matches decryption on every 16-bit row") {
  Rng rng(10);
  auto ks = tt_gen(16, 3, SchemeKind::kLocalPrg, rng);
  std::vector<Bits> rows;
  for (std::uint64_t v = 0; v < 65536; ++v) rows.push_back(to_bits_be(v, 16));
  for (int t = 0; t < 3; ++t) {
    auto c = tt_enc(ks, rng.bit(), rng);
    for (auto mode : {CircuitMode::kLiteral, CircuitMode::kCompact}) {
      Bits vals = eval_circuit_many(tt_dec_circuit(ks.scheme, 16, c, mode), rows);
      for (std::uint64_t v = 0; v < 65536; ++v) {
        // Key in the high byte, index in the next two bits, padding ignored.
        const std::size_t idx = (v >> 6) & 3;
        std::uint8_t want = 0;
        if (idx < 3) {
          Bits key(rows[v].begin(), rows[v].begin() + 8);
          want = enc_pad(ks.scheme, key, c.components[idx].r) ^ c.components[idx].masked;
        }
        REQUIRE(vals[v] == want);
      }
    }
  }
}

TEST_CASE("decryption circuit agrees with tt_dec on every user") {
  Rng rng(11);
  auto ks = tt_gen(20, 6, SchemeKind::kLocalPrg, rng);
  std::vector<Bits> rows;
  for (std::size_t i = 0; i < ks.n; ++i) rows.emplace_back(ks.row(i).begin(), ks.row(i).end());
  for (int t = 0; t < 50; ++t) {
    auto c = tt_enc(ks, rng.bit(), rng);
    Bits vals = eval_circuit_many(tt_dec_circuit(ks.scheme, 20, c, CircuitMode::kCompact), rows);
    for (std::size_t i = 0; i < ks.n; ++i) REQUIRE(vals[i] == tt_dec(ks, i, c));
  }
}

TEST_CASE("decryption circuit depth and size") {
  Rng rng(12);
  auto ks = tt_gen(16, 4, SchemeKind::kLocalPrg, rng);
  for (int t = 0; t < 5; ++t) {
    auto c = tt_enc(ks, rng.bit(), rng);
    auto lit = circuit_metrics(tt_dec_circuit(ks.scheme, 16, c));
    CHECK(lit.depth <= 6);
    std::size_t component = 0;
    for (const auto& ci : c.components) {
      CircuitBuilder b(8);
      std::vector<GateRef> key;
      for (std::size_t k = 0; k < 8; ++k) key.push_back(b.input(k));
      component = std::max(component,
                           circuit_metrics(b.build(add_enc_dec(b, ks.scheme, ci, key,
                                                               CircuitMode::kLiteral))).size);
    }
    CHECK(lit.size <= 4 * (component + ceil_log2(4) + 1) + 1);
    CHECK(circuit_metrics(tt_dec_circuit(ks.scheme, 16, c, CircuitMode::kCompact)).depth <= 4);
  }
  auto prf = tt_gen(16, 2, SchemeKind::kPrf, rng);
  auto c = tt_enc(prf, 0, rng);
  CHECK_THROWS_AS(tt_dec_circuit(prf.scheme, 16, c), Error);
}

TEST_CASE("pirate oracle is one-shot and length-checked") {
  Rng rng(13);
  auto ks = tt_gen(16, 2, SchemeKind::kLocalPrg, rng);
  auto p = honest_pirate(ks, 1);
  std::vector<TTCiphertext> batch{tt_enc(ks, 1, rng)};
  CHECK_FALSE(p.used());
  CHECK(p(batch) == Bits{1});
  CHECK(p.used());
  CHECK_THROWS_AS(p(batch), Error);
  PirateOracle short_answers([](std::span<const TTCiphertext>) { return Bits{}; });
  CHECK_THROWS_AS(short_answers(batch), Error);
  CHECK_THROWS_AS(honest_pirate(ks, 2), Error);
}

TEST_CASE("honest pirate traces to its user") {
  Rng rng(14);
  auto ks = tt_gen(16, 10, SchemeKind::kLocalPrg, rng);
  int hits = 0;
  for (int t = 0; t < 10; ++t) {
    const std::size_t who = rng.uniform_below(10);
    auto p = honest_pirate(ks, who);
    auto r = tt_trace(ks, p, 0.05, rng);
    CHECK(r.word.size() == r.codebook.length());
    hits += r.accused == std::optional<std::size_t>(who);
  }
  CHECK(hits >= 9);
}

TEST_CASE("tt_trace queries exactly once with the full code length") {
  Rng rng(15);
  auto ks = tt_gen(16, 4, SchemeKind::kLocalPrg, rng);
  int calls = 0;
  std::size_t seen = 0;
  PirateOracle p([&](std::span<const TTCiphertext> batch) {
    ++calls;
    seen = batch.size();
    return Bits(batch.size(), 0);
  });
  auto r = tt_trace(ks, p, 0.1, rng, 20);
  CHECK(calls == 1);
  CHECK(seen == fp_length(4, 0.1, 20));
  CHECK_FALSE(r.accused.has_value());
}

TEST_CASE("linear scan default s") {
  // ceil(4 n^2 ln(2(n+1)/0.05)), frozen from Python.
  CHECK(linear_scan_default_s(4) == 340);
  CHECK(linear_scan_default_s(10) == 2435);
  CHECK_THROWS_AS(linear_scan_default_s(0), Error);
}

TEST_CASE("linear scan on a rounded-fraction pirate") {
  Rng rng(16);
  auto ks = tt_gen(16, 4, SchemeKind::kLocalPrg, rng);
  auto p = fraction_pirate(ks);
  auto r = linear_scan_trace(ks, p, 20, rng);
  CHECK(r.p() == std::vector<double>{0, 0, 1, 1, 1});
  CHECK(r.threshold == std::optional<std::size_t>(2));
  CHECK(r.accused == std::optional<std::size_t>(1));
}

TEST_CASE("linear scan honest users") {
  Rng rng(17);
  auto ks = tt_gen(16, 5, SchemeKind::kPrf, rng);
  for (std::size_t who = 0; who < 5; ++who) {
    auto p = honest_pirate(ks, who);
    auto r = linear_scan_trace(ks, p, 10, rng);
    CHECK(r.accused == std::optional<std::size_t>(who));
  }
}

TEST_CASE("property: any available pirate yields an accusation") {
  // P_0 = 0 and P_n = 1 force a gap of at least 1/n somewhere.
  Rng rng(18);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng.uniform_below(5);
    auto ks = tt_gen(16, n, SchemeKind::kLocalPrg, rng);
    const std::uint64_t salt = rng.next_u64();
    PirateOracle p([&](std::span<const TTCiphertext> batch) {
      Rng coin(salt);
      Bits out(batch.size());
      for (std::size_t j = 0; j < batch.size(); ++j) {
        std::size_t ones = 0;
        for (std::size_t i = 0; i < n; ++i) ones += tt_dec(ks, i, batch[j]);
        out[j] = ones == 0 ? 0 : ones == n ? 1 : coin.bit();
      }
      return out;
    });
    auto r = linear_scan_trace(ks, p, 8, rng);
    REQUIRE(r.accused.has_value());
    CHECK(r.ones[0] == 0);
    CHECK(r.ones[n] == 8);
  }
}

TEST_CASE("keyset JSON round trip and errors") {
  Rng rng(19);
  for (auto kind : {SchemeKind::kLocalPrg, SchemeKind::kPrf}) {
    auto ks = tt_gen(24, 5, kind, rng);
    auto back = keyset_from_json(keyset_to_json(ks));
    CHECK(back.rows == ks.rows);
    CHECK(back.scheme.kind == kind);
    CHECK(keyset_to_json(back) == keyset_to_json(ks));
  }
  CHECK_THROWS_AS(keyset_from_json("{\"kappa\":15,\"n\":2}"), Error);
  auto ks = tt_gen(16, 2, SchemeKind::kPrf, rng);
  std::string text = keyset_to_json(ks);
  // Swap the two rows so the encoded indices no longer match positions.
  auto a = to_hex(ks.row(0)), b = to_hex(ks.row(1));
  auto pa = text.find(a);
  text.replace(pa, a.size(), b);
  auto pb = text.find(b, pa + b.size());
  text.replace(pb, b.size(), a);
  try {
    keyset_from_json(text);
    FAIL("swapped rows accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
  }
}
