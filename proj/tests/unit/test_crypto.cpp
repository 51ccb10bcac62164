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

#include <algorithm>
#include <functional>
#include <memory>
#include <set>
#include <vector>

#include "doctest.h"
#include "ttpa/circuit.hpp"
#include "ttpa/crypto.hpp"
#include "ttpa/error.hpp"
#include "ttpa/rng.hpp"

using namespace ttpa;

namespace {

// Direct formula for the default predicate, independent of its table.
std::uint8_t xor_and(BitSpan x) { return x[0] ^ x[1] ^ x[2] ^ (x[3] & x[4]); }

std::uint8_t oracle_prg_bit(const LocalPrgParams& p, BitSpan seed, std::size_t i) {
  Bits x;
  for (auto pos : p.index_set(i)) x.push_back(seed[pos]);
  return xor_and(x);
}

EncScheme local_scheme(std::uint64_t seed, std::size_t key_bits) {
  auto p = std::make_shared<LocalPrgParams>(
      prg_params_gen(seed, key_bits, default_stretch(key_bits), 5));
  return EncScheme::local_prg(std::move(p));
}

Bits key_of(std::uint64_t v, std::size_t bits) {
  return to_bits_be(v, static_cast<unsigned>(bits));
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a ttpa::Error");
  return ErrorCode::kRuntime;
}

}  // namespace

TEST_CASE("prg_params_gen shape and determinism") {
  auto p = prg_params_gen(1, 8, 4, 5);
  CHECK(p.stretch == 4);
  CHECK(p.locality == 5);
  for (std::size_t i = 0; i < 4; ++i) {
    auto set = p.index_set(i);
    std::set<std::uint32_t> distinct(set.begin(), set.end());
    CHECK(distinct.size() == 5);
    for (auto v : set) CHECK(v < 8);
  }
  CHECK(prg_params_gen(1, 8, 4, 5) == p);
  CHECK_FALSE(prg_params_gen(2, 8, 4, 5) == p);
  CHECK(code_of([] { prg_params_gen(1, 4, 1, 5); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { prg_params_gen(1, 8, 1, 3); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("default predicate table") {
  Bits t = default_predicate_table();
  REQUIRE(t.size() == 32);
  for (std::uint64_t v = 0; v < 32; ++v) CHECK(t[v] == xor_and(key_of(v, 5)));
  CHECK(t[0] == 0);
  // Balanced: x1 xor x2 xor x3 already is.
  std::size_t ones = 0;
  for (auto v : t) ones += v;
  CHECK(ones == 16);
}

TEST_CASE("prg_expand on chosen seeds") {
  auto p = prg_params_gen(3, 12, 20, 5);
  SUBCASE("restricted seed 10110 gives 0") {
    Bits seed(12, 0);
    const Bits pattern{1, 0, 1, 1, 0};
    auto set = p.index_set(7);
    for (std::size_t a = 0; a < 5; ++a) seed[set[a]] = pattern[a];
    CHECK(prg_bit(p, seed, 7) == 0);
  }
  SUBCASE("all-zero seed gives all-zero output") {
    Bits out = prg_expand(p, Bits(12, 0));
    CHECK(out == Bits(20, 0));
  }
  CHECK(code_of([&] { prg_expand(p, Bits(11, 0)); }) == ErrorCode::kShapeMismatch);
  CHECK(code_of([&] { prg_bit(p, Bits(12, 0), 20); }) == ErrorCode::kOutOfRange);
}

TEST_CASE("property: prg_expand matches the predicate formula") {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const std::size_t len = 5 + rng.uniform_below(20);
    auto p = prg_params_gen(rng.next_u64(), len, 1 + rng.uniform_below(200), 5);
    for (int s = 0; s < 20; ++s) {
      Bits seed = rng.bits(len);
      Bits out = prg_expand(p, seed);
      for (std::size_t i = 0; i < p.stretch; ++i) REQUIRE(out[i] == oracle_prg_bit(p, seed, i));
    }
  }
}

TEST_CASE("prg_bit_circuit agrees with prg_expand on every 10-bit seed") {
  auto p = prg_params_gen(10, 10, 30, 5);
  std::vector<Bits> seeds;
  for (std::uint64_t v = 0; v < 1024; ++v) seeds.push_back(key_of(v, 10));
  for (std::size_t i = 0; i < p.stretch; ++i) {
    Circuit c = prg_bit_circuit(p, i);
    CHECK(circuit_metrics(c).depth == 2);
    Bits vals = eval_circuit_many(c, seeds);
    for (std::uint64_t v = 0; v < 1024; ++v) REQUIRE(vals[v] == prg_bit(p, seeds[v], i));
  }
}

TEST_CASE("prg_bit_circuit with an XOR predicate on two bits") {
  auto p = prg_params_gen(5, 4, 3, 2, Bits{0, 1, 1, 0});
  Circuit c = prg_bit_circuit(p, 1);
  CHECK(c.op(c.output()) == GateOp::kOr);
  CHECK(c.args(c.output()).size() == 2);
  CHECK(circuit_metrics(c).depth == 2);
}

TEST_CASE("prg_bit_circuit ignores wires outside its index set") {
  Rng rng(12);
  auto p = prg_params_gen(6, 16, 10, 5);
  for (std::size_t i = 0; i < p.stretch; ++i) {
    Circuit c = prg_bit_circuit(p, i);
    auto set = p.index_set(i);
    for (int s = 0; s < 20; ++s) {
      Bits seed = rng.bits(16);
      const auto base = eval_circuit(c, seed);
      for (std::uint32_t w = 0; w < 16; ++w) {
        if (std::find(set.begin(), set.end(), w) != set.end()) continue;
        seed[w] ^= 1;
        REQUIRE(eval_circuit(c, seed) == base);
        seed[w] ^= 1;
      }
    }
  }
}

TEST_CASE("prg params JSON round trip") {
  auto p = prg_params_gen(8, 24, 300, 5);
  CHECK(prg_params_from_json(prg_params_to_json(p)) == p);
  CHECK_THROWS_AS(prg_params_from_json("{}"), Error);
  CHECK_THROWS_AS(prg_params_from_json("[1,2]"), Error);
}

TEST_CASE("LocalPrgParams validation") {
  auto p = prg_params_gen(8, 8, 4, 5);
  p.index_sets[1] = p.index_sets[0];  // repeat within set 0
  CHECK(code_of([&] { p.validate(); }) == ErrorCode::kInvalidArgument);
  auto q = prg_params_gen(8, 8, 4, 5);
  q.index_sets[3] = 8;
  CHECK_THROWS_AS(q.validate(), Error);
  auto r = prg_params_gen(8, 8, 4, 5);
  r.predicate.pop_back();
  CHECK_THROWS_AS(r.validate(), Error);
}

TEST_CASE("scheme names") {
  CHECK(parse_scheme("local_prg") == SchemeKind::kLocalPrg);
  CHECK(parse_scheme("LOCAL_PRG") == SchemeKind::kLocalPrg);
  CHECK(parse_scheme("prf") == SchemeKind::kPrf);
  CHECK(std::string(scheme_name(SchemeKind::kPrf)) == "prf");
  CHECK_THROWS_AS(parse_scheme("aes"), Error);
  CHECK(parse_circuit_mode("folded") == CircuitMode::kCompact);
  CHECK_THROWS_AS(parse_circuit_mode("fast"), Error);
  CHECK(default_stretch(16) == 4096);
}

TEST_CASE("enc_gen key width and determinism") {
  auto scheme = local_scheme(1, 16);
  Rng a(5), b(5);
  auto k1 = enc_gen(scheme, a);
  CHECK(k1.bits.size() == 16);
  CHECK(enc_gen(scheme, b).bits == k1.bits);

  // Keys from different streams collide with probability 2^-16 per pair.
  std::size_t collisions = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    Rng x(derive_seed(s, "key-a")), y(derive_seed(s, "key-b"));
    collisions += enc_gen(scheme, x).bits == enc_gen(scheme, y).bits;
  }
  CHECK(collisions <= 2);
  CHECK_THROWS_AS(EncScheme::prf(4), Error);
  CHECK_THROWS_AS(EncScheme::prf(65), Error);
}

TEST_CASE("pinned local encryption example") {
  auto scheme = local_scheme(21, 12);
  // Search for a key with G(sk)_3 = 1 using the formula oracle.
  Bits key;
  for (std::uint64_t v = 0; v < 4096; ++v) {
    Bits k = key_of(v, 12);
    if (oracle_prg_bit(*scheme.prg, k, 3) == 1) {
      key = k;
      break;
    }
  }
  REQUIRE(!key.empty());
  EncKey sk{scheme, key};
  auto c = enc_encrypt_at(sk, 0, 3);
  CHECK(c == EncCiphertext{3, 1});
  CHECK(enc_decrypt(sk, EncCiphertext{3, 1}) == 0);
  CHECK(enc_decrypt(sk, enc_encrypt_at(sk, 1, 3)) == 1);
  // r equal to the stretch is outside the index domain.
  CHECK(code_of([&] { enc_decrypt(sk, EncCiphertext{scheme.prg->stretch, 0}); }) ==
        ErrorCode::kMalformed);
  CHECK(code_of([&] { enc_decrypt(sk, EncCiphertext{0, 2}); }) == ErrorCode::kMalformed);
}

TEST_CASE("PRF pads match independently computed HMAC-SHA256 values") {
  // Top bit of HMAC-SHA256(key bytes, 8-byte big-endian nonce), computed
  // outside this code base.
  const Bits k64 = to_bits_be(0x0123456789abcdefULL, 64);
  const Bits want64{0, 1, 1, 1, 1, 1, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0};
  auto s64 = EncScheme::prf(64);
  for (std::uint64_t r = 0; r < 16; ++r) CHECK(enc_pad(s64, k64, r) == want64[r]);

  const Bits k12 = from_binary("101100111000");
  const Bits want12{1, 1, 1, 1, 1, 0, 1, 1, 0, 1, 1, 1, 1, 0, 1, 0};
  auto s12 = EncScheme::prf(12);
  for (std::uint64_t r = 0; r < 16; ++r) CHECK(enc_pad(s12, k12, r) == want12[r]);
  CHECK(code_of([&] { enc_pad(s12, k12, 4096); }) == ErrorCode::kMalformed);
}

TEST_CASE("property: perfect correctness for both schemes") {
  Rng rng(31);
  auto local = local_scheme(31, 16);
  auto prf = EncScheme::prf(32);
  for (int t = 0; t < 2000; ++t) {
    for (const auto* s : {&local, &prf}) {
      auto sk = enc_gen(*s, rng);
      std::uint8_t b = rng.bit();
      REQUIRE(enc_decrypt(sk, enc_encrypt(sk, b, rng)) == b);
    }
  }
}

TEST_CASE("masked bits are roughly balanced for a fixed key") {
  Rng rng(2);
  auto scheme = local_scheme(2, 16);
  auto sk = enc_gen(scheme, rng);
  std::size_t ones = 0;
  for (int t = 0; t < 10000; ++t) ones += enc_encrypt(sk, 0, rng).masked;
  // Diagnostic band, wide on purpose: only a badly skewed instance fails.
  CHECK(ones > 4000);
  CHECK(ones < 6000);
}

TEST_CASE("decryption circuits agree with enc_decrypt on every 10-bit key") {
  auto scheme = local_scheme(77, 10);
  Rng rng(77);
  std::vector<Bits> keys;
  for (std::uint64_t v = 0; v < 1024; ++v) keys.push_back(key_of(v, 10));
  for (int t = 0; t < 12; ++t) {
    EncCiphertext c{rng.uniform_below(scheme.prg->stretch), rng.bit()};
    for (auto mode : {CircuitMode::kLiteral, CircuitMode::kCompact}) {
      Circuit circ = enc_dec_circuit(scheme, c, mode);
      Bits vals = eval_circuit_many(circ, keys);
      for (std::uint64_t v = 0; v < 1024; ++v) {
        REQUIRE(vals[v] == enc_decrypt(EncKey{scheme, keys[v]}, c));
      }
    }
  }
}

TEST_CASE("decryption circuit depth and size") {
  auto scheme = local_scheme(9, 12);
  const std::size_t ell = scheme.prg->stretch;
  const std::size_t L = scheme.prg->locality;
  const std::size_t size_bound = ell * ((std::size_t{1} << L) + 2 + ceil_log2(ell)) + 1;
  Rng rng(9);
  for (int t = 0; t < 5; ++t) {
    EncCiphertext c{rng.uniform_below(ell), rng.bit()};
    Circuit lit = enc_dec_circuit(scheme, c, CircuitMode::kLiteral);
    auto m = circuit_metrics(lit);
    CHECK(m.depth == 4);
    CHECK(m.size <= size_bound);
    CHECK(circuit_metrics(enc_dec_circuit(scheme, c, CircuitMode::kCompact)).depth <= 2);
    CHECK(circuit_metrics(constant_fold(lit)).depth <= 2);
  }
}

TEST_CASE("folded literal circuit matches the compact one pointwise") {
  auto scheme = local_scheme(14, 12);
  Rng rng(14);
  std::vector<Bits> keys;
  for (int s = 0; s < 500; ++s) keys.push_back(rng.bits(12));
  for (int t = 0; t < 5; ++t) {
    EncCiphertext c{rng.uniform_below(scheme.prg->stretch), rng.bit()};
    Circuit folded = constant_fold(enc_dec_circuit(scheme, c, CircuitMode::kLiteral));
    Circuit compact = enc_dec_circuit(scheme, c, CircuitMode::kCompact);
    CHECK(eval_circuit_many(folded, keys) == eval_circuit_many(compact, keys));
  }
}

TEST_CASE("PRF decryption has no circuit") {
  auto scheme = EncScheme::prf(16);
  CHECK(code_of([&] { enc_dec_circuit(scheme, EncCiphertext{1, 0}); }) ==
        ErrorCode::kUnsupported);
}

TEST_CASE("index collision bound") {
  CHECK(index_collision_bound(10, 1000) == doctest::Approx(0.1));
  CHECK(index_collision_bound(0, 5) == 0.0);
  CHECK_THROWS_AS(index_collision_bound(1, 0), Error);
}
