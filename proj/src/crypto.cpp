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

#include "ttpa/crypto.hpp"

#include <sodium.h>

#include <algorithm>

#include "json_detail.hpp"
#include "ttpa/error.hpp"

namespace ttpa {

// ---------------------------------------------------------------------------
// Local PRG

void LocalPrgParams::validate() const {
  require(seed_len >= 1, ErrorCode::kInvalidArgument, "local PRG: empty seed");
  require(stretch >= 1, ErrorCode::kInvalidArgument, "local PRG: stretch must be >= 1");
  require(locality >= 1 && locality <= 16, ErrorCode::kInvalidArgument,
          "local PRG: locality must be in [1, 16]");
  if (locality > seed_len) {
    fail(ErrorCode::kInvalidArgument,
         "local PRG: locality " + std::to_string(locality) + " exceeds seed length " +
         std::to_string(seed_len));
  }
  require(index_sets.size() == stretch * locality, ErrorCode::kInvalidArgument,
          "local PRG: index set table has the wrong size");
  require(predicate.size() == (std::size_t{1} << locality), ErrorCode::kInvalidArgument,
          "local PRG: predicate table must have 2^locality entries");
  for (auto v : predicate) {
    require(v <= 1, ErrorCode::kInvalidArgument, "local PRG: predicate entry not a bit");
  }
  for (std::size_t i = 0; i < stretch; ++i) {
    auto set = index_set(i);
    for (std::size_t a = 0; a < locality; ++a) {
      require(set[a] < seed_len, ErrorCode::kInvalidArgument,
              "local PRG: index out of seed range");
      for (std::size_t b = 0; b < a; ++b) {
        if (set[a] == set[b]) {
          fail(ErrorCode::kInvalidArgument,
               "local PRG: repeated position in index set " + std::to_string(i));
        }
      }
    }
  }
}

Bits default_predicate_table() {
  Bits t(32);
  for (unsigned x = 0; x < 32; ++x) {
    unsigned x1 = (x >> 4) & 1, x2 = (x >> 3) & 1, x3 = (x >> 2) & 1;
    unsigned x4 = (x >> 1) & 1, x5 = x & 1;
    t[x] = static_cast<std::uint8_t>(x1 ^ x2 ^ x3 ^ (x4 & x5));
  }
  return t;
}

LocalPrgParams prg_params_gen(std::uint64_t master_seed, std::size_t seed_len,
                              std::size_t stretch, std::size_t locality) {
  if (locality != 5) {
    fail(ErrorCode::kInvalidArgument,
         "the default predicate has locality 5; pass a predicate table for locality " +
         std::to_string(locality));
  }
  return prg_params_gen(master_seed, seed_len, stretch, locality,
                        default_predicate_table());
}

LocalPrgParams prg_params_gen(std::uint64_t master_seed, std::size_t seed_len,
                              std::size_t stretch, std::size_t locality,
                              Bits predicate) {
  if (locality > seed_len) {
    fail(ErrorCode::kInvalidArgument,
         "locality " + std::to_string(locality) + " exceeds seed length " +
         std::to_string(seed_len));
  }
  require(stretch >= 1, ErrorCode::kInvalidArgument, "stretch must be >= 1");
  LocalPrgParams p;
  p.seed_len = seed_len;
  p.stretch = stretch;
  p.locality = locality;
  p.predicate = std::move(predicate);
  p.index_sets.resize(stretch * locality);
  Rng rng(derive_seed(master_seed, "local-prg-index-sets"));
  for (std::size_t i = 0; i < stretch; ++i) {
    auto* set = p.index_sets.data() + i * locality;
    for (std::size_t a = 0; a < locality; ++a) {
      std::uint32_t pos;
      do {
        pos = static_cast<std::uint32_t>(rng.uniform_below(seed_len));
      } while (std::find(set, set + a, pos) != set + a);
      set[a] = pos;
    }
  }
  p.validate();
  return p;
}

std::uint8_t prg_bit(const LocalPrgParams& p, BitSpan seed, std::size_t i) {
  if (i >= p.stretch) {
    fail(ErrorCode::kOutOfRange,
         "PRG output index " + std::to_string(i) + " out of range");
  }
  std::size_t t = 0;
  for (auto pos : p.index_set(i)) t = (t << 1) | (seed[pos] & 1u);
  return p.predicate[t];
}

Bits prg_expand(const LocalPrgParams& p, BitSpan seed) {
  if (seed.size() != p.seed_len) {
    fail(ErrorCode::kShapeMismatch,
         "seed has " + std::to_string(seed.size()) + " bits, PRG expects " +
         std::to_string(p.seed_len));
  }
  Bits out(p.stretch);
  for (std::size_t i = 0; i < p.stretch; ++i) out[i] = prg_bit(p, seed, i);
  return out;
}

Circuit prg_bit_circuit(const LocalPrgParams& p, std::size_t i) {
  if (i >= p.stretch) {
    fail(ErrorCode::kOutOfRange,
         "PRG output index " + std::to_string(i) + " out of range");
  }
  CircuitBuilder b(p.seed_len);
  std::vector<GateRef> vars;
  for (auto pos : p.index_set(i)) vars.push_back(b.input(pos));
  return b.build(add_dnf(b, p.predicate, vars));
}

namespace {

std::size_t index_hex_digits(std::size_t seed_len) {
  return std::max<std::size_t>(1, (ceil_log2(seed_len) + 3) / 4);
}

}  // namespace

std::string prg_params_to_json(const LocalPrgParams& p) {
  using detail::json;
  const std::size_t digits = index_hex_digits(p.seed_len);
  json sets = json::array();
  Bits scratch(digits * 4);
  for (std::size_t i = 0; i < p.stretch; ++i) {
    std::string s;
    for (auto pos : p.index_set(i)) {
      write_be(pos, static_cast<unsigned>(digits * 4), scratch);
      s += to_hex(scratch);
    }
    sets.push_back(std::move(s));
  }
  json j = {{"seed_len", p.seed_len},   {"stretch", p.stretch},
            {"locality", p.locality},   {"index_digits", digits},
            {"index_sets", std::move(sets)}, {"predicate", to_hex(p.predicate)}};
  return j.dump();
}

LocalPrgParams prg_params_from_json(std::string_view text) {
  using namespace detail;
  constexpr const char* what = "local PRG params";
  json j = parse_json(text, what);
  LocalPrgParams p;
  p.seed_len = field<std::size_t>(j, "seed_len", what);
  p.stretch = field<std::size_t>(j, "stretch", what);
  p.locality = field<std::size_t>(j, "locality", what);
  require(p.locality >= 1 && p.locality <= 16, ErrorCode::kParse,
          "local PRG params: locality out of range");
  const std::size_t digits = index_hex_digits(p.seed_len);
  require(field<std::size_t>(j, "index_digits", what) == digits, ErrorCode::kParse,
          "local PRG params: index_digits inconsistent with seed_len");
  auto sets = field<std::vector<std::string>>(j, "index_sets", what);
  require(sets.size() == p.stretch, ErrorCode::kParse,
          "local PRG params: index_sets length differs from stretch");
  p.index_sets.reserve(p.stretch * p.locality);
  for (const auto& s : sets) {
    require(s.size() == digits * p.locality, ErrorCode::kParse,
            "local PRG params: index set entry has the wrong length");
    for (std::size_t a = 0; a < p.locality; ++a) {
      Bits v = from_hex(std::string_view(s).substr(a * digits, digits), digits * 4);
      p.index_sets.push_back(static_cast<std::uint32_t>(read_be(v)));
    }
  }
  p.predicate = from_hex(field<std::string>(j, "predicate", what),
                         std::size_t{1} << p.locality);
  try {
    p.validate();
  } catch (const Error& e) {
    fail(ErrorCode::kParse, e.what());
  }
  return p;
}

// ---------------------------------------------------------------------------
// Schemes

const char* scheme_name(SchemeKind kind) noexcept {
  return kind == SchemeKind::kLocalPrg ? "local_prg" : "prf";
}

SchemeKind parse_scheme(std::string_view name) {
  if (name == "local_prg" || name == "local-prg" || name == "LOCAL_PRG") {
    return SchemeKind::kLocalPrg;
  }
  if (name == "prf" || name == "PRF") return SchemeKind::kPrf;
  fail(ErrorCode::kInvalidArgument, "unknown encryption scheme '" + std::string(name) + "'");
}

EncScheme EncScheme::local_prg(std::shared_ptr<const LocalPrgParams> params) {
  require(params != nullptr, ErrorCode::kInvalidArgument, "local PRG scheme needs params");
  params->validate();
  return EncScheme{SchemeKind::kLocalPrg, params->seed_len, std::move(params)};
}

EncScheme EncScheme::prf(std::size_t key_bits) {
  if (!(key_bits >= kMinKeyBits && key_bits <= kMaxPrfKeyBits)) {
    fail(ErrorCode::kInvalidArgument,
         "PRF key width must be in [" + std::to_string(kMinKeyBits) + ", " +
         std::to_string(kMaxPrfKeyBits) + "]");
  }
  return EncScheme{SchemeKind::kPrf, key_bits, nullptr};
}

std::uint64_t EncScheme::index_domain() const {
  if (kind == SchemeKind::kLocalPrg) return prg->stretch;
  return key_bits >= 64 ? 0 : (std::uint64_t{1} << key_bits);  // 0 means 2^64
}

std::size_t default_stretch(std::size_t key_bits) {
  return key_bits * key_bits * key_bits;
}

EncKey enc_gen(const EncScheme& scheme, Rng& rng) {
  if (scheme.key_bits < kMinKeyBits) {
    fail(ErrorCode::kInvalidArgument,
         "key width " + std::to_string(scheme.key_bits) + " below the minimum of " +
         std::to_string(kMinKeyBits));
  }
  require(scheme.kind == SchemeKind::kPrf || scheme.prg != nullptr,
          ErrorCode::kInvalidArgument, "local PRG scheme without params");
  return EncKey{scheme, rng.bits(scheme.key_bits)};
}

namespace {

std::uint8_t prf_bit(BitSpan key, std::uint64_t nonce) {
  unsigned char key_bytes[kMaxPrfKeyBits / 8] = {};
  const std::size_t key_len = (key.size() + 7) / 8;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (key[i]) key_bytes[i / 8] |= static_cast<unsigned char>(0x80u >> (i % 8));
  }
  unsigned char msg[8];
  for (int k = 0; k < 8; ++k) msg[k] = static_cast<unsigned char>(nonce >> (56 - 8 * k));
  crypto_auth_hmacsha256_state st;
  unsigned char mac[crypto_auth_hmacsha256_BYTES];
  crypto_auth_hmacsha256_init(&st, key_bytes, key_len);
  crypto_auth_hmacsha256_update(&st, msg, sizeof msg);
  crypto_auth_hmacsha256_final(&st, mac);
  return static_cast<std::uint8_t>(mac[0] >> 7);
}

void check_index(const EncScheme& scheme, std::uint64_t r) {
  auto domain = scheme.index_domain();
  if (!(domain == 0 || r < domain)) {
    fail(ErrorCode::kMalformed,
         "ciphertext index " + std::to_string(r) + " outside [0, " +
         std::to_string(domain) + ")");
  }
}

}  // namespace

std::uint8_t enc_pad(const EncScheme& scheme, BitSpan key, std::uint64_t r) {
  check_index(scheme, r);
  if (scheme.kind == SchemeKind::kLocalPrg) return prg_bit(*scheme.prg, key, r);
  return prf_bit(key, r);
}

EncCiphertext enc_encrypt_at(const EncKey& sk, std::uint8_t b, std::uint64_t r) {
  require(b <= 1, ErrorCode::kInvalidArgument, "message must be a bit");
  return EncCiphertext{r, static_cast<std::uint8_t>(enc_pad(sk.scheme, sk.bits, r) ^ b)};
}

EncCiphertext enc_encrypt(const EncKey& sk, std::uint8_t b, Rng& rng) {
  auto domain = sk.scheme.index_domain();
  std::uint64_t r = domain == 0 ? rng.next_u64() : rng.uniform_below(domain);
  return enc_encrypt_at(sk, b, r);
}

std::uint8_t enc_decrypt(const EncKey& sk, const EncCiphertext& c) {
  require(c.masked <= 1, ErrorCode::kMalformed, "masked bit is not a bit");
  require(sk.bits.size() == sk.scheme.key_bits, ErrorCode::kShapeMismatch,
          "key width differs from the scheme's");
  return enc_pad(sk.scheme, sk.bits, c.r) ^ c.masked;
}

// ---------------------------------------------------------------------------
// Decryption circuits

const char* circuit_mode_name(CircuitMode mode) noexcept {
  return mode == CircuitMode::kLiteral ? "literal" : "compact";
}

CircuitMode parse_circuit_mode(std::string_view name) {
  if (name == "literal") return CircuitMode::kLiteral;
  if (name == "compact" || name == "folded") return CircuitMode::kCompact;
  fail(ErrorCode::kInvalidArgument, "unknown circuit mode '" + std::string(name) + "'");
}

GateRef add_enc_dec(CircuitBuilder& b, const EncScheme& scheme,
                    const EncCiphertext& c, std::span<const GateRef> key_wires,
                    CircuitMode mode) {
  require(scheme.kind == SchemeKind::kLocalPrg, ErrorCode::kUnsupported,
          "PRF decryption has no small circuit; use the local PRG scheme for circuit export");
  require(key_wires.size() == scheme.key_bits, ErrorCode::kShapeMismatch,
          "key wire count differs from the key width");
  require(c.masked <= 1, ErrorCode::kMalformed, "masked bit is not a bit");
  check_index(scheme, c.r);
  const auto& prg = *scheme.prg;
  const std::size_t L = prg.locality;

  if (mode == CircuitMode::kCompact) {
    Bits table(prg.predicate);
    for (auto& t : table) t ^= c.masked;
    GateRef vars[16];
    auto set = prg.index_set(c.r);
    for (std::size_t a = 0; a < L; ++a) vars[a] = key_wires[set[a]];
    return add_dnf(b, table, std::span<const GateRef>(vars, L));
  }

  // OR over i of (1_i(r) AND (G_i(s) xor b')), with r and b' as constants.
  // G_i(s) xor b' is a single DNF over the L seed bits plus b'.
  Bits table(std::size_t{2} << L);
  for (std::size_t x = 0; x < (std::size_t{1} << L); ++x) {
    table[(x << 1) | 0] = prg.predicate[x];
    table[(x << 1) | 1] = prg.predicate[x] ^ 1u;
  }
  const unsigned w = ceil_log2(prg.stretch);
  std::vector<GateRef> r_bits(w);
  for (unsigned k = 0; k < w; ++k) r_bits[k] = b.constant((c.r >> (w - 1 - k)) & 1u);
  const GateRef masked = b.constant(c.masked != 0);
  std::vector<GateRef> vars(L + 1);
  std::vector<GateRef> terms;
  terms.reserve(prg.stretch);
  for (std::size_t i = 0; i < prg.stretch; ++i) {
    auto set = prg.index_set(i);
    for (std::size_t a = 0; a < L; ++a) vars[a] = key_wires[set[a]];
    vars[L] = masked;
    GateRef ind = add_indicator(b, i, r_bits);
    GateRef dnf = add_dnf(b, table, vars);
    terms.push_back(b.add_and({ind, dnf}));
  }
  return b.add_or(terms);
}

Circuit enc_dec_circuit(const EncScheme& scheme, const EncCiphertext& c,
                        CircuitMode mode) {
  CircuitBuilder b(scheme.key_bits);
  std::vector<GateRef> key(scheme.key_bits);
  for (std::size_t k = 0; k < key.size(); ++k) key[k] = b.input(k);
  GateRef out = add_enc_dec(b, scheme, c, key, mode);
  return b.build(out);
}

double index_collision_bound(std::uint64_t encryptions, std::uint64_t stretch) {
  require(stretch > 0, ErrorCode::kInvalidArgument, "stretch must be positive");
  double k = static_cast<double>(encryptions);
  return k * k / static_cast<double>(stretch);
}

}  // namespace ttpa
