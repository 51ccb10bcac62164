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

// Single-bit symmetric encryption.
//
// Two schemes share one interface:
//   * LOCAL_PRG: a computational one-time pad over a Goldreich-style local
//     PRG. Enc(s, b) = (r, G(s)_r xor b) with r uniform in [0, stretch).
//     Decryption is a constant-depth circuit in the key.
//   * PRF: Enc(s, b) = (r, F_s(r) xor b) with a fresh key-width nonce r and
//     F = first bit of HMAC-SHA256. Decryption has no small circuit.
//
// Parameters at desk scale are toys; nothing here claims real security.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>

#include "ttpa/bits.hpp"
#include "ttpa/circuit.hpp"
#include "ttpa/rng.hpp"

namespace ttpa {

/// Public description of a local PRG G: {0,1}^seed_len -> {0,1}^stretch.
/// Output bit i applies `predicate` to the seed bits at index_set(i); the
/// first listed position is the most significant bit of the table index.
struct LocalPrgParams {
  std::size_t seed_len = 0;
  std::size_t stretch = 0;
  std::size_t locality = 0;
  std::vector<std::uint32_t> index_sets;  // stretch * locality, row-major
  Bits predicate;                         // 2^locality entries

  std::span<const std::uint32_t> index_set(std::size_t i) const {
    return {index_sets.data() + i * locality, locality};
  }

  /// Throws kInvalidArgument if any invariant fails.
  void validate() const;

  friend bool operator==(const LocalPrgParams&, const LocalPrgParams&) = default;
};

/// Truth table of x1 ^ x2 ^ x3 ^ (x4 & x5) over 5 bits.
Bits default_predicate_table();

/// Samples `stretch` index sets of `locality` distinct positions from a stream
/// seeded by master_seed; the predicate is the default one (locality must be
/// 5 unless `predicate` is given).
LocalPrgParams prg_params_gen(std::uint64_t master_seed, std::size_t seed_len,
                              std::size_t stretch, std::size_t locality);
LocalPrgParams prg_params_gen(std::uint64_t master_seed, std::size_t seed_len,
                              std::size_t stretch, std::size_t locality,
                              Bits predicate);

std::uint8_t prg_bit(const LocalPrgParams& p, BitSpan seed, std::size_t i);
Bits prg_expand(const LocalPrgParams& p, BitSpan seed);

/// DNF over the relevant seed wires of a seed_len-wide input.
Circuit prg_bit_circuit(const LocalPrgParams& p, std::size_t i);

std::string prg_params_to_json(const LocalPrgParams& p);
LocalPrgParams prg_params_from_json(std::string_view text);

enum class SchemeKind : std::uint8_t { kLocalPrg, kPrf };

const char* scheme_name(SchemeKind kind) noexcept;
SchemeKind parse_scheme(std::string_view name);

/// One instantiated scheme: the kind, its key width and (for LOCAL_PRG) the
/// public PRG description shared by every key of the instance.
struct EncScheme {
  SchemeKind kind = SchemeKind::kLocalPrg;
  std::size_t key_bits = 0;
  std::shared_ptr<const LocalPrgParams> prg;

  static EncScheme local_prg(std::shared_ptr<const LocalPrgParams> params);
  static EncScheme prf(std::size_t key_bits);

  /// Size of the ciphertext index domain: the PRG stretch, or 2^key_bits.
  std::uint64_t index_domain() const;
};

/// Default stretch for the local-PRG scheme: key_bits^3.
std::size_t default_stretch(std::size_t key_bits);

struct EncKey {
  EncScheme scheme;
  Bits bits;
};

/// r is the PRG output index (LOCAL_PRG) or the nonce (PRF, big-endian
/// key_bits wide); masked is b'.
struct EncCiphertext {
  std::uint64_t r = 0;
  std::uint8_t masked = 0;
  friend bool operator==(const EncCiphertext&, const EncCiphertext&) = default;
};

/// Minimum key width accepted by enc_gen.
inline constexpr std::size_t kMinKeyBits = 8;
/// PRF nonces are carried in 64 bits.
inline constexpr std::size_t kMaxPrfKeyBits = 64;

EncKey enc_gen(const EncScheme& scheme, Rng& rng);

/// Encrypts with the pad index chosen by the caller.
EncCiphertext enc_encrypt_at(const EncKey& sk, std::uint8_t b, std::uint64_t r);
EncCiphertext enc_encrypt(const EncKey& sk, std::uint8_t b, Rng& rng);

/// Pad bit for index r: G(sk)_r or F_sk(r). Throws kMalformed if r is out of
/// the scheme's range.
std::uint8_t enc_pad(const EncScheme& scheme, BitSpan key, std::uint64_t r);
std::uint8_t enc_decrypt(const EncKey& sk, const EncCiphertext& c);

enum class CircuitMode : std::uint8_t {
  /// Per-index disjunction exactly as in the decryption formula, with the
  /// ciphertext carried by CONST gates.
  kLiteral,
  /// The constant-folded equivalent built directly: a DNF of G_r ^ b'.
  kCompact,
};

const char* circuit_mode_name(CircuitMode mode) noexcept;
CircuitMode parse_circuit_mode(std::string_view name);

/// Decryption of `c` as a circuit in the key bits (input width key_bits).
/// Throws kUnsupported for the PRF scheme.
Circuit enc_dec_circuit(const EncScheme& scheme, const EncCiphertext& c,
                        CircuitMode mode = CircuitMode::kLiteral);

/// Same construction inside an existing builder; `key_wires` supplies the
/// key bits. Used to embed component decryption in larger circuits.
GateRef add_enc_dec(CircuitBuilder& b, const EncScheme& scheme,
                    const EncCiphertext& c, std::span<const GateRef> key_wires,
                    CircuitMode mode);

/// Security-loss term k^2 / stretch for k encryptions under one key.
double index_collision_bound(std::uint64_t encryptions, std::uint64_t stretch);

}  // namespace ttpa
