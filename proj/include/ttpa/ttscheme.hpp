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

// Traitor tracing over n independent single-bit encryption keys.
//
// User i holds a kappa-bit row: kappa/2 encryption key bits, then i as a
// ceil(log2 n)-bit big-endian integer, then zeros. A ciphertext carries one
// component per user. Users are numbered from 0.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ttpa/bits.hpp"
#include "ttpa/circuit.hpp"
#include "ttpa/crypto.hpp"
#include "ttpa/fpcode.hpp"
#include "ttpa/rng.hpp"

namespace ttpa {

/// Largest supported kappa; PRF nonces must fit in 64 bits.
inline constexpr std::size_t kMaxKappa = 128;

struct TTKeySet {
  std::size_t kappa = 0;
  std::size_t n = 0;
  EncScheme scheme;  // key_bits == kappa / 2
  BitMatrix rows;    // n x kappa

  std::size_t key_bits() const noexcept { return kappa / 2; }
  unsigned index_bits() const noexcept { return ceil_log2(n); }
  BitSpan row(std::size_t i) const { return rows.row(i); }
  BitSpan enc_key(std::size_t i) const { return rows.row(i).first(kappa / 2); }
};

/// Checks kappa/n preconditions; throws kInvalidArgument.
void tt_check_params(std::size_t kappa, std::size_t n);

Bits tt_encode_row(std::size_t kappa, std::size_t n, BitSpan enc_key, std::size_t i);

struct DecodedRow {
  Bits enc_key;
  std::size_t index = 0;
};
/// Throws kMalformed when the padding is non-zero.
DecodedRow tt_decode_row(std::size_t kappa, std::size_t n, BitSpan row);

/// LOCAL_PRG keysets sample fresh public PRG params with stretch
/// (kappa/2)^3 and locality 5.
TTKeySet tt_gen(std::size_t kappa, std::size_t n, SchemeKind kind, Rng& rng);

std::string keyset_to_json(const TTKeySet& ks);
TTKeySet keyset_from_json(std::string_view text);

struct TTCiphertext {
  std::vector<EncCiphertext> components;
  friend bool operator==(const TTCiphertext&, const TTCiphertext&) = default;
};

TTCiphertext tt_enc(const TTKeySet& ks, std::uint8_t b, Rng& rng);

/// Decrypts with a packed kappa-bit row; only the row's own component is read.
/// Throws kOutOfRange when the row's index is not below the component count.
std::uint8_t tt_dec(const EncScheme& scheme, std::size_t kappa, BitSpan row,
                    const TTCiphertext& c);
inline std::uint8_t tt_dec(const TTKeySet& ks, std::size_t i, const TTCiphertext& c) {
  return tt_dec(ks.scheme, ks.kappa, ks.row(i), c);
}

/// Ciphertext j has component i encrypting W(i, j).
std::vector<TTCiphertext> tr_enc(const TTKeySet& ks, const BitMatrix& w, Rng& rng);

/// Users 0..i-1 decrypt 1, users i..n-1 decrypt 0.
TTCiphertext tr_enc_index(const TTKeySet& ks, std::size_t i, Rng& rng);

/// Decryption of `c` as a circuit on kappa-bit rows. Rows whose index is n
/// or more evaluate to 0. Throws kUnsupported for the PRF scheme.
Circuit tt_dec_circuit(const EncScheme& scheme, std::size_t kappa,
                       const TTCiphertext& c, CircuitMode mode = CircuitMode::kLiteral);

/// One-shot pirate decoder: a batch of ciphertexts in, one bit per
/// ciphertext out. A second call throws kRuntime.
class PirateOracle {
 public:
  using Fn = std::function<Bits(std::span<const TTCiphertext>)>;

  explicit PirateOracle(Fn fn) : fn_(std::move(fn)) {}

  Bits operator()(std::span<const TTCiphertext> batch);
  bool used() const noexcept { return used_; }

 private:
  Fn fn_;
  bool used_ = false;
};

/// Pirate that decrypts honestly with user i's row.
PirateOracle honest_pirate(const TTKeySet& ks, std::size_t i);

struct TraceResult {
  std::optional<std::size_t> accused;
  Codebook codebook;
  Bits word;  // the pirate's answers
};

/// Fingerprint tracing: fresh codebook, one tr_enc batch, one oracle call.
TraceResult tt_trace(const TTKeySet& ks, PirateOracle& pirate, double eps_fp, Rng& rng,
                     double a = kDefaultTardosConstant);

/// s = ceil(4 n^2 ln(2 (n + 1) / beta)).
std::size_t linear_scan_default_s(std::size_t n, double beta = 0.05);

struct LinearScanResult {
  /// Smallest i in [1, n] with P_i - P_{i-1} >= 1/n.
  std::optional<std::size_t> threshold;
  /// User accused by the threshold (threshold - 1).
  std::optional<std::size_t> accused;
  std::vector<std::size_t> ones;  // per index 0..n: answers equal to 1
  std::size_t s = 0;
  std::vector<double> p() const;
};

LinearScanResult linear_scan_trace(const TTKeySet& ks, PirateOracle& pirate,
                                   std::size_t s, Rng& rng);

}  // namespace ttpa
