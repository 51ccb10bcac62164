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

#include "ttpa/ttscheme.hpp"

#include <algorithm>
#include <cmath>

#include "json_detail.hpp"
#include "ttpa/error.hpp"

namespace ttpa {

void tt_check_params(std::size_t kappa, std::size_t n) {
  if (kappa % 2 != 0) {
    fail(ErrorCode::kInvalidArgument,
         "kappa must be even, got " + std::to_string(kappa));
  }
  if (kappa / 2 < kMinKeyBits) {
    fail(ErrorCode::kInvalidArgument,
         "kappa must be at least " + std::to_string(2 * kMinKeyBits));
  }
  if (kappa > kMaxKappa) {
    fail(ErrorCode::kInvalidArgument,
         "kappa must be at most " + std::to_string(kMaxKappa));
  }
  require(n >= 1, ErrorCode::kInvalidArgument, "n must be at least 1");
  require(ceil_log2(n) <= kappa / 2, ErrorCode::kInvalidArgument,
          "n exceeds 2^(kappa/2)");
}

Bits tt_encode_row(std::size_t kappa, std::size_t n, BitSpan enc_key, std::size_t i) {
  tt_check_params(kappa, n);
  require(enc_key.size() == kappa / 2, ErrorCode::kShapeMismatch,
          "encryption key must have kappa/2 bits");
  require(i < n, ErrorCode::kOutOfRange, "user index out of range");
  Bits row(kappa, 0);
  std::copy(enc_key.begin(), enc_key.end(), row.begin());
  const unsigned w = ceil_log2(n);
  write_be(i, w, std::span<std::uint8_t>(row).subspan(kappa / 2, w));
  return row;
}

DecodedRow tt_decode_row(std::size_t kappa, std::size_t n, BitSpan row) {
  tt_check_params(kappa, n);
  require(row.size() == kappa, ErrorCode::kShapeMismatch, "row must have kappa bits");
  const std::size_t half = kappa / 2;
  const unsigned w = ceil_log2(n);
  for (std::size_t k = half + w; k < kappa; ++k) {
    require(row[k] == 0, ErrorCode::kMalformed, "row padding is not zero");
  }
  DecodedRow out;
  out.enc_key.assign(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(half));
  out.index = static_cast<std::size_t>(read_be(row.subspan(half, w)));
  return out;
}

TTKeySet tt_gen(std::size_t kappa, std::size_t n, SchemeKind kind, Rng& rng) {
  tt_check_params(kappa, n);
  TTKeySet ks;
  ks.kappa = kappa;
  ks.n = n;
  const std::size_t half = kappa / 2;
  if (kind == SchemeKind::kLocalPrg) {
    auto params = std::make_shared<const LocalPrgParams>(
        prg_params_gen(rng.next_u64(), half, default_stretch(half), 5));
    ks.scheme = EncScheme::local_prg(std::move(params));
  } else {
    ks.scheme = EncScheme::prf(half);
  }
  ks.rows = BitMatrix(n, kappa);
  for (std::size_t i = 0; i < n; ++i) {
    EncKey key = enc_gen(ks.scheme, rng);
    Bits row = tt_encode_row(kappa, n, key.bits, i);
    std::copy(row.begin(), row.end(), ks.rows.row(i).begin());
  }
  return ks;
}

std::string keyset_to_json(const TTKeySet& ks) {
  using detail::json;
  json rows = json::array();
  for (std::size_t i = 0; i < ks.n; ++i) rows.push_back(to_hex(ks.row(i)));
  json j = {{"kappa", ks.kappa},
            {"n", ks.n},
            {"scheme", scheme_name(ks.scheme.kind)},
            {"rows", std::move(rows)}};
  if (ks.scheme.kind == SchemeKind::kLocalPrg) {
    j["prg"] = json::parse(prg_params_to_json(*ks.scheme.prg));
  }
  return j.dump();
}

TTKeySet keyset_from_json(std::string_view text) {
  using namespace detail;
  constexpr const char* what = "keyset";
  json j = parse_json(text, what);
  TTKeySet ks;
  ks.kappa = field<std::size_t>(j, "kappa", what);
  ks.n = field<std::size_t>(j, "n", what);
  try {
    tt_check_params(ks.kappa, ks.n);
  } catch (const Error& e) {
    fail(ErrorCode::kParse, std::string("keyset: ") + e.what());
  }
  auto kind = parse_scheme(field<std::string>(j, "scheme", what));
  if (kind == SchemeKind::kLocalPrg) {
    require(j.contains("prg"), ErrorCode::kParse, "keyset: missing field 'prg'");
    auto params = std::make_shared<const LocalPrgParams>(prg_params_from_json(j["prg"].dump()));
    require(params->seed_len == ks.kappa / 2, ErrorCode::kParse,
            "keyset: PRG seed length differs from kappa/2");
    ks.scheme = EncScheme::local_prg(std::move(params));
  } else {
    ks.scheme = EncScheme::prf(ks.kappa / 2);
  }
  auto rows = field<std::vector<std::string>>(j, "rows", what);
  require(rows.size() == ks.n, ErrorCode::kParse, "keyset: row count differs from n");
  ks.rows = BitMatrix(ks.n, ks.kappa);
  for (std::size_t i = 0; i < ks.n; ++i) {
    Bits r = from_hex(rows[i], ks.kappa);
    DecodedRow d;
    try {
      d = tt_decode_row(ks.kappa, ks.n, r);
    } catch (const Error& e) {
      fail(ErrorCode::kParse, std::string("keyset: ") + e.what());
    }
    if (d.index != i) {
      fail(ErrorCode::kParse,
           "keyset: row " + std::to_string(i) + " encodes index " + std::to_string(d.index));
    }
    std::copy(r.begin(), r.end(), ks.rows.row(i).begin());
  }
  return ks;
}

namespace {

std::vector<EncKey> user_keys(const TTKeySet& ks) {
  std::vector<EncKey> keys;
  keys.reserve(ks.n);
  for (std::size_t i = 0; i < ks.n; ++i) {
    auto k = ks.enc_key(i);
    keys.push_back(EncKey{ks.scheme, Bits(k.begin(), k.end())});
  }
  return keys;
}

}  // namespace

TTCiphertext tt_enc(const TTKeySet& ks, std::uint8_t b, Rng& rng) {
  require(b <= 1, ErrorCode::kInvalidArgument, "message must be a bit");
  auto keys = user_keys(ks);
  TTCiphertext c;
  c.components.reserve(ks.n);
  for (const auto& k : keys) c.components.push_back(enc_encrypt(k, b, rng));
  return c;
}

std::uint8_t tt_dec(const EncScheme& scheme, std::size_t kappa, BitSpan row,
                    const TTCiphertext& c) {
  require(row.size() == kappa && kappa / 2 == scheme.key_bits, ErrorCode::kShapeMismatch,
          "row width differs from kappa");
  const std::size_t n = c.components.size();
  require(n >= 1, ErrorCode::kMalformed, "ciphertext has no components");
  DecodedRow d = tt_decode_row(kappa, n, row);
  if (d.index >= n) {
    fail(ErrorCode::kOutOfRange,
         "row index " + std::to_string(d.index) + " has no ciphertext component");
  }
  const auto& ci = c.components[d.index];
  require(ci.masked <= 1, ErrorCode::kMalformed, "masked bit is not a bit");
  return enc_pad(scheme, d.enc_key, ci.r) ^ ci.masked;
}

std::vector<TTCiphertext> tr_enc(const TTKeySet& ks, const BitMatrix& w, Rng& rng) {
  if (w.rows() != ks.n) {
    fail(ErrorCode::kShapeMismatch,
         "matrix has " + std::to_string(w.rows()) + " rows, keyset has " +
         std::to_string(ks.n) + " users");
  }
  auto keys = user_keys(ks);
  std::vector<TTCiphertext> out(w.cols());
  for (std::size_t j = 0; j < w.cols(); ++j) {
    auto& comps = out[j].components;
    comps.reserve(ks.n);
    for (std::size_t i = 0; i < ks.n; ++i) comps.push_back(enc_encrypt(keys[i], w(i, j), rng));
  }
  return out;
}

TTCiphertext tr_enc_index(const TTKeySet& ks, std::size_t i, Rng& rng) {
  if (i > ks.n) {
    fail(ErrorCode::kOutOfRange,
         "threshold index " + std::to_string(i) + " outside [0, n]");
  }
  auto keys = user_keys(ks);
  TTCiphertext c;
  c.components.reserve(ks.n);
  for (std::size_t u = 0; u < ks.n; ++u) {
    c.components.push_back(enc_encrypt(keys[u], u < i ? 1 : 0, rng));
  }
  return c;
}

Circuit tt_dec_circuit(const EncScheme& scheme, std::size_t kappa, const TTCiphertext& c,
                       CircuitMode mode) {
  require(scheme.kind == SchemeKind::kLocalPrg, ErrorCode::kUnsupported,
          "PRF decryption has no small circuit; use the local PRG scheme for circuit export");
  const std::size_t n = c.components.size();
  tt_check_params(kappa, n);
  require(kappa / 2 == scheme.key_bits, ErrorCode::kShapeMismatch,
          "kappa/2 differs from the scheme key width");
  CircuitBuilder b(kappa);
  const std::size_t half = kappa / 2;
  const unsigned w = ceil_log2(n);
  const std::size_t terms_per_user =
      mode == CircuitMode::kCompact ? (std::size_t{1} << scheme.prg->locality)
                                    : scheme.prg->stretch << scheme.prg->locality;
  b.reserve(kappa + n * (terms_per_user + 4),
            n * (terms_per_user * (scheme.prg->locality + 2) + w + 2));
  std::vector<GateRef> key(half), index(w);
  for (std::size_t k = 0; k < half; ++k) key[k] = b.input(k);
  for (unsigned k = 0; k < w; ++k) index[k] = b.input(half + k);
  std::vector<GateRef> terms;
  terms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    GateRef ind = add_indicator(b, i, index);
    GateRef dec = add_enc_dec(b, scheme, c.components[i], key, mode);
    terms.push_back(b.add_and({ind, dec}));
  }
  return b.build(b.add_or(terms));
}

Bits PirateOracle::operator()(std::span<const TTCiphertext> batch) {
  require(!used_, ErrorCode::kRuntime, "pirate oracle is one-shot and was already queried");
  used_ = true;
  Bits answers = fn_(batch);
  if (answers.size() != batch.size()) {
    fail(ErrorCode::kShapeMismatch,
         "pirate answered " + std::to_string(answers.size()) + " bits for " +
         std::to_string(batch.size()) + " ciphertexts");
  }
  for (auto& a : answers) {
    require(a <= 1, ErrorCode::kShapeMismatch, "pirate answer is not a bit");
  }
  return answers;
}

PirateOracle honest_pirate(const TTKeySet& ks, std::size_t i) {
  require(i < ks.n, ErrorCode::kOutOfRange, "honest pirate user out of range");
  auto row = ks.row(i);
  return PirateOracle([scheme = ks.scheme, kappa = ks.kappa, row = Bits(row.begin(), row.end())](
                          std::span<const TTCiphertext> batch) {
    Bits out(batch.size());
    for (std::size_t j = 0; j < batch.size(); ++j) out[j] = tt_dec(scheme, kappa, row, batch[j]);
    return out;
  });
}

TraceResult tt_trace(const TTKeySet& ks, PirateOracle& pirate, double eps_fp, Rng& rng,
                     double a) {
  TraceResult res;
  res.codebook = fp_gen(ks.n, eps_fp, rng, a);
  auto batch = tr_enc(ks, res.codebook.words, rng);
  res.word = pirate(batch);
  res.accused = fp_trace(res.codebook, res.word);
  return res;
}

std::size_t linear_scan_default_s(std::size_t n, double beta) {
  require(n >= 1, ErrorCode::kInvalidArgument, "n must be at least 1");
  require(beta > 0 && beta < 1, ErrorCode::kInvalidArgument, "beta must be in (0, 1)");
  double nn = static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(4 * nn * nn * std::log(2 * (nn + 1) / beta)));
}

std::vector<double> LinearScanResult::p() const {
  std::vector<double> out(ones.size());
  for (std::size_t i = 0; i < ones.size(); ++i) {
    out[i] = static_cast<double>(ones[i]) / static_cast<double>(s);
  }
  return out;
}

LinearScanResult linear_scan_trace(const TTKeySet& ks, PirateOracle& pirate, std::size_t s,
                                   Rng& rng) {
  require(s >= 1, ErrorCode::kInvalidArgument, "s must be at least 1");
  const std::size_t n = ks.n;
  std::vector<std::size_t> order((n + 1) * s);
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k / s;
  for (std::size_t k = order.size(); k > 1; --k) {
    std::swap(order[k - 1], order[rng.uniform_below(k)]);
  }
  std::vector<TTCiphertext> batch;
  batch.reserve(order.size());
  for (auto i : order) batch.push_back(tr_enc_index(ks, i, rng));
  Bits answers = pirate(batch);

  LinearScanResult res;
  res.s = s;
  res.ones.assign(n + 1, 0);
  for (std::size_t k = 0; k < order.size(); ++k) res.ones[order[k]] += answers[k];
  // P_i - P_{i-1} >= 1/n  <=>  n * (ones_i - ones_{i-1}) >= s, in integers.
  for (std::size_t i = 1; i <= n; ++i) {
    if (res.ones[i] >= res.ones[i - 1] && n * (res.ones[i] - res.ones[i - 1]) >= s) {
      res.threshold = i;
      res.accused = i - 1;
      break;
    }
  }
  return res;
}

}  // namespace ttpa
