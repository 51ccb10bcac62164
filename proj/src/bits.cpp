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

#include "ttpa/bits.hpp"

#include "ttpa/error.hpp"

namespace ttpa {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kShapeMismatch: return "shape mismatch";
    case ErrorCode::kOutOfRange: return "out of range";
    case ErrorCode::kMalformed: return "malformed input";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kRuntime: return "runtime error";
  }
  return "unknown";
}

unsigned ceil_log2(std::uint64_t value) noexcept {
  unsigned w = 0;
  while (w < 64 && (std::uint64_t{1} << w) < value) ++w;
  return w;
}

void write_be(std::uint64_t value, unsigned width, std::span<std::uint8_t> out) {
  for (unsigned k = 0; k < width; ++k) {
    out[k] = static_cast<std::uint8_t>((value >> (width - 1 - k)) & 1u);
  }
}

Bits to_bits_be(std::uint64_t value, unsigned width) {
  Bits out(width);
  write_be(value, width, out);
  return out;
}

std::uint64_t read_be(BitSpan bits) {
  require(bits.size() <= 64, ErrorCode::kOutOfRange,
          "read_be: more than 64 bits");
  std::uint64_t v = 0;
  for (auto b : bits) v = (v << 1) | (b & 1u);
  return v;
}

std::string to_hex(BitSpan bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out((bits.size() + 3) / 4, '0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      auto& c = out[i / 4];
      int v = (c <= '9') ? c - '0' : c - 'a' + 10;
      v |= 1 << (3 - i % 4);
      c = kDigits[v];
    }
  }
  return out;
}

Bits from_hex(std::string_view hex, std::size_t bit_count) {
  if (hex.size() != (bit_count + 3) / 4) {
    fail(ErrorCode::kParse,
         "hex string has " + std::to_string(hex.size()) + " digits, expected " +
         std::to_string((bit_count + 3) / 4));
  }
  Bits out(bit_count);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    char c = hex[d];
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else fail(ErrorCode::kParse, std::string("bad hex digit '") + c + "'");
    for (int k = 0; k < 4; ++k) {
      std::size_t i = d * 4 + k;
      int b = (v >> (3 - k)) & 1;
      if (i < bit_count) {
        out[i] = static_cast<std::uint8_t>(b);
      } else {
        require(b == 0, ErrorCode::kParse, "non-zero hex padding bits");
      }
    }
  }
  return out;
}

Bits from_binary(std::string_view text) {
  Bits out;
  for (char c : text) {
    if (c == '0' || c == '1') out.push_back(static_cast<std::uint8_t>(c - '0'));
    else if (c != ' ' && c != '_')
      fail(ErrorCode::kParse, std::string("bad binary digit '") + c + "'");
  }
  return out;
}

std::string to_binary(BitSpan bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

BitMatrix BitMatrix::select_rows(std::span<const std::size_t> which) const {
  BitMatrix out(which.size(), cols_);
  for (std::size_t k = 0; k < which.size(); ++k) {
    require(which[k] < rows_, ErrorCode::kOutOfRange, "select_rows: row index");
    auto src = row(which[k]);
    std::copy(src.begin(), src.end(), out.row(k).begin());
  }
  return out;
}

}  // namespace ttpa
