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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ttpa {

/// One bit per byte, each byte 0 or 1. Index 0 is the most significant bit
/// whenever a bit string encodes an integer.
using Bits = std::vector<std::uint8_t>;
using BitSpan = std::span<const std::uint8_t>;

/// Smallest w with 2^w >= value (0 for value <= 1).
unsigned ceil_log2(std::uint64_t value) noexcept;

/// Writes `value` as `width` big-endian bits into out[0..width).
void write_be(std::uint64_t value, unsigned width, std::span<std::uint8_t> out);
Bits to_bits_be(std::uint64_t value, unsigned width);
/// Reads `bits` as a big-endian unsigned integer (at most 64 bits).
std::uint64_t read_be(BitSpan bits);

/// Hex packing: 4 bits per digit, big-endian, last digit zero-padded on the
/// right. Lower-case output; decoding accepts either case.
std::string to_hex(BitSpan bits);
/// Throws kParse on bad digits or non-zero padding bits.
Bits from_hex(std::string_view hex, std::size_t bit_count);

/// Parses a string of '0'/'1' characters (spaces and underscores ignored).
Bits from_binary(std::string_view text);
std::string to_binary(BitSpan bits);

/// Dense rows x cols bit matrix stored row-major, one byte per bit.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::uint8_t operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }
  std::uint8_t& operator()(std::size_t r, std::size_t c) noexcept {
    return data_[r * cols_ + c];
  }

  std::span<const std::uint8_t> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<std::uint8_t> row(std::size_t r) noexcept {
    return {data_.data() + r * cols_, cols_};
  }

  /// Rows `which` in the given order.
  BitMatrix select_rows(std::span<const std::size_t> which) const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
};

}  // namespace ttpa
