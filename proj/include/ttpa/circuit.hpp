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

// Unbounded fan-in boolean circuits over {AND, OR, NOT}.
//
// A circuit is an immutable, topologically ordered gate list. Gate arguments
// are indices of earlier gates, so acyclicity holds by construction. Input
// wires and constants are gates of their own (INPUT / CONST); the output is
// the index of one gate.
//
// Metrics follow the free-negation convention: depth counts AND/OR layers on
// the longest path to the output, NOT/INPUT/CONST gates add nothing. Size is
// the number of AND, OR and NOT gates in the netlist.

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ttpa/bits.hpp"

namespace ttpa {

enum class GateOp : std::uint8_t { kAnd, kOr, kNot, kInput, kConst };

const char* gate_op_name(GateOp op) noexcept;

using GateRef = std::uint32_t;

/// Plain description of one gate, used to assemble circuits from external
/// data (files, tests). `input_index` is read for INPUT, `value` for CONST.
struct GateSpec {
  GateOp op = GateOp::kConst;
  std::vector<GateRef> args;
  std::uint32_t input_index = 0;
  std::uint8_t value = 0;
};

struct CircuitMetrics {
  std::size_t size = 0;
  std::size_t depth = 0;
  friend bool operator==(const CircuitMetrics&, const CircuitMetrics&) = default;
};

class Circuit {
 public:
  /// Validates every structural invariant; throws kMalformed on violation.
  Circuit(std::size_t input_width, std::span<const GateSpec> gates,
          GateRef output);

  std::size_t input_width() const noexcept { return input_width_; }
  std::size_t gate_count() const noexcept { return gates_.size(); }
  GateRef output() const noexcept { return output_; }

  GateOp op(GateRef g) const { return gates_[g].op; }
  std::span<const GateRef> args(GateRef g) const {
    const auto& gate = gates_[g];
    if (gate.op == GateOp::kInput || gate.op == GateOp::kConst) return {};
    return {args_.data() + gate.payload, gate.count};
  }
  std::uint32_t input_index(GateRef g) const { return gates_[g].payload; }
  std::uint8_t const_value(GateRef g) const { return gates_[g].value; }

  GateSpec spec(GateRef g) const;

  friend bool operator==(const Circuit& a, const Circuit& b);

 private:
  friend class CircuitBuilder;
  Circuit() = default;

  // INPUT: payload = input index. CONST: value. AND/OR/NOT: payload is the
  // offset of `count` arguments in args_.
  struct Gate {
    GateOp op;
    std::uint8_t value;
    std::uint32_t payload;
    std::uint32_t count;
  };

  std::size_t input_width_ = 0;
  std::vector<Gate> gates_;
  std::vector<GateRef> args_;
  GateRef output_ = 0;
};

/// Incremental construction with structural sharing: one INPUT gate per wire,
/// one CONST gate per value, one NOT gate per negated reference.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::size_t input_width);

  void reserve(std::size_t gates, std::size_t args);

  GateRef input(std::size_t index);
  GateRef constant(bool value);
  GateRef negation(GateRef x);
  /// input(index) or its negation.
  GateRef literal(std::size_t index, bool positive);

  GateRef add_and(std::span<const GateRef> args);
  GateRef add_or(std::span<const GateRef> args);
  GateRef add_and(std::initializer_list<GateRef> args) {
    return add_and(std::span<const GateRef>(args.begin(), args.size()));
  }
  GateRef add_or(std::initializer_list<GateRef> args) {
    return add_or(std::span<const GateRef>(args.begin(), args.size()));
  }

  std::size_t gate_count() const noexcept { return circuit_.gates_.size(); }
  std::size_t input_width() const noexcept { return circuit_.input_width_; }

  /// Finishes the circuit. The builder is left empty.
  Circuit build(GateRef output);

 private:
  GateRef push(GateOp op, std::uint8_t value, std::uint32_t payload,
               std::uint32_t count);
  GateRef add_nary(GateOp op, std::span<const GateRef> args);

  Circuit circuit_;
  std::vector<GateRef> input_refs_;
  std::vector<GateRef> not_refs_;
  GateRef const_refs_[2];
  static constexpr GateRef kNone = ~GateRef{0};
};

/// Minterm DNF of `table` over the given variable gates. Variable 0 is the
/// most significant bit of the table index. Returns a CONST 0 gate when the
/// table has no minterms; otherwise an OR over the minterm conjunctions.
GateRef add_dnf(CircuitBuilder& b, BitSpan table, std::span<const GateRef> vars);

/// Single conjunction of literals that is 1 iff `bits` spell `target`
/// big-endian; CONST 1 for an empty bit list.
GateRef add_indicator(CircuitBuilder& b, std::uint64_t target,
                      std::span<const GateRef> bits);

/// Throws kShapeMismatch when x has the wrong width.
std::uint8_t eval_circuit(const Circuit& c, BitSpan x);

/// Evaluates `c` on every input row (bit-sliced, 64 rows per pass).
Bits eval_circuit_many(const Circuit& c, std::span<const Bits> rows);

/// Bit-sliced evaluation: `slices[k]` holds input wire k for up to 64 rows.
/// `scratch` is resized as needed and can be reused across calls.
std::uint64_t eval_circuit_sliced(const Circuit& c,
                                  std::span<const std::uint64_t> slices,
                                  std::vector<std::uint64_t>& scratch);

CircuitMetrics circuit_metrics(const Circuit& c);

/// Conjunction over `width` input literals matching `target` big-endian.
/// Throws kOutOfRange when target >= 2^width.
Circuit indicator_circuit(std::uint64_t target, unsigned width);

/// Canonical minterm DNF of a truth table of 2^L entries (L <= 16).
Circuit dnf_of_function(BitSpan table);

/// Propagates constants, removes double negations, duplicate arguments and
/// unreachable gates. The result computes the same function and its size and
/// depth are never larger.
Circuit constant_fold(const Circuit& c);

/// Drops gates not reachable from the output.
Circuit prune_unreachable(const Circuit& c);

/// JSON netlist: {"input_width", "gates": [{"id","op","args",
/// "input_index"?, "value"?}], "output"}.
std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(std::string_view text);

}  // namespace ttpa
