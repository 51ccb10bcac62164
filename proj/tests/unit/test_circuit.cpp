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
#include <bit>
#include <vector>

#include "doctest.h"
#include "ttpa/circuit.hpp"
#include "ttpa/error.hpp"
#include "ttpa/rng.hpp"

using namespace ttpa;

namespace {

// Reference evaluator: one forward pass over the gate list through the
// public accessors, byte per gate, no bit-slicing.
std::uint8_t oracle_eval(const Circuit& c, BitSpan x) {
  std::vector<std::uint8_t> v(c.gate_count());
  for (GateRef g = 0; g < c.gate_count(); ++g) {
    auto args = c.args(g);
    switch (c.op(g)) {
      case GateOp::kInput: v[g] = x[c.input_index(g)]; break;
      case GateOp::kConst: v[g] = c.const_value(g); break;
      case GateOp::kNot: v[g] = 1 - v[args[0]]; break;
      case GateOp::kAnd:
        v[g] = std::all_of(args.begin(), args.end(), [&](GateRef a) { return v[a] == 1; });
        break;
      case GateOp::kOr:
        v[g] = std::any_of(args.begin(), args.end(), [&](GateRef a) { return v[a] == 1; });
        break;
    }
  }
  return v[c.output()];
}

// Reference depth by memoized recursion from the output.
std::size_t oracle_depth(const Circuit& c, GateRef g, std::vector<long>& memo) {
  if (memo[g] >= 0) return static_cast<std::size_t>(memo[g]);
  std::size_t d = 0;
  for (auto a : c.args(g)) d = std::max(d, oracle_depth(c, a, memo));
  const bool counts = c.op(g) == GateOp::kAnd || c.op(g) == GateOp::kOr;
  memo[g] = static_cast<long>(d + (counts ? 1 : 0));
  return static_cast<std::size_t>(memo[g]);
}

std::size_t oracle_depth(const Circuit& c) {
  std::vector<long> memo(c.gate_count(), -1);
  return oracle_depth(c, c.output(), memo);
}

GateSpec input(std::uint32_t i) { return {GateOp::kInput, {}, i, 0}; }
GateSpec constant(std::uint8_t v) { return {GateOp::kConst, {}, 0, v}; }
GateSpec gate(GateOp op, std::vector<GateRef> args) { return {op, std::move(args), 0, 0}; }

// Random DAG: `inputs` INPUT gates, a couple of constants, then `body`
// random AND/OR/NOT gates over earlier gates.
Circuit random_circuit(Rng& rng, std::size_t width, std::size_t body) {
  std::vector<GateSpec> g;
  for (std::uint32_t i = 0; i < width; ++i) g.push_back(input(i));
  g.push_back(constant(0));
  g.push_back(constant(1));
  for (std::size_t k = 0; k < body; ++k) {
    const auto n = static_cast<GateRef>(g.size());
    auto pick = [&] { return static_cast<GateRef>(rng.uniform_below(n)); };
    switch (rng.uniform_below(3)) {
      case 0: g.push_back(gate(GateOp::kNot, {pick()})); break;
      case 1: {
        std::vector<GateRef> a(1 + rng.uniform_below(4));
        for (auto& x : a) x = pick();
        g.push_back(gate(GateOp::kAnd, a));
        break;
      }
      default: {
        std::vector<GateRef> a(1 + rng.uniform_below(4));
        for (auto& x : a) x = pick();
        g.push_back(gate(GateOp::kOr, a));
      }
    }
  }
  return Circuit(width, g, static_cast<GateRef>(g.size() - 1));
}

Bits assignment(std::uint64_t v, std::size_t width) {
  return to_bits_be(v, static_cast<unsigned>(width));
}

}  // namespace

TEST_CASE("hand-built gates evaluate as expected") {
  SUBCASE("AND of two inputs") {
    std::vector<GateSpec> g{input(0), input(1), gate(GateOp::kAnd, {0, 1})};
    Circuit c(2, g, 2);
    CHECK(eval_circuit(c, Bits{1, 1}) == 1);
    CHECK(eval_circuit(c, Bits{1, 0}) == 0);
  }
  SUBCASE("NOT of one input") {
    std::vector<GateSpec> g{input(0), gate(GateOp::kNot, {0})};
    Circuit c(1, g, 1);
    CHECK(eval_circuit(c, Bits{0}) == 1);
  }
  SUBCASE("OR(AND(x0,x1), NOT(x2)) on 011") {
    std::vector<GateSpec> g{input(0), input(1), input(2), gate(GateOp::kAnd, {0, 1}),
                            gate(GateOp::kNot, {2}), gate(GateOp::kOr, {3, 4})};
    Circuit c(3, g, 5);
    CHECK(eval_circuit(c, Bits{0, 1, 1}) == 0);
    CHECK(oracle_eval(c, Bits{0, 1, 1}) == 0);
  }
}

TEST_CASE("structural validation") {
  CHECK_THROWS_AS(Circuit(1, std::vector<GateSpec>{}, 0), Error);
  // Forward reference.
  std::vector<GateSpec> fwd{gate(GateOp::kNot, {1}), input(0)};
  CHECK_THROWS_AS(Circuit(1, fwd, 0), Error);
  // Input index beyond the width.
  std::vector<GateSpec> wide{input(3)};
  CHECK_THROWS_AS(Circuit(2, wide, 0), Error);
  // NOT with two arguments.
  std::vector<GateSpec> bad_not{input(0), input(1), gate(GateOp::kNot, {0, 1})};
  CHECK_THROWS_AS(Circuit(2, bad_not, 2), Error);
  // Empty AND.
  std::vector<GateSpec> empty_and{input(0), gate(GateOp::kAnd, {})};
  CHECK_THROWS_AS(Circuit(1, empty_and, 1), Error);
  // Output out of range.
  std::vector<GateSpec> one{input(0)};
  CHECK_THROWS_AS(Circuit(1, one, 4), Error);
  try {
    Circuit(1, fwd, 0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMalformed);
  }
}

TEST_CASE("eval rejects the wrong input width") {
  std::vector<GateSpec> g{input(0), input(1), gate(GateOp::kAnd, {0, 1})};
  Circuit c(2, g, 2);
  try {
    eval_circuit(c, Bits{1});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kShapeMismatch);
  }
}

TEST_CASE("metrics of small circuits") {
  SUBCASE("single AND over 10 inputs") {
    CircuitBuilder b(10);
    std::vector<GateRef> ins;
    for (std::size_t i = 0; i < 10; ++i) ins.push_back(b.input(i));
    Circuit c = b.build(b.add_and(ins));
    CHECK(circuit_metrics(c) == CircuitMetrics{1, 1});
  }
  SUBCASE("DNF with 4 positive terms over 5 variables") {
    CircuitBuilder b(5);
    std::vector<GateRef> terms;
    for (std::size_t t = 0; t < 4; ++t) {
      terms.push_back(b.add_and({b.input(t), b.input(t + 1)}));
    }
    Circuit c = b.build(b.add_or(terms));
    CHECK(circuit_metrics(c) == CircuitMetrics{5, 2});
  }
  SUBCASE("NOT gates add size but no depth") {
    CircuitBuilder b(2);
    GateRef a = b.add_and({b.negation(b.input(0)), b.input(1)});
    Circuit c = b.build(b.negation(a));
    CHECK(circuit_metrics(c) == CircuitMetrics{3, 1});
  }
  SUBCASE("lone input") {
    CircuitBuilder b(3);
    Circuit c = b.build(b.input(2));
    CHECK(circuit_metrics(c) == CircuitMetrics{0, 0});
  }
}

TEST_CASE("builder shares inputs, constants and negations") {
  CircuitBuilder b(3);
  CHECK(b.input(1) == b.input(1));
  CHECK(b.constant(true) == b.constant(true));
  CHECK(b.constant(true) != b.constant(false));
  GateRef x = b.input(0);
  CHECK(b.negation(x) == b.negation(x));
  CHECK(b.literal(0, false) == b.negation(x));
  CHECK(b.literal(0, true) == x);
  CHECK_THROWS_AS(b.input(3), Error);
}

TEST_CASE("indicator circuits") {
  Circuit c = indicator_circuit(5, 3);
  CHECK(eval_circuit(c, Bits{1, 0, 1}) == 1);
  CHECK(eval_circuit(c, Bits{1, 0, 0}) == 0);
  CHECK(eval_circuit(indicator_circuit(0, 2), Bits{0, 0}) == 1);
  CHECK(circuit_metrics(c).depth == 1);
  CHECK_THROWS_AS(indicator_circuit(8, 3), Error);

  // Exactly one accepting assignment for every (target, width).
  for (unsigned w = 1; w <= 8; ++w) {
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << w); t += 1 + w) {
      Circuit ind = indicator_circuit(t, w);
      std::size_t ones = 0;
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << w); ++v) {
        std::uint8_t out = eval_circuit(ind, assignment(v, w));
        ones += out;
        if (out) CHECK(v == t);
      }
      CHECK(ones == 1);
      // One AND plus one NOT per zero bit of the target.
      CHECK(circuit_metrics(ind).size == 1 + (w - std::popcount(t)));
    }
  }
}

TEST_CASE("dnf_of_function") {
  SUBCASE("XOR over 2 bits has two minterms") {
    Circuit c = dnf_of_function(Bits{0, 1, 1, 0});
    CHECK(circuit_metrics(c).depth == 2);
    const GateRef out = c.output();
    CHECK(c.op(out) == GateOp::kOr);
    CHECK(c.args(out).size() == 2);
    for (std::uint64_t v = 0; v < 4; ++v) {
      CHECK(eval_circuit(c, assignment(v, 2)) == ((v >> 1) ^ (v & 1)));
    }
  }
  SUBCASE("constant-0 table") {
    Circuit c = dnf_of_function(Bits{0, 0, 0, 0});
    CHECK(c.op(c.output()) == GateOp::kConst);
    CHECK(c.const_value(c.output()) == 0);
  }
  SUBCASE("five-bit XOR-AND predicate") {
    Bits table(32);
    for (std::uint64_t v = 0; v < 32; ++v) {
      Bits x = assignment(v, 5);
      table[v] = x[0] ^ x[1] ^ x[2] ^ (x[3] & x[4]);
    }
    Circuit c = dnf_of_function(table);
    CHECK(c.args(c.output()).size() == 16);
    CHECK(circuit_metrics(c).depth == 2);
    for (std::uint64_t v = 0; v < 32; ++v) {
      Bits x = assignment(v, 5);
      CHECK(eval_circuit(c, x) == (x[0] ^ x[1] ^ x[2] ^ (x[3] & x[4])));
    }
  }
  SUBCASE("random tables agree on every assignment") {
    Rng rng(17);
    for (unsigned L = 1; L <= 8; ++L) {
      for (int rep = 0; rep < 5; ++rep) {
        Bits table = rng.bits(std::size_t{1} << L);
        Circuit c = dnf_of_function(table);
        for (std::uint64_t v = 0; v < table.size(); ++v) {
          REQUIRE(eval_circuit(c, assignment(v, L)) == table[v]);
        }
        CHECK(circuit_metrics(c).depth <= 2);
      }
    }
  }
  CHECK_THROWS_AS(dnf_of_function(Bits{0, 1, 1}), Error);
}

TEST_CASE("constant folding") {
  SUBCASE("OR(CONST 0, x0) becomes x0") {
    std::vector<GateSpec> g{input(0), constant(0), gate(GateOp::kOr, {1, 0})};
    Circuit f = constant_fold(Circuit(1, g, 2));
    CHECK(f.op(f.output()) == GateOp::kInput);
    CHECK(circuit_metrics(f).size == 0);
  }
  SUBCASE("AND(CONST 0, anything) becomes CONST 0") {
    std::vector<GateSpec> g{input(0),
                            input(1),
                            gate(GateOp::kOr, {0, 1}),
                            constant(0),
                            gate(GateOp::kAnd, {3, 2})};
    Circuit f = constant_fold(Circuit(2, g, 4));
    CHECK(f.op(f.output()) == GateOp::kConst);
    CHECK(f.const_value(f.output()) == 0);
  }
  SUBCASE("double negation disappears") {
    std::vector<GateSpec> g{input(0), gate(GateOp::kNot, {0}), gate(GateOp::kNot, {1})};
    Circuit f = constant_fold(Circuit(1, g, 2));
    CHECK(f.op(f.output()) == GateOp::kInput);
  }
}

TEST_CASE("property: folding preserves the function and never grows") {
  Rng rng(2024);
  for (int t = 0; t < 300; ++t) {
    const std::size_t width = 1 + rng.uniform_below(10);
    Circuit c = random_circuit(rng, width, 1 + rng.uniform_below(40));
    Circuit f = constant_fold(c);
    auto mc = circuit_metrics(c), mf = circuit_metrics(f);
    CHECK(mf.size <= mc.size);
    CHECK(mf.depth <= mc.depth);
    CHECK(f.input_width() == c.input_width());
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << width); ++v) {
      Bits x = assignment(v, width);
      REQUIRE(eval_circuit(f, x) == oracle_eval(c, x));
    }
  }
}

TEST_CASE("property: folding on wide circuits, sampled inputs") {
  Rng rng(77);
  for (int t = 0; t < 40; ++t) {
    const std::size_t width = 20 + rng.uniform_below(40);
    Circuit c = random_circuit(rng, width, 200);
    Circuit f = constant_fold(c);
    for (int s = 0; s < 200; ++s) {
      Bits x = rng.bits(width);
      REQUIRE(eval_circuit(f, x) == oracle_eval(c, x));
    }
  }
}

TEST_CASE("property: metrics agree with the reference depth") {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    Circuit c = random_circuit(rng, 1 + rng.uniform_below(8), 1 + rng.uniform_below(30));
    auto m = circuit_metrics(c);
    CHECK(m.depth == oracle_depth(c));
    CHECK(m.depth <= m.size);
    std::size_t ops = 0;
    for (GateRef g = 0; g < c.gate_count(); ++g) {
      auto op = c.op(g);
      ops += op == GateOp::kAnd || op == GateOp::kOr || op == GateOp::kNot;
    }
    CHECK(m.size == ops);
  }
}

TEST_CASE("property: bit-sliced evaluation matches the reference") {
  Rng rng(99);
  for (int t = 0; t < 50; ++t) {
    const std::size_t width = 1 + rng.uniform_below(12);
    Circuit c = random_circuit(rng, width, 60);
    std::vector<Bits> rows;
    const std::size_t count = 1 + rng.uniform_below(200);
    for (std::size_t r = 0; r < count; ++r) rows.push_back(rng.bits(width));
    Bits many = eval_circuit_many(c, rows);
    REQUIRE(many.size() == count);
    for (std::size_t r = 0; r < count; ++r) REQUIRE(many[r] == oracle_eval(c, rows[r]));
  }
}

TEST_CASE("prune_unreachable keeps the function") {
  std::vector<GateSpec> g{input(0), input(1), gate(GateOp::kAnd, {0, 1}),
                          gate(GateOp::kNot, {0}), gate(GateOp::kOr, {0, 1})};
  Circuit c(2, g, 4);
  Circuit p = prune_unreachable(c);
  CHECK(circuit_metrics(p).size == 1);
  for (std::uint64_t v = 0; v < 4; ++v) {
    CHECK(eval_circuit(p, assignment(v, 2)) == eval_circuit(c, assignment(v, 2)));
  }
}

TEST_CASE("JSON netlist round trip") {
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    Circuit c = random_circuit(rng, 1 + rng.uniform_below(6), 1 + rng.uniform_below(20));
    std::string text = circuit_to_json(c);
    Circuit back = circuit_from_json(text);
    CHECK(back == c);
    CHECK(circuit_to_json(back) == text);
  }
}

TEST_CASE("JSON netlist errors") {
  CHECK_THROWS_AS(circuit_from_json("not json"), Error);
  CHECK_THROWS_AS(circuit_from_json(R"({"gates": [], "output": 0})"), Error);
  // Argument not strictly below the gate id.
  const char* self_ref =
      R"({"input_width":1,"gates":[{"id":0,"op":"INPUT","input_index":0},)"
      R"({"id":1,"op":"NOT","args":[1]}],"output":1})";
  try {
    circuit_from_json(self_ref);
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMalformed);
  }
  // Ids must be dense.
  const char* gap =
      R"({"input_width":1,"gates":[{"id":0,"op":"INPUT","input_index":0},)"
      R"({"id":2,"op":"NOT","args":[0]}],"output":1})";
  CHECK_THROWS_AS(circuit_from_json(gap), Error);
  const char* bad_op = R"({"input_width":1,"gates":[{"id":0,"op":"XOR","args":[]}],"output":0})";
  CHECK_THROWS_AS(circuit_from_json(bad_op), Error);
  const char* bad_const = R"({"input_width":1,"gates":[{"id":0,"op":"CONST","value":2}],"output":0})";
  CHECK_THROWS_AS(circuit_from_json(bad_const), Error);
}

TEST_CASE("hand-written netlist parses and evaluates") {
  const char* text = R"({"input_width": 3, "gates": [
      {"id": 0, "op": "INPUT", "input_index": 0},
      {"id": 1, "op": "INPUT", "input_index": 1},
      {"id": 2, "op": "INPUT", "input_index": 2},
      {"id": 3, "op": "AND", "args": [0, 1]},
      {"id": 4, "op": "NOT", "args": [2]},
      {"id": 5, "op": "OR", "args": [3, 4]}], "output": 5})";
  Circuit c = circuit_from_json(text);
  CHECK(eval_circuit(c, Bits{0, 1, 1}) == 0);
  CHECK(eval_circuit(c, Bits{1, 1, 1}) == 1);
  CHECK(eval_circuit(c, Bits{0, 0, 0}) == 1);
}
