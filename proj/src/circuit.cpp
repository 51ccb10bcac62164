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

#include "ttpa/circuit.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "json_detail.hpp"
#include "ttpa/error.hpp"

namespace ttpa {

const char* gate_op_name(GateOp op) noexcept {
  switch (op) {
    case GateOp::kAnd: return "AND";
    case GateOp::kOr: return "OR";
    case GateOp::kNot: return "NOT";
    case GateOp::kInput: return "INPUT";
    case GateOp::kConst: return "CONST";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Circuit

Circuit::Circuit(std::size_t input_width, std::span<const GateSpec> gates,
                 GateRef output)
    : input_width_(input_width) {
  require(!gates.empty(), ErrorCode::kMalformed, "circuit has no gates");
  require(gates.size() < std::numeric_limits<GateRef>::max(),
          ErrorCode::kMalformed, "circuit too large");
  gates_.reserve(gates.size());
  for (std::size_t id = 0; id < gates.size(); ++id) {
    const auto& g = gates[id];
    const std::string where = "gate " + std::to_string(id) + ": ";
    switch (g.op) {
      case GateOp::kInput:
        if (!g.args.empty()) {
          fail(ErrorCode::kMalformed,
               where + "INPUT takes no args");
        }
        if (g.input_index >= input_width) {
          fail(ErrorCode::kMalformed,
               where + "input_index " + std::to_string(g.input_index) +
             " >= input_width " + std::to_string(input_width));
        }
        gates_.push_back({g.op, 0, g.input_index, 0});
        continue;
      case GateOp::kConst:
        if (!g.args.empty()) {
          fail(ErrorCode::kMalformed,
               where + "CONST takes no args");
        }
        if (g.value > 1) {
          fail(ErrorCode::kMalformed,
               where + "CONST value not a bit");
        }
        gates_.push_back({g.op, g.value, 0, 0});
        continue;
      case GateOp::kNot:
        if (g.args.size() != 1) {
          fail(ErrorCode::kMalformed,
               where + "NOT needs fan-in 1");
        }
        break;
      case GateOp::kAnd:
      case GateOp::kOr:
        if (!(!g.args.empty())) {
          fail(ErrorCode::kMalformed,
               where + "empty fan-in");
        }
        break;
    }
    for (auto a : g.args) {
      if (a >= id) {
        fail(ErrorCode::kMalformed,
             where + "argument " + std::to_string(a) + " is not an earlier gate");
      }
    }
    gates_.push_back({g.op, 0, static_cast<std::uint32_t>(args_.size()),
                      static_cast<std::uint32_t>(g.args.size())});
    args_.insert(args_.end(), g.args.begin(), g.args.end());
  }
  require(output < gates_.size(), ErrorCode::kMalformed, "output reference out of range");
  output_ = output;
}

GateSpec Circuit::spec(GateRef g) const {
  GateSpec s;
  s.op = op(g);
  if (s.op == GateOp::kInput) s.input_index = input_index(g);
  if (s.op == GateOp::kConst) s.value = const_value(g);
  auto a = args(g);
  s.args.assign(a.begin(), a.end());
  return s;
}

bool operator==(const Circuit& a, const Circuit& b) {
  if (a.input_width_ != b.input_width_ || a.output_ != b.output_ ||
      a.gates_.size() != b.gates_.size()) {
    return false;
  }
  for (GateRef g = 0; g < a.gates_.size(); ++g) {
    if (a.op(g) != b.op(g)) return false;
    if (a.op(g) == GateOp::kInput && a.input_index(g) != b.input_index(g)) return false;
    if (a.op(g) == GateOp::kConst && a.const_value(g) != b.const_value(g)) return false;
    auto x = a.args(g);
    auto y = b.args(g);
    if (!std::equal(x.begin(), x.end(), y.begin(), y.end())) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// CircuitBuilder

CircuitBuilder::CircuitBuilder(std::size_t input_width)
    : input_refs_(input_width, kNone), const_refs_{kNone, kNone} {
  circuit_.input_width_ = input_width;
}

void CircuitBuilder::reserve(std::size_t gates, std::size_t args) {
  circuit_.gates_.reserve(gates);
  circuit_.args_.reserve(args);
  not_refs_.reserve(gates);
}

GateRef CircuitBuilder::push(GateOp op, std::uint8_t value, std::uint32_t payload,
                             std::uint32_t count) {
  auto id = static_cast<GateRef>(circuit_.gates_.size());
  circuit_.gates_.push_back({op, value, payload, count});
  return id;
}

GateRef CircuitBuilder::input(std::size_t index) {
  if (index >= input_refs_.size()) {
    fail(ErrorCode::kOutOfRange,
         "input wire " + std::to_string(index) + " out of range");
  }
  auto& ref = input_refs_[index];
  if (ref == kNone) ref = push(GateOp::kInput, 0, static_cast<std::uint32_t>(index), 0);
  return ref;
}

GateRef CircuitBuilder::constant(bool value) {
  auto& ref = const_refs_[value ? 1 : 0];
  if (ref == kNone) ref = push(GateOp::kConst, value ? 1 : 0, 0, 0);
  return ref;
}

GateRef CircuitBuilder::negation(GateRef x) {
  require(x < circuit_.gates_.size(), ErrorCode::kOutOfRange, "negation of unknown gate");
  if (not_refs_.size() <= x) not_refs_.resize(circuit_.gates_.size(), kNone);
  if (not_refs_[x] == kNone) {
    auto offset = static_cast<std::uint32_t>(circuit_.args_.size());
    circuit_.args_.push_back(x);
    not_refs_[x] = push(GateOp::kNot, 0, offset, 1);
  }
  return not_refs_[x];
}

GateRef CircuitBuilder::literal(std::size_t index, bool positive) {
  GateRef x = input(index);
  return positive ? x : negation(x);
}

GateRef CircuitBuilder::add_nary(GateOp op, std::span<const GateRef> args) {
  require(!args.empty(), ErrorCode::kInvalidArgument, "AND/OR needs fan-in >= 1");
  auto offset = static_cast<std::uint32_t>(circuit_.args_.size());
  for (auto a : args) {
    require(a < circuit_.gates_.size(), ErrorCode::kOutOfRange, "argument of unknown gate");
    circuit_.args_.push_back(a);
  }
  return push(op, 0, offset, static_cast<std::uint32_t>(args.size()));
}

GateRef CircuitBuilder::add_and(std::span<const GateRef> args) {
  return add_nary(GateOp::kAnd, args);
}

GateRef CircuitBuilder::add_or(std::span<const GateRef> args) {
  return add_nary(GateOp::kOr, args);
}

Circuit CircuitBuilder::build(GateRef output) {
  require(output < circuit_.gates_.size(), ErrorCode::kMalformed,
          "output reference out of range");
  circuit_.output_ = output;
  Circuit out = std::move(circuit_);
  circuit_ = Circuit();
  circuit_.input_width_ = out.input_width_;
  std::fill(input_refs_.begin(), input_refs_.end(), kNone);
  not_refs_.clear();
  const_refs_[0] = const_refs_[1] = kNone;
  return out;
}

GateRef add_dnf(CircuitBuilder& b, BitSpan table, std::span<const GateRef> vars) {
  const std::size_t width = vars.size();
  require(width < 32 && table.size() == (std::size_t{1} << width),
          ErrorCode::kShapeMismatch, "add_dnf: table size must be 2^vars");
  std::vector<GateRef> terms;
  terms.reserve(table.size());
  std::vector<GateRef> lits(width);
  for (std::size_t t = 0; t < table.size(); ++t) {
    if (!table[t]) continue;
    for (std::size_t k = 0; k < width; ++k) {
      bool one = (t >> (width - 1 - k)) & 1u;
      lits[k] = one ? vars[k] : b.negation(vars[k]);
    }
    terms.push_back(width == 0 ? b.constant(true) : b.add_and(lits));
  }
  if (terms.empty()) return b.constant(false);
  return b.add_or(terms);
}

GateRef add_indicator(CircuitBuilder& b, std::uint64_t target,
                      std::span<const GateRef> bits) {
  const std::size_t width = bits.size();
  if (width == 0) {
    require(target == 0, ErrorCode::kOutOfRange, "indicator target out of range");
    return b.constant(true);
  }
  require(width >= 64 || target < (std::uint64_t{1} << width), ErrorCode::kOutOfRange,
          "indicator target out of range");
  std::vector<GateRef> lits(width);
  for (std::size_t k = 0; k < width; ++k) {
    bool one = (target >> (width - 1 - k)) & 1u;
    lits[k] = one ? bits[k] : b.negation(bits[k]);
  }
  return b.add_and(lits);
}

// ---------------------------------------------------------------------------
// Evaluation and metrics

std::uint8_t eval_circuit(const Circuit& c, BitSpan x) {
  if (x.size() != c.input_width()) {
    fail(ErrorCode::kShapeMismatch,
         "input has " + std::to_string(x.size()) + " bits, circuit expects " +
         std::to_string(c.input_width()));
  }
  std::vector<std::uint8_t> v(c.gate_count());
  for (GateRef g = 0; g < c.gate_count(); ++g) {
    switch (c.op(g)) {
      case GateOp::kInput: v[g] = x[c.input_index(g)] & 1u; break;
      case GateOp::kConst: v[g] = c.const_value(g); break;
      case GateOp::kNot: v[g] = v[c.args(g)[0]] ^ 1u; break;
      case GateOp::kAnd: {
        std::uint8_t r = 1;
        for (auto a : c.args(g)) r &= v[a];
        v[g] = r;
        break;
      }
      case GateOp::kOr: {
        std::uint8_t r = 0;
        for (auto a : c.args(g)) r |= v[a];
        v[g] = r;
        break;
      }
    }
  }
  return v[c.output()];
}

std::uint64_t eval_circuit_sliced(const Circuit& c,
                                  std::span<const std::uint64_t> slices,
                                  std::vector<std::uint64_t>& v) {
  require(slices.size() == c.input_width(), ErrorCode::kShapeMismatch,
          "sliced input width mismatch");
  v.resize(c.gate_count());
  for (GateRef g = 0; g < c.gate_count(); ++g) {
    switch (c.op(g)) {
      case GateOp::kInput: v[g] = slices[c.input_index(g)]; break;
      case GateOp::kConst: v[g] = c.const_value(g) ? ~std::uint64_t{0} : 0; break;
      case GateOp::kNot: v[g] = ~v[c.args(g)[0]]; break;
      case GateOp::kAnd: {
        std::uint64_t r = ~std::uint64_t{0};
        for (auto a : c.args(g)) r &= v[a];
        v[g] = r;
        break;
      }
      case GateOp::kOr: {
        std::uint64_t r = 0;
        for (auto a : c.args(g)) r |= v[a];
        v[g] = r;
        break;
      }
    }
  }
  return v[c.output()];
}

Bits eval_circuit_many(const Circuit& c, std::span<const Bits> rows) {
  Bits out(rows.size());
  std::vector<std::uint64_t> slices(c.input_width());
  std::vector<std::uint64_t> scratch;
  for (std::size_t base = 0; base < rows.size(); base += 64) {
    std::size_t count = std::min<std::size_t>(64, rows.size() - base);
    std::fill(slices.begin(), slices.end(), 0);
    for (std::size_t r = 0; r < count; ++r) {
      const auto& row = rows[base + r];
      require(row.size() == c.input_width(), ErrorCode::kShapeMismatch,
              "row width mismatch in batch evaluation");
      for (std::size_t k = 0; k < row.size(); ++k) {
        slices[k] |= static_cast<std::uint64_t>(row[k] & 1u) << r;
      }
    }
    std::uint64_t res = eval_circuit_sliced(c, slices, scratch);
    for (std::size_t r = 0; r < count; ++r) out[base + r] = (res >> r) & 1u;
  }
  return out;
}

CircuitMetrics circuit_metrics(const Circuit& c) {
  CircuitMetrics m;
  std::vector<std::size_t> depth(c.gate_count(), 0);
  for (GateRef g = 0; g < c.gate_count(); ++g) {
    switch (c.op(g)) {
      case GateOp::kInput:
      case GateOp::kConst:
        break;
      case GateOp::kNot:
        ++m.size;
        depth[g] = depth[c.args(g)[0]];
        break;
      case GateOp::kAnd:
      case GateOp::kOr: {
        ++m.size;
        std::size_t d = 0;
        for (auto a : c.args(g)) d = std::max(d, depth[a]);
        depth[g] = d + 1;
        break;
      }
    }
  }
  m.depth = depth[c.output()];
  return m;
}

// ---------------------------------------------------------------------------
// Constructions

Circuit indicator_circuit(std::uint64_t target, unsigned width) {
  require(width <= 63, ErrorCode::kInvalidArgument, "indicator width above 63");
  if (!(target < (std::uint64_t{1} << width))) {
    fail(ErrorCode::kOutOfRange,
         "indicator target " + std::to_string(target) + " does not fit in " +
         std::to_string(width) + " bits");
  }
  CircuitBuilder b(width);
  std::vector<GateRef> bits(width);
  for (unsigned k = 0; k < width; ++k) bits[k] = b.input(k);
  return b.build(add_indicator(b, target, bits));
}

Circuit dnf_of_function(BitSpan table) {
  unsigned width = ceil_log2(table.size());
  require(!table.empty() && (std::size_t{1} << width) == table.size(),
          ErrorCode::kShapeMismatch, "truth table size must be a power of two");
  if (width > 16) {
    fail(ErrorCode::kInvalidArgument,
         "truth table over " + std::to_string(width) + " bits exceeds the 16-bit limit");
  }
  CircuitBuilder b(width);
  std::vector<GateRef> vars(width);
  for (unsigned k = 0; k < width; ++k) vars[k] = b.input(k);
  return b.build(add_dnf(b, table, vars));
}

Circuit prune_unreachable(const Circuit& c) {
  std::vector<std::uint8_t> live(c.gate_count(), 0);
  live[c.output()] = 1;
  for (GateRef g = static_cast<GateRef>(c.gate_count()); g-- > 0;) {
    if (!live[g]) continue;
    for (auto a : c.args(g)) live[a] = 1;
  }
  std::vector<GateRef> remap(c.gate_count(), 0);
  std::vector<GateSpec> specs;
  for (GateRef g = 0; g < c.gate_count(); ++g) {
    if (!live[g]) continue;
    GateSpec s = c.spec(g);
    for (auto& a : s.args) a = remap[a];
    remap[g] = static_cast<GateRef>(specs.size());
    specs.push_back(std::move(s));
  }
  return Circuit(c.input_width(), specs, remap[c.output()]);
}

Circuit constant_fold(const Circuit& c) {
  // Each old gate maps to either a constant or a gate of the new circuit.
  struct Folded {
    std::optional<bool> constant;
    GateRef ref = 0;
  };
  CircuitBuilder b(c.input_width());
  std::vector<Folded> map(c.gate_count());
  // Marks gates of the new circuit that are NOT gates, with their argument.
  std::vector<std::optional<GateRef>> not_arg;
  auto note = [&](GateRef ref, std::optional<GateRef> arg) {
    if (not_arg.size() <= ref) not_arg.resize(ref + 1);
    if (arg) not_arg[ref] = arg;
  };
  std::vector<GateRef> kept;
  std::vector<GateRef> stamp;  // stamp[ref] == g + 1 once ref is kept for g
  for (GateRef g = 0; g < c.gate_count(); ++g) {
    switch (c.op(g)) {
      case GateOp::kInput:
        map[g].ref = b.input(c.input_index(g));
        break;
      case GateOp::kConst:
        map[g].constant = c.const_value(g) != 0;
        break;
      case GateOp::kNot: {
        const auto& in = map[c.args(g)[0]];
        if (in.constant) {
          map[g].constant = !*in.constant;
        } else if (in.ref < not_arg.size() && not_arg[in.ref]) {
          map[g].ref = *not_arg[in.ref];
        } else {
          map[g].ref = b.negation(in.ref);
          note(map[g].ref, in.ref);
        }
        break;
      }
      case GateOp::kAnd:
      case GateOp::kOr: {
        const bool is_and = c.op(g) == GateOp::kAnd;
        const bool absorbing = !is_and;  // 0 absorbs AND, 1 absorbs OR
        kept.clear();
        bool absorbed = false;
        if (stamp.size() < b.gate_count()) stamp.resize(b.gate_count() * 2, 0);
        for (auto a : c.args(g)) {
          const auto& in = map[a];
          if (in.constant) {
            if (*in.constant == absorbing) absorbed = true;
            continue;
          }
          if (stamp[in.ref] != g + 1) {
            stamp[in.ref] = g + 1;
            kept.push_back(in.ref);
          }
        }
        if (absorbed) {
          map[g].constant = absorbing;
        } else if (kept.empty()) {
          map[g].constant = !absorbing;
        } else if (kept.size() == 1) {
          map[g].ref = kept[0];
        } else {
          map[g].ref = is_and ? b.add_and(kept) : b.add_or(kept);
        }
        break;
      }
    }
  }
  const auto& out = map[c.output()];
  GateRef root = out.constant ? b.constant(*out.constant) : out.ref;
  return prune_unreachable(b.build(root));
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

json circuit_to_value(const Circuit& c) {
  json gates = json::array();
  for (GateRef g = 0; g < c.gate_count(); ++g) {
    json gate = {{"id", g}, {"op", gate_op_name(c.op(g))}};
    auto args = c.args(g);
    gate["args"] = std::vector<GateRef>(args.begin(), args.end());
    if (c.op(g) == GateOp::kInput) gate["input_index"] = c.input_index(g);
    if (c.op(g) == GateOp::kConst) gate["value"] = c.const_value(g);
    gates.push_back(std::move(gate));
  }
  return {{"input_width", c.input_width()}, {"gates", std::move(gates)},
          {"output", c.output()}};
}

Circuit circuit_from_value(const json& j) {
  constexpr const char* what = "circuit netlist";
  auto width = field<std::size_t>(j, "input_width", what);
  const auto& gates = j.contains("gates") ? j.at("gates") : json();
  require(gates.is_array(), ErrorCode::kParse, "circuit netlist: 'gates' must be an array");
  std::vector<GateSpec> specs;
  specs.reserve(gates.size());
  for (std::size_t id = 0; id < gates.size(); ++id) {
    const auto& gj = gates[id];
    auto gid = field<std::size_t>(gj, "id", what);
    if (gid != id) {
      fail(ErrorCode::kMalformed,
           "gate ids must be dense from 0 (found " + std::to_string(gid) +
           " at position " + std::to_string(id) + ")");
    }
    auto op = field<std::string>(gj, "op", what);
    GateSpec s;
    if (op == "AND") s.op = GateOp::kAnd;
    else if (op == "OR") s.op = GateOp::kOr;
    else if (op == "NOT") s.op = GateOp::kNot;
    else if (op == "INPUT") s.op = GateOp::kInput;
    else if (op == "CONST") s.op = GateOp::kConst;
    else fail(ErrorCode::kMalformed, "unknown gate op '" + op + "'");
    s.args = field_or<std::vector<GateRef>>(gj, "args", {}, what);
    if (s.op == GateOp::kInput) s.input_index = field<std::uint32_t>(gj, "input_index", what);
    if (s.op == GateOp::kConst) {
      auto v = field<int>(gj, "value", what);
      require(v == 0 || v == 1, ErrorCode::kMalformed, "CONST value must be 0 or 1");
      s.value = static_cast<std::uint8_t>(v);
    }
    specs.push_back(std::move(s));
  }
  return Circuit(width, specs, field<GateRef>(j, "output", what));
}

}  // namespace detail

std::string circuit_to_json(const Circuit& c) {
  return detail::circuit_to_value(c).dump();
}

Circuit circuit_from_json(std::string_view text) {
  return detail::circuit_from_value(detail::parse_json(text, "circuit netlist"));
}

}  // namespace ttpa
