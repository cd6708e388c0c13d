// SPDX-License-Identifier: Apache-2.0
//
// Boolean-circuit IR: fan-in-2 gate lists in topological order, a fixed-width
// binary encoding (so a circuit can itself be an input to another circuit),
// and a universal interpreter circuit U with U(encode(f) || x) = f(x).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "feskl/common.hpp"

namespace feskl {

enum class GateOp : uint8_t { And = 0, Xor = 1, Not = 2, Const0 = 3, Const1 = 4 };

constexpr uint32_t kNoWire = 0xffffffffu;

struct Gate {
  GateOp op;
  uint32_t a = kNoWire;  // unused for Const*
  uint32_t b = kNoWire;  // unused for Not/Const*
  bool operator==(const Gate&) const = default;
};

struct Circuit {
  uint32_t n_in = 0;
  uint32_t n_out = 0;
  std::vector<Gate> gates;
  std::vector<uint32_t> output_wires;

  uint32_t wire_count() const { return n_in + uint32_t(gates.size()); }
  // Throws ShapeError if a gate references an undefined wire, an arity is
  // wrong, or an output index is out of range.
  void validate() const;
  bool operator==(const Circuit&) const = default;
};

// Plain evaluation; the oracle every FE layer is checked against.
BitVec eval(const Circuit& c, const BitVec& x);

// Size budget for the fixed-length encoding. Encodings of all circuits within
// one budget have identical length, which is what lets per-bit wire labels
// cover every function.
struct CircuitBudget {
  uint32_t n_in = 4;
  uint32_t n_gates_max = 8;
  uint32_t n_out = 1;

  size_t wire_bits() const { return bits_for(n_in + n_gates_max); }
  size_t count_bits() const { return bits_for(n_gates_max + 1); }
  size_t gate_bits() const { return 3 + 2 * wire_bits(); }
  size_t encoding_bits() const {
    return count_bits() + n_gates_max * gate_bits() + n_out * wire_bits();
  }
  bool fits(const Circuit& c) const {
    return c.n_in == n_in && c.n_out == n_out && c.gates.size() <= n_gates_max;
  }
  bool operator==(const CircuitBudget&) const = default;
};

// Throws BudgetError if c does not fit. decode(encode(c)) == c exactly.
BitVec encode_circuit(const Circuit& c, const CircuitBudget& budget);
Circuit decode_circuit(const BitVec& bits, const CircuitBudget& budget);

// The interpreter circuit: n_in = budget.encoding_bits() + budget.n_in,
// n_out = budget.n_out. Naive quadratic multiplexer network.
Circuit universal_circuit(const CircuitBudget& budget);

// Incremental builder used by the universal interpreter and by the keyed
// circuits of the leasing layers.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(uint32_t n_in) : n_in_(n_in) {}

  uint32_t and_(uint32_t a, uint32_t b) { return push({GateOp::And, a, b}); }
  uint32_t xor_(uint32_t a, uint32_t b) { return push({GateOp::Xor, a, b}); }
  uint32_t not_(uint32_t a) { return push({GateOp::Not, a, kNoWire}); }
  uint32_t const0() { return push({GateOp::Const0, kNoWire, kNoWire}); }
  uint32_t const1() { return push({GateOp::Const1, kNoWire, kNoWire}); }
  uint32_t or_(uint32_t a, uint32_t b) {
    return not_(and_(not_(a), not_(b)));
  }
  // s ? hi : lo
  uint32_t mux(uint32_t s, uint32_t hi, uint32_t lo) {
    return xor_(lo, and_(s, xor_(hi, lo)));
  }
  uint32_t const_bit(bool v) { return v ? const1() : const0(); }
  // AND-tree equality of the wires (LSB first) against a constant value.
  uint32_t eq_const(const std::vector<uint32_t>& wires, uint64_t value);
  // Append the gates of `c`, reading its inputs from `input_wires`; returns
  // the wires carrying c's outputs.
  std::vector<uint32_t> inline_circuit(const Circuit& c,
                                       const std::vector<uint32_t>& input_wires);

  Circuit finish(const std::vector<uint32_t>& outputs);

 private:
  uint32_t push(Gate g) {
    gates_.push_back(g);
    return n_in_ + uint32_t(gates_.size()) - 1;
  }
  uint32_t n_in_;
  std::vector<Gate> gates_;
};

// Text format: header "in=N out=M", one gate per line ("AND 0 1", "NOT 3",
// "CONST0"), optional trailing "outputs i j ..." (defaults to the last M
// wires).
Circuit parse_circuit_text(const std::string& text);
std::string format_circuit_text(const Circuit& c);

// Compact binary form (not the fixed-width bit encoding above).
Bytes circuit_to_bytes(const Circuit& c);
Circuit circuit_from_bytes(const Bytes& data);

// Uniformly random in-budget circuit (used all over the tests).
Circuit random_circuit(const CircuitBudget& budget, class Rng& rng);

}  // namespace feskl
