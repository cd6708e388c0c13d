// SPDX-License-Identifier: Apache-2.0
#include "feskl/circuit.hpp"

#include <sstream>

#include "feskl/crypto.hpp"

namespace feskl {

namespace {

bool is_unary(GateOp op) { return op == GateOp::Not; }
bool is_const(GateOp op) { return op == GateOp::Const0 || op == GateOp::Const1; }

void append_uint(BitVec& bits, uint64_t v, size_t width) {
  for (size_t i = 0; i < width; ++i) bits.push_back((v >> i) & 1u);
}

uint64_t read_uint(const BitVec& bits, size_t& pos, size_t width) {
  uint64_t v = 0;
  for (size_t i = 0; i < width; ++i) v |= uint64_t(bits[pos + i]) << i;
  pos += width;
  return v;
}

}  // namespace

void Circuit::validate() const {
  uint32_t defined = n_in;
  for (const Gate& g : gates) {
    if (is_const(g.op)) {
      if (g.a != kNoWire || g.b != kNoWire)
        throw ShapeError("circuit: const gate with inputs");
    } else if (is_unary(g.op)) {
      if (g.a == kNoWire || g.a >= defined || g.b != kNoWire)
        throw ShapeError("circuit: bad unary gate wiring");
    } else {
      if (g.a == kNoWire || g.b == kNoWire || g.a >= defined || g.b >= defined)
        throw ShapeError("circuit: bad binary gate wiring");
    }
    ++defined;
  }
  if (output_wires.size() != n_out)
    throw ShapeError("circuit: output count mismatch");
  for (uint32_t w : output_wires)
    if (w >= defined) throw ShapeError("circuit: output wire out of range");
}

BitVec eval(const Circuit& c, const BitVec& x) {
  if (x.size() != c.n_in) throw ShapeError("eval: input length mismatch");
  BitVec wires(x);
  wires.reserve(c.wire_count());
  for (const Gate& g : c.gates) {
    uint8_t v = 0;
    switch (g.op) {
      case GateOp::And: v = wires[g.a] & wires[g.b]; break;
      case GateOp::Xor: v = wires[g.a] ^ wires[g.b]; break;
      case GateOp::Not: v = wires[g.a] ^ 1u; break;
      case GateOp::Const0: v = 0; break;
      case GateOp::Const1: v = 1; break;
    }
    wires.push_back(v);
  }
  BitVec out;
  out.reserve(c.n_out);
  for (uint32_t w : c.output_wires) out.push_back(wires[w]);
  return out;
}

BitVec encode_circuit(const Circuit& c, const CircuitBudget& budget) {
  c.validate();
  if (!budget.fits(c)) throw BudgetError("encode_circuit: circuit out of budget");
  BitVec bits;
  bits.reserve(budget.encoding_bits());
  append_uint(bits, c.gates.size(), budget.count_bits());
  size_t w = budget.wire_bits();
  for (size_t i = 0; i < budget.n_gates_max; ++i) {
    if (i < c.gates.size()) {
      const Gate& g = c.gates[i];
      append_uint(bits, uint64_t(g.op), 3);
      append_uint(bits, g.a == kNoWire ? 0 : g.a, w);
      append_uint(bits, g.b == kNoWire ? 0 : g.b, w);
    } else {
      // Padding gate: CONST0 wired to nothing.
      append_uint(bits, uint64_t(GateOp::Const0), 3);
      append_uint(bits, 0, w);
      append_uint(bits, 0, w);
    }
  }
  for (uint32_t ow : c.output_wires) append_uint(bits, ow, w);
  return bits;
}

Circuit decode_circuit(const BitVec& bits, const CircuitBudget& budget) {
  if (bits.size() != budget.encoding_bits())
    throw FormatError("decode_circuit: wrong encoding length");
  size_t pos = 0;
  size_t w = budget.wire_bits();
  uint64_t count = read_uint(bits, pos, budget.count_bits());
  if (count > budget.n_gates_max)
    throw FormatError("decode_circuit: gate count over budget");
  Circuit c;
  c.n_in = budget.n_in;
  c.n_out = budget.n_out;
  for (size_t i = 0; i < budget.n_gates_max; ++i) {
    auto op = GateOp(read_uint(bits, pos, 3));
    uint32_t a = uint32_t(read_uint(bits, pos, w));
    uint32_t b = uint32_t(read_uint(bits, pos, w));
    if (i >= count) continue;
    Gate g{op, a, b};
    if (is_const(op)) {
      g.a = g.b = kNoWire;
    } else if (is_unary(op)) {
      g.b = kNoWire;
    }
    c.gates.push_back(g);
  }
  for (size_t k = 0; k < budget.n_out; ++k)
    c.output_wires.push_back(uint32_t(read_uint(bits, pos, w)));
  c.validate();
  return c;
}

uint32_t CircuitBuilder::eq_const(const std::vector<uint32_t>& wires,
                                  uint64_t value) {
  uint32_t acc = kNoWire;
  for (size_t i = 0; i < wires.size(); ++i) {
    uint32_t lit = ((value >> i) & 1u) ? wires[i] : not_(wires[i]);
    acc = (acc == kNoWire) ? lit : and_(acc, lit);
  }
  return acc == kNoWire ? const1() : acc;
}

std::vector<uint32_t> CircuitBuilder::inline_circuit(
    const Circuit& c, const std::vector<uint32_t>& input_wires) {
  if (input_wires.size() != c.n_in)
    throw ShapeError("inline_circuit: input wire count mismatch");
  std::vector<uint32_t> map(input_wires);
  for (const Gate& g : c.gates) {
    uint32_t w;
    switch (g.op) {
      case GateOp::And: w = and_(map[g.a], map[g.b]); break;
      case GateOp::Xor: w = xor_(map[g.a], map[g.b]); break;
      case GateOp::Not: w = not_(map[g.a]); break;
      case GateOp::Const0: w = const0(); break;
      case GateOp::Const1: w = const1(); break;
      default: throw ShapeError("inline_circuit: bad op");
    }
    map.push_back(w);
  }
  std::vector<uint32_t> outs;
  for (uint32_t ow : c.output_wires) outs.push_back(map[ow]);
  return outs;
}

Circuit CircuitBuilder::finish(const std::vector<uint32_t>& outputs) {
  Circuit c;
  c.n_in = n_in_;
  c.n_out = uint32_t(outputs.size());
  c.gates = std::move(gates_);
  c.output_wires = outputs;
  c.validate();
  return c;
}

Circuit universal_circuit(const CircuitBudget& budget) {
  size_t L = budget.encoding_bits();
  size_t w = budget.wire_bits();
  CircuitBuilder cb(uint32_t(L + budget.n_in));

  auto enc_wire = [&](size_t bit) { return uint32_t(bit); };
  auto x_wire = [&](size_t bit) { return uint32_t(L + bit); };

  // XOR-accumulated one-hot selection over the first n_candidates simulated
  // wires; out-of-range indices select nothing (malformed encodings only).
  auto select = [&](const std::vector<uint32_t>& simw, size_t n_candidates,
                    const std::vector<uint32_t>& idx_wires) {
    uint32_t acc = cb.const0();
    for (size_t j = 0; j < n_candidates; ++j) {
      uint32_t hit = cb.eq_const(idx_wires, j);
      acc = cb.xor_(acc, cb.and_(hit, simw[j]));
    }
    return acc;
  };

  std::vector<uint32_t> simw;
  for (size_t i = 0; i < budget.n_in; ++i) simw.push_back(x_wire(i));

  size_t pos = budget.count_bits();
  for (size_t g = 0; g < budget.n_gates_max; ++g) {
    std::vector<uint32_t> op_wires, a_wires, b_wires;
    for (size_t i = 0; i < 3; ++i) op_wires.push_back(enc_wire(pos + i));
    for (size_t i = 0; i < w; ++i) a_wires.push_back(enc_wire(pos + 3 + i));
    for (size_t i = 0; i < w; ++i) b_wires.push_back(enc_wire(pos + 3 + w + i));
    pos += budget.gate_bits();

    uint32_t a_val = select(simw, simw.size(), a_wires);
    uint32_t b_val = select(simw, simw.size(), b_wires);

    uint32_t v_and = cb.and_(a_val, b_val);
    uint32_t v_xor = cb.xor_(a_val, b_val);
    uint32_t v_not = cb.not_(a_val);
    uint32_t v_c0 = cb.const0();
    uint32_t v_c1 = cb.const1();

    uint32_t result = cb.const0();
    const uint32_t vals[5] = {v_and, v_xor, v_not, v_c0, v_c1};
    for (uint64_t code = 0; code < 5; ++code) {
      uint32_t hit = cb.eq_const(op_wires, code);
      result = cb.xor_(result, cb.and_(hit, vals[code]));
    }
    simw.push_back(result);
  }

  std::vector<uint32_t> outputs;
  for (size_t k = 0; k < budget.n_out; ++k) {
    std::vector<uint32_t> idx_wires;
    for (size_t i = 0; i < w; ++i) idx_wires.push_back(enc_wire(pos + i));
    pos += w;
    outputs.push_back(select(simw, simw.size(), idx_wires));
  }
  return cb.finish(outputs);
}

Circuit parse_circuit_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Circuit c;
  bool have_header = false;
  bool have_outputs = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok[0] == '#') continue;
    if (!have_header) {
      // header: in=N out=M
      auto parse_kv = [&](const std::string& s, const char* key) {
        std::string prefix = std::string(key) + "=";
        if (s.rfind(prefix, 0) != 0)
          throw FormatError("circuit text: expected '" + prefix + "...'");
        return uint32_t(std::stoul(s.substr(prefix.size())));
      };
      c.n_in = parse_kv(tok, "in");
      std::string tok2;
      if (!(ls >> tok2)) throw FormatError("circuit text: missing out=");
      c.n_out = parse_kv(tok2, "out");
      have_header = true;
      continue;
    }
    if (tok == "outputs") {
      uint32_t wi;
      while (ls >> wi) c.output_wires.push_back(wi);
      have_outputs = true;
      continue;
    }
    Gate g;
    if (tok == "AND") g.op = GateOp::And;
    else if (tok == "XOR") g.op = GateOp::Xor;
    else if (tok == "NOT") g.op = GateOp::Not;
    else if (tok == "CONST0") g.op = GateOp::Const0;
    else if (tok == "CONST1") g.op = GateOp::Const1;
    else throw FormatError("circuit text: unknown op '" + tok + "'");
    if (!is_const(g.op)) {
      if (!(ls >> g.a)) throw FormatError("circuit text: missing input wire");
      if (!is_unary(g.op) && !(ls >> g.b))
        throw FormatError("circuit text: missing second input wire");
    }
    c.gates.push_back(g);
  }
  if (!have_header) throw FormatError("circuit text: missing header");
  if (!have_outputs) {
    if (c.wire_count() < c.n_out)
      throw FormatError("circuit text: too few wires for default outputs");
    for (uint32_t k = c.wire_count() - c.n_out; k < c.wire_count(); ++k)
      c.output_wires.push_back(k);
  }
  c.validate();
  return c;
}

std::string format_circuit_text(const Circuit& c) {
  std::ostringstream out;
  out << "in=" << c.n_in << " out=" << c.n_out << "\n";
  for (const Gate& g : c.gates) {
    switch (g.op) {
      case GateOp::And: out << "AND " << g.a << " " << g.b; break;
      case GateOp::Xor: out << "XOR " << g.a << " " << g.b; break;
      case GateOp::Not: out << "NOT " << g.a; break;
      case GateOp::Const0: out << "CONST0"; break;
      case GateOp::Const1: out << "CONST1"; break;
    }
    out << "\n";
  }
  out << "outputs";
  for (uint32_t w : c.output_wires) out << " " << w;
  out << "\n";
  return out.str();
}

Bytes circuit_to_bytes(const Circuit& c) {
  Bytes out;
  auto put32 = [&](uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(uint8_t(v >> (8 * i)));
  };
  put32(c.n_in);
  put32(c.n_out);
  put32(uint32_t(c.gates.size()));
  for (const Gate& g : c.gates) {
    out.push_back(uint8_t(g.op));
    put32(g.a);
    put32(g.b);
  }
  for (uint32_t w : c.output_wires) put32(w);
  return out;
}

Circuit circuit_from_bytes(const Bytes& data) {
  size_t pos = 0;
  auto get32 = [&]() {
    if (pos + 4 > data.size()) throw FormatError("circuit bytes: truncated");
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t(data[pos + i]) << (8 * i);
    pos += 4;
    return v;
  };
  Circuit c;
  c.n_in = get32();
  c.n_out = get32();
  uint32_t n_gates = get32();
  for (uint32_t i = 0; i < n_gates; ++i) {
    if (pos >= data.size()) throw FormatError("circuit bytes: truncated");
    Gate g;
    g.op = GateOp(data[pos++]);
    g.a = get32();
    g.b = get32();
    c.gates.push_back(g);
  }
  for (uint32_t k = 0; k < c.n_out; ++k) c.output_wires.push_back(get32());
  if (pos != data.size()) throw FormatError("circuit bytes: trailing data");
  c.validate();
  return c;
}

Circuit random_circuit(const CircuitBudget& budget, Rng& rng) {
  Circuit c;
  c.n_in = budget.n_in;
  c.n_out = budget.n_out;
  size_t n_gates = 1 + rng.uniform(budget.n_gates_max);
  for (size_t i = 0; i < n_gates; ++i) {
    uint32_t defined = c.n_in + uint32_t(i);
    Gate g;
    g.op = GateOp(rng.uniform(5));
    if (!is_const(g.op)) {
      g.a = uint32_t(rng.uniform(defined));
      if (!is_unary(g.op)) g.b = uint32_t(rng.uniform(defined));
    }
    c.gates.push_back(g);
  }
  for (size_t k = 0; k < c.n_out; ++k)
    c.output_wires.push_back(uint32_t(rng.uniform(c.wire_count())));
  c.validate();
  return c;
}

}  // namespace feskl
