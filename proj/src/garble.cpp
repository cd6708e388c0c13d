// SPDX-License-Identifier: Apache-2.0
#include "feskl/garble.hpp"

namespace feskl {

namespace {

constexpr size_t kRowTagBytes = 16;

Bytes row_key(const WireLabel& a, const WireLabel* b) {
  Bytes k = a.bits;
  k.push_back(a.point);
  if (b) {
    k.insert(k.end(), b->bits.begin(), b->bits.end());
    k.push_back(b->point);
  }
  return k;
}

Bytes row_index(uint32_t gate_idx, uint8_t row) {
  Bytes idx(5);
  for (int i = 0; i < 4; ++i) idx[i] = uint8_t(gate_idx >> (8 * i));
  idx[4] = row;
  return idx;
}

Bytes encrypt_row(const WireLabel& ka, const WireLabel* kb, uint32_t gate_idx,
                  uint8_t row, const WireLabel& out) {
  Bytes pt = out.bits;
  pt.push_back(out.point);
  pt.insert(pt.end(), kRowTagBytes, 0);
  Bytes stream = prf(row_key(ka, kb), "gc-row", row_index(gate_idx, row),
                     pt.size());
  for (size_t i = 0; i < pt.size(); ++i) pt[i] ^= stream[i];
  return pt;
}

WireLabel decrypt_row(const WireLabel& ka, const WireLabel* kb,
                      uint32_t gate_idx, uint8_t row, const Bytes& ct,
                      size_t kappa_bytes) {
  if (ct.size() != kappa_bytes + 1 + kRowTagBytes)
    throw AuthError("garbled row: bad length");
  Bytes stream = prf(row_key(ka, kb), "gc-row", row_index(gate_idx, row),
                     ct.size());
  Bytes pt(ct.size());
  for (size_t i = 0; i < ct.size(); ++i) pt[i] = ct[i] ^ stream[i];
  for (size_t i = kappa_bytes + 1; i < pt.size(); ++i)
    if (pt[i] != 0) throw AuthError("garbled row: authenticity check failed");
  WireLabel out;
  out.bits.assign(pt.begin(), pt.begin() + kappa_bytes);
  out.point = pt[kappa_bytes] & 1u;
  return out;
}

Bytes label_digest(const WireLabel& l) {
  Bytes d = l.bits;
  d.push_back(l.point);
  return sha256(d);
}

Bytes serialize_label(const WireLabel& l) {
  Bytes out = l.bits;
  out.push_back(l.point);
  return out;
}

WireLabel deserialize_label(const Bytes& b, size_t kappa_bytes) {
  if (b.size() != kappa_bytes + 1) throw FormatError("label: bad length");
  WireLabel l;
  l.bits.assign(b.begin(), b.begin() + kappa_bytes);
  l.point = b[kappa_bytes] & 1u;
  return l;
}

}  // namespace

WireLabel random_label(size_t kappa_bits, Rng& rng) {
  WireLabel l;
  l.bits = rng.bytes(kappa_bits / 8);
  l.point = rng.bit();
  return l;
}

uint8_t GarbledCircuit::decode_output(size_t out_idx, const WireLabel& l) const {
  const OutputEntry& e = output_map.at(out_idx);
  Bytes d = label_digest(l);
  if (d == e.digest[l.point]) return e.bit[l.point];
  if (d == e.digest[l.point ^ 1]) return e.bit[l.point ^ 1];
  throw AuthError("garbled output: unrecognized label");
}

Bytes GarbledCircuit::digest() const {
  Bytes acc;
  auto add32 = [&](uint32_t v) {
    for (int i = 0; i < 4; ++i) acc.push_back(uint8_t(v >> (8 * i)));
  };
  add32(n_in);
  add32(n_out);
  add32(uint32_t(kappa_bits));
  for (const GarbledGate& g : gates) {
    acc.push_back(uint8_t(g.kind));
    add32(g.a);
    add32(g.b);
    for (const Bytes& r : g.rows) acc.insert(acc.end(), r.begin(), r.end());
  }
  for (uint32_t w : output_wires) add32(w);
  for (const OutputEntry& e : output_map)
    for (int s = 0; s < 2; ++s) {
      acc.insert(acc.end(), e.digest[s].begin(), e.digest[s].end());
      acc.push_back(e.bit[s]);
    }
  return sha256(acc);
}

GarbleResult garble(const Circuit& c, size_t kappa_bits, Rng& rng) {
  c.validate();
  if (kappa_bits % 8 != 0 || kappa_bits == 0)
    throw ShapeError("garble: kappa must be a positive multiple of 8");

  std::vector<InputLabelPair> wire_pairs(c.wire_count());
  auto fresh_pair = [&]() {
    InputLabelPair p;
    p.l0 = random_label(kappa_bits, rng);
    p.l1 = random_label(kappa_bits, rng);
    p.l1.point = p.l0.point ^ 1u;
    return p;
  };
  for (uint32_t i = 0; i < c.n_in; ++i) wire_pairs[i] = fresh_pair();

  GarbledCircuit gc;
  gc.n_in = c.n_in;
  gc.n_out = c.n_out;
  gc.kappa_bits = kappa_bits;
  gc.output_wires = c.output_wires;

  for (uint32_t gi = 0; gi < c.gates.size(); ++gi) {
    const Gate& g = c.gates[gi];
    uint32_t out_wire = c.n_in + gi;
    wire_pairs[out_wire] = fresh_pair();
    const InputLabelPair& out_pair = wire_pairs[out_wire];
    GarbledGate gg;
    gg.a = g.a;
    gg.b = g.b;
    switch (g.op) {
      case GateOp::And:
      case GateOp::Xor: {
        gg.kind = GarbledGateKind::Binary;
        gg.rows.resize(4);
        const InputLabelPair& pa = wire_pairs[g.a];
        const InputLabelPair& pb = wire_pairs[g.b];
        for (uint8_t va = 0; va < 2; ++va)
          for (uint8_t vb = 0; vb < 2; ++vb) {
            uint8_t out_val = g.op == GateOp::And ? (va & vb) : (va ^ vb);
            const WireLabel& la = pa.select(va);
            const WireLabel& lb = pb.select(vb);
            uint8_t row = uint8_t(la.point * 2 + lb.point);
            gg.rows[row] =
                encrypt_row(la, &lb, gi, row, out_pair.select(out_val));
          }
        break;
      }
      case GateOp::Not: {
        gg.kind = GarbledGateKind::Unary;
        gg.rows.resize(2);
        const InputLabelPair& pa = wire_pairs[g.a];
        for (uint8_t va = 0; va < 2; ++va) {
          const WireLabel& la = pa.select(va);
          gg.rows[la.point] =
              encrypt_row(la, nullptr, gi, la.point, out_pair.select(va ^ 1u));
        }
        break;
      }
      case GateOp::Const0:
      case GateOp::Const1: {
        gg.kind = GarbledGateKind::Const;
        uint8_t v = g.op == GateOp::Const1 ? 1 : 0;
        gg.rows.push_back(serialize_label(out_pair.select(v)));
        break;
      }
    }
    gc.gates.push_back(std::move(gg));
  }

  for (uint32_t w : c.output_wires) {
    const InputLabelPair& p = wire_pairs[w];
    GarbledCircuit::OutputEntry e;
    e.digest[p.l0.point] = label_digest(p.l0);
    e.bit[p.l0.point] = 0;
    e.digest[p.l1.point] = label_digest(p.l1);
    e.bit[p.l1.point] = 1;
    gc.output_map.push_back(std::move(e));
  }

  GarbleResult res;
  res.gc = std::move(gc);
  res.input_labels.assign(wire_pairs.begin(), wire_pairs.begin() + c.n_in);
  return res;
}

std::vector<WireLabel> eval_garbled_labels(
    const GarbledCircuit& gc, const std::vector<WireLabel>& labels) {
  if (labels.size() != gc.n_in)
    throw ShapeError("eval_garbled: one label per input wire required");
  size_t kappa_bytes = gc.kappa_bits / 8;
  std::vector<WireLabel> wires(labels);
  wires.reserve(gc.n_in + gc.gates.size());
  for (uint32_t gi = 0; gi < gc.gates.size(); ++gi) {
    const GarbledGate& g = gc.gates[gi];
    switch (g.kind) {
      case GarbledGateKind::Binary: {
        const WireLabel& la = wires[g.a];
        const WireLabel& lb = wires[g.b];
        uint8_t row = uint8_t(la.point * 2 + lb.point);
        wires.push_back(
            decrypt_row(la, &lb, gi, row, g.rows.at(row), kappa_bytes));
        break;
      }
      case GarbledGateKind::Unary: {
        const WireLabel& la = wires[g.a];
        wires.push_back(decrypt_row(la, nullptr, gi, la.point,
                                    g.rows.at(la.point), kappa_bytes));
        break;
      }
      case GarbledGateKind::Const:
        wires.push_back(deserialize_label(g.rows.at(0), kappa_bytes));
        break;
    }
  }
  std::vector<WireLabel> out;
  out.reserve(gc.output_wires.size());
  for (uint32_t w : gc.output_wires) out.push_back(wires.at(w));
  return out;
}

BitVec eval_garbled(const GarbledCircuit& gc,
                    const std::vector<WireLabel>& labels) {
  std::vector<WireLabel> out_labels = eval_garbled_labels(gc, labels);
  BitVec out;
  out.reserve(out_labels.size());
  for (size_t i = 0; i < out_labels.size(); ++i)
    out.push_back(gc.decode_output(i, out_labels[i]));
  return out;
}

std::vector<WireLabel> select_labels(const std::vector<InputLabelPair>& pairs,
                                     const BitVec& x) {
  if (pairs.size() != x.size())
    throw ShapeError("select_labels: length mismatch");
  std::vector<WireLabel> out;
  out.reserve(x.size());
  for (size_t i = 0; i < x.size(); ++i) out.push_back(pairs[i].select(x[i]));
  return out;
}

}  // namespace feskl
