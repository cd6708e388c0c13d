// SPDX-License-Identifier: Apache-2.0
#include "feskl/sethss.hpp"

#include <algorithm>

namespace feskl {

void SetParams::validate() const {
  std::vector<uint8_t> covered(ell, 0);
  for (const auto& t : sets) {
    if (t.empty()) throw ShapeError("sethss: empty set");
    for (uint32_t e : t) {
      if (e >= ell) throw ShapeError("sethss: element out of range");
      covered[e] = 1;
    }
  }
  for (uint8_t c : covered)
    if (!c) throw ShapeError("sethss: union does not cover all elements");
}

SetParams set_gen(size_t m, uint32_t ell, double p, double d, Rng& rng) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("set_gen: p outside (0,1)");
  if (!(d > 0.0 && d < 1.0)) throw ParameterError("set_gen: d outside (0,1)");
  if (m == 0 || ell == 0) throw ParameterError("set_gen: empty geometry");
  // d is compared against a 32-bit uniform draw; exact enough at this scale.
  uint64_t thresh = uint64_t(d * 4294967296.0);
  for (int tries = 0; tries < 1000; ++tries) {
    SetParams params;
    params.p = p;
    params.ell = ell;
    params.sets.resize(m);
    std::vector<uint8_t> covered(ell, 0);
    bool ok = true;
    for (size_t i = 0; i < m; ++i) {
      for (uint32_t e = 0; e < ell; ++e)
        if (rng.uniform(4294967296ull) < thresh) {
          params.sets[i].push_back(e);
          covered[e] = 1;
        }
      if (params.sets[i].empty()) ok = false;
    }
    for (uint8_t c : covered)
      if (!c) ok = false;
    if (ok) return params;
  }
  throw ParameterError("set_gen: could not cover all elements in 1000 tries");
}

std::vector<InputShare> inp_encode(const SetParams& params, const BitVec& x,
                                   Rng& rng) {
  params.validate();
  std::vector<BitVec> pieces(params.ell);
  BitVec acc(x.size(), 0);
  for (uint32_t e = 0; e + 1 < params.ell; ++e) {
    pieces[e] = rng.bits(x.size());
    acc = xor_bits(acc, pieces[e]);
  }
  pieces[params.ell - 1] = xor_bits(acc, x);
  std::vector<InputShare> shares(params.m());
  for (size_t i = 0; i < params.m(); ++i) {
    shares[i].i = uint32_t(i);
    for (uint32_t e : params.sets[i]) shares[i].pieces[e] = pieces[e];
  }
  return shares;
}

namespace {

// Combiner: ell blocks of f.n_in wires; bit j of the reconstructed input is
// the XOR over blocks of wire e*n_in+j.
Circuit build_combiner(const Circuit& f, uint32_t ell) {
  CircuitBuilder b(ell * f.n_in);
  std::vector<uint32_t> x_wires(f.n_in);
  for (uint32_t j = 0; j < f.n_in; ++j) {
    uint32_t w = j;  // block 0
    for (uint32_t e = 1; e < ell; ++e) w = b.xor_(w, e * f.n_in + j);
    x_wires[j] = w;
  }
  return b.finish(b.inline_circuit(f, x_wires));
}

}  // namespace

std::vector<FunctionShare> func_encode(const SetParams& params, const Circuit& f,
                                       size_t kappa_bits, Rng& rng) {
  params.validate();
  f.validate();
  Circuit combiner = build_combiner(f, params.ell);
  GarbleResult gr = garble(combiner, kappa_bits, rng);
  auto gc = std::make_shared<const GarbledCircuit>(std::move(gr.gc));
  Bytes digest = gc->digest();
  std::vector<FunctionShare> shares(params.m());
  for (size_t i = 0; i < params.m(); ++i) {
    shares[i].i = uint32_t(i);
    shares[i].gc_digest = digest;
    if (i == 0) shares[i].gc = gc;
    for (uint32_t e : params.sets[i]) {
      auto& table = shares[i].label_tables[e];
      for (uint32_t j = 0; j < f.n_in; ++j)
        table.push_back(gr.input_labels[e * f.n_in + j]);
    }
  }
  return shares;
}

ShareEvaluation share_eval(const FunctionShare& fs, const InputShare& s) {
  if (fs.i != s.i) throw ShapeError("share_eval: share index mismatch");
  ShareEvaluation ev;
  ev.i = fs.i;
  ev.gc = fs.gc;
  for (const auto& [e, table] : fs.label_tables) {
    auto it = s.pieces.find(e);
    if (it == s.pieces.end())
      throw ShapeError("share_eval: input share missing piece");
    const BitVec& piece = it->second;
    if (piece.size() != table.size())
      throw ShapeError("share_eval: piece width mismatch");
    auto& out = ev.labels[e];
    for (size_t j = 0; j < table.size(); ++j)
      out.push_back(table[j].select(piece[j]));
  }
  return ev;
}

BitVec decode(const SetParams& params, const std::vector<ShareEvaluation>& evals) {
  std::shared_ptr<const GarbledCircuit> gc;
  for (const auto& ev : evals)
    if (ev.gc) gc = ev.gc;
  if (!gc) throw CoverageError("decode: combiner circuit missing");
  std::map<uint32_t, const std::vector<WireLabel>*> chosen;
  for (const auto& ev : evals)
    for (const auto& [e, labels] : ev.labels) {
      auto [it, fresh] = chosen.emplace(e, &labels);
      if (fresh) continue;
      const auto& prev = *it->second;
      if (prev.size() != labels.size())
        throw TamperError("decode: conflicting label widths for element");
      for (size_t j = 0; j < labels.size(); ++j)
        if (prev[j].bits != labels[j].bits || prev[j].point != labels[j].point)
          throw TamperError("decode: conflicting labels for element");
    }
  size_t n_in_per_block = gc->n_in / params.ell;
  std::vector<WireLabel> input;
  input.reserve(gc->n_in);
  for (uint32_t e = 0; e < params.ell; ++e) {
    auto it = chosen.find(e);
    if (it == chosen.end())
      throw CoverageError("decode: no labels for element");
    if (it->second->size() != n_in_per_block)
      throw TamperError("decode: label block width mismatch");
    input.insert(input.end(), it->second->begin(), it->second->end());
  }
  return eval_garbled(*gc, input);
}

}  // namespace feskl
