// SPDX-License-Identifier: Apache-2.0
#include "feskl/upgrades.hpp"

namespace feskl {

namespace {

// Bit t of a serialized label: kappa label bits then the point bit.
uint8_t label_bit(const WireLabel& l, size_t kappa, size_t t) {
  if (t < kappa) return (l.bits[t / 8] >> (t % 8)) & 1u;
  return l.point & 1u;
}

void append_label_bits(BitVec& out, const WireLabel& l, size_t kappa) {
  for (size_t t = 0; t <= kappa; ++t) out.push_back(label_bit(l, kappa, t));
}

WireLabel parse_label_bits(const BitVec& bits, size_t pos, size_t kappa) {
  WireLabel l;
  l.bits = bits_to_bytes(BitVec(bits.begin() + pos, bits.begin() + pos + kappa));
  l.point = bits[pos + kappa];
  return l;
}

uint64_t bits_to_u64(const BitVec& bits) {
  uint64_t v = 0;
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) v |= uint64_t(1) << i;
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Single-ciphertext SKFE.

size_t one_ct_msk_bits(const CircuitBudget& budget, size_t kappa_bits) {
  return budget.encoding_bits() * 2 * (kappa_bits + 1);
}

size_t one_ct_key_bits(const CircuitBudget& budget, size_t kappa_bits) {
  return budget.encoding_bits() * (kappa_bits + 1);
}

OneCtCiphertext OneCtSkfe::enc(const BitVec& x, Rng& rng) {
  if (used_) throw QuotaError("one_ct: second encryption on a 1ct instance");
  if (x.size() != budget_.n_in) throw ShapeError("one_ct: plaintext length");
  used_ = true;
  Circuit u = universal_circuit(budget_);
  GarbleResult gr = garble(u, kappa_bits_, rng);
  size_t l = budget_.encoding_bits();
  enc_labels_.assign(gr.input_labels.begin(), gr.input_labels.begin() + l);
  OneCtCiphertext ct;
  ct.gc = std::move(gr.gc);
  for (size_t i = 0; i < x.size(); ++i)
    ct.x_labels.push_back(gr.input_labels[l + i].select(x[i]));
  return ct;
}

BitVec OneCtSkfe::msk_bits() const {
  if (!used_) throw Error("one_ct: master key fixed only after enc");
  BitVec out;
  out.reserve(one_ct_msk_bits(budget_, kappa_bits_));
  for (const InputLabelPair& p : enc_labels_) {
    append_label_bits(out, p.l0, kappa_bits_);
    append_label_bits(out, p.l1, kappa_bits_);
  }
  return out;
}

BitVec OneCtSkfe::kg(const Circuit& f) const {
  if (!budget_.fits(f)) throw BudgetError("one_ct: function out of budget");
  return one_ct_kg_bits(msk_bits(), encode_circuit(f, budget_), kappa_bits_);
}

BitVec one_ct_kg_bits(const BitVec& msk_bits, const BitVec& encoding,
                      size_t kappa_bits) {
  size_t pair_bits = 2 * (kappa_bits + 1);
  if (msk_bits.size() != encoding.size() * pair_bits)
    throw ShapeError("one_ct_kg: master key width mismatch");
  BitVec out;
  out.reserve(encoding.size() * (kappa_bits + 1));
  for (size_t j = 0; j < encoding.size(); ++j) {
    size_t base = j * pair_bits + size_t(encoding[j]) * (kappa_bits + 1);
    out.insert(out.end(), msk_bits.begin() + base,
               msk_bits.begin() + base + kappa_bits + 1);
  }
  return out;
}

BitVec one_ct_dec(const BitVec& sk_bits, const OneCtCiphertext& ct,
                  const CircuitBudget& budget, size_t kappa_bits) {
  size_t l = budget.encoding_bits();
  if (sk_bits.size() != l * (kappa_bits + 1))
    throw ShapeError("one_ct_dec: key width mismatch");
  std::vector<WireLabel> labels;
  labels.reserve(l + ct.x_labels.size());
  for (size_t j = 0; j < l; ++j)
    labels.push_back(parse_label_bits(sk_bits, j * (kappa_bits + 1), kappa_bits));
  labels.insert(labels.end(), ct.x_labels.begin(), ct.x_labels.end());
  return eval_garbled(ct.gc, labels);
}

// ---------------------------------------------------------------------------
// Adaptive wrap.

size_t ada_payload_bits(const AdaConfig& cfg) {
  return one_ct_msk_bits(cfg.budget, cfg.one_ct_kappa) + cfg.lambda_k +
         cfg.lambda_ske + 1;
}

BitVec ada_payload(const AdaConfig& cfg, const BitVec& msk_bits,
                   const BitVec& k, const BitVec& k_ske, uint8_t beta) {
  if (msk_bits.size() != one_ct_msk_bits(cfg.budget, cfg.one_ct_kappa) ||
      k.size() != cfg.lambda_k || k_ske.size() != cfg.lambda_ske)
    throw ShapeError("ada_payload: slot width mismatch");
  BitVec p = msk_bits;
  p.insert(p.end(), k.begin(), k.end());
  p.insert(p.end(), k_ske.begin(), k_ske.end());
  p.push_back(beta & 1u);
  return p;
}

Circuit ada_g_circuit(const AdaConfig& cfg, const Circuit& f,
                      const BitVec& ct_ske) {
  size_t kappa = cfg.one_ct_kappa;
  size_t out_bits = one_ct_key_bits(cfg.budget, kappa);
  if (ct_ske.size() != out_bits)
    throw ShapeError("ada_g_circuit: trojan slot width mismatch");
  BitVec encoding = encode_circuit(f, cfg.budget);
  size_t pm = one_ct_msk_bits(cfg.budget, kappa);
  uint32_t kske_base = uint32_t(pm + cfg.lambda_k);
  uint32_t beta_wire = uint32_t(pm + cfg.lambda_k + cfg.lambda_ske);
  CircuitBuilder b(uint32_t(ada_payload_bits(cfg)));
  std::vector<uint32_t> outputs;
  outputs.reserve(out_bits);
  for (size_t t = 0; t < out_bits; ++t) {
    size_t j = t / (kappa + 1);
    size_t r = t % (kappa + 1);
    uint32_t honest =
        uint32_t(j * 2 * (kappa + 1) + size_t(encoding[j]) * (kappa + 1) + r);
    uint32_t k_wire = kske_base + uint32_t(t % cfg.lambda_ske);
    uint32_t trojan = ct_ske[t] ? b.not_(k_wire) : k_wire;
    outputs.push_back(b.mux(beta_wire, trojan, honest));
  }
  return b.finish(outputs);
}

AdaMsk ada_setup(const AdaConfig& cfg, size_t q, Rng& rng) {
  AdaMsk msk;
  msk.cfg = cfg;
  size_t out_bits = one_ct_key_bits(cfg.budget, cfg.one_ct_kappa);
  LeasingConfig sel = cfg.sel;
  sel.skfe.budget.n_in = uint32_t(ada_payload_bits(cfg));
  sel.skfe.budget.n_out = uint32_t(out_bits);
  sel.skfe.budget.n_gates_max = uint32_t(out_bits * 6 + 64);
  msk.cfg.sel = sel;
  msk.sel = skl_setup(sel, q, rng);
  return msk;
}

std::pair<AdaKey, AdaVk> ada_kg(AdaMsk& msk, const Circuit& f, uint64_t n,
                                QStore& store, Rng& rng) {
  if (!msk.cfg.budget.fits(f)) throw BudgetError("ada_kg: function out of budget");
  AdaKey key;
  key.tau = rng.bits(msk.cfg.ell2);
  key.ct_ske = rng.bits(one_ct_key_bits(msk.cfg.budget, msk.cfg.one_ct_kappa));
  Circuit g = ada_g_circuit(msk.cfg, f, key.ct_ske);
  auto [sk, vk] = skl_kg(msk.sel, g, n, store, rng);
  key.sel_key = std::move(sk);
  return {std::move(key), std::move(vk)};
}

AdaCiphertext ada_enc(AdaMsk& msk, const BitVec& x, Rng& rng) {
  OneCtSkfe one_ct(msk.cfg.budget, msk.cfg.one_ct_kappa);
  AdaCiphertext ct;
  ct.oct = one_ct.enc(x, rng);
  BitVec payload =
      ada_payload(msk.cfg, one_ct.msk_bits(), BitVec(msk.cfg.lambda_k, 0),
                  BitVec(msk.cfg.lambda_ske, 0), 0);
  ct.sct = skl_enc(msk.sel, payload, rng);
  return ct;
}

BitVec ada_dec(const AdaKey& key, const AdaCiphertext& ct, QStore& store) {
  BitVec sk_bits = skl_dec(key.sel_key, ct.sct, store);
  // The ciphertext carries the budget implicitly via the garbled interpreter;
  // sk width determines kappa from the encoding length.
  size_t l = (ct.oct.gc.n_in > ct.oct.x_labels.size())
                 ? ct.oct.gc.n_in - ct.oct.x_labels.size()
                 : 0;
  if (l == 0 || sk_bits.size() % l != 0)
    throw ShapeError("ada_dec: key width inconsistent with ciphertext");
  size_t kappa = sk_bits.size() / l - 1;
  std::vector<WireLabel> labels;
  labels.reserve(ct.oct.gc.n_in);
  for (size_t j = 0; j < l; ++j)
    labels.push_back(parse_label_bits(sk_bits, j * (kappa + 1), kappa));
  labels.insert(labels.end(), ct.oct.x_labels.begin(), ct.oct.x_labels.end());
  return eval_garbled(ct.oct.gc, labels);
}

AdaCert ada_cert(const AdaKey& key, QStore& store) {
  return skl_cert(key.sel_key, store);
}

bool ada_vrfy(const AdaVk& vk, const AdaCert& cert) {
  return skl_vrfy(vk, cert);
}

BitVec trojan_branch_test(const AdaConfig& cfg, const Circuit& f,
                          const BitVec& k_ske, const BitVec& target) {
  BitVec ct_ske = otp_cyclic(k_ske, target);
  Circuit g = ada_g_circuit(cfg, f, ct_ske);
  size_t pm = one_ct_msk_bits(cfg.budget, cfg.one_ct_kappa);
  BitVec payload =
      ada_payload(cfg, BitVec(pm, 0), BitVec(cfg.lambda_k, 0), k_ske, 1);
  return eval(g, payload);
}

// ---------------------------------------------------------------------------
// Simulation wrap.

size_t sim_payload_bits(const SimConfig& cfg) {
  return cfg.budget.n_in + cfg.lambda_ske +
         cfg.q_pre * (cfg.ell2 + cfg.budget.n_out) + 1;
}

BitVec sim_payload(const SimConfig& cfg, const BitVec& x, const BitVec& k_ske,
                   const std::vector<std::pair<BitVec, BitVec>>& slots,
                   uint8_t beta) {
  if (x.size() != cfg.budget.n_in || k_ske.size() != cfg.lambda_ske)
    throw ShapeError("sim_payload: slot width mismatch");
  if (slots.size() > cfg.q_pre)
    throw QuotaError("sim_payload: too many programmed slots");
  BitVec p = x;
  p.insert(p.end(), k_ske.begin(), k_ske.end());
  for (size_t i = 0; i < cfg.q_pre; ++i) {
    if (i < slots.size()) {
      const auto& [tau, y] = slots[i];
      if (tau.size() != cfg.ell2 || y.size() != cfg.budget.n_out)
        throw ShapeError("sim_payload: programmed slot width mismatch");
      p.insert(p.end(), tau.begin(), tau.end());
      p.insert(p.end(), y.begin(), y.end());
    } else {
      p.insert(p.end(), cfg.ell2 + cfg.budget.n_out, 0);
    }
  }
  p.push_back(beta & 1u);
  return p;
}

Circuit sim_t_circuit(const SimConfig& cfg, const Circuit& f,
                      const BitVec& ct_ske, const BitVec& tau) {
  if (cfg.ell2 > 64) throw ParameterError("sim_t_circuit: ell2 beyond 64 bits");
  if (ct_ske.size() != cfg.budget.n_out || tau.size() != cfg.ell2)
    throw ShapeError("sim_t_circuit: slot width mismatch");
  size_t n_in = cfg.budget.n_in;
  size_t n_out = cfg.budget.n_out;
  uint32_t kske_base = uint32_t(n_in);
  uint32_t slots_base = uint32_t(n_in + cfg.lambda_ske);
  uint32_t beta_wire = uint32_t(sim_payload_bits(cfg) - 1);
  CircuitBuilder b(uint32_t(sim_payload_bits(cfg)));
  std::vector<uint32_t> x_wires(n_in);
  for (size_t i = 0; i < n_in; ++i) x_wires[i] = uint32_t(i);
  std::vector<uint32_t> honest = b.inline_circuit(f, x_wires);
  // One tag comparator per slot, shared by every output bit.
  std::vector<uint32_t> match(cfg.q_pre);
  for (size_t i = 0; i < cfg.q_pre; ++i) {
    uint32_t base = slots_base + uint32_t(i * (cfg.ell2 + n_out));
    std::vector<uint32_t> tau_wires(cfg.ell2);
    for (size_t t = 0; t < cfg.ell2; ++t) tau_wires[t] = base + uint32_t(t);
    match[i] = b.eq_const(tau_wires, bits_to_u64(tau));
  }
  std::vector<uint32_t> outputs;
  outputs.reserve(n_out);
  for (size_t t = 0; t < n_out; ++t) {
    uint32_t k_wire = kske_base + uint32_t(t % cfg.lambda_ske);
    uint32_t res = ct_ske[t] ? b.not_(k_wire) : k_wire;
    for (size_t i = cfg.q_pre; i-- > 0;) {
      uint32_t y_wire = slots_base +
                        uint32_t(i * (cfg.ell2 + n_out) + cfg.ell2 + t);
      res = b.mux(match[i], y_wire, res);
    }
    outputs.push_back(b.mux(beta_wire, res, honest[t]));
  }
  return b.finish(outputs);
}

SimMsk sim_setup(const SimConfig& cfg, size_t q, Rng& rng) {
  SimMsk msk;
  msk.cfg = cfg;
  LeasingConfig sel = cfg.sel;
  sel.skfe.budget.n_in = uint32_t(sim_payload_bits(cfg));
  sel.skfe.budget.n_out = cfg.budget.n_out;
  sel.skfe.budget.n_gates_max =
      uint32_t(cfg.budget.n_gates_max + cfg.q_pre * (cfg.ell2 * 6 + 16) +
               cfg.budget.n_out * (3 * cfg.q_pre + 8) + 64);
  msk.cfg.sel = sel;
  msk.sel = skl_setup(sel, q, rng);
  return msk;
}

std::pair<SimKey, SimVk> sim_kg(SimMsk& msk, const Circuit& f, uint64_t n,
                                QStore& store, Rng& rng) {
  if (!msk.cfg.budget.fits(f)) throw BudgetError("sim_kg: function out of budget");
  SimKey key;
  key.tau = rng.bits(msk.cfg.ell2);
  BitVec ct_ske = rng.bits(msk.cfg.budget.n_out);  // uniform in honest mode
  Circuit t = sim_t_circuit(msk.cfg, f, ct_ske, key.tau);
  auto [sk, vk] = skl_kg(msk.sel, t, n, store, rng);
  key.sel_key = std::move(sk);
  return {std::move(key), std::move(vk)};
}

SimCiphertext sim_enc(SimMsk& msk, const BitVec& x, Rng& rng) {
  BitVec payload =
      sim_payload(msk.cfg, x, BitVec(msk.cfg.lambda_ske, 0), {}, 0);
  return skl_enc(msk.sel, payload, rng);
}

BitVec sim_dec(const SimKey& key, const SimCiphertext& ct, QStore& store) {
  return skl_dec(key.sel_key, ct, store);
}

SimCert sim_cert(const SimKey& key, QStore& store) {
  return skl_cert(key.sel_key, store);
}

bool sim_vrfy(const SimVk& vk, const SimCert& cert) {
  return skl_vrfy(vk, cert);
}

SimCiphertext s_enc(SimMsk& msk,
                    const std::vector<std::pair<BitVec, BitVec>>& queries,
                    SimulatorState& st, Rng& rng) {
  if (queries.size() > msk.cfg.q_pre)
    throw QuotaError("s_enc: more programmed keys than slots");
  st.k_ske = rng.bits(msk.cfg.lambda_ske);
  BitVec payload = sim_payload(msk.cfg, BitVec(msk.cfg.budget.n_in, 0),
                               st.k_ske, queries, 1);
  return skl_enc(msk.sel, payload, rng);
}

std::pair<SimKey, SimVk> s_kg(SimMsk& msk, const Circuit& f, const BitVec& y,
                              uint64_t n, SimulatorState& st, QStore& store,
                              Rng& rng) {
  if (y.size() != msk.cfg.budget.n_out)
    throw ShapeError("s_kg: output width mismatch");
  SimKey key;
  key.tau = rng.bits(msk.cfg.ell2);
  BitVec ct_ske = otp_cyclic(st.k_ske, y);
  Circuit t = sim_t_circuit(msk.cfg, f, ct_ske, key.tau);
  auto [sk, vk] = skl_kg(msk.sel, t, n, store, rng);
  key.sel_key = std::move(sk);
  return {std::move(key), std::move(vk)};
}

}  // namespace feskl
