// SPDX-License-Identifier: Apache-2.0
#include "feskl/skfe.hpp"

namespace feskl {

namespace {

void put32(Bytes& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(uint8_t(v >> (8 * i)));
}

uint32_t get32(const Bytes& data, size_t& pos) {
  if (pos + 4 > data.size()) throw FormatError("skfe key: truncated");
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= uint32_t(data[pos + i]) << (8 * i);
  pos += 4;
  return v;
}

Bytes serialize_label_bytes(const WireLabel& l) {
  Bytes out = l.bits;
  out.push_back(l.point);
  return out;
}

WireLabel parse_label_bytes(const Bytes& b, size_t kappa_bytes) {
  if (b.size() != kappa_bytes + 1) throw AuthError("skfe: bad label length");
  WireLabel l;
  l.bits.assign(b.begin(), b.begin() + kappa_bytes);
  l.point = b[kappa_bytes] & 1u;
  return l;
}

}  // namespace

SkfeMasterKey SkfeMasterKey::setup(const SkfeConfig& cfg, size_t q, Rng& rng) {
  if (q < 1) throw ParameterError("skfe: collusion bound must be >= 1");
  SkfeMasterKey msk;
  msk.cfg_ = cfg;
  msk.q_ = q;
  msk.seed_ = rng.bytes(32);
  return msk;
}

SkfeMasterKey SkfeMasterKey::restore(const SkfeConfig& cfg, size_t q,
                                     size_t counter, Bytes seed) {
  if (seed.size() != 32) throw FormatError("skfe restore: bad seed length");
  SkfeMasterKey msk;
  msk.cfg_ = cfg;
  msk.q_ = q;
  msk.counter_ = counter;
  msk.seed_ = std::move(seed);
  return msk;
}

Bytes SkfeMasterKey::sub_bit_key(size_t slot, size_t bit_pos,
                                 uint8_t value) const {
  Bytes idx;
  put32(idx, uint32_t(slot));
  put32(idx, uint32_t(bit_pos));
  idx.push_back(value);
  return prf(seed_, "skfe-bitkey", idx, kKeyBytes);
}

Bytes SkfeMasterKey::ref_data_key() const {
  return prf(seed_, "skfe-ref-datakey", {}, kKeyBytes);
}

SkfeFunctionKey SkfeMasterKey::keygen(const Circuit& f) {
  auto fp = std::make_shared<const Circuit>(f);
  Bytes digest;
  if (cfg_.backend == SkfeBackend::Reference)
    digest = sha256(circuit_to_bytes(*fp));
  return keygen(std::move(fp), digest);
}

SkfeFunctionKey SkfeMasterKey::keygen(std::shared_ptr<const Circuit> f,
                                      const Bytes& f_digest) {
  if (counter_ >= q_) throw QuotaError("skfe: collusion bound exhausted");
  if (!cfg_.budget.fits(*f)) throw BudgetError("skfe: function out of budget");
  SkfeFunctionKey sk;
  sk.backend = cfg_.backend;
  sk.slot = uint32_t(counter_++);
  if (cfg_.backend == SkfeBackend::Crypto) {
    sk.encoding = encode_circuit(*f, cfg_.budget);
    sk.bit_keys.reserve(sk.encoding.size());
    for (size_t j = 0; j < sk.encoding.size(); ++j)
      sk.bit_keys.push_back(sub_bit_key(sk.slot, j, sk.encoding[j]));
  } else {
    if (f_digest.size() != 32)
      throw FormatError("skfe keygen: bad function digest");
    sk.f_digest = f_digest;
    sk.f = std::move(f);
    sk.data_key = ref_data_key();
  }
  return sk;
}

SkfeCiphertext SkfeMasterKey::encrypt(const BitVec& x, Rng& rng) const {
  if (x.size() != cfg_.budget.n_in)
    throw ShapeError("skfe: plaintext length mismatch");
  SkfeCiphertext ct;
  ct.backend = cfg_.backend;
  if (cfg_.backend == SkfeBackend::Reference) {
    Bytes pt = bits_to_bytes(x);
    put32(pt, uint32_t(x.size()));
    Rng enc_rng = rng.split("skfe-ref-enc");
    ct.ref_ct = ske_encrypt(ref_data_key(), pt, enc_rng);
    return ct;
  }
  Circuit u = universal_circuit(cfg_.budget);
  size_t L = cfg_.budget.encoding_bits();
  for (size_t slot = 0; slot < q_; ++slot) {
    Rng grng = rng.split("skfe-garble-" + std::to_string(slot));
    GarbleResult gr = garble(u, cfg_.kappa_bits, grng);
    SkfeCiphertext::Payload p;
    p.gc = std::move(gr.gc);
    // Input wire order of U: L encoding wires, then the n_in x wires.
    for (size_t i = 0; i < x.size(); ++i)
      p.x_labels.push_back(gr.input_labels[L + i].select(x[i]));
    p.label_cts.resize(L);
    Rng crng = rng.split("skfe-labelenc-" + std::to_string(slot));
    for (size_t j = 0; j < L; ++j)
      for (uint8_t v = 0; v < 2; ++v)
        p.label_cts[j][v] =
            ske_encrypt(sub_bit_key(slot, j, v),
                        serialize_label_bytes(gr.input_labels[j].select(v)),
                        crng);
    ct.payloads.push_back(std::move(p));
  }
  return ct;
}

BitVec skfe_decrypt(const SkfeFunctionKey& sk, const SkfeCiphertext& ct) {
  if (sk.backend != ct.backend)
    throw FormatError("skfe: backend mismatch between key and ciphertext");
  if (sk.backend == SkfeBackend::Reference) {
    if (!sk.f) throw FormatError("skfe: reference key missing its function");
    Bytes pt = ske_decrypt(sk.data_key, ct.ref_ct);
    if (pt.size() < 4) throw FormatError("skfe: truncated reference plaintext");
    size_t len_pos = pt.size() - 4;
    uint32_t n_bits = get32(pt, len_pos);
    pt.resize(pt.size() - 4);
    if ((n_bits + 7) / 8 != pt.size())
      throw FormatError("skfe: reference plaintext length mismatch");
    BitVec x = bytes_to_bits(pt, n_bits);
    return eval(*sk.f, x);
  }
  if (sk.slot >= ct.payloads.size())
    throw FormatError("skfe: no payload for key slot");
  const SkfeCiphertext::Payload& p = ct.payloads[sk.slot];
  if (sk.encoding.size() != p.label_cts.size())
    throw FormatError("skfe: encoding length mismatch");
  size_t kappa_bytes = p.gc.kappa_bits / 8;
  std::vector<WireLabel> labels;
  labels.reserve(sk.encoding.size() + p.x_labels.size());
  for (size_t j = 0; j < sk.encoding.size(); ++j) {
    Bytes raw = ske_decrypt(sk.bit_keys[j], p.label_cts[j][sk.encoding[j]]);
    labels.push_back(parse_label_bytes(raw, kappa_bytes));
  }
  labels.insert(labels.end(), p.x_labels.begin(), p.x_labels.end());
  return eval_garbled(p.gc, labels);
}

Bytes SkfeFunctionKey::to_bytes(bool include_function) const {
  Bytes out;
  out.push_back(uint8_t(backend));
  put32(out, slot);
  if (backend == SkfeBackend::Crypto) {
    put32(out, uint32_t(encoding.size()));
    Bytes packed = bits_to_bytes(encoding);
    out.insert(out.end(), packed.begin(), packed.end());
    for (const Bytes& k : bit_keys) {
      if (k.size() != kKeyBytes) throw FormatError("skfe key: bad bit key");
      out.insert(out.end(), k.begin(), k.end());
    }
  } else {
    if (data_key.size() != kKeyBytes || f_digest.size() != 32)
      throw FormatError("skfe key: malformed reference key");
    out.insert(out.end(), data_key.begin(), data_key.end());
    out.insert(out.end(), f_digest.begin(), f_digest.end());
    if (include_function) {
      if (!f) throw FormatError("skfe key: missing function");
      Bytes fb = circuit_to_bytes(*f);
      put32(out, uint32_t(fb.size()));
      out.insert(out.end(), fb.begin(), fb.end());
    } else {
      put32(out, 0);
    }
  }
  return out;
}

SkfeFunctionKey SkfeFunctionKey::from_bytes(const Bytes& data) {
  size_t pos = 0;
  if (data.empty()) throw FormatError("skfe key: empty");
  SkfeFunctionKey sk;
  sk.backend = SkfeBackend(data[pos++]);
  sk.slot = get32(data, pos);
  if (sk.backend == SkfeBackend::Crypto) {
    uint32_t n_bits = get32(data, pos);
    size_t packed_len = (n_bits + 7) / 8;
    if (pos + packed_len > data.size()) throw FormatError("skfe key: truncated");
    sk.encoding = bytes_to_bits(
        Bytes(data.begin() + pos, data.begin() + pos + packed_len), n_bits);
    pos += packed_len;
    for (uint32_t j = 0; j < n_bits; ++j) {
      if (pos + kKeyBytes > data.size()) throw FormatError("skfe key: truncated");
      sk.bit_keys.emplace_back(data.begin() + pos, data.begin() + pos + kKeyBytes);
      pos += kKeyBytes;
    }
  } else {
    if (pos + kKeyBytes + 32 > data.size()) throw FormatError("skfe key: truncated");
    sk.data_key.assign(data.begin() + pos, data.begin() + pos + kKeyBytes);
    pos += kKeyBytes;
    sk.f_digest.assign(data.begin() + pos, data.begin() + pos + 32);
    pos += 32;
    uint32_t f_len = get32(data, pos);
    if (f_len > 0) {
      if (pos + f_len > data.size()) throw FormatError("skfe key: truncated");
      Bytes fb(data.begin() + pos, data.begin() + pos + f_len);
      pos += f_len;
      sk.f = std::make_shared<Circuit>(circuit_from_bytes(fb));
    }
  }
  if (pos != data.size()) throw FormatError("skfe key: trailing data");
  return sk;
}

void SkfeFunctionKey::attach_function(std::shared_ptr<const Circuit> fn) {
  if (backend != SkfeBackend::Reference)
    throw FormatError("skfe key: attach_function on crypto key");
  if (sha256(circuit_to_bytes(*fn)) != f_digest)
    throw AuthError("skfe key: annex circuit digest mismatch");
  f = std::move(fn);
}

}  // namespace feskl
