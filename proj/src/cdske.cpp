// SPDX-License-Identifier: Apache-2.0
#include "feskl/cdske.hpp"

namespace feskl {

namespace {

size_t theta_weight(const BitVec& theta) {
  size_t w = 0;
  for (uint8_t b : theta) w += b;
  return w;
}

}  // namespace

Bytes OtcdKey::serialize() const {
  Bytes out;
  auto put32 = [&](uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(uint8_t(v >> (8 * i)));
  };
  put32(uint32_t(theta.size()));
  Bytes packed = bits_to_bytes(theta);
  out.insert(out.end(), packed.begin(), packed.end());
  put32(uint32_t(ext_seed.size()));
  out.insert(out.end(), ext_seed.begin(), ext_seed.end());
  return out;
}

OtcdKey OtcdKey::deserialize(const Bytes& data) {
  size_t pos = 0;
  auto get32 = [&]() {
    if (pos + 4 > data.size()) throw FormatError("otcd key: truncated");
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t(data[pos + i]) << (8 * i);
    pos += 4;
    return v;
  };
  OtcdKey k;
  uint32_t n_theta = get32();
  size_t theta_bytes = (n_theta + 7) / 8;
  if (pos + theta_bytes > data.size()) throw FormatError("otcd key: truncated");
  k.theta = bytes_to_bits(Bytes(data.begin() + pos, data.begin() + pos + theta_bytes),
                          n_theta);
  pos += theta_bytes;
  uint32_t n_seed = get32();
  if (pos + n_seed != data.size()) throw FormatError("otcd key: bad length");
  k.ext_seed.assign(data.begin() + pos, data.end());
  return k;
}

OtcdKey ot_keygen(const CdConfig& cfg, Rng& rng) {
  if (cfg.kq < 8) throw ParameterError("cdske: kq too small");
  OtcdKey k;
  // Both the mask side and the check side keep at least kq/4 positions.
  for (int tries = 0; tries < 10000; ++tries) {
    k.theta = rng.bits(cfg.kq);
    size_t w = theta_weight(k.theta);
    if (w >= cfg.kq / 4 && w <= 3 * cfg.kq / 4) break;
    if (tries == 9999) throw ParameterError("cdske: theta sampling failed");
  }
  k.ext_seed = rng.bytes(kKeyBytes);
  return k;
}

std::pair<CDVerificationKey, CDCiphertext> ot_enc(const OtcdKey& otk,
                                                  const BitVec& m,
                                                  QStore& store, Rng& rng) {
  size_t kq = otk.theta.size();
  BitVec a = rng.bits(kq);
  CDCiphertext ct;
  ct.qubits.reserve(kq);
  for (size_t j = 0; j < kq; ++j)
    ct.qubits.push_back(store.prepare(a[j], otk.theta[j]));
  BitVec pad;
  CDVerificationKey vk;
  vk.theta = otk.theta;
  for (size_t j = 0; j < kq; ++j) {
    if (otk.theta[j] == 0)
      pad.push_back(a[j]);
    else
      vk.a_check.push_back(a[j]);
  }
  BitVec mask = toeplitz_extract(otk.ext_seed, pad, m.size());
  ct.classical = xor_bits(m, mask);
  return {std::move(vk), std::move(ct)};
}

BitVec ot_dec(const OtcdKey& otk, const CDCiphertext& ct, QStore& store) {
  size_t kq = otk.theta.size();
  if (ct.qubits.size() != kq) throw ShapeError("ot_dec: qubit count mismatch");
  BitVec pad;
  for (size_t j = 0; j < kq; ++j) {
    uint8_t v = store.measure(ct.qubits[j], otk.theta[j]);
    if (otk.theta[j] == 0) pad.push_back(v);
  }
  BitVec mask = toeplitz_extract(otk.ext_seed, pad, ct.classical.size());
  return xor_bits(ct.classical, mask);
}

Certificate cd_del(const CDCiphertext& ct, QStore& store) {
  Certificate cert;
  cert.cert.reserve(ct.qubits.size());
  for (const QubitHandle& h : ct.qubits)
    cert.cert.push_back(store.measure(h, kBasisHadamard));
  return cert;
}

bool cd_vrfy(const CDVerificationKey& vk, const Certificate& cert) {
  if (cert.cert.size() != vk.theta.size())
    throw ShapeError("cd_vrfy: certificate length mismatch");
  size_t check_pos = 0;
  for (size_t j = 0; j < vk.theta.size(); ++j) {
    if (vk.theta[j] == 0) continue;
    if (cert.cert[j] != vk.a_check[check_pos]) return false;
    ++check_pos;
  }
  return true;
}

bool cert_canonical_eq(const CDVerificationKey& vk, const Certificate& c1,
                       const Certificate& c2) {
  if (c1.cert.size() != vk.theta.size() || c2.cert.size() != vk.theta.size())
    throw ShapeError("cert_canonical_eq: length mismatch");
  for (size_t j = 0; j < vk.theta.size(); ++j)
    if (vk.theta[j] == 1 && c1.cert[j] != c2.cert[j]) return false;
  return true;
}

Bytes r_keygen(Rng& rng) { return rng.key(); }

std::pair<CDVerificationKey, CDCiphertext> r_enc(const Bytes& sk,
                                                 const CdConfig& cfg,
                                                 const BitVec& m, QStore& store,
                                                 Rng& rng) {
  OtcdKey otk = ot_keygen(cfg, rng);
  auto [vk, ct] = ot_enc(otk, m, store, rng);
  ct.wrapped_key = ske_encrypt(sk, otk.serialize(), rng);
  return {std::move(vk), std::move(ct)};
}

BitVec r_dec(const Bytes& sk, const CDCiphertext& ct, QStore& store) {
  if (ct.wrapped_key.empty()) throw FormatError("r_dec: not a reusable ciphertext");
  OtcdKey otk = OtcdKey::deserialize(ske_decrypt(sk, ct.wrapped_key));
  return ot_dec(otk, ct, store);
}

CpaAdversaryFn cva_from_cpa_wrapper(size_t q_vrfy, CvaAdversaryFn inner,
                                    CertEq cert_eq, Rng& rng) {
  size_t i_star = 1 + rng.uniform(q_vrfy + 1);  // in [1, q_vrfy+1]
  (void)q_vrfy;
  return [inner, cert_eq, i_star](const VerifyOracle& one_shot) {
    std::vector<Certificate> classes;
    std::optional<Bytes> obtained_sk;
    size_t forwarded_class = 0;  // 1-based; 0 = none
    bool aborted = false;
    VerifyOracle oracle = [&](const Certificate& cert) -> std::optional<Bytes> {
      size_t cls = 0;
      for (size_t k = 0; k < classes.size(); ++k)
        if (cert_eq(classes[k], cert)) {
          cls = k + 1;
          break;
        }
      if (cls == 0) {
        classes.push_back(cert);
        cls = classes.size();
      }
      if (aborted) return std::nullopt;
      if (obtained_sk && cls == forwarded_class) return obtained_sk;
      if (cls < i_star) return std::nullopt;
      if (cls == i_star && forwarded_class == 0) {
        forwarded_class = cls;
        obtained_sk = one_shot(cert);
        if (!obtained_sk) aborted = true;
        return obtained_sk;
      }
      return std::nullopt;
    };
    return inner(oracle);
  };
}

}  // namespace feskl
