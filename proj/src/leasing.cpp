// SPDX-License-Identifier: Apache-2.0
#include "feskl/leasing.hpp"

#include <cmath>

namespace feskl {

namespace {

Bytes index_bytes(uint64_t j) {
  Bytes b(8);
  for (int i = 0; i < 8; ++i) b[i] = uint8_t(j >> (8 * i));
  return b;
}

uint64_t index_space(uint64_t n, double p) {
  return uint64_t(std::ceil(double(n) / p));
}

}  // namespace

// ---------------------------------------------------------------------------
// Indexed layer.

IndexedMsk i_setup(const LeasingConfig& cfg, size_t q, uint64_t N, Rng& rng) {
  if (N < 1) throw ParameterError("i_setup: empty index space");
  IndexedMsk msk;
  msk.cfg = cfg;
  msk.q = q;
  msk.N = N;
  msk.K = rng.bytes(32);
  return msk;
}

SkfeMasterKey i_sub_msk(const IndexedMsk& msk, uint64_t j) {
  Rng rng(msk.K, "idx-skfe-" + std::to_string(j));
  return SkfeMasterKey::setup(msk.cfg.skfe, msk.q, rng);
}

Bytes i_cd_sk(const IndexedMsk& msk, uint64_t j) {
  return prf(msk.K, "idx-cdsk", index_bytes(j), kKeyBytes);
}

std::pair<LeasedKey, LeasedVk> i_kg(IndexedMsk& msk, const Circuit& f,
                                    QStore& store, Rng& rng) {
  if (msk.N > msk.cfg.kg_feasibility_max)
    throw FeasibilityError("i_kg: index space too large to enumerate");
  if (msk.kg_count >= msk.q) throw QuotaError("i_kg: collusion bound exhausted");
  size_t slot = msk.kg_count++;
  LeasedKey key;
  LeasedVk vk;
  key.N = msk.N;
  key.entries.reserve(msk.N);
  vk.vks.reserve(msk.N);
  auto shared_f = std::make_shared<const Circuit>(f);
  Bytes f_digest;
  if (msk.cfg.skfe.backend == SkfeBackend::Reference) {
    key.annex = shared_f;
    f_digest = sha256(circuit_to_bytes(f));
  }
  for (uint64_t j = 1; j <= msk.N; ++j) {
    SkfeMasterKey sub = i_sub_msk(msk, j);
    sub.set_counter(slot);
    SkfeFunctionKey fsk = sub.keygen(shared_f, f_digest);
    Bytes packed = fsk.to_bytes(false);
    auto [vk_j, qct_j] = r_enc(i_cd_sk(msk, j), msk.cfg.cd,
                               bytes_to_bits(packed, packed.size() * 8), store,
                               rng);
    vk.vks.push_back(std::move(vk_j));
    key.entries.push_back(std::move(qct_j));
  }
  return {std::move(key), std::move(vk)};
}

IndexedCiphertext i_enc(const IndexedMsk& msk, uint64_t j, const BitVec& x,
                        Rng& rng) {
  if (j < 1 || j > msk.N) throw ParameterError("i_enc: index out of range");
  IndexedCiphertext ct;
  ct.j = j;
  ct.ct = i_sub_msk(msk, j).encrypt(x, rng);
  ct.cd_sk = i_cd_sk(msk, j);
  return ct;
}

BitVec i_dec(const LeasedKey& fsk, const IndexedCiphertext& ct, QStore& store) {
  if (ct.j < 1 || ct.j > fsk.entries.size())
    throw ShapeError("i_dec: index outside leased key");
  BitVec bits = r_dec(ct.cd_sk, fsk.entries[ct.j - 1], store);
  SkfeFunctionKey sub = SkfeFunctionKey::from_bytes(bits_to_bytes(bits));
  if (sub.backend == SkfeBackend::Reference && !sub.f) {
    if (!fsk.annex) throw FormatError("i_dec: reference key missing annex");
    sub.attach_function(fsk.annex);
  }
  return skfe_decrypt(sub, ct.ct);
}

LeasedCert i_cert(const LeasedKey& fsk, QStore& store) {
  LeasedCert certs;
  certs.reserve(fsk.entries.size());
  for (const CDCiphertext& qct : fsk.entries) certs.push_back(cd_del(qct, store));
  return certs;
}

bool i_vrfy(const LeasedVk& vk, const LeasedCert& certs) {
  if (vk.vks.size() != certs.size())
    throw ShapeError("i_vrfy: certificate count mismatch");
  for (size_t j = 0; j < certs.size(); ++j)
    if (!cd_vrfy(vk.vks[j], certs[j])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Static-bound layer.

size_t sb_payload_bits(const LeasingConfig& cfg, const SetParams& params,
                       size_t party) {
  return params.sets.at(party).size() * cfg.skfe.budget.n_in + cfg.lambda_k + 1;
}

size_t sb_output_bits(const LeasingConfig& cfg, const SetParams& params,
                      size_t party) {
  return params.sets.at(party).size() * cfg.skfe.budget.n_in *
         (cfg.combiner_kappa + 1);
}

BitVec sb_payload(const LeasingConfig& cfg, const SetParams& params,
                  size_t party, const BitVec& pieces, const BitVec& k_slot,
                  uint8_t flag) {
  size_t s_bits = params.sets.at(party).size() * cfg.skfe.budget.n_in;
  if (pieces.size() != s_bits) throw ShapeError("sb_payload: bad piece width");
  if (k_slot.size() != cfg.lambda_k)
    throw ShapeError("sb_payload: bad key-slot width");
  BitVec payload = pieces;
  payload.insert(payload.end(), k_slot.begin(), k_slot.end());
  payload.push_back(flag & 1u);
  return payload;
}

namespace {

// Extracts bit t of a wire label as serialized by the F circuits: kappa
// label bits then the point bit.
uint8_t label_bit(const WireLabel& l, size_t kappa, size_t t) {
  if (t < kappa) return (l.bits[t / 8] >> (t % 8)) & 1u;
  return l.point & 1u;
}

// F[f_i, sct_i](s_i, K, b): if b = 1 output otp(K, sct_i), else the selected
// evaluation labels of party i's pieces.
Circuit build_keyed_f(const LeasingConfig& cfg, const SetParams& params,
                      size_t party, const FunctionShare& fs,
                      const BitVec& sct) {
  size_t n_in_f = cfg.skfe.budget.n_in;
  size_t kappa = cfg.combiner_kappa;
  size_t s_bits = params.sets[party].size() * n_in_f;
  uint32_t b_wire = uint32_t(s_bits + cfg.lambda_k);
  CircuitBuilder b(uint32_t(s_bits + cfg.lambda_k + 1));
  std::vector<uint32_t> outputs;
  outputs.reserve(sct.size());
  size_t t_global = 0;
  for (size_t e_idx = 0; e_idx < params.sets[party].size(); ++e_idx) {
    uint32_t e = params.sets[party][e_idx];
    const auto& table = fs.label_tables.at(e);
    for (size_t j = 0; j < n_in_f; ++j) {
      uint32_t piece_wire = uint32_t(e_idx * n_in_f + j);
      const InputLabelPair& pair = table[j];
      for (size_t t = 0; t <= kappa; ++t, ++t_global) {
        uint8_t b0 = label_bit(pair.l0, kappa, t);
        uint8_t b1 = label_bit(pair.l1, kappa, t);
        uint32_t honest;
        if (b0 == b1)
          honest = b.const_bit(b0);
        else if (b1)
          honest = piece_wire;
        else
          honest = b.not_(piece_wire);
        uint32_t k_wire = uint32_t(s_bits + t_global % cfg.lambda_k);
        uint32_t trojan = sct[t_global] ? b.not_(k_wire) : k_wire;
        outputs.push_back(b.mux(b_wire, trojan, honest));
      }
    }
  }
  return b.finish(outputs);
}

}  // namespace

SbsklMsk sb_setup(const LeasingConfig& cfg, size_t q, uint64_t n, Rng& rng) {
  if (cfg.skfe.backend != SkfeBackend::Reference)
    throw ParameterError(
        "sb_setup: the static-bound layer requires the reference backend");
  if (cfg.combiner_kappa % 8 != 0)
    throw ParameterError("sb_setup: combiner kappa must be a multiple of 8");
  if (n < 1) throw ParameterError("sb_setup: availability bound must be >= 1");
  SbsklMsk msk;
  msk.cfg = cfg;
  msk.q = q;
  msk.n = n;
  msk.N = index_space(n, cfg.p);
  msk.params = set_gen(cfg.m, cfg.ell, cfg.p, cfg.d, rng);
  msk.K_ske = rng.bits(cfg.lambda_k);
  msk.subs.reserve(cfg.m);
  for (size_t i = 0; i < cfg.m; ++i) {
    LeasingConfig sub_cfg = cfg;
    size_t out_bits = sb_output_bits(cfg, msk.params, i);
    sub_cfg.skfe.budget.n_in = uint32_t(sb_payload_bits(cfg, msk.params, i));
    sub_cfg.skfe.budget.n_out = uint32_t(out_bits);
    sub_cfg.skfe.budget.n_gates_max = uint32_t(out_bits * 8 + 64);
    msk.subs.push_back(i_setup(sub_cfg, q, msk.N, rng));
  }
  return msk;
}

std::pair<SbsklLeasedKey, SbsklVk> sb_kg(SbsklMsk& msk, const Circuit& f,
                                         QStore& store, Rng& rng) {
  if (!msk.cfg.skfe.budget.fits(f))
    throw BudgetError("sb_kg: function out of budget");
  std::vector<FunctionShare> fshares =
      func_encode(msk.params, f, msk.cfg.combiner_kappa, rng);
  SbsklLeasedKey key;
  SbsklVk vk;
  key.params = msk.params;
  key.n_in_f = msk.cfg.skfe.budget.n_in;
  key.combiner_kappa = msk.cfg.combiner_kappa;
  key.combiner = fshares[0].gc;
  for (size_t i = 0; i < msk.subs.size(); ++i) {
    BitVec sct = otp_cyclic(
        msk.K_ske, BitVec(sb_output_bits(msk.cfg, msk.params, i), 0));
    Circuit f_i = build_keyed_f(msk.cfg, msk.params, i, fshares[i], sct);
    auto [lk, lvk] = i_kg(msk.subs[i], f_i, store, rng);
    key.subs.push_back(std::move(lk));
    vk.subs.push_back(std::move(lvk));
  }
  return {std::move(key), std::move(vk)};
}

SbsklCiphertext sb_enc(const SbsklMsk& msk, const BitVec& x, Rng& rng) {
  std::vector<InputShare> shares = inp_encode(msk.params, x, rng);
  SbsklCiphertext ct;
  ct.subs.reserve(msk.subs.size());
  BitVec zero_k(msk.cfg.lambda_k, 0);
  for (size_t i = 0; i < msk.subs.size(); ++i) {
    BitVec pieces;
    for (uint32_t e : msk.params.sets[i]) {
      const BitVec& piece = shares[i].pieces.at(e);
      pieces.insert(pieces.end(), piece.begin(), piece.end());
    }
    BitVec payload = sb_payload(msk.cfg, msk.params, i, pieces, zero_k, 0);
    uint64_t j = 1 + rng.uniform(msk.N);
    ct.subs.push_back(i_enc(msk.subs[i], j, payload, rng));
  }
  return ct;
}

BitVec sb_dec(const SbsklLeasedKey& fsk, const SbsklCiphertext& ct,
              QStore& store) {
  if (ct.subs.size() != fsk.subs.size())
    throw ShapeError("sb_dec: share count mismatch");
  size_t kappa = fsk.combiner_kappa;
  std::vector<ShareEvaluation> evals;
  evals.reserve(fsk.subs.size());
  for (size_t i = 0; i < fsk.subs.size(); ++i) {
    BitVec out = i_dec(fsk.subs[i], ct.subs[i], store);
    ShareEvaluation ev;
    ev.i = uint32_t(i);
    size_t pos = 0;
    for (uint32_t e : fsk.params.sets[i]) {
      auto& labels = ev.labels[e];
      for (size_t j = 0; j < fsk.n_in_f; ++j) {
        if (pos + kappa + 1 > out.size())
          throw ShapeError("sb_dec: truncated evaluation output");
        WireLabel l;
        l.bits = bits_to_bytes(
            BitVec(out.begin() + pos, out.begin() + pos + kappa));
        l.point = out[pos + kappa];
        pos += kappa + 1;
        labels.push_back(std::move(l));
      }
    }
    evals.push_back(std::move(ev));
  }
  evals[0].gc = fsk.combiner;
  return decode(fsk.params, evals);
}

SbsklCert sb_cert(const SbsklLeasedKey& fsk, QStore& store) {
  SbsklCert certs;
  certs.reserve(fsk.subs.size());
  for (const LeasedKey& lk : fsk.subs) certs.push_back(i_cert(lk, store));
  return certs;
}

bool sb_vrfy(const SbsklVk& vk, const SbsklCert& certs) {
  if (vk.subs.size() != certs.size())
    throw ShapeError("sb_vrfy: certificate count mismatch");
  for (size_t i = 0; i < certs.size(); ++i)
    if (!i_vrfy(vk.subs[i], certs[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Dynamic layer.

uint32_t skl_level_for(uint64_t n, uint32_t lambda_levels) {
  if (n < 1 || n > (uint64_t(1) << lambda_levels))
    throw ParameterError("skl: availability bound out of range");
  uint32_t k = 1;
  while ((uint64_t(1) << k) < n) ++k;
  return k;
}

SbsklMsk& SklMsk::level(uint32_t k) {
  auto it = levels.find(k);
  if (it != levels.end()) return it->second;
  Rng lrng(seed, "level-" + std::to_string(k));
  auto [pos, _] =
      levels.emplace(k, sb_setup(cfg, q, uint64_t(1) << k, lrng));
  return pos->second;
}

SklMsk skl_setup(const LeasingConfig& cfg, size_t q, Rng& rng) {
  if (cfg.skfe.backend != SkfeBackend::Reference)
    throw ParameterError(
        "skl_setup: the dynamic layer requires the reference backend");
  SklMsk msk;
  msk.cfg = cfg;
  msk.q = q;
  msk.seed = rng.bytes(32);
  return msk;
}

std::pair<SklLeasedKey, SklVk> skl_kg(SklMsk& msk, const Circuit& f, uint64_t n,
                                      QStore& store, Rng& rng) {
  uint32_t k = skl_level_for(n, msk.cfg.lambda_levels);
  auto [key, vk] = sb_kg(msk.level(k), f, store, rng);
  return {SklLeasedKey{k, std::move(key)}, SklVk{k, std::move(vk)}};
}

SklCiphertext skl_enc(SklMsk& msk, const BitVec& x, Rng& rng) {
  SklCiphertext ct;
  for (uint32_t k = 1; k <= msk.cfg.lambda_levels; ++k)
    ct.levels.emplace(k, sb_enc(msk.level(k), x, rng));
  return ct;
}

BitVec skl_dec(const SklLeasedKey& fsk, const SklCiphertext& ct, QStore& store) {
  auto it = ct.levels.find(fsk.k_prime);
  if (it == ct.levels.end())
    throw ShapeError("skl_dec: ciphertext missing the key's level");
  return sb_dec(fsk.key, it->second, store);
}

SklCert skl_cert(const SklLeasedKey& fsk, QStore& store) {
  return SklCert{fsk.k_prime, sb_cert(fsk.key, store)};
}

bool skl_vrfy(const SklVk& vk, const SklCert& cert) {
  if (vk.k_prime != cert.k_prime)
    throw ShapeError("skl_vrfy: level mismatch");
  return sb_vrfy(vk.vk, cert.certs);
}

}  // namespace feskl
