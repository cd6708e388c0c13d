// SPDX-License-Identifier: Apache-2.0
#include "feskl/games.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace feskl {

GameConfig default_game_config() {
  GameConfig cfg;
  LeasingConfig& sel = cfg.skl;
  sel.skfe.backend = SkfeBackend::Reference;
  sel.skfe.budget = CircuitBudget{4, 8, 1};
  sel.m = 3;
  sel.ell = 4;
  sel.p = 0.5;
  sel.d = 0.5;
  sel.combiner_kappa = 16;
  sel.lambda_k = 32;
  sel.lambda_levels = 4;

  cfg.ada.budget = CircuitBudget{3, 4, 1};
  cfg.ada.one_ct_kappa = 8;
  cfg.ada.ell2 = 16;
  cfg.ada.lambda_k = 16;
  cfg.ada.lambda_ske = 16;
  cfg.ada.sel = sel;
  cfg.ada.sel.lambda_levels = 2;

  cfg.sim.budget = CircuitBudget{3, 4, 1};
  cfg.sim.q_pre = 2;
  cfg.sim.ell2 = 16;
  cfg.sim.lambda_ske = 32;
  cfg.sim.sel = sel;
  cfg.sim.sel.lambda_levels = 2;
  return cfg;
}

// ---------------------------------------------------------------------------
// Reports.

std::pair<double, double> wilson95(size_t successes, size_t n) {
  if (n == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  double p = double(successes) / double(n);
  double z2n = z * z / double(n);
  double denom = 1.0 + z2n;
  double center = (p + z2n / 2.0) / denom;
  double half =
      z * std::sqrt(p * (1.0 - p) / double(n) + z2n / (4.0 * double(n))) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double AdvantageReport::advantage() const {
  double p0 = n_coin0 ? double(out1_coin0) / double(n_coin0) : 0.0;
  double p1 = n_coin1 ? double(out1_coin1) / double(n_coin1) : 0.0;
  return std::fabs(p1 - p0);
}

std::pair<double, double> AdvantageReport::advantage_interval() const {
  auto [l0, h0] = wilson95(out1_coin0, n_coin0);
  auto [l1, h1] = wilson95(out1_coin1, n_coin1);
  double lo = std::max(0.0, std::max(l1 - h0, l0 - h1));
  double hi = std::max(h1 - l0, h0 - l1);
  return {lo, std::max(lo, hi)};
}

std::string AdvantageReport::to_text() const {
  std::ostringstream os;
  auto [lo, hi] = advantage_interval();
  os << "experiment=" << experiment << " adversary=" << adversary
     << " trials=" << trials << "\n"
     << "  out1|coin0=" << out1_coin0 << "/" << n_coin0
     << " out1|coin1=" << out1_coin1 << "/" << n_coin1
     << " successes=" << successes << " zeroed=" << zeroed
     << " accepts=" << accepts << " violations=" << violations << "\n"
     << "  advantage=" << advantage() << " wilson95=[" << lo << "," << hi
     << "]\n";
  return os.str();
}

namespace {

// The distinguishing function used by every lessor game: AND of the first
// two input bits, padded to the configured input width.
Circuit and2_circuit(const CircuitBudget& budget) {
  CircuitBuilder b(budget.n_in);
  return b.finish({b.and_(0, 1)});
}

BitVec challenge_x(const CircuitBudget& budget, uint8_t coin) {
  BitVec x(budget.n_in, 0);
  if (coin) x[0] = x[1] = 1;
  return x;
}

LeasedKey clone_leased_key(const LeasedKey& key, QStore& store) {
  LeasedKey copy = key;
  for (CDCiphertext& qct : copy.entries)
    for (QubitHandle& h : qct.qubits) h = store.unsafe_clone(h);
  return copy;
}

// ---------------------------------------------------------------------------
// Classical-transcript decryption attempt: the KeepTranscript adversary kept
// every classical byte plus the deletion transcript, and tries to use the
// Hadamard outcomes as the computational pads they are not.

BitVec transcript_i_dec(const LeasedKey& fsk, const LeasedCert& certs,
                        const IndexedCiphertext& ct) {
  const CDCiphertext& qct = fsk.entries.at(ct.j - 1);
  OtcdKey otk = OtcdKey::deserialize(ske_decrypt(ct.cd_sk, qct.wrapped_key));
  const Certificate& cert = certs.at(ct.j - 1);
  BitVec pad;
  for (size_t t = 0; t < otk.theta.size(); ++t)
    if (otk.theta[t] == 0) pad.push_back(cert.cert[t]);
  BitVec mask = toeplitz_extract(otk.ext_seed, pad, qct.classical.size());
  SkfeFunctionKey sub =
      SkfeFunctionKey::from_bytes(bits_to_bytes(xor_bits(qct.classical, mask)));
  if (sub.backend == SkfeBackend::Reference && !sub.f) {
    if (!fsk.annex) throw FormatError("transcript: missing annex");
    sub.attach_function(fsk.annex);
  }
  return skfe_decrypt(sub, ct.ct);
}

BitVec transcript_sb_dec(const SbsklLeasedKey& fsk, const SbsklCert& certs,
                         const SbsklCiphertext& ct) {
  size_t kappa = fsk.combiner_kappa;
  std::vector<ShareEvaluation> evals;
  for (size_t i = 0; i < fsk.subs.size(); ++i) {
    BitVec out = transcript_i_dec(fsk.subs[i], certs.at(i), ct.subs.at(i));
    ShareEvaluation ev;
    ev.i = uint32_t(i);
    size_t pos = 0;
    for (uint32_t e : fsk.params.sets[i]) {
      auto& labels = ev.labels[e];
      for (size_t j = 0; j < fsk.n_in_f; ++j) {
        if (pos + kappa + 1 > out.size())
          throw ShapeError("transcript: truncated output");
        WireLabel l;
        l.bits =
            bits_to_bytes(BitVec(out.begin() + pos, out.begin() + pos + kappa));
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

BitVec transcript_skl_dec(const SklLeasedKey& fsk, const SklCert& certs,
                          const SklCiphertext& ct) {
  return transcript_sb_dec(fsk.key, certs.certs, ct.levels.at(fsk.k_prime));
}

// ---------------------------------------------------------------------------
// sel-lessor (dynamic stack) and sel-s-lessor (indexed layer).

enum class LessorAdv { Honest, KeepKey, KeepTranscript, UnsafeClone };

LessorAdv lessor_adv(const std::string& name) {
  if (name == "HonestLessee") return LessorAdv::Honest;
  if (name == "KeepKey") return LessorAdv::KeepKey;
  if (name == "KeepTranscript") return LessorAdv::KeepTranscript;
  if (name == "UnsafeClone") return LessorAdv::UnsafeClone;
  throw ParameterError("unknown lessor adversary: " + name);
}

AdvantageReport run_sel_lessor(const GameConfig& cfg, const std::string& adv_name,
                               size_t trials, uint64_t seed) {
  LessorAdv adv = lessor_adv(adv_name);
  AdvantageReport rep;
  rep.experiment = "sel-lessor";
  rep.adversary = adv_name;
  rep.trials = trials;
  Rng root(seed);
  Circuit f = and2_circuit(cfg.skl.skfe.budget);
  for (size_t t = 0; t < trials; ++t) {
    Rng rng = root.split("trial-" + std::to_string(t));
    QStore store(seed ^ (t * 0x9e3779b97f4a7c15ull),
                 adv == LessorAdv::UnsafeClone);
    SklMsk msk = skl_setup(cfg.skl, 1, rng);
    auto [key, vk] = skl_kg(msk, f, cfg.n_bound, store, rng);

    bool verified = false;  // the L_KG mark for the distinguishing key
    size_t enc_queries = 0;
    SklLeasedKey clone;  // UnsafeClone's retained copy
    SklCert cert;        // KeepTranscript's retained transcript
    bool have_cert = false;
    if (adv == LessorAdv::UnsafeClone) clone = clone_skl_key(key, store);
    if (adv != LessorAdv::KeepKey) {
      cert = skl_cert(key, store);
      have_cert = true;
      if (skl_vrfy(vk, cert) && enc_queries < cfg.n_bound) verified = true;
    }

    uint8_t coin = root.bit();
    SklCiphertext ct = skl_enc(msk, challenge_x(cfg.skl.skfe.budget, coin), rng);

    uint8_t guess = 0;
    switch (adv) {
      case LessorAdv::Honest:
        guess = root.bit();
        break;
      case LessorAdv::KeepKey:
        try {
          BitVec y = skl_dec(key, ct, store);
          guess = y.at(0);
        } catch (const Error&) {
          guess = root.bit();
        }
        break;
      case LessorAdv::KeepTranscript:
        try {
          BitVec y = transcript_skl_dec(key, cert, ct);
          guess = y.at(0);
        } catch (const Error&) {
          guess = root.bit();
        }
        break;
      case LessorAdv::UnsafeClone:
        try {
          BitVec y = skl_dec(clone, ct, store);
          guess = y.at(0);
        } catch (const Error&) {
          guess = root.bit();
        }
        break;
    }
    (void)have_cert;

    uint8_t out = verified ? guess : 0;
    if (!verified) ++rep.zeroed;
    if (coin) {
      ++rep.n_coin1;
      rep.out1_coin1 += out;
    } else {
      ++rep.n_coin0;
      rep.out1_coin0 += out;
    }
    rep.successes += (out == coin);
  }
  return rep;
}

AdvantageReport run_sel_s_lessor(const GameConfig& cfg,
                                 const std::string& adv_name, size_t trials,
                                 uint64_t seed) {
  LessorAdv adv = lessor_adv(adv_name);
  if (adv == LessorAdv::KeepTranscript)
    throw ParameterError("sel-s-lessor: KeepTranscript runs on sel-lessor");
  AdvantageReport rep;
  rep.experiment = "sel-s-lessor";
  rep.adversary = adv_name;
  rep.trials = trials;
  Rng root(seed);
  Circuit f = and2_circuit(cfg.skl.skfe.budget);
  const uint64_t n_idx = 4;
  for (size_t t = 0; t < trials; ++t) {
    Rng rng = root.split("trial-" + std::to_string(t));
    QStore store(seed ^ (t * 0x9e3779b97f4a7c15ull),
                 adv == LessorAdv::UnsafeClone);
    IndexedMsk msk = i_setup(cfg.skl, 1, n_idx, rng);
    auto [key, vk] = i_kg(msk, f, store, rng);

    bool verified = false;
    LeasedKey clone;
    if (adv == LessorAdv::UnsafeClone) clone = clone_leased_key(key, store);
    if (adv != LessorAdv::KeepKey)
      verified = i_vrfy(vk, i_cert(key, store));

    uint8_t coin = root.bit();
    uint64_t j = 1 + rng.uniform(n_idx);
    IndexedCiphertext ct =
        i_enc(msk, j, challenge_x(cfg.skl.skfe.budget, coin), rng);

    uint8_t guess = 0;
    if (adv == LessorAdv::Honest) {
      guess = root.bit();
    } else {
      const LeasedKey& use = (adv == LessorAdv::UnsafeClone) ? clone : key;
      try {
        guess = i_dec(use, ct, store).at(0);
      } catch (const Error&) {
        guess = root.bit();
      }
    }

    uint8_t out = verified ? guess : 0;
    if (!verified) ++rep.zeroed;
    if (coin) {
      ++rep.n_coin1;
      rep.out1_coin1 += out;
    } else {
      ++rep.n_coin0;
      rep.out1_coin0 += out;
    }
    rep.successes += (out == coin);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// ind-cpa-cd: one-time CD-SKE indistinguishability smoke game. The coin
// selects one of two fixed one-bit messages; honest deletion leaves only a
// random guess, and BasisGuesser demonstrates that measuring in the wrong
// basis forfeits the certificate.

AdvantageReport run_ind_cpa_cd(const GameConfig& cfg, const std::string& adv_name,
                               size_t trials, uint64_t seed) {
  bool basis_guesser = (adv_name == "BasisGuesser");
  if (!basis_guesser && adv_name != "HonestDeleter")
    throw ParameterError("ind-cpa-cd: unknown adversary " + adv_name);
  AdvantageReport rep;
  rep.experiment = "ind-cpa-cd";
  rep.adversary = adv_name;
  rep.trials = trials;
  Rng root(seed);
  for (size_t t = 0; t < trials; ++t) {
    Rng rng = root.split("trial-" + std::to_string(t));
    QStore store(seed + t);
    OtcdKey otk = ot_keygen(cfg.skl.cd, rng);
    uint8_t coin = root.bit();
    auto [vk, ct] = ot_enc(otk, BitVec{coin}, store, rng);

    Certificate cert;
    if (basis_guesser) {
      // Measure everything computationally first, then report that
      // transcript as if it were the Hadamard one.
      for (const QubitHandle& h : ct.qubits)
        cert.cert.push_back(store.measure(h, kBasisComputational));
    } else {
      cert = cd_del(ct, store);
    }
    bool accepted = cd_vrfy(vk, cert);
    rep.accepts += accepted;

    uint8_t out = accepted ? root.bit() : 0;
    if (!accepted) ++rep.zeroed;
    if (coin) {
      ++rep.n_coin1;
      rep.out1_coin1 += out;
    } else {
      ++rep.n_coin0;
      rep.out1_coin0 += out;
    }
    rep.successes += (out == coin);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// ind-cva-cd: the verification-oracle game driven by a plugged perfect
// distinguisher. The inner adversary learns the coin exactly when one of its
// certificate queries is accepted (the oracle then releases the coin as the
// "secret key"). Run directly it wins always; run through the reduction
// wrapper its advantage drops to inner/(q_vrfy+1).

AdvantageReport run_ind_cva_cd(const GameConfig& cfg, const std::string& adv_name,
                               size_t trials, uint64_t seed) {
  bool wrapped = (adv_name == "PluggedInner");
  if (!wrapped && adv_name != "PluggedInnerDirect")
    throw ParameterError("ind-cva-cd: unknown adversary " + adv_name);
  const size_t q_vrfy = 3;
  AdvantageReport rep;
  rep.experiment = "ind-cva-cd";
  rep.adversary = adv_name;
  rep.trials = trials;
  Rng root(seed);
  for (size_t t = 0; t < trials; ++t) {
    Rng rng = root.split("trial-" + std::to_string(t));
    QStore store(seed + t);
    OtcdKey otk = ot_keygen(cfg.skl.cd, rng);
    uint8_t coin = root.bit();
    auto [vk, ct] = ot_enc(otk, BitVec{coin}, store, rng);
    Certificate honest = cd_del(ct, store);

    // q_vrfy+1 distinct certificate classes, the honest one at a uniform
    // position; the decoys flip distinct checked bits.
    std::vector<Certificate> candidates(q_vrfy + 1, honest);
    size_t v = rng.uniform(q_vrfy + 1);
    std::vector<size_t> checked;
    for (size_t pos = 0; pos < vk.theta.size() && checked.size() <= q_vrfy;
         ++pos)
      if (vk.theta[pos]) checked.push_back(pos);
    size_t decoy = 0;
    for (size_t c = 0; c < candidates.size(); ++c) {
      if (c == v) continue;
      candidates[c].cert[checked.at(decoy++)] ^= 1;
    }

    Rng guess_rng = rng.split("guess");
    CvaAdversaryFn inner = [&](const VerifyOracle& oracle) -> uint8_t {
      for (const Certificate& cand : candidates) {
        std::optional<Bytes> sk = oracle(cand);
        if (sk && !sk->empty()) return (*sk)[0] & 1u;
      }
      return guess_rng.bit();
    };

    VerifyOracle challenger = [&](const Certificate& cand)
        -> std::optional<Bytes> {
      if (cd_vrfy(vk, cand)) return Bytes{coin};
      return std::nullopt;
    };

    uint8_t out;
    if (wrapped) {
      Rng wrng = rng.split("wrapper");
      CpaAdversaryFn cpa = cva_from_cpa_wrapper(
          q_vrfy, inner,
          [&vk](const Certificate& a, const Certificate& b) {
            return cert_canonical_eq(vk, a, b);
          },
          wrng);
      size_t one_shot_uses = 0;
      VerifyOracle one_shot = [&](const Certificate& cand)
          -> std::optional<Bytes> {
        if (++one_shot_uses > 1)
          throw Error("cva wrapper queried the one-shot oracle twice");
        return challenger(cand);
      };
      out = cpa(one_shot);
    } else {
      out = inner(challenger);
    }

    if (coin) {
      ++rep.n_coin1;
      rep.out1_coin1 += out;
    } else {
      ++rep.n_coin0;
      rep.out1_coin0 += out;
    }
    rep.successes += (out == coin);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// sethss-sel-ind: selective indistinguishability of the input sharing. The
// coalition sees the shares of the corrupted parties; if it happens to cover
// every element it can XOR the pieces back together, which is exactly what
// the unmarked-element property makes unlikely.

AdvantageReport run_sethss_sel_ind(const GameConfig& cfg,
                                   const std::string& adv_name, size_t trials,
                                   uint64_t seed) {
  bool coalition = (adv_name == "CoalitionXor");
  if (!coalition && adv_name != "Honest")
    throw ParameterError("sethss-sel-ind: unknown adversary " + adv_name);
  AdvantageReport rep;
  rep.experiment = "sethss-sel-ind";
  rep.adversary = adv_name;
  rep.trials = trials;
  Rng root(seed);
  uint32_t n_in = cfg.skl.skfe.budget.n_in;
  // A corruption rate matching the unmarked-element regime.
  const double p_corrupt = 0.125;
  for (size_t t = 0; t < trials; ++t) {
    Rng rng = root.split("trial-" + std::to_string(t));
    SetParams params = set_gen(cfg.skl.m, cfg.skl.ell, p_corrupt, cfg.skl.d, rng);
    uint8_t coin = root.bit();
    BitVec x0(n_in, 0), x1(n_in, 1);
    std::vector<InputShare> shares = inp_encode(params, coin ? x1 : x0, rng);

    std::vector<size_t> corrupted;
    for (size_t i = 0; i < params.m(); ++i)
      if (rng.uniform(1000) < uint64_t(p_corrupt * 1000)) corrupted.push_back(i);

    uint8_t out = root.bit();
    if (coalition) {
      std::map<uint32_t, BitVec> pieces;
      for (size_t i : corrupted)
        for (const auto& [e, piece] : shares[i].pieces) pieces[e] = piece;
      if (pieces.size() == params.ell) {
        BitVec acc(n_in, 0);
        for (const auto& [e, piece] : pieces) acc = xor_bits(acc, piece);
        if (acc == x0)
          out = 0;
        else if (acc == x1)
          out = 1;
      }
    }

    if (coin) {
      ++rep.n_coin1;
      rep.out1_coin1 += out;
    } else {
      ++rep.n_coin0;
      rep.out1_coin0 += out;
    }
    rep.successes += (out == coin);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// ada-lessor: the lessor game over the adaptive wrap.

AdvantageReport run_ada_lessor(const GameConfig& cfg, const std::string& adv_name,
                               size_t trials, uint64_t seed) {
  bool keep_key = (adv_name == "KeepKey");
  if (!keep_key && adv_name != "HonestLessee")
    throw ParameterError("ada-lessor: unknown adversary " + adv_name);
  AdvantageReport rep;
  rep.experiment = "ada-lessor";
  rep.adversary = adv_name;
  rep.trials = trials;
  Rng root(seed);
  Circuit f = and2_circuit(cfg.ada.budget);
  for (size_t t = 0; t < trials; ++t) {
    Rng rng = root.split("trial-" + std::to_string(t));
    QStore store(seed + t);
    AdaMsk msk = ada_setup(cfg.ada, 1, rng);
    auto [key, vk] = ada_kg(msk, f, cfg.n_bound, store, rng);

    bool verified = false;
    if (!keep_key) verified = ada_vrfy(vk, ada_cert(key, store));

    uint8_t coin = root.bit();
    AdaCiphertext ct = ada_enc(msk, challenge_x(cfg.ada.budget, coin), rng);

    uint8_t guess;
    if (keep_key) {
      try {
        guess = ada_dec(key, ct, store).at(0);
      } catch (const Error&) {
        guess = root.bit();
      }
    } else {
      guess = root.bit();
    }

    uint8_t out = verified ? guess : 0;
    if (!verified) ++rep.zeroed;
    if (coin) {
      ++rep.n_coin1;
      rep.out1_coin1 += out;
    } else {
      ++rep.n_coin0;
      rep.out1_coin0 += out;
    }
    rep.successes += (out == coin);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// real-vs-sim: randomized scripts over the simulation wrap. Each script
// issues up to q_pre pre-challenge keys, deletes a subset, encrypts the
// challenge, then issues post-challenge keys; the real and simulated runs
// must produce identical decryption outcomes, and the simulator input is
// checked to exclude the deleted keys' tags.

AdvantageReport run_real_vs_sim(const GameConfig& cfg, const std::string& adv_name,
                                size_t trials, uint64_t seed) {
  if (adv_name != "Scripted")
    throw ParameterError("real-vs-sim: unknown adversary " + adv_name);
  AdvantageReport rep;
  rep.experiment = "real-vs-sim";
  rep.adversary = adv_name;
  rep.trials = trials;
  Rng root(seed);
  const SimConfig& sc = cfg.sim;
  for (size_t t = 0; t < trials; ++t) {
    Rng rng = root.split("script-" + std::to_string(t));
    size_t n_pre = rng.uniform(sc.q_pre + 1);
    size_t n_post = rng.uniform(3);
    std::vector<Circuit> fs_pre, fs_post;
    std::vector<uint8_t> deleted;
    for (size_t i = 0; i < n_pre; ++i) {
      fs_pre.push_back(random_circuit(sc.budget, rng));
      deleted.push_back(rng.bit());
    }
    for (size_t i = 0; i < n_post; ++i)
      fs_post.push_back(random_circuit(sc.budget, rng));
    BitVec x_star = rng.bits(sc.budget.n_in);
    size_t q = std::max<size_t>(1, n_pre + n_post);

    std::vector<BitVec> expected;
    bool ok = true;

    // Real run.
    std::vector<BitVec> real_out;
    {
      Rng r = rng.split("real");
      QStore store(seed ^ (2 * t + 1));
      SimMsk msk = sim_setup(sc, q, r);
      std::vector<SimKey> keys;
      std::vector<SimVk> vks;
      for (size_t i = 0; i < n_pre; ++i) {
        auto [k, v] = sim_kg(msk, fs_pre[i], 1, store, r);
        keys.push_back(std::move(k));
        vks.push_back(std::move(v));
      }
      for (size_t i = 0; i < n_pre; ++i)
        if (deleted[i] && !sim_vrfy(vks[i], sim_cert(keys[i], store)))
          ok = false;
      SimCiphertext ct = sim_enc(msk, x_star, r);
      for (size_t i = 0; i < n_pre; ++i) {
        if (deleted[i]) continue;
        real_out.push_back(sim_dec(keys[i], ct, store));
        expected.push_back(eval(fs_pre[i], x_star));
      }
      for (size_t i = 0; i < n_post; ++i) {
        auto [k, v] = sim_kg(msk, fs_post[i], 1, store, r);
        real_out.push_back(sim_dec(k, ct, store));
        expected.push_back(eval(fs_post[i], x_star));
      }
    }

    // Simulated run. The simulator receives only (tau, f(x*)) pairs for the
    // live pre-challenge keys and f'(x*) for the later ones — never x*.
    std::vector<BitVec> sim_out;
    {
      Rng r = rng.split("sim");
      QStore store(seed ^ (2 * t + 2));
      SimMsk msk = sim_setup(sc, q, r);
      std::vector<SimKey> keys;
      std::vector<SimVk> vks;
      for (size_t i = 0; i < n_pre; ++i) {
        auto [k, v] = sim_kg(msk, fs_pre[i], 1, store, r);
        keys.push_back(std::move(k));
        vks.push_back(std::move(v));
      }
      std::vector<BitVec> deleted_taus;
      for (size_t i = 0; i < n_pre; ++i)
        if (deleted[i]) {
          if (!sim_vrfy(vks[i], sim_cert(keys[i], store))) ok = false;
          deleted_taus.push_back(keys[i].tau);
        }
      std::vector<std::pair<BitVec, BitVec>> queries;
      for (size_t i = 0; i < n_pre; ++i)
        if (!deleted[i]) queries.emplace_back(keys[i].tau, eval(fs_pre[i], x_star));
      // Assertion: no deleted key's tag reaches the simulator.
      for (const auto& [tau, y] : queries)
        for (const BitVec& dt : deleted_taus)
          if (tau == dt) ++rep.violations;
      SimulatorState st;
      SimCiphertext ct = s_enc(msk, queries, st, r);
      for (size_t i = 0; i < n_pre; ++i)
        if (!deleted[i]) sim_out.push_back(sim_dec(keys[i], ct, store));
      for (size_t i = 0; i < n_post; ++i) {
        auto [k, v] =
            s_kg(msk, fs_post[i], eval(fs_post[i], x_star), 1, st, store, r);
        sim_out.push_back(sim_dec(k, ct, store));
      }
    }

    bool match = ok && real_out == expected && sim_out == expected;
    if (match)
      ++rep.successes;
    else
      ++rep.violations;
  }
  return rep;
}

}  // namespace

// ---------------------------------------------------------------------------
// Catalog and dispatch.

SklLeasedKey clone_skl_key(const SklLeasedKey& key, QStore& store) {
  SklLeasedKey copy = key;
  for (LeasedKey& lk : copy.key.subs)
    for (CDCiphertext& qct : lk.entries)
      for (QubitHandle& h : qct.qubits) h = store.unsafe_clone(h);
  return copy;
}

std::vector<std::string> game_names() {
  return {"sel-lessor",     "sel-s-lessor", "ind-cpa-cd", "ind-cva-cd",
          "sethss-sel-ind", "ada-lessor",   "real-vs-sim"};
}

std::vector<std::string> adversary_names(const std::string& game) {
  if (game == "sel-lessor")
    return {"HonestLessee", "KeepKey", "KeepTranscript", "UnsafeClone"};
  if (game == "sel-s-lessor") return {"HonestLessee", "KeepKey", "UnsafeClone"};
  if (game == "ind-cpa-cd") return {"HonestDeleter", "BasisGuesser"};
  if (game == "ind-cva-cd") return {"PluggedInner", "PluggedInnerDirect"};
  if (game == "sethss-sel-ind") return {"Honest", "CoalitionXor"};
  if (game == "ada-lessor") return {"HonestLessee", "KeepKey"};
  if (game == "real-vs-sim") return {"Scripted"};
  throw ParameterError("unknown game: " + game);
}

AdvantageReport run_game(const std::string& game, const std::string& adversary,
                         size_t trials, uint64_t seed, const GameConfig& cfg) {
  if (game == "sel-lessor") return run_sel_lessor(cfg, adversary, trials, seed);
  if (game == "sel-s-lessor")
    return run_sel_s_lessor(cfg, adversary, trials, seed);
  if (game == "ind-cpa-cd") return run_ind_cpa_cd(cfg, adversary, trials, seed);
  if (game == "ind-cva-cd") return run_ind_cva_cd(cfg, adversary, trials, seed);
  if (game == "sethss-sel-ind")
    return run_sethss_sel_ind(cfg, adversary, trials, seed);
  if (game == "ada-lessor") return run_ada_lessor(cfg, adversary, trials, seed);
  if (game == "real-vs-sim")
    return run_real_vs_sim(cfg, adversary, trials, seed);
  throw ParameterError("unknown game: " + game);
}

}  // namespace feskl
