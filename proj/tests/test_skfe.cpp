// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "feskl/skfe.hpp"

using namespace feskl;

namespace {

SkfeConfig make_cfg(SkfeBackend backend) {
  SkfeConfig cfg;
  cfg.backend = backend;
  cfg.budget = CircuitBudget{4, 8, 1};
  return cfg;
}

}  // namespace

TEST_CASE("both backends decrypt to f(x)") {
  for (SkfeBackend backend : {SkfeBackend::Crypto, SkfeBackend::Reference}) {
    SkfeConfig cfg = make_cfg(backend);
    Rng rng(201);
    for (int t = 0; t < 15; ++t) {
      SkfeMasterKey msk = SkfeMasterKey::setup(cfg, 1, rng);
      Circuit f = random_circuit(cfg.budget, rng);
      BitVec x = rng.bits(cfg.budget.n_in);
      SkfeFunctionKey sk = msk.keygen(f);
      SkfeCiphertext ct = msk.encrypt(x, rng);
      CHECK(skfe_decrypt(sk, ct) == eval(f, x));
    }
  }
}

TEST_CASE("q keys decrypt one ciphertext, later and earlier alike") {
  SkfeConfig cfg = make_cfg(SkfeBackend::Crypto);
  Rng rng(203);
  const size_t q = 3;
  SkfeMasterKey msk = SkfeMasterKey::setup(cfg, q, rng);
  std::vector<Circuit> fs;
  std::vector<SkfeFunctionKey> sks;
  for (size_t i = 0; i < q; ++i) {
    fs.push_back(random_circuit(cfg.budget, rng));
    sks.push_back(msk.keygen(fs.back()));
  }
  BitVec x = rng.bits(cfg.budget.n_in);
  SkfeCiphertext ct = msk.encrypt(x, rng);
  CHECK(ct.payloads.size() == q);
  for (size_t i = 0; i < q; ++i) CHECK(skfe_decrypt(sks[i], ct) == eval(fs[i], x));
}

TEST_CASE("the collusion quota is enforced") {
  for (SkfeBackend backend : {SkfeBackend::Crypto, SkfeBackend::Reference}) {
    SkfeConfig cfg = make_cfg(backend);
    Rng rng(207);
    SkfeMasterKey msk = SkfeMasterKey::setup(cfg, 2, rng);
    msk.keygen(random_circuit(cfg.budget, rng));
    msk.keygen(random_circuit(cfg.budget, rng));
    CHECK_THROWS_AS(msk.keygen(random_circuit(cfg.budget, rng)), QuotaError);
  }
}

TEST_CASE("oversized functions are rejected at keygen") {
  SkfeConfig cfg = make_cfg(SkfeBackend::Crypto);
  Rng rng(209);
  SkfeMasterKey msk = SkfeMasterKey::setup(cfg, 1, rng);
  CircuitBuilder b(4);
  uint32_t w = 0;
  for (int i = 0; i < 9; ++i) w = b.xor_(w, 1);  // 9 gates > budget's 8
  CHECK_THROWS_AS(msk.keygen(b.finish({w})), BudgetError);
}

TEST_CASE("plaintext width is checked") {
  SkfeConfig cfg = make_cfg(SkfeBackend::Reference);
  Rng rng(211);
  SkfeMasterKey msk = SkfeMasterKey::setup(cfg, 1, rng);
  CHECK_THROWS_AS(msk.encrypt(BitVec(3, 0), rng), ShapeError);
}

TEST_CASE("wide reference plaintexts roundtrip") {
  // Payload widths beyond one byte's range of bit counts must survive the
  // reference ciphertext's length framing.
  SkfeConfig cfg = make_cfg(SkfeBackend::Reference);
  cfg.budget = CircuitBudget{700, 4, 1};
  Rng rng(212);
  SkfeMasterKey msk = SkfeMasterKey::setup(cfg, 1, rng);
  CircuitBuilder b(700);
  Circuit f = b.finish({b.xor_(0, 511)});
  SkfeFunctionKey sk = msk.keygen(f);
  BitVec x = rng.bits(700);
  SkfeCiphertext ct = msk.encrypt(x, rng);
  CHECK(skfe_decrypt(sk, ct) == eval(f, x));
}

TEST_CASE("function keys serialize and restore") {
  SkfeConfig cfg = make_cfg(SkfeBackend::Crypto);
  Rng rng(213);
  SkfeMasterKey msk = SkfeMasterKey::setup(cfg, 1, rng);
  Circuit f = random_circuit(cfg.budget, rng);
  SkfeFunctionKey sk = msk.keygen(f);
  Bytes packed = sk.to_bytes(true);
  SkfeFunctionKey back = SkfeFunctionKey::from_bytes(packed);
  CHECK(back.to_bytes(true) == packed);
  BitVec x = rng.bits(cfg.budget.n_in);
  SkfeCiphertext ct = msk.encrypt(x, rng);
  CHECK(skfe_decrypt(back, ct) == eval(f, x));
  Bytes truncated(packed.begin(), packed.end() - 1);
  CHECK_THROWS_AS(SkfeFunctionKey::from_bytes(truncated), FormatError);
}

TEST_CASE("compact reference keys reattach their annex by digest") {
  SkfeConfig cfg = make_cfg(SkfeBackend::Reference);
  Rng rng(217);
  SkfeMasterKey msk = SkfeMasterKey::setup(cfg, 1, rng);
  Circuit f = random_circuit(cfg.budget, rng);
  SkfeFunctionKey sk = msk.keygen(f);
  Bytes compact = sk.to_bytes(false);
  CHECK(compact.size() < sk.to_bytes(true).size());

  SkfeFunctionKey back = SkfeFunctionKey::from_bytes(compact);
  CHECK_FALSE(bool(back.f));
  BitVec x = rng.bits(cfg.budget.n_in);
  SkfeCiphertext ct = msk.encrypt(x, rng);
  CHECK_THROWS_AS(skfe_decrypt(back, ct), FormatError);  // annex missing

  back.attach_function(std::make_shared<const Circuit>(f));
  CHECK(skfe_decrypt(back, ct) == eval(f, x));

  // A different circuit fails the digest check.
  SkfeFunctionKey fresh = SkfeFunctionKey::from_bytes(compact);
  Circuit g = f;
  g.gates[0].op = g.gates[0].op == GateOp::And ? GateOp::Xor : GateOp::And;
  CHECK_THROWS_AS(fresh.attach_function(std::make_shared<const Circuit>(g)),
                  AuthError);
}

TEST_CASE("restore continues an existing master key") {
  SkfeConfig cfg = make_cfg(SkfeBackend::Crypto);
  Rng rng(219);
  SkfeMasterKey msk = SkfeMasterKey::setup(cfg, 2, rng);
  Circuit f = random_circuit(cfg.budget, rng);
  SkfeFunctionKey sk = msk.keygen(f);

  SkfeMasterKey again =
      SkfeMasterKey::restore(cfg, msk.q(), msk.counter(), msk.seed());
  CHECK(again.counter() == 1);
  BitVec x = rng.bits(cfg.budget.n_in);
  SkfeCiphertext ct = again.encrypt(x, rng);
  CHECK(skfe_decrypt(sk, ct) == eval(f, x));
  CHECK_THROWS_AS(SkfeMasterKey::restore(cfg, 1, 0, Bytes(8)), FormatError);
}

TEST_CASE("the shared-circuit keygen variant matches the plain one") {
  SkfeConfig cfg = make_cfg(SkfeBackend::Reference);
  Rng rng(223);
  SkfeMasterKey a = SkfeMasterKey::setup(cfg, 1, rng);
  SkfeMasterKey b = SkfeMasterKey::restore(cfg, a.q(), a.counter(), a.seed());
  Circuit f = random_circuit(cfg.budget, rng);
  SkfeFunctionKey k1 = a.keygen(f);
  auto shared = std::make_shared<const Circuit>(f);
  SkfeFunctionKey k2 = b.keygen(shared, sha256(circuit_to_bytes(f)));
  CHECK(k1.to_bytes(true) == k2.to_bytes(true));
  SkfeMasterKey c = SkfeMasterKey::restore(cfg, 1, 0, a.seed());
  CHECK_THROWS_AS(c.keygen(shared, Bytes(8)), FormatError);  // bad digest size
}

TEST_CASE("a key and ciphertext from different backends do not mix") {
  Rng rng(227);
  SkfeMasterKey mc = SkfeMasterKey::setup(make_cfg(SkfeBackend::Crypto), 1, rng);
  SkfeMasterKey mr =
      SkfeMasterKey::setup(make_cfg(SkfeBackend::Reference), 1, rng);
  Circuit f = random_circuit(mc.config().budget, rng);
  SkfeFunctionKey sk = mc.keygen(f);
  SkfeCiphertext ct = mr.encrypt(rng.bits(4), rng);
  CHECK_THROWS_AS(skfe_decrypt(sk, ct), FormatError);
}
