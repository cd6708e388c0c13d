// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "feskl/games.hpp"
#include "feskl/leasing.hpp"

using namespace feskl;

namespace {

// The light stack the game harness uses; small enough for tight loops.
LeasingConfig light_cfg() { return default_game_config().skl; }

}  // namespace

TEST_CASE("indexed layer roundtrip, certification and tampered certificates") {
  LeasingConfig cfg = light_cfg();
  Rng rng(401);
  QStore store(401);
  IndexedMsk msk = i_setup(cfg, 2, 6, rng);
  CHECK(msk.N == 6);
  Circuit f = random_circuit(cfg.skfe.budget, rng);
  BitVec x = rng.bits(cfg.skfe.budget.n_in);
  auto [key, vk] = i_kg(msk, f, store, rng);
  CHECK(key.entries.size() == msk.N);
  CHECK(vk.vks.size() == msk.N);
  // Decrypt against a snapshot: decryption and deletion both consume the
  // key's qubit handles, so an honest lessee does one or the other.
  QStore dec_store = QStore::load(store.save());
  for (uint64_t j = 1; j <= msk.N; ++j) {
    IndexedCiphertext ct = i_enc(msk, j, x, rng);
    CHECK(i_dec(key, ct, dec_store) == eval(f, x));
  }

  LeasedCert certs = i_cert(key, store);
  // Tamper with one checked transcript position before verification.
  LeasedCert bad = certs;
  size_t pos = 0;
  while (vk.vks[0].theta[pos] != 1) ++pos;
  bad[0].cert[pos] ^= 1;
  CHECK_FALSE(i_vrfy(vk, bad));
  CHECK(i_vrfy(vk, certs));
  bad.pop_back();
  CHECK_THROWS_AS(i_vrfy(vk, bad), ShapeError);
}

TEST_CASE("per-index instances derive deterministically from the master key") {
  LeasingConfig cfg = light_cfg();
  Rng rng(403);
  IndexedMsk msk = i_setup(cfg, 1, 4, rng);
  CHECK(i_sub_msk(msk, 2).seed() == i_sub_msk(msk, 2).seed());
  CHECK(i_sub_msk(msk, 2).seed() != i_sub_msk(msk, 3).seed());
  CHECK(i_cd_sk(msk, 1) == i_cd_sk(msk, 1));
  CHECK(i_cd_sk(msk, 1) != i_cd_sk(msk, 2));
}

TEST_CASE("indexed layer enforces quota, feasibility and index range") {
  LeasingConfig cfg = light_cfg();
  Rng rng(405);
  QStore store(405);
  IndexedMsk msk = i_setup(cfg, 1, 4, rng);
  Circuit f = random_circuit(cfg.skfe.budget, rng);
  i_kg(msk, f, store, rng);
  CHECK_THROWS_AS(i_kg(msk, f, store, rng), QuotaError);
  CHECK_THROWS_AS(i_enc(msk, 0, rng.bits(cfg.skfe.budget.n_in), rng),
                  ParameterError);
  CHECK_THROWS_AS(i_enc(msk, 5, rng.bits(cfg.skfe.budget.n_in), rng),
                  ParameterError);

  LeasingConfig tiny = cfg;
  tiny.kg_feasibility_max = 4;
  Rng rng2(406);
  IndexedMsk big = i_setup(tiny, 1, 8, rng2);
  CHECK_THROWS_AS(i_kg(big, f, store, rng2), FeasibilityError);
  CHECK_THROWS_AS(i_setup(cfg, 1, 0, rng2), ParameterError);
}

TEST_CASE("static-bound index space is the availability bound over p") {
  LeasingConfig cfg = light_cfg();
  Rng rng(407);
  CHECK(sb_setup(cfg, 1, 8, rng).N == 16);  // p = 0.5
  LeasingConfig third = cfg;
  third.p = 0.3;
  CHECK(sb_setup(third, 1, 10, rng).N == 34);  // ceil(10 / 0.3)
}

TEST_CASE("static-bound layer rejects unusable configurations") {
  LeasingConfig cfg = light_cfg();
  Rng rng(409);
  LeasingConfig crypto = cfg;
  crypto.skfe.backend = SkfeBackend::Crypto;
  CHECK_THROWS_AS(sb_setup(crypto, 1, 2, rng), ParameterError);
  LeasingConfig odd = cfg;
  odd.combiner_kappa = 17;
  CHECK_THROWS_AS(sb_setup(odd, 1, 2, rng), ParameterError);
  CHECK_THROWS_AS(sb_setup(cfg, 1, 0, rng), ParameterError);
}

TEST_CASE("static-bound layer roundtrip and certification") {
  LeasingConfig cfg = light_cfg();
  Rng rng(411);
  QStore store(411);
  SbsklMsk msk = sb_setup(cfg, 1, 2, rng);
  Circuit f = random_circuit(cfg.skfe.budget, rng);
  BitVec x = rng.bits(cfg.skfe.budget.n_in);
  auto [key, vk] = sb_kg(msk, f, store, rng);
  CHECK(key.subs.size() == cfg.m);
  SbsklCiphertext ct = sb_enc(msk, x, rng);
  CHECK(ct.subs.size() == cfg.m);
  QStore dec_store = QStore::load(store.save());
  CHECK(sb_dec(key, ct, dec_store) == eval(f, x));
  CHECK(sb_vrfy(vk, sb_cert(key, store)));
}

TEST_CASE("level selection is the minimal power of two holding the bound") {
  CHECK(skl_level_for(1, 20) == 1);
  CHECK(skl_level_for(2, 20) == 1);
  CHECK(skl_level_for(3, 20) == 2);
  CHECK(skl_level_for(4, 20) == 2);
  CHECK(skl_level_for(5, 20) == 3);
  CHECK(skl_level_for(8, 20) == 3);
  CHECK(skl_level_for(9, 20) == 4);
  CHECK(skl_level_for(uint64_t(1) << 20, 20) == 20);
  CHECK_THROWS_AS(skl_level_for(0, 20), ParameterError);
  CHECK_THROWS_AS(skl_level_for((uint64_t(1) << 20) + 1, 20), ParameterError);
}

TEST_CASE("dynamic layer roundtrip with lazily materialized levels") {
  LeasingConfig cfg = light_cfg();
  Rng rng(413);
  QStore store(413);
  SklMsk msk = skl_setup(cfg, 2, rng);
  CHECK(msk.levels.empty());

  Circuit f = random_circuit(cfg.skfe.budget, rng);
  BitVec x = rng.bits(cfg.skfe.budget.n_in);
  auto [key, vk] = skl_kg(msk, f, 3, store, rng);
  CHECK(key.k_prime == 2);
  CHECK(vk.k_prime == 2);
  CHECK(msk.levels.size() == 1);  // only level 2 exists so far

  SklCiphertext ct = skl_enc(msk, x, rng);
  CHECK(ct.levels.size() == cfg.lambda_levels);
  CHECK(msk.levels.size() == cfg.lambda_levels);
  QStore dec_store = QStore::load(store.save());
  CHECK(skl_dec(key, ct, dec_store) == eval(f, x));
  CHECK(skl_vrfy(vk, skl_cert(key, store)));
}

TEST_CASE("levels re-derive deterministically from the dynamic seed") {
  LeasingConfig cfg = light_cfg();
  Rng rng(417);
  SklMsk msk = skl_setup(cfg, 1, rng);
  Bytes k_first = msk.level(2).subs[0].K;
  SklMsk clone;
  clone.cfg = msk.cfg;
  clone.q = msk.q;
  clone.seed = msk.seed;
  CHECK(clone.level(2).subs[0].K == k_first);
}

TEST_CASE("dynamic verification refuses mismatched levels") {
  LeasingConfig cfg = light_cfg();
  Rng rng(419);
  QStore store(419);
  SklMsk msk = skl_setup(cfg, 1, rng);
  Circuit f = random_circuit(cfg.skfe.budget, rng);
  auto [key, vk] = skl_kg(msk, f, 2, store, rng);
  SklCert cert = skl_cert(key, store);
  cert.k_prime += 1;
  CHECK_THROWS_AS(skl_vrfy(vk, cert), ShapeError);
}

TEST_CASE("a ciphertext missing the key's level cannot be decrypted") {
  LeasingConfig cfg = light_cfg();
  Rng rng(421);
  QStore store(421);
  SklMsk msk = skl_setup(cfg, 1, rng);
  Circuit f = random_circuit(cfg.skfe.budget, rng);
  auto [key, vk] = skl_kg(msk, f, 2, store, rng);
  (void)vk;
  SklCiphertext ct = skl_enc(msk, rng.bits(cfg.skfe.budget.n_in), rng);
  ct.levels.erase(key.k_prime);
  CHECK_THROWS_AS(skl_dec(key, ct, store), ShapeError);
}

TEST_CASE("certification consumes the key at every layer") {
  LeasingConfig cfg = light_cfg();
  Rng rng(423);
  {
    QStore store(423);
    IndexedMsk msk = i_setup(cfg, 1, 4, rng);
    Circuit f = random_circuit(cfg.skfe.budget, rng);
    auto [key, vk] = i_kg(msk, f, store, rng);
    IndexedCiphertext ct =
        i_enc(msk, 1, rng.bits(cfg.skfe.budget.n_in), rng);
    CHECK(i_vrfy(vk, i_cert(key, store)));
    CHECK_THROWS_AS(i_dec(key, ct, store), LinearityError);
  }
  {
    QStore store(424);
    SklMsk msk = skl_setup(cfg, 1, rng);
    Circuit f = random_circuit(cfg.skfe.budget, rng);
    auto [key, vk] = skl_kg(msk, f, 2, store, rng);
    SklCiphertext ct = skl_enc(msk, rng.bits(cfg.skfe.budget.n_in), rng);
    CHECK(skl_vrfy(vk, skl_cert(key, store)));
    CHECK_THROWS_AS(skl_dec(key, ct, store), LinearityError);
  }
}

TEST_CASE("oversized functions are rejected at the static-bound layer") {
  LeasingConfig cfg = light_cfg();
  Rng rng(427);
  QStore store(427);
  SbsklMsk msk = sb_setup(cfg, 1, 2, rng);
  CircuitBuilder b(cfg.skfe.budget.n_in);
  uint32_t w = 0;
  for (uint32_t i = 0; i <= cfg.skfe.budget.n_gates_max; ++i) w = b.xor_(w, 1);
  CHECK_THROWS_AS(sb_kg(msk, b.finish({w}), store, rng), BudgetError);
}
