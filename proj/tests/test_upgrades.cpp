// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>

#include "feskl/games.hpp"
#include "feskl/upgrades.hpp"

using namespace feskl;

TEST_CASE("single-ciphertext instance: enc once, keys forever") {
  CircuitBudget budget{3, 4, 1};
  Rng rng(501);
  for (int t = 0; t < 10; ++t) {
    OneCtSkfe inst(budget, 8);
    CHECK_THROWS_AS(inst.msk_bits(), Error);  // not fixed before enc
    BitVec x = rng.bits(budget.n_in);
    OneCtCiphertext ct = inst.enc(x, rng);
    CHECK_THROWS_AS(inst.enc(x, rng), QuotaError);
    CHECK(inst.msk_bits().size() == one_ct_msk_bits(budget, 8));
    for (int k = 0; k < 3; ++k) {
      Circuit f = random_circuit(budget, rng);
      BitVec sk = inst.kg(f);
      CHECK(sk.size() == one_ct_key_bits(budget, 8));
      CHECK(one_ct_dec(sk, ct, budget, 8) == eval(f, x));
    }
  }
}

TEST_CASE("single-ciphertext keys do not cross instances") {
  CircuitBudget budget{3, 4, 1};
  Rng rng(503);
  OneCtSkfe a(budget, 8), b(budget, 8);
  BitVec x = rng.bits(budget.n_in);
  OneCtCiphertext ct_a = a.enc(x, rng);
  b.enc(x, rng);
  Circuit f = random_circuit(budget, rng);
  CHECK_THROWS_AS(one_ct_dec(b.kg(f), ct_a, budget, 8), AuthError);
  CHECK_THROWS_AS(one_ct_dec(BitVec(3, 0), ct_a, budget, 8), ShapeError);
}

TEST_CASE("the in-circuit projection equals direct key generation") {
  CircuitBudget budget{3, 4, 1};
  Rng rng(507);
  OneCtSkfe inst(budget, 8);
  inst.enc(rng.bits(budget.n_in), rng);
  Circuit f = random_circuit(budget, rng);
  CHECK(one_ct_kg_bits(inst.msk_bits(), encode_circuit(f, budget), 8) ==
        inst.kg(f));
}

TEST_CASE("adaptive wrap decrypts to f(x) and certifies") {
  AdaConfig cfg = default_game_config().ada;
  Rng rng(509);
  for (int t = 0; t < 5; ++t) {
    QStore store(520 + t);
    AdaMsk msk = ada_setup(cfg, 1, rng);
    Circuit f = random_circuit(cfg.budget, rng);
    BitVec x = rng.bits(cfg.budget.n_in);
    auto [key, vk] = ada_kg(msk, f, 1, store, rng);
    AdaCiphertext ct = ada_enc(msk, x, rng);
    // Decrypt against a snapshot; deletion needs the unconsumed handles.
    QStore dec_store = QStore::load(store.save());
    CHECK(ada_dec(key, ct, dec_store) == eval(f, x));
    CHECK(ada_vrfy(vk, ada_cert(key, store)));
    CHECK_THROWS_AS(ada_dec(key, ct, store), LinearityError);
  }
}

TEST_CASE("adaptive tags are fresh per key") {
  AdaConfig cfg = default_game_config().ada;
  Rng rng(511);
  QStore store(511);
  AdaMsk msk = ada_setup(cfg, 3, rng);
  Circuit f = random_circuit(cfg.budget, rng);
  auto [k1, v1] = ada_kg(msk, f, 1, store, rng);
  auto [k2, v2] = ada_kg(msk, f, 1, store, rng);
  (void)v1;
  (void)v2;
  CHECK(k1.tau != k2.tau);
  CHECK(k1.ct_ske != k2.ct_ske);
}

TEST_CASE("the trojan branch of G decrypts its programmed target") {
  AdaConfig cfg = default_game_config().ada;
  Rng rng(513);
  size_t out_bits = one_ct_key_bits(cfg.budget, cfg.one_ct_kappa);
  for (int t = 0; t < 10; ++t) {
    Circuit f = random_circuit(cfg.budget, rng);
    BitVec k_ske = rng.bits(cfg.lambda_ske);
    BitVec target = rng.bits(out_bits);
    CHECK(trojan_branch_test(cfg, f, k_ske, target) == target);
  }
}

TEST_CASE("adaptive keygen rejects functions beyond the user budget") {
  AdaConfig cfg = default_game_config().ada;
  Rng rng(517);
  QStore store(517);
  AdaMsk msk = ada_setup(cfg, 1, rng);
  CircuitBuilder b(cfg.budget.n_in);
  uint32_t w = 0;
  for (uint32_t i = 0; i <= cfg.budget.n_gates_max; ++i) w = b.xor_(w, 1);
  CHECK_THROWS_AS(ada_kg(msk, b.finish({w}), 1, store, rng), BudgetError);
}

TEST_CASE("simulation wrap: honest mode decrypts to f(x)") {
  SimConfig cfg = default_game_config().sim;
  Rng rng(519);
  for (int t = 0; t < 5; ++t) {
    QStore store(530 + t);
    SimMsk msk = sim_setup(cfg, 1, rng);
    Circuit f = random_circuit(cfg.budget, rng);
    BitVec x = rng.bits(cfg.budget.n_in);
    auto [key, vk] = sim_kg(msk, f, 1, store, rng);
    SimCiphertext ct = sim_enc(msk, x, rng);
    QStore dec_store = QStore::load(store.save());
    CHECK(sim_dec(key, ct, dec_store) == eval(f, x));
    CHECK(sim_vrfy(vk, sim_cert(key, store)));
  }
}

TEST_CASE("the simulator reproduces outputs without the plaintext") {
  SimConfig cfg = default_game_config().sim;
  Rng rng(523);
  QStore store(523);
  SimMsk msk = sim_setup(cfg, 4, rng);
  BitVec x_star = rng.bits(cfg.budget.n_in);

  // Two pre-challenge keys: the simulator receives only their tags and
  // their outputs on the (hidden) challenge input.
  std::vector<Circuit> fs_pre;
  std::vector<SimKey> keys;
  for (int i = 0; i < 2; ++i) {
    fs_pre.push_back(random_circuit(cfg.budget, rng));
    auto [k, vk] = sim_kg(msk, fs_pre[i], 1, store, rng);
    (void)vk;
    keys.push_back(std::move(k));
  }
  SimulatorState st;
  std::vector<std::pair<BitVec, BitVec>> queries;
  for (int i = 0; i < 2; ++i)
    queries.emplace_back(keys[i].tau, eval(fs_pre[i], x_star));
  SimCiphertext sim_ct = s_enc(msk, queries, st, rng);
  for (int i = 0; i < 2; ++i)
    CHECK(sim_dec(keys[i], sim_ct, store) == eval(fs_pre[i], x_star));

  // A post-challenge key is programmed through the trojan SKE slot.
  Circuit f_post = random_circuit(cfg.budget, rng);
  auto [k_post, vk_post] =
      s_kg(msk, f_post, eval(f_post, x_star), 1, st, store, rng);
  (void)vk_post;
  CHECK(sim_dec(k_post, sim_ct, store) == eval(f_post, x_star));

  // Programming more slots than q_pre is refused.
  queries.emplace_back(rng.bits(cfg.ell2), BitVec(cfg.budget.n_out, 0));
  SimulatorState st2;
  CHECK_THROWS_AS(s_enc(msk, queries, st2, rng), QuotaError);
}

TEST_CASE("trapdoor circuits keep honest behavior for unmatched tags") {
  SimConfig cfg = default_game_config().sim;
  Rng rng(527);
  Circuit f = random_circuit(cfg.budget, rng);
  BitVec tau = rng.bits(cfg.ell2);
  BitVec ct_ske = rng.bits(cfg.budget.n_out);
  Circuit t = sim_t_circuit(cfg, f, ct_ske, tau);
  BitVec x = rng.bits(cfg.budget.n_in);
  // beta = 0: plain f(x) regardless of the programmed slots.
  BitVec payload = sim_payload(cfg, x, BitVec(cfg.lambda_ske, 0), {}, 0);
  CHECK(eval(t, payload) == eval(f, x));
  // beta = 1 with a matching programmed tag: the slot's y comes out.
  BitVec y = rng.bits(cfg.budget.n_out);
  BitVec p1 = sim_payload(cfg, BitVec(cfg.budget.n_in, 0),
                          BitVec(cfg.lambda_ske, 0), {{tau, y}}, 1);
  CHECK(eval(t, p1) == y);
  // beta = 1, no matching tag: the trojan SKE branch answers instead.
  BitVec k_ske = rng.bits(cfg.lambda_ske);
  Circuit t2 = sim_t_circuit(cfg, f, otp_cyclic(k_ske, y), tau);
  BitVec other_tau = xor_bits(tau, BitVec(cfg.ell2, 1));
  BitVec p2 = sim_payload(cfg, BitVec(cfg.budget.n_in, 0), k_ske,
                          {{other_tau, rng.bits(cfg.budget.n_out)}}, 1);
  CHECK(eval(t2, p2) == y);
}

TEST_CASE("simulation tags stay distinct across many keys") {
  SimConfig cfg = default_game_config().sim;
  cfg.ell2 = 64;
  Rng rng(529);
  std::set<std::vector<uint8_t>> seen;
  for (int t = 0; t < 200; ++t) {
    BitVec tau = rng.bits(cfg.ell2);
    CHECK(seen.insert(tau).second);
  }
}
