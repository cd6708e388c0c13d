// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>

#include "feskl/games.hpp"

using namespace feskl;

TEST_CASE("the experiment and adversary catalogs are consistent") {
  std::vector<std::string> games = game_names();
  CHECK(games.size() == 7);
  for (const std::string& g : games) {
    std::vector<std::string> advs = adversary_names(g);
    CHECK_FALSE(advs.empty());
  }
  CHECK_THROWS_AS(adversary_names("no-such-game"), ParameterError);
  GameConfig cfg = default_game_config();
  CHECK_THROWS_AS(run_game("no-such-game", "HonestLessee", 1, 0, cfg),
                  ParameterError);
  CHECK_THROWS_AS(run_game("sel-lessor", "BasisGuesser", 1, 0, cfg),
                  ParameterError);
}

TEST_CASE("runs are deterministic in the seed") {
  GameConfig cfg = default_game_config();
  AdvantageReport a = run_game("sel-lessor", "HonestLessee", 40, 77, cfg);
  AdvantageReport b = run_game("sel-lessor", "HonestLessee", 40, 77, cfg);
  CHECK(a.to_text() == b.to_text());
  CHECK(a.successes == b.successes);
  AdvantageReport c = run_game("sel-lessor", "HonestLessee", 40, 78, cfg);
  CHECK(c.trials == 40);  // a different seed also completes
}

TEST_CASE("a lessee that never certifies is zeroed on every trial") {
  GameConfig cfg = default_game_config();
  AdvantageReport rep = run_game("sel-lessor", "KeepKey", 50, 5, cfg);
  CHECK(rep.trials == 50);
  CHECK(rep.zeroed == 50);
  CHECK(rep.advantage() == doctest::Approx(0.0));
}

TEST_CASE("the cloning attack wins the lessor game") {
  GameConfig cfg = default_game_config();
  AdvantageReport rep = run_game("sel-lessor", "UnsafeClone", 150, 7, cfg);
  CHECK(rep.zeroed == 0);
  CHECK(rep.advantage() >= 0.3);
}

TEST_CASE("certified deletion games behave at both extremes") {
  GameConfig cfg = default_game_config();
  AdvantageReport honest = run_game("ind-cpa-cd", "HonestDeleter", 200, 9, cfg);
  CHECK(honest.accepts == honest.trials);
  AdvantageReport cheat = run_game("ind-cpa-cd", "BasisGuesser", 200, 9, cfg);
  CHECK(cheat.accepts == 0);
}

TEST_CASE("the direct CVA distinguisher wins through the oracle") {
  GameConfig cfg = default_game_config();
  AdvantageReport rep =
      run_game("ind-cva-cd", "PluggedInnerDirect", 300, 11, cfg);
  CHECK(rep.advantage() >= 0.9);
}

TEST_CASE("coalition games on the set sharing layer run to completion") {
  GameConfig cfg = default_game_config();
  AdvantageReport honest = run_game("sethss-sel-ind", "Honest", 60, 13, cfg);
  CHECK(honest.trials == 60);
  CHECK(honest.violations == 0);
  AdvantageReport xor_adv =
      run_game("sethss-sel-ind", "CoalitionXor", 60, 13, cfg);
  CHECK(xor_adv.trials == 60);
}

TEST_CASE("the adaptive lessor game accepts honest play") {
  GameConfig cfg = default_game_config();
  AdvantageReport rep = run_game("ada-lessor", "HonestLessee", 30, 15, cfg);
  CHECK(rep.zeroed == 0);
  CHECK(rep.advantage() <= 0.35);
}

TEST_CASE("scripted real and simulated runs agree") {
  GameConfig cfg = default_game_config();
  AdvantageReport rep = run_game("real-vs-sim", "Scripted", 25, 17, cfg);
  CHECK(rep.successes == rep.trials);
  CHECK(rep.violations == 0);
}

TEST_CASE("wilson interval brackets the point estimate") {
  auto [lo0, hi0] = wilson95(0, 100);
  CHECK(lo0 == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(hi0 > 0.0);
  CHECK(hi0 < 0.1);
  auto [lo, hi] = wilson95(50, 100);
  CHECK(lo < 0.5);
  CHECK(hi > 0.5);
  CHECK(hi - lo < 0.25);
  auto [lo1, hi1] = wilson95(100, 100);
  CHECK(hi1 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(lo1 > 0.9);
}

TEST_CASE("advantage arithmetic") {
  AdvantageReport rep;
  rep.trials = 200;
  rep.n_coin0 = 100;
  rep.n_coin1 = 100;
  rep.out1_coin0 = 10;
  rep.out1_coin1 = 90;
  CHECK(rep.advantage() == doctest::Approx(0.8));
  auto [lo, hi] = rep.advantage_interval();
  CHECK(lo <= 0.8);
  CHECK(hi >= 0.8);
  std::string text = rep.to_text();
  CHECK_FALSE(text.empty());
}

TEST_CASE("cloned keys decrypt like the original") {
  GameConfig cfg = default_game_config();
  Rng rng(21);
  QStore store(21, true);
  SklMsk msk = skl_setup(cfg.skl, 1, rng);
  Circuit f = random_circuit(cfg.skl.skfe.budget, rng);
  BitVec x = rng.bits(cfg.skl.skfe.budget.n_in);
  auto [key, vk] = skl_kg(msk, f, 1, store, rng);
  SklLeasedKey copy = clone_skl_key(key, store);
  SklCiphertext ct = skl_enc(msk, x, rng);
  CHECK(skl_vrfy(vk, skl_cert(key, store)));
  CHECK(skl_dec(copy, ct, store) == eval(f, x));
}
