// SPDX-License-Identifier: Apache-2.0
//
// Executable security-experiment harnesses with canned adversaries and
// statistical advantage estimation. These are smoke tests and attack
// demonstrations, not proofs: a passing harness shows the mechanisms behave
// as designed, nothing more.
#pragma once

#include <string>
#include <vector>

#include "feskl/leasing.hpp"
#include "feskl/upgrades.hpp"

namespace feskl {

struct GameConfig {
  // Light leasing stack so thousands of trials fit in seconds.
  LeasingConfig skl;
  // Adaptive/simulation layers on top of an equally light stack.
  AdaConfig ada;
  SimConfig sim;
  uint64_t n_bound = 1;  // availability bound requested per key
};

GameConfig default_game_config();

struct AdvantageReport {
  std::string experiment;
  std::string adversary;
  size_t trials = 0;
  // Experiment output out is the adversary's guess, forced to 0 when the
  // challenger's bookkeeping rejects the trial (`zeroed`).
  size_t out1_coin0 = 0, n_coin0 = 0;
  size_t out1_coin1 = 0, n_coin1 = 0;
  size_t successes = 0;   // out == coin
  size_t zeroed = 0;      // challenger forced output 0
  size_t accepts = 0;     // accepted certificates (CD games)
  size_t violations = 0;  // outcome mismatches / assertion failures

  double advantage() const;  // |Pr[out=1|coin=1] - Pr[out=1|coin=0]|
  // Conservative 95% interval on the advantage from per-coin Wilson bounds.
  std::pair<double, double> advantage_interval() const;
  std::string to_text() const;
};

// Wilson 95% score interval for a binomial proportion.
std::pair<double, double> wilson95(size_t successes, size_t n);

// Experiments: sel-lessor, sel-s-lessor, ind-cpa-cd, ind-cva-cd,
// sethss-sel-ind, ada-lessor, real-vs-sim.
std::vector<std::string> game_names();
// Adversaries compatible with one experiment.
std::vector<std::string> adversary_names(const std::string& game);

// Deterministic in (game, adversary, trials, seed, cfg). Throws
// ParameterError for an unknown game or incompatible adversary.
AdvantageReport run_game(const std::string& game, const std::string& adversary,
                         size_t trials, uint64_t seed, const GameConfig& cfg);

// Deep-copies a leased key by unsafe-cloning every qubit handle; requires a
// store created with the clone capability. Exposed for the UnsafeClone
// demonstrations and their tests.
SklLeasedKey clone_skl_key(const SklLeasedKey& key, QStore& store);

}  // namespace feskl
