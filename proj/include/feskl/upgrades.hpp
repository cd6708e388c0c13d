// SPDX-License-Identifier: Apache-2.0
//
// Two conversions layered on the leasing stack:
//   - adaptive wrap: Enc garbles a fresh single-ciphertext instance and
//     encrypts its master key under the selective stack; the leased key is
//     for G[f, ct_ske, tau](1ct.msk, K, K_ske, beta), which projects the
//     function key out of 1ct.msk when beta = 0 and runs the trojan SKE
//     branch when beta = 1.
//   - simulation wrap: the leased key is for the trapdoor circuit
//     T[f, ct_ske, tau](x, K_ske, (tau_1,y_1)..(tau_q,y_q), beta); the
//     simulator encrypts programmed (tau_i, y_i) slots instead of x and
//     answers later keys through ct_ske.
#pragma once

#include "feskl/circuit.hpp"
#include "feskl/common.hpp"
#include "feskl/crypto.hpp"
#include "feskl/garble.hpp"
#include "feskl/leasing.hpp"

namespace feskl {

// ---------------------------------------------------------------------------
// Single-ciphertext SKFE: Enc garbles the universal interpreter once and
// keeps the encoding-wire label pairs as the master key; KG selects the
// labels of encode(f). KG is deterministic, so it composes with the
// projection circuit G.

struct OneCtCiphertext {
  GarbledCircuit gc;                  // universal interpreter
  std::vector<WireLabel> x_labels;    // plaintext wires, in the clear
};

// Serialized label widths: a label is kappa bits plus the point bit.
size_t one_ct_msk_bits(const CircuitBudget& budget, size_t kappa_bits);
size_t one_ct_key_bits(const CircuitBudget& budget, size_t kappa_bits);

class OneCtSkfe {
 public:
  OneCtSkfe(const CircuitBudget& budget, size_t kappa_bits)
      : budget_(budget), kappa_bits_(kappa_bits) {}

  // At most one encryption per instance; QuotaError afterwards.
  OneCtCiphertext enc(const BitVec& x, Rng& rng);
  // Serialized encoding label pairs; Error before enc() fixed them.
  BitVec msk_bits() const;
  // Unlimited; BudgetError for oversized f.
  BitVec kg(const Circuit& f) const;

  const CircuitBudget& budget() const { return budget_; }
  size_t kappa_bits() const { return kappa_bits_; }

 private:
  CircuitBudget budget_;
  size_t kappa_bits_;
  bool used_ = false;
  std::vector<InputLabelPair> enc_labels_;
};

// The projection G applies in-circuit: select the enc(f) half of each pair.
BitVec one_ct_kg_bits(const BitVec& msk_bits, const BitVec& encoding,
                      size_t kappa_bits);
BitVec one_ct_dec(const BitVec& sk_bits, const OneCtCiphertext& ct,
                  const CircuitBudget& budget, size_t kappa_bits);

// ---------------------------------------------------------------------------
// Adaptive wrap.

struct AdaConfig {
  CircuitBudget budget;       // user-facing function budget (= the 1ct budget)
  size_t one_ct_kappa = 16;   // label width inside the payload
  size_t ell2 = 64;           // tag bits
  size_t lambda_k = 32;       // PRF key slot in G's payload (layout only)
  size_t lambda_ske = 32;     // trojan SKE key width
  LeasingConfig sel;          // selective stack; its budget is derived here
};

struct AdaMsk {
  AdaConfig cfg;
  SklMsk sel;
};

struct AdaKey {
  BitVec tau;      // ell2 bits, fresh per key
  BitVec ct_ske;   // uniform at honest KG; the trojan slot of G
  SklLeasedKey sel_key;
};

using AdaVk = SklVk;
using AdaCert = SklCert;

struct AdaCiphertext {
  OneCtCiphertext oct;
  SklCiphertext sct;
};

// Payload layout of G: (1ct.msk, K, K_ske, beta).
size_t ada_payload_bits(const AdaConfig& cfg);
BitVec ada_payload(const AdaConfig& cfg, const BitVec& msk_bits,
                   const BitVec& k, const BitVec& k_ske, uint8_t beta);
Circuit ada_g_circuit(const AdaConfig& cfg, const Circuit& f,
                      const BitVec& ct_ske);

AdaMsk ada_setup(const AdaConfig& cfg, size_t q, Rng& rng);
std::pair<AdaKey, AdaVk> ada_kg(AdaMsk& msk, const Circuit& f, uint64_t n,
                                QStore& store, Rng& rng);
AdaCiphertext ada_enc(AdaMsk& msk, const BitVec& x, Rng& rng);
BitVec ada_dec(const AdaKey& key, const AdaCiphertext& ct, QStore& store);
AdaCert ada_cert(const AdaKey& key, QStore& store);
bool ada_vrfy(const AdaVk& vk, const AdaCert& cert);

// G's beta = 1 branch in isolation: builds G with ct_ske = E(k_ske, target)
// and evaluates it on a beta = 1 payload carrying k_ske. Returns G's output,
// which equals target.
BitVec trojan_branch_test(const AdaConfig& cfg, const Circuit& f,
                          const BitVec& k_ske, const BitVec& target);

// ---------------------------------------------------------------------------
// Simulation wrap.

struct SimConfig {
  CircuitBudget budget;   // user-facing function budget
  size_t q_pre = 2;       // programmed pre-challenge key slots
  size_t ell2 = 64;       // tag bits
  size_t lambda_ske = 32;
  LeasingConfig sel;      // selective stack; budget derived here
};

struct SimMsk {
  SimConfig cfg;
  SklMsk sel;
};

struct SimKey {
  BitVec tau;
  SklLeasedKey sel_key;
};

using SimVk = SklVk;
using SimCert = SklCert;
using SimCiphertext = SklCiphertext;

// Payload layout of T: (x, K_ske, q_pre x (tau_i, y_i), beta).
size_t sim_payload_bits(const SimConfig& cfg);
BitVec sim_payload(const SimConfig& cfg, const BitVec& x, const BitVec& k_ske,
                   const std::vector<std::pair<BitVec, BitVec>>& slots,
                   uint8_t beta);
Circuit sim_t_circuit(const SimConfig& cfg, const Circuit& f,
                      const BitVec& ct_ske, const BitVec& tau);

SimMsk sim_setup(const SimConfig& cfg, size_t q, Rng& rng);
std::pair<SimKey, SimVk> sim_kg(SimMsk& msk, const Circuit& f, uint64_t n,
                                QStore& store, Rng& rng);
SimCiphertext sim_enc(SimMsk& msk, const BitVec& x, Rng& rng);
BitVec sim_dec(const SimKey& key, const SimCiphertext& ct, QStore& store);
SimCert sim_cert(const SimKey& key, QStore& store);
bool sim_vrfy(const SimVk& vk, const SimCert& cert);

// The simulator. It receives only (tau_i, y_i = f_i(x*)) for the live
// pre-challenge keys — never x* itself — and programs the challenge
// ciphertext; later keys are answered by encrypting y under its SKE key.
struct SimulatorState {
  BitVec k_ske;
};

// QuotaError if more than q_pre queries are supplied.
SimCiphertext s_enc(SimMsk& msk,
                    const std::vector<std::pair<BitVec, BitVec>>& queries,
                    SimulatorState& st, Rng& rng);
std::pair<SimKey, SimVk> s_kg(SimMsk& msk, const Circuit& f, const BitVec& y,
                              uint64_t n, SimulatorState& st, QStore& store,
                              Rng& rng);

}  // namespace feskl
