// SPDX-License-Identifier: Apache-2.0
//
// Bounded-collusion secret-key functional encryption. The crypto backend is
// a one-key scheme replicated q times: Enc garbles the universal interpreter
// with x hardwired (x-wire labels in the clear inside the payload), KG
// releases per-bit SKE keys selecting the encoding of f. The reference
// backend is a correctness-only trusted evaluator so the taller layers can
// run at sizes where nested garbling explodes.
#pragma once

#include <array>
#include <memory>

#include "feskl/circuit.hpp"
#include "feskl/common.hpp"
#include "feskl/crypto.hpp"
#include "feskl/garble.hpp"

namespace feskl {

enum class SkfeBackend : uint8_t { Crypto = 0, Reference = 1 };

struct SkfeConfig {
  SkfeBackend backend = SkfeBackend::Crypto;
  CircuitBudget budget;
  size_t kappa_bits = kDefaultKappaBits;
  bool operator==(const SkfeConfig&) const = default;
};

struct SkfeFunctionKey {
  SkfeBackend backend = SkfeBackend::Crypto;
  uint32_t slot = 0;
  // Crypto backend: the function encoding and one SKE key per encoding bit.
  BitVec encoding;
  std::vector<Bytes> bit_keys;
  // Reference backend.
  std::shared_ptr<const Circuit> f;
  Bytes data_key;
  Bytes f_digest;

  // Compact form omits the reference circuit (the leasing layers carry it as
  // a classical annex and reattach it by digest).
  Bytes to_bytes(bool include_function) const;
  static SkfeFunctionKey from_bytes(const Bytes& data);
  // Reattach the annex circuit; throws AuthError on digest mismatch.
  void attach_function(std::shared_ptr<const Circuit> fn);
};

struct SkfeCiphertext {
  SkfeBackend backend = SkfeBackend::Crypto;
  struct Payload {
    GarbledCircuit gc;  // universal interpreter
    std::vector<WireLabel> x_labels;
    // Per encoding bit, encryptions of the two wire labels under the two
    // sub-instance keys for that position.
    std::vector<std::array<Bytes, 2>> label_cts;
  };
  std::vector<Payload> payloads;  // one per collusion slot (crypto)
  Bytes ref_ct;                   // SKE of x (reference)
};

class SkfeMasterKey {
 public:
  static SkfeMasterKey setup(const SkfeConfig& cfg, size_t q, Rng& rng);
  // Rebuild a master key from persisted state.
  static SkfeMasterKey restore(const SkfeConfig& cfg, size_t q, size_t counter,
                               Bytes seed);

  // Consumes the next collusion slot; throws QuotaError past q and
  // BudgetError for oversized f.
  SkfeFunctionKey keygen(const Circuit& f);
  // Variant for the PRF-derived instance farms, which issue the same
  // function under many sub-instances: shares the circuit and reuses its
  // digest instead of recomputing both per call.
  SkfeFunctionKey keygen(std::shared_ptr<const Circuit> f,
                         const Bytes& f_digest);
  SkfeCiphertext encrypt(const BitVec& x, Rng& rng) const;

  size_t q() const { return q_; }
  size_t counter() const { return counter_; }
  // Fast-forward for PRF-derived instances that must align slots across a
  // whole index space.
  void set_counter(size_t c) { counter_ = c; }
  const SkfeConfig& config() const { return cfg_; }
  const Bytes& seed() const { return seed_; }

 private:
  Bytes sub_bit_key(size_t slot, size_t bit_pos, uint8_t value) const;
  Bytes ref_data_key() const;
  SkfeConfig cfg_;
  size_t q_ = 1;
  size_t counter_ = 0;
  Bytes seed_;
};

BitVec skfe_decrypt(const SkfeFunctionKey& sk, const SkfeCiphertext& ct);

}  // namespace feskl
