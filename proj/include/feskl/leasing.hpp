// SPDX-License-Identifier: Apache-2.0
//
// The three-layer leasing stack:
//   - indexed layer: N PRF-derived (base SKFE, reusable CD-SKE) instance
//     pairs; a leased key is the per-index function keys wrapped in CD
//     ciphertexts, so deleting the key is deleting all N wrappings.
//   - static-bound layer (sbSKL): SetHSS-amplifies m indexed instances at
//     index space N = ceil(n/p); each party leases the keyed circuit
//     F[f_i, sct_i](s_i, K, b) = b ? otp(K, sct_i) : f_i(s_i).
//   - dynamic layer (SKL): lazily materialized static instances at bounds
//     2^k; a key for bound n lives at the level k' with 2^(k'-1) <= n <= 2^k'.
#pragma once

#include <map>
#include <memory>

#include "feskl/cdske.hpp"
#include "feskl/circuit.hpp"
#include "feskl/common.hpp"
#include "feskl/crypto.hpp"
#include "feskl/garble.hpp"
#include "feskl/qmem.hpp"
#include "feskl/sethss.hpp"
#include "feskl/skfe.hpp"

namespace feskl {

struct LeasingConfig {
  SkfeConfig skfe;  // base-instance backend and the user-facing budget
  CdConfig cd;
  // SetHSS geometry (sbSKL layer and above). p doubles as the indexing
  // rate: N = ceil(n/p).
  size_t m = 3;
  uint32_t ell = 8;
  double p = 0.5;
  double d = 0.5;
  size_t combiner_kappa = kDefaultKappaBits;  // must be a multiple of 8
  size_t lambda_k = 128;                      // trojan key-slot width (bits)
  uint32_t lambda_levels = 20;                // dynamic-layer level count
  // Largest index space i_kg will enumerate.
  uint64_t kg_feasibility_max = 1u << 14;
};

// ---------------------------------------------------------------------------
// Indexed layer.

struct IndexedMsk {
  LeasingConfig cfg;
  size_t q = 1;
  uint64_t N = 1;
  Bytes K;              // PRF key; all per-index material derives from it
  size_t kg_count = 0;  // collusion slots consumed
};

struct LeasedKey {
  uint64_t N = 0;
  std::vector<CDCiphertext> entries;  // index j at entries[j-1]
  // Reference-backend keys travel compact; the function circuit rides as a
  // classical annex and is reattached by digest after CD decryption.
  std::shared_ptr<const Circuit> annex;
};

struct LeasedVk {
  std::vector<CDVerificationKey> vks;
};

struct IndexedCiphertext {
  uint64_t j = 0;  // 1-based index
  SkfeCiphertext ct;
  Bytes cd_sk;  // the reusable-CD key for index j rides in the ciphertext
};

using LeasedCert = std::vector<Certificate>;

// O(1) regardless of N: only the PRF key is generated.
IndexedMsk i_setup(const LeasingConfig& cfg, size_t q, uint64_t N, Rng& rng);

// Derives the per-index base instances (deterministic in msk.K) — exposed
// because the sbSKL trojan test and the games re-derive them.
SkfeMasterKey i_sub_msk(const IndexedMsk& msk, uint64_t j);
Bytes i_cd_sk(const IndexedMsk& msk, uint64_t j);

// Enumerates all N indices; FeasibilityError past cfg.kg_feasibility_max,
// QuotaError past q keys.
std::pair<LeasedKey, LeasedVk> i_kg(IndexedMsk& msk, const Circuit& f,
                                    QStore& store, Rng& rng);
IndexedCiphertext i_enc(const IndexedMsk& msk, uint64_t j, const BitVec& x,
                        Rng& rng);
BitVec i_dec(const LeasedKey& fsk, const IndexedCiphertext& ct, QStore& store);
LeasedCert i_cert(const LeasedKey& fsk, QStore& store);
bool i_vrfy(const LeasedVk& vk, const LeasedCert& certs);

// ---------------------------------------------------------------------------
// Static-bound layer.

struct SbsklMsk {
  LeasingConfig cfg;
  size_t q = 1;
  uint64_t n = 1;  // availability bound
  uint64_t N = 1;  // ceil(n / p)
  SetParams params;
  std::vector<IndexedMsk> subs;  // one per party
  BitVec K_ske;                  // trojan SKE key (cyclic OTP), lambda_k bits
};

struct SbsklLeasedKey {
  SetParams params;
  uint32_t n_in_f = 0;
  size_t combiner_kappa = kDefaultKappaBits;
  std::shared_ptr<const GarbledCircuit> combiner;  // classical annex
  std::vector<LeasedKey> subs;
};

struct SbsklVk {
  std::vector<LeasedVk> subs;
};

struct SbsklCiphertext {
  std::vector<IndexedCiphertext> subs;
};

using SbsklCert = std::vector<LeasedCert>;

// Per-party payload is (pieces on T_i in ascending element order, K slot,
// flag bit); per-party output is the serialized evaluation labels, kappa+1
// bits each. These helpers fix the layout in one place.
size_t sb_payload_bits(const LeasingConfig& cfg, const SetParams& params,
                       size_t party);
size_t sb_output_bits(const LeasingConfig& cfg, const SetParams& params,
                      size_t party);
BitVec sb_payload(const LeasingConfig& cfg, const SetParams& params,
                  size_t party, const BitVec& pieces, const BitVec& k_slot,
                  uint8_t flag);

// ParameterError if cfg.skfe.backend is not Reference (the keyed circuits F
// are far past what nested garbling can carry at desk scale).
SbsklMsk sb_setup(const LeasingConfig& cfg, size_t q, uint64_t n, Rng& rng);
std::pair<SbsklLeasedKey, SbsklVk> sb_kg(SbsklMsk& msk, const Circuit& f,
                                         QStore& store, Rng& rng);
SbsklCiphertext sb_enc(const SbsklMsk& msk, const BitVec& x, Rng& rng);
BitVec sb_dec(const SbsklLeasedKey& fsk, const SbsklCiphertext& ct,
              QStore& store);
SbsklCert sb_cert(const SbsklLeasedKey& fsk, QStore& store);
bool sb_vrfy(const SbsklVk& vk, const SbsklCert& certs);

// ---------------------------------------------------------------------------
// Dynamic layer.

struct SklMsk {
  LeasingConfig cfg;
  size_t q = 1;
  Bytes seed;  // levels derive deterministically from this
  std::map<uint32_t, SbsklMsk> levels;

  // Materializes (or returns) level k; bound 2^k.
  SbsklMsk& level(uint32_t k);
};

struct SklLeasedKey {
  uint32_t k_prime = 1;
  SbsklLeasedKey key;
};

struct SklVk {
  uint32_t k_prime = 1;
  SbsklVk vk;
};

struct SklCiphertext {
  std::map<uint32_t, SbsklCiphertext> levels;  // every configured level
};

struct SklCert {
  uint32_t k_prime = 1;
  SbsklCert certs;
};

// Minimal k' with n <= 2^k' (so 2^(k'-1) <= n <= 2^k'; ties at n = 2^k give
// k' = k). ParameterError outside [1, 2^lambda_levels].
uint32_t skl_level_for(uint64_t n, uint32_t lambda_levels);

SklMsk skl_setup(const LeasingConfig& cfg, size_t q, Rng& rng);
std::pair<SklLeasedKey, SklVk> skl_kg(SklMsk& msk, const Circuit& f, uint64_t n,
                                      QStore& store, Rng& rng);
SklCiphertext skl_enc(SklMsk& msk, const BitVec& x, Rng& rng);
BitVec skl_dec(const SklLeasedKey& fsk, const SklCiphertext& ct, QStore& store);
SklCert skl_cert(const SklLeasedKey& fsk, QStore& store);
bool skl_vrfy(const SklVk& vk, const SklCert& cert);

}  // namespace feskl
