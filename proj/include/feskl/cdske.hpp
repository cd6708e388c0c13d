// SPDX-License-Identifier: Apache-2.0
//
// One-time and reusable SKE with certified deletion over BB84 states.
// Encryption hides the plaintext behind an extractor of the computational-
// basis pad bits; deletion is a full Hadamard measurement whose transcript
// is checked at the Hadamard-encoded positions. Certificates are unique up
// to masked equivalence (agreement on the theta=1 positions).
#pragma once

#include <functional>
#include <optional>

#include "feskl/common.hpp"
#include "feskl/crypto.hpp"
#include "feskl/qmem.hpp"

namespace feskl {

struct CdConfig {
  size_t kq = 256;  // BB84 qubits per ciphertext
};

struct OtcdKey {
  BitVec theta;   // basis string, length kq; weight in [kq/4, 3kq/4]
  Bytes ext_seed;

  Bytes serialize() const;
  static OtcdKey deserialize(const Bytes& data);
};

struct CDVerificationKey {
  BitVec theta;
  BitVec a_check;  // encoded bits at theta=1 positions
};

struct CDCiphertext {
  BitVec classical;                 // m xor Ext(pad)
  std::vector<QubitHandle> qubits;  // kq handles
  Bytes wrapped_key;                // reusable variant: SKE ct of the OtcdKey
};

struct Certificate {
  BitVec cert;  // full Hadamard measurement transcript, length kq
};

// One-time scheme.
OtcdKey ot_keygen(const CdConfig& cfg, Rng& rng);
std::pair<CDVerificationKey, CDCiphertext> ot_enc(const OtcdKey& otk,
                                                  const BitVec& m,
                                                  QStore& store, Rng& rng);
BitVec ot_dec(const OtcdKey& otk, const CDCiphertext& ct, QStore& store);

// Shared by both schemes.
Certificate cd_del(const CDCiphertext& ct, QStore& store);
bool cd_vrfy(const CDVerificationKey& vk, const Certificate& cert);
// True iff the certificates agree on every theta=1 position; the accept-set
// of cd_vrfy is exactly one equivalence class of this relation.
bool cert_canonical_eq(const CDVerificationKey& vk, const Certificate& c1,
                       const Certificate& c2);

// Reusable scheme: a long-term SKE key wraps a fresh one-time key per
// ciphertext.
Bytes r_keygen(Rng& rng);
std::pair<CDVerificationKey, CDCiphertext> r_enc(const Bytes& sk,
                                                 const CdConfig& cfg,
                                                 const BitVec& m, QStore& store,
                                                 Rng& rng);
BitVec r_dec(const Bytes& sk, const CDCiphertext& ct, QStore& store);
inline Certificate r_del(const CDCiphertext& ct, QStore& store) {
  return cd_del(ct, store);
}
inline bool r_vrfy(const CDVerificationKey& vk, const Certificate& cert) {
  return cd_vrfy(vk, cert);
}

// ---------------------------------------------------------------------------
// IND-CVA-CD from IND-CPA-CD reduction wrapper.
//
// The verification oracle returns the secret key on an accepted certificate
// and nullopt otherwise. A CVA adversary may query many times; the CPA side
// may submit at most one certificate.

using VerifyOracle = std::function<std::optional<Bytes>(const Certificate&)>;
using CvaAdversaryFn = std::function<uint8_t(const VerifyOracle&)>;
using CpaAdversaryFn = CvaAdversaryFn;  // oracle accepts at most one query
using CertEq = std::function<bool(const Certificate&, const Certificate&)>;

// Builds the reduction's CPA-side adversary from a CVA adversary: guesses
// i* in [q_vrfy+1], answers the first i*-1 distinct certificate classes
// with reject, forwards the i*-th to the one-shot oracle, and replays the
// secret key for canonically equal queries afterwards. `cert_eq` is the
// harness-supplied canonical equality (it knows the verification key; under
// literal certificate uniqueness it would be plain bit equality).
CpaAdversaryFn cva_from_cpa_wrapper(size_t q_vrfy, CvaAdversaryFn inner,
                                    CertEq cert_eq, Rng& rng);

}  // namespace feskl
