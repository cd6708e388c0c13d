// SPDX-License-Identifier: Apache-2.0
//
// Symmetric building blocks: PRF, seeded randomness streams, an SKE scheme
// with pseudorandom ciphertexts, and a Toeplitz extractor. All keyed
// primitives are built on HMAC-SHA256 (OpenSSL).
#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "feskl/common.hpp"

namespace feskl {

constexpr size_t kKeyBytes = 16;   // 128-bit symmetric keys
constexpr size_t kTagBytes = 16;   // SKE auth tag

// Variable-length PRF: HMAC-SHA256(key, label || msg), expanded in counter
// mode when more than 32 bytes are requested.
Bytes prf(const Bytes& key, const std::string& label, const Bytes& msg,
          size_t out_len);

Bytes sha256(const Bytes& data);

// Deterministic randomness stream seeded from a key and a path string.
// split() derives independent child streams, used for per-trial RNGs.
class Rng {
 public:
  explicit Rng(uint64_t seed);
  Rng(const Bytes& key, const std::string& path);

  Bytes bytes(size_t n);
  BitVec bits(size_t n);
  uint8_t bit() { return bits(1)[0]; }
  // Uniform in [0, n).
  uint64_t uniform(uint64_t n);
  Bytes key() { return bytes(kKeyBytes); }
  Rng split(const std::string& path);

 private:
  void refill();
  Bytes seed_;
  uint64_t counter_ = 0;
  Bytes buf_;
  size_t pos_ = 0;
};

// SKE with pseudorandom ciphertexts: ct = nonce || (m xor stream) || tag.
// Every component is a PRF output or uniform, so honest ciphertexts are
// indistinguishable from random strings of the same length.
Bytes ske_encrypt(const Bytes& key, const Bytes& plaintext, Rng& rng);
// Throws AuthError on tag mismatch.
Bytes ske_decrypt(const Bytes& key, const Bytes& ciphertext);
inline size_t ske_ct_len(size_t pt_len) { return kKeyBytes + pt_len + kTagBytes; }

// One-time pad with a cyclically extended key. This is the in-circuit SKE
// used by the trojan branches of the keyed circuits: D(K, ct)[j] =
// K[j mod |K|] xor ct[j], computable gate by gate.
BitVec otp_cyclic(const BitVec& key, const BitVec& data);

// Seeded Toeplitz extractor over GF(2): output[r] = <T_row_r, input>, where
// the Toeplitz diagonal is expanded from the seed. Output length is a free
// parameter so the same extractor serves short pads and long key wrappings.
BitVec toeplitz_extract(const Bytes& seed, const BitVec& input, size_t out_len);

}  // namespace feskl
