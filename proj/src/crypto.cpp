// SPDX-License-Identifier: Apache-2.0
#include "feskl/crypto.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/sha.h>

#include <cstring>

namespace feskl {

namespace {

std::array<uint8_t, 32> hmac_sha256(const Bytes& key, const uint8_t* data,
                                    size_t len) {
  std::array<uint8_t, 32> out{};
  unsigned int out_len = 32;
  HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data, len,
       out.data(), &out_len);
  return out;
}

}  // namespace

Bytes prf(const Bytes& key, const std::string& label, const Bytes& msg,
          size_t out_len) {
  Bytes input;
  input.reserve(label.size() + 1 + msg.size() + 8);
  input.insert(input.end(), label.begin(), label.end());
  input.push_back(0);
  input.insert(input.end(), msg.begin(), msg.end());
  Bytes out;
  out.reserve(out_len);
  uint64_t ctr = 0;
  while (out.size() < out_len) {
    Bytes block = input;
    for (int i = 0; i < 8; ++i) block.push_back(uint8_t(ctr >> (8 * i)));
    auto h = hmac_sha256(key, block.data(), block.size());
    size_t take = std::min<size_t>(32, out_len - out.size());
    out.insert(out.end(), h.begin(), h.begin() + take);
    ++ctr;
  }
  return out;
}

Bytes sha256(const Bytes& data) {
  Bytes out(32);
  SHA256(data.data(), data.size(), out.data());
  return out;
}

Rng::Rng(uint64_t seed) {
  seed_.resize(8);
  for (int i = 0; i < 8; ++i) seed_[i] = uint8_t(seed >> (8 * i));
}

Rng::Rng(const Bytes& key, const std::string& path) {
  seed_ = prf(key, "rng-split", Bytes(path.begin(), path.end()), 32);
}

void Rng::refill() {
  Bytes ctr(8);
  for (int i = 0; i < 8; ++i) ctr[i] = uint8_t(counter_ >> (8 * i));
  auto h = hmac_sha256(seed_, ctr.data(), ctr.size());
  buf_.assign(h.begin(), h.end());
  pos_ = 0;
  ++counter_;
}

Bytes Rng::bytes(size_t n) {
  Bytes out;
  out.reserve(n);
  while (out.size() < n) {
    if (pos_ >= buf_.size()) refill();
    size_t take = std::min(n - out.size(), buf_.size() - pos_);
    out.insert(out.end(), buf_.begin() + pos_, buf_.begin() + pos_ + take);
    pos_ += take;
  }
  return out;
}

BitVec Rng::bits(size_t n) {
  Bytes raw = bytes((n + 7) / 8);
  return bytes_to_bits(raw, n);
}

uint64_t Rng::uniform(uint64_t n) {
  if (n == 0) throw ShapeError("uniform: empty range");
  // Rejection sampling over the smallest covering power of two.
  uint64_t mask = ~uint64_t(0);
  if (n > 1) {
    unsigned bits_needed = 64 - unsigned(__builtin_clzll(n - 1));
    mask = bits_needed == 64 ? ~uint64_t(0) : ((uint64_t(1) << bits_needed) - 1);
  } else {
    return 0;
  }
  for (;;) {
    Bytes raw = bytes(8);
    uint64_t v = 0;
    std::memcpy(&v, raw.data(), 8);
    v &= mask;
    if (v < n) return v;
  }
}

Rng Rng::split(const std::string& path) { return Rng(seed_, path); }

Bytes ske_encrypt(const Bytes& key, const Bytes& plaintext, Rng& rng) {
  Bytes nonce = rng.bytes(kKeyBytes);
  Bytes stream = prf(key, "ske-stream", nonce, plaintext.size());
  Bytes ct;
  ct.reserve(ske_ct_len(plaintext.size()));
  ct.insert(ct.end(), nonce.begin(), nonce.end());
  for (size_t i = 0; i < plaintext.size(); ++i)
    ct.push_back(plaintext[i] ^ stream[i]);
  Bytes body(ct.begin(), ct.end());
  Bytes tag = prf(key, "ske-tag", body, kTagBytes);
  ct.insert(ct.end(), tag.begin(), tag.end());
  return ct;
}

Bytes ske_decrypt(const Bytes& key, const Bytes& ciphertext) {
  if (ciphertext.size() < kKeyBytes + kTagBytes)
    throw FormatError("ske: ciphertext too short");
  size_t body_len = ciphertext.size() - kTagBytes;
  Bytes body(ciphertext.begin(), ciphertext.begin() + body_len);
  Bytes tag = prf(key, "ske-tag", body, kTagBytes);
  if (!std::equal(tag.begin(), tag.end(), ciphertext.begin() + body_len))
    throw AuthError("ske: tag mismatch");
  Bytes nonce(ciphertext.begin(), ciphertext.begin() + kKeyBytes);
  size_t pt_len = body_len - kKeyBytes;
  Bytes stream = prf(key, "ske-stream", nonce, pt_len);
  Bytes pt(pt_len);
  for (size_t i = 0; i < pt_len; ++i)
    pt[i] = ciphertext[kKeyBytes + i] ^ stream[i];
  return pt;
}

BitVec otp_cyclic(const BitVec& key, const BitVec& data) {
  if (key.empty()) throw ShapeError("otp_cyclic: empty key");
  BitVec out(data.size());
  for (size_t i = 0; i < data.size(); ++i)
    out[i] = data[i] ^ key[i % key.size()];
  return out;
}

BitVec toeplitz_extract(const Bytes& seed, const BitVec& input, size_t out_len) {
  if (input.empty()) throw ShapeError("toeplitz_extract: empty input");
  // Diagonal string of length in+out-1; row r reads diag[r .. r+in-1].
  size_t diag_len = input.size() + out_len - 1;
  Bytes diag_bytes = prf(seed, "toeplitz-diag", {}, (diag_len + 7) / 8);
  BitVec diag = bytes_to_bits(diag_bytes, diag_len);
  BitVec out(out_len);
  for (size_t r = 0; r < out_len; ++r) {
    uint8_t acc = 0;
    for (size_t c = 0; c < input.size(); ++c) acc ^= diag[r + c] & input[c];
    out[r] = acc;
  }
  return out;
}

}  // namespace feskl
