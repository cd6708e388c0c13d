// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "feskl/crypto.hpp"

using namespace feskl;

namespace {

Bytes from_hex(const std::string& hex) {
  Bytes out;
  for (size_t i = 0; i + 1 < hex.size(); i += 2)
    out.push_back(uint8_t(std::stoul(hex.substr(i, 2), nullptr, 16)));
  return out;
}

}  // namespace

TEST_CASE("sha256 known answer vectors") {
  CHECK(sha256({}) ==
        from_hex("e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b78"
                 "52b855"));
  Bytes abc{'a', 'b', 'c'};
  CHECK(sha256(abc) ==
        from_hex("ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f2"
                 "0015ad"));
}

TEST_CASE("prf is deterministic and separates labels, messages and lengths") {
  Bytes key(16, 0x5a);
  Bytes msg{1, 2, 3};
  CHECK(prf(key, "a", msg, 32) == prf(key, "a", msg, 32));
  CHECK(prf(key, "a", msg, 32) != prf(key, "b", msg, 32));
  CHECK(prf(key, "a", msg, 32) != prf(key, "a", Bytes{1, 2, 4}, 32));
  Bytes other(16, 0x5b);
  CHECK(prf(key, "a", msg, 32) != prf(other, "a", msg, 32));
  CHECK(prf(key, "a", msg, 100).size() == 100);
  CHECK(prf(key, "a", msg, 1).size() == 1);
}

TEST_CASE("rng streams are deterministic per seed and diverge under split") {
  Rng a(123), b(123), c(124);
  CHECK(a.bytes(64) == b.bytes(64));
  CHECK(Rng(123).bytes(64) != c.bytes(64));

  Rng root(9);
  Rng s1 = root.split("left");
  Rng s2 = root.split("right");
  CHECK(s1.bytes(32) != s2.bytes(32));
  // A split child is stable regardless of how much the parent advanced.
  Rng r1(77), r2(77);
  r2.bytes(100);
  CHECK(r1.split("x").bytes(16) == r2.split("x").bytes(16));
}

TEST_CASE("rng uniform respects its bound and covers small ranges") {
  Rng rng(31);
  CHECK(rng.uniform(1) == 0);
  std::vector<size_t> counts(5, 0);
  for (int t = 0; t < 5000; ++t) {
    uint64_t v = rng.uniform(5);
    REQUIRE(v < 5);
    counts[v]++;
  }
  for (size_t c : counts) CHECK(c > 700);  // 1000 expected per bucket
  BitVec bits = rng.bits(1000);
  size_t ones = 0;
  for (uint8_t b : bits) {
    REQUIRE(b <= 1);
    ones += b;
  }
  CHECK(ones > 400);
  CHECK(ones < 600);
}

TEST_CASE("ske roundtrip across sizes, with correct ciphertext length") {
  Rng rng(37);
  for (size_t len : {size_t(0), size_t(1), size_t(16), size_t(33), size_t(64)}) {
    Bytes key = rng.key();
    Bytes pt = rng.bytes(len);
    Bytes ct = ske_encrypt(key, pt, rng);
    CHECK(ct.size() == ske_ct_len(len));
    CHECK(ske_decrypt(key, ct) == pt);
  }
}

TEST_CASE("ske rejects tampering anywhere in the ciphertext") {
  Rng rng(41);
  Bytes key = rng.key();
  Bytes pt = rng.bytes(24);
  Bytes ct = ske_encrypt(key, pt, rng);
  for (size_t pos : {size_t(0), kKeyBytes + 3, ct.size() - 1}) {
    Bytes bad = ct;
    bad[pos] ^= 1;
    CHECK_THROWS_AS(ske_decrypt(key, bad), AuthError);
  }
  Bytes wrong_key = rng.key();
  CHECK_THROWS_AS(ske_decrypt(wrong_key, ct), AuthError);
  CHECK_THROWS_AS(ske_decrypt(key, Bytes(5)), Error);
}

TEST_CASE("ske ciphertexts of equal plaintexts differ across encryptions") {
  Rng rng(43);
  Bytes key = rng.key();
  Bytes pt = rng.bytes(8);
  CHECK(ske_encrypt(key, pt, rng) != ske_encrypt(key, pt, rng));
}

TEST_CASE("cyclic otp is an involution for any key/data widths") {
  Rng rng(47);
  for (size_t klen : {size_t(1), size_t(8), size_t(20)}) {
    for (size_t dlen : {size_t(1), size_t(8), size_t(20), size_t(100)}) {
      BitVec k = rng.bits(klen);
      BitVec d = rng.bits(dlen);
      BitVec ct = otp_cyclic(k, d);
      CHECK(ct.size() == d.size());
      CHECK(otp_cyclic(k, ct) == d);
      // Bitwise definition: ct[j] = d[j] xor k[j mod |k|].
      for (size_t j = 0; j < dlen; ++j) CHECK(ct[j] == (d[j] ^ k[j % klen]));
    }
  }
}

TEST_CASE("toeplitz extractor is deterministic and GF(2)-linear") {
  Rng rng(53);
  Bytes seed = rng.bytes(32);
  BitVec a = rng.bits(96), b = rng.bits(96);
  CHECK(toeplitz_extract(seed, a, 40) == toeplitz_extract(seed, a, 40));
  // Linearity over the input is the defining property of a Toeplitz matrix
  // multiply, and an independent oracle for the implementation.
  BitVec lhs = toeplitz_extract(seed, xor_bits(a, b), 40);
  BitVec rhs =
      xor_bits(toeplitz_extract(seed, a, 40), toeplitz_extract(seed, b, 40));
  CHECK(lhs == rhs);
  CHECK(toeplitz_extract(seed, a, 7).size() == 7);
  Bytes seed2 = rng.bytes(32);
  CHECK(toeplitz_extract(seed, a, 40) != toeplitz_extract(seed2, a, 40));
}
