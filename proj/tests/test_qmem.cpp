// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <string>

#include "feskl/qmem.hpp"

using namespace feskl;

TEST_CASE("matching-basis measurement returns the prepared bit") {
  QStore store(1);
  for (uint8_t basis : {kBasisComputational, kBasisHadamard})
    for (uint8_t bit = 0; bit < 2; ++bit) {
      QubitHandle h = store.prepare(bit, basis);
      CHECK(store.measure(h, basis) == bit);
    }
}

TEST_CASE("mismatched-basis measurement is a fresh coin") {
  QStore store(2);
  size_t ones = 0;
  const size_t kN = 2000;
  for (size_t t = 0; t < kN; ++t) {
    QubitHandle h = store.prepare(1, kBasisComputational);
    ones += store.measure(h, kBasisHadamard);
  }
  CHECK(ones > kN * 2 / 5);
  CHECK(ones < kN * 3 / 5);
}

TEST_CASE("every second consumption throws LinearityError") {
  QStore store(3);
  QubitHandle h = store.prepare(1, kBasisComputational);
  CHECK_FALSE(store.consumed(h));
  store.measure(h, kBasisComputational);
  CHECK(store.consumed(h));
  CHECK_THROWS_AS(store.measure(h, kBasisComputational), LinearityError);
  CHECK_THROWS_AS(store.measure(h, kBasisHadamard), LinearityError);
}

TEST_CASE("unknown handles are rejected") {
  QStore store(4);
  CHECK_THROWS_AS(store.measure(QubitHandle{999}, kBasisComputational), Error);
}

TEST_CASE("unsafe_clone is gated by the capability flag") {
  QStore plain(5);
  QubitHandle h = plain.prepare(0, kBasisHadamard);
  CHECK_THROWS_AS(plain.unsafe_clone(h), CapabilityError);

  QStore cloning(6, true);
  QubitHandle g = cloning.prepare(1, kBasisHadamard);
  QubitHandle g2 = cloning.unsafe_clone(g);
  CHECK(g2.id != g.id);
  CHECK(cloning.measure(g, kBasisHadamard) == 1);
  CHECK(cloning.measure(g2, kBasisHadamard) == 1);
  // Cloning a consumed handle is itself a linearity violation.
  CHECK_THROWS_AS(cloning.unsafe_clone(g), LinearityError);
}

TEST_CASE("save/load roundtrip preserves state bit-exactly") {
  QStore store(7);
  std::vector<QubitHandle> hs;
  Rng rng(7);
  for (int i = 0; i < 20; ++i)
    hs.push_back(store.prepare(rng.bit(), rng.bit()));
  store.measure(hs[3], kBasisComputational);
  store.measure(hs[11], kBasisHadamard);

  Bytes blob = store.save();
  QStore again = QStore::load(blob, 7);
  CHECK(again.size() == store.size());
  CHECK(again.consumed(hs[3]));
  CHECK(again.consumed(hs[11]));
  CHECK_FALSE(again.consumed(hs[0]));
  CHECK(again.save() == blob);
  // The loaded store enforces linearity exactly like the original.
  CHECK_THROWS_AS(again.measure(hs[3], kBasisComputational), LinearityError);
  CHECK(again.measure(hs[0], kBasisComputational) ==
        store.measure(hs[0], kBasisComputational));
}

TEST_CASE("the save format is branded as a simulation") {
  QStore store(8);
  store.prepare(1, kBasisComputational);
  Bytes blob = store.save();
  std::string text(blob.begin(), blob.end());
  CHECK(text.find("QSIM1") != std::string::npos);
  CHECK(text.find("SIMULATION ONLY") != std::string::npos);
  Bytes bad = blob;
  bad[0] ^= 0xff;
  CHECK_THROWS_AS(QStore::load(bad), FormatError);
  CHECK_THROWS_AS(QStore::load(Bytes{}), FormatError);
}
