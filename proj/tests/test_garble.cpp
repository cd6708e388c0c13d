// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "feskl/garble.hpp"

using namespace feskl;

TEST_CASE("garbled evaluation matches plain evaluation") {
  CircuitBudget budget{4, 8, 2};
  Rng rng(61);
  for (size_t kappa : {size_t(64), size_t(128)}) {
    for (int t = 0; t < 20; ++t) {
      Circuit c = random_circuit(budget, rng);
      GarbleResult gr = garble(c, kappa, rng);
      for (int s = 0; s < 4; ++s) {
        BitVec x = rng.bits(budget.n_in);
        BitVec got =
            eval_garbled(gr.gc, select_labels(gr.input_labels, x));
        CHECK(got == eval(c, x));
      }
    }
  }
}

TEST_CASE("constant-only circuits garble correctly") {
  CircuitBuilder b(1);
  Circuit c = b.finish({b.const0(), b.const1()});
  Rng rng(67);
  GarbleResult gr = garble(c, 64, rng);
  BitVec got = eval_garbled(gr.gc, select_labels(gr.input_labels, BitVec{0}));
  CHECK(got == BitVec{0, 1});
}

TEST_CASE("an inconsistent input label is detected") {
  // XOR chain over all inputs, so every input label keys some garbled row.
  CircuitBuilder b(4);
  uint32_t w = b.xor_(0, 1);
  w = b.xor_(w, 2);
  w = b.xor_(w, 3);
  Circuit c = b.finish({w});
  Rng rng(71);
  GarbleResult gr = garble(c, 128, rng);
  BitVec x = rng.bits(4);
  std::vector<WireLabel> labels = select_labels(gr.input_labels, x);
  labels[1].bits[3] ^= 0x40;
  CHECK_THROWS_AS(eval_garbled(gr.gc, labels), AuthError);
  // Wrong label count is a shape problem, not an auth one.
  labels.pop_back();
  labels.pop_back();
  CHECK_THROWS_AS(eval_garbled(gr.gc, labels), Error);
}

TEST_CASE("output decoding accepts exactly the two valid labels") {
  CircuitBuilder b(2);
  Circuit c = b.finish({b.xor_(0, 1)});
  Rng rng(73);
  GarbleResult gr = garble(c, 128, rng);
  for (uint64_t v = 0; v < 4; ++v) {
    BitVec x{uint8_t(v & 1), uint8_t((v >> 1) & 1)};
    std::vector<WireLabel> out =
        eval_garbled_labels(gr.gc, select_labels(gr.input_labels, x));
    REQUIRE(out.size() == 1);
    CHECK(gr.gc.decode_output(0, out[0]) == (x[0] ^ x[1]));
  }
  CHECK_THROWS_AS(gr.gc.decode_output(0, random_label(128, rng)), AuthError);
}

TEST_CASE("select_labels picks by bit value") {
  Rng rng(79);
  std::vector<InputLabelPair> pairs;
  for (int i = 0; i < 3; ++i)
    pairs.push_back({random_label(64, rng), random_label(64, rng)});
  BitVec x{1, 0, 1};
  std::vector<WireLabel> sel = select_labels(pairs, x);
  CHECK(sel[0] == pairs[0].l1);
  CHECK(sel[1] == pairs[1].l0);
  CHECK(sel[2] == pairs[2].l1);
}

TEST_CASE("garbled circuit digests separate distinct garblings") {
  CircuitBudget budget{4, 8, 1};
  Rng rng(83);
  Circuit c = random_circuit(budget, rng);
  GarbleResult a = garble(c, 128, rng);
  GarbleResult b = garble(c, 128, rng);
  CHECK(a.gc.digest() == a.gc.digest());
  CHECK(a.gc.digest() != b.gc.digest());
}

TEST_CASE("labels carry kappa/8 bytes") {
  Rng rng(89);
  CHECK(random_label(128, rng).bits.size() == 16);
  CHECK(random_label(64, rng).bits.size() == 8);
}
