// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "feskl/sethss.hpp"

using namespace feskl;

TEST_CASE("set_gen produces covering families of nonempty sets") {
  Rng rng(301);
  for (size_t m : {size_t(2), size_t(3), size_t(8)}) {
    for (uint32_t ell : {uint32_t(4), uint32_t(8), uint32_t(16)}) {
      for (int t = 0; t < 20; ++t) {
        SetParams params = set_gen(m, ell, 0.125, 0.5, rng);
        CHECK(params.m() == m);
        CHECK(params.ell == ell);
        CHECK_NOTHROW(params.validate());
        std::vector<uint8_t> covered(ell, 0);
        for (const auto& set : params.sets) {
          CHECK_FALSE(set.empty());
          for (uint32_t e : set) {
            REQUIRE(e < ell);
            covered[e] = 1;
          }
        }
        for (uint8_t c : covered) CHECK(c == 1);
      }
    }
  }
}

TEST_CASE("validate rejects broken set systems") {
  SetParams params;
  params.ell = 4;
  params.sets = {{0, 1}, {2}};  // element 3 uncovered
  CHECK_THROWS_AS(params.validate(), ShapeError);
  params.sets = {{0, 1, 2, 3}, {}};  // empty set
  CHECK_THROWS_AS(params.validate(), ShapeError);
  params.sets = {{0, 1, 2, 3}, {4}};  // out of range
  CHECK_THROWS_AS(params.validate(), ShapeError);
}

TEST_CASE("input shares XOR back to the input") {
  Rng rng(307);
  SetParams params = set_gen(3, 8, 0.125, 0.5, rng);
  BitVec x = rng.bits(6);
  std::vector<InputShare> shares = inp_encode(params, x, rng);
  REQUIRE(shares.size() == params.m());

  // Shares agree on commonly held pieces, and the pieces XOR to x.
  std::vector<BitVec> pieces(params.ell);
  for (size_t i = 0; i < shares.size(); ++i) {
    CHECK(shares[i].i == i);
    for (uint32_t e : params.sets[i]) {
      const BitVec& piece = shares[i].pieces.at(e);
      REQUIRE(piece.size() == x.size());
      if (pieces[e].empty())
        pieces[e] = piece;
      else
        CHECK(pieces[e] == piece);
    }
  }
  BitVec acc(x.size(), 0);
  for (const BitVec& piece : pieces) {
    REQUIRE_FALSE(piece.empty());  // coverage puts every piece somewhere
    acc = xor_bits(acc, piece);
  }
  CHECK(acc == x);
}

TEST_CASE("end-to-end share evaluation decodes to f(x)") {
  CircuitBudget budget{4, 8, 2};
  Rng rng(311);
  for (size_t kappa : {size_t(16), size_t(128)}) {
    for (int t = 0; t < 10; ++t) {
      SetParams params = set_gen(3, 8, 0.125, 0.5, rng);
      Circuit f = random_circuit(budget, rng);
      BitVec x = rng.bits(budget.n_in);
      std::vector<InputShare> in = inp_encode(params, x, rng);
      std::vector<FunctionShare> fn = func_encode(params, f, kappa, rng);
      std::vector<ShareEvaluation> evals;
      for (size_t i = 0; i < params.m(); ++i)
        evals.push_back(share_eval(fn[i], in[i]));
      CHECK(decode(params, evals) == eval(f, x));
    }
  }
}

TEST_CASE("only share zero carries the combiner; the rest hold its digest") {
  CircuitBudget budget{4, 8, 1};
  Rng rng(313);
  SetParams params = set_gen(3, 8, 0.125, 0.5, rng);
  Circuit f = random_circuit(budget, rng);
  std::vector<FunctionShare> fn = func_encode(params, f, 32, rng);
  REQUIRE(bool(fn[0].gc));
  for (size_t i = 1; i < fn.size(); ++i) {
    CHECK(fn[i].gc_digest == fn[0].gc->digest());
  }
}

TEST_CASE("decode demands full coverage and the combiner") {
  CircuitBudget budget{4, 8, 1};
  Rng rng(317);
  SetParams params = set_gen(3, 8, 0.125, 0.5, rng);
  Circuit f = random_circuit(budget, rng);
  BitVec x = rng.bits(budget.n_in);
  std::vector<InputShare> in = inp_encode(params, x, rng);
  std::vector<FunctionShare> fn = func_encode(params, f, 32, rng);
  std::vector<ShareEvaluation> evals;
  for (size_t i = 0; i < params.m(); ++i)
    evals.push_back(share_eval(fn[i], in[i]));

  {
    // Dropping the combiner-bearing evaluation loses the garbled circuit.
    std::vector<ShareEvaluation> partial(evals.begin() + 1, evals.end());
    CHECK_THROWS_AS(decode(params, partial), CoverageError);
  }
  {
    // Remove one element's labels everywhere: coverage fails.
    uint32_t e = params.sets[1].front();
    std::vector<ShareEvaluation> gutted = evals;
    for (ShareEvaluation& ev : gutted) ev.labels.erase(e);
    CHECK_THROWS_AS(decode(params, gutted), CoverageError);
  }
}

TEST_CASE("decode flags conflicting labels as tampering") {
  CircuitBudget budget{4, 8, 1};
  Rng rng(331);
  // Find a set system where two parties share an element, then corrupt one
  // party's copy of it.
  for (int attempt = 0; attempt < 50; ++attempt) {
    SetParams params = set_gen(3, 8, 0.125, 0.7, rng);
    int owner_a = -1, owner_b = -1;
    uint32_t shared_e = 0;
    for (uint32_t e = 0; e < params.ell && owner_b < 0; ++e) {
      owner_a = -1;
      for (size_t i = 0; i < params.m(); ++i)
        for (uint32_t v : params.sets[i])
          if (v == e) {
            if (owner_a < 0)
              owner_a = int(i);
            else if (owner_b < 0) {
              owner_b = int(i);
              shared_e = e;
            }
          }
    }
    if (owner_b < 0) continue;

    Circuit f = random_circuit(budget, rng);
    BitVec x = rng.bits(budget.n_in);
    std::vector<InputShare> in = inp_encode(params, x, rng);
    std::vector<FunctionShare> fn = func_encode(params, f, 32, rng);
    std::vector<ShareEvaluation> evals;
    for (size_t i = 0; i < params.m(); ++i)
      evals.push_back(share_eval(fn[i], in[i]));
    evals[size_t(owner_b)].labels.at(shared_e)[0].bits[0] ^= 1;
    CHECK_THROWS_AS(decode(params, evals), TamperError);
    return;
  }
  FAIL("no overlapping set system sampled in 50 attempts");
}

TEST_CASE("share_eval rejects mismatched shares") {
  CircuitBudget budget{4, 8, 1};
  Rng rng(337);
  SetParams params = set_gen(3, 8, 0.125, 0.5, rng);
  Circuit f = random_circuit(budget, rng);
  BitVec x = rng.bits(budget.n_in);
  std::vector<InputShare> in = inp_encode(params, x, rng);
  std::vector<FunctionShare> fn = func_encode(params, f, 32, rng);
  in[0].i = 2;  // index mismatch against fn[0]
  CHECK_THROWS_AS(share_eval(fn[0], in[0]), ShapeError);
}

TEST_CASE("unmarked-element frequency matches the exact closed form") {
  // Independent oracle for the coalition statistics, with NO cap on the
  // coalition size: every party is corrupted independently with probability
  // p, and a coalition of size s covers a given element with conditional
  // rate r(s) = (1 - (1-d)^s) / (1 - (1-d)^m). Some element stays unmarked
  // unless the coalition covers all ell of them.
  const size_t m = 8;
  const uint32_t ell = 16;
  const double d = 0.5, p = 0.125;

  auto log_choose = [](size_t n, size_t k) {
    return std::lgamma(double(n + 1)) - std::lgamma(double(k + 1)) -
           std::lgamma(double(n - k + 1));
  };
  double denom = 1.0 - std::pow(1.0 - d, double(m));
  double closed = 0.0;
  for (size_t s = 0; s <= m; ++s) {
    double pi = std::exp(log_choose(m, s) + double(s) * std::log(p) +
                         double(m - s) * std::log1p(-p));
    double unmarked;
    if (s == 0) {
      unmarked = 1.0;
    } else {
      double r = (1.0 - std::pow(1.0 - d, double(s))) / denom;
      unmarked = 1.0 - std::pow(r, double(ell));
    }
    closed += pi * unmarked;
  }
  // The uncapped probability sits just below 0.99 at these parameters.
  CHECK(closed == doctest::Approx(0.9862).epsilon(0.001));

  Rng rng(347);
  const size_t kTrials = 10000;
  const uint64_t kScale = 1u << 20;
  const uint64_t kThresh = uint64_t(p * double(kScale));
  size_t hits = 0;
  for (size_t t = 0; t < kTrials; ++t) {
    SetParams params = set_gen(m, ell, p, d, rng);
    std::vector<uint8_t> covered(ell, 0);
    for (size_t i = 0; i < m; ++i)
      if (rng.uniform(kScale) < kThresh)
        for (uint32_t e : params.sets[i]) covered[e] = 1;
    bool unmarked = false;
    for (uint32_t e = 0; e < ell; ++e) unmarked |= !covered[e];
    hits += unmarked;
  }
  double freq = double(hits) / double(kTrials);
  double sigma = std::sqrt(closed * (1.0 - closed) / double(kTrials));
  CHECK(std::fabs(freq - closed) <= 3.0 * sigma);
}
