// SPDX-License-Identifier: Apache-2.0
//
// Set homomorphic secret sharing: the input is XOR-shared into ell pieces,
// the function share is a single garbled combiner c(x_1,...,x_ell) =
// f(xor of the pieces), and each party i holds the label tables for the
// pieces in its set T_i. Decoding needs every element covered, which is what
// the unmarked-element property denies a corrupted coalition.
#pragma once

#include <map>
#include <memory>

#include "feskl/circuit.hpp"
#include "feskl/common.hpp"
#include "feskl/crypto.hpp"
#include "feskl/garble.hpp"

namespace feskl {

struct SetParams {
  double p = 0.125;  // corruption probability bound
  uint32_t ell = 8;  // element count
  std::vector<std::vector<uint32_t>> sets;  // T_i subseteq [ell], m of them

  size_t m() const { return sets.size(); }
  // Throws ShapeError if some T_i is empty, out of range, or the union
  // misses an element.
  void validate() const;
};

// Each T_i contains each element independently with probability d, resampled
// until every set is nonempty and the union covers [ell]. Throws
// ParameterError after 1000 failed resamples.
SetParams set_gen(size_t m, uint32_t ell, double p, double d, Rng& rng);

struct InputShare {
  uint32_t i = 0;
  std::map<uint32_t, BitVec> pieces;  // e in T_i -> x_e
};

struct FunctionShare {
  uint32_t i = 0;
  // The combiner is one object shared by everyone: share 0 carries it, the
  // others reference it by digest.
  std::shared_ptr<const GarbledCircuit> gc;
  Bytes gc_digest;
  std::map<uint32_t, std::vector<InputLabelPair>> label_tables;  // e in T_i
};

struct ShareEvaluation {
  uint32_t i = 0;
  std::map<uint32_t, std::vector<WireLabel>> labels;  // e in T_i
  std::shared_ptr<const GarbledCircuit> gc;  // present iff i = 0
};

// XOR-shares x into ell pieces and hands share i the pieces on T_i.
std::vector<InputShare> inp_encode(const SetParams& params, const BitVec& x,
                                   Rng& rng);

// Garbles the combiner (input block e on wires [e*n_in, (e+1)*n_in)) and
// distributes the per-block label tables by set membership.
std::vector<FunctionShare> func_encode(const SetParams& params, const Circuit& f,
                                       size_t kappa_bits, Rng& rng);

// Selects one label per bit of each owned piece. Throws ShapeError on index
// or piece-set mismatch.
ShareEvaluation share_eval(const FunctionShare& fs, const InputShare& s);

// Recombines the evaluations: CoverageError if some element has no labels or
// the combiner is missing, TamperError if two evaluations disagree on an
// element's labels.
BitVec decode(const SetParams& params, const std::vector<ShareEvaluation>& evals);

}  // namespace feskl
