// SPDX-License-Identifier: Apache-2.0
//
// Yao-style garbling with point-and-permute. Rows are encrypted under a
// PRF keyed by the incoming labels with a zero-block authenticity check, so
// evaluation under an inconsistent label fails detectably.
#pragma once

#include <cstdint>
#include <vector>

#include "feskl/circuit.hpp"
#include "feskl/common.hpp"
#include "feskl/crypto.hpp"

namespace feskl {

constexpr size_t kDefaultKappaBits = 128;

struct WireLabel {
  Bytes bits;     // kappa/8 bytes
  uint8_t point;  // permute bit
  bool operator==(const WireLabel&) const = default;
};

struct InputLabelPair {
  WireLabel l0, l1;
  const WireLabel& select(uint8_t v) const { return v ? l1 : l0; }
};

enum class GarbledGateKind : uint8_t { Binary = 0, Unary = 1, Const = 2 };

struct GarbledGate {
  GarbledGateKind kind;
  uint32_t a = kNoWire;
  uint32_t b = kNoWire;
  // Binary: 4 rows indexed by (point_a, point_b); Unary: 2 rows by point_a;
  // Const: 1 plaintext row carrying the output label.
  std::vector<Bytes> rows;
};

struct GarbledCircuit {
  uint32_t n_in = 0;
  uint32_t n_out = 0;
  size_t kappa_bits = kDefaultKappaBits;
  std::vector<GarbledGate> gates;
  std::vector<uint32_t> output_wires;
  // Per output wire, digests of the two valid labels ordered by point bit,
  // and the cleartext bit each one maps to.
  struct OutputEntry {
    Bytes digest[2];
    uint8_t bit[2];
  };
  std::vector<OutputEntry> output_map;

  // Maps an output-position label to its bit; throws AuthError if the label
  // is not one of the two valid ones.
  uint8_t decode_output(size_t out_idx, const WireLabel& l) const;
  Bytes digest() const;
};

struct GarbleResult {
  GarbledCircuit gc;
  std::vector<InputLabelPair> input_labels;
};

GarbleResult garble(const Circuit& c, size_t kappa_bits, Rng& rng);

// One label per input wire; throws AuthError (with overwhelming probability)
// if any label is inconsistent.
BitVec eval_garbled(const GarbledCircuit& gc,
                    const std::vector<WireLabel>& labels);

// Walk the garbled gates with the given input labels and return the raw
// output-wire labels (used by SetHSS decode, which maps labels itself).
std::vector<WireLabel> eval_garbled_labels(const GarbledCircuit& gc,
                                           const std::vector<WireLabel>& labels);

std::vector<WireLabel> select_labels(const std::vector<InputLabelPair>& pairs,
                                     const BitVec& x);

WireLabel random_label(size_t kappa_bits, Rng& rng);

}  // namespace feskl
