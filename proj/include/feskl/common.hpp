// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace feskl {

using Bytes = std::vector<uint8_t>;

// Bit vectors are stored one bit per byte (values 0/1). Sizes at desk scale
// never justify packing, and unpacked bits keep circuit code readable.
using BitVec = std::vector<uint8_t>;

// ---------------------------------------------------------------------------
// Error taxonomy. The CLI maps these onto exit codes.

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Wrong input shape or length mismatch.
struct ShapeError : Error {
  using Error::Error;
};

// Collusion bound or single-use latch exhausted.
struct QuotaError : Error {
  using Error::Error;
};

// Circuit exceeds the configured gate/input budget.
struct BudgetError : Error {
  using Error::Error;
};

// Second consumption of a linear qubit handle.
struct LinearityError : Error {
  using Error::Error;
};

// Authenticated decryption or garbled-row decode failed.
struct AuthError : Error {
  using Error::Error;
};

// SetHSS decode is missing labels for some element.
struct CoverageError : Error {
  using Error::Error;
};

// Conflicting labels for the same element (tampered share).
struct TamperError : Error {
  using Error::Error;
};

// Operation would require enumerating an astronomically large index space.
struct FeasibilityError : Error {
  using Error::Error;
};

// Test-only capability (unsafe_clone) used without its flag.
struct CapabilityError : Error {
  using Error::Error;
};

// Parameter sampling failed (e.g. set cover infeasible).
struct ParameterError : Error {
  using Error::Error;
};

// Malformed serialized data.
struct FormatError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Bit/byte helpers.

inline BitVec xor_bits(const BitVec& a, const BitVec& b) {
  if (a.size() != b.size()) throw ShapeError("xor_bits: length mismatch");
  BitVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

inline Bytes bits_to_bytes(const BitVec& bits) {
  Bytes out((bits.size() + 7) / 8, 0);
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out[i / 8] |= uint8_t(1u << (i % 8));
  return out;
}

inline BitVec bytes_to_bits(const Bytes& bytes, size_t n_bits) {
  if (n_bits > bytes.size() * 8) throw ShapeError("bytes_to_bits: too few bytes");
  BitVec out(n_bits);
  for (size_t i = 0; i < n_bits; ++i)
    out[i] = (bytes[i / 8] >> (i % 8)) & 1u;
  return out;
}

inline std::string bits_to_string(const BitVec& bits) {
  std::string s;
  s.reserve(bits.size());
  for (uint8_t b : bits) s.push_back(b ? '1' : '0');
  return s;
}

inline BitVec string_to_bits(const std::string& s) {
  BitVec out;
  out.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw FormatError("bit string: expected 0/1");
    out.push_back(c == '1');
  }
  return out;
}

inline size_t bits_for(size_t n) {
  size_t b = 1;
  while ((size_t(1) << b) < n) ++b;
  return b;
}

}  // namespace feskl
