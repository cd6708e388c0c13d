// SPDX-License-Identifier: Apache-2.0
//
// SIMULATION ONLY: a classical simulator of conjugate-coding (BB84) product
// states. Handles are linear (consume-once), which is what stands in for
// no-cloning. unsafe_clone exists solely so security games can demonstrate
// the attack that physics forbids.
#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>

#include "feskl/common.hpp"
#include "feskl/crypto.hpp"

namespace feskl {

constexpr uint8_t kBasisComputational = 0;
constexpr uint8_t kBasisHadamard = 1;

struct QubitHandle {
  uint64_t id = 0;
  bool operator==(const QubitHandle&) const = default;
};

class QStore {
 public:
  explicit QStore(uint64_t seed = 0, bool allow_unsafe_clone = false)
      : rng_(Rng(seed).split("qstore")), allow_unsafe_clone_(allow_unsafe_clone) {}

  QubitHandle prepare(uint8_t bit, uint8_t basis);

  // Matching basis returns the prepared bit; mismatched basis returns a fresh
  // uniform bit. The handle is consumed either way. Throws LinearityError on
  // a consumed handle.
  uint8_t measure(const QubitHandle& h, uint8_t basis);

  // Test-only. Throws CapabilityError unless the store was created with
  // allow_unsafe_clone.
  QubitHandle unsafe_clone(const QubitHandle& h);

  bool consumed(const QubitHandle& h) const;
  size_t size() const { return entries_.size(); }
  bool allow_unsafe_clone() const { return allow_unsafe_clone_; }

  // File format: magic "QSIM1", banner, u64 entry count, then records
  // (id u64 LE, bit u8, basis u8, consumed u8). Loading without the magic
  // fails with FormatError.
  Bytes save() const;
  static QStore load(const Bytes& data, uint64_t seed = 0,
                     bool allow_unsafe_clone = false);
  void save_file(const std::string& path) const;  // write-temp-rename
  static QStore load_file(const std::string& path, uint64_t seed = 0,
                          bool allow_unsafe_clone = false);

 private:
  struct Entry {
    uint8_t bit;
    uint8_t basis;
    bool consumed;
  };
  Entry& lookup(const QubitHandle& h);
  std::unordered_map<uint64_t, Entry> entries_;
  uint64_t next_id_ = 1;
  Rng rng_;
  bool allow_unsafe_clone_;
};

}  // namespace feskl
