// SPDX-License-Identifier: Apache-2.0
#include "feskl/qmem.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace feskl {

namespace {
constexpr char kMagic[5] = {'Q', 'S', 'I', 'M', '1'};
constexpr char kBanner[] = "SIMULATION ONLY";
}  // namespace

QubitHandle QStore::prepare(uint8_t bit, uint8_t basis) {
  if (bit > 1 || basis > 1) throw ShapeError("prepare: bit/basis must be 0 or 1");
  uint64_t id = next_id_++;
  entries_[id] = Entry{bit, basis, false};
  return QubitHandle{id};
}

QStore::Entry& QStore::lookup(const QubitHandle& h) {
  auto it = entries_.find(h.id);
  if (it == entries_.end()) throw LinearityError("qubit handle unknown");
  return it->second;
}

uint8_t QStore::measure(const QubitHandle& h, uint8_t basis) {
  if (basis > 1) throw ShapeError("measure: basis must be 0 or 1");
  Entry& e = lookup(h);
  if (e.consumed) throw LinearityError("qubit handle already consumed");
  e.consumed = true;
  if (e.basis == basis) return e.bit;
  return rng_.bit();
}

QubitHandle QStore::unsafe_clone(const QubitHandle& h) {
  if (!allow_unsafe_clone_)
    throw CapabilityError("unsafe_clone requires the allow-unsafe-clone flag");
  Entry& e = lookup(h);
  if (e.consumed) throw LinearityError("qubit handle already consumed");
  uint64_t id = next_id_++;
  entries_[id] = Entry{e.bit, e.basis, false};
  return QubitHandle{id};
}

bool QStore::consumed(const QubitHandle& h) const {
  auto it = entries_.find(h.id);
  if (it == entries_.end()) throw LinearityError("qubit handle unknown");
  return it->second.consumed;
}

Bytes QStore::save() const {
  Bytes out;
  out.insert(out.end(), kMagic, kMagic + 5);
  out.insert(out.end(), kBanner, kBanner + sizeof(kBanner) - 1);
  out.push_back(0);
  auto put64 = [&](uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(uint8_t(v >> (8 * i)));
  };
  put64(entries_.size());
  put64(next_id_);
  // Deterministic order for byte-identical round trips.
  std::vector<uint64_t> ids;
  ids.reserve(entries_.size());
  for (const auto& [id, e] : entries_) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  for (uint64_t id : ids) {
    const Entry& e = entries_.at(id);
    put64(id);
    out.push_back(e.bit);
    out.push_back(e.basis);
    out.push_back(e.consumed ? 1 : 0);
  }
  return out;
}

QStore QStore::load(const Bytes& data, uint64_t seed, bool allow_unsafe_clone) {
  size_t header = 5 + sizeof(kBanner);
  if (data.size() < header || std::memcmp(data.data(), kMagic, 5) != 0)
    throw FormatError("qstore: bad magic");
  if (std::memcmp(data.data() + 5, kBanner, sizeof(kBanner) - 1) != 0 ||
      data[5 + sizeof(kBanner) - 1] != 0)
    throw FormatError("qstore: missing simulation banner");
  size_t pos = header;
  auto get64 = [&]() {
    if (pos + 8 > data.size()) throw FormatError("qstore: truncated");
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(data[pos + i]) << (8 * i);
    pos += 8;
    return v;
  };
  uint64_t count = get64();
  QStore store(seed, allow_unsafe_clone);
  store.next_id_ = get64();
  for (uint64_t i = 0; i < count; ++i) {
    uint64_t id = get64();
    if (pos + 3 > data.size()) throw FormatError("qstore: truncated");
    Entry e{data[pos], data[pos + 1], data[pos + 2] != 0};
    pos += 3;
    store.entries_[id] = e;
  }
  if (pos != data.size()) throw FormatError("qstore: trailing bytes");
  return store;
}

void QStore::save_file(const std::string& path) const {
  Bytes data = save();
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("qstore: cannot write " + tmp);
    out.write(reinterpret_cast<const char*>(data.data()),
              std::streamsize(data.size()));
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error("qstore: rename failed for " + path);
}

QStore QStore::load_file(const std::string& path, uint64_t seed,
                         bool allow_unsafe_clone) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("qstore: cannot open " + path);
  Bytes data((std::istreambuf_iterator<char>(in)),
             std::istreambuf_iterator<char>());
  return load(data, seed, allow_unsafe_clone);
}

}  // namespace feskl
