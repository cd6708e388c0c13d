// SPDX-License-Identifier: Apache-2.0
//
// Bit-exact serialization for every artifact the CLI touches. Files are
// containers: magic "FESKL1", version u16 LE, kind u8, then length-prefixed
// sections (tag u16, len u32 LE, bytes). Quantum state never lives in these
// files — CD ciphertexts store qubit handle ids referencing a QStore file.
#pragma once

#include <utility>

#include "feskl/common.hpp"
#include "feskl/leasing.hpp"
#include "feskl/skfe.hpp"
#include "feskl/upgrades.hpp"

namespace feskl {

enum class ArtifactKind : uint8_t {
  Msk = 1,
  Fsk = 2,
  Vk = 3,
  Ct = 4,
  Cert = 5,
  QstoreRef = 6,
};

enum class Level : uint16_t {
  Base = 1,
  Indexed = 2,
  Sbskl = 3,
  Skl = 4,
  Adaptive = 5,
};

// One section whose tag is the level id and whose payload is the object.
Bytes container_wrap(ArtifactKind kind, Level level, const Bytes& payload);
// Throws FormatError on bad magic/version/kind or inconsistent lengths.
std::pair<Level, Bytes> container_unwrap(ArtifactKind expected_kind,
                                         const Bytes& data);

// Base layer.
Bytes serialize_skfe_msk(const SkfeMasterKey& msk);
SkfeMasterKey deserialize_skfe_msk(const Bytes& data);
Bytes serialize_skfe_ct(const SkfeCiphertext& ct);
SkfeCiphertext deserialize_skfe_ct(const Bytes& data);

// Indexed layer.
Bytes serialize_indexed_msk(const IndexedMsk& msk);
IndexedMsk deserialize_indexed_msk(const Bytes& data);
Bytes serialize_leased_key(const LeasedKey& key);
LeasedKey deserialize_leased_key(const Bytes& data);
Bytes serialize_leased_vk(const LeasedVk& vk);
LeasedVk deserialize_leased_vk(const Bytes& data);
Bytes serialize_indexed_ct(const IndexedCiphertext& ct);
IndexedCiphertext deserialize_indexed_ct(const Bytes& data);
Bytes serialize_leased_cert(const LeasedCert& cert);
LeasedCert deserialize_leased_cert(const Bytes& data);

// Static-bound layer.
Bytes serialize_sbskl_msk(const SbsklMsk& msk);
SbsklMsk deserialize_sbskl_msk(const Bytes& data);
Bytes serialize_sbskl_key(const SbsklLeasedKey& key);
SbsklLeasedKey deserialize_sbskl_key(const Bytes& data);
Bytes serialize_sbskl_vk(const SbsklVk& vk);
SbsklVk deserialize_sbskl_vk(const Bytes& data);
Bytes serialize_sbskl_ct(const SbsklCiphertext& ct);
SbsklCiphertext deserialize_sbskl_ct(const Bytes& data);
Bytes serialize_sbskl_cert(const SbsklCert& cert);
SbsklCert deserialize_sbskl_cert(const Bytes& data);

// Dynamic layer.
Bytes serialize_skl_msk(const SklMsk& msk);
SklMsk deserialize_skl_msk(const Bytes& data);
Bytes serialize_skl_key(const SklLeasedKey& key);
SklLeasedKey deserialize_skl_key(const Bytes& data);
Bytes serialize_skl_vk(const SklVk& vk);
SklVk deserialize_skl_vk(const Bytes& data);
Bytes serialize_skl_ct(const SklCiphertext& ct);
SklCiphertext deserialize_skl_ct(const Bytes& data);
Bytes serialize_skl_cert(const SklCert& cert);
SklCert deserialize_skl_cert(const Bytes& data);

// Adaptive layer (vk and cert reuse the dynamic-layer forms).
Bytes serialize_ada_msk(const AdaMsk& msk);
AdaMsk deserialize_ada_msk(const Bytes& data);
Bytes serialize_ada_key(const AdaKey& key);
AdaKey deserialize_ada_key(const Bytes& data);
Bytes serialize_ada_ct(const AdaCiphertext& ct);
AdaCiphertext deserialize_ada_ct(const Bytes& data);

// File helpers used by the CLI; writes go through write-temp-rename.
Bytes read_file(const std::string& path);
void write_file_atomic(const std::string& path, const Bytes& data);

}  // namespace feskl
