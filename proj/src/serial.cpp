// SPDX-License-Identifier: Apache-2.0
#include "feskl/serial.hpp"

#include <cstdio>
#include <fstream>

namespace feskl {

namespace {

constexpr char kMagic[6] = {'F', 'E', 'S', 'K', 'L', '1'};
constexpr uint16_t kVersion = 1;

struct Writer {
  Bytes out;

  void u8(uint8_t v) { out.push_back(v); }
  void u16(uint16_t v) {
    for (int i = 0; i < 2; ++i) out.push_back(uint8_t(v >> (8 * i)));
  }
  void u32(uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(uint8_t(v >> (8 * i)));
  }
  void u64(uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(uint8_t(v >> (8 * i)));
  }
  void f64(double v) {
    uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    __builtin_memcpy(&bits, &v, 8);
    u64(bits);
  }
  void bytes(const Bytes& b) {
    u32(uint32_t(b.size()));
    out.insert(out.end(), b.begin(), b.end());
  }
  void bits(const BitVec& b) {
    u32(uint32_t(b.size()));
    Bytes packed = bits_to_bytes(b);
    out.insert(out.end(), packed.begin(), packed.end());
  }
};

struct Reader {
  const Bytes& data;
  size_t pos = 0;

  explicit Reader(const Bytes& d) : data(d) {}

  void need(size_t n) const {
    if (pos + n > data.size()) throw FormatError("serial: truncated data");
  }
  uint8_t u8() {
    need(1);
    return data[pos++];
  }
  uint16_t u16() {
    need(2);
    uint16_t v = uint16_t(data[pos]) | uint16_t(data[pos + 1]) << 8;
    pos += 2;
    return v;
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t(data[pos + i]) << (8 * i);
    pos += 4;
    return v;
  }
  uint64_t u64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(data[pos + i]) << (8 * i);
    pos += 8;
    return v;
  }
  double f64() {
    uint64_t bits = u64();
    double v;
    __builtin_memcpy(&v, &bits, 8);
    return v;
  }
  Bytes bytes() {
    uint32_t n = u32();
    need(n);
    Bytes b(data.begin() + pos, data.begin() + pos + n);
    pos += n;
    return b;
  }
  BitVec bits() {
    uint32_t n = u32();
    size_t packed = (n + 7) / 8;
    need(packed);
    BitVec b = bytes_to_bits(Bytes(data.begin() + pos, data.begin() + pos + packed), n);
    pos += packed;
    return b;
  }
  void done() const {
    if (pos != data.size()) throw FormatError("serial: trailing data");
  }
};

// --------------------------------------------------------------- primitives

void put_budget(Writer& w, const CircuitBudget& b) {
  w.u32(b.n_in);
  w.u32(b.n_gates_max);
  w.u32(b.n_out);
}

CircuitBudget get_budget(Reader& r) {
  CircuitBudget b;
  b.n_in = r.u32();
  b.n_gates_max = r.u32();
  b.n_out = r.u32();
  return b;
}

void put_skfe_cfg(Writer& w, const SkfeConfig& c) {
  w.u8(uint8_t(c.backend));
  put_budget(w, c.budget);
  w.u32(uint32_t(c.kappa_bits));
}

SkfeConfig get_skfe_cfg(Reader& r) {
  SkfeConfig c;
  uint8_t b = r.u8();
  if (b > 1) throw FormatError("serial: bad backend");
  c.backend = SkfeBackend(b);
  c.budget = get_budget(r);
  c.kappa_bits = r.u32();
  return c;
}

void put_leasing_cfg(Writer& w, const LeasingConfig& c) {
  put_skfe_cfg(w, c.skfe);
  w.u32(uint32_t(c.cd.kq));
  w.u32(uint32_t(c.m));
  w.u32(c.ell);
  w.f64(c.p);
  w.f64(c.d);
  w.u32(uint32_t(c.combiner_kappa));
  w.u32(uint32_t(c.lambda_k));
  w.u32(c.lambda_levels);
  w.u64(c.kg_feasibility_max);
}

LeasingConfig get_leasing_cfg(Reader& r) {
  LeasingConfig c;
  c.skfe = get_skfe_cfg(r);
  c.cd.kq = r.u32();
  c.m = r.u32();
  c.ell = r.u32();
  c.p = r.f64();
  c.d = r.f64();
  c.combiner_kappa = r.u32();
  c.lambda_k = r.u32();
  c.lambda_levels = r.u32();
  c.kg_feasibility_max = r.u64();
  return c;
}

void put_set_params(Writer& w, const SetParams& p) {
  w.f64(p.p);
  w.u32(p.ell);
  w.u32(uint32_t(p.sets.size()));
  for (const auto& s : p.sets) {
    w.u32(uint32_t(s.size()));
    for (uint32_t e : s) w.u32(e);
  }
}

SetParams get_set_params(Reader& r) {
  SetParams p;
  p.p = r.f64();
  p.ell = r.u32();
  p.sets.resize(r.u32());
  for (auto& s : p.sets) {
    s.resize(r.u32());
    for (uint32_t& e : s) e = r.u32();
  }
  return p;
}

void put_label(Writer& w, const WireLabel& l) {
  w.bytes(l.bits);
  w.u8(l.point);
}

WireLabel get_label(Reader& r) {
  WireLabel l;
  l.bits = r.bytes();
  l.point = r.u8() & 1u;
  return l;
}

void put_gc(Writer& w, const GarbledCircuit& gc) {
  w.u32(gc.n_in);
  w.u32(gc.n_out);
  w.u32(uint32_t(gc.kappa_bits));
  w.u32(uint32_t(gc.gates.size()));
  for (const GarbledGate& g : gc.gates) {
    w.u8(uint8_t(g.kind));
    w.u32(g.a);
    w.u32(g.b);
    w.u8(uint8_t(g.rows.size()));
    for (const Bytes& row : g.rows) w.bytes(row);
  }
  w.u32(uint32_t(gc.output_wires.size()));
  for (uint32_t o : gc.output_wires) w.u32(o);
  w.u32(uint32_t(gc.output_map.size()));
  for (const auto& e : gc.output_map) {
    w.bytes(e.digest[0]);
    w.bytes(e.digest[1]);
    w.u8(e.bit[0]);
    w.u8(e.bit[1]);
  }
}

GarbledCircuit get_gc(Reader& r) {
  GarbledCircuit gc;
  gc.n_in = r.u32();
  gc.n_out = r.u32();
  gc.kappa_bits = r.u32();
  gc.gates.resize(r.u32());
  for (GarbledGate& g : gc.gates) {
    uint8_t kind = r.u8();
    if (kind > 2) throw FormatError("serial: bad garbled gate kind");
    g.kind = GarbledGateKind(kind);
    g.a = r.u32();
    g.b = r.u32();
    g.rows.resize(r.u8());
    for (Bytes& row : g.rows) row = r.bytes();
  }
  gc.output_wires.resize(r.u32());
  for (uint32_t& o : gc.output_wires) o = r.u32();
  gc.output_map.resize(r.u32());
  for (auto& e : gc.output_map) {
    e.digest[0] = r.bytes();
    e.digest[1] = r.bytes();
    e.bit[0] = r.u8();
    e.bit[1] = r.u8();
  }
  return gc;
}

void put_cd_ct(Writer& w, const CDCiphertext& ct) {
  w.bits(ct.classical);
  w.u32(uint32_t(ct.qubits.size()));
  for (const QubitHandle& h : ct.qubits) w.u64(h.id);
  w.bytes(ct.wrapped_key);
}

CDCiphertext get_cd_ct(Reader& r) {
  CDCiphertext ct;
  ct.classical = r.bits();
  ct.qubits.resize(r.u32());
  for (QubitHandle& h : ct.qubits) h.id = r.u64();
  ct.wrapped_key = r.bytes();
  return ct;
}

void put_cd_vk(Writer& w, const CDVerificationKey& vk) {
  w.bits(vk.theta);
  w.bits(vk.a_check);
}

CDVerificationKey get_cd_vk(Reader& r) {
  CDVerificationKey vk;
  vk.theta = r.bits();
  vk.a_check = r.bits();
  return vk;
}

void put_circuit(Writer& w, const Circuit& c) { w.bytes(circuit_to_bytes(c)); }

Circuit get_circuit(Reader& r) { return circuit_from_bytes(r.bytes()); }

// ------------------------------------------------------------- skfe objects

void put_skfe_ct(Writer& w, const SkfeCiphertext& ct) {
  w.u8(uint8_t(ct.backend));
  w.u32(uint32_t(ct.payloads.size()));
  for (const auto& p : ct.payloads) {
    put_gc(w, p.gc);
    w.u32(uint32_t(p.x_labels.size()));
    for (const WireLabel& l : p.x_labels) put_label(w, l);
    w.u32(uint32_t(p.label_cts.size()));
    for (const auto& pair : p.label_cts) {
      w.bytes(pair[0]);
      w.bytes(pair[1]);
    }
  }
  w.bytes(ct.ref_ct);
}

SkfeCiphertext get_skfe_ct(Reader& r) {
  SkfeCiphertext ct;
  uint8_t b = r.u8();
  if (b > 1) throw FormatError("serial: bad backend");
  ct.backend = SkfeBackend(b);
  ct.payloads.resize(r.u32());
  for (auto& p : ct.payloads) {
    p.gc = get_gc(r);
    p.x_labels.resize(r.u32());
    for (WireLabel& l : p.x_labels) l = get_label(r);
    p.label_cts.resize(r.u32());
    for (auto& pair : p.label_cts) {
      pair[0] = r.bytes();
      pair[1] = r.bytes();
    }
  }
  ct.ref_ct = r.bytes();
  return ct;
}

// ----------------------------------------------------------- leasing layers

void put_indexed_msk(Writer& w, const IndexedMsk& m) {
  put_leasing_cfg(w, m.cfg);
  w.u64(m.q);
  w.u64(m.N);
  w.bytes(m.K);
  w.u64(m.kg_count);
}

IndexedMsk get_indexed_msk(Reader& r) {
  IndexedMsk m;
  m.cfg = get_leasing_cfg(r);
  m.q = size_t(r.u64());
  m.N = r.u64();
  m.K = r.bytes();
  m.kg_count = size_t(r.u64());
  return m;
}

void put_leased_key(Writer& w, const LeasedKey& k) {
  w.u64(k.N);
  w.u32(uint32_t(k.entries.size()));
  for (const CDCiphertext& e : k.entries) put_cd_ct(w, e);
  w.u8(k.annex ? 1 : 0);
  if (k.annex) put_circuit(w, *k.annex);
}

LeasedKey get_leased_key(Reader& r) {
  LeasedKey k;
  k.N = r.u64();
  k.entries.resize(r.u32());
  for (CDCiphertext& e : k.entries) e = get_cd_ct(r);
  if (r.u8()) k.annex = std::make_shared<const Circuit>(get_circuit(r));
  return k;
}

void put_leased_vk(Writer& w, const LeasedVk& vk) {
  w.u32(uint32_t(vk.vks.size()));
  for (const CDVerificationKey& v : vk.vks) put_cd_vk(w, v);
}

LeasedVk get_leased_vk(Reader& r) {
  LeasedVk vk;
  vk.vks.resize(r.u32());
  for (CDVerificationKey& v : vk.vks) v = get_cd_vk(r);
  return vk;
}

void put_indexed_ct(Writer& w, const IndexedCiphertext& ct) {
  w.u64(ct.j);
  put_skfe_ct(w, ct.ct);
  w.bytes(ct.cd_sk);
}

IndexedCiphertext get_indexed_ct(Reader& r) {
  IndexedCiphertext ct;
  ct.j = r.u64();
  ct.ct = get_skfe_ct(r);
  ct.cd_sk = r.bytes();
  return ct;
}

void put_leased_cert(Writer& w, const LeasedCert& c) {
  w.u32(uint32_t(c.size()));
  for (const Certificate& cert : c) w.bits(cert.cert);
}

LeasedCert get_leased_cert(Reader& r) {
  LeasedCert c(r.u32());
  for (Certificate& cert : c) cert.cert = r.bits();
  return c;
}

void put_sbskl_msk(Writer& w, const SbsklMsk& m) {
  put_leasing_cfg(w, m.cfg);
  w.u64(m.q);
  w.u64(m.n);
  w.u64(m.N);
  put_set_params(w, m.params);
  w.u32(uint32_t(m.subs.size()));
  for (const IndexedMsk& s : m.subs) put_indexed_msk(w, s);
  w.bits(m.K_ske);
}

SbsklMsk get_sbskl_msk(Reader& r) {
  SbsklMsk m;
  m.cfg = get_leasing_cfg(r);
  m.q = size_t(r.u64());
  m.n = r.u64();
  m.N = r.u64();
  m.params = get_set_params(r);
  m.subs.resize(r.u32());
  for (IndexedMsk& s : m.subs) s = get_indexed_msk(r);
  m.K_ske = r.bits();
  return m;
}

void put_sbskl_key(Writer& w, const SbsklLeasedKey& k) {
  put_set_params(w, k.params);
  w.u32(k.n_in_f);
  w.u32(uint32_t(k.combiner_kappa));
  w.u8(k.combiner ? 1 : 0);
  if (k.combiner) put_gc(w, *k.combiner);
  w.u32(uint32_t(k.subs.size()));
  for (const LeasedKey& s : k.subs) put_leased_key(w, s);
}

SbsklLeasedKey get_sbskl_key(Reader& r) {
  SbsklLeasedKey k;
  k.params = get_set_params(r);
  k.n_in_f = r.u32();
  k.combiner_kappa = r.u32();
  if (r.u8()) k.combiner = std::make_shared<const GarbledCircuit>(get_gc(r));
  k.subs.resize(r.u32());
  for (LeasedKey& s : k.subs) s = get_leased_key(r);
  return k;
}

void put_sbskl_vk(Writer& w, const SbsklVk& vk) {
  w.u32(uint32_t(vk.subs.size()));
  for (const LeasedVk& v : vk.subs) put_leased_vk(w, v);
}

SbsklVk get_sbskl_vk(Reader& r) {
  SbsklVk vk;
  vk.subs.resize(r.u32());
  for (LeasedVk& v : vk.subs) v = get_leased_vk(r);
  return vk;
}

void put_sbskl_ct(Writer& w, const SbsklCiphertext& ct) {
  w.u32(uint32_t(ct.subs.size()));
  for (const IndexedCiphertext& c : ct.subs) put_indexed_ct(w, c);
}

SbsklCiphertext get_sbskl_ct(Reader& r) {
  SbsklCiphertext ct;
  ct.subs.resize(r.u32());
  for (IndexedCiphertext& c : ct.subs) c = get_indexed_ct(r);
  return ct;
}

void put_sbskl_cert(Writer& w, const SbsklCert& c) {
  w.u32(uint32_t(c.size()));
  for (const LeasedCert& lc : c) put_leased_cert(w, lc);
}

SbsklCert get_sbskl_cert(Reader& r) {
  SbsklCert c(r.u32());
  for (LeasedCert& lc : c) lc = get_leased_cert(r);
  return c;
}

void put_skl_msk(Writer& w, const SklMsk& m) {
  put_leasing_cfg(w, m.cfg);
  w.u64(m.q);
  w.bytes(m.seed);
  w.u32(uint32_t(m.levels.size()));
  for (const auto& [k, lvl] : m.levels) {
    w.u32(k);
    put_sbskl_msk(w, lvl);
  }
}

SklMsk get_skl_msk(Reader& r) {
  SklMsk m;
  m.cfg = get_leasing_cfg(r);
  m.q = size_t(r.u64());
  m.seed = r.bytes();
  uint32_t n = r.u32();
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t k = r.u32();
    m.levels.emplace(k, get_sbskl_msk(r));
  }
  return m;
}

void put_skl_key(Writer& w, const SklLeasedKey& k) {
  w.u32(k.k_prime);
  put_sbskl_key(w, k.key);
}

SklLeasedKey get_skl_key(Reader& r) {
  SklLeasedKey k;
  k.k_prime = r.u32();
  k.key = get_sbskl_key(r);
  return k;
}

void put_skl_vk(Writer& w, const SklVk& vk) {
  w.u32(vk.k_prime);
  put_sbskl_vk(w, vk.vk);
}

SklVk get_skl_vk(Reader& r) {
  SklVk vk;
  vk.k_prime = r.u32();
  vk.vk = get_sbskl_vk(r);
  return vk;
}

void put_skl_ct(Writer& w, const SklCiphertext& ct) {
  w.u32(uint32_t(ct.levels.size()));
  for (const auto& [k, c] : ct.levels) {
    w.u32(k);
    put_sbskl_ct(w, c);
  }
}

SklCiphertext get_skl_ct(Reader& r) {
  SklCiphertext ct;
  uint32_t n = r.u32();
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t k = r.u32();
    ct.levels.emplace(k, get_sbskl_ct(r));
  }
  return ct;
}

void put_skl_cert(Writer& w, const SklCert& c) {
  w.u32(c.k_prime);
  put_sbskl_cert(w, c.certs);
}

SklCert get_skl_cert(Reader& r) {
  SklCert c;
  c.k_prime = r.u32();
  c.certs = get_sbskl_cert(r);
  return c;
}

void put_ada_cfg(Writer& w, const AdaConfig& c) {
  put_budget(w, c.budget);
  w.u32(uint32_t(c.one_ct_kappa));
  w.u32(uint32_t(c.ell2));
  w.u32(uint32_t(c.lambda_k));
  w.u32(uint32_t(c.lambda_ske));
  put_leasing_cfg(w, c.sel);
}

AdaConfig get_ada_cfg(Reader& r) {
  AdaConfig c;
  c.budget = get_budget(r);
  c.one_ct_kappa = r.u32();
  c.ell2 = r.u32();
  c.lambda_k = r.u32();
  c.lambda_ske = r.u32();
  c.sel = get_leasing_cfg(r);
  return c;
}

}  // namespace

// --------------------------------------------------------------- container

Bytes container_wrap(ArtifactKind kind, Level level, const Bytes& payload) {
  Writer w;
  w.out.insert(w.out.end(), kMagic, kMagic + 6);
  w.u16(kVersion);
  w.u8(uint8_t(kind));
  w.u16(uint16_t(level));
  w.u32(uint32_t(payload.size()));
  w.out.insert(w.out.end(), payload.begin(), payload.end());
  return w.out;
}

std::pair<Level, Bytes> container_unwrap(ArtifactKind expected_kind,
                                         const Bytes& data) {
  Reader r(data);
  r.need(6);
  for (int i = 0; i < 6; ++i)
    if (data[i] != uint8_t(kMagic[i]))
      throw FormatError("container: bad magic");
  r.pos = 6;
  if (r.u16() != kVersion) throw FormatError("container: unsupported version");
  uint8_t kind = r.u8();
  if (kind < 1 || kind > 6) throw FormatError("container: unknown kind");
  if (kind != uint8_t(expected_kind))
    throw FormatError("container: wrong artifact kind for this operation");
  uint16_t level = r.u16();
  if (level < 1 || level > 5) throw FormatError("container: unknown level");
  Bytes payload;
  uint32_t n = r.u32();
  r.need(n);
  payload.assign(data.begin() + r.pos, data.begin() + r.pos + n);
  r.pos += n;
  r.done();
  return {Level(level), std::move(payload)};
}

// ----------------------------------------------------------- entry points

#define FESKL_SERIAL_PAIR(name, type, putter, getter)      \
  Bytes serialize_##name(const type& v) {                  \
    Writer w;                                              \
    putter(w, v);                                          \
    return w.out;                                          \
  }                                                        \
  type deserialize_##name(const Bytes& data) {             \
    Reader r(data);                                        \
    type v = getter(r);                                    \
    r.done();                                              \
    return v;                                              \
  }

Bytes serialize_skfe_msk(const SkfeMasterKey& msk) {
  Writer w;
  put_skfe_cfg(w, msk.config());
  w.u64(msk.q());
  w.u64(msk.counter());
  w.bytes(msk.seed());
  return w.out;
}

SkfeMasterKey deserialize_skfe_msk(const Bytes& data) {
  Reader r(data);
  SkfeConfig cfg = get_skfe_cfg(r);
  size_t q = size_t(r.u64());
  size_t counter = size_t(r.u64());
  Bytes seed = r.bytes();
  r.done();
  return SkfeMasterKey::restore(cfg, q, counter, std::move(seed));
}

FESKL_SERIAL_PAIR(skfe_ct, SkfeCiphertext, put_skfe_ct, get_skfe_ct)
FESKL_SERIAL_PAIR(indexed_msk, IndexedMsk, put_indexed_msk, get_indexed_msk)
FESKL_SERIAL_PAIR(leased_key, LeasedKey, put_leased_key, get_leased_key)
FESKL_SERIAL_PAIR(leased_vk, LeasedVk, put_leased_vk, get_leased_vk)
FESKL_SERIAL_PAIR(indexed_ct, IndexedCiphertext, put_indexed_ct, get_indexed_ct)
FESKL_SERIAL_PAIR(leased_cert, LeasedCert, put_leased_cert, get_leased_cert)
FESKL_SERIAL_PAIR(sbskl_msk, SbsklMsk, put_sbskl_msk, get_sbskl_msk)
FESKL_SERIAL_PAIR(sbskl_key, SbsklLeasedKey, put_sbskl_key, get_sbskl_key)
FESKL_SERIAL_PAIR(sbskl_vk, SbsklVk, put_sbskl_vk, get_sbskl_vk)
FESKL_SERIAL_PAIR(sbskl_ct, SbsklCiphertext, put_sbskl_ct, get_sbskl_ct)
FESKL_SERIAL_PAIR(sbskl_cert, SbsklCert, put_sbskl_cert, get_sbskl_cert)
FESKL_SERIAL_PAIR(skl_msk, SklMsk, put_skl_msk, get_skl_msk)
FESKL_SERIAL_PAIR(skl_key, SklLeasedKey, put_skl_key, get_skl_key)
FESKL_SERIAL_PAIR(skl_vk, SklVk, put_skl_vk, get_skl_vk)
FESKL_SERIAL_PAIR(skl_ct, SklCiphertext, put_skl_ct, get_skl_ct)
FESKL_SERIAL_PAIR(skl_cert, SklCert, put_skl_cert, get_skl_cert)

#undef FESKL_SERIAL_PAIR

Bytes serialize_ada_msk(const AdaMsk& msk) {
  Writer w;
  put_ada_cfg(w, msk.cfg);
  put_skl_msk(w, msk.sel);
  return w.out;
}

AdaMsk deserialize_ada_msk(const Bytes& data) {
  Reader r(data);
  AdaMsk m;
  m.cfg = get_ada_cfg(r);
  m.sel = get_skl_msk(r);
  r.done();
  return m;
}

Bytes serialize_ada_key(const AdaKey& key) {
  Writer w;
  w.bits(key.tau);
  w.bits(key.ct_ske);
  put_skl_key(w, key.sel_key);
  return w.out;
}

AdaKey deserialize_ada_key(const Bytes& data) {
  Reader r(data);
  AdaKey k;
  k.tau = r.bits();
  k.ct_ske = r.bits();
  k.sel_key = get_skl_key(r);
  r.done();
  return k;
}

Bytes serialize_ada_ct(const AdaCiphertext& ct) {
  Writer w;
  put_gc(w, ct.oct.gc);
  w.u32(uint32_t(ct.oct.x_labels.size()));
  for (const WireLabel& l : ct.oct.x_labels) put_label(w, l);
  put_skl_ct(w, ct.sct);
  return w.out;
}

AdaCiphertext deserialize_ada_ct(const Bytes& data) {
  Reader r(data);
  AdaCiphertext ct;
  ct.oct.gc = get_gc(r);
  ct.oct.x_labels.resize(r.u32());
  for (WireLabel& l : ct.oct.x_labels) l = get_label(r);
  ct.sct = get_skl_ct(r);
  r.done();
  return ct;
}

// ------------------------------------------------------------------- files

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open file: " + path);
  Bytes data((std::istreambuf_iterator<char>(in)),
             std::istreambuf_iterator<char>());
  return data;
}

void write_file_atomic(const std::string& path, const Bytes& data) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write file: " + tmp);
    out.write(reinterpret_cast<const char*>(data.data()),
              std::streamsize(data.size()));
    if (!out) throw FormatError("short write: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw FormatError("cannot rename into place: " + path);
}

}  // namespace feskl
