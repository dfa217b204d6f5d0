// Copyright 2026 The cefe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cefe/cd.hpp"

#include <sstream>

namespace cefe::cd {

using qsim::Basis;
using qsim::PauliMask;
using qsim::QubitPermutation;

// ---------------------------------------------------------------------------
// OT-CD

CdKey CdKey::from_bits(std::span<const std::uint8_t> bits) {
  if (bits.size() % 2 != 0) throw LengthError("CdKey::from_bits: odd length");
  const std::size_t n = bits.size() / 2;
  return CdKey{slice(bits, 0, n), slice(bits, n, n)};
}

CdKey cd_keygen(std::size_t n, std::size_t w, Rng& rng) {
  if (w > n) throw LengthError("cd_keygen: w exceeds n");
  CdKey k;
  k.theta.assign(n, 0);
  for (auto i : rng.subset(n, w)) k.theta[i] = 1;
  k.r = rng.bits(n);
  return k;
}

QuantumRegister cd_enc(const CdKey& key, std::span<const std::uint8_t> m) {
  require_length(m.size(), key.message_bits(), "cd_enc");
  Bits payload = key.r;
  std::size_t j = 0;
  for (std::size_t i = 0; i < key.size(); ++i)
    if (!key.theta[i]) payload[i] ^= m[j++] & 1u;
  return QuantumRegister::prepare_bb84(payload, key.theta);
}

Bits cd_dec(const CdKey& key, QuantumRegister& reg, Rng& rng) {
  require_length(reg.size(), key.size(), "cd_dec");
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < key.size(); ++i)
    if (!key.theta[i]) pos.push_back(i);
  std::vector<Basis> bases(pos.size(), Basis::Computational);
  Bits out = reg.measure(pos, bases, rng);
  for (std::size_t j = 0; j < pos.size(); ++j) out[j] ^= key.r[pos[j]];
  return out;
}

Bits cd_del(QuantumRegister& reg, Rng& rng) {
  Bits cert = reg.measure_all(Basis::Hadamard, rng);
  reg.consume();
  return cert;
}

bool cd_vrfy(const CdKey& key, std::span<const std::uint8_t> cert) {
  if (cert.size() != key.size()) return false;
  for (std::size_t i = 0; i < key.size(); ++i)
    if (key.theta[i] && cert[i] != key.r[i]) return false;
  return true;
}

Bits cd_modify(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, std::span<const std::uint8_t> cert) {
  require_length(a.size(), cert.size(), "cd_modify a");
  return xor_bits(cert, b);
}

// ---------------------------------------------------------------------------
// Backends

BackendCiphertext backend_enc(const EncKey& key, std::span<const std::uint8_t> m, Rng& rng) {
  if (const auto* k = std::get_if<base::SkeKey>(&key)) return base::ske_enc(*k, m, rng);
  return base::lwe_enc(std::get<base::LwePublicKey>(key), m, rng);
}

std::optional<Bits> backend_dec(const DecKey& key, const BackendCiphertext& ct) {
  if (const auto* k = std::get_if<base::SkeKey>(&key)) {
    const auto* c = std::get_if<base::SkeCiphertext>(&ct);
    if (!c) return std::nullopt;
    return base::ske_dec(*k, *c);
  }
  const auto* c = std::get_if<base::LweCiphertext>(&ct);
  const auto& sk = std::get<base::LweSecretKey>(key);
  if (!c || c->u.size() != c->v.size() * sk.params.n) return std::nullopt;
  return base::lwe_dec(sk, *c);
}

// ---------------------------------------------------------------------------
// Configuration

CeConfig CeConfig::qrom(std::size_t lambda, std::size_t w) {
  CeConfig c;
  c.variant = Variant::Qrom;
  c.lambda = lambda;
  c.w = w;
  return c;
}

CeConfig CeConfig::css(gf2::CssPair pair, std::size_t p) {
  CeConfig c;
  c.variant = Variant::Css;
  c.pair = std::make_shared<const gf2::CssPair>(std::move(pair));
  c.p = p;
  return c;
}

CeConfig CeConfig::steane() { return css(gf2::CssPair::steane(), 7); }

namespace {

std::size_t css_blocks(const CeConfig& cfg, std::size_t message_bits) {
  if (!cfg.pair) throw Error("CSS configuration without a code pair");
  const std::size_t chunk = cfg.pair->message_bits();
  if (message_bits == 0 || message_bits % chunk != 0) {
    throw LengthError("CSS variant: message length must be a positive multiple of k1 - k2 = " +
                      std::to_string(chunk));
  }
  return message_bits / chunk;
}

}  // namespace

std::size_t CeConfig::quantum_size(std::size_t message_bits) const {
  if (variant == Variant::Qrom) return message_bits + w;
  return css_blocks(*this, message_bits) * (p + pair->length());
}

std::size_t CeCiphertext::quantum_size() const {
  std::size_t n = 0;
  for (const auto& r : quantum) n += r.size();
  return n;
}

// ---------------------------------------------------------------------------
// QROM variant

CeBundle ce_enc_qrom(const CeConfig& cfg, const EncKey& key, std::span<const std::uint8_t> m, base::Qrom& oracle,
                     Rng& rng) {
  CeBundle out;
  const CdKey cdk = cd_keygen(m.size() + cfg.w, cfg.w, rng);
  const Bits big_r = rng.bits(cfg.lambda);
  out.ct.variant = Variant::Qrom;
  out.ct.backend = backend_enc(key, big_r, rng);
  const Bits sk_bits = cdk.to_bits();
  out.ct.h = xor_bits(oracle.query(big_r, sk_bits.size()), sk_bits);
  out.ct.quantum.push_back(cd_enc(cdk, m));
  out.vk.variant = Variant::Qrom;
  out.vk.cd = cdk;
  return out;
}

namespace {

std::optional<Bits> dec_qrom(const CeConfig& cfg, const DecKey& key, CeCiphertext& ct, base::Qrom& oracle, Rng& rng) {
  auto big_r = backend_dec(key, ct.backend);
  if (!big_r || ct.quantum.size() != 1 || ct.h.size() != 2 * ct.quantum[0].size()) return std::nullopt;
  const CdKey cdk = CdKey::from_bits(xor_bits(oracle.query(*big_r, ct.h.size()), ct.h));
  if (cdk.w() != cfg.w) return std::nullopt;
  return cd_dec(cdk, ct.quantum[0], rng);
}

// ---------------------------------------------------------------------------
// CSS variant

// U_Q† sends position j < p to a_j and position p + j to b_j.
QubitPermutation u_q_dagger(const std::vector<std::size_t>& q_set, std::size_t total) {
  std::vector<std::uint8_t> in_q(total, 0);
  for (auto a : q_set) in_q[a] = 1;
  std::vector<std::size_t> image;
  image.reserve(total);
  for (auto a : q_set) image.push_back(a);
  for (std::size_t i = 0; i < total; ++i)
    if (!in_q[i]) image.push_back(i);
  return QubitPermutation(std::move(image));
}

struct CssSecrets {
  Bits b;
  std::vector<std::size_t> q;
  Bits r;
  Bits y;
};

Bits pack_secrets(const CssSecrets& s, std::size_t total) {
  Bits ind(total, 0);
  for (auto a : s.q) ind[a] = 1;
  Bits out = concat(s.b, ind);
  out = concat(out, s.r);
  return concat(out, s.y);
}

std::optional<CssSecrets> unpack_secrets(const Bits& bits, std::size_t p, std::size_t q) {
  if (bits.size() != 3 * p + 2 * q) return std::nullopt;
  CssSecrets s;
  s.b = slice(bits, 0, p);
  Bits ind = slice(bits, p, p + q);
  for (std::size_t i = 0; i < p + q; ++i)
    if (ind[i]) s.q.push_back(i);
  if (s.q.size() != p) return std::nullopt;
  s.r = slice(bits, 2 * p + q, p);
  s.y = slice(bits, 3 * p + q, q);
  return s;
}

}  // namespace

CeBundle ce_enc_css(const CeConfig& cfg, const EncKey& key, std::span<const std::uint8_t> m, Rng& rng) {
  const std::size_t blocks = css_blocks(cfg, m.size());
  const gf2::CssPair& pair = *cfg.pair;
  const std::size_t p = cfg.p;
  const std::size_t q = pair.length();
  const std::size_t chunk = pair.message_bits();

  CeBundle out;
  out.ct.variant = Variant::Css;
  out.vk.variant = Variant::Css;
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    CssSecrets s;
    s.b = rng.bits(p);
    s.q = rng.subset(p + q, p);
    s.y = gf2::sample_coset_space(pair, gf2::CosetSpace::C1ModC2, rng);
    Bits u = gf2::sample_coset_space(pair, gf2::CosetSpace::AmbientModC1, rng);
    s.r = rng.bits(p);
    Bits x = gf2::sample_coset_space(pair, gf2::CosetSpace::C1ModC2, rng);
    Bits w = gf2::sample_coset_space(pair, gf2::CosetSpace::C2, rng);

    Bits lower = xor_bits(xor_bits(x, w), u);
    auto reg = QuantumRegister::prepare_bb84(concat(s.r, lower), concat(s.b, Bits(q, 0)));
    reg.apply_permutation(u_q_dagger(s.q, p + q));

    const Bits m_rep = pair.encode_message(slice(m, blk * chunk, chunk));
    CssBlock cb;
    cb.h = gf2::mod_c(xor_bits(xor_bits(m_rep, x), s.y), pair.c2());
    cb.u = std::move(u);
    cb.backend = backend_enc(key, pack_secrets(s, p + q), rng);
    out.ct.blocks.push_back(std::move(cb));
    out.ct.quantum.push_back(std::move(reg));
    out.vk.blocks.push_back(CssVkBlock{s.b, s.q, s.r});
  }
  return out;
}

namespace {

std::optional<Bits> dec_css(const CeConfig& cfg, const DecKey& key, CeCiphertext& ct, Rng& rng) {
  if (!cfg.pair || ct.blocks.size() != ct.quantum.size() || ct.blocks.empty()) return std::nullopt;
  const gf2::CssPair& pair = *cfg.pair;
  const std::size_t p = cfg.p;
  const std::size_t q = pair.length();
  Bits out;
  for (std::size_t blk = 0; blk < ct.blocks.size(); ++blk) {
    const CssBlock& cb = ct.blocks[blk];
    auto plain = backend_dec(key, cb.backend);
    if (!plain) return std::nullopt;
    auto s = unpack_secrets(*plain, p, q);
    if (!s || cb.u.size() != q || cb.h.size() != q) return std::nullopt;
    QuantumRegister& reg = ct.quantum[blk];
    if (reg.size() != p + q) return std::nullopt;

    const auto uqd = u_q_dagger(s->q, p + q);
    reg.apply_permutation(uqd.inverse());
    std::vector<std::size_t> lower(q);
    for (std::size_t j = 0; j < q; ++j) lower[j] = p + j;
    Bits gamma = reg.measure(lower, std::vector<Basis>(q, Basis::Computational), rng);
    reg.apply_permutation(uqd);

    const Bits x = gf2::mod_c(xor_bits(gamma, cb.u), pair.c2());
    const Bits m_rep = gf2::mod_c(xor_bits(xor_bits(cb.h, x), s->y), pair.c2());
    if (!pair.c1().contains(m_rep)) return std::nullopt;
    Bits m = pair.decode_message(m_rep);
    out.insert(out.end(), m.begin(), m.end());
  }
  return out;
}

bool vrfy_css_block(const CssVkBlock& vk, QuantumRegister& reg, Rng& rng) {
  const std::size_t p = vk.b.size();
  if (reg.size() < p || vk.q.size() != p) return false;
  const std::size_t total = reg.size();
  reg.apply_permutation(u_q_dagger(vk.q, total).inverse());
  Bits mask(total, 0);
  for (std::size_t i = 0; i < p; ++i) mask[i] = vk.b[i];
  reg.apply_hadamard_mask(mask);
  std::vector<std::size_t> upper(p);
  for (std::size_t i = 0; i < p; ++i) upper[i] = i;
  Bits r_prime = reg.measure(upper, std::vector<Basis>(p, Basis::Computational), rng);
  reg.consume();
  return r_prime == vk.r;
}

}  // namespace

CeBundle ce_enc(const CeConfig& cfg, const EncKey& key, std::span<const std::uint8_t> m, base::Qrom& oracle,
                Rng& rng) {
  if (cfg.variant == Variant::Qrom) return ce_enc_qrom(cfg, key, m, oracle, rng);
  return ce_enc_css(cfg, key, m, rng);
}

std::optional<Bits> ce_dec(const CeConfig& cfg, const DecKey& key, CeCiphertext& ct, base::Qrom& oracle, Rng& rng) {
  if (ct.variant != cfg.variant) return std::nullopt;
  if (cfg.variant == Variant::Qrom) return dec_qrom(cfg, key, ct, oracle, rng);
  return dec_css(cfg, key, ct, rng);
}

CeCert ce_del(CeCiphertext& ct, Rng& rng) {
  CeCert cert;
  cert.variant = ct.variant;
  if (ct.variant == Variant::Qrom) {
    if (ct.quantum.size() != 1) throw LengthError("QROM ciphertext must carry one register");
    cert.bits = cd_del(ct.quantum[0], rng);
  } else {
    cert.quantum = std::move(ct.quantum);
    ct.quantum.clear();
  }
  return cert;
}

bool ce_vrfy(const CeVk& vk, CeCert& cert, Rng& rng) {
  if (vk.variant != cert.variant) return false;
  if (vk.variant == Variant::Qrom) return cd_vrfy(vk.cd, cert.bits);
  if (cert.quantum.size() != vk.blocks.size()) return false;
  bool ok = true;
  for (std::size_t i = 0; i < vk.blocks.size(); ++i) {
    if (!cert.quantum[i].valid() || cert.quantum[i].consumed()) return false;
    ok = vrfy_css_block(vk.blocks[i], cert.quantum[i], rng) && ok;
  }
  return ok;
}

CeCert ce_modify(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, CeCert cert) {
  require_length(b.size(), a.size(), "ce_modify");
  if (cert.variant == Variant::Qrom) {
    cert.bits = cd_modify(a, b, cert.bits);
    return cert;
  }
  std::size_t off = 0;
  for (auto& reg : cert.quantum) {
    const std::size_t n = reg.size();
    if (off + n > a.size()) throw LengthError("ce_modify: mask shorter than the certificate layout");
    reg.apply_pauli(PauliMask{slice(a, off, n), slice(b, off, n)});
    off += n;
  }
  require_length(a.size(), off, "ce_modify");
  return cert;
}

void twirl(CeCiphertext& ct, const PauliMask& mask) {
  require_length(mask.size(), ct.quantum_size(), "twirl");
  std::size_t off = 0;
  for (auto& reg : ct.quantum) {
    const std::size_t n = reg.size();
    reg.apply_pauli(PauliMask{slice(mask.x, off, n), slice(mask.z, off, n)});
    off += n;
  }
}

// ---------------------------------------------------------------------------
// Serialization

void write(ByteWriter& w, const QuantumRegister& r) { w.bytes(r.serialize()); }

QuantumRegister read_register(ByteReader& r) {
  auto bytes = r.bytes();
  try {
    return QuantumRegister::deserialize(bytes);
  } catch (const DecodeError&) {
    throw;
  } catch (const Error& e) {
    throw DecodeError(e.what());
  }
}

void write(ByteWriter& w, const CdKey& k) {
  w.bits(k.theta);
  w.bits(k.r);
}

CdKey read_cd_key(ByteReader& r) {
  CdKey k;
  k.theta = r.bits();
  k.r = r.bits();
  if (k.theta.size() != k.r.size()) throw DecodeError("CdKey shape mismatch");
  return k;
}

void write(ByteWriter& w, const EncKey& k) {
  w.u8(static_cast<std::uint8_t>(k.index()));
  std::visit([&](const auto& v) { base::write(w, v); }, k);
}

void write(ByteWriter& w, const DecKey& k) {
  w.u8(static_cast<std::uint8_t>(k.index()));
  std::visit([&](const auto& v) { base::write(w, v); }, k);
}

void write(ByteWriter& w, const BackendCiphertext& c) {
  w.u8(static_cast<std::uint8_t>(c.index()));
  std::visit([&](const auto& v) { base::write(w, v); }, c);
}

EncKey read_enc_key(ByteReader& r) {
  const auto tag = r.u8();
  if (tag == 0) return base::read_ske_key(r);
  if (tag == 1) return base::read_lwe_public_key(r);
  throw DecodeError("unknown encryption key kind");
}

DecKey read_dec_key(ByteReader& r) {
  const auto tag = r.u8();
  if (tag == 0) return base::read_ske_key(r);
  if (tag == 1) return base::read_lwe_secret_key(r);
  throw DecodeError("unknown decryption key kind");
}

BackendCiphertext read_backend_ciphertext(ByteReader& r) {
  const auto tag = r.u8();
  if (tag == 0) return base::read_ske_ciphertext(r);
  if (tag == 1) return base::read_lwe_ciphertext(r);
  throw DecodeError("unknown backend ciphertext kind");
}

namespace {

void write_string(ByteWriter& w, const std::string& s) {
  w.bytes(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

std::string read_string(ByteReader& r) {
  auto b = r.bytes();
  return std::string(b.begin(), b.end());
}

Variant read_variant(ByteReader& r) {
  const auto v = r.u8();
  if (v > 1) throw DecodeError("unknown scheme variant " + std::to_string(v));
  return static_cast<Variant>(v);
}

}  // namespace

void write(ByteWriter& w, const CeConfig& c) {
  w.u8(static_cast<std::uint8_t>(c.variant));
  w.u64(c.lambda);
  w.u64(c.w);
  w.u64(c.p);
  if (c.variant == Variant::Css) {
    write_string(w, gf2::write_code(c.pair->c1()));
    write_string(w, gf2::write_code(c.pair->c2()));
    w.u64(c.pair->t());
  }
}

CeConfig read_ce_config(ByteReader& r) {
  CeConfig c;
  c.variant = read_variant(r);
  c.lambda = r.u64();
  c.w = r.u64();
  c.p = r.u64();
  if (c.variant == Variant::Css) {
    std::istringstream s1(read_string(r));
    std::istringstream s2(read_string(r));
    const std::size_t t = r.u64();
    try {
      auto c1 = gf2::read_code(s1);
      auto c2 = gf2::read_code(s2);
      c.pair = std::make_shared<const gf2::CssPair>(gf2::CssPair::make(std::move(c1), std::move(c2), t, 2 * t + 1));
    } catch (const gf2::InvalidCode& e) {
      throw DecodeError(std::string("invalid code pair: ") + e.what());
    }
  }
  return c;
}

void write(ByteWriter& w, const CeCiphertext& c) {
  w.u8(static_cast<std::uint8_t>(c.variant));
  if (c.variant == Variant::Qrom) {
    w.bits(c.h);
    write(w, c.backend);
  } else {
    w.u64(c.blocks.size());
    for (const auto& b : c.blocks) {
      write(w, b.backend);
      w.bits(b.u);
      w.bits(b.h);
    }
  }
  w.u64(c.quantum.size());
  for (const auto& q : c.quantum) write(w, q);
}

CeCiphertext read_ce_ciphertext(ByteReader& r) {
  CeCiphertext c;
  c.variant = read_variant(r);
  if (c.variant == Variant::Qrom) {
    c.h = r.bits();
    c.backend = read_backend_ciphertext(r);
  } else {
    const auto n = r.u64();
    if (n > r.remaining()) throw DecodeError("payload truncated");
    for (std::uint64_t i = 0; i < n; ++i) {
      CssBlock b;
      b.backend = read_backend_ciphertext(r);
      b.u = r.bits();
      b.h = r.bits();
      c.blocks.push_back(std::move(b));
    }
  }
  const auto nq = r.u64();
  if (nq > r.remaining()) throw DecodeError("payload truncated");
  for (std::uint64_t i = 0; i < nq; ++i) c.quantum.push_back(read_register(r));
  return c;
}

void write(ByteWriter& w, const CeVk& v) {
  w.u8(static_cast<std::uint8_t>(v.variant));
  if (v.variant == Variant::Qrom) {
    write(w, v.cd);
  } else {
    w.u64(v.blocks.size());
    for (const auto& b : v.blocks) {
      w.bits(b.b);
      w.indices(b.q);
      w.bits(b.r);
    }
  }
}

CeVk read_ce_vk(ByteReader& r) {
  CeVk v;
  v.variant = read_variant(r);
  if (v.variant == Variant::Qrom) {
    v.cd = read_cd_key(r);
  } else {
    const auto n = r.u64();
    if (n > r.remaining()) throw DecodeError("payload truncated");
    for (std::uint64_t i = 0; i < n; ++i) {
      CssVkBlock b;
      b.b = r.bits();
      b.q = r.indices();
      b.r = r.bits();
      v.blocks.push_back(std::move(b));
    }
  }
  return v;
}

void write(ByteWriter& w, const CeCert& c) {
  w.u8(static_cast<std::uint8_t>(c.variant));
  w.bits(c.bits);
  w.u64(c.quantum.size());
  for (const auto& q : c.quantum) write(w, q);
}

CeCert read_ce_cert(ByteReader& r) {
  CeCert c;
  c.variant = read_variant(r);
  c.bits = r.bits();
  const auto nq = r.u64();
  if (nq > r.remaining()) throw DecodeError("payload truncated");
  for (std::uint64_t i = 0; i < nq; ++i) c.quantum.push_back(read_register(r));
  return c;
}

}  // namespace cefe::cd
