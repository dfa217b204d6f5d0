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

#include "cefe/base.hpp"

#include <openssl/sha.h>

#include <sstream>

namespace cefe::base {

Bits prf(std::span<const std::uint8_t> key, std::span<const std::uint8_t> input, std::size_t nbits) {
  ByteWriter prefix;
  prefix.bits(key);
  prefix.bits(input);
  std::vector<std::uint8_t> block = prefix.take();
  const std::size_t counter_at = block.size();
  block.resize(counter_at + 8);

  Bits out;
  out.reserve(nbits + 256);
  std::uint8_t digest[SHA256_DIGEST_LENGTH];
  for (std::uint64_t ctr = 0; out.size() < nbits; ++ctr) {
    for (int i = 0; i < 8; ++i) block[counter_at + static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(ctr >> (8 * i));
    SHA256(block.data(), block.size(), digest);
    Bits chunk = unpack_bits(digest, 8 * SHA256_DIGEST_LENGTH);
    out.insert(out.end(), chunk.begin(), chunk.end());
  }
  out.resize(nbits);
  return out;
}

SkeKey ske_keygen(Rng& rng, std::size_t lambda) { return {rng.bits(lambda)}; }

SkeCiphertext ske_enc(const SkeKey& key, std::span<const std::uint8_t> m, Rng& rng) {
  SkeCiphertext ct;
  ct.nonce = rng.bits(key.k.size());
  ct.body = prf(key.k, ct.nonce, m.size() + kTagBits);
  for (std::size_t i = 0; i < m.size(); ++i) ct.body[i] ^= m[i] & 1u;
  return ct;
}

std::optional<Bits> ske_dec(const SkeKey& key, const SkeCiphertext& ct) {
  if (ct.body.size() < kTagBits) return std::nullopt;
  Bits plain = prf(key.k, ct.nonce, ct.body.size());
  xor_into(plain, ct.body);
  for (std::size_t i = plain.size() - kTagBits; i < plain.size(); ++i)
    if (plain[i]) return std::nullopt;
  plain.resize(plain.size() - kTagBits);
  return plain;
}

// ---------------------------------------------------------------------------

bool LweParams::margin_ok() const {
  return n > 0 && m > 0 && q >= 4 && q <= 65535 &&
         static_cast<double>(q) / 4.0 > static_cast<double>(m) * static_cast<double>(beta);
}

LweParams lwe_desk_params() { return LweParams{32, 4099, 64, 2}; }

LweParams read_lwe_params(std::istream& in) {
  LweParams p;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) throw ParameterError("malformed line: " + line);
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    std::uint32_t v = 0;
    try {
      v = static_cast<std::uint32_t>(std::stoul(val));
    } catch (const std::exception&) {
      throw ParameterError("bad value for " + key);
    }
    if (key == "n") p.n = v;
    else if (key == "q") p.q = v;
    else if (key == "m") p.m = v;
    else if (key == "beta") p.beta = v;
    else throw ParameterError("unknown LWE parameter " + key);
  }
  return p;
}

std::string write_lwe_params(const LweParams& p) {
  std::ostringstream os;
  os << "n=" << p.n << "\nq=" << p.q << "\nm=" << p.m << "\nbeta=" << p.beta << "\n";
  return os.str();
}

namespace {

std::uint16_t uniform_mod(Rng& rng, std::uint32_t q) { return static_cast<std::uint16_t>(rng.below(q)); }

}  // namespace

LweKeyPair lwe_keygen(const LweParams& params, Rng& rng) {
  if (!params.margin_ok()) {
    throw ParameterError("LWE parameters violate the decryption margin q/4 > m*beta");
  }
  const std::uint32_t n = params.n;
  const std::uint32_t m = params.m;
  const std::uint32_t q = params.q;
  LweKeyPair kp;
  kp.pk.params = params;
  kp.sk.params = params;
  kp.sk.s.resize(n);
  for (auto& v : kp.sk.s) v = uniform_mod(rng, q);
  kp.pk.a.resize(std::size_t{n} * m);
  for (auto& v : kp.pk.a) v = uniform_mod(rng, q);
  kp.pk.b.resize(m);
  for (std::uint32_t j = 0; j < m; ++j) {
    std::uint64_t acc = 0;
    const std::uint16_t* col = kp.pk.a.data() + std::size_t{j} * n;
    for (std::uint32_t i = 0; i < n; ++i) acc += std::uint64_t{col[i]} * kp.sk.s[i];
    const std::int64_t e = static_cast<std::int64_t>(rng.below(2 * params.beta + 1)) - params.beta;
    kp.pk.b[j] = static_cast<std::uint16_t>((static_cast<std::int64_t>(acc % q) + e + q) % q);
  }
  return kp;
}

LweCiphertext lwe_enc(const LwePublicKey& pk, std::span<const std::uint8_t> bits, Rng& rng) {
  const std::uint32_t n = pk.params.n;
  const std::uint32_t m = pk.params.m;
  const std::uint32_t q = pk.params.q;
  LweCiphertext ct;
  ct.u.assign(bits.size() * n, 0);
  ct.v.resize(bits.size());
  std::vector<std::uint32_t> acc(n);
  for (std::size_t k = 0; k < bits.size(); ++k) {
    std::fill(acc.begin(), acc.end(), 0);
    std::uint64_t v = 0;
    for (std::uint32_t j = 0; j < m; ++j) {
      if (!rng.bit()) continue;
      const std::uint16_t* col = pk.a.data() + std::size_t{j} * n;
      for (std::uint32_t i = 0; i < n; ++i) acc[i] += col[i];
      v += pk.b[j];
    }
    for (std::uint32_t i = 0; i < n; ++i) ct.u[k * n + i] = static_cast<std::uint16_t>(acc[i] % q);
    v += (bits[k] & 1u) ? q / 2 : 0;
    ct.v[k] = static_cast<std::uint16_t>(v % q);
  }
  return ct;
}

Bits lwe_dec(const LweSecretKey& sk, const LweCiphertext& ct) {
  const std::uint32_t n = sk.params.n;
  const std::uint32_t q = sk.params.q;
  if (ct.u.size() != ct.v.size() * n) throw LengthError("LWE ciphertext shape mismatch");
  Bits out(ct.v.size());
  for (std::size_t k = 0; k < ct.v.size(); ++k) {
    std::uint64_t dot = 0;
    for (std::uint32_t i = 0; i < n; ++i) dot += std::uint64_t{ct.u[k * n + i]} * sk.s[i];
    const std::uint64_t d = (ct.v[k] + q - dot % q) % q;
    // Closer to q/2 than to 0 decodes as 1.
    out[k] = (d > q / 4 && d < q - q / 4) ? 1 : 0;
  }
  return out;
}

// ---------------------------------------------------------------------------

Bits Qrom::query(std::span<const std::uint8_t> x, std::size_t nbits) {
  auto key = std::make_pair(Bits(x.begin(), x.end()), nbits);
  auto it = table_.find(key);
  if (it != table_.end()) return it->second;
  Bits seed_bits = uint_to_bits(seed_, 64);
  Bits answer = prf(seed_bits, x, nbits);
  table_.emplace(std::move(key), answer);
  return answer;
}

// ---------------------------------------------------------------------------

namespace {

void write_u16s(ByteWriter& w, const std::vector<std::uint16_t>& v) {
  w.u64(v.size());
  for (auto x : v) w.u16(x);
}

std::vector<std::uint16_t> read_u16s(ByteReader& r) {
  const std::uint64_t n = r.u64();
  if (n > r.remaining() / 2) throw DecodeError("payload truncated");
  std::vector<std::uint16_t> v(n);
  for (auto& x : v) x = r.u16();
  return v;
}

}  // namespace

void write(ByteWriter& w, const SkeKey& k) { w.bits(k.k); }
void write(ByteWriter& w, const SkeCiphertext& c) {
  w.bits(c.nonce);
  w.bits(c.body);
}
void write(ByteWriter& w, const LweParams& p) {
  w.u32(p.n);
  w.u32(p.q);
  w.u32(p.m);
  w.u32(p.beta);
}
void write(ByteWriter& w, const LwePublicKey& k) {
  write(w, k.params);
  write_u16s(w, k.a);
  write_u16s(w, k.b);
}
void write(ByteWriter& w, const LweSecretKey& k) {
  write(w, k.params);
  write_u16s(w, k.s);
}
void write(ByteWriter& w, const LweCiphertext& c) {
  write_u16s(w, c.u);
  write_u16s(w, c.v);
}

SkeKey read_ske_key(ByteReader& r) { return {r.bits()}; }
SkeCiphertext read_ske_ciphertext(ByteReader& r) {
  SkeCiphertext c;
  c.nonce = r.bits();
  c.body = r.bits();
  return c;
}
LweParams read_lwe_params(ByteReader& r) {
  LweParams p;
  p.n = r.u32();
  p.q = r.u32();
  p.m = r.u32();
  p.beta = r.u32();
  return p;
}
LwePublicKey read_lwe_public_key(ByteReader& r) {
  LwePublicKey k;
  k.params = read_lwe_params(r);
  k.a = read_u16s(r);
  k.b = read_u16s(r);
  if (k.a.size() != std::size_t{k.params.n} * k.params.m || k.b.size() != k.params.m)
    throw DecodeError("LWE public key shape mismatch");
  return k;
}
LweSecretKey read_lwe_secret_key(ByteReader& r) {
  LweSecretKey k;
  k.params = read_lwe_params(r);
  k.s = read_u16s(r);
  if (k.s.size() != k.params.n) throw DecodeError("LWE secret key shape mismatch");
  return k;
}
LweCiphertext read_lwe_ciphertext(ByteReader& r) {
  LweCiphertext c;
  c.u = read_u16s(r);
  c.v = read_u16s(r);
  return c;
}

}  // namespace cefe::base
