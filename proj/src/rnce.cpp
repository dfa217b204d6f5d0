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

#include "cefe/rnce.hpp"

namespace cefe::rnce {

RnceKeys rnce_setup(std::size_t n, const cd::CeConfig& cfg, const base::LweParams& params, Rng& rng) {
  RnceKeys keys;
  keys.pk.cfg = cfg;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    auto kp = base::lwe_keygen(params, rng);
    keys.pk.pk.push_back(std::move(kp.pk));
    keys.msk.sk.push_back(std::move(kp.sk));
  }
  return keys;
}

RnceSk rnce_keygen(const RnceMsk& msk, Rng& rng) {
  const std::size_t n = msk.sk.size() / 2;
  RnceSk sk;
  sk.x = rng.bits(n);
  for (std::size_t i = 0; i < n; ++i) sk.sk.push_back(msk.sk[2 * i + sk.x[i]]);
  return sk;
}

namespace {

RnceBundle encrypt_columns(const RncePk& pk, const Bits& col0, const Bits& col1, base::Qrom& oracle, Rng& rng) {
  RnceBundle out;
  for (std::size_t i = 0; i < pk.n(); ++i) {
    for (int alpha = 0; alpha < 2; ++alpha) {
      const Bits bit{alpha == 0 ? col0[i] : col1[i]};
      auto b = cd::ce_enc(pk.cfg, pk.pk[2 * i + static_cast<std::size_t>(alpha)], bit, oracle, rng);
      out.vk.parts.push_back(std::move(b.vk));
      out.ct.parts.push_back(std::move(b.ct));
    }
  }
  return out;
}

}  // namespace

RnceBundle rnce_enc(const RncePk& pk, std::span<const std::uint8_t> m, base::Qrom& oracle, Rng& rng) {
  require_length(m.size(), pk.n(), "rnce_enc");
  Bits mb(m.begin(), m.end());
  return encrypt_columns(pk, mb, mb, oracle, rng);
}

std::optional<Bits> rnce_dec(const RncePk& pk, const RnceSk& sk, RnceCiphertext& ct, base::Qrom& oracle, Rng& rng) {
  if (sk.x.size() != pk.n()) return std::nullopt;
  return rnce_dec(pk.cfg, sk, ct, oracle, rng);
}

std::optional<Bits> rnce_dec(const cd::CeConfig& cfg, const RnceSk& sk, RnceCiphertext& ct, base::Qrom& oracle,
                             Rng& rng) {
  const std::size_t n = sk.x.size();
  if (sk.sk.size() != n || ct.parts.size() != 2 * n) return std::nullopt;
  Bits out(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto bit = cd::ce_dec(cfg, sk.sk[i], ct.parts[2 * i + sk.x[i]], oracle, rng);
    if (!bit || bit->size() != 1) return std::nullopt;
    out[i] = (*bit)[0];
  }
  return out;
}

RnceCert rnce_del(RnceCiphertext& ct, Rng& rng) {
  RnceCert cert;
  for (auto& part : ct.parts) cert.parts.push_back(cd::ce_del(part, rng));
  return cert;
}

bool rnce_vrfy(const RnceVk& vk, RnceCert& cert, Rng& rng) {
  if (vk.parts.size() != cert.parts.size()) return false;
  bool ok = true;
  for (std::size_t i = 0; i < vk.parts.size(); ++i) ok = cd::ce_vrfy(vk.parts[i], cert.parts[i], rng) && ok;
  return ok;
}

std::pair<RnceBundle, RnceAux> rnce_fake(const RncePk& pk, base::Qrom& oracle, Rng& rng) {
  RnceAux aux{rng.bits(pk.n())};
  Bits col1(pk.n());
  for (std::size_t i = 0; i < pk.n(); ++i) col1[i] = aux.x_star[i] ^ 1u;
  // Column α holds α ⊕ x*[i].
  return {encrypt_columns(pk, aux.x_star, col1, oracle, rng), aux};
}

RnceSk rnce_reveal(const RncePk& pk, const RnceMsk& msk, const RnceAux& aux, std::span<const std::uint8_t> m) {
  const std::size_t n = pk.n();
  require_length(m.size(), n, "rnce_reveal");
  if (aux.x_star.size() != n || msk.sk.size() != 2 * n) throw LengthError("rnce_reveal: aux or msk does not match pk");
  RnceSk sk;
  sk.x = xor_bits(aux.x_star, m);
  for (std::size_t i = 0; i < n; ++i) sk.sk.push_back(msk.sk[2 * i + sk.x[i]]);
  return sk;
}

// ---------------------------------------------------------------------------

void write(ByteWriter& w, const RncePk& v) {
  cd::write(w, v.cfg);
  write_list(w, v.pk, [](ByteWriter& ww, const base::LwePublicKey& k) { base::write(ww, k); });
}
void write(ByteWriter& w, const RnceMsk& v) {
  write_list(w, v.sk, [](ByteWriter& ww, const base::LweSecretKey& k) { base::write(ww, k); });
}
void write(ByteWriter& w, const RnceSk& v) {
  w.bits(v.x);
  write_list(w, v.sk, [](ByteWriter& ww, const base::LweSecretKey& k) { base::write(ww, k); });
}
void write(ByteWriter& w, const RnceVk& v) {
  write_list(w, v.parts, [](ByteWriter& ww, const cd::CeVk& k) { cd::write(ww, k); });
}
void write(ByteWriter& w, const RnceCiphertext& v) {
  write_list(w, v.parts, [](ByteWriter& ww, const cd::CeCiphertext& k) { cd::write(ww, k); });
}
void write(ByteWriter& w, const RnceCert& v) {
  write_list(w, v.parts, [](ByteWriter& ww, const cd::CeCert& k) { cd::write(ww, k); });
}

RncePk read_rnce_pk(ByteReader& r) {
  RncePk v;
  v.cfg = cd::read_ce_config(r);
  v.pk = read_list<base::LwePublicKey>(r, base::read_lwe_public_key);
  if (v.pk.size() % 2) throw DecodeError("RNCE public key must have an even number of components");
  return v;
}
RnceMsk read_rnce_msk(ByteReader& r) { return {read_list<base::LweSecretKey>(r, base::read_lwe_secret_key)}; }
RnceSk read_rnce_sk(ByteReader& r) {
  RnceSk v;
  v.x = r.bits();
  v.sk = read_list<base::LweSecretKey>(r, base::read_lwe_secret_key);
  return v;
}
RnceVk read_rnce_vk(ByteReader& r) { return {read_list<cd::CeVk>(r, cd::read_ce_vk)}; }
RnceCiphertext read_rnce_ciphertext(ByteReader& r) { return {read_list<cd::CeCiphertext>(r, cd::read_ce_ciphertext)}; }
RnceCert read_rnce_cert(ByteReader& r) { return {read_list<cd::CeCert>(r, cd::read_ce_cert)}; }

}  // namespace cefe::rnce
