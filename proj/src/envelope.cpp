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

#include "cefe/envelope.hpp"

#include <algorithm>

#include "cefe/circuit.hpp"
#include "cefe/fe.hpp"
#include "cefe/garble.hpp"
#include "cefe/rnce.hpp"

namespace cefe::cli {

namespace {

constexpr std::uint8_t kMagic[4] = {'C', 'E', 'F', 'E'};

template <auto Read>
std::vector<std::uint8_t> roundtrip(ByteReader& r) {
  auto v = Read(r);
  r.expect_end();
  using cd::write;  // registers are written by the cd layer
  ByteWriter w;
  write(w, v);
  return w.take();
}

std::string printable(std::span<const std::uint8_t> tag) {
  std::string s;
  for (auto c : tag) s += (c >= 0x20 && c < 0x7f) ? static_cast<char>(c) : '?';
  return s;
}

}  // namespace

void write(ByteWriter& w, const CeSkeKeyFile& v) {
  cd::write(w, v.cfg);
  base::write(w, v.key);
}
void write(ByteWriter& w, const CePkeKeyFile& v) {
  cd::write(w, v.cfg);
  base::write(w, v.key);
}
void write(ByteWriter& w, const CeDecKeyFile& v) {
  cd::write(w, v.cfg);
  base::write(w, v.key);
}
void write(ByteWriter& w, const CeCiphertextFile& v) {
  cd::write(w, v.cfg);
  cd::write(w, v.ct);
}

CeSkeKeyFile read_ce_ske_key_file(ByteReader& r) {
  CeSkeKeyFile v;
  v.cfg = cd::read_ce_config(r);
  v.key = base::read_ske_key(r);
  return v;
}
CePkeKeyFile read_ce_pke_key_file(ByteReader& r) {
  CePkeKeyFile v;
  v.cfg = cd::read_ce_config(r);
  v.key = base::read_lwe_public_key(r);
  return v;
}
CeDecKeyFile read_ce_dec_key_file(ByteReader& r) {
  CeDecKeyFile v;
  v.cfg = cd::read_ce_config(r);
  v.key = base::read_lwe_secret_key(r);
  return v;
}
CeCiphertextFile read_ce_ciphertext_file(ByteReader& r) {
  CeCiphertextFile v;
  v.cfg = cd::read_ce_config(r);
  v.ct = cd::read_ce_ciphertext(r);
  return v;
}

const std::vector<TagInfo>& tag_registry() {
  static const std::vector<TagInfo> tags = {
      {"CDKY", "one-time SKE key", false, roundtrip<cd::read_cd_key>},
      {"CDCT", "one-time SKE ciphertext", true, roundtrip<cd::read_register>},
      {"CESK", "CE-SKE key", false, roundtrip<read_ce_ske_key_file>},
      {"CEPK", "CE-PKE public key", false, roundtrip<read_ce_pke_key_file>},
      {"CEDK", "CE-PKE secret key", false, roundtrip<read_ce_dec_key_file>},
      {"CECT", "CE ciphertext", true, roundtrip<read_ce_ciphertext_file>},
      {"CEVK", "CE verification key", false, roundtrip<cd::read_ce_vk>},
      {"CECR", "CE deletion certificate", true, roundtrip<cd::read_ce_cert>},
      {"RNPK", "RNCE public key", false, roundtrip<rnce::read_rnce_pk>},
      {"RNMK", "RNCE master secret key", false, roundtrip<rnce::read_rnce_msk>},
      {"RNSK", "RNCE secret key", false, roundtrip<rnce::read_rnce_sk>},
      {"RNCE", "RNCE ciphertext", true, roundtrip<rnce::read_rnce_ciphertext>},
      {"RNVK", "RNCE verification key", false, roundtrip<rnce::read_rnce_vk>},
      {"RNCR", "RNCE deletion certificate", true, roundtrip<rnce::read_rnce_cert>},
      {"GCIR", "leveled circuit", false, roundtrip<garble::read_circuit>},
      {"GCLB", "wire labels", false, roundtrip<garble::read_label_set>},
      {"GCGC", "garbled circuit", true, roundtrip<garble::read_garbled_circuit>},
      {"GCVK", "garbled circuit verification key", false, roundtrip<garble::read_gc_vk>},
      {"GCCR", "garbled circuit deletion certificate", true, roundtrip<garble::read_gc_cert>},
      {"F1PK", "fe1 master public key", false, roundtrip<fe::read_fe1_mpk>},
      {"F1MK", "fe1 master secret key", false, roundtrip<fe::read_fe1_msk>},
      {"F1SK", "fe1 functional key", false, roundtrip<fe::read_fe1_sk>},
      {"FE1C", "fe1 ciphertext", true, roundtrip<fe::read_fe1_ciphertext>},
      {"F1VK", "fe1 verification key", false, roundtrip<fe::read_fe1_vk>},
      {"F1CR", "fe1 deletion certificate", true, roundtrip<fe::read_fe1_cert>},
      {"FAPK", "fead master public key", false, roundtrip<fe::read_fead_mpk>},
      {"FAMK", "fead master secret key", false, roundtrip<fe::read_fead_msk>},
      {"FASK", "fead functional key", false, roundtrip<fe::read_fead_sk>},
      {"FEAD", "fead ciphertext", true, roundtrip<fe::read_fead_ciphertext>},
      {"FAVK", "fead verification key", false, roundtrip<fe::read_fead_vk>},
      {"FACR", "fead deletion certificate", true, roundtrip<fe::read_fead_cert>},
      {"FQPK", "feq master public key", false, roundtrip<fe::read_feq_mpk>},
      {"FQMK", "feq master secret key", false, roundtrip<fe::read_feq_msk>},
      {"FQSK", "feq functional key", false, roundtrip<fe::read_feq_sk>},
      {"FEQC", "feq ciphertext", true, roundtrip<fe::read_feq_ciphertext>},
      {"FQVK", "feq verification key", false, roundtrip<fe::read_feq_vk>},
      {"FQCR", "feq deletion certificate", true, roundtrip<fe::read_feq_cert>},
  };
  return tags;
}

const TagInfo* find_tag(const std::string& tag) {
  const auto& tags = tag_registry();
  auto it = std::find_if(tags.begin(), tags.end(), [&](const TagInfo& t) { return tag == t.tag; });
  return it == tags.end() ? nullptr : &*it;
}

std::vector<std::uint8_t> seal(const std::string& tag, std::span<const std::uint8_t> body) {
  const TagInfo* info = find_tag(tag);
  if (!info) throw EnvelopeError("unknown envelope tag '" + tag + "'");
  ByteWriter w;
  w.raw(kMagic);
  w.u16(kEnvelopeVersion);
  w.raw(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(tag.data()), 4));
  w.u64(body.size() + 1);
  w.u8(info->quantum ? kSimulation : kClassical);
  w.raw(body);
  return w.take();
}

Envelope open(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kEnvelopeHeader + 1) throw EnvelopeError("envelope truncated");
  if (!std::equal(bytes.begin(), bytes.begin() + 4, kMagic)) throw EnvelopeError("not a CEFE envelope");
  ByteReader r(bytes.subspan(4));
  const auto version = r.u16();
  if (version != kEnvelopeVersion) throw EnvelopeError("unsupported envelope version " + std::to_string(version));
  Envelope env;
  env.tag = printable(bytes.subspan(6, 4));
  r.raw(4);
  if (!find_tag(env.tag)) throw EnvelopeError("unknown envelope tag '" + env.tag + "'");
  const auto length = r.u64();
  if (length != r.remaining()) throw EnvelopeError("envelope length mismatch");
  const auto flag = r.u8();
  if (flag != kClassical && flag != kSimulation) throw EnvelopeError("bad payload flag");
  if ((flag == kSimulation) != find_tag(env.tag)->quantum) throw EnvelopeError("payload flag does not match tag");
  env.simulation = flag == kSimulation;
  const auto rest = r.raw(r.remaining());
  env.body.assign(rest.begin(), rest.end());
  return env;
}

Envelope open_as(std::span<const std::uint8_t> bytes, const std::string& tag) {
  Envelope env = open(bytes);
  if (env.tag != tag) throw EnvelopeError("expected a " + tag + " envelope, got " + env.tag);
  return env;
}

std::vector<std::uint8_t> reencode(const Envelope& env) {
  const TagInfo* info = find_tag(env.tag);
  if (!info) throw EnvelopeError("unknown envelope tag '" + env.tag + "'");
  ByteReader r(env.body);
  return info->reencode(r);
}

}  // namespace cefe::cli
