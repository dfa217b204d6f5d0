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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cefe/base.hpp"
#include "cefe/cd.hpp"
#include "cefe/codec.hpp"
#include "cefe/rng.hpp"

namespace cefe::rnce {

// Components are stored i-major, α-minor: index 2i + α.

struct RncePk {
  cd::CeConfig cfg;
  std::vector<base::LwePublicKey> pk;
  std::size_t n() const { return pk.size() / 2; }
};

struct RnceMsk {
  std::vector<base::LweSecretKey> sk;
};

struct RnceSk {
  Bits x;
  std::vector<base::LweSecretKey> sk;  // sk_{i, x[i]}
};

struct RnceVk {
  std::vector<cd::CeVk> parts;
};

struct RnceCiphertext {
  std::vector<cd::CeCiphertext> parts;
};

struct RnceCert {
  std::vector<cd::CeCert> parts;
};

struct RnceBundle {
  RnceVk vk;
  RnceCiphertext ct;
};

struct RnceAux {
  Bits x_star;
};

struct RnceKeys {
  RncePk pk;
  RnceMsk msk;
};

/// 2n component key pairs for n-bit messages. cfg configures each component CE-PKE.
RnceKeys rnce_setup(std::size_t n, const cd::CeConfig& cfg, const base::LweParams& params, Rng& rng);
RnceSk rnce_keygen(const RnceMsk& msk, Rng& rng);
RnceBundle rnce_enc(const RncePk& pk, std::span<const std::uint8_t> m, base::Qrom& oracle, Rng& rng);
std::optional<Bits> rnce_dec(const RncePk& pk, const RnceSk& sk, RnceCiphertext& ct, base::Qrom& oracle, Rng& rng);
/// Same as above; the component configuration comes from cfg and n from sk.
std::optional<Bits> rnce_dec(const cd::CeConfig& cfg, const RnceSk& sk, RnceCiphertext& ct, base::Qrom& oracle,
                             Rng& rng);
RnceCert rnce_del(RnceCiphertext& ct, Rng& rng);
/// ⊤ iff every component verifies.
bool rnce_vrfy(const RnceVk& vk, RnceCert& cert, Rng& rng);

/// Column x*[i] encrypts 0 and column 1 − x*[i] encrypts 1.
std::pair<RnceBundle, RnceAux> rnce_fake(const RncePk& pk, base::Qrom& oracle, Rng& rng);
/// Selector x* ⊕ m with the matching component keys.
RnceSk rnce_reveal(const RncePk& pk, const RnceMsk& msk, const RnceAux& aux, std::span<const std::uint8_t> m);

void write(ByteWriter& w, const RncePk& v);
void write(ByteWriter& w, const RnceMsk& v);
void write(ByteWriter& w, const RnceSk& v);
void write(ByteWriter& w, const RnceVk& v);
void write(ByteWriter& w, const RnceCiphertext& v);
void write(ByteWriter& w, const RnceCert& v);
RncePk read_rnce_pk(ByteReader& r);
RnceMsk read_rnce_msk(ByteReader& r);
RnceSk read_rnce_sk(ByteReader& r);
RnceVk read_rnce_vk(ByteReader& r);
RnceCiphertext read_rnce_ciphertext(ByteReader& r);
RnceCert read_rnce_cert(ByteReader& r);

}  // namespace cefe::rnce
