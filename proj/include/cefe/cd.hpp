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
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "cefe/base.hpp"
#include "cefe/bits.hpp"
#include "cefe/codec.hpp"
#include "cefe/gf2.hpp"
#include "cefe/qsim.hpp"
#include "cefe/rng.hpp"

namespace cefe::cd {

using qsim::QuantumRegister;

// ---------------------------------------------------------------------------
// One-time SKE with certified deletion (BB84 instantiation).
//
// Qubit i is prepared in basis θ_i. Hadamard positions (θ_i = 1) hold r_i and
// serve as the deletion check. Computational positions hold r_i ⊕ m_j, where
// j counts computational positions in order.

struct CdKey {
  Bits theta;
  Bits r;

  std::size_t size() const { return theta.size(); }
  std::size_t w() const { return weight(theta); }
  std::size_t message_bits() const { return size() - w(); }
  /// θ ∥ r.
  Bits to_bits() const { return concat(theta, r); }
  static CdKey from_bits(std::span<const std::uint8_t> bits);
  friend bool operator==(const CdKey&, const CdKey&) = default;
};

CdKey cd_keygen(std::size_t n, std::size_t w, Rng& rng);
QuantumRegister cd_enc(const CdKey& key, std::span<const std::uint8_t> m);
/// Measures only the computational positions; honest ciphertexts are left intact.
Bits cd_dec(const CdKey& key, QuantumRegister& reg, Rng& rng);
/// Hadamard-basis measurement of every qubit; consumes the register.
Bits cd_del(QuantumRegister& reg, Rng& rng);
bool cd_vrfy(const CdKey& key, std::span<const std::uint8_t> cert);
/// Certificate correction after a Z^b X^a twirl: cert ⊕ b.
Bits cd_modify(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, std::span<const std::uint8_t> cert);

// ---------------------------------------------------------------------------
// Classical backends.

using EncKey = std::variant<base::SkeKey, base::LwePublicKey>;
using DecKey = std::variant<base::SkeKey, base::LweSecretKey>;
using BackendCiphertext = std::variant<base::SkeCiphertext, base::LweCiphertext>;

enum class Backend : std::uint8_t { Ske = 0, Pke = 1 };

BackendCiphertext backend_enc(const EncKey& key, std::span<const std::uint8_t> m, Rng& rng);
/// ⊥ (nullopt) on tag failure or when key and ciphertext kinds differ.
std::optional<Bits> backend_dec(const DecKey& key, const BackendCiphertext& ct);

// ---------------------------------------------------------------------------
// Certified everlasting SKE/PKE.

enum class Variant : std::uint8_t { Qrom = 0, Css = 1 };

struct CeConfig {
  Variant variant = Variant::Qrom;
  /// Length of the oracle preimage R.
  std::size_t lambda = base::kDefaultLambda;
  /// Hadamard positions in the OT-CD layer.
  std::size_t w = base::kDefaultLambda;
  /// CSS variant only.
  std::shared_ptr<const gf2::CssPair> pair;
  std::size_t p = 7;

  static CeConfig qrom(std::size_t lambda = base::kDefaultLambda, std::size_t w = base::kDefaultLambda);
  static CeConfig css(gf2::CssPair pair, std::size_t p);
  static CeConfig steane();

  /// Qubits in a ciphertext for a message of the given length.
  std::size_t quantum_size(std::size_t message_bits) const;
};

struct CssBlock {
  BackendCiphertext backend;
  Bits u;
  Bits h;
};

struct CeCiphertext {
  Variant variant = Variant::Qrom;
  // QROM
  Bits h;
  BackendCiphertext backend;
  // CSS: one block and one register per (k1 − k2)-bit chunk.
  std::vector<CssBlock> blocks;
  std::vector<QuantumRegister> quantum;

  std::size_t quantum_size() const;
};

struct CssVkBlock {
  Bits b;
  std::vector<std::size_t> q;  // sorted size-p subset of [p+q]
  Bits r;
  friend bool operator==(const CssVkBlock&, const CssVkBlock&) = default;
};

struct CeVk {
  Variant variant = Variant::Qrom;
  CdKey cd;                       // QROM
  std::vector<CssVkBlock> blocks;  // CSS
  friend bool operator==(const CeVk&, const CeVk&) = default;
};

/// QROM certificates are classical; CSS certificates are the registers.
struct CeCert {
  Variant variant = Variant::Qrom;
  Bits bits;
  std::vector<QuantumRegister> quantum;
};

struct CeBundle {
  CeVk vk;
  CeCiphertext ct;
};

CeBundle ce_enc_qrom(const CeConfig& cfg, const EncKey& key, std::span<const std::uint8_t> m, base::Qrom& oracle,
                     Rng& rng);
CeBundle ce_enc_css(const CeConfig& cfg, const EncKey& key, std::span<const std::uint8_t> m, Rng& rng);
/// Dispatches on cfg.variant. The oracle is ignored by the CSS variant.
CeBundle ce_enc(const CeConfig& cfg, const EncKey& key, std::span<const std::uint8_t> m, base::Qrom& oracle,
                Rng& rng);

/// Non-destructive on honest ciphertexts. Returns ⊥ when the backend rejects.
std::optional<Bits> ce_dec(const CeConfig& cfg, const DecKey& key, CeCiphertext& ct, base::Qrom& oracle, Rng& rng);
CeCert ce_del(CeCiphertext& ct, Rng& rng);
/// Measures (and consumes) quantum certificates.
bool ce_vrfy(const CeVk& vk, CeCert& cert, Rng& rng);
/// a, b span the ciphertext's full quantum layout (registers concatenated).
CeCert ce_modify(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, CeCert cert);

/// Applies Z^b X^a to the ciphertext's quantum layout.
void twirl(CeCiphertext& ct, const qsim::PauliMask& mask);

// ---------------------------------------------------------------------------
// Serialization.

void write(ByteWriter& w, const CdKey& k);
void write(ByteWriter& w, const EncKey& k);
void write(ByteWriter& w, const DecKey& k);
void write(ByteWriter& w, const BackendCiphertext& c);
void write(ByteWriter& w, const CeConfig& c);
void write(ByteWriter& w, const CeCiphertext& c);
void write(ByteWriter& w, const CeVk& v);
void write(ByteWriter& w, const CeCert& c);
void write(ByteWriter& w, const QuantumRegister& r);

CdKey read_cd_key(ByteReader& r);
EncKey read_enc_key(ByteReader& r);
DecKey read_dec_key(ByteReader& r);
BackendCiphertext read_backend_ciphertext(ByteReader& r);
CeConfig read_ce_config(ByteReader& r);
CeCiphertext read_ce_ciphertext(ByteReader& r);
CeVk read_ce_vk(ByteReader& r);
CeCert read_ce_cert(ByteReader& r);
QuantumRegister read_register(ByteReader& r);

}  // namespace cefe::cd
