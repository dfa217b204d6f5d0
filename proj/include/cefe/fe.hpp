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
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "cefe/base.hpp"
#include "cefe/cd.hpp"
#include "cefe/circuit.hpp"
#include "cefe/codec.hpp"
#include "cefe/field.hpp"
#include "cefe/garble.hpp"
#include "cefe/qsim.hpp"
#include "cefe/rnce.hpp"
#include "cefe/rng.hpp"

namespace cefe::fe {

// ---------------------------------------------------------------------------
// 1-bounded FE with non-adaptive security: garbled U(·, m) plus CE-PKE
// encryptions of every input label.

struct Fe1Params {
  garble::GcParams gc = garble::GcParams::desk();
  cd::CeConfig pke = cd::CeConfig::qrom(16, 8);
  base::LweParams lwe = base::lwe_desk_params();
};

struct Fe1Mpk {
  Fe1Params params;
  std::shared_ptr<const garble::FunctionFamily> family;
  std::vector<base::LwePublicKey> pk;  // index 2i + α
};

struct Fe1Msk {
  std::vector<base::LweSecretKey> sk;
};

struct Fe1Sk {
  Bits f;
  std::vector<base::LweSecretKey> sk;  // pke.sk_{i, f[i]}
};

struct Fe1Keys {
  Fe1Mpk mpk;
  Fe1Msk msk;
};

/// Quantum layout: the garbled circuit, then the 2s label ciphertexts.
struct Fe1Ciphertext {
  cd::CeConfig pke;
  garble::GarbledCircuit gc;
  std::vector<cd::CeCiphertext> labels;
  std::size_t quantum_size() const;
};

struct Fe1Vk {
  garble::GcVk gc;
  std::vector<cd::CeVk> labels;
};

struct Fe1Cert {
  garble::GcCert gc;
  std::vector<cd::CeCert> labels;
};

struct Fe1Bundle {
  Fe1Vk vk;
  Fe1Ciphertext ct;
};

Fe1Keys fe1_setup(std::shared_ptr<const garble::FunctionFamily> family, const Fe1Params& params, Rng& rng);
Fe1Sk fe1_keygen(const Fe1Msk& msk, std::span<const std::uint8_t> f);
Fe1Bundle fe1_enc(const Fe1Mpk& mpk, std::span<const std::uint8_t> m, base::Qrom& oracle, Rng& rng);
std::optional<Bits> fe1_dec(const Fe1Sk& sk, Fe1Ciphertext& ct, base::Qrom& oracle, Rng& rng);
Fe1Cert fe1_del(Fe1Ciphertext& ct, Rng& rng);
bool fe1_vrfy(const Fe1Vk& vk, Fe1Cert& cert, Rng& rng);
/// Undoes a Z^c X^a twirl of the ciphertext on its certificate.
Fe1Cert fe1_modify(std::span<const std::uint8_t> a, std::span<const std::uint8_t> c, Fe1Cert cert);
void fe1_twirl(Fe1Ciphertext& ct, const qsim::PauliMask& mask);
/// Ciphertext qubits for this key (fixed by the family and parameters).
std::size_t fe1_quantum_size(const Fe1Mpk& mpk);

// ---------------------------------------------------------------------------
// 1-bounded FE with adaptive security: twirled NAD ciphertext plus an RNCE
// encryption of the twirl keys (a, c).

struct FeadParams {
  Fe1Params nad;
  cd::CeConfig nce = cd::CeConfig::qrom(16, 4);
  base::LweParams nce_lwe{16, 4099, 32, 2};
};

struct FeadMpk {
  Fe1Mpk nad;
  rnce::RncePk nce;
};

struct FeadMsk {
  Fe1Msk nad;
  rnce::RnceMsk nce;
};

struct FeadKeys {
  FeadMpk mpk;
  FeadMsk msk;
};

struct FeadSk {
  Fe1Sk nad;
  rnce::RnceSk nce;
};

struct FeadCiphertext {
  cd::CeConfig nce_cfg;
  Fe1Ciphertext psi;
  rnce::RnceCiphertext nce;
};

struct FeadVk {
  Fe1Vk nad;
  rnce::RnceVk nce;
  Bits a;
  Bits c;
};

struct FeadCert {
  Fe1Cert nad;
  rnce::RnceCert nce;
};

struct FeadBundle {
  FeadVk vk;
  FeadCiphertext ct;
};

FeadKeys fead_setup(std::shared_ptr<const garble::FunctionFamily> family, const FeadParams& params, Rng& rng);
FeadSk fead_keygen(const FeadMsk& msk, std::span<const std::uint8_t> f, Rng& rng);
/// A twirl mask may be supplied for testing; otherwise (a, c) are uniform.
FeadBundle fead_enc(const FeadMpk& mpk, std::span<const std::uint8_t> m, base::Qrom& oracle, Rng& rng,
                    const qsim::PauliMask* twirl = nullptr);
/// Restores the twirl after decrypting, so the ciphertext can be deleted later.
std::optional<Bits> fead_dec(const FeadSk& sk, FeadCiphertext& ct, base::Qrom& oracle, Rng& rng);
FeadCert fead_del(FeadCiphertext& ct, Rng& rng);
bool fead_vrfy(const FeadVk& vk, FeadCert& cert, Rng& rng);

// ---------------------------------------------------------------------------
// q-bounded FE for degree-D polynomials over GF(2^k).

struct FeqParams {
  std::size_t q = 1;
  std::size_t lambda = 2;
  std::size_t degree = 2;  // D
  std::size_t ell = 2;
  std::size_t t = 2;
  std::size_t n_instances = 16;  // N
  std::size_t v = 4;
  std::size_t s_count = 16;  // S
  unsigned k = 6;
  /// Inner 1-bounded scheme: the adaptive one, or the non-adaptive one.
  bool adaptive = false;

  /// q = 1, λ = 2, D = 2, ℓ = 2, t = 2, N = 16, v = 4, S = 16, GF(64).
  static FeqParams desk();
  /// t = q²λ, N = smallest power of two ≥ max(D²q²t, tD + 1), v = λ,
  /// S = 4vq², k = smallest supported degree with 2^k > N.
  static FeqParams from_queries(std::size_t q, std::size_t lambda, std::size_t degree, std::size_t ell);

  std::size_t gamma_size() const { return t * degree + 1; }
  /// Throws ParameterError.
  void validate() const;
};

/// A polynomial C in graded-lex coefficient order.
struct Polynomial {
  std::vector<field::FieldElem> coeffs;
};

Polynomial random_polynomial(const FeqParams& params, Rng& rng);
/// Direct evaluation, independent of any circuit.
field::FieldElem evaluate(const FeqParams& params, const Polynomial& c, const std::vector<field::FieldElem>& x);

using OneMpk = std::variant<Fe1Mpk, FeadMpk>;
using OneMsk = std::variant<Fe1Msk, FeadMsk>;
using OneSk = std::variant<Fe1Sk, FeadSk>;
using OneCiphertext = std::variant<Fe1Ciphertext, FeadCiphertext>;
using OneVk = std::variant<Fe1Vk, FeadVk>;
using OneCert = std::variant<Fe1Cert, FeadCert>;

struct FeqMpk {
  FeqParams params;
  std::shared_ptr<const garble::LinearFamily> family;
  std::vector<OneMpk> inst;
};

struct FeqMsk {
  std::vector<OneMsk> inst;
};

struct FeqKeys {
  FeqMpk mpk;
  FeqMsk msk;
};

/// Γ holds 0-based instance indices; instance i is evaluated at the point i + 1.
struct FeqSk {
  unsigned k = 6;
  std::vector<std::size_t> gamma;
  std::vector<std::size_t> delta;
  std::vector<OneSk> inst;  // aligned with gamma
};

struct FeqCiphertext {
  std::vector<OneCiphertext> inst;
};

struct FeqVk {
  std::vector<OneVk> inst;
};

struct FeqCert {
  std::vector<OneCert> inst;
};

struct FeqBundle {
  FeqVk vk;
  FeqCiphertext ct;
};

struct FeqInner {
  Fe1Params fe1;
  FeadParams fead;
};

FeqKeys feq_setup(const FeqParams& params, Rng& rng, const FeqInner& inner = {});
FeqSk feq_keygen(const FeqMpk& mpk, const FeqMsk& msk, const Polynomial& c, Rng& rng);
/// KeyGen with caller-chosen Γ (any size ≥ tD + 1) and Δ.
FeqSk feq_keygen_with(const FeqMpk& mpk, const FeqMsk& msk, const Polynomial& c, std::vector<std::size_t> gamma,
                      std::vector<std::size_t> delta, Rng& rng);
FeqBundle feq_enc(const FeqMpk& mpk, const std::vector<field::FieldElem>& x, base::Qrom& oracle, Rng& rng);
/// η(i + 1) for every i ∈ Γ; ⊥ if any instance fails.
std::optional<std::vector<std::pair<field::FieldElem, field::FieldElem>>> feq_eta(const FeqSk& sk, FeqCiphertext& ct,
                                                                                   base::Qrom& oracle, Rng& rng);
std::optional<field::FieldElem> feq_dec(const FeqSk& sk, FeqCiphertext& ct, base::Qrom& oracle, Rng& rng);
FeqCert feq_del(FeqCiphertext& ct, Rng& rng);
bool feq_vrfy(const FeqVk& vk, FeqCert& cert, Rng& rng);

struct RateEstimate {
  std::size_t trials = 0;
  std::size_t hits = 0;
  double rate = 0;
  double ci_low = 0;
  double ci_high = 0;
};

/// Wilson score interval at 95%.
RateEstimate wilson(std::size_t hits, std::size_t trials);

struct CollisionDiag {
  RateEstimate overlap;  // |⋃_{i≠i'} Γ_i ∩ Γ_i'| > t
  RateEstimate cover;    // some Δ_i ⊆ ⋃_{j≠i} Δ_j
};

/// Samples q independent (Γ, Δ) pairs per trial.
CollisionDiag feq_collision_diag(const FeqParams& params, std::size_t trials, Rng& rng);

// ---------------------------------------------------------------------------
// Serialization.

void write(ByteWriter& w, const Fe1Params& p);
void write(ByteWriter& w, const Fe1Mpk& v);
void write(ByteWriter& w, const Fe1Msk& v);
void write(ByteWriter& w, const Fe1Sk& v);
void write(ByteWriter& w, const Fe1Ciphertext& v);
void write(ByteWriter& w, const Fe1Vk& v);
void write(ByteWriter& w, const Fe1Cert& v);
Fe1Params read_fe1_params(ByteReader& r);
Fe1Mpk read_fe1_mpk(ByteReader& r);
Fe1Msk read_fe1_msk(ByteReader& r);
Fe1Sk read_fe1_sk(ByteReader& r);
Fe1Ciphertext read_fe1_ciphertext(ByteReader& r);
Fe1Vk read_fe1_vk(ByteReader& r);
Fe1Cert read_fe1_cert(ByteReader& r);

void write(ByteWriter& w, const FeadMpk& v);
void write(ByteWriter& w, const FeadMsk& v);
void write(ByteWriter& w, const FeadSk& v);
void write(ByteWriter& w, const FeadCiphertext& v);
void write(ByteWriter& w, const FeadVk& v);
void write(ByteWriter& w, const FeadCert& v);
FeadMpk read_fead_mpk(ByteReader& r);
FeadMsk read_fead_msk(ByteReader& r);
FeadSk read_fead_sk(ByteReader& r);
FeadCiphertext read_fead_ciphertext(ByteReader& r);
FeadVk read_fead_vk(ByteReader& r);
FeadCert read_fead_cert(ByteReader& r);

void write(ByteWriter& w, const FeqParams& p);
void write(ByteWriter& w, const Polynomial& c);
void write(ByteWriter& w, const FeqMpk& v);
void write(ByteWriter& w, const FeqMsk& v);
void write(ByteWriter& w, const FeqSk& v);
void write(ByteWriter& w, const FeqCiphertext& v);
void write(ByteWriter& w, const FeqVk& v);
void write(ByteWriter& w, const FeqCert& v);
FeqParams read_feq_params(ByteReader& r);
Polynomial read_polynomial(ByteReader& r, unsigned k);
FeqMpk read_feq_mpk(ByteReader& r);
FeqMsk read_feq_msk(ByteReader& r);
FeqSk read_feq_sk(ByteReader& r);
FeqCiphertext read_feq_ciphertext(ByteReader& r);
FeqVk read_feq_vk(ByteReader& r);
FeqCert read_feq_cert(ByteReader& r);

/// key=value lines (q, lambda, D, ell, t, N, v, S, k, adaptive).
FeqParams read_feq_params_text(std::istream& in);
std::string write_feq_params_text(const FeqParams& p);

}  // namespace cefe::fe
