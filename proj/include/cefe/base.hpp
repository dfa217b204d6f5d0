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
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cefe/bits.hpp"
#include "cefe/codec.hpp"
#include "cefe/rng.hpp"

namespace cefe::base {

/// SHA-256 counter-mode expansion of (key ∥ input) to nbits output bits.
Bits prf(std::span<const std::uint8_t> key, std::span<const std::uint8_t> input, std::size_t nbits);

// ---------------------------------------------------------------------------
// Secret-key encryption with special correctness.

/// Redundancy tag length; decryption returns ⊥ unless all tag bits are zero.
inline constexpr std::size_t kTagBits = 32;
inline constexpr std::size_t kDefaultLambda = 128;

struct SkeKey {
  Bits k;
  friend bool operator==(const SkeKey&, const SkeKey&) = default;
};

struct SkeCiphertext {
  Bits nonce;
  Bits body;  // |m| + kTagBits
  friend bool operator==(const SkeCiphertext&, const SkeCiphertext&) = default;
};

SkeKey ske_keygen(Rng& rng, std::size_t lambda = kDefaultLambda);
SkeCiphertext ske_enc(const SkeKey& key, std::span<const std::uint8_t> m, Rng& rng);
std::optional<Bits> ske_dec(const SkeKey& key, const SkeCiphertext& ct);

// ---------------------------------------------------------------------------
// Regev-style LWE public-key encryption, one bit per ciphertext.

class ParameterError : public Error {
 public:
  using Error::Error;
};

struct LweParams {
  std::uint32_t n = 256;
  std::uint32_t q = 4099;
  std::uint32_t m = 512;
  std::uint32_t beta = 2;

  /// q/4 > m·β.
  bool margin_ok() const;
  friend bool operator==(const LweParams&, const LweParams&) = default;
};

/// Small profile used inside composed schemes where many keys are generated.
LweParams lwe_desk_params();

/// key=value lines for n, q, m, beta; missing keys keep defaults.
LweParams read_lwe_params(std::istream& in);
std::string write_lwe_params(const LweParams& p);

struct LwePublicKey {
  LweParams params;
  std::vector<std::uint16_t> a;  // column-major: column j holds A[·][j], n entries
  std::vector<std::uint16_t> b;  // m entries, b = Aᵀs + e
  friend bool operator==(const LwePublicKey&, const LwePublicKey&) = default;
};

struct LweSecretKey {
  LweParams params;
  std::vector<std::uint16_t> s;  // n entries
  friend bool operator==(const LweSecretKey&, const LweSecretKey&) = default;
};

struct LweCiphertext {
  std::vector<std::uint16_t> u;  // n entries per bit, concatenated
  std::vector<std::uint16_t> v;  // one entry per bit
  std::size_t bit_count() const { return v.size(); }
  friend bool operator==(const LweCiphertext&, const LweCiphertext&) = default;
};

struct LweKeyPair {
  LwePublicKey pk;
  LweSecretKey sk;
};

/// Throws ParameterError when the decryption margin is violated.
LweKeyPair lwe_keygen(const LweParams& params, Rng& rng);
LweCiphertext lwe_enc(const LwePublicKey& pk, std::span<const std::uint8_t> bits, Rng& rng);
Bits lwe_dec(const LweSecretKey& sk, const LweCiphertext& ct);

// ---------------------------------------------------------------------------
// Classically queried random oracle.

/// Lazily sampled oracle. Answers are a deterministic function of the seed and
/// the query, so two oracles with the same seed agree on every query. Not
/// thread-safe.
class Qrom {
 public:
  explicit Qrom(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t seed() const { return seed_; }

  Bits query(std::span<const std::uint8_t> x, std::size_t nbits);
  std::size_t table_size() const { return table_.size(); }

 private:
  std::uint64_t seed_;
  std::map<std::pair<Bits, std::size_t>, Bits> table_;
};

// ---------------------------------------------------------------------------
// Serialization.

void write(ByteWriter& w, const SkeKey& k);
void write(ByteWriter& w, const SkeCiphertext& c);
void write(ByteWriter& w, const LweParams& p);
void write(ByteWriter& w, const LwePublicKey& k);
void write(ByteWriter& w, const LweSecretKey& k);
void write(ByteWriter& w, const LweCiphertext& c);

SkeKey read_ske_key(ByteReader& r);
SkeCiphertext read_ske_ciphertext(ByteReader& r);
LweParams read_lwe_params(ByteReader& r);
LwePublicKey read_lwe_public_key(ByteReader& r);
LweSecretKey read_lwe_secret_key(ByteReader& r);
LweCiphertext read_lwe_ciphertext(ByteReader& r);

}  // namespace cefe::base
