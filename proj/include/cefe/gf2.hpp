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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cefe/bits.hpp"
#include "cefe/rng.hpp"

namespace cefe::gf2 {

/// Dense GF(2) matrix, row-major, one bit per byte. Desk-scale only.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}
  static BitMatrix from_rows(const std::vector<Bits>& rows);
  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint8_t at(std::size_t r, std::size_t c) const { return bits_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::uint8_t v) { bits_[r * cols_ + c] = v & 1u; }

  Bits row(std::size_t r) const;
  std::span<const std::uint8_t> row_view(std::size_t r) const {
    return {bits_.data() + r * cols_, cols_};
  }
  void xor_row_into(std::size_t src, std::size_t dst);
  void swap_rows(std::size_t a, std::size_t b);

  BitMatrix transpose() const;
  BitMatrix operator*(const BitMatrix& rhs) const;
  /// this · v for a column vector v.
  Bits apply(std::span<const std::uint8_t> v) const;
  bool is_zero() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct Rref {
  BitMatrix matrix;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row-echelon form over GF(2). Zero rows sink to the bottom.
Rref rref(const BitMatrix& m);

/// A [q,k] binary linear code held in reduced form.
class LinearCode {
 public:
  /// Builds from any spanning set of rows; dependent rows are dropped.
  static LinearCode from_generator(const BitMatrix& generator);

  std::size_t length() const { return length_; }
  std::size_t dimension() const { return generator_.rows(); }
  /// k×q, full row rank, in RREF.
  const BitMatrix& generator() const { return generator_; }
  /// (q−k)×q with generator·parity_checkᵀ = 0.
  const BitMatrix& parity_check() const { return parity_check_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(std::span<const std::uint8_t> x) const;
  LinearCode dual() const;
  Bits encode(std::span<const std::uint8_t> message) const;
  /// All 2^k codewords; k must be ≤ 24.
  std::vector<Bits> codewords() const;
  /// Minimum Hamming distance by exhaustive enumeration (k ≤ 24).
  std::size_t minimum_distance() const;

 private:
  std::size_t length_ = 0;
  BitMatrix generator_;
  BitMatrix parity_check_;
  std::vector<std::size_t> pivots_;
};

/// Canonical coset representative of x modulo `code`: x with its support on
/// the code's pivot columns eliminated by the RREF generator rows.
Bits mod_c(std::span<const std::uint8_t> x, const LinearCode& code);

/// Largest code dimension for which distances are checked exhaustively.
inline constexpr std::size_t kMaxEnumerationDimension = 24;

enum class CosetSpace { C1ModC2, AmbientModC1, C2, AmbientModC2Dual };

/// Nested pair C2 ⊆ C1 where C1 and C2⊥ each correct t errors.
class CssPair {
 public:
  /// Validates nesting, k1 > k2 and (when enumerable) both distances ≥ 2t+1.
  /// For codes too large to enumerate, `asserted_distance` must be provided
  /// by the caller and is recorded as unverified.
  static CssPair make(LinearCode c1, LinearCode c2, std::size_t t,
                      std::optional<std::size_t> asserted_distance = std::nullopt);

  /// C1 = [7,4] Hamming, C2 = C1⊥, t = 1.
  static CssPair steane();
  /// C1 = binary quadratic-residue code of length 23 (Golay), C2 = C1⊥, t = 3.
  static CssPair golay23();
  /// C1 = binary quadratic-residue code of length 47, C2 = C1⊥, t = 5.
  static CssPair qr47();

  const LinearCode& c1() const { return c1_; }
  const LinearCode& c2() const { return c2_; }
  const LinearCode& c2_dual() const { return c2_dual_; }
  std::size_t length() const { return c1_.length(); }
  std::size_t t() const { return t_; }
  std::size_t k1() const { return c1_.dimension(); }
  std::size_t k2() const { return c2_.dimension(); }
  /// k1 − k2: bit length of a C1/C2 plaintext.
  std::size_t message_bits() const { return k1() - k2(); }
  bool distance_verified() const { return distance_verified_; }

  /// Maps m ∈ {0,1}^{k1−k2} to its canonical C1/C2 representative.
  Bits encode_message(std::span<const std::uint8_t> m) const;
  /// Inverse of encode_message on canonical representatives.
  Bits decode_message(std::span<const std::uint8_t> rep) const;

 private:
  LinearCode c1_;
  LinearCode c2_;
  LinearCode c2_dual_;
  std::size_t t_ = 0;
  bool distance_verified_ = false;
  // C1 generator rows completing a basis of C2 to C1, used for plaintext encoding.
  BitMatrix complement_;
};

class InvalidCode : public Error {
 public:
  using Error::Error;
};

/// Uniform sample from the named coset space, as its canonical representative.
Bits sample_coset_space(const CssPair& pair, CosetSpace which, Rng& rng);

enum class DecodeSide { C1, C2Dual };

/// Table-driven bounded-distance decoding. Returns nullopt when the syndrome
/// matches no error of weight ≤ t.
std::optional<Bits> syndrome_decode(const CssPair& pair, std::span<const std::uint8_t> y,
                                    DecodeSide side);

/// t·p/(p+q) − 4(k1−k2)·ln 2; positive margins are required for the CSS
/// variant unless the caller forces otherwise.
double security_margin(std::size_t p, std::size_t q, std::size_t t, std::size_t k1,
                       std::size_t k2);

/// Parses "q k" followed by k rows of 0/1 characters.
LinearCode read_code(std::istream& in);
std::string write_code(const LinearCode& code);

/// Cyclic code of length n from a generator polynomial (coefficients,
/// constant term first).
LinearCode cyclic_code(std::size_t n, std::span<const std::uint8_t> generator_poly);

}  // namespace cefe::gf2
