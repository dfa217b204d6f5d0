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

#include <cstdint>
#include <utility>
#include <vector>

#include "cefe/bits.hpp"
#include "cefe/rng.hpp"

namespace cefe::field {

/// Supported extension degrees and their fixed reduction polynomials:
/// k=3: x³+x+1, k=6: x⁶+x+1, k=8: x⁸+x⁴+x³+x+1.
bool supported_degree(unsigned k);
std::uint32_t modulus(unsigned k);

class FieldError : public Error {
 public:
  using Error::Error;
};

/// Element of GF(2^k); bit i of `value` is the coefficient of x^i.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(unsigned k, std::uint32_t value);

  unsigned degree() const { return k_; }
  std::uint32_t value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  static FieldElem zero(unsigned k) { return FieldElem(k, 0); }
  static FieldElem one(unsigned k) { return FieldElem(k, 1); }
  static FieldElem random(unsigned k, Rng& rng);

  Bits to_bits() const { return uint_to_bits(value_, k_); }
  static FieldElem from_bits(unsigned k, const Bits& bits);

  friend bool operator==(const FieldElem&, const FieldElem&) = default;

 private:
  unsigned k_ = 0;
  std::uint32_t value_ = 0;
};

FieldElem operator+(const FieldElem& a, const FieldElem& b);
FieldElem fe_mul(const FieldElem& a, const FieldElem& b);
inline FieldElem operator*(const FieldElem& a, const FieldElem& b) { return fe_mul(a, b); }
FieldElem fe_pow(FieldElem a, std::uint64_t e);
/// Multiplicative inverse; throws on zero.
FieldElem fe_inv(const FieldElem& a);

/// Univariate polynomial over GF(2^k), constant term first.
class UniPoly {
 public:
  UniPoly(unsigned k, std::vector<FieldElem> coeffs);

  unsigned field_degree() const { return k_; }
  const std::vector<FieldElem>& coeffs() const { return coeffs_; }
  /// Index of the highest nonzero coefficient, or −1 for the zero polynomial.
  int degree() const;
  FieldElem eval(const FieldElem& x) const;

 private:
  unsigned k_;
  std::vector<FieldElem> coeffs_;
};

/// Degree-d polynomial with constant term c0 and uniform higher coefficients.
UniPoly random_poly_with_constant(const FieldElem& c0, std::size_t d, Rng& rng);

/// Lagrange evaluation at x0 of the unique interpolant through `points`.
FieldElem interpolate_at(const std::vector<std::pair<FieldElem, FieldElem>>& points, const FieldElem& x0);

/// Embeds index i ∈ [1, 2^k) as the field element with binary expansion i.
FieldElem index_point(unsigned k, std::size_t i);

}  // namespace cefe::field
