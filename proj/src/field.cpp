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

#include "cefe/field.hpp"

#include <string>

namespace cefe::field {

bool supported_degree(unsigned k) { return k == 3 || k == 6 || k == 8; }

std::uint32_t modulus(unsigned k) {
  switch (k) {
    case 3: return 0b1011;
    case 6: return 0b1000011;
    case 8: return 0b100011011;
    default: throw FieldError("unsupported extension degree " + std::to_string(k));
  }
}

FieldElem::FieldElem(unsigned k, std::uint32_t value) : k_(k), value_(value) {
  if (!supported_degree(k)) throw FieldError("unsupported extension degree " + std::to_string(k));
  if (value >= (1u << k)) throw FieldError("field element out of range");
}

FieldElem FieldElem::random(unsigned k, Rng& rng) {
  return FieldElem(k, static_cast<std::uint32_t>(rng.below(1u << k)));
}

FieldElem FieldElem::from_bits(unsigned k, const Bits& bits) {
  require_length(bits.size(), k, "FieldElem::from_bits");
  return FieldElem(k, static_cast<std::uint32_t>(bits_to_uint(bits)));
}

namespace {
void same_field(const FieldElem& a, const FieldElem& b) {
  if (a.degree() != b.degree()) throw FieldError("field degree mismatch");
}
}  // namespace

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  same_field(a, b);
  return FieldElem(a.degree(), a.value() ^ b.value());
}

FieldElem fe_mul(const FieldElem& a, const FieldElem& b) {
  same_field(a, b);
  const unsigned k = a.degree();
  const std::uint32_t mod = modulus(k);
  std::uint32_t x = a.value();
  std::uint32_t y = b.value();
  std::uint32_t acc = 0;
  while (y) {
    if (y & 1u) acc ^= x;
    y >>= 1;
    x <<= 1;
    if (x & (1u << k)) x ^= mod;
  }
  return FieldElem(k, acc);
}

FieldElem fe_pow(FieldElem a, std::uint64_t e) {
  FieldElem r = FieldElem::one(a.degree());
  while (e) {
    if (e & 1u) r = fe_mul(r, a);
    a = fe_mul(a, a);
    e >>= 1;
  }
  return r;
}

FieldElem fe_inv(const FieldElem& a) {
  if (a.is_zero()) throw FieldError("inverse of zero");
  // a^(2^k − 2) = a^{-1} in GF(2^k)*.
  return fe_pow(a, (std::uint64_t{1} << a.degree()) - 2);
}

UniPoly::UniPoly(unsigned k, std::vector<FieldElem> coeffs) : k_(k), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (c.degree() != k) throw FieldError("polynomial coefficient from another field");
}

int UniPoly::degree() const {
  for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i)
    if (!coeffs_[static_cast<std::size_t>(i)].is_zero()) return i;
  return -1;
}

FieldElem UniPoly::eval(const FieldElem& x) const {
  FieldElem acc = FieldElem::zero(k_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = fe_mul(acc, x) + *it;
  return acc;
}

UniPoly random_poly_with_constant(const FieldElem& c0, std::size_t d, Rng& rng) {
  std::vector<FieldElem> coeffs;
  coeffs.reserve(d + 1);
  coeffs.push_back(c0);
  for (std::size_t i = 1; i <= d; ++i) coeffs.push_back(FieldElem::random(c0.degree(), rng));
  return UniPoly(c0.degree(), std::move(coeffs));
}

FieldElem interpolate_at(const std::vector<std::pair<FieldElem, FieldElem>>& points, const FieldElem& x0) {
  if (points.empty()) throw FieldError("interpolation needs at least one point");
  const unsigned k = x0.degree();
  FieldElem acc = FieldElem::zero(k);
  for (std::size_t i = 0; i < points.size(); ++i) {
    FieldElem num = FieldElem::one(k);
    FieldElem den = FieldElem::one(k);
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      if (points[i].first == points[j].first) throw FieldError("duplicate abscissa in interpolation");
      // Subtraction is addition in characteristic 2.
      num = fe_mul(num, x0 + points[j].first);
      den = fe_mul(den, points[i].first + points[j].first);
    }
    acc = acc + fe_mul(points[i].second, fe_mul(num, fe_inv(den)));
  }
  return acc;
}

FieldElem index_point(unsigned k, std::size_t i) {
  if (i == 0 || i >= (std::size_t{1} << k)) throw FieldError("index does not embed into the field");
  return FieldElem(k, static_cast<std::uint32_t>(i));
}

}  // namespace cefe::field
