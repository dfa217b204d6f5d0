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

#include <gtest/gtest.h>

#include <array>

using namespace cefe;
using namespace cefe::field;

namespace {

// Carry-less multiply then reduce by long division; independent of fe_mul.
std::uint32_t oracle_mul(unsigned k, std::uint32_t a, std::uint32_t b) {
  std::uint32_t prod = 0;
  for (unsigned i = 0; i < k; ++i)
    if ((b >> i) & 1u) prod ^= a << i;
  const std::uint32_t mod = modulus(k);
  for (int bit = static_cast<int>(2 * k); bit >= static_cast<int>(k); --bit)
    if ((prod >> bit) & 1u) prod ^= mod << (bit - static_cast<int>(k));
  return prod;
}

FieldElem F(unsigned k, std::uint32_t v) { return FieldElem(k, v); }

}  // namespace

TEST(fe_mul, identities) {
  for (unsigned k : {3u, 6u, 8u}) {
    for (std::uint32_t a = 0; a < (1u << k); ++a) {
      EXPECT_EQ(fe_mul(F(k, a), FieldElem::one(k)), F(k, a));
      EXPECT_EQ(fe_mul(F(k, a), FieldElem::zero(k)), FieldElem::zero(k));
    }
  }
}

TEST(fe_mul, gf8_three_times_three) { EXPECT_EQ(fe_mul(F(3, 3), F(3, 3)), F(3, 5)); }

TEST(fe_mul, full_tables_match_oracle) {
  for (unsigned k : {3u, 6u, 8u})
    for (std::uint32_t a = 0; a < (1u << k); ++a)
      for (std::uint32_t b = 0; b < (1u << k); ++b) ASSERT_EQ(fe_mul(F(k, a), F(k, b)).value(), oracle_mul(k, a, b));
}

TEST(fe_mul, degree_mismatch_throws) { EXPECT_THROW(fe_mul(F(3, 1), F(6, 1)), FieldError); }

TEST(field_axioms, exhaustive_gf8) {
  const unsigned k = 3;
  for (std::uint32_t a = 0; a < 8; ++a) {
    EXPECT_TRUE((F(k, a) + F(k, a)).is_zero());
    if (a) EXPECT_EQ(fe_mul(F(k, a), fe_inv(F(k, a))), FieldElem::one(k));
    for (std::uint32_t b = 0; b < 8; ++b) {
      EXPECT_EQ(F(k, a) * F(k, b), F(k, b) * F(k, a));
      EXPECT_EQ(F(k, a) + F(k, b), F(k, b) + F(k, a));
      for (std::uint32_t c = 0; c < 8; ++c) {
        EXPECT_EQ((F(k, a) * F(k, b)) * F(k, c), F(k, a) * (F(k, b) * F(k, c)));
        EXPECT_EQ(F(k, a) * (F(k, b) + F(k, c)), F(k, a) * F(k, b) + F(k, a) * F(k, c));
      }
    }
  }
}

TEST(field_axioms, randomized_gf64_gf256) {
  Rng rng(21);
  for (unsigned k : {6u, 8u}) {
    for (int i = 0; i < 2000; ++i) {
      auto a = FieldElem::random(k, rng);
      auto b = FieldElem::random(k, rng);
      auto c = FieldElem::random(k, rng);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_TRUE((a + a).is_zero());
      if (!a.is_zero()) EXPECT_EQ(a * fe_inv(a), FieldElem::one(k));
    }
  }
}

TEST(fe_inv, zero_throws) { EXPECT_THROW(fe_inv(FieldElem::zero(6)), FieldError); }

TEST(field_elem, rejects_unsupported_degree_and_range) {
  EXPECT_THROW(FieldElem(5, 1), FieldError);
  EXPECT_THROW(FieldElem(3, 8), FieldError);
}

TEST(field_elem, bits_roundtrip) {
  for (std::uint32_t v = 0; v < 64; ++v) EXPECT_EQ(FieldElem::from_bits(6, F(6, v).to_bits()), F(6, v));
}

TEST(random_poly_with_constant, degree_zero_is_constant) {
  Rng rng(1);
  auto p = random_poly_with_constant(F(3, 6), 0, rng);
  ASSERT_EQ(p.coeffs().size(), 1u);
  EXPECT_EQ(p.coeffs()[0], F(3, 6));
  EXPECT_EQ(p.eval(F(3, 5)), F(3, 6));
}

TEST(random_poly_with_constant, eval_at_zero_is_constant) {
  Rng rng(2);
  for (int i = 0; i < 10000; ++i) {
    auto c0 = FieldElem::random(6, rng);
    auto p = random_poly_with_constant(c0, 1 + static_cast<std::size_t>(rng.below(5)), rng);
    ASSERT_EQ(p.eval(FieldElem::zero(6)), c0);
  }
}

TEST(random_poly_with_constant, coefficient_one_is_uniform) {
  Rng rng(3);
  std::array<int, 8> counts{};
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) ++counts[random_poly_with_constant(F(3, 0), 2, rng).coeffs()[1].value()];
  double chi2 = 0;
  const double expect = draws / 8.0;
  for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
  EXPECT_LT(chi2, 24.32);  // χ²(7) at 0.001
}

TEST(interpolate_at, constant_data) {
  std::vector<std::pair<FieldElem, FieldElem>> pts = {{F(3, 1), F(3, 4)}, {F(3, 2), F(3, 4)}, {F(3, 5), F(3, 4)}};
  EXPECT_EQ(interpolate_at(pts, FieldElem::zero(3)), F(3, 4));
}

TEST(interpolate_at, linear_gf8_example) {
  UniPoly p(3, {F(3, 3), F(3, 2)});
  EXPECT_EQ(p.eval(F(3, 1)), F(3, 1));
  EXPECT_EQ(p.eval(F(3, 2)), F(3, 7));
  EXPECT_EQ(interpolate_at({{F(3, 1), F(3, 1)}, {F(3, 2), F(3, 7)}}, FieldElem::zero(3)), F(3, 3));
}

TEST(interpolate_at, duplicate_abscissa_throws) {
  EXPECT_THROW(interpolate_at({{F(3, 1), F(3, 1)}, {F(3, 1), F(3, 7)}}, FieldElem::zero(3)), FieldError);
}

TEST(interpolate_at, roundtrip_degree_dt) {
  Rng rng(4);
  const std::size_t t = 2;
  const std::size_t d = 2;
  for (int trial = 0; trial < 1000; ++trial) {
    auto c0 = FieldElem::random(6, rng);
    auto p = random_poly_with_constant(c0, t * d, rng);
    std::vector<std::pair<FieldElem, FieldElem>> pts;
    for (auto i : rng.subset(63, t * d + 1)) {
      auto x = index_point(6, i + 1);
      pts.emplace_back(x, p.eval(x));
    }
    ASSERT_EQ(interpolate_at(pts, FieldElem::zero(6)), c0);
  }
}

TEST(interpolate_at, recovers_arbitrary_point_up_to_max_degree) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = random_poly_with_constant(FieldElem::random(3, rng), 6, rng);
    std::vector<std::pair<FieldElem, FieldElem>> pts;
    for (std::uint32_t i = 1; i < 8; ++i) pts.emplace_back(F(3, i), p.eval(F(3, i)));
    for (std::uint32_t x = 0; x < 8; ++x) EXPECT_EQ(interpolate_at(pts, F(3, x)), p.eval(F(3, x)));
  }
}

TEST(index_point, bounds) {
  EXPECT_THROW(index_point(3, 0), FieldError);
  EXPECT_THROW(index_point(3, 8), FieldError);
  EXPECT_EQ(index_point(3, 7), F(3, 7));
}
