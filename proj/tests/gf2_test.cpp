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

#include "cefe/gf2.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

using namespace cefe;
using namespace cefe::gf2;

namespace {

// Span of a generator list by brute force, independent of LinearCode.
std::set<Bits> span_of(const std::vector<Bits>& gens, std::size_t q) {
  std::set<Bits> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << gens.size()); ++m) {
    Bits v(q, 0);
    for (std::size_t i = 0; i < gens.size(); ++i)
      if ((m >> i) & 1u) xor_into(v, gens[i]);
    out.insert(v);
  }
  return out;
}

std::vector<Bits> rows_of(const BitMatrix& m) {
  std::vector<Bits> out;
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m.row(r));
  return out;
}

std::vector<Bits> hamming_rows() {
  return {from_string("1000110"), from_string("0100101"), from_string("0010011"), from_string("0001111")};
}

}  // namespace

TEST(rref, identity_is_fixed) {
  auto id = BitMatrix::identity(3);
  auto r = rref(id);
  EXPECT_EQ(r.matrix, id);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(rref, zero_matrix) {
  BitMatrix z(2, 4);
  auto r = rref(z);
  EXPECT_TRUE(r.matrix.is_zero());
  EXPECT_TRUE(r.pivots.empty());
}

TEST(rref, duplicate_rows) {
  auto m = BitMatrix::from_rows({from_string("11"), from_string("11")});
  auto r = rref(m);
  EXPECT_EQ(r.matrix, BitMatrix::from_rows({from_string("11"), from_string("00")}));
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0}));
}

TEST(rref, exhaustive_2x2_rank_and_row_space) {
  for (unsigned v = 0; v < 16; ++v) {
    auto m = BitMatrix::from_rows({uint_to_bits(v & 3u, 2), uint_to_bits(v >> 2, 2)});
    auto r = rref(m);
    auto before = span_of(rows_of(m), 2);
    auto after = span_of(rows_of(r.matrix), 2);
    EXPECT_EQ(before, after);
    EXPECT_EQ(std::size_t{1} << r.rank(), before.size());
  }
}

TEST(rref, idempotent_on_random_matrices) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    BitMatrix m(5, 9);
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = 0; c < 9; ++c) m.set(r, c, rng.bit());
    auto once = rref(m);
    auto twice = rref(once.matrix);
    EXPECT_EQ(once.matrix, twice.matrix);
    EXPECT_EQ(once.pivots, twice.pivots);
  }
}

TEST(linear_code, generator_times_parity_check_is_zero) {
  auto code = LinearCode::from_generator(BitMatrix::from_rows(hamming_rows()));
  EXPECT_EQ(code.length(), 7u);
  EXPECT_EQ(code.dimension(), 4u);
  EXPECT_TRUE((code.generator() * code.parity_check().transpose()).is_zero());
  EXPECT_EQ(code.minimum_distance(), 3u);
  EXPECT_EQ(code.dual().minimum_distance(), 4u);
}

TEST(linear_code, codewords_match_brute_force_span) {
  auto code = LinearCode::from_generator(BitMatrix::from_rows(hamming_rows()));
  auto words = code.codewords();
  std::set<Bits> got(words.begin(), words.end());
  EXPECT_EQ(got, span_of(hamming_rows(), 7));
  for (const auto& w : words) EXPECT_TRUE(code.contains(w));
}

TEST(mod_c, zero_maps_to_zero) {
  auto code = LinearCode::from_generator(BitMatrix::from_rows(hamming_rows()));
  EXPECT_EQ(mod_c(Bits(7, 0), code), Bits(7, 0));
}

TEST(mod_c, codewords_map_to_zero) {
  auto code = LinearCode::from_generator(BitMatrix::from_rows(hamming_rows()));
  for (const auto& c : span_of(hamming_rows(), 7)) EXPECT_EQ(mod_c(c, code), Bits(7, 0));
}

TEST(mod_c, invariant_under_codeword_shift) {
  auto code = LinearCode::from_generator(BitMatrix::from_rows(hamming_rows()));
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Bits x = rng.bits(7);
    for (const auto& c : span_of(hamming_rows(), 7)) EXPECT_EQ(mod_c(xor_bits(x, c), code), mod_c(x, code));
  }
}

TEST(mod_c, laws_exhaustive_small_code) {
  // [10,4] code; all pairs of the 1024 vectors.
  std::vector<Bits> gens = {from_string("1101000110"), from_string("0110101001"), from_string("0011110000"),
                            from_string("1111111111")};
  auto code = LinearCode::from_generator(BitMatrix::from_rows(gens));
  auto words = span_of(gens, 10);
  std::vector<Bits> reps(1024);
  for (unsigned v = 0; v < 1024; ++v) {
    reps[v] = mod_c(uint_to_bits(v, 10), code);
    EXPECT_EQ(mod_c(reps[v], code), reps[v]);
  }
  for (unsigned a = 0; a < 1024; ++a) {
    for (unsigned b = 0; b < 1024; b += 7) {
      bool same = reps[a] == reps[b];
      bool in_code = words.count(uint_to_bits(a ^ b, 10)) > 0;
      EXPECT_EQ(same, in_code);
    }
  }
}

TEST(mod_c, closure_in_supercode) {
  // C2 ⊆ C1: x ∈ C1 ⇒ mod_c(x, C2) ∈ C1.
  auto pair = CssPair::steane();
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    Bits x = pair.c1().encode(rng.bits(pair.k1()));
    EXPECT_TRUE(pair.c1().contains(mod_c(x, pair.c2())));
  }
}

TEST(mod_c, length_mismatch_throws) {
  auto code = LinearCode::from_generator(BitMatrix::from_rows(hamming_rows()));
  EXPECT_THROW(mod_c(Bits(6, 0), code), LengthError);
}

TEST(css_pair, steane_parameters) {
  auto pair = CssPair::steane();
  EXPECT_EQ(pair.k1(), 4u);
  EXPECT_EQ(pair.k2(), 3u);
  EXPECT_EQ(pair.t(), 1u);
  EXPECT_TRUE(pair.distance_verified());
}

TEST(css_pair, golay_and_qr47_validate) {
  auto g = CssPair::golay23();
  EXPECT_EQ(g.k1(), 12u);
  EXPECT_EQ(g.k2(), 11u);
  EXPECT_EQ(g.c1().minimum_distance(), 7u);
  auto q = CssPair::qr47();
  EXPECT_EQ(q.length(), 47u);
  EXPECT_EQ(q.k1(), 24u);
  EXPECT_EQ(q.k2(), 23u);
  EXPECT_TRUE(q.distance_verified());
}

TEST(css_pair, rejects_non_nested_pair) {
  auto c1 = LinearCode::from_generator(BitMatrix::from_rows(hamming_rows()));
  auto c2 = c1.dual();
  // Mutate one C2 generator row by a single bit so it leaves C1.
  auto rows = rows_of(c2.generator());
  rows[0][0] ^= 1;
  auto bad = LinearCode::from_generator(BitMatrix::from_rows(rows));
  EXPECT_THROW(CssPair::make(c1, bad, 1), InvalidCode);
}

TEST(css_pair, rejects_insufficient_distance) {
  auto c1 = LinearCode::from_generator(BitMatrix::from_rows(hamming_rows()));
  EXPECT_THROW(CssPair::make(c1, c1.dual(), 2), InvalidCode);
}

TEST(css_pair, message_encoding_roundtrip) {
  auto pair = CssPair::golay23();
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    Bits m = rng.bits(pair.message_bits());
    Bits rep = pair.encode_message(m);
    EXPECT_TRUE(pair.c1().contains(rep));
    EXPECT_EQ(mod_c(rep, pair.c2()), rep);
    EXPECT_EQ(pair.decode_message(rep), m);
  }
}

TEST(sample_coset_space, c2_samples_are_codewords) {
  auto pair = CssPair::steane();
  auto words = span_of(rows_of(pair.c2().generator()), 7);
  EXPECT_EQ(words.size(), 8u);
  Rng rng(1);
  std::set<Bits> seen;
  for (int i = 0; i < 400; ++i) {
    auto s = sample_coset_space(pair, CosetSpace::C2, rng);
    EXPECT_TRUE(words.count(s));
    seen.insert(s);
  }
  EXPECT_EQ(seen.size(), 8u);
}

TEST(sample_coset_space, steane_plaintext_space_has_two_representatives) {
  auto pair = CssPair::steane();
  Rng rng(2);
  std::set<Bits> seen;
  for (int i = 0; i < 200; ++i) seen.insert(sample_coset_space(pair, CosetSpace::C1ModC2, rng));
  EXPECT_EQ(seen.size(), 2u);
}

TEST(sample_coset_space, ambient_spaces_have_expected_sizes) {
  auto pair = CssPair::steane();
  Rng rng(4);
  std::set<Bits> mod_c1;
  std::set<Bits> mod_c2d;
  for (int i = 0; i < 2000; ++i) {
    mod_c1.insert(sample_coset_space(pair, CosetSpace::AmbientModC1, rng));
    mod_c2d.insert(sample_coset_space(pair, CosetSpace::AmbientModC2Dual, rng));
  }
  EXPECT_EQ(mod_c1.size(), 8u);   // 2^(7-4)
  EXPECT_EQ(mod_c2d.size(), 8u);  // C2⊥ = C1
}

TEST(sample_coset_space, deterministic_under_seed) {
  auto pair = CssPair::golay23();
  Rng a(77);
  Rng b(77);
  for (auto which : {CosetSpace::C1ModC2, CosetSpace::AmbientModC1, CosetSpace::C2, CosetSpace::AmbientModC2Dual})
    EXPECT_EQ(sample_coset_space(pair, which, a), sample_coset_space(pair, which, b));
}

TEST(syndrome_decode, codeword_is_fixed) {
  auto pair = CssPair::steane();
  for (const auto& c : pair.c1().codewords()) EXPECT_EQ(syndrome_decode(pair, c, DecodeSide::C1), c);
}

TEST(syndrome_decode, corrects_every_single_flip_on_steane) {
  auto pair = CssPair::steane();
  for (const auto& c : pair.c1().codewords()) {
    for (std::size_t i = 0; i < 7; ++i) {
      Bits y = c;
      y[i] ^= 1;
      EXPECT_EQ(syndrome_decode(pair, y, DecodeSide::C1), c);
      EXPECT_EQ(syndrome_decode(pair, y, DecodeSide::C2Dual), c);
    }
  }
}

TEST(syndrome_decode, weight_two_errors_never_return_original) {
  // Hamming code is perfect: every weight-2 error decodes to a different codeword.
  auto pair = CssPair::steane();
  Bits c(7, 0);
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = i + 1; j < 7; ++j) {
      Bits y = c;
      y[i] ^= 1;
      y[j] ^= 1;
      auto got = syndrome_decode(pair, y, DecodeSide::C1);
      if (got) EXPECT_NE(*got, c);
    }
  }
}

TEST(syndrome_decode, golay_corrects_up_to_three_errors) {
  auto pair = CssPair::golay23();
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    Bits c = pair.c1().encode(rng.bits(pair.k1()));
    Bits y = c;
    for (auto i : rng.subset(23, static_cast<std::size_t>(rng.below(4)))) y[i] ^= 1;
    EXPECT_EQ(syndrome_decode(pair, y, DecodeSide::C1), c);
  }
}

TEST(security_margin, large_profile) {
  EXPECT_NEAR(security_margin(128, 128, 32, 2, 1), 16.0 - 4.0 * std::log(2.0), 1e-12);
  EXPECT_NEAR(security_margin(128, 128, 32, 2, 1), 13.2274, 1e-4);
}

TEST(security_margin, zero_t_is_negative) {
  EXPECT_LT(security_margin(7, 7, 0, 4, 3), 0.0);
  EXPECT_NEAR(security_margin(7, 7, 0, 4, 3), -4.0 * std::log(2.0), 1e-12);
}

TEST(security_margin, linear_in_t) {
  double base = security_margin(100, 47, 5, 24, 23);
  EXPECT_NEAR(security_margin(100, 47, 8, 24, 23) - base, 3.0 * 100.0 / 147.0, 1e-12);
}

TEST(code_io, roundtrip) {
  auto code = LinearCode::from_generator(BitMatrix::from_rows(hamming_rows()));
  std::istringstream in(write_code(code));
  auto back = read_code(in);
  EXPECT_EQ(back.generator(), code.generator());
}

TEST(code_io, rejects_bad_rows) {
  std::istringstream short_row("7 1\n101\n");
  EXPECT_THROW(read_code(short_row), InvalidCode);
  std::istringstream dependent("3 2\n110\n110\n");
  EXPECT_THROW(read_code(dependent), InvalidCode);
}
