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

#include "cefe/base.hpp"

#include <gtest/gtest.h>
#include <openssl/evp.h>

#include <cmath>
#include <sstream>

using namespace cefe;
using namespace cefe::base;

TEST(prf, matches_independent_sha256_ctr) {
  // Recompute block 0 through the EVP interface.
  Bits key = from_string("1011");
  Bits input = from_string("01");
  std::vector<std::uint8_t> block = {4, 0, 0, 0, 0, 0, 0, 0, 0x0d, 2, 0, 0, 0, 0, 0, 0, 0, 0x02,
                                     0, 0, 0, 0, 0, 0, 0, 0};
  unsigned char md[32];
  unsigned int len = 0;
  EVP_Digest(block.data(), block.size(), md, &len, EVP_sha256(), nullptr);
  EXPECT_EQ(prf(key, input, 256), unpack_bits(md, 256));
  EXPECT_EQ(prf(key, input, 300).size(), 300u);
  EXPECT_EQ(slice(prf(key, input, 300), 0, 256), unpack_bits(md, 256));
}

TEST(ske, roundtrip) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    auto k = ske_keygen(rng);
    Bits m = rng.bits(static_cast<std::size_t>(rng.below(200)));
    auto ct = ske_enc(k, m, rng);
    ASSERT_EQ(ct.body.size(), m.size() + kTagBits);
    auto out = ske_dec(k, ct);
    ASSERT_TRUE(out.has_value());
    ASSERT_EQ(*out, m);
  }
}

TEST(ske, empty_message) {
  Rng rng(2);
  auto k = ske_keygen(rng);
  auto ct = ske_enc(k, Bits{}, rng);
  EXPECT_EQ(ct.body.size(), kTagBits);
  EXPECT_EQ(ske_dec(k, ct), Bits{});
}

TEST(ske, special_correctness_cross_key) {
  Rng rng(3);
  int non_bot = 0;
  for (int i = 0; i < 100000; ++i) {
    auto k1 = ske_keygen(rng);
    auto k2 = ske_keygen(rng);
    auto ct = ske_enc(k1, rng.bits(16), rng);
    non_bot += ske_dec(k2, ct).has_value();
  }
  EXPECT_EQ(non_bot, 0);
}

TEST(ske, tampered_body_rejected) {
  Rng rng(4);
  auto k = ske_keygen(rng);
  auto ct = ske_enc(k, rng.bits(8), rng);
  ct.body.back() ^= 1;
  EXPECT_FALSE(ske_dec(k, ct).has_value());
}

TEST(lwe, default_roundtrip_both_bits) {
  Rng rng(5);
  LweParams p;
  ASSERT_TRUE(p.margin_ok());
  int errors = 0;
  for (int key = 0; key < 10; ++key) {
    auto kp = lwe_keygen(p, rng);
    for (int i = 0; i < 1000; ++i) {
      Bits bit{static_cast<std::uint8_t>(i & 1)};
      errors += lwe_dec(kp.sk, lwe_enc(kp.pk, bit, rng)) != bit;
    }
  }
  EXPECT_EQ(errors, 0);
}

TEST(lwe, zero_noise_is_exact) {
  Rng rng(6);
  LweParams p{64, 4093, 128, 0};
  auto kp = lwe_keygen(p, rng);
  for (int i = 0; i < 1000; ++i) {
    Bits m = rng.bits(4);
    ASSERT_EQ(lwe_dec(kp.sk, lwe_enc(kp.pk, m, rng)), m);
  }
}

TEST(lwe, label_roundtrip) {
  Rng rng(7);
  auto kp = lwe_keygen(LweParams{}, rng);
  Bits label = rng.bits(128);
  EXPECT_EQ(lwe_dec(kp.sk, lwe_enc(kp.pk, label, rng)), label);
}

TEST(lwe, margin_violation_rejected) {
  Rng rng(8);
  EXPECT_THROW(lwe_keygen(LweParams{16, 101, 64, 2}, rng), ParameterError);
}

TEST(lwe, first_component_mean_does_not_depend_on_bit) {
  Rng rng(9);
  auto kp = lwe_keygen(lwe_desk_params(), rng);
  const int samples = 10000;
  double mean[2] = {0, 0};
  for (int b = 0; b < 2; ++b) {
    for (int i = 0; i < samples; ++i) mean[b] += lwe_enc(kp.pk, Bits{static_cast<std::uint8_t>(b)}, rng).u[0];
    mean[b] /= samples;
  }
  // Uniform on Z_q: σ of the mean ≈ q/√12/√samples.
  const double q = kp.pk.params.q;
  const double sigma = q / std::sqrt(12.0) / std::sqrt(double(samples));
  EXPECT_LT(std::abs(mean[0] - mean[1]), 4 * std::sqrt(2.0) * sigma);
}

TEST(lwe, params_file_roundtrip) {
  LweParams p{40, 7681, 80, 3};
  std::istringstream in(write_lwe_params(p));
  EXPECT_EQ(read_lwe_params(in), p);
  std::istringstream partial("# comment\nn = 64\n");
  auto got = read_lwe_params(partial);
  EXPECT_EQ(got.n, 64u);
  EXPECT_EQ(got.q, 4099u);
  std::istringstream bad("zeta=3\n");
  EXPECT_THROW(read_lwe_params(bad), ParameterError);
}

TEST(qrom, repeated_query_is_stable) {
  Qrom o(1);
  Bits x = from_string("10110");
  auto first = o.query(x, 64);
  EXPECT_EQ(o.query(x, 64), first);
  EXPECT_EQ(o.table_size(), 1u);
}

TEST(qrom, same_seed_same_table) {
  Qrom a(42);
  Qrom b(42);
  Qrom c(43);
  Rng rng(10);
  bool any_diff = false;
  for (int i = 0; i < 100; ++i) {
    Bits x = rng.bits(32);
    EXPECT_EQ(a.query(x, 128), b.query(x, 128));
    any_diff |= a.query(x, 128) != c.query(x, 128);
  }
  EXPECT_TRUE(any_diff);
}

TEST(qrom, monobit_frequency) {
  Qrom o(3);
  const int queries = 10000;
  const int width = 64;
  long ones = 0;
  for (int i = 0; i < queries; ++i) ones += static_cast<long>(weight(o.query(uint_to_bits(static_cast<std::uint64_t>(i), 32), width)));
  const double n = double(queries) * width;
  EXPECT_LT(std::abs(ones - n / 2), 3 * std::sqrt(n / 4));
}

TEST(qrom, interleaved_lengths_are_independent_entries) {
  Qrom o(4);
  Bits x = from_string("1");
  auto short_answer = o.query(x, 16);
  auto long_answer = o.query(x, 256);
  EXPECT_EQ(o.query(x, 16), short_answer);
  EXPECT_EQ(o.query(x, 256), long_answer);
}

TEST(serialization, base_types_roundtrip) {
  Rng rng(11);
  auto k = ske_keygen(rng);
  auto ct = ske_enc(k, rng.bits(10), rng);
  auto kp = lwe_keygen(lwe_desk_params(), rng);
  auto lct = lwe_enc(kp.pk, rng.bits(5), rng);
  ByteWriter w;
  write(w, k);
  write(w, ct);
  write(w, kp.pk);
  write(w, kp.sk);
  write(w, lct);
  auto bytes = w.take();
  ByteReader r(bytes);
  EXPECT_EQ(read_ske_key(r), k);
  EXPECT_EQ(read_ske_ciphertext(r), ct);
  EXPECT_EQ(read_lwe_public_key(r), kp.pk);
  EXPECT_EQ(read_lwe_secret_key(r), kp.sk);
  EXPECT_EQ(read_lwe_ciphertext(r), lct);
  r.expect_end();
}

TEST(lwe, defaults_satisfy_margin) {
  LweParams p;
  EXPECT_EQ(p.n, 256u);
  EXPECT_EQ(p.m, 512u);
  EXPECT_EQ(p.beta, 2u);
  EXPECT_GT(p.q / 4.0, double(p.m) * p.beta);
  // The textbook choice q = 4093 misses the margin by a hair.
  EXPECT_FALSE((LweParams{256, 4093, 512, 2}.margin_ok()));
}
