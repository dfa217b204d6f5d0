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

#include "cefe/cd.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace cefe;
using namespace cefe::cd;
using qsim::Basis;
using qsim::PauliMask;

namespace {

struct Keys {
  EncKey enc;
  DecKey dec;
};

Keys ske_keys(Rng& rng) {
  auto k = base::ske_keygen(rng);
  return {k, k};
}

Keys pke_keys(Rng& rng) {
  auto kp = base::lwe_keygen(base::lwe_desk_params(), rng);
  return {kp.pk, kp.sk};
}

void measure_everything(CeCiphertext& ct, Rng& rng) {
  for (auto& reg : ct.quantum) reg.measure_all(Basis::Computational, rng);
}

double binomial_sigma(double p, int n) { return std::sqrt(p * (1 - p) / n); }

}  // namespace

TEST(cd, honest_roundtrip_and_verification) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    auto k = cd_keygen(24, 8, rng);
    ASSERT_EQ(k.w(), 8u);
    Bits m = rng.bits(16);
    auto reg = cd_enc(k, m);
    ASSERT_EQ(cd_dec(k, reg, rng), m);
    ASSERT_TRUE(cd_vrfy(k, cd_del(reg, rng)));
    ASSERT_TRUE(reg.consumed());
  }
}

TEST(cd, modification_correctness) {
  Rng rng(2);
  for (int i = 0; i < 10000; ++i) {
    auto k = cd_keygen(20, 8, rng);
    auto reg = cd_enc(k, rng.bits(12));
    auto mask = PauliMask::random(20, rng);
    reg.apply_pauli(mask);
    auto cert = cd_del(reg, rng);
    ASSERT_TRUE(cd_vrfy(k, cd_modify(mask.x, mask.z, cert)));
  }
}

TEST(cd, measure_all_adversary_rate) {
  Rng rng(3);
  const int trials = 100000;
  int passes = 0;
  for (int i = 0; i < trials; ++i) {
    auto k = cd_keygen(9, 8, rng);
    auto reg = cd_enc(k, rng.bits(1));
    reg.measure_all(Basis::Computational, rng);
    passes += cd_vrfy(k, cd_del(reg, rng));
  }
  const double p = 1.0 / 256;
  EXPECT_LT(std::abs(passes / double(trials) - p), 3 * binomial_sigma(p, trials));
}

TEST(cd, computational_tampering_never_flips_verdict) {
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    auto k = cd_keygen(16, 8, rng);
    auto reg = cd_enc(k, rng.bits(8));
    for (std::size_t j = 0; j < 16; ++j)
      if (!k.theta[j]) reg.apply_gate(qsim::Gate::X, j);
    ASSERT_TRUE(cd_vrfy(k, cd_del(reg, rng)));
  }
}

TEST(cd, length_checks) {
  Rng rng(5);
  auto k = cd_keygen(10, 4, rng);
  EXPECT_THROW(cd_enc(k, Bits(5, 0)), LengthError);
  EXPECT_THROW(cd_keygen(3, 4, rng), LengthError);
  auto reg = cd_enc(k, Bits(6, 0));
  cd_del(reg, rng);
  EXPECT_THROW(cd_dec(k, reg, rng), qsim::ConsumedRegister);
}

class CeMatrix : public ::testing::TestWithParam<std::tuple<Variant, Backend>> {
 protected:
  CeConfig config() const {
    return std::get<0>(GetParam()) == Variant::Qrom ? CeConfig::qrom(32, 16) : CeConfig::steane();
  }
  Keys keys(Rng& rng) const { return std::get<1>(GetParam()) == Backend::Ske ? ske_keys(rng) : pke_keys(rng); }
  std::size_t message_bits() const { return std::get<0>(GetParam()) == Variant::Qrom ? 8 : 3; }
};

TEST_P(CeMatrix, decryption_and_verification) {
  Rng rng(10);
  base::Qrom oracle(10);
  auto cfg = config();
  for (int i = 0; i < 200; ++i) {
    auto k = keys(rng);
    Bits m = rng.bits(message_bits());
    auto bundle = ce_enc(cfg, k.enc, m, oracle, rng);
    ASSERT_EQ(bundle.ct.quantum_size(), cfg.quantum_size(m.size()));
    ASSERT_EQ(ce_dec(cfg, k.dec, bundle.ct, oracle, rng), m);
    // Decrypting twice and then deleting still verifies.
    ASSERT_EQ(ce_dec(cfg, k.dec, bundle.ct, oracle, rng), m);
    auto cert = ce_del(bundle.ct, rng);
    ASSERT_TRUE(ce_vrfy(bundle.vk, cert, rng));
  }
}

TEST_P(CeMatrix, modification_correctness) {
  Rng rng(11);
  base::Qrom oracle(11);
  auto cfg = config();
  for (int i = 0; i < 200; ++i) {
    auto k = keys(rng);
    auto bundle = ce_enc(cfg, k.enc, rng.bits(message_bits()), oracle, rng);
    auto mask = PauliMask::random(bundle.ct.quantum_size(), rng);
    twirl(bundle.ct, mask);
    auto cert = ce_modify(mask.x, mask.z, ce_del(bundle.ct, rng));
    ASSERT_TRUE(ce_vrfy(bundle.vk, cert, rng));
  }
}

INSTANTIATE_TEST_SUITE_P(all, CeMatrix,
                         ::testing::Combine(::testing::Values(Variant::Qrom, Variant::Css),
                                            ::testing::Values(Backend::Ske, Backend::Pke)));

TEST(ce, special_correctness_lifts_through_wrappers) {
  Rng rng(12);
  base::Qrom oracle(12);
  for (auto cfg : {CeConfig::qrom(32, 16), CeConfig::steane()}) {
    int non_bot = 0;
    for (int i = 0; i < 10000; ++i) {
      auto k1 = base::ske_keygen(rng);
      auto k2 = base::ske_keygen(rng);
      auto bundle = ce_enc(cfg, k1, rng.bits(cfg.variant == Variant::Qrom ? 8 : 1), oracle, rng);
      non_bot += ce_dec(cfg, k2, bundle.ct, oracle, rng).has_value();
    }
    EXPECT_EQ(non_bot, 0);
  }
}

TEST(ce, css_multi_block_message) {
  Rng rng(13);
  base::Qrom oracle(13);
  auto cfg = CeConfig::steane();
  auto k = base::ske_keygen(rng);
  Bits m = rng.bits(5);
  auto bundle = ce_enc(cfg, k, m, oracle, rng);
  EXPECT_EQ(bundle.ct.quantum.size(), 5u);
  EXPECT_EQ(bundle.vk.blocks.size(), 5u);
  EXPECT_EQ(ce_dec(cfg, k, bundle.ct, oracle, rng), m);
}

TEST(ce, css_golay_pair_roundtrip) {
  Rng rng(14);
  base::Qrom oracle(14);
  auto cfg = CeConfig::css(gf2::CssPair::golay23(), 16);
  auto k = base::ske_keygen(rng);
  for (int i = 0; i < 50; ++i) {
    Bits m = rng.bits(2);
    auto bundle = ce_enc(cfg, k, m, oracle, rng);
    ASSERT_EQ(ce_dec(cfg, k, bundle.ct, oracle, rng), m);
    auto cert = ce_del(bundle.ct, rng);
    ASSERT_TRUE(ce_vrfy(bundle.vk, cert, rng));
  }
}

TEST(ce, css_lower_tampering_never_flips_verdict) {
  Rng rng(15);
  base::Qrom oracle(15);
  auto cfg = CeConfig::steane();
  for (int i = 0; i < 500; ++i) {
    auto k = base::ske_keygen(rng);
    auto bundle = ce_enc(cfg, k, rng.bits(1), oracle, rng);
    // Flip every qubit outside Q.
    const auto& q = bundle.vk.blocks[0].q;
    for (std::size_t j = 0; j < 14; ++j)
      if (std::find(q.begin(), q.end(), j) == q.end()) bundle.ct.quantum[0].apply_gate(qsim::Gate::X, j);
    auto cert = ce_del(bundle.ct, rng);
    ASSERT_TRUE(ce_vrfy(bundle.vk, cert, rng));
  }
}

TEST(ce, css_pass_rate_closed_form_by_enumeration) {
  // Exhaustive over B: E[2^{-wt(B)}] equals (3/4)^p.
  for (std::size_t p = 1; p <= 10; ++p) {
    double sum = 0;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << p); ++b) sum += std::pow(0.5, std::popcount(b));
    EXPECT_NEAR(sum / double(std::uint64_t{1} << p), std::pow(0.75, double(p)), 1e-12);
  }
}

TEST(ce, css_measure_all_pass_rate_for_fixed_b) {
  Rng rng(16);
  base::Qrom oracle(16);
  auto cfg = CeConfig::steane();
  const int trials = 20000;
  int by_weight[8] = {};
  int pass_by_weight[8] = {};
  for (int i = 0; i < trials; ++i) {
    auto k = base::ske_keygen(rng);
    auto bundle = ce_enc(cfg, k, rng.bits(1), oracle, rng);
    measure_everything(bundle.ct, rng);
    auto cert = ce_del(bundle.ct, rng);
    const auto wb = weight(bundle.vk.blocks[0].b);
    ++by_weight[wb];
    pass_by_weight[wb] += ce_vrfy(bundle.vk, cert, rng);
  }
  for (int wb = 0; wb <= 7; ++wb) {
    if (by_weight[wb] < 200) continue;
    const double p = std::pow(0.5, wb);
    EXPECT_LT(std::abs(pass_by_weight[wb] / double(by_weight[wb]) - p), 4 * binomial_sigma(p, by_weight[wb]) + 1e-9)
        << "wt(B) = " << wb;
  }
}

TEST(ce, qrom_measure_all_adversary_detected) {
  Rng rng(17);
  base::Qrom oracle(17);
  auto cfg = CeConfig::qrom(32, 16);
  int passes = 0;
  for (int i = 0; i < 2000; ++i) {
    auto k = base::ske_keygen(rng);
    auto bundle = ce_enc(cfg, k, rng.bits(4), oracle, rng);
    measure_everything(bundle.ct, rng);
    auto cert = ce_del(bundle.ct, rng);
    passes += ce_vrfy(bundle.vk, cert, rng);
  }
  EXPECT_LE(passes, 2);
}

TEST(ce, css_message_length_must_divide) {
  Rng rng(18);
  base::Qrom oracle(18);
  auto cfg = CeConfig::css(gf2::CssPair::golay23(), 8);
  auto k = base::ske_keygen(rng);
  EXPECT_THROW(ce_enc(cfg, k, Bits(0), oracle, rng), LengthError);
}

TEST(ce, serialization_roundtrip) {
  Rng rng(19);
  base::Qrom oracle(19);
  for (auto cfg : {CeConfig::qrom(32, 16), CeConfig::steane()}) {
    auto k = pke_keys(rng);
    Bits m = rng.bits(cfg.variant == Variant::Qrom ? 8 : 2);
    auto bundle = ce_enc(cfg, k.enc, m, oracle, rng);
    ByteWriter w;
    write(w, cfg);
    write(w, k.enc);
    write(w, k.dec);
    write(w, bundle.vk);
    write(w, bundle.ct);
    auto bytes = w.take();
    ByteReader r(bytes);
    auto cfg2 = read_ce_config(r);
    auto enc2 = read_enc_key(r);
    auto dec2 = read_dec_key(r);
    auto vk2 = read_ce_vk(r);
    auto ct2 = read_ce_ciphertext(r);
    r.expect_end();
    EXPECT_EQ(cfg2.variant, cfg.variant);
    EXPECT_TRUE(std::get<base::LwePublicKey>(enc2) == std::get<base::LwePublicKey>(k.enc));
    EXPECT_EQ(vk2, bundle.vk);
    EXPECT_EQ(ce_dec(cfg2, dec2, ct2, oracle, rng), m);
    auto cert = ce_del(ct2, rng);
    ByteWriter cw;
    write(cw, cert);
    auto cbytes = cw.take();
    ByteReader cr(cbytes);
    auto cert2 = read_ce_cert(cr);
    EXPECT_TRUE(ce_vrfy(vk2, cert2, rng));
  }
}
