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

#include "cefe/qsim.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

using namespace cefe;
using namespace cefe::qsim;

namespace {

const HarnessPrivilege kHarness{true};

// Random stabilizer state on n qubits: random BB84 product then random Clifford layer.
QuantumRegister random_stabilizer_state(std::size_t n, Rng& rng) {
  auto r = QuantumRegister::prepare_bb84(rng.bits(n), rng.bits(n));
  for (int layer = 0; layer < 3 * static_cast<int>(n); ++layer) {
    const auto g = static_cast<std::size_t>(rng.below(3));
    const auto q = static_cast<std::size_t>(rng.below(n));
    if (g == 0) r.apply_gate(Gate::H, q);
    if (g == 1) r.apply_gate(Gate::S, q);
    if (g == 2 && n > 1) {
      auto t = static_cast<std::size_t>(rng.below(n - 1));
      if (t >= q) ++t;
      r.apply_cnot(q, t);
    }
  }
  return r;
}

double chi2_uniform(const std::vector<int>& counts) {
  double total = 0;
  for (int c : counts) total += c;
  const double e = total / static_cast<double>(counts.size());
  double chi2 = 0;
  for (int c : counts) chi2 += (c - e) * (c - e) / e;
  return chi2;
}

}  // namespace

TEST(prepare_bb84, computational_zero) {
  Rng rng(1);
  auto r = QuantumRegister::prepare_bb84(Bits{0}, Bits{0});
  EXPECT_EQ(r.measure_one(0, Basis::Computational, rng), 0);
}

TEST(prepare_bb84, plus_state_in_hadamard_basis) {
  Rng rng(1);
  auto r = QuantumRegister::prepare_bb84(Bits{0}, Bits{1});
  EXPECT_EQ(r.measure_one(0, Basis::Hadamard, rng), 0);
}

TEST(prepare_bb84, minus_state_computational_is_fair) {
  Rng rng(2);
  int ones = 0;
  for (int i = 0; i < 10000; ++i) {
    auto r = QuantumRegister::prepare_bb84(Bits{1}, Bits{1});
    ones += r.measure_one(0, Basis::Computational, rng);
  }
  EXPECT_NEAR(ones / 10000.0, 0.5, 0.02);
}

TEST(prepare_bb84, length_mismatch_and_cap) {
  EXPECT_THROW(QuantumRegister::prepare_bb84(Bits{0, 1}, Bits{0}), LengthError);
  EXPECT_THROW(QuantumRegister::zeros(10, 4), Error);
}

TEST(apply_pauli, x_flips_zero) {
  Rng rng(3);
  auto r = QuantumRegister::zeros(1);
  r.apply_pauli({Bits{1}, Bits{0}});
  EXPECT_EQ(r.measure_one(0, Basis::Computational, rng), 1);
}

TEST(apply_pauli, z_flips_plus) {
  Rng rng(3);
  auto r = QuantumRegister::prepare_bb84(Bits{0}, Bits{1});
  r.apply_pauli({Bits{0}, Bits{1}});
  EXPECT_EQ(r.measure_one(0, Basis::Hadamard, rng), 1);
}

TEST(apply_pauli, twirl_is_involution) {
  Rng rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.below(6));
    auto r = random_stabilizer_state(n, rng);
    auto before = r.duplicate_for_test(kHarness);
    auto mask = PauliMask::random(n, rng);
    r.apply_pauli(mask);
    r.apply_pauli(mask);
    ASSERT_TRUE(canonical_equal(r, before));
  }
}

TEST(apply_hadamard_mask, involution) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto r = random_stabilizer_state(5, rng);
    auto before = r.duplicate_for_test(kHarness);
    Bits mask = rng.bits(5);
    r.apply_hadamard_mask(mask);
    r.apply_hadamard_mask(mask);
    ASSERT_TRUE(canonical_equal(r, before));
  }
}

TEST(apply_permutation, composition_and_inverse) {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    QubitPermutation a(rng.permutation(6));
    QubitPermutation b(rng.permutation(6));
    QubitPermutation c(rng.permutation(6));
    EXPECT_EQ(a.then(b).then(c), a.then(b.then(c)));
    EXPECT_EQ(a.then(a.inverse()), QubitPermutation::identity(6));

    Bits bits = rng.bits(6);
    auto r = QuantumRegister::prepare_bb84(bits, Bits(6, 0));
    r.apply_permutation(a);
    Bits out = r.measure_all(Basis::Computational, rng);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(out[a.image()[i]], bits[i]);
  }
}

TEST(apply_permutation, rejects_non_bijection) {
  EXPECT_THROW(QubitPermutation({0, 0, 1}), Error);
}

TEST(measure, zeros_give_zeros) {
  Rng rng(7);
  auto r = QuantumRegister::zeros(8);
  EXPECT_EQ(r.measure_all(Basis::Computational, rng), Bits(8, 0));
}

TEST(measure, plus_state_mean) {
  Rng rng(8);
  int ones = 0;
  for (int i = 0; i < 10000; ++i) {
    auto r = QuantumRegister::prepare_bb84(Bits{0}, Bits{1});
    ones += r.measure_one(0, Basis::Computational, rng);
  }
  EXPECT_NEAR(ones / 10000.0, 0.5, 0.02);
}

TEST(measure, deterministic_outcomes_preserve_state) {
  Rng rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    auto r = random_stabilizer_state(5, rng);
    auto ref = r.duplicate_for_test(kHarness);
    // Measure twice: the second measurement is deterministic and must not disturb.
    auto first = r.measure_one(2, Basis::Computational, rng);
    auto snapshot = r.duplicate_for_test(kHarness);
    auto second = r.measure_one(2, Basis::Computational, rng);
    EXPECT_EQ(first, second);
    ASSERT_TRUE(canonical_equal(r, snapshot));
  }
}

TEST(measure, rejects_duplicate_positions) {
  Rng rng(1);
  auto r = QuantumRegister::zeros(3);
  std::vector<std::size_t> pos = {1, 1};
  std::vector<Basis> b = {Basis::Computational, Basis::Computational};
  EXPECT_THROW(r.measure(pos, b, rng), Error);
}

TEST(consume, later_use_throws) {
  Rng rng(1);
  auto r = QuantumRegister::zeros(2);
  r.consume();
  EXPECT_TRUE(r.consumed());
  EXPECT_THROW(r.apply_gate(Gate::X, 0), ConsumedRegister);
  EXPECT_THROW(r.measure_all(Basis::Computational, rng), ConsumedRegister);
}

TEST(apply_gate, rejects_non_clifford) {
  auto r = QuantumRegister::zeros(1);
  EXPECT_THROW(r.apply_gate(Gate::T, 0), NonCliffordGate);
  EXPECT_THROW(r.apply_gate(Gate::Tdg, 0), NonCliffordGate);
}

TEST(apply_gate, s_squared_is_z) {
  Rng rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_stabilizer_state(3, rng);
    auto b = a.duplicate_for_test(kHarness);
    a.apply_gate(Gate::S, 1);
    a.apply_gate(Gate::S, 1);
    b.apply_gate(Gate::Z, 1);
    ASSERT_TRUE(canonical_equal(a, b));
    a.apply_gate(Gate::Sdg, 0);
    a.apply_gate(Gate::S, 0);
    b.apply_gate(Gate::I, 0);
    ASSERT_TRUE(canonical_equal(a, b));
  }
}

TEST(bell_pairs, computational_agreement) {
  Rng rng(11);
  int disagree = 0;
  for (int i = 0; i < 10000; ++i) {
    auto [a, b] = make_bell_pairs(1);
    disagree += a.measure_one(0, Basis::Computational, rng) != b.measure_one(0, Basis::Computational, rng);
  }
  EXPECT_EQ(disagree, 0);
}

TEST(bell_pairs, hadamard_agreement) {
  Rng rng(12);
  for (int i = 0; i < 2000; ++i) {
    auto [a, b] = make_bell_pairs(1);
    ASSERT_EQ(a.measure_one(0, Basis::Hadamard, rng), b.measure_one(0, Basis::Hadamard, rng));
  }
}

TEST(bell_pairs, marginal_is_maximally_mixed) {
  Rng rng(13);
  const int shots = 10000;
  std::array<int, 3> ones{};
  for (int i = 0; i < shots; ++i) {
    auto [a, b] = make_bell_pairs(3);
    auto out = a.measure_all(Basis::Computational, rng);
    for (int j = 0; j < 3; ++j) ones[j] += out[j];
  }
  const double sigma = std::sqrt(shots * 0.25);
  for (int c : ones) EXPECT_LT(std::abs(c - shots / 2.0), 3 * sigma);
}

TEST(canonical, phase_insensitive_and_distinguishing) {
  auto zero = QuantumRegister::zeros(1);
  auto plus = QuantumRegister::prepare_bb84(Bits{0}, Bits{1});
  EXPECT_TRUE(canonical_equal(zero, zero));
  EXPECT_FALSE(canonical_equal(zero, plus));

  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_stabilizer_state(3, rng);
    auto b = a.duplicate_for_test(kHarness);
    // XZ|ψ⟩ vs ZX|ψ⟩ = −XZ|ψ⟩.
    a.apply_gate(Gate::Z, 0);
    a.apply_gate(Gate::X, 0);
    b.apply_gate(Gate::X, 0);
    b.apply_gate(Gate::Z, 0);
    ASSERT_TRUE(canonical_equal(a, b));
  }
}

TEST(duplicate_for_test, needs_privilege) {
  auto r = QuantumRegister::zeros(1);
  EXPECT_THROW(r.duplicate_for_test(HarnessPrivilege{}), NoCloning);
}

TEST(teleport, zero_payload_all_branches) {
  Rng rng(15);
  std::array<int, 4> seen{};
  for (int i = 0; i < 400; ++i) {
    auto payload = QuantumRegister::zeros(1);
    auto [a, b] = make_bell_pairs(1);
    auto [x, z] = teleport(payload, a, rng);
    ++seen[x[0] | (z[0] << 1)];
    EXPECT_TRUE(payload.consumed());
    EXPECT_TRUE(a.consumed());
    auto expect = QuantumRegister::prepare_bb84(x, Bits{0});
    ASSERT_TRUE(canonical_equal(b, expect));
  }
  for (int c : seen) EXPECT_GT(c, 0);
}

TEST(teleport, outcomes_are_uniform) {
  Rng rng(16);
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<int> counts(std::size_t{1} << (2 * n), 0);
    for (int i = 0; i < 10000; ++i) {
      auto payload = random_stabilizer_state(n, rng);
      auto [a, b] = make_bell_pairs(n);
      auto [x, z] = teleport(payload, a, rng);
      ++counts[bits_to_uint(concat(x, z))];
    }
    // χ² critical values at 5% for 3, 15, 63 degrees of freedom.
    const double crit[] = {7.815, 24.996, 82.529};
    EXPECT_LT(chi2_uniform(counts), crit[n - 1]) << "n = " << n;
  }
}

TEST(teleport, correction_recovers_payload) {
  Rng rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    auto payload = random_stabilizer_state(4, rng);
    auto reference = payload.duplicate_for_test(kHarness);
    auto [a, b] = make_bell_pairs(4);
    auto [x, z] = teleport(payload, a, rng);
    b.apply_pauli({x, z});
    ASSERT_TRUE(canonical_equal(b, reference));
  }
}

TEST(teleport, size_mismatch_and_consumed) {
  Rng rng(18);
  auto payload = QuantumRegister::zeros(2);
  auto [a, b] = make_bell_pairs(1);
  EXPECT_THROW(teleport(payload, a, rng), LengthError);
  payload.consume();
  EXPECT_THROW(teleport(payload, a, rng), ConsumedRegister);
}

TEST(serialize, product_and_tableau_roundtrip) {
  Rng rng(19);
  auto p = QuantumRegister::prepare_bb84(rng.bits(10), rng.bits(10));
  EXPECT_FALSE(p.uses_tableau());
  auto p2 = QuantumRegister::deserialize(p.serialize());
  EXPECT_TRUE(canonical_equal(p, p2));

  for (int trial = 0; trial < 50; ++trial) {
    auto t = random_stabilizer_state(5, rng);
    auto t2 = QuantumRegister::deserialize(t.serialize());
    ASSERT_TRUE(canonical_equal(t, t2));
    EXPECT_EQ(t.serialize(), t2.serialize());
  }
  auto [a, b] = make_bell_pairs(2);
  auto b2 = QuantumRegister::deserialize(b.serialize());
  EXPECT_TRUE(canonical_equal(b, b2));
}

TEST(serialize, rejects_truncation) {
  auto r = QuantumRegister::zeros(4);
  auto bytes = r.serialize();
  bytes.pop_back();
  EXPECT_THROW(QuantumRegister::deserialize(bytes), Error);
}
