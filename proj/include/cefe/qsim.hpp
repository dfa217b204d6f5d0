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
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "cefe/bits.hpp"
#include "cefe/rng.hpp"

namespace cefe::qsim {

/// Registers larger than this are rejected at preparation time.
inline constexpr std::size_t kDefaultQubitCap = 4096;

enum class Basis : std::uint8_t { Computational = 0, Hadamard = 1 };

enum class Gate : std::uint8_t { I, X, Y, Z, H, S, Sdg, T, Tdg };

class ConsumedRegister : public Error {
 public:
  using Error::Error;
};

class NonCliffordGate : public Error {
 public:
  using Error::Error;
};

class NoCloning : public Error {
 public:
  using Error::Error;
};

/// X^x Z^z on every qubit: the state ρ becomes Z^z X^x ρ X^x Z^z.
struct PauliMask {
  Bits x;
  Bits z;

  static PauliMask identity(std::size_t n) { return {Bits(n, 0), Bits(n, 0)}; }
  static PauliMask random(std::size_t n, Rng& rng) { return {rng.bits(n), rng.bits(n)}; }
  std::size_t size() const { return x.size(); }
};

/// image[i] is the position that qubit i moves to.
class QubitPermutation {
 public:
  explicit QubitPermutation(std::vector<std::size_t> image);
  static QubitPermutation identity(std::size_t n);

  std::size_t size() const { return image_.size(); }
  const std::vector<std::size_t>& image() const { return image_; }
  QubitPermutation inverse() const;
  /// Apply `this` first, then `next`.
  QubitPermutation then(const QubitPermutation& next) const;

  friend bool operator==(const QubitPermutation&, const QubitPermutation&) = default;

 private:
  std::vector<std::size_t> image_;
};

/// Grants the test harness the right to clone register descriptors.
struct HarnessPrivilege {
  bool granted = false;
};

class SimState;

/// Canonical description of a register's (reduced) state: generators of its
/// local stabilizer group in reduced form. Equal iff states are equal up to
/// global phase.
struct CanonicalState {
  std::size_t n = 0;
  std::vector<Bits> rows;  // each row: x_0 z_0 x_1 z_1 ... (2n bits)
  std::vector<std::uint8_t> signs;
  friend bool operator==(const CanonicalState&, const CanonicalState&) = default;
};

/// Handle to n simulated qubits. Move-only: a register can be transferred but
/// never copied. Destructive operations mark it consumed.
class QuantumRegister {
 public:
  QuantumRegister() = default;
  QuantumRegister(QuantumRegister&&) noexcept = default;
  QuantumRegister& operator=(QuantumRegister&&) noexcept = default;
  QuantumRegister(const QuantumRegister&) = delete;
  QuantumRegister& operator=(const QuantumRegister&) = delete;
  ~QuantumRegister();

  /// Product state: qubit i is |bits_i⟩, or H|bits_i⟩ when basis_i = 1.
  static QuantumRegister prepare_bb84(std::span<const std::uint8_t> bits, std::span<const std::uint8_t> basis,
                                      std::size_t cap = kDefaultQubitCap);
  static QuantumRegister zeros(std::size_t n, std::size_t cap = kDefaultQubitCap);

  std::size_t size() const { return qubits_.size(); }
  bool consumed() const { return consumed_; }
  bool valid() const { return state_ != nullptr; }

  void apply_gate(Gate g, std::size_t pos);
  void apply_cnot(std::size_t control, std::size_t target);
  void apply_pauli(const PauliMask& m);
  void apply_hadamard_mask(std::span<const std::uint8_t> mask);
  void apply_permutation(const QubitPermutation& p);

  /// Measures each listed position in its basis; outcomes in list order.
  Bits measure(std::span<const std::size_t> positions, std::span<const Basis> bases, Rng& rng);
  Bits measure_all(Basis basis, Rng& rng);
  std::uint8_t measure_one(std::size_t pos, Basis basis, Rng& rng);

  /// Marks the handle as destroyed; later use throws ConsumedRegister.
  void consume();

  CanonicalState canonical() const;
  QuantumRegister duplicate_for_test(const HarnessPrivilege& privilege) const;

  /// Serialized state: mode byte, then either per-qubit product stabilizers or
  /// the full tableau plus this handle's qubit map.
  std::vector<std::uint8_t> serialize() const;
  static QuantumRegister deserialize(std::span<const std::uint8_t> bytes);

  bool uses_tableau() const;

 private:
  friend std::pair<QuantumRegister, QuantumRegister> make_bell_pairs(std::size_t n);
  friend std::pair<Bits, Bits> teleport(QuantumRegister& payload, QuantumRegister& epr_half_a, Rng& rng);

  void check_live() const;
  void resolve() const;
  std::size_t global(std::size_t pos) const;

  mutable std::shared_ptr<SimState> state_;
  mutable std::vector<std::size_t> qubits_;
  bool consumed_ = false;
};

bool canonical_equal(const QuantumRegister& a, const QuantumRegister& b);

/// n Bell pairs (1/√2^n) Σ_s |s⟩_A|s⟩_B as two linked handles.
std::pair<QuantumRegister, QuantumRegister> make_bell_pairs(std::size_t n);

/// Bell-measures (payload_j, A_j) for every j. Returns (x, z) such that the
/// partner half B now holds X^x Z^z ρ Z^z X^x. Consumes payload and A.
std::pair<Bits, Bits> teleport(QuantumRegister& payload, QuantumRegister& epr_half_a, Rng& rng);

}  // namespace cefe::qsim
