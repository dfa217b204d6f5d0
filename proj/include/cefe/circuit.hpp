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
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cefe/bits.hpp"
#include "cefe/codec.hpp"
#include "cefe/field.hpp"

namespace cefe::garble {

class CircuitError : public Error {
 public:
  using Error::Error;
};

/// Truth tables: bit (2σ_a + σ_b) holds g(σ_a, σ_b).
namespace table {
inline constexpr std::uint8_t kZero = 0b0000;
inline constexpr std::uint8_t kAnd = 0b1000;
inline constexpr std::uint8_t kXor = 0b0110;
inline constexpr std::uint8_t kOr = 0b1110;
inline constexpr std::uint8_t kProjA = 0b1100;
inline constexpr std::uint8_t kProjB = 0b1010;
inline constexpr std::uint8_t kOne = 0b1111;
}  // namespace table

struct Gate {
  std::uint32_t level = 1;
  std::uint8_t table = 0;
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t c = 0;

  std::uint8_t apply(std::uint8_t x, std::uint8_t y) const { return (table >> (2 * x + y)) & 1u; }
  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Wires 0..n-1 are inputs (level 0); gate i drives wire n + i. A gate at
/// level ℓ reads only wires produced at level ℓ − 1.
struct LeveledCircuit {
  std::size_t n = 0;
  std::vector<Gate> gates;
  std::vector<std::size_t> outputs;

  std::size_t wire_count() const { return n + gates.size(); }
  std::size_t m() const { return outputs.size(); }
  std::size_t q() const { return gates.size(); }
  std::uint32_t wire_level(std::size_t w) const { return w < n ? 0 : gates[w - n].level; }

  /// Throws CircuitError when indices, ordering or the level rule are violated.
  void validate() const;
  /// Bit carried by every wire on input x.
  Bits wire_values(std::span<const std::uint8_t> x) const;
  Bits evaluate(std::span<const std::uint8_t> x) const;

  friend bool operator==(const LeveledCircuit&, const LeveledCircuit&) = default;
};

/// Text format: "n m p q", one line "level g4bits wa wb wc" per gate with
/// g4bits = g(0,0) g(0,1) g(1,0) g(1,1), then the m output wires.
LeveledCircuit parse_circuit(std::istream& in);
LeveledCircuit parse_circuit(const std::string& text);
std::string format_circuit(const LeveledCircuit& c);

void write(ByteWriter& w, const LeveledCircuit& c);
LeveledCircuit read_circuit(ByteReader& r);

/// Builds leveled circuits from arbitrary DAGs by inserting relay gates.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::size_t n);

  std::size_t gate(std::uint8_t table, std::size_t a, std::size_t b);
  /// The wire carrying w's value at the given level (relays as needed).
  std::size_t lift(std::size_t w, std::uint32_t level);
  void output(std::size_t w) { outputs_.push_back(w); }
  std::uint32_t level(std::size_t w) const { return levels_[w]; }

  LeveledCircuit build() const;

 private:
  std::size_t n_;
  std::vector<Gate> gates_;  // provisional wire ids: n_ + index
  std::vector<std::uint32_t> levels_;
  std::vector<std::vector<std::size_t>> relays_;  // relays_[w][k]: w lifted by k+1 levels
  std::vector<std::size_t> outputs_;
};

/// Uniformly random leveled circuit, used by tests and the attack harness.
LeveledCircuit random_circuit(std::size_t n, std::size_t q, std::size_t m, Rng& rng);

/// Every gate computes a GF(2)-linear function of its inputs (XOR,
/// AND-with-constant, constant zero).
bool is_linear_circuit(const LeveledCircuit& c);

// ---------------------------------------------------------------------------
// Function families for U(·, m): key encoding f ∈ {0,1}^s, hardwired message m.

class FunctionFamily {
 public:
  virtual ~FunctionFamily() = default;
  virtual std::string name() const = 0;
  virtual std::size_t key_bits() const = 0;
  virtual std::size_t message_bits() const = 0;
  virtual std::size_t output_bits() const = 0;
  /// Circuit with key_bits() inputs computing f ↦ f(m). Its topology does
  /// not depend on m; only gate tables do.
  virtual LeveledCircuit hardwire(std::span<const std::uint8_t> m) const = 0;

  virtual void write_params(ByteWriter& w) const = 0;
};

/// f is a 2^k-entry truth table; f(m) = f[m] with m read LSB-first.
class MuxFamily final : public FunctionFamily {
 public:
  explicit MuxFamily(unsigned k);
  std::string name() const override { return "mux"; }
  std::size_t key_bits() const override { return std::size_t{1} << k_; }
  std::size_t message_bits() const override { return k_; }
  std::size_t output_bits() const override { return 1; }
  LeveledCircuit hardwire(std::span<const std::uint8_t> m) const override;
  void write_params(ByteWriter& w) const override;

  unsigned k() const { return k_; }
  Bits encode_key(std::span<const std::uint8_t> truth_table) const;

 private:
  unsigned k_;
};

/// Monomials of total degree ≤ D in ℓ variables, graded-lex order.
std::vector<std::vector<unsigned>> graded_lex_monomials(std::size_t ell, std::size_t degree);

/// f = (coefficients of C in graded-lex order, Δ ⊆ [S] as an indicator).
/// m = (μ_1..μ_ℓ, ξ_1..ξ_S); f(m) = C(μ) + Σ_{i∈Δ} ξ_i ∈ GF(2^k).
class LinearFamily final : public FunctionFamily {
 public:
  LinearFamily(std::size_t ell, std::size_t degree, std::size_t s_count, unsigned k);
  std::string name() const override { return "linear"; }
  std::size_t key_bits() const override { return k_ * monomials_.size() + s_; }
  std::size_t message_bits() const override { return k_ * (ell_ + s_); }
  std::size_t output_bits() const override { return k_; }
  LeveledCircuit hardwire(std::span<const std::uint8_t> m) const override;
  void write_params(ByteWriter& w) const override;

  std::size_t ell() const { return ell_; }
  std::size_t degree() const { return degree_; }
  std::size_t s_count() const { return s_; }
  unsigned k() const { return k_; }
  std::size_t monomial_count() const { return monomials_.size(); }
  const std::vector<std::vector<unsigned>>& monomials() const { return monomials_; }

  Bits encode_key(const std::vector<field::FieldElem>& coeffs, std::span<const std::uint8_t> delta) const;
  Bits encode_message(const std::vector<field::FieldElem>& mu, const std::vector<field::FieldElem>& xi) const;

 private:
  std::size_t ell_, degree_, s_;
  unsigned k_;
  std::vector<std::vector<unsigned>> monomials_;
};

std::unique_ptr<FunctionFamily> read_family(ByteReader& r);

}  // namespace cefe::garble
