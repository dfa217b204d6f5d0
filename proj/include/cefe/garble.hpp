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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cefe/base.hpp"
#include "cefe/cd.hpp"
#include "cefe/circuit.hpp"
#include "cefe/codec.hpp"
#include "cefe/qsim.hpp"
#include "cefe/rng.hpp"

namespace cefe::garble {

/// Wire labels are CE-SKE keys.
using Label = base::SkeKey;

struct GcParams {
  std::size_t label_bits = base::kDefaultLambda;
  cd::CeConfig ce = cd::CeConfig::qrom();

  /// 32-bit labels over QROM CE-SKE with λ = 16, w = 8.
  static GcParams desk();
  std::size_t bundle_qubits() const { return ce.quantum_size(label_bits); }
};

struct LabelSet {
  std::vector<std::array<Label, 2>> wires;
  std::size_t size() const { return wires.size(); }
};

LabelSet gc_samp(std::size_t n, const GcParams& params, Rng& rng);
/// L_{i, x_i} for each input wire.
std::vector<Label> select_labels(const LabelSet& labels, std::span<const std::uint8_t> x);

struct OutputEntry {
  Label key;
  std::uint8_t bit = 0;
};

struct GarbledGate {
  std::size_t a = 0, b = 0, c = 0;
  /// Stored row r holds ct_a at 2r and ct_b at 2r + 1, rows in γ-permuted order.
  std::array<cd::CeCiphertext, 8> ct;
};

struct GarbledCircuit {
  GcParams params;
  std::size_t n = 0;
  std::vector<GarbledGate> gates;
  std::vector<std::size_t> outputs;
  std::vector<std::array<OutputEntry, 2>> d;

  std::size_t wire_count() const { return n + gates.size(); }
  std::size_t component_count() const { return 8 * gates.size(); }
  /// Qubits across all components: gate-major, stored row order, a before b.
  std::size_t quantum_size() const;
};

struct GcVk {
  std::vector<std::array<cd::CeVk, 8>> gates;
};

struct GcCert {
  std::vector<cd::CeCert> parts;
};

struct Garbled {
  GarbledCircuit gc;
  GcVk vk;
};

/// Throws CircuitError for circuits that are not leveled.
Garbled gc_grbl(const LeveledCircuit& circuit, const LabelSet& inputs, const GcParams& params, base::Qrom& oracle,
                Rng& rng);
/// ⊥ when some gate does not have exactly one fully decrypting row or an
/// output label matches neither output-map entry. Honest bundles are left
/// intact, so a garbled circuit can be evaluated again.
std::optional<Bits> gc_eval(GarbledCircuit& gc, std::span<const Label> inputs, base::Qrom& oracle, Rng& rng);
GcCert gc_del(GarbledCircuit& gc, Rng& rng);
bool gc_vrfy(const GcVk& vk, GcCert& cert, Rng& rng);
/// a, b span the garbled circuit's full quantum layout.
GcCert gc_modify(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, GcCert cert);
/// Applies Z^b X^a across the quantum layout.
void gc_twirl(GarbledCircuit& gc, const qsim::PauliMask& mask);

/// Simulator from y = C(x), the topology of `shape` (its truth tables are
/// ignored) and one label per input wire. Every row carries sk_c^0.
Garbled gc_sim(const LeveledCircuit& shape, std::span<const std::uint8_t> y, std::span<const Label> inputs,
               const GcParams& params, base::Qrom& oracle, Rng& rng);
/// Gates 1..j carry sk_c^{v(c)}; the rest are garbled honestly.
Garbled gc_inputdep_sim(std::size_t j, const LeveledCircuit& circuit, std::span<const std::uint8_t> x,
                        std::span<const Label> inputs, const GcParams& params, base::Qrom& oracle, Rng& rng);

void write(ByteWriter& w, const GcParams& p);
void write(ByteWriter& w, const LabelSet& l);
void write(ByteWriter& w, const GarbledCircuit& gc);
void write(ByteWriter& w, const GcVk& vk);
void write(ByteWriter& w, const GcCert& c);
GcParams read_gc_params(ByteReader& r);
LabelSet read_label_set(ByteReader& r);
GarbledCircuit read_garbled_circuit(ByteReader& r);
GcVk read_gc_vk(ByteReader& r);
GcCert read_gc_cert(ByteReader& r);

/// Qubits a certificate component spans in the modify layout.
std::size_t cert_qubits(const cd::CeCert& cert);
/// Applies ce_modify to consecutive slices of (a, b), one per component.
std::vector<cd::CeCert> modify_components(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                                          std::vector<cd::CeCert> parts, std::size_t& offset);

}  // namespace cefe::garble
