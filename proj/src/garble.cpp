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

#include "cefe/garble.hpp"

#include <functional>

namespace cefe::garble {

GcParams GcParams::desk() { return {32, cd::CeConfig::qrom(16, 8)}; }

LabelSet gc_samp(std::size_t n, const GcParams& params, Rng& rng) {
  LabelSet out;
  for (std::size_t i = 0; i < n; ++i)
    out.wires.push_back({base::ske_keygen(rng, params.label_bits), base::ske_keygen(rng, params.label_bits)});
  return out;
}

std::vector<Label> select_labels(const LabelSet& labels, std::span<const std::uint8_t> x) {
  require_length(x.size(), labels.size(), "select_labels");
  std::vector<Label> out;
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(labels.wires[i][x[i] & 1u]);
  return out;
}

std::size_t GarbledCircuit::quantum_size() const {
  std::size_t n = 0;
  for (const auto& g : gates)
    for (const auto& ct : g.ct) n += ct.quantum_size();
  return n;
}

namespace {

/// Key encrypted under row (σ_a, σ_b), XORed into the b-share.
using RowTarget = std::function<const Label&(std::uint8_t, std::uint8_t)>;

void garble_gate(const Gate& g, const std::vector<std::array<Label, 2>>& wires, const RowTarget& target,
                 const GcParams& params, base::Qrom& oracle, Rng& rng, GarbledGate& out, std::array<cd::CeVk, 8>& vk) {
  out.a = g.a;
  out.b = g.b;
  out.c = g.c;
  const auto gamma = rng.permutation(4);
  for (std::uint8_t row = 0; row < 4; ++row) {
    const std::uint8_t sa = row >> 1, sb = row & 1u;
    const Bits pad = rng.bits(params.label_bits);
    const Bits share_b = xor_bits(pad, target(sa, sb).k);
    auto ba = cd::ce_enc(params.ce, wires[g.a][sa], pad, oracle, rng);
    auto bb = cd::ce_enc(params.ce, wires[g.b][sb], share_b, oracle, rng);
    const std::size_t slot = gamma[row];
    out.ct[2 * slot] = std::move(ba.ct);
    out.ct[2 * slot + 1] = std::move(bb.ct);
    vk[2 * slot] = std::move(ba.vk);
    vk[2 * slot + 1] = std::move(bb.vk);
  }
}

/// Fills wire labels n..p−1 with fresh key pairs.
void extend_labels(std::vector<std::array<Label, 2>>& wires, std::size_t total, const GcParams& params, Rng& rng) {
  while (wires.size() < total)
    wires.push_back({base::ske_keygen(rng, params.label_bits), base::ske_keygen(rng, params.label_bits)});
}

using GateTarget = std::function<RowTarget(const Gate&, const std::vector<std::array<Label, 2>>&)>;

Garbled garble_with(const LeveledCircuit& c, std::vector<std::array<Label, 2>> wires,
                    std::vector<std::array<OutputEntry, 2>> d_bits_only, const GateTarget& target,
                    const GcParams& params, base::Qrom& oracle, Rng& rng) {
  Garbled out;
  out.gc.params = params;
  out.gc.n = c.n;
  out.gc.outputs = c.outputs;
  extend_labels(wires, c.wire_count(), params, rng);
  out.gc.gates.resize(c.q());
  out.vk.gates.resize(c.q());
  for (std::size_t i = 0; i < c.q(); ++i)
    garble_gate(c.gates[i], wires, target(c.gates[i], wires), params, oracle, rng, out.gc.gates[i], out.vk.gates[i]);
  for (std::size_t i = 0; i < c.m(); ++i) {
    auto entry = d_bits_only[i];
    entry[0].key = wires[c.outputs[i]][0];
    entry[1].key = wires[c.outputs[i]][1];
    out.gc.d.push_back(std::move(entry));
  }
  return out;
}

std::vector<std::array<OutputEntry, 2>> honest_output_bits(std::size_t m) {
  std::vector<std::array<OutputEntry, 2>> d(m);
  for (auto& e : d) {
    e[0].bit = 0;
    e[1].bit = 1;
  }
  return d;
}

void check_input_labels(const LeveledCircuit& c, std::size_t got) {
  require_length(got, c.n, "input labels");
}

}  // namespace

Garbled gc_grbl(const LeveledCircuit& circuit, const LabelSet& inputs, const GcParams& params, base::Qrom& oracle,
                Rng& rng) {
  circuit.validate();
  check_input_labels(circuit, inputs.size());
  auto target = [](const Gate& g, const std::vector<std::array<Label, 2>>& wires) -> RowTarget {
    return [&g, &wires](std::uint8_t sa, std::uint8_t sb) -> const Label& { return wires[g.c][g.apply(sa, sb)]; };
  };
  return garble_with(circuit, inputs.wires, honest_output_bits(circuit.m()), target, params, oracle, rng);
}

Garbled gc_sim(const LeveledCircuit& shape, std::span<const std::uint8_t> y, std::span<const Label> inputs,
               const GcParams& params, base::Qrom& oracle, Rng& rng) {
  shape.validate();
  check_input_labels(shape, inputs.size());
  require_length(y.size(), shape.m(), "simulator output");
  // The given label sits at index 0 and everything the evaluator holds is sk^0.
  std::vector<std::array<Label, 2>> wires;
  for (const auto& l : inputs) wires.push_back({l, base::ske_keygen(rng, params.label_bits)});
  std::vector<std::array<OutputEntry, 2>> d(shape.m());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i][0].bit = y[i];
    d[i][1].bit = y[i] ^ 1u;
  }
  auto target = [](const Gate& g, const std::vector<std::array<Label, 2>>& w) -> RowTarget {
    return [&g, &w](std::uint8_t, std::uint8_t) -> const Label& { return w[g.c][0]; };
  };
  return garble_with(shape, std::move(wires), std::move(d), target, params, oracle, rng);
}

Garbled gc_inputdep_sim(std::size_t j, const LeveledCircuit& circuit, std::span<const std::uint8_t> x,
                        std::span<const Label> inputs, const GcParams& params, base::Qrom& oracle, Rng& rng) {
  circuit.validate();
  check_input_labels(circuit, inputs.size());
  if (j > circuit.q()) throw CircuitError("hybrid index exceeds the gate count");
  const Bits v = circuit.wire_values(x);
  std::vector<std::array<Label, 2>> wires;
  for (std::size_t i = 0; i < circuit.n; ++i) {
    const Label fresh = base::ske_keygen(rng, params.label_bits);
    wires.push_back(x[i] ? std::array<Label, 2>{fresh, inputs[i]} : std::array<Label, 2>{inputs[i], fresh});
  }
  auto target = [&v, j, n = circuit.n](const Gate& g, const std::vector<std::array<Label, 2>>& w) -> RowTarget {
    if (g.c - n < j) return [&g, &w, &v](std::uint8_t, std::uint8_t) -> const Label& { return w[g.c][v[g.c]]; };
    return [&g, &w](std::uint8_t sa, std::uint8_t sb) -> const Label& { return w[g.c][g.apply(sa, sb)]; };
  };
  return garble_with(circuit, std::move(wires), honest_output_bits(circuit.m()), target, params, oracle, rng);
}

std::optional<Bits> gc_eval(GarbledCircuit& gc, std::span<const Label> inputs, base::Qrom& oracle, Rng& rng) {
  if (inputs.size() != gc.n) return std::nullopt;
  std::vector<std::optional<Label>> held(gc.wire_count());
  for (std::size_t i = 0; i < gc.n; ++i) held[i] = inputs[i];
  for (auto& g : gc.gates) {
    if (g.a >= g.c || g.b >= g.c || g.c >= held.size() || !held[g.a] || !held[g.b]) return std::nullopt;
    const cd::DecKey ka = *held[g.a], kb = *held[g.b];
    std::optional<Bits> found;
    int hits = 0;
    for (std::size_t r = 0; r < 4; ++r) {
      auto sa = cd::ce_dec(gc.params.ce, ka, g.ct[2 * r], oracle, rng);
      if (!sa) continue;
      auto sb = cd::ce_dec(gc.params.ce, kb, g.ct[2 * r + 1], oracle, rng);
      if (!sb || sb->size() != sa->size()) continue;
      ++hits;
      found = xor_bits(*sa, *sb);
    }
    if (hits != 1) return std::nullopt;
    held[g.c] = Label{std::move(*found)};
  }
  if (gc.d.size() != gc.outputs.size()) return std::nullopt;
  Bits y;
  for (std::size_t i = 0; i < gc.outputs.size(); ++i) {
    if (gc.outputs[i] >= held.size() || !held[gc.outputs[i]]) return std::nullopt;
    const Label& l = *held[gc.outputs[i]];
    if (gc.d[i][0].key == l)
      y.push_back(gc.d[i][0].bit);
    else if (gc.d[i][1].key == l)
      y.push_back(gc.d[i][1].bit);
    else
      return std::nullopt;
  }
  return y;
}

GcCert gc_del(GarbledCircuit& gc, Rng& rng) {
  GcCert cert;
  for (auto& g : gc.gates)
    for (auto& ct : g.ct) cert.parts.push_back(cd::ce_del(ct, rng));
  return cert;
}

bool gc_vrfy(const GcVk& vk, GcCert& cert, Rng& rng) {
  if (cert.parts.size() != 8 * vk.gates.size()) return false;
  bool ok = true;
  for (std::size_t i = 0; i < vk.gates.size(); ++i)
    for (std::size_t r = 0; r < 8; ++r) ok = cd::ce_vrfy(vk.gates[i][r], cert.parts[8 * i + r], rng) && ok;
  return ok;
}

std::size_t cert_qubits(const cd::CeCert& cert) {
  if (cert.variant == cd::Variant::Qrom) return cert.bits.size();
  std::size_t n = 0;
  for (const auto& r : cert.quantum) n += r.size();
  return n;
}

std::vector<cd::CeCert> modify_components(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                                          std::vector<cd::CeCert> parts, std::size_t& offset) {
  require_length(b.size(), a.size(), "modify mask");
  for (auto& part : parts) {
    const std::size_t n = cert_qubits(part);
    if (offset + n > a.size()) throw LengthError("modify mask shorter than the certificate layout");
    part = cd::ce_modify(a.subspan(offset, n), b.subspan(offset, n), std::move(part));
    offset += n;
  }
  return parts;
}

GcCert gc_modify(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, GcCert cert) {
  std::size_t off = 0;
  cert.parts = modify_components(a, b, std::move(cert.parts), off);
  require_length(a.size(), off, "gc_modify");
  return cert;
}

void gc_twirl(GarbledCircuit& gc, const qsim::PauliMask& mask) {
  require_length(mask.size(), gc.quantum_size(), "gc_twirl");
  std::size_t off = 0;
  for (auto& g : gc.gates)
    for (auto& ct : g.ct) {
      const std::size_t n = ct.quantum_size();
      cd::twirl(ct, qsim::PauliMask{slice(mask.x, off, n), slice(mask.z, off, n)});
      off += n;
    }
}

// ---------------------------------------------------------------------------

void write(ByteWriter& w, const GcParams& p) {
  w.u64(p.label_bits);
  cd::write(w, p.ce);
}

GcParams read_gc_params(ByteReader& r) {
  GcParams p;
  p.label_bits = r.u64();
  p.ce = cd::read_ce_config(r);
  return p;
}

void write(ByteWriter& w, const LabelSet& l) {
  w.u64(l.wires.size());
  for (const auto& pair : l.wires) {
    base::write(w, pair[0]);
    base::write(w, pair[1]);
  }
}

LabelSet read_label_set(ByteReader& r) {
  LabelSet l;
  const auto n = r.u64();
  if (n > r.remaining()) throw DecodeError("payload truncated");
  for (std::uint64_t i = 0; i < n; ++i) {
    auto a = base::read_ske_key(r);
    l.wires.push_back({std::move(a), base::read_ske_key(r)});
  }
  return l;
}

void write(ByteWriter& w, const GarbledCircuit& gc) {
  write(w, gc.params);
  w.u64(gc.n);
  w.u64(gc.gates.size());
  for (const auto& g : gc.gates) {
    w.u64(g.a);
    w.u64(g.b);
    for (const auto& ct : g.ct) cd::write(w, ct);
  }
  w.indices(gc.outputs);
  for (const auto& e : gc.d)
    for (const auto& entry : e) {
      base::write(w, entry.key);
      w.u8(entry.bit);
    }
}

GarbledCircuit read_garbled_circuit(ByteReader& r) {
  GarbledCircuit gc;
  gc.params = read_gc_params(r);
  gc.n = r.u64();
  const auto q = r.u64();
  if (q > r.remaining()) throw DecodeError("payload truncated");
  gc.gates.resize(q);
  for (std::uint64_t i = 0; i < q; ++i) {
    auto& g = gc.gates[i];
    g.a = r.u64();
    g.b = r.u64();
    g.c = gc.n + i;
    if (g.a >= g.c || g.b >= g.c) throw DecodeError("garbled gate reads a later wire");
    for (auto& ct : g.ct) ct = cd::read_ce_ciphertext(r);
  }
  gc.outputs = r.indices();
  for (auto o : gc.outputs)
    if (o >= gc.wire_count()) throw DecodeError("output wire out of range");
  gc.d.resize(gc.outputs.size());
  for (auto& e : gc.d)
    for (auto& entry : e) {
      entry.key = base::read_ske_key(r);
      entry.bit = r.u8();
      if (entry.bit > 1) throw DecodeError("output map bit must be 0 or 1");
    }
  return gc;
}

void write(ByteWriter& w, const GcVk& vk) {
  w.u64(vk.gates.size());
  for (const auto& g : vk.gates)
    for (const auto& v : g) cd::write(w, v);
}

GcVk read_gc_vk(ByteReader& r) {
  GcVk vk;
  const auto q = r.u64();
  if (q > r.remaining()) throw DecodeError("payload truncated");
  vk.gates.resize(q);
  for (auto& g : vk.gates)
    for (auto& v : g) v = cd::read_ce_vk(r);
  return vk;
}

void write(ByteWriter& w, const GcCert& c) {
  w.u64(c.parts.size());
  for (const auto& p : c.parts) cd::write(w, p);
}

GcCert read_gc_cert(ByteReader& r) {
  GcCert c;
  const auto n = r.u64();
  if (n > r.remaining()) throw DecodeError("payload truncated");
  for (std::uint64_t i = 0; i < n; ++i) c.parts.push_back(cd::read_ce_cert(r));
  return c;
}

}  // namespace cefe::garble
