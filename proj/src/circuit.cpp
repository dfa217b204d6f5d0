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

#include "cefe/circuit.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <sstream>

namespace cefe::garble {

void LeveledCircuit::validate() const {
  if (n == 0) throw CircuitError("circuit needs at least one input wire");
  std::uint32_t prev = 1;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    const std::string where = "gate " + std::to_string(i) + ": ";
    if (g.c != n + i) throw CircuitError(where + "output wire must be " + std::to_string(n + i));
    if (g.level < 1) throw CircuitError(where + "level must be at least 1");
    if (g.level < prev) throw CircuitError(where + "gates must be sorted by level");
    prev = g.level;
    if (g.table > 0xF) throw CircuitError(where + "truth table out of range");
    for (std::size_t in : {g.a, g.b}) {
      if (in >= g.c) throw CircuitError(where + "reads wire " + std::to_string(in) + " before it exists");
      if (wire_level(in) + 1 != g.level)
        throw CircuitError(where + "level " + std::to_string(g.level) + " reads wire " + std::to_string(in) +
                           " at level " + std::to_string(wire_level(in)));
    }
  }
  for (auto o : outputs)
    if (o >= wire_count()) throw CircuitError("output wire " + std::to_string(o) + " out of range");
}

Bits LeveledCircuit::wire_values(std::span<const std::uint8_t> x) const {
  require_length(x.size(), n, "circuit input");
  Bits v(wire_count());
  std::copy(x.begin(), x.end(), v.begin());
  for (const auto& g : gates) v[g.c] = g.apply(v[g.a], v[g.b]);
  return v;
}

Bits LeveledCircuit::evaluate(std::span<const std::uint8_t> x) const {
  const Bits v = wire_values(x);
  Bits out;
  out.reserve(outputs.size());
  for (auto o : outputs) out.push_back(v[o]);
  return out;
}

// ---------------------------------------------------------------------------

LeveledCircuit parse_circuit(std::istream& in) {
  auto line = [&in](std::string& s) {
    while (std::getline(in, s)) {
      auto hash = s.find('#');
      if (hash != std::string::npos) s.erase(hash);
      if (s.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  std::string s;
  if (!line(s)) throw CircuitError("empty circuit description");
  std::size_t n = 0, m = 0, p = 0, q = 0;
  {
    std::istringstream hs(s);
    if (!(hs >> n >> m >> p >> q)) throw CircuitError("header must be \"n m p q\"");
  }
  if (p != n + q) throw CircuitError("header: p must equal n + q");
  LeveledCircuit c;
  c.n = n;
  for (std::size_t i = 0; i < q; ++i) {
    if (!line(s)) throw CircuitError("missing gate line " + std::to_string(i));
    std::istringstream gs(s);
    Gate g;
    std::string tt;
    if (!(gs >> g.level >> tt >> g.a >> g.b >> g.c) || tt.size() != 4 ||
        tt.find_first_not_of("01") != std::string::npos)
      throw CircuitError("malformed gate line: " + s);
    g.table = 0;
    for (int j = 0; j < 4; ++j) g.table |= static_cast<std::uint8_t>((tt[j] - '0') << j);
    c.gates.push_back(g);
  }
  std::string rest, tok;
  while (line(s)) rest += s + " ";
  std::istringstream os(rest);
  while (os >> tok) {
    try {
      c.outputs.push_back(std::stoull(tok));
    } catch (const std::exception&) {
      throw CircuitError("bad output wire: " + tok);
    }
  }
  if (c.outputs.size() != m) throw CircuitError("expected " + std::to_string(m) + " output wires");
  c.validate();
  return c;
}

LeveledCircuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  return parse_circuit(in);
}

std::string format_circuit(const LeveledCircuit& c) {
  std::ostringstream out;
  out << c.n << ' ' << c.m() << ' ' << c.wire_count() << ' ' << c.q() << '\n';
  for (const auto& g : c.gates) {
    out << g.level << ' ';
    for (int j = 0; j < 4; ++j) out << ((g.table >> j) & 1);
    out << ' ' << g.a << ' ' << g.b << ' ' << g.c << '\n';
  }
  for (std::size_t i = 0; i < c.outputs.size(); ++i) out << (i ? " " : "") << c.outputs[i];
  out << '\n';
  return out.str();
}

void write(ByteWriter& w, const LeveledCircuit& c) {
  w.u64(c.n);
  w.u64(c.gates.size());
  for (const auto& g : c.gates) {
    w.u32(g.level);
    w.u8(g.table);
    w.u64(g.a);
    w.u64(g.b);
  }
  w.indices(c.outputs);
}

LeveledCircuit read_circuit(ByteReader& r) {
  LeveledCircuit c;
  c.n = r.u64();
  const auto q = r.u64();
  if (q > r.remaining()) throw DecodeError("payload truncated");
  for (std::uint64_t i = 0; i < q; ++i) {
    Gate g;
    g.level = r.u32();
    g.table = r.u8();
    g.a = r.u64();
    g.b = r.u64();
    g.c = c.n + i;
    c.gates.push_back(g);
  }
  c.outputs = r.indices();
  try {
    c.validate();
  } catch (const CircuitError& e) {
    throw DecodeError(std::string("invalid circuit: ") + e.what());
  }
  return c;
}

// ---------------------------------------------------------------------------

CircuitBuilder::CircuitBuilder(std::size_t n) : n_(n), levels_(n, 0), relays_(n) {}

std::size_t CircuitBuilder::gate(std::uint8_t t, std::size_t a, std::size_t b) {
  const std::uint32_t l = std::max(levels_.at(a), levels_.at(b));
  a = lift(a, l);
  b = lift(b, l);
  const std::size_t id = n_ + gates_.size();
  gates_.push_back(Gate{l + 1, t, a, b, id});
  levels_.push_back(l + 1);
  relays_.emplace_back();
  return id;
}

std::size_t CircuitBuilder::lift(std::size_t w, std::uint32_t l) {
  const std::uint32_t base = levels_.at(w);
  if (base > l) throw CircuitError("cannot lower a wire's level");
  std::size_t cur = w;
  for (std::uint32_t d = 1; base + d <= l; ++d) {
    if (relays_[w].size() < d) {
      const std::size_t id = n_ + gates_.size();
      gates_.push_back(Gate{base + d, table::kProjA, cur, cur, id});
      levels_.push_back(base + d);
      relays_.emplace_back();
      relays_[w].push_back(id);
    }
    cur = relays_[w][d - 1];
  }
  return cur;
}

LeveledCircuit CircuitBuilder::build() const {
  std::vector<std::size_t> order(gates_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [this](std::size_t x, std::size_t y) { return gates_[x].level < gates_[y].level; });
  std::vector<std::size_t> remap(n_ + gates_.size());
  std::iota(remap.begin(), remap.begin() + static_cast<std::ptrdiff_t>(n_), std::size_t{0});
  for (std::size_t i = 0; i < order.size(); ++i) remap[n_ + order[i]] = n_ + i;
  LeveledCircuit c;
  c.n = n_;
  for (std::size_t i = 0; i < order.size(); ++i) {
    Gate g = gates_[order[i]];
    g.a = remap[g.a];
    g.b = remap[g.b];
    g.c = n_ + i;
    c.gates.push_back(g);
  }
  for (auto o : outputs_) c.outputs.push_back(remap[o]);
  c.validate();
  return c;
}

LeveledCircuit random_circuit(std::size_t n, std::size_t q, std::size_t m, Rng& rng) {
  if (n == 0 || q == 0) throw CircuitError("random_circuit needs n ≥ 1 and q ≥ 1");
  const std::size_t depth = 1 + rng.below(std::min<std::size_t>(q, 8));
  // Every level gets at least one gate; the rest are spread uniformly.
  std::vector<std::size_t> per_level(depth, 1);
  for (std::size_t i = depth; i < q; ++i) ++per_level[rng.below(depth)];
  LeveledCircuit c;
  c.n = n;
  std::size_t prev_lo = 0, prev_hi = n;  // wires of the previous level
  for (std::size_t l = 0; l < depth; ++l) {
    const std::size_t lo = n + c.gates.size();
    for (std::size_t j = 0; j < per_level[l]; ++j) {
      Gate g;
      g.level = static_cast<std::uint32_t>(l + 1);
      g.table = static_cast<std::uint8_t>(rng.below(16));
      g.a = prev_lo + rng.below(prev_hi - prev_lo);
      g.b = prev_lo + rng.below(prev_hi - prev_lo);
      g.c = n + c.gates.size();
      c.gates.push_back(g);
    }
    prev_lo = lo;
    prev_hi = n + c.gates.size();
  }
  for (std::size_t i = 0; i < m; ++i) c.outputs.push_back(rng.below(c.wire_count()));
  c.validate();
  return c;
}

bool is_linear_circuit(const LeveledCircuit& c) {
  return std::all_of(c.gates.begin(), c.gates.end(), [](const Gate& g) {
    return g.table == table::kZero || g.table == table::kProjA || g.table == table::kProjB ||
           g.table == table::kXor;
  });
}

// ---------------------------------------------------------------------------

MuxFamily::MuxFamily(unsigned k) : k_(k) {
  if (k < 1 || k > 8) throw CircuitError("mux family supports 1 ≤ k ≤ 8");
}

Bits MuxFamily::encode_key(std::span<const std::uint8_t> truth_table) const {
  require_length(truth_table.size(), key_bits(), "mux truth table");
  return Bits(truth_table.begin(), truth_table.end());
}

LeveledCircuit MuxFamily::hardwire(std::span<const std::uint8_t> m) const {
  require_length(m.size(), k_, "mux message");
  CircuitBuilder b(key_bits());
  std::vector<std::size_t> layer(key_bits());
  std::iota(layer.begin(), layer.end(), std::size_t{0});
  for (unsigned j = 0; j < k_; ++j) {
    std::vector<std::size_t> next;
    const std::uint8_t t = m[j] ? table::kProjB : table::kProjA;
    for (std::size_t i = 0; i + 1 < layer.size(); i += 2) next.push_back(b.gate(t, layer[i], layer[i + 1]));
    layer = std::move(next);
  }
  b.output(layer[0]);
  return b.build();
}

void MuxFamily::write_params(ByteWriter& w) const {
  w.u8(0);
  w.u32(k_);
}

std::vector<std::vector<unsigned>> graded_lex_monomials(std::size_t ell, std::size_t degree) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> e(ell, 0);
  // Exponents of x_i.. for remaining total d, highest power of the earliest variable first.
  auto rec = [&](auto&& self, std::size_t i, unsigned d) -> void {
    if (i + 1 == ell) {
      e[i] = d;
      out.push_back(e);
      return;
    }
    for (int a = static_cast<int>(d); a >= 0; --a) {
      e[i] = static_cast<unsigned>(a);
      self(self, i + 1, d - static_cast<unsigned>(a));
    }
  };
  if (ell == 0) return {{}};
  for (unsigned d = 0; d <= degree; ++d) rec(rec, 0, d);
  return out;
}

LinearFamily::LinearFamily(std::size_t ell, std::size_t degree, std::size_t s_count, unsigned k)
    : ell_(ell), degree_(degree), s_(s_count), k_(k), monomials_(graded_lex_monomials(ell, degree)) {
  if (!field::supported_degree(k)) throw CircuitError("unsupported field degree " + std::to_string(k));
  if (ell == 0) throw CircuitError("linear family needs ℓ ≥ 1");
}

Bits LinearFamily::encode_key(const std::vector<field::FieldElem>& coeffs, std::span<const std::uint8_t> delta) const {
  require_length(coeffs.size(), monomials_.size(), "linear family coefficients");
  require_length(delta.size(), s_, "linear family Δ indicator");
  Bits out;
  for (const auto& c : coeffs) {
    if (c.degree() != k_) throw CircuitError("coefficient from the wrong field");
    auto b = c.to_bits();
    out.insert(out.end(), b.begin(), b.end());
  }
  out.insert(out.end(), delta.begin(), delta.end());
  return out;
}

Bits LinearFamily::encode_message(const std::vector<field::FieldElem>& mu, const std::vector<field::FieldElem>& xi) const {
  require_length(mu.size(), ell_, "μ values");
  require_length(xi.size(), s_, "ξ values");
  Bits out;
  for (const auto* v : {&mu, &xi})
    for (const auto& e : *v) {
      auto b = e.to_bits();
      out.insert(out.end(), b.begin(), b.end());
    }
  return out;
}

LeveledCircuit LinearFamily::hardwire(std::span<const std::uint8_t> m) const {
  require_length(m.size(), message_bits(), "linear family message");
  auto elem = [&](std::size_t i) { return field::FieldElem::from_bits(k_, slice(m, i * k_, k_)); };
  std::vector<field::FieldElem> mu, xi;
  for (std::size_t i = 0; i < ell_; ++i) mu.push_back(elem(i));
  for (std::size_t i = 0; i < s_; ++i) xi.push_back(elem(ell_ + i));

  // contribution[w]: the field element added to f(m) when key bit w is set.
  std::vector<field::FieldElem> contribution;
  for (const auto& mono : monomials_) {
    auto v = field::FieldElem::one(k_);
    for (std::size_t i = 0; i < ell_; ++i) v = v * field::fe_pow(mu[i], mono[i]);
    for (unsigned e = 0; e < k_; ++e) contribution.push_back(field::FieldElem(k_, 1u << e) * v);
  }
  contribution.insert(contribution.end(), xi.begin(), xi.end());

  const std::size_t s = key_bits();
  CircuitBuilder b(s);
  for (unsigned bit = 0; bit < k_; ++bit) {
    auto coef = [&](std::size_t w) { return (contribution[w].value() >> bit) & 1u; };
    std::vector<std::size_t> layer;
    for (std::size_t w = 0; w < s; w += 2) {
      const std::size_t v = w + 1 < s ? w + 1 : w;
      const std::uint8_t t = static_cast<std::uint8_t>((coef(w) ? table::kProjA : 0) ^
                                                       (v != w && coef(v) ? table::kProjB : 0));
      layer.push_back(b.gate(t, w, v));
    }
    while (layer.size() > 1) {
      std::vector<std::size_t> next;
      for (std::size_t i = 0; i + 1 < layer.size(); i += 2) next.push_back(b.gate(table::kXor, layer[i], layer[i + 1]));
      if (layer.size() % 2) next.push_back(layer.back());
      layer = std::move(next);
    }
    b.output(layer[0]);
  }
  return b.build();
}

void LinearFamily::write_params(ByteWriter& w) const {
  w.u8(1);
  w.u64(ell_);
  w.u64(degree_);
  w.u64(s_);
  w.u32(k_);
}

std::unique_ptr<FunctionFamily> read_family(ByteReader& r) {
  try {
    switch (r.u8()) {
      case 0:
        return std::make_unique<MuxFamily>(r.u32());
      case 1: {
        const auto ell = r.u64();
        const auto d = r.u64();
        const auto s = r.u64();
        return std::make_unique<LinearFamily>(ell, d, s, r.u32());
      }
      default:
        throw DecodeError("unknown function family");
    }
  } catch (const CircuitError& e) {
    throw DecodeError(std::string("invalid function family: ") + e.what());
  }
}

}  // namespace cefe::garble
