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

#include <algorithm>
#include <bit>
#include <cstring>
#include <string>

namespace cefe::qsim {

// ---------------------------------------------------------------------------
// Pauli rows

namespace {

struct PauliRow {
  std::vector<std::uint64_t> x;
  std::vector<std::uint64_t> z;
  std::uint8_t sign = 0;

  explicit PauliRow(std::size_t n = 0) : x((n + 63) / 64, 0), z((n + 63) / 64, 0) {}

  std::uint8_t getx(std::size_t q) const { return (x[q / 64] >> (q % 64)) & 1u; }
  std::uint8_t getz(std::size_t q) const { return (z[q / 64] >> (q % 64)) & 1u; }
  void setx(std::size_t q, std::uint8_t v) {
    const std::uint64_t m = std::uint64_t{1} << (q % 64);
    x[q / 64] = v ? (x[q / 64] | m) : (x[q / 64] & ~m);
  }
  void setz(std::size_t q, std::uint8_t v) {
    const std::uint64_t m = std::uint64_t{1} << (q % 64);
    z[q / 64] = v ? (z[q / 64] | m) : (z[q / 64] & ~m);
  }
  void clear() {
    std::fill(x.begin(), x.end(), 0);
    std::fill(z.begin(), z.end(), 0);
    sign = 0;
  }
};

// h ← i · h, tracking the sign. Both rows are Hermitian Paulis.
void rowsum(PauliRow& h, const PauliRow& i) {
  int plus = 0;
  int minus = 0;
  for (std::size_t w = 0; w < h.x.size(); ++w) {
    const std::uint64_t x1 = i.x[w];
    const std::uint64_t z1 = i.z[w];
    const std::uint64_t x2 = h.x[w];
    const std::uint64_t z2 = h.z[w];
    const std::uint64_t y1 = x1 & z1;
    const std::uint64_t xo = x1 & ~z1;
    const std::uint64_t zo = ~x1 & z1;
    const std::uint64_t p = (y1 & z2 & ~x2) | (xo & z2 & x2) | (zo & x2 & ~z2);
    const std::uint64_t m = (y1 & x2 & ~z2) | (xo & z2 & ~x2) | (zo & x2 & z2);
    plus += std::popcount(p);
    minus += std::popcount(m);
    h.x[w] = x1 ^ x2;
    h.z[w] = z1 ^ z2;
  }
  const int total = 2 * h.sign + 2 * i.sign + plus - minus;
  h.sign = static_cast<std::uint8_t>((((total % 4) + 4) % 4) >> 1);
}

constexpr std::uint8_t kPX = 1;
constexpr std::uint8_t kPZ = 2;
constexpr std::uint8_t kPSign = 4;

}  // namespace

// ---------------------------------------------------------------------------
// Shared state

class SimState {
 public:
  enum class Mode : std::uint8_t { Product = 0, Tableau = 1 };

  explicit SimState(std::size_t n) : n_(n), prod_(n, kPZ) {}

  std::size_t n() const { return n_; }
  Mode mode() const { return mode_; }

  std::shared_ptr<SimState> forward;
  std::size_t forward_offset = 0;

  void set_product(std::size_t q, std::uint8_t code) { prod_[q] = code; }
  std::uint8_t product(std::size_t q) const { return prod_[q]; }

  void to_tableau() {
    if (mode_ == Mode::Tableau) return;
    rows_.assign(2 * n_ + 1, PauliRow(n_));
    for (std::size_t q = 0; q < n_; ++q) {
      const std::uint8_t c = prod_[q];
      PauliRow& stab = rows_[n_ + q];
      stab.setx(q, c & kPX);
      stab.setz(q, (c & kPZ) >> 1);
      stab.sign = (c & kPSign) ? 1 : 0;
      PauliRow& destab = rows_[q];
      if (c & kPZ) {
        destab.setx(q, 1);
      } else {
        destab.setz(q, 1);
      }
    }
    prod_.clear();
    mode_ = Mode::Tableau;
  }

  // Tensor `other` onto the end of this state.
  void absorb(SimState& other) {
    to_tableau();
    other.to_tableau();
    const std::size_t n1 = n_;
    const std::size_t n2 = other.n_;
    const std::size_t n = n1 + n2;
    std::vector<PauliRow> rows(2 * n + 1, PauliRow(n));
    auto copy_row = [](const PauliRow& src, std::size_t nsrc, PauliRow& dst, std::size_t off) {
      for (std::size_t q = 0; q < nsrc; ++q) {
        dst.setx(q + off, src.getx(q));
        dst.setz(q + off, src.getz(q));
      }
      dst.sign = src.sign;
    };
    for (std::size_t i = 0; i < n1; ++i) {
      copy_row(rows_[i], n1, rows[i], 0);
      copy_row(rows_[n1 + i], n1, rows[n + i], 0);
    }
    for (std::size_t i = 0; i < n2; ++i) {
      copy_row(other.rows_[i], n2, rows[n1 + i], n1);
      copy_row(other.rows_[n2 + i], n2, rows[n + n1 + i], n1);
    }
    rows_ = std::move(rows);
    n_ = n;
  }

  void x(std::size_t q) {
    if (mode_ == Mode::Product) {
      if (prod_[q] & kPZ) prod_[q] ^= kPSign;
      return;
    }
    for (auto& r : rows_) r.sign ^= r.getz(q);
  }

  void z(std::size_t q) {
    if (mode_ == Mode::Product) {
      if (prod_[q] & kPX) prod_[q] ^= kPSign;
      return;
    }
    for (auto& r : rows_) r.sign ^= r.getx(q);
  }

  void h(std::size_t q) {
    if (mode_ == Mode::Product) {
      std::uint8_t c = prod_[q];
      const std::uint8_t xb = c & kPX;
      const std::uint8_t zb = (c & kPZ) >> 1;
      if (xb && zb) c ^= kPSign;
      prod_[q] = static_cast<std::uint8_t>((c & kPSign) | (zb ? kPX : 0) | (xb ? kPZ : 0));
      return;
    }
    for (auto& r : rows_) {
      const std::uint8_t xb = r.getx(q);
      const std::uint8_t zb = r.getz(q);
      r.sign ^= xb & zb;
      r.setx(q, zb);
      r.setz(q, xb);
    }
  }

  void s(std::size_t q) {
    if (mode_ == Mode::Product) {
      std::uint8_t c = prod_[q];
      const std::uint8_t xb = c & kPX;
      const std::uint8_t zb = (c & kPZ) >> 1;
      if (xb && zb) c ^= kPSign;
      if (xb) c ^= kPZ;
      prod_[q] = c;
      return;
    }
    for (auto& r : rows_) {
      const std::uint8_t xb = r.getx(q);
      const std::uint8_t zb = r.getz(q);
      r.sign ^= xb & zb;
      r.setz(q, zb ^ xb);
    }
  }

  void cnot(std::size_t a, std::size_t b) {
    to_tableau();
    for (auto& r : rows_) {
      const std::uint8_t xa = r.getx(a);
      const std::uint8_t za = r.getz(a);
      const std::uint8_t xb = r.getx(b);
      const std::uint8_t zb = r.getz(b);
      r.sign ^= xa & zb & (xb ^ za ^ 1u);
      r.setx(b, xb ^ xa);
      r.setz(a, za ^ zb);
    }
  }

  std::uint8_t measure_z(std::size_t q, Rng& rng) {
    if (mode_ == Mode::Product) {
      const std::uint8_t c = prod_[q];
      if (!(c & kPX)) return (c & kPSign) ? 1 : 0;
      const std::uint8_t b = rng.bit();
      prod_[q] = static_cast<std::uint8_t>(kPZ | (b ? kPSign : 0));
      return b;
    }
    const std::size_t n = n_;
    std::size_t p = 2 * n;
    for (std::size_t i = n; i < 2 * n; ++i) {
      if (rows_[i].getx(q)) {
        p = i;
        break;
      }
    }
    if (p < 2 * n) {
      for (std::size_t i = 0; i < 2 * n; ++i)
        if (i != p && rows_[i].getx(q)) rowsum(rows_[i], rows_[p]);
      rows_[p - n] = rows_[p];
      rows_[p].clear();
      rows_[p].setz(q, 1);
      const std::uint8_t b = rng.bit();
      rows_[p].sign = b;
      return b;
    }
    PauliRow& scratch = rows_[2 * n];
    scratch.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (rows_[i].getx(q)) rowsum(scratch, rows_[i + n]);
    return scratch.sign;
  }

  // Stabilizer generators of the full state.
  std::vector<PauliRow> stabilizers() const {
    std::vector<PauliRow> out;
    out.reserve(n_);
    if (mode_ == Mode::Product) {
      for (std::size_t q = 0; q < n_; ++q) {
        PauliRow r(n_);
        r.setx(q, prod_[q] & kPX);
        r.setz(q, (prod_[q] & kPZ) >> 1);
        r.sign = (prod_[q] & kPSign) ? 1 : 0;
        out.push_back(std::move(r));
      }
    } else {
      for (std::size_t i = n_; i < 2 * n_; ++i) out.push_back(rows_[i]);
    }
    return out;
  }

  std::vector<PauliRow>& rows() { return rows_; }
  const std::vector<PauliRow>& rows() const { return rows_; }

  static std::shared_ptr<SimState> from_tableau(std::size_t n, std::vector<PauliRow> rows) {
    auto s = std::make_shared<SimState>(n);
    s->prod_.clear();
    s->rows_ = std::move(rows);
    s->mode_ = Mode::Tableau;
    return s;
  }

  std::shared_ptr<SimState> clone() const {
    auto s = std::make_shared<SimState>(n_);
    s->mode_ = mode_;
    s->prod_ = prod_;
    s->rows_ = rows_;
    return s;
  }

 private:
  std::size_t n_;
  Mode mode_ = Mode::Product;
  std::vector<std::uint8_t> prod_;
  std::vector<PauliRow> rows_;
};

// ---------------------------------------------------------------------------
// Permutations

QubitPermutation::QubitPermutation(std::vector<std::size_t> image) : image_(std::move(image)) {
  std::vector<std::uint8_t> seen(image_.size(), 0);
  for (auto v : image_) {
    if (v >= image_.size() || seen[v]) throw Error("QubitPermutation: image is not a bijection");
    seen[v] = 1;
  }
}

QubitPermutation QubitPermutation::identity(std::size_t n) {
  std::vector<std::size_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  return QubitPermutation(std::move(id));
}

QubitPermutation QubitPermutation::inverse() const {
  std::vector<std::size_t> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
  return QubitPermutation(std::move(inv));
}

QubitPermutation QubitPermutation::then(const QubitPermutation& next) const {
  require_length(next.size(), size(), "QubitPermutation::then");
  std::vector<std::size_t> out(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) out[i] = next.image_[image_[i]];
  return QubitPermutation(std::move(out));
}

// ---------------------------------------------------------------------------
// Registers

QuantumRegister::~QuantumRegister() = default;

QuantumRegister QuantumRegister::prepare_bb84(std::span<const std::uint8_t> bits, std::span<const std::uint8_t> basis,
                                              std::size_t cap) {
  require_length(basis.size(), bits.size(), "prepare_bb84");
  if (bits.size() > cap) throw Error("prepare_bb84: register exceeds the simulator qubit cap");
  QuantumRegister r;
  r.state_ = std::make_shared<SimState>(bits.size());
  r.qubits_.resize(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    r.qubits_[i] = i;
    const std::uint8_t sign = bits[i] ? kPSign : 0;
    r.state_->set_product(i, static_cast<std::uint8_t>((basis[i] ? kPX : kPZ) | sign));
  }
  return r;
}

QuantumRegister QuantumRegister::zeros(std::size_t n, std::size_t cap) {
  Bits z(n, 0);
  return prepare_bb84(z, z, cap);
}

void QuantumRegister::resolve() const {
  while (state_ && state_->forward) {
    const std::size_t off = state_->forward_offset;
    for (auto& q : qubits_) q += off;
    state_ = state_->forward;
  }
}

void QuantumRegister::check_live() const {
  if (!state_) throw ConsumedRegister("register is empty");
  if (consumed_) throw ConsumedRegister("register has been consumed");
  resolve();
}

std::size_t QuantumRegister::global(std::size_t pos) const {
  if (pos >= qubits_.size()) throw LengthError("qubit position out of range");
  return qubits_[pos];
}

bool QuantumRegister::uses_tableau() const {
  check_live();
  return state_->mode() == SimState::Mode::Tableau;
}

void QuantumRegister::apply_gate(Gate g, std::size_t pos) {
  check_live();
  const std::size_t q = global(pos);
  switch (g) {
    case Gate::I: return;
    case Gate::X: state_->x(q); return;
    case Gate::Z: state_->z(q); return;
    case Gate::Y:
      state_->x(q);
      state_->z(q);
      return;
    case Gate::H: state_->h(q); return;
    case Gate::S: state_->s(q); return;
    case Gate::Sdg:
      state_->s(q);
      state_->s(q);
      state_->s(q);
      return;
    case Gate::T:
    case Gate::Tdg:
      throw NonCliffordGate("the stabilizer simulator only supports Clifford gates");
  }
}

void QuantumRegister::apply_cnot(std::size_t control, std::size_t target) {
  check_live();
  if (control == target) throw Error("CNOT control and target coincide");
  state_->cnot(global(control), global(target));
}

void QuantumRegister::apply_pauli(const PauliMask& m) {
  check_live();
  require_length(m.x.size(), size(), "apply_pauli x");
  require_length(m.z.size(), size(), "apply_pauli z");
  for (std::size_t i = 0; i < size(); ++i) {
    if (m.x[i]) state_->x(qubits_[i]);
    if (m.z[i]) state_->z(qubits_[i]);
  }
}

void QuantumRegister::apply_hadamard_mask(std::span<const std::uint8_t> mask) {
  check_live();
  require_length(mask.size(), size(), "apply_hadamard_mask");
  for (std::size_t i = 0; i < size(); ++i)
    if (mask[i]) state_->h(qubits_[i]);
}

void QuantumRegister::apply_permutation(const QubitPermutation& p) {
  check_live();
  require_length(p.size(), size(), "apply_permutation");
  std::vector<std::size_t> next(size());
  for (std::size_t i = 0; i < size(); ++i) next[p.image()[i]] = qubits_[i];
  qubits_ = std::move(next);
}

std::uint8_t QuantumRegister::measure_one(std::size_t pos, Basis basis, Rng& rng) {
  check_live();
  const std::size_t q = global(pos);
  if (basis == Basis::Hadamard) state_->h(q);
  const std::uint8_t b = state_->measure_z(q, rng);
  if (basis == Basis::Hadamard) state_->h(q);
  return b;
}

Bits QuantumRegister::measure(std::span<const std::size_t> positions, std::span<const Basis> bases, Rng& rng) {
  check_live();
  require_length(bases.size(), positions.size(), "measure");
  std::vector<std::uint8_t> seen(size(), 0);
  for (auto p : positions) {
    if (p >= size()) throw LengthError("measure: position out of range");
    if (seen[p]) throw Error("measure: positions must be distinct");
    seen[p] = 1;
  }
  Bits out(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) out[i] = measure_one(positions[i], bases[i], rng);
  return out;
}

Bits QuantumRegister::measure_all(Basis basis, Rng& rng) {
  check_live();
  Bits out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = measure_one(i, basis, rng);
  return out;
}

void QuantumRegister::consume() {
  check_live();
  consumed_ = true;
}

// ---------------------------------------------------------------------------
// Canonical form

namespace {

std::size_t lead_column(const PauliRow& r, std::size_t n) {
  for (std::size_t q = 0; q < n; ++q) {
    if (r.getx(q)) return 2 * q;
    if (r.getz(q)) return 2 * q + 1;
  }
  return 2 * n;
}

std::uint8_t column_bit(const PauliRow& r, std::size_t col) {
  return (col % 2 == 0) ? r.getx(col / 2) : r.getz(col / 2);
}

}  // namespace

CanonicalState QuantumRegister::canonical() const {
  check_live();
  const std::size_t total = state_->n();
  const std::size_t nreg = size();

  // Relabel so that foreign qubits come first and this register's qubits last.
  std::vector<std::size_t> order;
  std::vector<std::uint8_t> mine(total, 0);
  for (auto q : qubits_) mine[q] = 1;
  for (std::size_t q = 0; q < total; ++q)
    if (!mine[q]) order.push_back(q);
  const std::size_t foreign = order.size();
  order.insert(order.end(), qubits_.begin(), qubits_.end());

  std::vector<PauliRow> rows;
  for (const auto& src : state_->stabilizers()) {
    PauliRow r(total);
    for (std::size_t j = 0; j < total; ++j) {
      r.setx(j, src.getx(order[j]));
      r.setz(j, src.getz(order[j]));
    }
    r.sign = src.sign;
    rows.push_back(std::move(r));
  }

  // Reduced row-echelon form over columns x_0 z_0 x_1 z_1 ...
  std::size_t rank = 0;
  for (std::size_t col = 0; col < 2 * total && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && !column_bit(rows[p], col)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != rank && column_bit(rows[i], col)) rowsum(rows[i], rows[rank]);
    ++rank;
  }

  CanonicalState out;
  out.n = nreg;
  for (std::size_t i = 0; i < rank; ++i) {
    if (lead_column(rows[i], total) < 2 * foreign) continue;
    Bits bits(2 * nreg);
    for (std::size_t j = 0; j < nreg; ++j) {
      bits[2 * j] = rows[i].getx(foreign + j);
      bits[2 * j + 1] = rows[i].getz(foreign + j);
    }
    out.rows.push_back(std::move(bits));
    out.signs.push_back(rows[i].sign);
  }
  return out;
}

bool canonical_equal(const QuantumRegister& a, const QuantumRegister& b) {
  return a.canonical() == b.canonical();
}

QuantumRegister QuantumRegister::duplicate_for_test(const HarnessPrivilege& privilege) const {
  if (!privilege.granted) throw NoCloning("duplicate_for_test requires the test-harness privilege");
  check_live();
  QuantumRegister r;
  r.state_ = state_->clone();
  r.qubits_ = qubits_;
  return r;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

struct Reader {
  std::span<const std::uint8_t> data;
  std::size_t pos = 0;
  void need(std::size_t n) const {
    if (pos + n > data.size()) throw Error("register payload truncated");
  }
  std::uint8_t u8() {
    need(1);
    return data[pos++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{data[pos++]} << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{data[pos++]} << (8 * i);
    return v;
  }
};

}  // namespace

std::vector<std::uint8_t> QuantumRegister::serialize() const {
  check_live();
  std::vector<std::uint8_t> out;
  if (state_->mode() == SimState::Mode::Product) {
    out.push_back(0);
    put_u32(out, static_cast<std::uint32_t>(size()));
    for (auto q : qubits_) out.push_back(state_->product(q));
    return out;
  }
  const std::size_t n = state_->n();
  out.push_back(1);
  put_u32(out, static_cast<std::uint32_t>(n));
  put_u32(out, static_cast<std::uint32_t>(size()));
  for (auto q : qubits_) put_u32(out, static_cast<std::uint32_t>(q));
  for (std::size_t i = 0; i < 2 * n; ++i) {
    const auto& r = state_->rows()[i];
    for (auto w : r.x) put_u64(out, w);
    for (auto w : r.z) put_u64(out, w);
    out.push_back(r.sign);
  }
  return out;
}

QuantumRegister QuantumRegister::deserialize(std::span<const std::uint8_t> bytes) {
  Reader rd{bytes};
  const std::uint8_t mode = rd.u8();
  QuantumRegister r;
  if (mode == 0) {
    const std::uint32_t n = rd.u32();
    if (n > kDefaultQubitCap) throw Error("register payload exceeds the qubit cap");
    r.state_ = std::make_shared<SimState>(n);
    r.qubits_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::uint8_t c = rd.u8();
      if ((c & ~(kPX | kPZ | kPSign)) || !(c & (kPX | kPZ))) throw Error("invalid product-state code");
      r.state_->set_product(i, c);
      r.qubits_[i] = i;
    }
  } else if (mode == 1) {
    const std::uint32_t n = rd.u32();
    if (n > kDefaultQubitCap) throw Error("register payload exceeds the qubit cap");
    const std::uint32_t nreg = rd.u32();
    if (nreg > n) throw Error("register map larger than tableau");
    r.qubits_.resize(nreg);
    for (auto& q : r.qubits_) {
      q = rd.u32();
      if (q >= n) throw Error("register map index out of range");
    }
    std::vector<PauliRow> rows(2 * std::size_t{n} + 1, PauliRow(n));
    for (std::size_t i = 0; i < 2 * std::size_t{n}; ++i) {
      for (auto& w : rows[i].x) w = rd.u64();
      for (auto& w : rows[i].z) w = rd.u64();
      rows[i].sign = rd.u8() & 1u;
    }
    r.state_ = SimState::from_tableau(n, std::move(rows));
  } else {
    throw Error("unknown register payload mode " + std::to_string(mode));
  }
  if (rd.pos != bytes.size()) throw Error("trailing bytes after register payload");
  return r;
}

// ---------------------------------------------------------------------------
// Entanglement

std::pair<QuantumRegister, QuantumRegister> make_bell_pairs(std::size_t n) {
  auto state = std::make_shared<SimState>(2 * n);
  state->to_tableau();
  for (std::size_t j = 0; j < n; ++j) {
    state->h(j);
    state->cnot(j, n + j);
  }
  QuantumRegister a;
  QuantumRegister b;
  a.state_ = state;
  b.state_ = state;
  for (std::size_t j = 0; j < n; ++j) {
    a.qubits_.push_back(j);
    b.qubits_.push_back(n + j);
  }
  return {std::move(a), std::move(b)};
}

std::pair<Bits, Bits> teleport(QuantumRegister& payload, QuantumRegister& epr_half_a, Rng& rng) {
  payload.check_live();
  epr_half_a.check_live();
  require_length(epr_half_a.size(), payload.size(), "teleport");
  if (payload.state_ != epr_half_a.state_) {
    auto host = epr_half_a.state_;
    auto guest = payload.state_;
    const std::size_t off = host->n();
    host->absorb(*guest);
    guest->forward = host;
    guest->forward_offset = off;
    payload.resolve();
  }
  SimState& st = *epr_half_a.state_;
  const std::size_t n = payload.size();
  Bits x(n);
  Bits z(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t c = payload.qubits_[j];
    const std::size_t a = epr_half_a.qubits_[j];
    st.cnot(c, a);
    st.h(c);
    z[j] = st.measure_z(c, rng);
    x[j] = st.measure_z(a, rng);
  }
  payload.consume();
  epr_half_a.consume();
  return {std::move(x), std::move(z)};
}

}  // namespace cefe::qsim
