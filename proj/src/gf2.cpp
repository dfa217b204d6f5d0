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

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>

namespace cefe::gf2 {

BitMatrix BitMatrix::from_rows(const std::vector<Bits>& rows) {
  if (rows.empty()) return BitMatrix(0, 0);
  BitMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require_length(rows[r].size(), m.cols_, "BitMatrix row");
    for (std::size_t c = 0; c < m.cols_; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Bits BitMatrix::row(std::size_t r) const {
  auto v = row_view(r);
  return Bits(v.begin(), v.end());
}

void BitMatrix::xor_row_into(std::size_t src, std::size_t dst) {
  std::uint8_t* d = bits_.data() + dst * cols_;
  const std::uint8_t* s = bits_.data() + src * cols_;
  for (std::size_t c = 0; c < cols_; ++c) d[c] ^= s[c];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(bits_.begin() + static_cast<std::ptrdiff_t>(a * cols_),
                   bits_.begin() + static_cast<std::ptrdiff_t>((a + 1) * cols_),
                   bits_.begin() + static_cast<std::ptrdiff_t>(b * cols_));
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
  return t;
}

BitMatrix BitMatrix::operator*(const BitMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw LengthError("BitMatrix product: shape mismatch");
  BitMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k)
      if (at(r, k))
        for (std::size_t c = 0; c < rhs.cols_; ++c) out.bits_[r * rhs.cols_ + c] ^= rhs.at(k, c);
  return out;
}

Bits BitMatrix::apply(std::span<const std::uint8_t> v) const {
  require_length(v.size(), cols_, "BitMatrix::apply");
  Bits out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint8_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc ^= at(r, c) & v[c];
    out[r] = acc;
  }
  return out;
}

bool BitMatrix::is_zero() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b == 0; });
}

Rref rref(const BitMatrix& m) {
  Rref out{m, {}};
  BitMatrix& a = out.matrix;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && !a.at(p, c)) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (i != r && a.at(i, c)) a.xor_row_into(r, i);
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

LinearCode LinearCode::from_generator(const BitMatrix& generator) {
  LinearCode code;
  code.length_ = generator.cols();
  Rref red = rref(generator);
  const std::size_t k = red.rank();
  code.generator_ = BitMatrix(k, code.length_);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < code.length_; ++c) code.generator_.set(r, c, red.matrix.at(r, c));
  code.pivots_ = red.pivots;

  // Null space basis: one vector per free column.
  std::vector<std::uint8_t> is_pivot(code.length_, 0);
  for (auto p : code.pivots_) is_pivot[p] = 1;
  code.parity_check_ = BitMatrix(code.length_ - k, code.length_);
  std::size_t h = 0;
  for (std::size_t f = 0; f < code.length_; ++f) {
    if (is_pivot[f]) continue;
    code.parity_check_.set(h, f, 1);
    for (std::size_t i = 0; i < k; ++i) code.parity_check_.set(h, code.pivots_[i], code.generator_.at(i, f));
    ++h;
  }
  return code;
}

bool LinearCode::contains(std::span<const std::uint8_t> x) const {
  require_length(x.size(), length_, "LinearCode::contains");
  Bits s = parity_check_.apply(x);
  return std::all_of(s.begin(), s.end(), [](std::uint8_t b) { return b == 0; });
}

LinearCode LinearCode::dual() const { return from_generator(parity_check_); }

Bits LinearCode::encode(std::span<const std::uint8_t> message) const {
  require_length(message.size(), dimension(), "LinearCode::encode");
  Bits out(length_, 0);
  for (std::size_t r = 0; r < dimension(); ++r)
    if (message[r]) xor_into(out, generator_.row_view(r));
  return out;
}

namespace {

using Packed = std::vector<std::uint64_t>;

Packed pack(std::span<const std::uint8_t> v) {
  Packed p((v.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) p[i / 64] |= std::uint64_t{1} << (i % 64);
  return p;
}

std::size_t popcount(const Packed& p) {
  std::size_t w = 0;
  for (auto x : p) w += static_cast<std::size_t>(std::popcount(x));
  return w;
}

void check_enumerable(std::size_t k) {
  if (k > kMaxEnumerationDimension) {
    throw InvalidCode("code dimension " + std::to_string(k) + " exceeds the enumeration limit");
  }
}

}  // namespace

std::vector<Bits> LinearCode::codewords() const {
  check_enumerable(dimension());
  std::vector<Bits> out;
  out.reserve(std::size_t{1} << dimension());
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << dimension()); ++m) {
    out.push_back(encode(uint_to_bits(m, dimension())));
  }
  return out;
}

std::size_t LinearCode::minimum_distance() const {
  check_enumerable(dimension());
  if (dimension() == 0) return length_ + 1;
  std::vector<Packed> rows;
  for (std::size_t r = 0; r < dimension(); ++r) rows.push_back(pack(generator_.row_view(r)));
  Packed cur(rows[0].size(), 0);
  std::size_t best = length_ + 1;
  // Gray-code walk visits every nonzero codeword once.
  const std::uint64_t total = std::uint64_t{1} << dimension();
  for (std::uint64_t i = 1; i < total; ++i) {
    const auto flip = static_cast<std::size_t>(std::countr_zero(i));
    for (std::size_t w = 0; w < cur.size(); ++w) cur[w] ^= rows[flip][w];
    best = std::min(best, popcount(cur));
  }
  return best;
}

Bits mod_c(std::span<const std::uint8_t> x, const LinearCode& code) {
  require_length(x.size(), code.length(), "mod_c");
  Bits out(x.begin(), x.end());
  const auto& g = code.generator();
  for (std::size_t i = 0; i < code.pivots().size(); ++i)
    if (out[code.pivots()[i]]) xor_into(out, g.row_view(i));
  return out;
}

namespace {

// Solves A·m = b for m, where A is given column-wise as `cols`.
std::optional<Bits> solve_columns(const std::vector<Bits>& cols, std::span<const std::uint8_t> b) {
  const std::size_t n = b.size();
  const std::size_t k = cols.size();
  BitMatrix aug(n, k + 1);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) aug.set(i, j, cols[j][i]);
  for (std::size_t i = 0; i < n; ++i) aug.set(i, k, b[i]);
  Rref red = rref(aug);
  Bits m(k, 0);
  for (std::size_t r = 0; r < red.pivots.size(); ++r) {
    if (red.pivots[r] == k) return std::nullopt;
    m[red.pivots[r]] = red.matrix.at(r, k);
  }
  return m;
}

}  // namespace

CssPair CssPair::make(LinearCode c1, LinearCode c2, std::size_t t,
                      std::optional<std::size_t> asserted_distance) {
  if (c1.length() != c2.length()) throw InvalidCode("CSS pair: code lengths differ");
  for (std::size_t r = 0; r < c2.dimension(); ++r) {
    if (!c1.contains(c2.generator().row_view(r))) {
      throw InvalidCode("CSS pair: generator row " + std::to_string(r) + " of C2 is not in C1");
    }
  }
  if (c1.dimension() <= c2.dimension()) throw InvalidCode("CSS pair: need k1 > k2");

  CssPair pair;
  pair.c2_dual_ = c2.dual();
  const std::size_t need = 2 * t + 1;
  if (c1.dimension() <= kMaxEnumerationDimension && pair.c2_dual_.dimension() <= kMaxEnumerationDimension) {
    const std::size_t d1 = c1.minimum_distance();
    const std::size_t d2 = pair.c2_dual_.minimum_distance();
    if (d1 < need || d2 < need) {
      throw InvalidCode("CSS pair: distances (" + std::to_string(d1) + ", " + std::to_string(d2) +
                        ") cannot correct t = " + std::to_string(t) + " errors");
    }
    pair.distance_verified_ = true;
  } else {
    if (!asserted_distance || *asserted_distance < need) {
      throw InvalidCode("CSS pair: codes too large to enumerate and no sufficient distance asserted");
    }
    pair.distance_verified_ = false;
  }

  // Complete a basis of C2 to one of C1.
  std::vector<Bits> basis;
  for (std::size_t r = 0; r < c2.dimension(); ++r) basis.push_back(c2.generator().row(r));
  std::vector<Bits> complement;
  for (std::size_t r = 0; r < c1.dimension(); ++r) {
    Bits cand = c1.generator().row(r);
    auto trial = basis;
    trial.push_back(cand);
    if (rref(BitMatrix::from_rows(trial)).rank() == trial.size()) {
      basis = std::move(trial);
      complement.push_back(mod_c(cand, c2));
    }
  }
  pair.complement_ = BitMatrix::from_rows(complement);
  pair.c1_ = std::move(c1);
  pair.c2_ = std::move(c2);
  pair.t_ = t;
  return pair;
}

Bits CssPair::encode_message(std::span<const std::uint8_t> m) const {
  require_length(m.size(), message_bits(), "CssPair::encode_message");
  Bits out(length(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i]) xor_into(out, complement_.row_view(i));
  return out;
}

Bits CssPair::decode_message(std::span<const std::uint8_t> rep) const {
  require_length(rep.size(), length(), "CssPair::decode_message");
  std::vector<Bits> cols;
  for (std::size_t i = 0; i < complement_.rows(); ++i) cols.push_back(complement_.row(i));
  auto m = solve_columns(cols, mod_c(rep, c2_));
  if (!m) throw InvalidCode("value is not in C1");
  return *m;
}

LinearCode cyclic_code(std::size_t n, std::span<const std::uint8_t> generator_poly) {
  if (generator_poly.empty() || generator_poly.size() > n) throw InvalidCode("bad generator polynomial");
  const std::size_t k = n - (generator_poly.size() - 1);
  BitMatrix g(k, n);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t j = 0; j < generator_poly.size(); ++j) g.set(r, r + j, generator_poly[j]);
  return LinearCode::from_generator(g);
}

CssPair CssPair::steane() {
  // [7,4] Hamming code; its dual is the [7,3] simplex code.
  auto c1 = LinearCode::from_generator(BitMatrix::from_rows({
      from_string("1000110"),
      from_string("0100101"),
      from_string("0010011"),
      from_string("0001111"),
  }));
  auto c2 = c1.dual();
  return make(std::move(c1), std::move(c2), 1);
}

CssPair CssPair::golay23() {
  // x^11 + x^9 + x^7 + x^6 + x^5 + x + 1, constant term first.
  const Bits g = from_string("110001110101");
  auto c1 = cyclic_code(23, g);
  auto c2 = c1.dual();
  return make(std::move(c1), std::move(c2), 3);
}

CssPair CssPair::qr47() {
  const Bits g = from_string("111101110110111000110001");
  auto c1 = cyclic_code(47, g);
  auto c2 = c1.dual();
  return make(std::move(c1), std::move(c2), 5);
}

Bits sample_coset_space(const CssPair& pair, CosetSpace which, Rng& rng) {
  switch (which) {
    case CosetSpace::C1ModC2:
      return mod_c(pair.c1().encode(rng.bits(pair.k1())), pair.c2());
    case CosetSpace::AmbientModC1:
      return mod_c(rng.bits(pair.length()), pair.c1());
    case CosetSpace::C2:
      return pair.c2().encode(rng.bits(pair.k2()));
    case CosetSpace::AmbientModC2Dual:
      return mod_c(rng.bits(pair.length()), pair.c2_dual());
  }
  throw Error("unknown coset space");
}

namespace {

// Syndrome → minimum-weight error over all errors of weight ≤ t.
std::map<Bits, Bits> build_syndrome_table(const BitMatrix& h, std::size_t n, std::size_t t) {
  double count = 0;
  double binom = 1;
  for (std::size_t w = 0; w <= t; ++w) {
    count += binom;
    binom = binom * static_cast<double>(n - w) / static_cast<double>(w + 1);
  }
  if (count > double(1 << 22)) throw InvalidCode("syndrome table too large for this code");

  std::map<Bits, Bits> table;
  std::vector<std::size_t> idx;
  Bits e(n, 0);
  // Enumerate supports in increasing weight so the first hit is minimal.
  for (std::size_t w = 0; w <= t; ++w) {
    idx.resize(w);
    for (std::size_t i = 0; i < w; ++i) idx[i] = i;
    while (true) {
      std::fill(e.begin(), e.end(), 0);
      for (auto i : idx) e[i] = 1;
      table.emplace(h.apply(e), e);
      // next combination
      std::size_t i = w;
      while (i > 0 && idx[i - 1] == n - w + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < w; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return table;
}

}  // namespace

std::optional<Bits> syndrome_decode(const CssPair& pair, std::span<const std::uint8_t> y, DecodeSide side) {
  require_length(y.size(), pair.length(), "syndrome_decode");
  const LinearCode& code = side == DecodeSide::C1 ? pair.c1() : pair.c2_dual();
  const auto table = build_syndrome_table(code.parity_check(), pair.length(), pair.t());
  auto it = table.find(code.parity_check().apply(y));
  if (it == table.end()) return std::nullopt;
  return xor_bits(y, it->second);
}

double security_margin(std::size_t p, std::size_t q, std::size_t t, std::size_t k1, std::size_t k2) {
  return static_cast<double>(t) * static_cast<double>(p) / static_cast<double>(p + q) -
         4.0 * static_cast<double>(k1 - k2) * std::log(2.0);
}

LinearCode read_code(std::istream& in) {
  std::size_t q = 0;
  std::size_t k = 0;
  if (!(in >> q >> k)) throw InvalidCode("code file: missing 'q k' header");
  std::vector<Bits> rows;
  for (std::size_t r = 0; r < k; ++r) {
    std::string line;
    if (!(in >> line)) throw InvalidCode("code file: expected " + std::to_string(k) + " rows");
    Bits row = from_string(line);
    if (row.size() != q) throw InvalidCode("code file: row " + std::to_string(r) + " has wrong length");
    rows.push_back(std::move(row));
  }
  if (k == 0) return LinearCode::from_generator(BitMatrix(0, q));
  auto code = LinearCode::from_generator(BitMatrix::from_rows(rows));
  if (code.dimension() != k) throw InvalidCode("code file: generator rows are linearly dependent");
  return code;
}

std::string write_code(const LinearCode& code) {
  std::ostringstream os;
  os << code.length() << ' ' << code.dimension() << '\n';
  for (std::size_t r = 0; r < code.dimension(); ++r) os << to_string(code.generator().row_view(r)) << '\n';
  return os.str();
}

}  // namespace cefe::gf2
