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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cefe/bits.hpp"

namespace cefe {

class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Little-endian byte sink for payload serialization.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }

  void bytes(std::span<const std::uint8_t> b) {
    u64(b.size());
    out_.insert(out_.end(), b.begin(), b.end());
  }
  void raw(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  /// Bit count followed by packed bits.
  void bits(std::span<const std::uint8_t> b) {
    u64(b.size());
    raw(pack_bits(b));
  }
  void indices(const std::vector<std::size_t>& v) {
    u64(v.size());
    for (auto x : v) u64(x);
  }

  const std::vector<std::uint8_t>& data() const { return out_; }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  void put(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }

  std::vector<std::uint8_t> bytes() {
    const std::uint64_t n = u64();
    return raw(n);
  }
  std::vector<std::uint8_t> raw(std::uint64_t n) {
    need(n);
    std::vector<std::uint8_t> out(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                  data_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
    pos_ += n;
    return out;
  }
  Bits bits() {
    const std::uint64_t n = u64();
    if (n > (std::uint64_t{1} << 40)) throw DecodeError("implausible bit length");
    return unpack_bits(raw((n + 7) / 8), n);
  }
  std::vector<std::size_t> indices() {
    const std::uint64_t n = u64();
    if (n > remaining() / 8) throw DecodeError("payload truncated");
    std::vector<std::size_t> out(n);
    for (auto& x : out) x = u64();
    return out;
  }

  std::size_t remaining() const { return data_.size() - pos_; }
  void expect_end() const {
    if (pos_ != data_.size()) throw DecodeError("trailing bytes in payload");
  }

 private:
  void need(std::uint64_t n) const {
    if (n > data_.size() - pos_) throw DecodeError("payload truncated");
  }
  std::uint64_t get(int n) {
    need(static_cast<std::uint64_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= std::uint64_t{data_[pos_++]} << (8 * i);
    return v;
  }
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

/// Length-prefixed list; f writes one element.
template <typename T, typename F>
void write_list(ByteWriter& w, const std::vector<T>& v, F f) {
  w.u64(v.size());
  for (const auto& x : v) f(w, x);
}

/// Length-prefixed list; f reads one element.
template <typename T, typename F>
std::vector<T> read_list(ByteReader& r, F f) {
  const auto n = r.u64();
  if (n > r.remaining()) throw DecodeError("payload truncated");
  std::vector<T> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(f(r));
  return out;
}

}  // namespace cefe
