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
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cefe {

/// Unpacked bit string, one 0/1 value per byte. Used for every classical
/// bit vector that crosses a module boundary (keys, messages, certificates).
using Bits = std::vector<std::uint8_t>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a length or shape precondition.
class LengthError : public Error {
 public:
  using Error::Error;
};

inline void require_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw LengthError(std::string(what) + ": expected length " + std::to_string(want) + ", got " +
                      std::to_string(got));
  }
}

inline Bits xor_bits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  require_length(b.size(), a.size(), "xor_bits");
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

inline void xor_into(Bits& acc, std::span<const std::uint8_t> b) {
  require_length(b.size(), acc.size(), "xor_into");
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] ^= b[i];
}

inline std::size_t weight(std::span<const std::uint8_t> a) {
  std::size_t w = 0;
  for (auto v : a) w += v & 1u;
  return w;
}

inline Bits concat(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  Bits out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Bits slice(std::span<const std::uint8_t> a, std::size_t off, std::size_t len) {
  if (off + len > a.size()) throw LengthError("slice out of range");
  return Bits(a.begin() + static_cast<std::ptrdiff_t>(off),
              a.begin() + static_cast<std::ptrdiff_t>(off + len));
}

/// Packs bits LSB-first into bytes.
inline std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits) {
  std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] & 1u) out[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
  }
  return out;
}

inline Bits unpack_bits(std::span<const std::uint8_t> bytes, std::size_t nbits) {
  if (bytes.size() * 8 < nbits) throw LengthError("unpack_bits: not enough bytes");
  Bits out(nbits);
  for (std::size_t i = 0; i < nbits; ++i) out[i] = (bytes[i / 8] >> (i % 8)) & 1u;
  return out;
}

inline std::string to_string(std::span<const std::uint8_t> bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

inline Bits from_string(std::string_view s) {
  Bits out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '0' || c == '1') {
      out.push_back(static_cast<std::uint8_t>(c - '0'));
    } else {
      throw Error(std::string("invalid bit character '") + c + "'");
    }
  }
  return out;
}

/// Little-endian integer <-> bits.
inline Bits uint_to_bits(std::uint64_t v, std::size_t nbits) {
  Bits out(nbits);
  for (std::size_t i = 0; i < nbits; ++i) out[i] = (i < 64) ? ((v >> i) & 1u) : 0;
  return out;
}

inline std::uint64_t bits_to_uint(std::span<const std::uint8_t> bits) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bits.size() && i < 64; ++i) v |= std::uint64_t{bits[i] & 1u} << i;
  return v;
}

}  // namespace cefe
