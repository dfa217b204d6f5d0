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

#include "cefe/cd.hpp"
#include "cefe/codec.hpp"

namespace cefe::cli {

// Registers and CE objects are written by the cd layer.
using cd::write;

// File layout:
//   "CEFE" | version u16 | tag (4 ASCII bytes) | length u64 | payload
// The payload opens with a flag byte. kSimulation marks payloads that may
// hold simulated quantum registers (stored as stabilizer tableaux).

inline constexpr std::uint16_t kEnvelopeVersion = 1;
inline constexpr std::uint8_t kClassical = 0x00;
inline constexpr std::uint8_t kSimulation = 0x53;  // 'S'
inline constexpr std::size_t kEnvelopeHeader = 18;

class EnvelopeError : public DecodeError {
 public:
  using DecodeError::DecodeError;
};

struct Envelope {
  std::string tag;
  bool simulation = false;
  std::vector<std::uint8_t> body;
};

struct TagInfo {
  const char* tag;
  const char* what;
  bool quantum;
  /// Parses a body (rejecting trailing bytes) and serializes it again.
  std::vector<std::uint8_t> (*reencode)(ByteReader&);
};

const std::vector<TagInfo>& tag_registry();
/// nullptr for unknown tags.
const TagInfo* find_tag(const std::string& tag);

/// Throws EnvelopeError for unknown tags.
std::vector<std::uint8_t> seal(const std::string& tag, std::span<const std::uint8_t> body);
/// Checks magic, version, length, tag and flag. Throws EnvelopeError.
Envelope open(std::span<const std::uint8_t> bytes);
/// Like open, but also requires a given tag.
Envelope open_as(std::span<const std::uint8_t> bytes, const std::string& tag);
/// Parses the body with the tag's reader and re-serializes it.
std::vector<std::uint8_t> reencode(const Envelope& env);

// ---------------------------------------------------------------------------
// Payloads that bundle a scheme configuration with a key or ciphertext.

struct CeSkeKeyFile {
  cd::CeConfig cfg;
  base::SkeKey key;
};

struct CePkeKeyFile {
  cd::CeConfig cfg;
  base::LwePublicKey key;
};

struct CeDecKeyFile {
  cd::CeConfig cfg;
  base::LweSecretKey key;
};

struct CeCiphertextFile {
  cd::CeConfig cfg;
  cd::CeCiphertext ct;
};

void write(ByteWriter& w, const CeSkeKeyFile& v);
void write(ByteWriter& w, const CePkeKeyFile& v);
void write(ByteWriter& w, const CeDecKeyFile& v);
void write(ByteWriter& w, const CeCiphertextFile& v);
CeSkeKeyFile read_ce_ske_key_file(ByteReader& r);
CePkeKeyFile read_ce_pke_key_file(ByteReader& r);
CeDecKeyFile read_ce_dec_key_file(ByteReader& r);
CeCiphertextFile read_ce_ciphertext_file(ByteReader& r);

/// Serializes v with the matching write overload and seals it.
template <typename T>
std::vector<std::uint8_t> seal_object(const std::string& tag, const T& v) {
  ByteWriter w;
  write(w, v);
  return seal(tag, w.data());
}

/// Opens an envelope with the given tag and parses the body with read.
template <typename F>
auto open_object(std::span<const std::uint8_t> bytes, const std::string& tag, F read) {
  const Envelope env = open_as(bytes, tag);
  ByteReader r(env.body);
  auto v = read(r);
  r.expect_end();
  return v;
}

}  // namespace cefe::cli
