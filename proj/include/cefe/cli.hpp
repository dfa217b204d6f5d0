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
#include <iosfwd>
#include <string>
#include <vector>

#include "cefe/bits.hpp"

namespace cefe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitEnvelope = 2;
inline constexpr int kExitBottom = 3;
inline constexpr int kExitParameter = 4;

/// Oracle seed used when --oracle-seed is absent. Encryption and decryption
/// must agree on it.
inline constexpr std::uint64_t kDefaultOracleSeed = 0x43454645;

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Runs one command. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cefe::cli
