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

namespace cefe::cli {

struct CriterionResult {
  int id = 0;
  bool pass = false;
  std::string summary;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20261019;
  /// Divides every trial count (never below one trial). 1 runs the full suite.
  std::size_t scale_down = 1;
};

/// Runs the eight acceptance criteria, printing one PASS/FAIL line each.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& out);

}  // namespace cefe::cli
