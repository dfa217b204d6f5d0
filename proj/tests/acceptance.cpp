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

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>

#include "cefe/acceptance.hpp"

// Usage: acceptance [scale-down]
int main(int argc, char** argv) {
  cefe::cli::AcceptanceOptions opt;
  if (argc > 1) opt.scale_down = std::max(1UL, std::strtoul(argv[1], nullptr, 10));
  const auto results = cefe::cli::run_acceptance(opt, std::cout);
  const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  std::cout << passed << "/" << results.size() << " acceptance criteria passed\n";
  return passed == static_cast<long>(results.size()) ? 0 : 1;
}
