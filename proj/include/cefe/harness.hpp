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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cefe/fe.hpp"
#include "cefe/qsim.hpp"
#include "cefe/rng.hpp"

namespace cefe::harness {

// ---------------------------------------------------------------------------
// Randomized correctness sweeps.

struct ComboResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::string first_failure;
  double seconds = 0;
};

/// Every scheme/variant/backend combination the sweep covers.
const std::vector<std::string>& correctness_combos();
/// Throws Error for unknown combinations.
ComboResult run_correctness(const std::string& combo, std::size_t trials, std::uint64_t seed);

/// The reduced q-bounded profile used by the feq sweep: D = 2, ℓ = 1, t = 1,
/// N = 4, S = 2, v = 1 over GF(8).
fe::FeqParams feq_sweep_params();

// ---------------------------------------------------------------------------
// Deletion adversaries.

enum class Strategy { Honest, MeasureAll };

std::optional<Strategy> parse_strategy(const std::string& s);
const char* strategy_name(Strategy s);

/// cd, cesk-qrom, cepk-qrom, cesk-css, cepk-css, rnce, fe1, fead.
const std::vector<std::string>& attack_targets();

struct AttackOptions {
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  /// Hadamard positions for the cd and QROM targets.
  std::size_t w = 8;
};

/// Pass rate of Vrfy on certificates produced by the strategy.
fe::RateEstimate run_attack(const std::string& target, Strategy strategy, const AttackOptions& opt);
/// Predicted pass rate, or nullopt when the target has no closed form here.
std::optional<double> predicted_rate(const std::string& target, Strategy strategy, const AttackOptions& opt);

/// E_B[2^{-wt(B)}] over uniform B ∈ {0,1}^p, by enumerating every B.
double css_pass_rate_by_enumeration(std::size_t p);

// ---------------------------------------------------------------------------
// Teleportation statistics.

/// Random BB84 product followed by a random Clifford layer.
qsim::QuantumRegister random_stabilizer_state(std::size_t n, Rng& rng);
double chi2_uniform(const std::vector<std::size_t>& counts);
/// Upper 5% point of χ² with 2^{2n} − 1 degrees of freedom, n = 1..3.
double chi2_critical_5pct(std::size_t n);
/// Chi-square statistic of the 2n teleport outcome bits over `runs` runs.
double teleport_outcome_chi2(std::size_t n, std::size_t runs, Rng& rng);
/// Trials where correcting B reproduces a random stabilizer payload.
std::size_t teleport_recoveries(std::size_t n, std::size_t trials, Rng& rng);

// ---------------------------------------------------------------------------
// Envelope samples.

/// One honestly generated body per registered envelope tag.
std::vector<std::pair<std::string, std::vector<std::uint8_t>>> sample_envelope_bodies(std::uint64_t seed);

}  // namespace cefe::harness
