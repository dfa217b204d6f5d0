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

#include "cefe/harness.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include "cefe/cd.hpp"
#include "cefe/circuit.hpp"
#include "cefe/envelope.hpp"
#include "cefe/garble.hpp"
#include "cefe/rnce.hpp"

namespace cefe::harness {

using cd::CeConfig;
using field::FieldElem;
using qsim::Basis;
using qsim::PauliMask;

namespace {

// A trial returns the name of the first property that failed, or nullptr.
using Trial = std::function<const char*()>;

struct CeKeys {
  cd::EncKey enc;
  cd::DecKey dec;
};

CeKeys ce_keys(bool pke, Rng& rng) {
  if (!pke) {
    auto k = base::ske_keygen(rng);
    return {k, k};
  }
  auto kp = base::lwe_keygen(base::lwe_desk_params(), rng);
  return {std::move(kp.pk), std::move(kp.sk)};
}

const base::LweParams kRnceLwe{16, 4099, 32, 2};

CeConfig rnce_config() { return CeConfig::qrom(16, 4); }

std::size_t mux_index(std::span<const std::uint8_t> m) {
  std::size_t idx = 0;
  for (std::size_t j = 0; j < m.size(); ++j) idx |= static_cast<std::size_t>(m[j]) << j;
  return idx;
}

// C(μ) + Σ_{i∈Δ} ξ_i with every power expanded as repeated multiplication.
FieldElem linear_reference(const garble::LinearFamily& fam, const std::vector<FieldElem>& coeffs, const Bits& delta,
                           const std::vector<FieldElem>& mu, const std::vector<FieldElem>& xi) {
  FieldElem acc(fam.k(), 0);
  for (std::size_t j = 0; j < fam.monomial_count(); ++j) {
    FieldElem term = coeffs[j];
    for (std::size_t i = 0; i < fam.ell(); ++i)
      for (unsigned e = 0; e < fam.monomials()[j][i]; ++e) term = term * mu[i];
    acc = acc + term;
  }
  for (std::size_t i = 0; i < delta.size(); ++i)
    if (delta[i]) acc = acc + xi[i];
  return acc;
}

std::vector<FieldElem> random_elems(unsigned k, std::size_t n, Rng& rng) {
  std::vector<FieldElem> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(FieldElem::random(k, rng));
  return v;
}

// ---------------------------------------------------------------------------
// Sweeps. Each returns a trial closure that owns any reusable keys.

Trial cd_sweep(Rng& rng) {
  return [&rng]() -> const char* {
    auto k = cd::cd_keygen(16, 8, rng);
    const Bits m = rng.bits(k.message_bits());
    auto reg = cd::cd_enc(k, m);
    if (cd::cd_dec(k, reg, rng) != m) return "dec";
    if (!cd::cd_vrfy(k, cd::cd_del(reg, rng))) return "vrfy";
    auto twirled = cd::cd_enc(k, m);
    const auto mask = PauliMask::random(k.size(), rng);
    twirled.apply_pauli(mask);
    if (!cd::cd_vrfy(k, cd::cd_modify(mask.x, mask.z, cd::cd_del(twirled, rng)))) return "modify";
    return nullptr;
  };
}

Trial ce_sweep(bool css, bool pke, Rng& rng, base::Qrom& oracle) {
  const CeConfig cfg = css ? CeConfig::steane() : CeConfig::qrom(32, 16);
  const std::size_t bits = css ? 3 : 8;
  return [=, &rng, &oracle]() -> const char* {
    const auto k = ce_keys(pke, rng);
    const Bits m = rng.bits(bits);
    auto b = cd::ce_enc(cfg, k.enc, m, oracle, rng);
    if (cd::ce_dec(cfg, k.dec, b.ct, oracle, rng) != m) return "dec";
    // Special correctness is a property of the SKE backend only.
    if (!pke && cd::ce_dec(cfg, ce_keys(false, rng).dec, b.ct, oracle, rng)) return "special";
    auto cert = cd::ce_del(b.ct, rng);
    if (!cd::ce_vrfy(b.vk, cert, rng)) return "vrfy";
    auto t = cd::ce_enc(cfg, k.enc, m, oracle, rng);
    const auto mask = PauliMask::random(t.ct.quantum_size(), rng);
    cd::twirl(t.ct, mask);
    auto fixed = cd::ce_modify(mask.x, mask.z, cd::ce_del(t.ct, rng));
    if (!cd::ce_vrfy(t.vk, fixed, rng)) return "modify";
    return nullptr;
  };
}

Trial rnce_sweep(Rng& rng, base::Qrom& oracle) {
  auto keys = std::make_shared<rnce::RnceKeys>(rnce::rnce_setup(8, rnce_config(), kRnceLwe, rng));
  return [keys, &rng, &oracle]() -> const char* {
    const auto& pk = keys->pk;
    const auto sk = rnce::rnce_keygen(keys->msk, rng);
    const Bits m = rng.bits(pk.n());
    auto b = rnce::rnce_enc(pk, m, oracle, rng);
    if (rnce::rnce_dec(pk, sk, b.ct, oracle, rng) != m) return "dec";
    auto cert = rnce::rnce_del(b.ct, rng);
    if (!rnce::rnce_vrfy(b.vk, cert, rng)) return "vrfy";
    auto [fb, aux] = rnce::rnce_fake(pk, oracle, rng);
    const Bits target = rng.bits(pk.n());
    const auto revealed = rnce::rnce_reveal(pk, keys->msk, aux, target);
    if (rnce::rnce_dec(pk, revealed, fb.ct, oracle, rng) != target) return "reveal";
    auto fcert = rnce::rnce_del(fb.ct, rng);
    if (!rnce::rnce_vrfy(fb.vk, fcert, rng)) return "fake vrfy";
    return nullptr;
  };
}

Trial garble_sweep(Rng& rng, base::Qrom& oracle) {
  return [&rng, &oracle]() -> const char* {
    const auto params = garble::GcParams::desk();
    const auto c = garble::random_circuit(1 + rng.below(6), 1 + rng.below(32), 1 + rng.below(4), rng);
    const Bits x = rng.bits(c.n);
    const Bits y = c.evaluate(x);
    auto labels = garble::gc_samp(c.n, params, rng);
    auto g = garble::gc_grbl(c, labels, params, oracle, rng);
    if (garble::gc_eval(g.gc, garble::select_labels(labels, x), oracle, rng) != y) return "eval";
    auto cert = garble::gc_del(g.gc, rng);
    if (!garble::gc_vrfy(g.vk, cert, rng)) return "vrfy";
    auto t = garble::gc_grbl(c, labels, params, oracle, rng);
    const auto mask = PauliMask::random(t.gc.quantum_size(), rng);
    garble::gc_twirl(t.gc, mask);
    auto fixed = garble::gc_modify(mask.x, mask.z, garble::gc_del(t.gc, rng));
    if (!garble::gc_vrfy(t.vk, fixed, rng)) return "modify";
    garble::LeveledCircuit shape = c;
    for (auto& gate : shape.gates) gate.table = 0;
    const auto given = garble::select_labels(labels, x);
    auto sim = garble::gc_sim(shape, y, given, params, oracle, rng);
    if (garble::gc_eval(sim.gc, given, oracle, rng) != y) return "sim";
    return nullptr;
  };
}

// Shared by both fe1 sweeps: dec against an oracle, del/vrfy, twirl/modify.
const char* fe1_trial(const fe::Fe1Keys& keys, const Bits& f, const Bits& m, const Bits& want, Rng& rng,
                      base::Qrom& oracle) {
  const auto sk = fe::fe1_keygen(keys.msk, f);
  auto b = fe::fe1_enc(keys.mpk, m, oracle, rng);
  if (fe::fe1_dec(sk, b.ct, oracle, rng) != want) return "dec";
  auto cert = fe::fe1_del(b.ct, rng);
  if (!fe::fe1_vrfy(b.vk, cert, rng)) return "vrfy";
  auto t = fe::fe1_enc(keys.mpk, m, oracle, rng);
  const auto mask = PauliMask::random(t.ct.quantum_size(), rng);
  fe::fe1_twirl(t.ct, mask);
  auto fixed = fe::fe1_modify(mask.x, mask.z, fe::fe1_del(t.ct, rng));
  if (!fe::fe1_vrfy(t.vk, fixed, rng)) return "modify";
  return nullptr;
}

Trial fe1_mux_sweep(Rng& rng, base::Qrom& oracle) {
  auto fam = std::make_shared<garble::MuxFamily>(3);
  auto keys = std::make_shared<fe::Fe1Keys>(fe::fe1_setup(fam, {}, rng));
  return [fam, keys, &rng, &oracle]() -> const char* {
    const Bits table = rng.bits(fam->key_bits());
    const Bits m = rng.bits(fam->message_bits());
    return fe1_trial(*keys, fam->encode_key(table), m, Bits{table[mux_index(m)]}, rng, oracle);
  };
}

Trial fe1_linear_sweep(Rng& rng, base::Qrom& oracle) {
  auto fam = std::make_shared<garble::LinearFamily>(1, 2, 2, 3);
  auto keys = std::make_shared<fe::Fe1Keys>(fe::fe1_setup(fam, {}, rng));
  return [fam, keys, &rng, &oracle]() -> const char* {
    const unsigned k = fam->k();
    const auto coeffs = random_elems(k, fam->monomial_count(), rng);
    const Bits delta = rng.bits(fam->s_count());
    const auto mu = random_elems(k, fam->ell(), rng);
    const auto xi = random_elems(k, fam->s_count(), rng);
    const Bits want = linear_reference(*fam, coeffs, delta, mu, xi).to_bits();
    return fe1_trial(*keys, fam->encode_key(coeffs, delta), fam->encode_message(mu, xi), want, rng, oracle);
  };
}

Trial fead_sweep(Rng& rng, base::Qrom& oracle) {
  auto fam = std::make_shared<garble::MuxFamily>(1);
  auto keys = std::make_shared<fe::FeadKeys>(fe::fead_setup(fam, {}, rng));
  return [fam, keys, &rng, &oracle]() -> const char* {
    const Bits table = rng.bits(2);
    const Bits m = rng.bits(1);
    const auto sk = fe::fead_keygen(keys->msk, fam->encode_key(table), rng);
    auto b = fe::fead_enc(keys->mpk, m, oracle, rng);
    if (fe::fead_dec(sk, b.ct, oracle, rng) != Bits{table[m[0]]}) return "dec";
    auto cert = fe::fead_del(b.ct, rng);
    if (!fe::fead_vrfy(b.vk, cert, rng)) return "vrfy";
    return nullptr;
  };
}

Trial feq_sweep(Rng& rng, base::Qrom& oracle) {
  const auto params = feq_sweep_params();
  auto keys = std::make_shared<fe::FeqKeys>(fe::feq_setup(params, rng));
  return [params, keys, &rng, &oracle]() -> const char* {
    const auto c = fe::random_polynomial(params, rng);
    const auto sk = fe::feq_keygen(keys->mpk, keys->msk, c, rng);
    const auto x = random_elems(params.k, params.ell, rng);
    auto b = fe::feq_enc(keys->mpk, x, oracle, rng);
    if (fe::feq_dec(sk, b.ct, oracle, rng) != fe::evaluate(params, c, x)) return "dec";
    auto cert = fe::feq_del(b.ct, rng);
    if (!fe::feq_vrfy(b.vk, cert, rng)) return "vrfy";
    return nullptr;
  };
}

}  // namespace

fe::FeqParams feq_sweep_params() {
  fe::FeqParams p;
  p.degree = 2;
  p.ell = 1;
  p.t = 1;
  p.n_instances = 4;
  p.s_count = 2;
  p.v = 1;
  p.k = 3;
  return p;
}

const std::vector<std::string>& correctness_combos() {
  static const std::vector<std::string> combos = {
      "cd",      "ce-qrom-ske", "ce-qrom-pke", "ce-css-ske", "ce-css-pke", "rnce",
      "garble", "fe1-mux",     "fe1-linear", "fead-mux",   "feq",
  };
  return combos;
}

ComboResult run_correctness(const std::string& combo, std::size_t trials, std::uint64_t seed) {
  Rng rng(seed);
  base::Qrom oracle(seed ^ 0x5851f42d4c957f2dULL);
  const auto start = std::chrono::steady_clock::now();
  Trial trial;
  if (combo == "cd") trial = cd_sweep(rng);
  else if (combo == "ce-qrom-ske") trial = ce_sweep(false, false, rng, oracle);
  else if (combo == "ce-qrom-pke") trial = ce_sweep(false, true, rng, oracle);
  else if (combo == "ce-css-ske") trial = ce_sweep(true, false, rng, oracle);
  else if (combo == "ce-css-pke") trial = ce_sweep(true, true, rng, oracle);
  else if (combo == "rnce") trial = rnce_sweep(rng, oracle);
  else if (combo == "garble") trial = garble_sweep(rng, oracle);
  else if (combo == "fe1-mux") trial = fe1_mux_sweep(rng, oracle);
  else if (combo == "fe1-linear") trial = fe1_linear_sweep(rng, oracle);
  else if (combo == "fead-mux") trial = fead_sweep(rng, oracle);
  else if (combo == "feq") trial = feq_sweep(rng, oracle);
  else throw Error("unknown correctness combination: " + combo);

  ComboResult res;
  res.name = combo;
  for (std::size_t i = 0; i < trials; ++i) {
    const char* failed = nullptr;
    std::string detail;
    try {
      failed = trial();
    } catch (const std::exception& e) {
      failed = "exception";
      detail = e.what();
    }
    ++res.trials;
    if (failed) {
      if (res.failures++ == 0)
        res.first_failure = "trial " + std::to_string(i) + ": " + failed + (detail.empty() ? "" : " (" + detail + ")");
    }
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

// ---------------------------------------------------------------------------

std::optional<Strategy> parse_strategy(const std::string& s) {
  if (s == "honest") return Strategy::Honest;
  if (s == "measure-all") return Strategy::MeasureAll;
  return std::nullopt;
}

const char* strategy_name(Strategy s) { return s == Strategy::Honest ? "honest" : "measure-all"; }

const std::vector<std::string>& attack_targets() {
  static const std::vector<std::string> targets = {"cd",       "cesk-qrom", "cepk-qrom", "cesk-css",
                                                   "cepk-css", "rnce",      "fe1",       "fead"};
  return targets;
}

namespace {

void measure_all(cd::CeCiphertext& ct, Rng& rng) {
  for (auto& reg : ct.quantum) reg.measure_all(Basis::Computational, rng);
}

void measure_all(fe::Fe1Ciphertext& ct, Rng& rng) {
  for (auto& g : ct.gc.gates)
    for (auto& c : g.ct) measure_all(c, rng);
  for (auto& c : ct.labels) measure_all(c, rng);
}

// One attack trial: encrypt, let the strategy act, delete, verify.
using AttackTrial = std::function<bool(bool measure)>;

AttackTrial attack_trial(const std::string& target, const AttackOptions& opt, Rng& rng, base::Qrom& oracle) {
  if (target == "cd") {
    return [w = opt.w, &rng](bool measure) {
      auto k = cd::cd_keygen(w + 8, w, rng);
      auto reg = cd::cd_enc(k, rng.bits(k.message_bits()));
      if (measure) reg.measure_all(Basis::Computational, rng);
      return cd::cd_vrfy(k, cd::cd_del(reg, rng));
    };
  }
  if (target == "cesk-qrom" || target == "cepk-qrom" || target == "cesk-css" || target == "cepk-css") {
    const bool css = target.ends_with("css");
    const bool pke = target.starts_with("cepk");
    const CeConfig cfg = css ? CeConfig::steane() : CeConfig::qrom(16, opt.w);
    return [=, &rng, &oracle](bool measure) {
      const auto k = ce_keys(pke, rng);
      auto b = cd::ce_enc(cfg, k.enc, rng.bits(css ? 1 : 8), oracle, rng);
      if (measure) measure_all(b.ct, rng);
      auto cert = cd::ce_del(b.ct, rng);
      return cd::ce_vrfy(b.vk, cert, rng);
    };
  }
  if (target == "rnce") {
    auto keys = std::make_shared<rnce::RnceKeys>(rnce::rnce_setup(4, rnce_config(), kRnceLwe, rng));
    return [keys, &rng, &oracle](bool measure) {
      auto b = rnce::rnce_enc(keys->pk, rng.bits(4), oracle, rng);
      if (measure)
        for (auto& c : b.ct.parts) measure_all(c, rng);
      auto cert = rnce::rnce_del(b.ct, rng);
      return rnce::rnce_vrfy(b.vk, cert, rng);
    };
  }
  if (target == "fe1") {
    auto keys = std::make_shared<fe::Fe1Keys>(fe::fe1_setup(std::make_shared<garble::MuxFamily>(1), {}, rng));
    return [keys, &rng, &oracle](bool measure) {
      auto b = fe::fe1_enc(keys->mpk, rng.bits(1), oracle, rng);
      if (measure) measure_all(b.ct, rng);
      auto cert = fe::fe1_del(b.ct, rng);
      return fe::fe1_vrfy(b.vk, cert, rng);
    };
  }
  if (target == "fead") {
    auto keys = std::make_shared<fe::FeadKeys>(fe::fead_setup(std::make_shared<garble::MuxFamily>(1), {}, rng));
    return [keys, &rng, &oracle](bool measure) {
      auto b = fe::fead_enc(keys->mpk, rng.bits(1), oracle, rng);
      if (measure) {
        measure_all(b.ct.psi, rng);
        for (auto& c : b.ct.nce.parts) measure_all(c, rng);
      }
      auto cert = fe::fead_del(b.ct, rng);
      return fe::fead_vrfy(b.vk, cert, rng);
    };
  }
  throw Error("unknown attack target: " + target);
}

}  // namespace

fe::RateEstimate run_attack(const std::string& target, Strategy strategy, const AttackOptions& opt) {
  Rng rng(opt.seed);
  base::Qrom oracle(opt.seed ^ 0x5851f42d4c957f2dULL);
  auto trial = attack_trial(target, opt, rng, oracle);
  std::size_t passes = 0;
  for (std::size_t i = 0; i < opt.trials; ++i) passes += trial(strategy == Strategy::MeasureAll);
  return fe::wilson(passes, opt.trials);
}

double css_pass_rate_by_enumeration(std::size_t p) {
  if (p > 30) throw Error("enumeration limited to p ≤ 30");
  double sum = 0;
  const std::uint64_t count = std::uint64_t{1} << p;
  for (std::uint64_t b = 0; b < count; ++b) sum += std::ldexp(1.0, -std::popcount(b));
  return sum / static_cast<double>(count);
}

std::optional<double> predicted_rate(const std::string& target, Strategy strategy, const AttackOptions& opt) {
  if (strategy == Strategy::Honest) return 1.0;
  if (target == "cd" || target == "cesk-qrom" || target == "cepk-qrom") return std::ldexp(1.0, -static_cast<int>(opt.w));
  if (target == "cesk-css" || target == "cepk-css") return css_pass_rate_by_enumeration(CeConfig::steane().p);
  // 8 components, each with 4 Hadamard positions.
  if (target == "rnce") return std::ldexp(1.0, -32);
  return std::nullopt;
}

// ---------------------------------------------------------------------------

qsim::QuantumRegister random_stabilizer_state(std::size_t n, Rng& rng) {
  auto r = qsim::QuantumRegister::prepare_bb84(rng.bits(n), rng.bits(n));
  for (std::size_t layer = 0; layer < 3 * n; ++layer) {
    const auto g = rng.below(3);
    const auto q = static_cast<std::size_t>(rng.below(n));
    if (g == 0) r.apply_gate(qsim::Gate::H, q);
    if (g == 1) r.apply_gate(qsim::Gate::S, q);
    if (g == 2 && n > 1) {
      auto t = static_cast<std::size_t>(rng.below(n - 1));
      if (t >= q) ++t;
      r.apply_cnot(q, t);
    }
  }
  return r;
}

double chi2_uniform(const std::vector<std::size_t>& counts) {
  double total = 0;
  for (auto c : counts) total += static_cast<double>(c);
  const double e = total / static_cast<double>(counts.size());
  double chi2 = 0;
  for (auto c : counts) chi2 += (static_cast<double>(c) - e) * (static_cast<double>(c) - e) / e;
  return chi2;
}

double chi2_critical_5pct(std::size_t n) {
  // 3, 15 and 63 degrees of freedom.
  static const double crit[] = {7.814728, 24.995790, 82.528727};
  if (n < 1 || n > 3) throw Error("χ² table covers n = 1..3");
  return crit[n - 1];
}

double teleport_outcome_chi2(std::size_t n, std::size_t runs, Rng& rng) {
  std::vector<std::size_t> counts(std::size_t{1} << (2 * n), 0);
  for (std::size_t i = 0; i < runs; ++i) {
    auto payload = random_stabilizer_state(n, rng);
    auto [a, b] = qsim::make_bell_pairs(n);
    auto [x, z] = qsim::teleport(payload, a, rng);
    ++counts[bits_to_uint(concat(x, z))];
  }
  return chi2_uniform(counts);
}

std::size_t teleport_recoveries(std::size_t n, std::size_t trials, Rng& rng) {
  const qsim::HarnessPrivilege harness{true};
  std::size_t ok = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    auto payload = random_stabilizer_state(n, rng);
    const auto reference = payload.duplicate_for_test(harness);
    auto [a, b] = qsim::make_bell_pairs(n);
    auto [x, z] = qsim::teleport(payload, a, rng);
    b.apply_pauli({x, z});
    ok += qsim::canonical_equal(b, reference);
  }
  return ok;
}

// ---------------------------------------------------------------------------

std::vector<std::pair<std::string, std::vector<std::uint8_t>>> sample_envelope_bodies(std::uint64_t seed) {
  Rng rng(seed);
  base::Qrom oracle(seed);
  std::vector<std::pair<std::string, std::vector<std::uint8_t>>> out;
  auto add = [&out](const std::string& tag, const auto& v) {
    using cd::write;
    using cli::write;
    ByteWriter w;
    write(w, v);
    out.emplace_back(tag, w.take());
  };

  auto ck = cd::cd_keygen(12, 4, rng);
  add("CDKY", ck);
  add("CDCT", cd::cd_enc(ck, rng.bits(ck.message_bits())));
  // Entangled registers are stored as tableaux, with a qubit map when the
  // state is shared with another handle.
  add("CDCT", random_stabilizer_state(4, rng));
  auto [left, right] = qsim::make_bell_pairs(2);
  add("CDCT", right);

  for (const CeConfig& cfg : {CeConfig::qrom(16, 8), CeConfig::steane()}) {
    const auto sk = base::ske_keygen(rng);
    add("CESK", cli::CeSkeKeyFile{cfg, sk});
    auto kp = base::lwe_keygen(base::lwe_desk_params(), rng);
    add("CEPK", cli::CePkeKeyFile{cfg, kp.pk});
    add("CEDK", cli::CeDecKeyFile{cfg, kp.sk});
    auto b = cd::ce_enc(cfg, kp.pk, rng.bits(2), oracle, rng);
    add("CEVK", b.vk);
    add("CECT", cli::CeCiphertextFile{cfg, std::move(b.ct)});
    auto t = cd::ce_enc(cfg, sk, rng.bits(2), oracle, rng);
    add("CECR", cd::ce_del(t.ct, rng));
  }

  auto rk = rnce::rnce_setup(3, rnce_config(), kRnceLwe, rng);
  add("RNPK", rk.pk);
  add("RNMK", rk.msk);
  add("RNSK", rnce::rnce_keygen(rk.msk, rng));
  auto rb = rnce::rnce_enc(rk.pk, rng.bits(3), oracle, rng);
  add("RNVK", rb.vk);
  add("RNCE", rb.ct);
  add("RNCR", rnce::rnce_del(rb.ct, rng));

  const auto params = garble::GcParams::desk();
  const auto circuit = garble::random_circuit(3, 6, 2, rng);
  const auto labels = garble::gc_samp(3, params, rng);
  auto g = garble::gc_grbl(circuit, labels, params, oracle, rng);
  add("GCIR", circuit);
  add("GCLB", labels);
  add("GCVK", g.vk);
  add("GCGC", g.gc);
  add("GCCR", garble::gc_del(g.gc, rng));

  auto mux = std::make_shared<garble::MuxFamily>(2);
  auto f1 = fe::fe1_setup(mux, {}, rng);
  add("F1PK", f1.mpk);
  add("F1MK", f1.msk);
  add("F1SK", fe::fe1_keygen(f1.msk, mux->encode_key(rng.bits(4))));
  auto b1 = fe::fe1_enc(f1.mpk, rng.bits(2), oracle, rng);
  add("F1VK", b1.vk);
  add("FE1C", b1.ct);
  add("F1CR", fe::fe1_del(b1.ct, rng));

  auto mux1 = std::make_shared<garble::MuxFamily>(1);
  auto fa = fe::fead_setup(mux1, {}, rng);
  add("FAPK", fa.mpk);
  add("FAMK", fa.msk);
  add("FASK", fe::fead_keygen(fa.msk, mux1->encode_key(rng.bits(2)), rng));
  auto ba = fe::fead_enc(fa.mpk, rng.bits(1), oracle, rng);
  add("FAVK", ba.vk);
  add("FEAD", ba.ct);
  add("FACR", fe::fead_del(ba.ct, rng));

  const auto qp = feq_sweep_params();
  auto fq = fe::feq_setup(qp, rng);
  add("FQPK", fq.mpk);
  add("FQMK", fq.msk);
  add("FQSK", fe::feq_keygen(fq.mpk, fq.msk, fe::random_polynomial(qp, rng), rng));
  auto bq = fe::feq_enc(fq.mpk, random_elems(qp.k, qp.ell, rng), oracle, rng);
  add("FQVK", bq.vk);
  add("FEQC", bq.ct);
  add("FQCR", fe::feq_del(bq.ct, rng));
  return out;
}

}  // namespace cefe::harness
