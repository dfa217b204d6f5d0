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

#include "cefe/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "cefe/circuit.hpp"
#include "cefe/cli.hpp"
#include "cefe/envelope.hpp"
#include "cefe/fe.hpp"
#include "cefe/garble.hpp"
#include "cefe/harness.hpp"

namespace cefe::cli {

namespace {

using field::FieldElem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Line {
  std::ostringstream text;
  bool pass = true;
  void require(bool ok) { pass = pass && ok; }
};

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

// |rate − p| ≤ 3·sqrt(p(1 − p)/n).
bool within_3sigma(const fe::RateEstimate& est, double p) {
  const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(est.trials));
  return std::abs(est.rate - p) <= 3 * sigma;
}

// Truth-table lookup by row enumeration, independent of Gate::apply.
std::uint8_t lookup(std::uint8_t table, std::uint8_t a, std::uint8_t b) {
  static const std::uint8_t rows[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  for (int r = 0; r < 4; ++r)
    if (rows[r][0] == a && rows[r][1] == b) return (table >> r) & 1u;
  return 0;
}

Bits reference_eval(const garble::LeveledCircuit& c, const Bits& x) {
  Bits v(x);
  v.resize(c.wire_count());
  for (const auto& g : c.gates) v[g.c] = lookup(g.table, v[g.a], v[g.b]);
  Bits out;
  for (auto o : c.outputs) out.push_back(v[o]);
  return out;
}

// C(x) by repeated multiplication over graded-lex monomials.
FieldElem expand(const fe::FeqParams& p, const fe::Polynomial& c, const std::vector<FieldElem>& x) {
  const auto monomials = garble::graded_lex_monomials(p.ell, p.degree);
  FieldElem acc = FieldElem::zero(p.k);
  for (std::size_t j = 0; j < monomials.size(); ++j) {
    FieldElem term = c.coeffs[j];
    for (std::size_t i = 0; i < p.ell; ++i)
      for (unsigned e = 0; e < monomials[j][i]; ++e) term = term * x[i];
    acc = acc + term;
  }
  return acc;
}

std::vector<FieldElem> random_input(const fe::FeqParams& p, Rng& rng) {
  std::vector<FieldElem> x;
  for (std::size_t i = 0; i < p.ell; ++i) x.push_back(FieldElem::random(p.k, rng));
  return x;
}

struct Scaler {
  std::size_t div;
  std::size_t operator()(std::size_t n) const { return std::max<std::size_t>(1, n / div); }
};

// ---------------------------------------------------------------------------

void correctness(Line& line, const Scaler& n, std::uint64_t seed, std::ostream& out) {
  const std::size_t trials = n(1000);
  double total = 0;
  std::size_t failures = 0;
  const auto& combos = harness::correctness_combos();
  for (std::size_t i = 0; i < combos.size(); ++i) {
    const auto r = harness::run_correctness(combos[i], trials, seed + i);
    total += r.seconds;
    failures += r.failures;
    out << "    " << std::left << std::setw(12) << r.name << std::right << r.trials << " trials, " << r.failures
        << " failures" << (r.failures ? " (first: " + r.first_failure + ")" : "") << ", " << fmt(r.seconds, 3)
        << " s\n";
  }
  line.require(failures == 0 && total <= 300);
  line.text << "correctness: " << combos.size() << " combinations x " << trials << " trials, " << failures
            << " failures, " << fmt(total, 4) << " s (limit 300 s)";
}

void cd_detection(Line& line, const Scaler& n, std::uint64_t seed) {
  harness::AttackOptions opt;
  opt.trials = n(100000);
  opt.seed = seed;
  opt.w = 8;
  const double p = std::ldexp(1.0, -8);
  const auto attack = harness::run_attack("cd", harness::Strategy::MeasureAll, opt);
  opt.trials = n(10000);
  opt.seed = seed + 1;
  const auto honest = harness::run_attack("cd", harness::Strategy::Honest, opt);
  line.require(within_3sigma(attack, p) && honest.hits == honest.trials);
  line.text << "OT-CD w=8: measure-all " << attack.hits << "/" << attack.trials << " = " << fmt(attack.rate)
            << " vs 2^-8 = " << fmt(p) << " (3 sigma = " << fmt(3 * std::sqrt(p * (1 - p) / attack.trials))
            << "), honest " << honest.hits << "/" << honest.trials;
}

void css_detection(Line& line, const Scaler& n, std::uint64_t seed) {
  const std::size_t p = 7;
  const double enumerated = harness::css_pass_rate_by_enumeration(p);
  const double closed = std::pow(0.75, static_cast<double>(p));
  harness::AttackOptions opt;
  opt.trials = n(100000);
  opt.seed = seed;
  const auto attack = harness::run_attack("cesk-css", harness::Strategy::MeasureAll, opt);
  line.require(std::abs(enumerated - closed) <= 1e-12 && within_3sigma(attack, enumerated));
  line.text << "CSS p=7: enumeration " << fmt(enumerated, 10) << " = (3/4)^7 " << fmt(closed, 10)
            << ", measure-all " << attack.hits << "/" << attack.trials << " = " << fmt(attack.rate)
            << " (3 sigma = " << fmt(3 * std::sqrt(enumerated * (1 - enumerated) / attack.trials)) << ")";
}

void teleportation(Line& line, const Scaler& n, std::uint64_t seed) {
  Rng rng(seed);
  line.text << "teleportation:";
  for (std::size_t k = 1; k <= 3; ++k) {
    const double chi2 = harness::teleport_outcome_chi2(k, n(10000), rng);
    const double crit = harness::chi2_critical_5pct(k);
    line.require(chi2 < crit);
    line.text << " n=" << k << " chi2 " << fmt(chi2, 4) << " < " << fmt(crit, 4) << ";";
  }
  std::size_t ok = 0, total = 0;
  for (std::size_t k = 1; k <= 3; ++k) {
    const std::size_t trials = n(1000);
    ok += harness::teleport_recoveries(k, trials, rng);
    total += trials;
  }
  line.require(ok == total);
  line.text << " recoveries " << ok << "/" << total;
}

void garbling(Line& line, const Scaler& n, std::uint64_t seed) {
  using garble::Gate;
  using garble::LeveledCircuit;
  Rng rng(seed);
  base::Qrom oracle(rng.next_u64());
  const auto params = garble::GcParams::desk();

  // Every 2-input, 2-gate leveled topology and pair of truth tables.
  std::size_t shapes_ok = 0, shapes = 0;
  const std::pair<std::size_t, std::size_t> in_pairs[] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  for (std::uint8_t t1 = 0; t1 < 16; ++t1) {
    for (std::uint8_t t2 = 0; t2 < 16; ++t2) {
      std::vector<LeveledCircuit> cs;
      for (auto [a1, b1] : in_pairs) {
        for (auto [a2, b2] : in_pairs) cs.push_back({2, {Gate{1, t1, a1, b1, 2}, Gate{1, t2, a2, b2, 3}}, {2, 3}});
        cs.push_back({2, {Gate{1, t1, a1, b1, 2}, Gate{2, t2, 2, 2, 3}}, {2, 3}});
      }
      for (const auto& c : cs) {
        const auto labels = garble::gc_samp(2, params, rng);
        auto g = garble::gc_grbl(c, labels, params, oracle, rng);
        bool ok = true;
        for (std::uint8_t x = 0; x < 4; ++x) {
          const Bits in{static_cast<std::uint8_t>(x >> 1), static_cast<std::uint8_t>(x & 1)};
          const auto y = garble::gc_eval(g.gc, garble::select_labels(labels, in), oracle, rng);
          ok = ok && y && *y == reference_eval(c, in);
        }
        shapes_ok += ok;
        ++shapes;
      }
    }
  }

  std::size_t random_ok = 0;
  const std::size_t random_trials = n(500);
  for (std::size_t t = 0; t < random_trials; ++t) {
    const auto c = garble::random_circuit(1 + rng.below(8), 1 + rng.below(64), 1 + rng.below(4), rng);
    const Bits x = rng.bits(c.n);
    const auto labels = garble::gc_samp(c.n, params, rng);
    auto g = garble::gc_grbl(c, labels, params, oracle, rng);
    const auto y = garble::gc_eval(g.gc, garble::select_labels(labels, x), oracle, rng);
    random_ok += y && *y == reference_eval(c, x);
  }

  std::size_t sim_ok = 0;
  const std::size_t sim_trials = n(500);
  for (std::size_t t = 0; t < sim_trials; ++t) {
    const auto c = garble::random_circuit(1 + rng.below(8), 1 + rng.below(64), 1 + rng.below(4), rng);
    const Bits x = rng.bits(c.n);
    const Bits y = reference_eval(c, x);
    const auto given = garble::select_labels(garble::gc_samp(c.n, params, rng), x);
    LeveledCircuit shape = c;
    for (auto& g : shape.gates) g.table = 0;
    auto sim = garble::gc_sim(shape, y, given, params, oracle, rng);
    const auto got = garble::gc_eval(sim.gc, given, oracle, rng);
    sim_ok += got && *got == y;
  }

  line.require(shapes == 256 * 20 && shapes_ok == shapes && random_ok == random_trials && sim_ok == sim_trials);
  line.text << "garbling: exhaustive 2-gate " << shapes_ok << "/" << shapes << " circuits (x4 inputs), random <=64-gate "
            << random_ok << "/" << random_trials << ", Sim " << sim_ok << "/" << sim_trials;
}

void qbounded(Line& line, const Scaler& n, std::uint64_t seed) {
  Rng rng(seed);
  base::Qrom oracle(rng.next_u64());
  const auto p = fe::FeqParams::desk();

  std::size_t dec_ok = 0;
  const std::size_t instances = n(100);
  for (std::size_t t = 0; t < instances; ++t) {
    auto keys = fe::feq_setup(p, rng);
    const auto c = fe::random_polynomial(p, rng);
    const auto sk = fe::feq_keygen(keys.mpk, keys.msk, c, rng);
    const auto x = random_input(p, rng);
    auto b = fe::feq_enc(keys.mpk, x, oracle, rng);
    const auto y = fe::feq_dec(sk, b.ct, oracle, rng);
    dec_ok += y && *y == expand(p, c, x);
  }

  // η over every instance, then η(0) from pairs of random Γ-sized-or-larger subsets.
  auto keys = fe::feq_setup(p, rng);
  const auto c = fe::random_polynomial(p, rng);
  std::vector<std::size_t> all(p.n_instances);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto full = fe::feq_keygen_with(keys.mpk, keys.msk, c, all, rng.subset(p.s_count, p.v), rng);
  const auto x = random_input(p, rng);
  auto b = fe::feq_enc(keys.mpk, x, oracle, rng);
  const auto eta = fe::feq_eta(full, b.ct, oracle, rng);
  const FieldElem want = expand(p, c, x);
  std::size_t pairs_ok = 0;
  const std::size_t pairs = n(1000);
  auto eta_at_zero = [&](const std::vector<std::size_t>& subset) {
    std::vector<std::pair<FieldElem, FieldElem>> pts;
    for (auto i : subset) pts.push_back((*eta)[i]);
    return field::interpolate_at(pts, FieldElem::zero(p.k));
  };
  for (std::size_t t = 0; eta && t < pairs; ++t) {
    const auto size1 = p.gamma_size() + rng.below(p.n_instances - p.gamma_size() + 1);
    const auto size2 = p.gamma_size() + rng.below(p.n_instances - p.gamma_size() + 1);
    const auto e1 = eta_at_zero(rng.subset(p.n_instances, size1));
    const auto e2 = eta_at_zero(rng.subset(p.n_instances, size2));
    pairs_ok += e1 == e2 && e1 == want;
  }

  const auto q2 = fe::FeqParams::from_queries(2, 2, 2, 2);
  const auto diag = fe::feq_collision_diag(q2, n(10000), rng);

  line.require(dec_ok == instances && pairs_ok == pairs && diag.overlap.rate < 0.05 && diag.cover.rate < 0.05);
  line.text << "feq desk: dec = C(x) " << dec_ok << "/" << instances << ", subset pairs " << pairs_ok << "/" << pairs
            << ", q=2 overlap " << fmt(diag.overlap.rate, 4) << " cover " << fmt(diag.cover.rate, 4) << " (< 0.05 over "
            << diag.overlap.trials << ")";
}

// Margin printed by `params check`, parsed back from its output.
std::optional<double> printed_margin(const std::string& text) {
  const auto at = text.find("margin = ");
  if (at == std::string::npos) return std::nullopt;
  return std::stod(text.substr(at + 9));
}

void parameter_gate(Line& line, std::uint64_t seed) {
  Rng rng(seed);
  std::size_t agree = 0, checked = 0, rejected_ok = 0, rejected = 0;
  double worst = 0;
  auto check = [&](std::size_t p, std::size_t q, std::size_t t, std::size_t k1, std::size_t k2) {
    std::ostringstream out, err;
    const int rc = run({"params", "check", "--p", std::to_string(p), "--q", std::to_string(q), "--t",
                        std::to_string(t), "--k1", std::to_string(k1), "--k2", std::to_string(k2)},
                       out, err);
    const double expect = static_cast<double>(t) * static_cast<double>(p) / static_cast<double>(p + q) -
                          4.0 * static_cast<double>(k1 - k2) * 0.69314718055994530942;
    const auto got = printed_margin(out.str());
    const bool positive = expect > 0;
    if (got) worst = std::max(worst, std::abs(*got - expect));
    ++checked;
    agree += got && std::abs(*got - expect) <= 1e-9 && rc == (positive ? kExitOk : kExitParameter);
    if (!positive) {
      ++rejected;
      rejected_ok += rc == kExitParameter;
    }
  };
  check(128, 47, 5, 24, 23);
  check(7, 7, 1, 4, 3);
  check(300, 23, 3, 12, 11);
  for (int i = 0; i < 200; ++i) {
    const std::size_t k2 = rng.below(20);
    check(1 + rng.below(500), 1 + rng.below(200), 1 + rng.below(20), k2 + 1 + rng.below(3), k2);
  }
  std::ostringstream out, err;
  const bool named = run({"params", "check", "--pair", "steane", "--p", "7"}, out, err) == kExitParameter;
  line.require(agree == checked && rejected_ok == rejected && rejected > 0 && named);
  line.text << "params check: " << agree << "/" << checked << " margins agree to 1e-9 (max diff " << fmt(worst, 3)
            << "), " << rejected_ok << "/" << rejected << " non-positive margins rejected with exit 4";
}

void serialization(Line& line, std::uint64_t seed) {
  const auto samples = harness::sample_envelope_bodies(seed);
  std::set<std::string> seen;
  std::size_t ok = 0;
  bool tableau = false;
  for (const auto& [tag, body] : samples) {
    seen.insert(tag);
    try {
      const auto bytes = seal(tag, body);
      const auto env = open(bytes);
      const auto again = reencode(env);
      ok += env.tag == tag && env.body == body && again == body && seal(tag, again) == bytes;
      if (tag == "CDCT") tableau = tableau || open_object(bytes, tag, cd::read_register).uses_tableau();
    } catch (const DecodeError&) {
    }
  }
  const std::size_t tags = tag_registry().size();
  line.require(ok == samples.size() && seen.size() == tags && tableau);
  line.text << "envelopes: " << ok << "/" << samples.size() << " round trips identical, " << seen.size() << "/" << tags
            << " tags covered, tableau payload " << (tableau ? "included" : "MISSING");
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& out) {
  const Scaler n{std::max<std::size_t>(1, opt.scale_down)};
  std::vector<CriterionResult> results;
  auto record = [&](int id, const std::function<void(Line&)>& body) {
    Line line;
    const auto t0 = Clock::now();
    try {
      body(line);
    } catch (const std::exception& e) {
      line.pass = false;
      line.text << " error: " << e.what();
    }
    const std::string summary = line.text.str();
    out << (line.pass ? "[PASS] " : "[FAIL] ") << id << " " << summary << " [" << fmt(seconds_since(t0), 3) << " s]"
        << std::endl;
    results.push_back({id, line.pass, summary});
  };
  record(1, [&](Line& l) { correctness(l, n, opt.seed, out); });
  record(2, [&](Line& l) { cd_detection(l, n, opt.seed + 100); });
  record(3, [&](Line& l) { css_detection(l, n, opt.seed + 200); });
  record(4, [&](Line& l) { teleportation(l, n, opt.seed + 300); });
  record(5, [&](Line& l) { garbling(l, n, opt.seed + 400); });
  record(6, [&](Line& l) { qbounded(l, n, opt.seed + 500); });
  record(7, [&](Line& l) { parameter_gate(l, opt.seed + 600); });
  record(8, [&](Line& l) { serialization(l, opt.seed + 700); });
  return results;
}

}  // namespace cefe::cli
