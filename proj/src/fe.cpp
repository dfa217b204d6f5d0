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

#include "cefe/fe.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace cefe::fe {

using field::FieldElem;

// ---------------------------------------------------------------------------
// 1-bounded, non-adaptive

std::size_t Fe1Ciphertext::quantum_size() const {
  std::size_t n = gc.quantum_size();
  for (const auto& l : labels) n += l.quantum_size();
  return n;
}

Fe1Keys fe1_setup(std::shared_ptr<const garble::FunctionFamily> family, const Fe1Params& params, Rng& rng) {
  if (!family) throw Error("fe1_setup: no function family");
  Fe1Keys keys;
  keys.mpk.params = params;
  keys.mpk.family = std::move(family);
  for (std::size_t i = 0; i < 2 * keys.mpk.family->key_bits(); ++i) {
    auto kp = base::lwe_keygen(params.lwe, rng);
    keys.mpk.pk.push_back(std::move(kp.pk));
    keys.msk.sk.push_back(std::move(kp.sk));
  }
  return keys;
}

Fe1Sk fe1_keygen(const Fe1Msk& msk, std::span<const std::uint8_t> f) {
  require_length(f.size(), msk.sk.size() / 2, "fe1_keygen: function encoding");
  Fe1Sk sk;
  sk.f.assign(f.begin(), f.end());
  for (std::size_t i = 0; i < f.size(); ++i) sk.sk.push_back(msk.sk[2 * i + (f[i] & 1u)]);
  return sk;
}

Fe1Bundle fe1_enc(const Fe1Mpk& mpk, std::span<const std::uint8_t> m, base::Qrom& oracle, Rng& rng) {
  const std::size_t s = mpk.family->key_bits();
  require_length(mpk.pk.size(), 2 * s, "fe1_enc: public key");
  const auto& p = mpk.params;
  auto labels = garble::gc_samp(s, p.gc, rng);
  auto g = garble::gc_grbl(mpk.family->hardwire(m), labels, p.gc, oracle, rng);
  Fe1Bundle out;
  out.ct.pke = p.pke;
  out.ct.gc = std::move(g.gc);
  out.vk.gc = std::move(g.vk);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t a = 0; a < 2; ++a) {
      auto b = cd::ce_enc(p.pke, mpk.pk[2 * i + a], labels.wires[i][a].k, oracle, rng);
      out.ct.labels.push_back(std::move(b.ct));
      out.vk.labels.push_back(std::move(b.vk));
    }
  return out;
}

std::optional<Bits> fe1_dec(const Fe1Sk& sk, Fe1Ciphertext& ct, base::Qrom& oracle, Rng& rng) {
  const std::size_t s = sk.f.size();
  if (sk.sk.size() != s || ct.labels.size() != 2 * s) return std::nullopt;
  std::vector<garble::Label> held;
  for (std::size_t i = 0; i < s; ++i) {
    auto l = cd::ce_dec(ct.pke, sk.sk[i], ct.labels[2 * i + (sk.f[i] & 1u)], oracle, rng);
    if (!l) return std::nullopt;
    held.push_back(garble::Label{std::move(*l)});
  }
  return garble::gc_eval(ct.gc, held, oracle, rng);
}

Fe1Cert fe1_del(Fe1Ciphertext& ct, Rng& rng) {
  Fe1Cert cert;
  cert.gc = garble::gc_del(ct.gc, rng);
  for (auto& l : ct.labels) cert.labels.push_back(cd::ce_del(l, rng));
  return cert;
}

bool fe1_vrfy(const Fe1Vk& vk, Fe1Cert& cert, Rng& rng) {
  if (vk.labels.size() != cert.labels.size()) return false;
  bool ok = garble::gc_vrfy(vk.gc, cert.gc, rng);
  for (std::size_t i = 0; i < vk.labels.size(); ++i) ok = cd::ce_vrfy(vk.labels[i], cert.labels[i], rng) && ok;
  return ok;
}

Fe1Cert fe1_modify(std::span<const std::uint8_t> a, std::span<const std::uint8_t> c, Fe1Cert cert) {
  std::size_t off = 0;
  cert.gc.parts = garble::modify_components(a, c, std::move(cert.gc.parts), off);
  cert.labels = garble::modify_components(a, c, std::move(cert.labels), off);
  require_length(a.size(), off, "fe1_modify");
  return cert;
}

void fe1_twirl(Fe1Ciphertext& ct, const qsim::PauliMask& mask) {
  require_length(mask.size(), ct.quantum_size(), "fe1_twirl");
  std::size_t off = ct.gc.quantum_size();
  garble::gc_twirl(ct.gc, qsim::PauliMask{slice(mask.x, 0, off), slice(mask.z, 0, off)});
  for (auto& l : ct.labels) {
    const std::size_t n = l.quantum_size();
    cd::twirl(l, qsim::PauliMask{slice(mask.x, off, n), slice(mask.z, off, n)});
    off += n;
  }
}

std::size_t fe1_quantum_size(const Fe1Mpk& mpk) {
  const auto& p = mpk.params;
  const std::size_t s = mpk.family->key_bits();
  const std::size_t gates = mpk.family->hardwire(Bits(mpk.family->message_bits(), 0)).q();
  return 8 * gates * p.gc.bundle_qubits() + 2 * s * p.pke.quantum_size(p.gc.label_bits);
}

// ---------------------------------------------------------------------------
// 1-bounded, adaptive

FeadKeys fead_setup(std::shared_ptr<const garble::FunctionFamily> family, const FeadParams& params, Rng& rng) {
  auto nad = fe1_setup(std::move(family), params.nad, rng);
  const std::size_t n = fe1_quantum_size(nad.mpk);
  auto nce = rnce::rnce_setup(2 * n, params.nce, params.nce_lwe, rng);
  return {{std::move(nad.mpk), std::move(nce.pk)}, {std::move(nad.msk), std::move(nce.msk)}};
}

FeadSk fead_keygen(const FeadMsk& msk, std::span<const std::uint8_t> f, Rng& rng) {
  return {fe1_keygen(msk.nad, f), rnce::rnce_keygen(msk.nce, rng)};
}

FeadBundle fead_enc(const FeadMpk& mpk, std::span<const std::uint8_t> m, base::Qrom& oracle, Rng& rng,
                    const qsim::PauliMask* twirl) {
  auto nad = fe1_enc(mpk.nad, m, oracle, rng);
  const std::size_t n = nad.ct.quantum_size();
  require_length(2 * n, mpk.nce.n(), "fead_enc: RNCE key size");
  const qsim::PauliMask mask = twirl ? *twirl : qsim::PauliMask::random(n, rng);
  fe1_twirl(nad.ct, mask);
  auto nce = rnce::rnce_enc(mpk.nce, concat(mask.x, mask.z), oracle, rng);
  FeadBundle out;
  out.ct.nce_cfg = mpk.nce.cfg;
  out.ct.psi = std::move(nad.ct);
  out.ct.nce = std::move(nce.ct);
  out.vk = {std::move(nad.vk), std::move(nce.vk), mask.x, mask.z};
  return out;
}

std::optional<Bits> fead_dec(const FeadSk& sk, FeadCiphertext& ct, base::Qrom& oracle, Rng& rng) {
  auto ac = rnce::rnce_dec(ct.nce_cfg, sk.nce, ct.nce, oracle, rng);
  const std::size_t n = ct.psi.quantum_size();
  if (!ac || ac->size() != 2 * n) return std::nullopt;
  const qsim::PauliMask mask{slice(*ac, 0, n), slice(*ac, n, n)};
  // X^a Z^c Ψ Z^c X^a equals Z^c X^a Ψ X^a Z^c, so the same call untwirls.
  fe1_twirl(ct.psi, mask);
  auto y = fe1_dec(sk.nad, ct.psi, oracle, rng);
  fe1_twirl(ct.psi, mask);
  return y;
}

FeadCert fead_del(FeadCiphertext& ct, Rng& rng) { return {fe1_del(ct.psi, rng), rnce::rnce_del(ct.nce, rng)}; }

bool fead_vrfy(const FeadVk& vk, FeadCert& cert, Rng& rng) {
  const bool nce_ok = rnce::rnce_vrfy(vk.nce, cert.nce, rng);
  if (vk.a.size() != vk.c.size()) return false;
  Fe1Cert fixed;
  try {
    fixed = fe1_modify(vk.a, vk.c, std::move(cert.nad));
  } catch (const LengthError&) {
    return false;
  }
  return fe1_vrfy(vk.nad, fixed, rng) && nce_ok;
}

// ---------------------------------------------------------------------------
// q-bounded

FeqParams FeqParams::desk() { return {}; }

FeqParams FeqParams::from_queries(std::size_t q, std::size_t lambda, std::size_t degree, std::size_t ell) {
  FeqParams p;
  p.q = q;
  p.lambda = lambda;
  p.degree = degree;
  p.ell = ell;
  p.t = q * q * lambda;
  const std::size_t need = std::max(degree * degree * q * q * p.t, p.t * degree + 1);
  p.n_instances = 1;
  while (p.n_instances < need) p.n_instances *= 2;
  p.v = lambda;
  p.s_count = 4 * p.v * q * q;
  p.k = 0;
  for (unsigned k : {3u, 6u, 8u})
    if ((std::size_t{1} << k) > p.n_instances) {
      p.k = k;
      break;
    }
  if (p.k == 0) throw base::ParameterError("no supported field has more than N = " + std::to_string(p.n_instances) +
                                           " elements");
  return p;
}

void FeqParams::validate() const {
  auto fail = [](const std::string& why) { throw base::ParameterError("feq parameters: " + why); };
  if (q < 1 || t < 1 || ell < 1 || n_instances < 1) fail("q, t, ℓ and N must be positive");
  if (!field::supported_degree(k)) fail("unsupported field degree " + std::to_string(k));
  if ((std::size_t{1} << k) <= n_instances) fail("field too small: need 2^k > N");
  if (gamma_size() > n_instances) fail("|Γ| = tD + 1 exceeds N");
  if (v > s_count) fail("v exceeds S");
}

Polynomial random_polynomial(const FeqParams& params, Rng& rng) {
  Polynomial c;
  const std::size_t count = garble::graded_lex_monomials(params.ell, params.degree).size();
  for (std::size_t j = 0; j < count; ++j) c.coeffs.push_back(FieldElem::random(params.k, rng));
  return c;
}

FieldElem evaluate(const FeqParams& params, const Polynomial& c, const std::vector<FieldElem>& x) {
  const auto monos = garble::graded_lex_monomials(params.ell, params.degree);
  require_length(c.coeffs.size(), monos.size(), "polynomial coefficients");
  require_length(x.size(), params.ell, "polynomial input");
  FieldElem acc = FieldElem::zero(params.k);
  for (std::size_t j = 0; j < monos.size(); ++j) {
    FieldElem term = c.coeffs[j];
    for (std::size_t i = 0; i < params.ell; ++i) term = term * field::fe_pow(x[i], monos[j][i]);
    acc = acc + term;
  }
  return acc;
}

FeqKeys feq_setup(const FeqParams& params, Rng& rng, const FeqInner& inner) {
  params.validate();
  FeqKeys keys;
  keys.mpk.params = params;
  keys.mpk.family = std::make_shared<garble::LinearFamily>(params.ell, params.degree, params.s_count, params.k);
  for (std::size_t i = 0; i < params.n_instances; ++i) {
    if (params.adaptive) {
      auto k = fead_setup(keys.mpk.family, inner.fead, rng);
      keys.mpk.inst.emplace_back(std::move(k.mpk));
      keys.msk.inst.emplace_back(std::move(k.msk));
    } else {
      auto k = fe1_setup(keys.mpk.family, inner.fe1, rng);
      keys.mpk.inst.emplace_back(std::move(k.mpk));
      keys.msk.inst.emplace_back(std::move(k.msk));
    }
  }
  return keys;
}

FeqSk feq_keygen(const FeqMpk& mpk, const FeqMsk& msk, const Polynomial& c, Rng& rng) {
  const auto& p = mpk.params;
  auto gamma = rng.subset(p.n_instances, p.gamma_size());
  auto delta = rng.subset(p.s_count, p.v);
  return feq_keygen_with(mpk, msk, c, std::move(gamma), std::move(delta), rng);
}

FeqSk feq_keygen_with(const FeqMpk& mpk, const FeqMsk& msk, const Polynomial& c, std::vector<std::size_t> gamma,
                      std::vector<std::size_t> delta, Rng& rng) {
  const auto& p = mpk.params;
  if (gamma.size() < p.gamma_size())
    throw base::ParameterError("|Γ| must be at least tD + 1 = " + std::to_string(p.gamma_size()));
  if (std::set<std::size_t>(gamma.begin(), gamma.end()).size() != gamma.size() ||
      *std::max_element(gamma.begin(), gamma.end()) >= p.n_instances)
    throw base::ParameterError("Γ must hold distinct instance indices below N");
  Bits indicator(p.s_count, 0);
  for (auto d : delta) {
    if (d >= p.s_count || indicator[d]) throw base::ParameterError("Δ must hold distinct indices below S");
    indicator[d] = 1;
  }
  const Bits f = mpk.family->encode_key(c.coeffs, indicator);
  FeqSk sk;
  sk.k = p.k;
  sk.gamma = std::move(gamma);
  sk.delta = std::move(delta);
  for (auto i : sk.gamma) {
    if (const auto* m = std::get_if<FeadMsk>(&msk.inst.at(i)))
      sk.inst.emplace_back(fead_keygen(*m, f, rng));
    else
      sk.inst.emplace_back(fe1_keygen(std::get<Fe1Msk>(msk.inst.at(i)), f));
  }
  return sk;
}

FeqBundle feq_enc(const FeqMpk& mpk, const std::vector<FieldElem>& x, base::Qrom& oracle, Rng& rng) {
  const auto& p = mpk.params;
  require_length(x.size(), p.ell, "feq_enc: message");
  std::vector<field::UniPoly> mu, xi;
  for (const auto& xi_val : x) mu.push_back(field::random_poly_with_constant(xi_val, p.t, rng));
  for (std::size_t i = 0; i < p.s_count; ++i)
    xi.push_back(field::random_poly_with_constant(FieldElem::zero(p.k), p.degree * p.t, rng));
  FeqBundle out;
  for (std::size_t i = 0; i < p.n_instances; ++i) {
    const FieldElem pt = field::index_point(p.k, i + 1);
    std::vector<FieldElem> mv, xv;
    for (const auto& f : mu) mv.push_back(f.eval(pt));
    for (const auto& f : xi) xv.push_back(f.eval(pt));
    const Bits m = mpk.family->encode_message(mv, xv);
    if (const auto* k = std::get_if<FeadMpk>(&mpk.inst[i])) {
      auto b = fead_enc(*k, m, oracle, rng);
      out.ct.inst.emplace_back(std::move(b.ct));
      out.vk.inst.emplace_back(std::move(b.vk));
    } else {
      auto b = fe1_enc(std::get<Fe1Mpk>(mpk.inst[i]), m, oracle, rng);
      out.ct.inst.emplace_back(std::move(b.ct));
      out.vk.inst.emplace_back(std::move(b.vk));
    }
  }
  return out;
}

std::optional<std::vector<std::pair<FieldElem, FieldElem>>> feq_eta(const FeqSk& sk, FeqCiphertext& ct,
                                                                     base::Qrom& oracle, Rng& rng) {
  if (sk.inst.size() != sk.gamma.size()) return std::nullopt;
  std::vector<std::pair<FieldElem, FieldElem>> pts;
  for (std::size_t j = 0; j < sk.gamma.size(); ++j) {
    const std::size_t i = sk.gamma[j];
    if (i >= ct.inst.size()) return std::nullopt;
    std::optional<Bits> y;
    if (auto* c = std::get_if<FeadCiphertext>(&ct.inst[i])) {
      const auto* k = std::get_if<FeadSk>(&sk.inst[j]);
      if (!k) return std::nullopt;
      y = fead_dec(*k, *c, oracle, rng);
    } else {
      const auto* k = std::get_if<Fe1Sk>(&sk.inst[j]);
      if (!k) return std::nullopt;
      y = fe1_dec(*k, std::get<Fe1Ciphertext>(ct.inst[i]), oracle, rng);
    }
    if (!y || y->size() != sk.k) return std::nullopt;
    pts.emplace_back(field::index_point(sk.k, i + 1), FieldElem::from_bits(sk.k, *y));
  }
  return pts;
}

std::optional<FieldElem> feq_dec(const FeqSk& sk, FeqCiphertext& ct, base::Qrom& oracle, Rng& rng) {
  auto pts = feq_eta(sk, ct, oracle, rng);
  if (!pts || pts->empty()) return std::nullopt;
  return field::interpolate_at(*pts, FieldElem::zero(sk.k));
}

FeqCert feq_del(FeqCiphertext& ct, Rng& rng) {
  FeqCert cert;
  for (auto& c : ct.inst) {
    if (auto* f = std::get_if<FeadCiphertext>(&c))
      cert.inst.emplace_back(fead_del(*f, rng));
    else
      cert.inst.emplace_back(fe1_del(std::get<Fe1Ciphertext>(c), rng));
  }
  return cert;
}

bool feq_vrfy(const FeqVk& vk, FeqCert& cert, Rng& rng) {
  if (vk.inst.size() != cert.inst.size()) return false;
  bool ok = true;
  for (std::size_t i = 0; i < vk.inst.size(); ++i) {
    if (const auto* v = std::get_if<FeadVk>(&vk.inst[i])) {
      auto* c = std::get_if<FeadCert>(&cert.inst[i]);
      ok = c && fead_vrfy(*v, *c, rng) && ok;
    } else {
      auto* c = std::get_if<Fe1Cert>(&cert.inst[i]);
      ok = c && fe1_vrfy(std::get<Fe1Vk>(vk.inst[i]), *c, rng) && ok;
    }
  }
  return ok;
}

RateEstimate wilson(std::size_t hits, std::size_t trials) {
  RateEstimate e;
  e.trials = trials;
  e.hits = hits;
  if (trials == 0) return e;
  const double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double denom = 1 + z * z / n;
  const double centre = (p + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
  e.rate = p;
  e.ci_low = std::max(0.0, centre - half);
  e.ci_high = std::min(1.0, centre + half);
  return e;
}

CollisionDiag feq_collision_diag(const FeqParams& params, std::size_t trials, Rng& rng) {
  params.validate();
  std::size_t overlap = 0, cover = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<std::vector<std::size_t>> gammas, deltas;
    for (std::size_t i = 0; i < params.q; ++i) {
      gammas.push_back(rng.subset(params.n_instances, params.gamma_size()));
      deltas.push_back(rng.subset(params.s_count, params.v));
    }
    std::vector<std::uint8_t> in_union(params.n_instances, 0);
    for (std::size_t i = 0; i < params.q; ++i)
      for (std::size_t j = i + 1; j < params.q; ++j) {
        std::vector<std::size_t> both;
        std::set_intersection(gammas[i].begin(), gammas[i].end(), gammas[j].begin(), gammas[j].end(),
                              std::back_inserter(both));
        for (auto x : both) in_union[x] = 1;
      }
    overlap += static_cast<std::size_t>(std::count(in_union.begin(), in_union.end(), 1)) > params.t;

    bool covered = false;
    for (std::size_t i = 0; i < params.q && !covered && params.q > 1; ++i) {
      std::vector<std::uint8_t> others(params.s_count, 0);
      for (std::size_t j = 0; j < params.q; ++j)
        if (j != i)
          for (auto x : deltas[j]) others[x] = 1;
      covered = std::all_of(deltas[i].begin(), deltas[i].end(), [&](std::size_t x) { return others[x] == 1; });
    }
    cover += covered;
  }
  return {wilson(overlap, trials), wilson(cover, trials)};
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

void write_lwe_sks(ByteWriter& w, const std::vector<base::LweSecretKey>& v) {
  write_list(w, v, [](ByteWriter& ww, const base::LweSecretKey& k) { base::write(ww, k); });
}
std::vector<base::LweSecretKey> read_lwe_sks(ByteReader& r) {
  return read_list<base::LweSecretKey>(r, base::read_lwe_secret_key);
}

template <typename V, typename W0, typename W1>
void write_variant(ByteWriter& w, const V& v, W0 w0, W1 w1) {
  w.u8(static_cast<std::uint8_t>(v.index()));
  if (v.index() == 0)
    w0(w, std::get<0>(v));
  else
    w1(w, std::get<1>(v));
}

template <typename V, typename R0, typename R1>
V read_variant(ByteReader& r, R0 r0, R1 r1) {
  switch (r.u8()) {
    case 0:
      return V{std::in_place_index<0>, r0(r)};
    case 1:
      return V{std::in_place_index<1>, r1(r)};
    default:
      throw DecodeError("unknown inner scheme tag");
  }
}

}  // namespace

void write(ByteWriter& w, const Fe1Params& p) {
  garble::write(w, p.gc);
  cd::write(w, p.pke);
  base::write(w, p.lwe);
}

Fe1Params read_fe1_params(ByteReader& r) {
  Fe1Params p;
  p.gc = garble::read_gc_params(r);
  p.pke = cd::read_ce_config(r);
  p.lwe = base::read_lwe_params(r);
  return p;
}

void write(ByteWriter& w, const Fe1Mpk& v) {
  write(w, v.params);
  v.family->write_params(w);
  write_list(w, v.pk, [](ByteWriter& ww, const base::LwePublicKey& k) { base::write(ww, k); });
}

Fe1Mpk read_fe1_mpk(ByteReader& r) {
  Fe1Mpk v;
  v.params = read_fe1_params(r);
  v.family = garble::read_family(r);
  v.pk = read_list<base::LwePublicKey>(r, base::read_lwe_public_key);
  if (v.pk.size() != 2 * v.family->key_bits()) throw DecodeError("fe1 public key does not match its family");
  return v;
}

void write(ByteWriter& w, const Fe1Msk& v) { write_lwe_sks(w, v.sk); }
Fe1Msk read_fe1_msk(ByteReader& r) { return {read_lwe_sks(r)}; }

void write(ByteWriter& w, const Fe1Sk& v) {
  w.bits(v.f);
  write_lwe_sks(w, v.sk);
}

Fe1Sk read_fe1_sk(ByteReader& r) {
  Fe1Sk v;
  v.f = r.bits();
  v.sk = read_lwe_sks(r);
  return v;
}

void write(ByteWriter& w, const Fe1Ciphertext& v) {
  cd::write(w, v.pke);
  garble::write(w, v.gc);
  write_list(w, v.labels, [](ByteWriter& ww, const cd::CeCiphertext& c) { cd::write(ww, c); });
}

Fe1Ciphertext read_fe1_ciphertext(ByteReader& r) {
  Fe1Ciphertext v;
  v.pke = cd::read_ce_config(r);
  v.gc = garble::read_garbled_circuit(r);
  v.labels = read_list<cd::CeCiphertext>(r, cd::read_ce_ciphertext);
  return v;
}

void write(ByteWriter& w, const Fe1Vk& v) {
  garble::write(w, v.gc);
  write_list(w, v.labels, [](ByteWriter& ww, const cd::CeVk& c) { cd::write(ww, c); });
}

Fe1Vk read_fe1_vk(ByteReader& r) {
  Fe1Vk v;
  v.gc = garble::read_gc_vk(r);
  v.labels = read_list<cd::CeVk>(r, cd::read_ce_vk);
  return v;
}

void write(ByteWriter& w, const Fe1Cert& v) {
  garble::write(w, v.gc);
  write_list(w, v.labels, [](ByteWriter& ww, const cd::CeCert& c) { cd::write(ww, c); });
}

Fe1Cert read_fe1_cert(ByteReader& r) {
  Fe1Cert v;
  v.gc = garble::read_gc_cert(r);
  v.labels = read_list<cd::CeCert>(r, cd::read_ce_cert);
  return v;
}

void write(ByteWriter& w, const FeadMpk& v) {
  write(w, v.nad);
  rnce::write(w, v.nce);
}
FeadMpk read_fead_mpk(ByteReader& r) {
  FeadMpk v;
  v.nad = read_fe1_mpk(r);
  v.nce = rnce::read_rnce_pk(r);
  return v;
}

void write(ByteWriter& w, const FeadMsk& v) {
  write(w, v.nad);
  rnce::write(w, v.nce);
}
FeadMsk read_fead_msk(ByteReader& r) {
  FeadMsk v;
  v.nad = read_fe1_msk(r);
  v.nce = rnce::read_rnce_msk(r);
  return v;
}

void write(ByteWriter& w, const FeadSk& v) {
  write(w, v.nad);
  rnce::write(w, v.nce);
}
FeadSk read_fead_sk(ByteReader& r) {
  FeadSk v;
  v.nad = read_fe1_sk(r);
  v.nce = rnce::read_rnce_sk(r);
  return v;
}

void write(ByteWriter& w, const FeadCiphertext& v) {
  cd::write(w, v.nce_cfg);
  write(w, v.psi);
  rnce::write(w, v.nce);
}
FeadCiphertext read_fead_ciphertext(ByteReader& r) {
  FeadCiphertext v;
  v.nce_cfg = cd::read_ce_config(r);
  v.psi = read_fe1_ciphertext(r);
  v.nce = rnce::read_rnce_ciphertext(r);
  return v;
}

void write(ByteWriter& w, const FeadVk& v) {
  write(w, v.nad);
  rnce::write(w, v.nce);
  w.bits(v.a);
  w.bits(v.c);
}
FeadVk read_fead_vk(ByteReader& r) {
  FeadVk v;
  v.nad = read_fe1_vk(r);
  v.nce = rnce::read_rnce_vk(r);
  v.a = r.bits();
  v.c = r.bits();
  return v;
}

void write(ByteWriter& w, const FeadCert& v) {
  write(w, v.nad);
  rnce::write(w, v.nce);
}
FeadCert read_fead_cert(ByteReader& r) {
  FeadCert v;
  v.nad = read_fe1_cert(r);
  v.nce = rnce::read_rnce_cert(r);
  return v;
}

void write(ByteWriter& w, const FeqParams& p) {
  for (auto x : {p.q, p.lambda, p.degree, p.ell, p.t, p.n_instances, p.v, p.s_count}) w.u64(x);
  w.u32(p.k);
  w.u8(p.adaptive ? 1 : 0);
}

FeqParams read_feq_params(ByteReader& r) {
  FeqParams p;
  for (auto* x : {&p.q, &p.lambda, &p.degree, &p.ell, &p.t, &p.n_instances, &p.v, &p.s_count}) *x = r.u64();
  p.k = r.u32();
  p.adaptive = r.u8() != 0;
  try {
    p.validate();
  } catch (const base::ParameterError& e) {
    throw DecodeError(e.what());
  }
  return p;
}

void write(ByteWriter& w, const Polynomial& c) {
  write_list(w, c.coeffs, [](ByteWriter& ww, const FieldElem& e) { ww.u32(e.value()); });
}

Polynomial read_polynomial(ByteReader& r, unsigned k) {
  Polynomial c;
  c.coeffs = read_list<FieldElem>(r, [k](ByteReader& rr) {
    const auto v = rr.u32();
    if (v >= (1u << k)) throw DecodeError("field element out of range");
    return FieldElem(k, v);
  });
  return c;
}

void write(ByteWriter& w, const FeqMpk& v) {
  write(w, v.params);
  write_list(w, v.inst, [](ByteWriter& ww, const OneMpk& x) {
    write_variant(ww, x, [](ByteWriter& w2, const Fe1Mpk& y) { write(w2, y); },
                  [](ByteWriter& w2, const FeadMpk& y) { write(w2, y); });
  });
}

FeqMpk read_feq_mpk(ByteReader& r) {
  FeqMpk v;
  v.params = read_feq_params(r);
  v.family = std::make_shared<garble::LinearFamily>(v.params.ell, v.params.degree, v.params.s_count, v.params.k);
  v.inst = read_list<OneMpk>(r, [](ByteReader& rr) { return read_variant<OneMpk>(rr, read_fe1_mpk, read_fead_mpk); });
  if (v.inst.size() != v.params.n_instances) throw DecodeError("feq public key must hold N instances");
  return v;
}

void write(ByteWriter& w, const FeqMsk& v) {
  write_list(w, v.inst, [](ByteWriter& ww, const OneMsk& x) {
    write_variant(ww, x, [](ByteWriter& w2, const Fe1Msk& y) { write(w2, y); },
                  [](ByteWriter& w2, const FeadMsk& y) { write(w2, y); });
  });
}

FeqMsk read_feq_msk(ByteReader& r) {
  return {read_list<OneMsk>(r, [](ByteReader& rr) { return read_variant<OneMsk>(rr, read_fe1_msk, read_fead_msk); })};
}

void write(ByteWriter& w, const FeqSk& v) {
  w.u32(v.k);
  w.indices(v.gamma);
  w.indices(v.delta);
  write_list(w, v.inst, [](ByteWriter& ww, const OneSk& x) {
    write_variant(ww, x, [](ByteWriter& w2, const Fe1Sk& y) { write(w2, y); },
                  [](ByteWriter& w2, const FeadSk& y) { write(w2, y); });
  });
}

FeqSk read_feq_sk(ByteReader& r) {
  FeqSk v;
  v.k = r.u32();
  if (!field::supported_degree(v.k)) throw DecodeError("unsupported field degree");
  v.gamma = r.indices();
  v.delta = r.indices();
  v.inst = read_list<OneSk>(r, [](ByteReader& rr) { return read_variant<OneSk>(rr, read_fe1_sk, read_fead_sk); });
  if (v.inst.size() != v.gamma.size()) throw DecodeError("feq key must hold one instance key per Γ entry");
  return v;
}

void write(ByteWriter& w, const FeqCiphertext& v) {
  write_list(w, v.inst, [](ByteWriter& ww, const OneCiphertext& x) {
    write_variant(ww, x, [](ByteWriter& w2, const Fe1Ciphertext& y) { write(w2, y); },
                  [](ByteWriter& w2, const FeadCiphertext& y) { write(w2, y); });
  });
}

FeqCiphertext read_feq_ciphertext(ByteReader& r) {
  return {read_list<OneCiphertext>(
      r, [](ByteReader& rr) { return read_variant<OneCiphertext>(rr, read_fe1_ciphertext, read_fead_ciphertext); })};
}

void write(ByteWriter& w, const FeqVk& v) {
  write_list(w, v.inst, [](ByteWriter& ww, const OneVk& x) {
    write_variant(ww, x, [](ByteWriter& w2, const Fe1Vk& y) { write(w2, y); },
                  [](ByteWriter& w2, const FeadVk& y) { write(w2, y); });
  });
}

FeqVk read_feq_vk(ByteReader& r) {
  return {read_list<OneVk>(r, [](ByteReader& rr) { return read_variant<OneVk>(rr, read_fe1_vk, read_fead_vk); })};
}

void write(ByteWriter& w, const FeqCert& v) {
  write_list(w, v.inst, [](ByteWriter& ww, const OneCert& x) {
    write_variant(ww, x, [](ByteWriter& w2, const Fe1Cert& y) { write(w2, y); },
                  [](ByteWriter& w2, const FeadCert& y) { write(w2, y); });
  });
}

FeqCert read_feq_cert(ByteReader& r) {
  return {
      read_list<OneCert>(r, [](ByteReader& rr) { return read_variant<OneCert>(rr, read_fe1_cert, read_fead_cert); })};
}

FeqParams read_feq_params_text(std::istream& in) {
  FeqParams p;
  std::map<std::string, std::size_t*> fields{{"q", &p.q},   {"lambda", &p.lambda}, {"D", &p.degree},
                                             {"ell", &p.ell}, {"t", &p.t},         {"N", &p.n_instances},
                                             {"v", &p.v},   {"S", &p.s_count}};
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos) throw base::ParameterError("expected key=value, got: " + line);
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    auto trim = [](std::string& s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
    };
    trim(key);
    trim(val);
    std::size_t x = 0;
    try {
      x = std::stoull(val);
    } catch (const std::exception&) {
      throw base::ParameterError("bad value for " + key + ": " + val);
    }
    if (key == "k")
      p.k = static_cast<unsigned>(x);
    else if (key == "adaptive")
      p.adaptive = x != 0;
    else if (auto it = fields.find(key); it != fields.end())
      *it->second = x;
    else
      throw base::ParameterError("unknown parameter: " + key);
  }
  return p;
}

std::string write_feq_params_text(const FeqParams& p) {
  std::ostringstream out;
  out << "q=" << p.q << "\nlambda=" << p.lambda << "\nD=" << p.degree << "\nell=" << p.ell << "\nt=" << p.t
      << "\nN=" << p.n_instances << "\nv=" << p.v << "\nS=" << p.s_count << "\nk=" << p.k
      << "\nadaptive=" << (p.adaptive ? 1 : 0) << "\n";
  return out.str();
}

}  // namespace cefe::fe
