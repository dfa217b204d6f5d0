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

#include "cefe/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iterator>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "cefe/acceptance.hpp"
#include "cefe/circuit.hpp"
#include "cefe/envelope.hpp"
#include "cefe/fe.hpp"
#include "cefe/garble.hpp"
#include "cefe/gf2.hpp"
#include "cefe/harness.hpp"
#include "cefe/rnce.hpp"

namespace cefe::cli {

namespace {

using field::FieldElem;

constexpr const char* kSimulationNote =
    "SIMULATION: quantum registers are classically simulated stabilizer states; file transport is a modeling "
    "convenience.";

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  CLI::Option* seed_opt = nullptr;
  std::uint64_t seed = 0;
  std::uint64_t oracle_seed = kDefaultOracleSeed;
  std::function<int()> action;

  Rng rng() const {
    if (seed_opt && seed_opt->count() > 0) return Rng(seed);
    std::random_device rd;
    return Rng((std::uint64_t{rd()} << 32) ^ rd());
  }
  base::Qrom oracle() const { return base::Qrom(oracle_seed); }
};

// ---------------------------------------------------------------------------
// Files and envelopes.

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw UsageError("cannot write " + path);
}

template <typename T>
void save(Ctx& ctx, const std::string& path, const std::string& tag, const T& v) {
  const auto bytes = seal_object(tag, v);
  write_file(path, bytes);
  ctx.out << "wrote " << path << " (" << tag << ", " << bytes.size() << " bytes)\n";
}

template <typename F>
auto load(const std::string& path, const std::string& tag, F read) {
  return open_object(read_file(path), tag, read);
}

// Serializes through an envelope and parses it back, as a file round trip would.
template <typename T, typename F>
T through(const std::string& tag, const T& v, F read, std::size_t* size = nullptr) {
  const auto bytes = seal_object(tag, v);
  if (size) *size = bytes.size();
  return open_object(bytes, tag, read);
}

// ---------------------------------------------------------------------------
// Messages.

struct MsgOpts {
  std::string in;
  std::string bits;
};

void add_message_options(CLI::App* sub, MsgOpts& m) {
  auto* in = sub->add_option("--in", m.in, "plaintext file (bytes, LSB-first bits)");
  auto* bits = sub->add_option("--bits", m.bits, "plaintext as a 0/1 string");
  in->excludes(bits);
}

Bits read_message(const MsgOpts& m) {
  if (!m.bits.empty()) return from_string(m.bits);
  if (m.in.empty()) throw UsageError("a plaintext is required (--in or --bits)");
  const auto bytes = read_file(m.in);
  return unpack_bits(bytes, bytes.size() * 8);
}

void emit_plaintext(Ctx& ctx, const Bits& m, const std::string& path, const char* label) {
  if (path.empty()) {
    ctx.out << label << " = " << to_string(m) << "\n";
    return;
  }
  if (m.size() % 8 != 0) throw UsageError(std::to_string(m.size()) + "-bit plaintext cannot be written as bytes");
  write_file(path, pack_bits(m));
  ctx.out << label << ": " << m.size() << " bits written to " << path << "\n";
}

int report_bottom(Ctx& ctx, const char* what) {
  ctx.out << what << " = ⊥\n";
  return kExitBottom;
}

int report_vrfy(Ctx& ctx, bool ok) {
  ctx.out << (ok ? "accept" : "reject") << "\n";
  return ok ? kExitOk : kExitBottom;
}

std::vector<std::uint32_t> parse_u32_list(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoul(item, &used, 0);
      if (used != item.size() || v > 0xffffffffUL) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw UsageError("bad number '" + item + "' in list '" + s + "'");
    }
  }
  return out;
}

std::vector<FieldElem> parse_elems(unsigned k, const std::string& s, std::size_t want, const char* what) {
  std::vector<FieldElem> out;
  for (auto v : parse_u32_list(s)) out.emplace_back(k, v);
  if (out.size() != want) {
    throw UsageError(std::string(what) + " needs " + std::to_string(want) + " elements, got " +
                     std::to_string(out.size()));
  }
  return out;
}

std::string format_elems(const std::vector<FieldElem>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i].value());
  return s;
}

// ---------------------------------------------------------------------------
// Parameters.

gf2::CssPair named_pair(const std::string& name) {
  if (name == "steane") return gf2::CssPair::steane();
  if (name == "golay23") return gf2::CssPair::golay23();
  if (name == "qr47") return gf2::CssPair::qr47();
  throw UsageError("unknown CSS pair '" + name + "' (steane, golay23, qr47)");
}

struct CeOpts {
  std::string variant = "qrom";
  std::size_t lambda = base::kDefaultLambda;
  std::size_t w = base::kDefaultLambda;
  std::string pair = "steane";
  std::size_t p = 7;
  bool force = false;
};

void add_ce_options(CLI::App* sub, CeOpts& o) {
  sub->add_option("--variant", o.variant, "qrom or css")->check(CLI::IsMember({"qrom", "css"}));
  sub->add_option("--lambda", o.lambda, "QROM preimage length");
  sub->add_option("--w", o.w, "QROM Hadamard positions");
  sub->add_option("--pair", o.pair, "CSS pair: steane, golay23, qr47");
  sub->add_option("--p", o.p, "CSS check positions");
  sub->add_flag("--force", o.force, "accept a non-positive CSS security margin");
}

cd::CeConfig make_ce_config(Ctx& ctx, const CeOpts& o) {
  if (o.variant == "qrom") return cd::CeConfig::qrom(o.lambda, o.w);
  auto pair = named_pair(o.pair);
  const double margin = gf2::security_margin(o.p, pair.length(), pair.t(), pair.k1(), pair.k2());
  if (margin <= 0) {
    std::ostringstream msg;
    msg << "CSS margin " << std::fixed << std::setprecision(12) << margin << " is not positive for " << o.pair
        << " with p = " << o.p;
    if (!o.force) throw base::ParameterError(msg.str() + " (use --force to proceed)");
    ctx.err << "warning: " << msg.str() << "\n";
  }
  return cd::CeConfig::css(std::move(pair), o.p);
}

std::shared_ptr<const garble::FunctionFamily> parse_family(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const auto args = colon == std::string::npos ? std::vector<std::uint32_t>{} : parse_u32_list(text.substr(colon + 1));
  if (kind == "mux" && args.size() == 1) return std::make_shared<garble::MuxFamily>(args[0]);
  if (kind == "linear" && args.size() == 4) {
    return std::make_shared<garble::LinearFamily>(args[0], args[1], args[2], args[3]);
  }
  throw UsageError("family must be mux:K or linear:ELL,D,S,K, got '" + text + "'");
}

// ---------------------------------------------------------------------------
// params check

struct ParamsOpts {
  std::string pair;
  std::size_t p = 0, q = 0, t = 0, k1 = 0, k2 = 0;
  bool force = false;
  std::string feq_file;
  bool feq_desk = false;
  std::size_t feq_q = 0, feq_lambda = 2, feq_degree = 2, feq_ell = 2;
};

int params_check(Ctx& ctx, const ParamsOpts& o) {
  const bool css_explicit = o.q || o.t || o.k1 || o.k2;
  const bool css = !o.pair.empty() || css_explicit;
  const bool feq = !o.feq_file.empty() || o.feq_desk || o.feq_q;
  int rc = kExitOk;

  auto check_css = [&](const std::string& name, std::size_t p, std::size_t q, std::size_t t, std::size_t k1,
                       std::size_t k2) {
    if (p == 0) throw UsageError("--p is required");
    if (k1 <= k2) throw base::ParameterError("k1 must exceed k2");
    const double margin = gf2::security_margin(p, q, t, k1, k2);
    ctx.out << "css " << name << ": p=" << p << " q=" << q << " t=" << t << " k1=" << k1 << " k2=" << k2
            << " margin = " << std::fixed << std::setprecision(12) << margin << std::defaultfloat;
    if (margin > 0) {
      ctx.out << ": OK\n";
    } else if (o.force) {
      ctx.out << ": non-positive, forced\n";
    } else {
      ctx.out << ": REJECTED (non-positive margin)\n";
      rc = kExitParameter;
    }
  };

  auto check_feq = [&](const std::string& name, const std::function<fe::FeqParams()>& make) {
    try {
      const auto p = make();
      p.validate();
      ctx.out << "feq " << name << ": q=" << p.q << " lambda=" << p.lambda << " D=" << p.degree << " ell=" << p.ell
              << " t=" << p.t << " N=" << p.n_instances << " v=" << p.v << " S=" << p.s_count << " k=" << p.k
              << ": OK\n";
    } catch (const base::ParameterError& e) {
      ctx.out << "feq " << name << ": REJECTED (" << e.what() << ")\n";
      rc = kExitParameter;
    }
  };

  if (css) {
    if (!o.pair.empty()) {
      if (css_explicit) throw UsageError("--pair excludes --q/--t/--k1/--k2");
      const auto pair = named_pair(o.pair);
      check_css(o.pair, o.p, pair.length(), pair.t(), pair.k1(), pair.k2());
    } else {
      check_css("explicit", o.p, o.q, o.t, o.k1, o.k2);
    }
  }
  if (!o.feq_file.empty()) {
    check_feq(o.feq_file, [&] {
      std::ifstream in(o.feq_file);
      if (!in) throw UsageError("cannot read " + o.feq_file);
      return fe::read_feq_params_text(in);
    });
  }
  if (o.feq_desk) check_feq("desk", [] { return fe::FeqParams::desk(); });
  if (o.feq_q) {
    check_feq("from-queries", [&] { return fe::FeqParams::from_queries(o.feq_q, o.feq_lambda, o.feq_degree, o.feq_ell); });
  }
  if (!css && !feq) {
    const auto pair = gf2::CssPair::qr47();
    check_css("qr47", o.p ? o.p : 128, pair.length(), pair.t(), pair.k1(), pair.k2());
    check_feq("desk", [] { return fe::FeqParams::desk(); });
  }
  return rc;
}

void add_params(CLI::App& app, Ctx& ctx) {
  auto* params = app.add_subcommand("params", "parameter checks");
  params->require_subcommand(1);
  auto o = std::make_shared<ParamsOpts>();
  auto* check = params->add_subcommand("check", "CSS security margin and feq parameter validation");
  check->add_option("--pair", o->pair, "named CSS pair: steane, golay23, qr47");
  check->add_option("--p", o->p, "check positions p");
  check->add_option("--q", o->q, "code length q");
  check->add_option("--t", o->t, "correctable errors t");
  check->add_option("--k1", o->k1, "dimension of C1");
  check->add_option("--k2", o->k2, "dimension of C2");
  check->add_flag("--force", o->force, "report a non-positive margin without rejecting");
  check->add_option("--feq", o->feq_file, "feq parameter file (key=value lines)");
  check->add_flag("--feq-desk", o->feq_desk, "validate the desk feq profile");
  check->add_option("--feq-queries", o->feq_q, "derive an feq profile for q queries");
  check->add_option("--feq-lambda", o->feq_lambda, "lambda for --feq-queries");
  check->add_option("--feq-degree", o->feq_degree, "degree D for --feq-queries");
  check->add_option("--feq-ell", o->feq_ell, "variables for --feq-queries");
  check->callback([&ctx, o] { ctx.action = [&ctx, o] { return params_check(ctx, *o); }; });
}

// ---------------------------------------------------------------------------
// Certified everlasting SKE and PKE.

struct CeFiles {
  std::string key, pk, sk, ct, vk, cert, out;
  MsgOpts msg;
  CeOpts ce;
};

void add_ce(CLI::App& app, Ctx& ctx, bool pke) {
  const char* name = pke ? "pke" : "ske";
  auto* top = app.add_subcommand(name, pke ? "certified everlasting PKE" : "certified everlasting SKE");
  top->require_subcommand(1);
  auto o = std::make_shared<CeFiles>();

  auto* keygen = top->add_subcommand("keygen", "generate keys");
  add_ce_options(keygen, o->ce);
  if (pke) {
    keygen->add_option("--pk", o->pk, "public key output")->required();
    keygen->add_option("--sk", o->sk, "secret key output")->required();
  } else {
    keygen->add_option("--out", o->key, "key output")->required();
  }
  keygen->callback([&ctx, o, pke] {
    ctx.action = [&ctx, o, pke] {
      const auto cfg = make_ce_config(ctx, o->ce);
      auto rng = ctx.rng();
      if (pke) {
        auto kp = base::lwe_keygen(base::lwe_desk_params(), rng);
        save(ctx, o->pk, "CEPK", CePkeKeyFile{cfg, kp.pk});
        save(ctx, o->sk, "CEDK", CeDecKeyFile{cfg, kp.sk});
      } else {
        save(ctx, o->key, "CESK", CeSkeKeyFile{cfg, base::ske_keygen(rng)});
      }
      return kExitOk;
    };
  });

  auto* enc = top->add_subcommand("enc", "encrypt");
  enc->add_option(pke ? "--pk" : "--key", pke ? o->pk : o->key, "encryption key")->required();
  add_message_options(enc, o->msg);
  enc->add_option("--ct", o->ct, "ciphertext output")->required();
  enc->add_option("--vk", o->vk, "verification key output")->required();
  enc->callback([&ctx, o, pke] {
    ctx.action = [&ctx, o, pke] {
      cd::CeConfig cfg;
      cd::EncKey key;
      if (pke) {
        auto f = load(o->pk, "CEPK", read_ce_pke_key_file);
        cfg = f.cfg;
        key = f.key;
      } else {
        auto f = load(o->key, "CESK", read_ce_ske_key_file);
        cfg = f.cfg;
        key = f.key;
      }
      const auto m = read_message(o->msg);
      auto rng = ctx.rng();
      auto oracle = ctx.oracle();
      auto b = cd::ce_enc(cfg, key, m, oracle, rng);
      save(ctx, o->ct, "CECT", CeCiphertextFile{cfg, std::move(b.ct)});
      save(ctx, o->vk, "CEVK", b.vk);
      return kExitOk;
    };
  });

  auto* dec = top->add_subcommand("dec", "decrypt");
  dec->add_option(pke ? "--sk" : "--key", pke ? o->sk : o->key, "decryption key")->required();
  dec->add_option("--ct", o->ct, "ciphertext")->required();
  dec->add_option("--out", o->out, "plaintext output file (bits are printed otherwise)");
  dec->callback([&ctx, o, pke] {
    ctx.action = [&ctx, o, pke] {
      cd::CeConfig cfg;
      cd::DecKey key;
      if (pke) {
        auto f = load(o->sk, "CEDK", read_ce_dec_key_file);
        cfg = f.cfg;
        key = f.key;
      } else {
        auto f = load(o->key, "CESK", read_ce_ske_key_file);
        cfg = f.cfg;
        key = f.key;
      }
      auto ct = load(o->ct, "CECT", read_ce_ciphertext_file);
      auto rng = ctx.rng();
      auto oracle = ctx.oracle();
      const auto m = cd::ce_dec(cfg, key, ct.ct, oracle, rng);
      if (!m) return report_bottom(ctx, "m");
      emit_plaintext(ctx, *m, o->out, "m");
      return kExitOk;
    };
  });

  auto* del = top->add_subcommand("del", "delete a ciphertext and emit a certificate");
  del->add_option("--ct", o->ct, "ciphertext")->required();
  del->add_option("--cert", o->cert, "certificate output")->required();
  del->callback([&ctx, o] {
    ctx.action = [&ctx, o] {
      auto ct = load(o->ct, "CECT", read_ce_ciphertext_file);
      auto rng = ctx.rng();
      save(ctx, o->cert, "CECR", cd::ce_del(ct.ct, rng));
      return kExitOk;
    };
  });

  auto* vrfy = top->add_subcommand("vrfy", "verify a deletion certificate");
  vrfy->add_option("--vk", o->vk, "verification key")->required();
  vrfy->add_option("--cert", o->cert, "certificate")->required();
  vrfy->callback([&ctx, o] {
    ctx.action = [&ctx, o] {
      const auto vk = load(o->vk, "CEVK", cd::read_ce_vk);
      auto cert = load(o->cert, "CECR", cd::read_ce_cert);
      auto rng = ctx.rng();
      return report_vrfy(ctx, cd::ce_vrfy(vk, cert, rng));
    };
  });
}

// ---------------------------------------------------------------------------
// RNCE

struct RnceFiles {
  std::size_t n = 8;
  std::string pk, msk, sk, ct, vk, cert, out;
  MsgOpts msg;
};

cd::CeConfig rnce_component_config() { return fe::FeadParams{}.nce; }
base::LweParams rnce_component_lwe() { return fe::FeadParams{}.nce_lwe; }

void add_rnce(CLI::App& app, Ctx& ctx) {
  auto* top = app.add_subcommand("rnce", "receiver non-committing encryption with certified deletion");
  top->require_subcommand(1);
  auto o = std::make_shared<RnceFiles>();

  auto* setup = top->add_subcommand("setup", "generate the public and master secret keys");
  setup->add_option("--n", o->n, "plaintext bits");
  setup->add_option("--pk", o->pk, "public key output")->required();
  setup->add_option("--msk", o->msk, "master secret key output")->required();
  setup->callback([&ctx, o] {
    ctx.action = [&ctx, o] {
      auto rng = ctx.rng();
      auto keys = rnce::rnce_setup(o->n, rnce_component_config(), rnce_component_lwe(), rng);
      save(ctx, o->pk, "RNPK", keys.pk);
      save(ctx, o->msk, "RNMK", keys.msk);
      return kExitOk;
    };
  });

  auto* keygen = top->add_subcommand("keygen", "derive a secret key");
  keygen->add_option("--msk", o->msk, "master secret key")->required();
  keygen->add_option("--sk", o->sk, "secret key output")->required();
  keygen->callback([&ctx, o] {
    ctx.action = [&ctx, o] {
      const auto msk = load(o->msk, "RNMK", rnce::read_rnce_msk);
      auto rng = ctx.rng();
      save(ctx, o->sk, "RNSK", rnce::rnce_keygen(msk, rng));
      return kExitOk;
    };
  });

  auto* enc = top->add_subcommand("enc", "encrypt");
  enc->add_option("--pk", o->pk, "public key")->required();
  add_message_options(enc, o->msg);
  enc->add_option("--ct", o->ct, "ciphertext output")->required();
  enc->add_option("--vk", o->vk, "verification key output")->required();
  enc->callback([&ctx, o] {
    ctx.action = [&ctx, o] {
      const auto pk = load(o->pk, "RNPK", rnce::read_rnce_pk);
      const auto m = read_message(o->msg);
      auto rng = ctx.rng();
      auto oracle = ctx.oracle();
      auto b = rnce::rnce_enc(pk, m, oracle, rng);
      save(ctx, o->ct, "RNCE", b.ct);
      save(ctx, o->vk, "RNVK", b.vk);
      return kExitOk;
    };
  });

  auto* dec = top->add_subcommand("dec", "decrypt");
  dec->add_option("--pk", o->pk, "public key")->required();
  dec->add_option("--sk", o->sk, "secret key")->required();
  dec->add_option("--ct", o->ct, "ciphertext")->required();
  dec->add_option("--out", o->out, "plaintext output file (bits are printed otherwise)");
  dec->callback([&ctx, o] {
    ctx.action = [&ctx, o] {
      const auto pk = load(o->pk, "RNPK", rnce::read_rnce_pk);
      const auto sk = load(o->sk, "RNSK", rnce::read_rnce_sk);
      auto ct = load(o->ct, "RNCE", rnce::read_rnce_ciphertext);
      auto rng = ctx.rng();
      auto oracle = ctx.oracle();
      const auto m = rnce::rnce_dec(pk, sk, ct, oracle, rng);
      if (!m) return report_bottom(ctx, "m");
      emit_plaintext(ctx, *m, o->out, "m");
      return kExitOk;
    };
  });

  auto* del = top->add_subcommand("del", "delete a ciphertext and emit a certificate");
  del->add_option("--ct", o->ct, "ciphertext")->required();
  del->add_option("--cert", o->cert, "certificate output")->required();
  del->callback([&ctx, o] {
    ctx.action = [&ctx, o] {
      auto ct = load(o->ct, "RNCE", rnce::read_rnce_ciphertext);
      auto rng = ctx.rng();
      save(ctx, o->cert, "RNCR", rnce::rnce_del(ct, rng));
      return kExitOk;
    };
  });

  auto* vrfy = top->add_subcommand("vrfy", "verify a deletion certificate");
  vrfy->add_option("--vk", o->vk, "verification key")->required();
  vrfy->add_option("--cert", o->cert, "certificate")->required();
  vrfy->callback([&ctx, o] {
    ctx.action = [&ctx, o] {
      const auto vk = load(o->vk, "RNVK", rnce::read_rnce_vk);
      auto cert = load(o->cert, "RNCR", rnce::read_rnce_cert);
      auto rng = ctx.rng();
      return report_vrfy(ctx, rnce::rnce_vrfy(vk, cert, rng));
    };
  });
}

// ---------------------------------------------------------------------------
// Garbling

struct GarbleFiles {
  std::size_t n = 0;
  std::string labels, circuit, gc, vk, cert, x;
};

garble::LeveledCircuit load_circuit(const std::string& path) {
  const auto bytes = read_file(path);
  if (bytes.size() >= 4 && std::equal(bytes.begin(), bytes.begin() + 4, "CEFE")) {
    return open_object(bytes, "GCIR", garble::read_circuit);
  }
  return garble::parse_circuit(std::string(bytes.begin(), bytes.end()));
}

void add_garble(CLI::App& app, Ctx& ctx) {
  auto* top = app.add_subcommand("garble", "garbling with certified deletion");
  top->require_subcommand(1);
  auto o = std::make_shared<GarbleFiles>();

  auto* keygen = top->add_subcommand("keygen", "sample input wire labels");
  keygen->add_option("--n", o->n, "input wires")->required();
  keygen->add_option("--labels", o->labels, "label output")->required();
  keygen->callback([&ctx, o] {
    ctx.action = [&ctx, o] {
      auto rng = ctx.rng();
      save(ctx, o->labels, "GCLB", garble::gc_samp(o->n, garble::GcParams::desk(), rng));
      return kExitOk;
    };
  });

  auto* enc = top->add_subcommand("enc", "garble a leveled circuit");
  enc->add_option("--labels", o->labels, "input labels")->required();
  enc->add_option("--circuit", o->circuit, "circuit (text or GCIR envelope)")->required();
  enc->add_option("--gc", o->gc, "garbled circuit output")->required();
  enc->add_option("--vk", o->vk, "verification key output")->required();
  enc->callback([&ctx, o] {
    ctx.action = [&ctx, o] {
      const auto labels = load(o->labels, "GCLB", garble::read_label_set);
      const auto circuit = load_circuit(o->circuit);
      if (circuit.n != labels.size()) {
        throw UsageError("circuit has " + std::to_string(circuit.n) + " inputs but " +
                         std::to_string(labels.size()) + " label pairs were given");
      }
      auto rng = ctx.rng();
      auto oracle = ctx.oracle();
      auto g = garble::gc_grbl(circuit, labels, garble::GcParams::desk(), oracle, rng);
      save(ctx, o->gc, "GCGC", g.gc);
      save(ctx, o->vk, "GCVK", g.vk);
      return kExitOk;
    };
  });

  auto* dec = top->add_subcommand("dec", "evaluate on the labels of input x");
  dec->add_option("--gc", o->gc, "garbled circuit")->required();
  dec->add_option("--labels", o->labels, "input labels")->required();
  dec->add_option("--x", o->x, "input as a 0/1 string")->required();
  dec->callback([&ctx, o] {
    ctx.action = [&ctx, o] {
      auto gc = load(o->gc, "GCGC", garble::read_garbled_circuit);
      const auto labels = load(o->labels, "GCLB", garble::read_label_set);
      const auto x = from_string(o->x);
      if (x.size() != labels.size()) throw UsageError("x must have " + std::to_string(labels.size()) + " bits");
      auto rng = ctx.rng();
      auto oracle = ctx.oracle();
      const auto y = garble::gc_eval(gc, garble::select_labels(labels, x), oracle, rng);
      if (!y) return report_bottom(ctx, "y");
      ctx.out << "y = " << to_string(*y) << "\n";
      return kExitOk;
    };
  });

  auto* del = top->add_subcommand("del", "delete a garbled circuit and emit a certificate");
  del->add_option("--gc", o->gc, "garbled circuit")->required();
  del->add_option("--cert", o->cert, "certificate output")->required();
  del->callback([&ctx, o] {
    ctx.action = [&ctx, o] {
      auto gc = load(o->gc, "GCGC", garble::read_garbled_circuit);
      auto rng = ctx.rng();
      save(ctx, o->cert, "GCCR", garble::gc_del(gc, rng));
      return kExitOk;
    };
  });

  auto* vrfy = top->add_subcommand("vrfy", "verify a deletion certificate");
  vrfy->add_option("--vk", o->vk, "verification key")->required();
  vrfy->add_option("--cert", o->cert, "certificate")->required();
  vrfy->callback([&ctx, o] {
    ctx.action = [&ctx, o] {
      const auto vk = load(o->vk, "GCVK", garble::read_gc_vk);
      auto cert = load(o->cert, "GCCR", garble::read_gc_cert);
      auto rng = ctx.rng();
      return report_vrfy(ctx, garble::gc_vrfy(vk, cert, rng));
    };
  });
}

// ---------------------------------------------------------------------------
// 1-bounded FE (fe1 and fead share the command layout).

struct OneFiles {
  std::string family = "mux:2";
  std::string mpk, msk, sk, ct, vk, cert, f;
  MsgOpts msg;
};

template <bool Adaptive>
void add_one_bounded(CLI::App& app, Ctx& ctx) {
  const std::string name = Adaptive ? "fead" : "fe1";
  const std::string p = Adaptive ? "FA" : "F1";
  const std::string ct_tag = Adaptive ? "FEAD" : "FE1C";
  auto* top = app.add_subcommand(name, Adaptive ? "1-bounded FE, adaptive" : "1-bounded FE, non-adaptive");
  top->require_subcommand(1);
  auto o = std::make_shared<OneFiles>();

  auto* setup = top->add_subcommand("setup", "generate master keys");
  setup->add_option("--family", o->family, "mux:K or linear:ELL,D,S,K");
  setup->add_option("--mpk", o->mpk, "master public key output")->required();
  setup->add_option("--msk", o->msk, "master secret key output")->required();
  setup->callback([&ctx, o, p] {
    ctx.action = [&ctx, o, p] {
      auto family = parse_family(o->family);
      auto rng = ctx.rng();
      if constexpr (Adaptive) {
        auto keys = fe::fead_setup(family, fe::FeadParams{}, rng);
        save(ctx, o->mpk, p + "PK", keys.mpk);
        save(ctx, o->msk, p + "MK", keys.msk);
      } else {
        auto keys = fe::fe1_setup(family, fe::Fe1Params{}, rng);
        save(ctx, o->mpk, p + "PK", keys.mpk);
        save(ctx, o->msk, p + "MK", keys.msk);
      }
      return kExitOk;
    };
  });

  auto* keygen = top->add_subcommand("keygen", "derive a functional key for f");
  keygen->add_option("--msk", o->msk, "master secret key")->required();
  keygen->add_option("--f", o->f, "function key encoding as a 0/1 string")->required();
  keygen->add_option("--sk", o->sk, "functional key output")->required();
  keygen->callback([&ctx, o, p] {
    ctx.action = [&ctx, o, p] {
      const auto f = from_string(o->f);
      if constexpr (Adaptive) {
        const auto msk = load(o->msk, p + "MK", fe::read_fead_msk);
        auto rng = ctx.rng();
        save(ctx, o->sk, p + "SK", fe::fead_keygen(msk, f, rng));
      } else {
        const auto msk = load(o->msk, p + "MK", fe::read_fe1_msk);
        save(ctx, o->sk, p + "SK", fe::fe1_keygen(msk, f));
      }
      return kExitOk;
    };
  });

  auto* enc = top->add_subcommand("enc", "encrypt a message");
  enc->add_option("--mpk", o->mpk, "master public key")->required();
  add_message_options(enc, o->msg);
  enc->add_option("--ct", o->ct, "ciphertext output")->required();
  enc->add_option("--vk", o->vk, "verification key output")->required();
  enc->callback([&ctx, o, p, ct_tag] {
    ctx.action = [&ctx, o, p, ct_tag] {
      const auto m = read_message(o->msg);
      auto rng = ctx.rng();
      auto oracle = ctx.oracle();
      if constexpr (Adaptive) {
        const auto mpk = load(o->mpk, p + "PK", fe::read_fead_mpk);
        auto b = fe::fead_enc(mpk, m, oracle, rng);
        save(ctx, o->ct, ct_tag, b.ct);
        save(ctx, o->vk, p + "VK", b.vk);
      } else {
        const auto mpk = load(o->mpk, p + "PK", fe::read_fe1_mpk);
        auto b = fe::fe1_enc(mpk, m, oracle, rng);
        save(ctx, o->ct, ct_tag, b.ct);
        save(ctx, o->vk, p + "VK", b.vk);
      }
      return kExitOk;
    };
  });

  auto* dec = top->add_subcommand("dec", "compute f(m)");
  dec->add_option("--sk", o->sk, "functional key")->required();
  dec->add_option("--ct", o->ct, "ciphertext")->required();
  dec->callback([&ctx, o, p, ct_tag] {
    ctx.action = [&ctx, o, p, ct_tag] {
      auto rng = ctx.rng();
      auto oracle = ctx.oracle();
      std::optional<Bits> y;
      if constexpr (Adaptive) {
        const auto sk = load(o->sk, p + "SK", fe::read_fead_sk);
        auto ct = load(o->ct, ct_tag, fe::read_fead_ciphertext);
        y = fe::fead_dec(sk, ct, oracle, rng);
      } else {
        const auto sk = load(o->sk, p + "SK", fe::read_fe1_sk);
        auto ct = load(o->ct, ct_tag, fe::read_fe1_ciphertext);
        y = fe::fe1_dec(sk, ct, oracle, rng);
      }
      if (!y) return report_bottom(ctx, "f(m)");
      ctx.out << "f(m) = " << to_string(*y) << "\n";
      return kExitOk;
    };
  });

  auto* del = top->add_subcommand("del", "delete a ciphertext and emit a certificate");
  del->add_option("--ct", o->ct, "ciphertext")->required();
  del->add_option("--cert", o->cert, "certificate output")->required();
  del->callback([&ctx, o, p, ct_tag] {
    ctx.action = [&ctx, o, p, ct_tag] {
      auto rng = ctx.rng();
      if constexpr (Adaptive) {
        auto ct = load(o->ct, ct_tag, fe::read_fead_ciphertext);
        save(ctx, o->cert, p + "CR", fe::fead_del(ct, rng));
      } else {
        auto ct = load(o->ct, ct_tag, fe::read_fe1_ciphertext);
        save(ctx, o->cert, p + "CR", fe::fe1_del(ct, rng));
      }
      return kExitOk;
    };
  });

  auto* vrfy = top->add_subcommand("vrfy", "verify a deletion certificate");
  vrfy->add_option("--vk", o->vk, "verification key")->required();
  vrfy->add_option("--cert", o->cert, "certificate")->required();
  vrfy->callback([&ctx, o, p] {
    ctx.action = [&ctx, o, p] {
      auto rng = ctx.rng();
      if constexpr (Adaptive) {
        const auto vk = load(o->vk, p + "VK", fe::read_fead_vk);
        auto cert = load(o->cert, p + "CR", fe::read_fead_cert);
        return report_vrfy(ctx, fe::fead_vrfy(vk, cert, rng));
      } else {
        const auto vk = load(o->vk, p + "VK", fe::read_fe1_vk);
        auto cert = load(o->cert, p + "CR", fe::read_fe1_cert);
        return report_vrfy(ctx, fe::fe1_vrfy(vk, cert, rng));
      }
    };
  });
}

// ---------------------------------------------------------------------------
// q-bounded FE

struct FeqFiles {
  std::string params;
  std::string mpk, msk, sk, ct, vk, cert, poly, x;
};

void add_feq(CLI::App& app, Ctx& ctx) {
  auto* top = app.add_subcommand("feq", "q-bounded FE for low-degree polynomials");
  top->require_subcommand(1);
  auto o = std::make_shared<FeqFiles>();

  auto* setup = top->add_subcommand("setup", "generate master keys");
  setup->add_option("--params", o->params, "parameter file (desk profile otherwise)");
  setup->add_option("--mpk", o->mpk, "master public key output")->required();
  setup->add_option("--msk", o->msk, "master secret key output")->required();
  setup->callback([&ctx, o] {
    ctx.action = [&ctx, o] {
      fe::FeqParams params = fe::FeqParams::desk();
      if (!o->params.empty()) {
        std::ifstream in(o->params);
        if (!in) throw UsageError("cannot read " + o->params);
        params = fe::read_feq_params_text(in);
      }
      params.validate();
      auto rng = ctx.rng();
      auto keys = fe::feq_setup(params, rng);
      save(ctx, o->mpk, "FQPK", keys.mpk);
      save(ctx, o->msk, "FQMK", keys.msk);
      return kExitOk;
    };
  });

  auto* keygen = top->add_subcommand("keygen", "derive a key for a polynomial C");
  keygen->add_option("--mpk", o->mpk, "master public key")->required();
  keygen->add_option("--msk", o->msk, "master secret key")->required();
  keygen->add_option("--poly", o->poly, "coefficients in graded-lex order, comma separated (random otherwise)");
  keygen->add_option("--sk", o->sk, "functional key output")->required();
  keygen->callback([&ctx, o] {
    ctx.action = [&ctx, o] {
      const auto mpk = load(o->mpk, "FQPK", fe::read_feq_mpk);
      const auto msk = load(o->msk, "FQMK", fe::read_feq_msk);
      auto rng = ctx.rng();
      fe::Polynomial c;
      if (o->poly.empty()) {
        c = fe::random_polynomial(mpk.params, rng);
      } else {
        c.coeffs = parse_elems(mpk.params.k, o->poly, mpk.family->monomial_count(), "--poly");
      }
      ctx.out << "C = " << format_elems(c.coeffs) << "\n";
      save(ctx, o->sk, "FQSK", fe::feq_keygen(mpk, msk, c, rng));
      return kExitOk;
    };
  });

  auto* enc = top->add_subcommand("enc", "encrypt x");
  enc->add_option("--mpk", o->mpk, "master public key")->required();
  enc->add_option("--x", o->x, "field elements, comma separated")->required();
  enc->add_option("--ct", o->ct, "ciphertext output")->required();
  enc->add_option("--vk", o->vk, "verification key output")->required();
  enc->callback([&ctx, o] {
    ctx.action = [&ctx, o] {
      const auto mpk = load(o->mpk, "FQPK", fe::read_feq_mpk);
      const auto x = parse_elems(mpk.params.k, o->x, mpk.params.ell, "--x");
      auto rng = ctx.rng();
      auto oracle = ctx.oracle();
      auto b = fe::feq_enc(mpk, x, oracle, rng);
      save(ctx, o->ct, "FEQC", b.ct);
      save(ctx, o->vk, "FQVK", b.vk);
      return kExitOk;
    };
  });

  auto* dec = top->add_subcommand("dec", "compute C(x)");
  dec->add_option("--sk", o->sk, "functional key")->required();
  dec->add_option("--ct", o->ct, "ciphertext")->required();
  dec->callback([&ctx, o] {
    ctx.action = [&ctx, o] {
      const auto sk = load(o->sk, "FQSK", fe::read_feq_sk);
      auto ct = load(o->ct, "FEQC", fe::read_feq_ciphertext);
      auto rng = ctx.rng();
      auto oracle = ctx.oracle();
      const auto y = fe::feq_dec(sk, ct, oracle, rng);
      if (!y) return report_bottom(ctx, "C(x)");
      ctx.out << "C(x) = " << y->value() << "\n";
      return kExitOk;
    };
  });

  auto* del = top->add_subcommand("del", "delete a ciphertext and emit a certificate");
  del->add_option("--ct", o->ct, "ciphertext")->required();
  del->add_option("--cert", o->cert, "certificate output")->required();
  del->callback([&ctx, o] {
    ctx.action = [&ctx, o] {
      auto ct = load(o->ct, "FEQC", fe::read_feq_ciphertext);
      auto rng = ctx.rng();
      save(ctx, o->cert, "FQCR", fe::feq_del(ct, rng));
      return kExitOk;
    };
  });

  auto* vrfy = top->add_subcommand("vrfy", "verify a deletion certificate");
  vrfy->add_option("--vk", o->vk, "verification key")->required();
  vrfy->add_option("--cert", o->cert, "certificate")->required();
  vrfy->callback([&ctx, o] {
    ctx.action = [&ctx, o] {
      const auto vk = load(o->vk, "FQVK", fe::read_feq_vk);
      auto cert = load(o->cert, "FQCR", fe::read_feq_cert);
      auto rng = ctx.rng();
      return report_vrfy(ctx, fe::feq_vrfy(vk, cert, rng));
    };
  });
}

// ---------------------------------------------------------------------------
// demo

// Prints "<what>: ... (<tag> envelope, N bytes)" after a round trip through the envelope.
template <typename T, typename F>
T staged(Ctx& ctx, const std::string& line, const std::string& tag, const T& v, F read) {
  std::size_t size = 0;
  T back = through(tag, v, read, &size);
  ctx.out << line << " (" << tag << " envelope, " << size << " bytes)\n";
  return back;
}

int finish_demo(Ctx& ctx, bool vrfy_ok, bool dec_ok, const char* claim) {
  ctx.out << "vrfy(cert) = " << (vrfy_ok ? "accept" : "reject") << "\n";
  ctx.out << claim << ": " << (dec_ok ? "OK" : "FAIL") << "\n";
  return vrfy_ok && dec_ok ? kExitOk : kExitBottom;
}

int demo_cd(Ctx& ctx, Rng& rng) {
  ctx.out << "scheme: one-time SKE with certified deletion, n = 24, w = 8\n";
  const auto key = staged(ctx, "keygen", "CDKY", cd::cd_keygen(24, 8, rng), cd::read_cd_key);
  const auto m = rng.bits(key.message_bits());
  ctx.out << "m = " << to_string(m) << "\n";
  auto ct = staged(ctx, "enc: 24 qubits", "CDCT", cd::cd_enc(key, m), cd::read_register);
  auto other = cd::cd_enc(key, rng.bits(key.message_bits()));
  const auto got = cd::cd_dec(key, ct, rng);
  ctx.out << "dec: " << to_string(got) << "\n";
  const auto cert = cd::cd_del(other, rng);
  ctx.out << "del on a second ciphertext: certificate " << to_string(cert) << "\n";
  return finish_demo(ctx, cd::cd_vrfy(key, cert), got == m, "dec = m");
}

int demo_ce(Ctx& ctx, Rng& rng, base::Qrom& oracle, bool pke) {
  const auto cfg = cd::CeConfig::qrom(16, 8);
  ctx.out << "scheme: certified everlasting " << (pke ? "PKE" : "SKE") << ", QROM variant, lambda = 16, w = 8\n";
  cd::EncKey ek;
  cd::DecKey dk;
  if (pke) {
    auto kp = base::lwe_keygen(base::lwe_desk_params(), rng);
    ek = staged(ctx, "keygen: public key", "CEPK", CePkeKeyFile{cfg, kp.pk}, read_ce_pke_key_file).key;
    dk = staged(ctx, "keygen: secret key", "CEDK", CeDecKeyFile{cfg, kp.sk}, read_ce_dec_key_file).key;
  } else {
    auto key = staged(ctx, "keygen", "CESK", CeSkeKeyFile{cfg, base::ske_keygen(rng)}, read_ce_ske_key_file).key;
    ek = key;
    dk = key;
  }
  const auto m = rng.bits(16);
  ctx.out << "m = " << to_string(m) << "\n";
  auto b = cd::ce_enc(cfg, ek, m, oracle, rng);
  auto ct = staged(ctx, "enc: " + std::to_string(b.ct.quantum_size()) + " qubits", "CECT",
                   CeCiphertextFile{cfg, std::move(b.ct)}, read_ce_ciphertext_file)
                .ct;
  const auto got = cd::ce_dec(cfg, dk, ct, oracle, rng);
  ctx.out << "dec: " << (got ? to_string(*got) : "⊥") << "\n";
  auto second = cd::ce_enc(cfg, ek, rng.bits(16), oracle, rng);
  auto cert = staged(ctx, "del on a second ciphertext", "CECR", cd::ce_del(second.ct, rng), cd::read_ce_cert);
  const auto vk = through("CEVK", second.vk, cd::read_ce_vk);
  const bool ok = cd::ce_vrfy(vk, cert, rng);
  return finish_demo(ctx, ok, got && *got == m, "dec = m");
}

int demo_rnce(Ctx& ctx, Rng& rng, base::Qrom& oracle) {
  ctx.out << "scheme: RNCE with certified deletion, n = 8\n";
  auto keys = rnce::rnce_setup(8, rnce_component_config(), rnce_component_lwe(), rng);
  const auto pk = staged(ctx, "setup: 16 component key pairs", "RNPK", keys.pk, rnce::read_rnce_pk);
  const auto sk = staged(ctx, "keygen", "RNSK", rnce::rnce_keygen(keys.msk, rng), rnce::read_rnce_sk);
  const auto m = rng.bits(8);
  ctx.out << "m = " << to_string(m) << "\n";
  auto ct = staged(ctx, "enc", "RNCE", rnce::rnce_enc(pk, m, oracle, rng).ct, rnce::read_rnce_ciphertext);
  const auto got = rnce::rnce_dec(pk, sk, ct, oracle, rng);
  ctx.out << "dec: " << (got ? to_string(*got) : "⊥") << "\n";
  auto second = rnce::rnce_enc(pk, rng.bits(8), oracle, rng);
  auto cert = staged(ctx, "del on a second ciphertext", "RNCR", rnce::rnce_del(second.ct, rng), rnce::read_rnce_cert);
  const bool ok = rnce::rnce_vrfy(second.vk, cert, rng);
  return finish_demo(ctx, ok, got && *got == m, "dec = m");
}

int demo_garble(Ctx& ctx, Rng& rng, base::Qrom& oracle) {
  const auto circuit = staged(ctx, "circuit: 3 inputs, 8 gates, 2 outputs", "GCIR",
                              garble::random_circuit(3, 8, 2, rng), garble::read_circuit);
  ctx.out << garble::format_circuit(circuit);
  const auto params = garble::GcParams::desk();
  const auto labels = staged(ctx, "keygen: label pairs", "GCLB", garble::gc_samp(3, params, rng),
                             garble::read_label_set);
  auto g = garble::gc_grbl(circuit, labels, params, oracle, rng);
  auto gc = staged(ctx, "enc: " + std::to_string(g.gc.quantum_size()) + " qubits", "GCGC", g.gc,
                   garble::read_garbled_circuit);
  const auto x = rng.bits(3);
  const auto want = circuit.evaluate(x);
  ctx.out << "x = " << to_string(x) << ", C(x) = " << to_string(want) << "\n";
  const auto y = garble::gc_eval(gc, garble::select_labels(labels, x), oracle, rng);
  ctx.out << "dec: " << (y ? to_string(*y) : "⊥") << "\n";
  auto cert = staged(ctx, "del", "GCCR", garble::gc_del(gc, rng), garble::read_gc_cert);
  const auto vk = through("GCVK", g.vk, garble::read_gc_vk);
  const bool ok = garble::gc_vrfy(vk, cert, rng);
  return finish_demo(ctx, ok, y && *y == want, "dec = C(x)");
}

template <bool Adaptive>
int demo_one_bounded(Ctx& ctx, Rng& rng, base::Qrom& oracle) {
  auto family = std::make_shared<garble::MuxFamily>(2);
  ctx.out << "scheme: 1-bounded FE (" << (Adaptive ? "adaptive" : "non-adaptive")
          << "), family mux with k = 2 (f is a 4-entry truth table)\n";
  const auto f = rng.bits(family->key_bits());
  const auto m = rng.bits(family->message_bits());
  const Bits want{f[bits_to_uint(m)]};
  ctx.out << "f = " << to_string(f) << ", m = " << to_string(m) << ", f(m) = " << to_string(want) << "\n";
  std::optional<Bits> y;
  bool ok = false;
  if constexpr (Adaptive) {
    auto keys = fe::fead_setup(family, fe::FeadParams{}, rng);
    const auto mpk = staged(ctx, "setup", "FAPK", keys.mpk, fe::read_fead_mpk);
    const auto sk = staged(ctx, "keygen", "FASK", fe::fead_keygen(keys.msk, f, rng), fe::read_fead_sk);
    auto b = fe::fead_enc(mpk, m, oracle, rng);
    auto ct = staged(ctx, "enc", "FEAD", b.ct, fe::read_fead_ciphertext);
    y = fe::fead_dec(sk, ct, oracle, rng);
    ctx.out << "dec: " << (y ? to_string(*y) : "⊥") << "\n";
    auto cert = staged(ctx, "del", "FACR", fe::fead_del(ct, rng), fe::read_fead_cert);
    ok = fe::fead_vrfy(through("FAVK", b.vk, fe::read_fead_vk), cert, rng);
  } else {
    auto keys = fe::fe1_setup(family, fe::Fe1Params{}, rng);
    const auto mpk = staged(ctx, "setup", "F1PK", keys.mpk, fe::read_fe1_mpk);
    const auto sk = staged(ctx, "keygen", "F1SK", fe::fe1_keygen(keys.msk, f), fe::read_fe1_sk);
    auto b = fe::fe1_enc(mpk, m, oracle, rng);
    auto ct = staged(ctx, "enc: " + std::to_string(b.ct.quantum_size()) + " qubits", "FE1C", b.ct,
                     fe::read_fe1_ciphertext);
    y = fe::fe1_dec(sk, ct, oracle, rng);
    ctx.out << "dec: " << (y ? to_string(*y) : "⊥") << "\n";
    auto cert = staged(ctx, "del", "F1CR", fe::fe1_del(ct, rng), fe::read_fe1_cert);
    ok = fe::fe1_vrfy(through("F1VK", b.vk, fe::read_fe1_vk), cert, rng);
  }
  return finish_demo(ctx, ok, y && *y == want, "dec = f(m)");
}

int demo_feq(Ctx& ctx, Rng& rng, base::Qrom& oracle) {
  const auto params = fe::FeqParams::desk();
  ctx.out << "scheme: q-bounded FE, desk profile (D = 2, ell = 2, t = 2, N = 16, S = 16, GF(64))\n";
  auto keys = fe::feq_setup(params, rng);
  const auto mpk = staged(ctx, "setup", "FQPK", keys.mpk, fe::read_feq_mpk);
  const auto c = fe::random_polynomial(params, rng);
  std::vector<FieldElem> x;
  for (std::size_t i = 0; i < params.ell; ++i) x.push_back(FieldElem::random(params.k, rng));
  const auto want = fe::evaluate(params, c, x);
  ctx.out << "C = " << format_elems(c.coeffs) << ", x = " << format_elems(x) << ", C(x) = " << want.value() << "\n";
  const auto sk = staged(ctx, "keygen", "FQSK", fe::feq_keygen(mpk, keys.msk, c, rng), fe::read_feq_sk);
  auto b = fe::feq_enc(mpk, x, oracle, rng);
  auto ct = staged(ctx, "enc", "FEQC", b.ct, fe::read_feq_ciphertext);
  const auto y = fe::feq_dec(sk, ct, oracle, rng);
  ctx.out << "dec: " << (y ? std::to_string(y->value()) : "⊥") << "\n";
  auto cert = staged(ctx, "del", "FQCR", fe::feq_del(ct, rng), fe::read_feq_cert);
  const bool ok = fe::feq_vrfy(through("FQVK", b.vk, fe::read_feq_vk), cert, rng);
  return finish_demo(ctx, ok, y && *y == want, "dec = C(x)");
}

int demo(Ctx& ctx, const std::string& scheme) {
  auto rng = ctx.rng();
  auto oracle = ctx.oracle();
  ctx.out << kSimulationNote << "\n";
  if (scheme == "cd") return demo_cd(ctx, rng);
  if (scheme == "ske") return demo_ce(ctx, rng, oracle, false);
  if (scheme == "pke") return demo_ce(ctx, rng, oracle, true);
  if (scheme == "rnce") return demo_rnce(ctx, rng, oracle);
  if (scheme == "garble") return demo_garble(ctx, rng, oracle);
  if (scheme == "fe1") return demo_one_bounded<false>(ctx, rng, oracle);
  if (scheme == "fead") return demo_one_bounded<true>(ctx, rng, oracle);
  return demo_feq(ctx, rng, oracle);
}

void add_demo(CLI::App& app, Ctx& ctx) {
  auto scheme = std::make_shared<std::string>();
  auto* sub = app.add_subcommand("demo", "scripted end-to-end run with a transcript");
  sub->add_option("scheme", *scheme, "cd, ske, pke, rnce, garble, fe1, fead, feq")
      ->required()
      ->check(CLI::IsMember({"cd", "ske", "pke", "rnce", "garble", "fe1", "fead", "feq"}));
  sub->callback([&ctx, scheme] { ctx.action = [&ctx, scheme] { return demo(ctx, *scheme); }; });
}

// ---------------------------------------------------------------------------
// attack

struct AttackCli {
  std::string target;
  std::string strategy = "measure-all";
  std::size_t trials = 1000;
  std::size_t w = 8;
  std::string csv;
};

int attack(Ctx& ctx, const AttackCli& a) {
  const auto strategy = harness::parse_strategy(a.strategy);
  if (!strategy) throw UsageError("unknown strategy '" + a.strategy + "' (honest, measure-all)");
  if (a.trials == 0) throw UsageError("--trials must be positive");
  harness::AttackOptions opt;
  opt.trials = a.trials;
  opt.w = a.w;
  opt.seed = ctx.rng().next_u64();
  const auto est = harness::run_attack(a.target, *strategy, opt);
  const auto predicted = harness::predicted_rate(a.target, *strategy, opt);

  auto& out = ctx.out;
  out << kSimulationNote << "\n";
  out << "target     " << a.target << "\n";
  out << "strategy   " << harness::strategy_name(*strategy) << "\n";
  if (a.target == "cd" || a.target.ends_with("-qrom")) out << "w          " << a.w << "\n";
  out << "trials     " << est.trials << "\n";
  out << "passes     " << est.hits << "\n";
  out << std::setprecision(8) << std::fixed;
  out << "rate       " << est.rate << "\n";
  out << "95% CI     [" << est.ci_low << ", " << est.ci_high << "]\n";
  if (predicted) {
    const double sigma = std::sqrt(*predicted * (1 - *predicted) / static_cast<double>(est.trials));
    const double z = sigma > 0 ? (est.rate - *predicted) / sigma : 0.0;
    out << "predicted  " << *predicted << "\n";
    out << "in CI      " << (est.ci_low <= *predicted && *predicted <= est.ci_high ? "yes" : "no") << "\n";
    out << std::setprecision(3) << "z          " << z << "\n";
  } else {
    out << "predicted  n/a\n";
  }
  out << std::defaultfloat;

  if (!a.csv.empty()) {
    std::ofstream csv(a.csv, std::ios::trunc);
    if (!csv) throw UsageError("cannot write " + a.csv);
    csv << "strategy,trials,passes,rate,ci_low,ci_high\n";
    csv << harness::strategy_name(*strategy) << ',' << est.trials << ',' << est.hits << ',' << std::setprecision(10)
        << est.rate << ',' << est.ci_low << ',' << est.ci_high << "\n";
    out << "wrote " << a.csv << "\n";
  }
  return kExitOk;
}

void add_attack(CLI::App& app, Ctx& ctx) {
  auto a = std::make_shared<AttackCli>();
  auto* sub = app.add_subcommand("attack", "estimate Vrfy pass rates of a deletion adversary");
  sub->add_option("target", a->target, "cd, cesk-qrom, cepk-qrom, cesk-css, cepk-css, rnce, fe1, fead")
      ->required()
      ->check(CLI::IsMember(harness::attack_targets()));
  sub->add_option("--strategy", a->strategy, "honest or measure-all");
  sub->add_option("--trials", a->trials, "number of trials");
  sub->add_option("--w", a->w, "Hadamard positions for cd and QROM targets")->check(CLI::Range(1, 64));
  sub->add_option("--csv", a->csv, "CSV report output");
  sub->callback([&ctx, a] { ctx.action = [&ctx, a] { return attack(ctx, *a); }; });
}

// ---------------------------------------------------------------------------
// selftest and inspect

void add_selftest(CLI::App& app, Ctx& ctx) {
  auto scale = std::make_shared<std::size_t>(1);
  auto* sub = app.add_subcommand("selftest", "run the acceptance suite");
  sub->add_option("--scale-down", *scale, "divide every trial count (1 = full suite)")->check(CLI::PositiveNumber);
  sub->callback([&ctx, scale] {
    ctx.action = [&ctx, scale] {
      AcceptanceOptions opt;
      opt.scale_down = *scale;
      if (ctx.seed_opt->count() > 0) opt.seed = ctx.seed;
      const auto results = run_acceptance(opt, ctx.out);
      const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
      ctx.out << (all ? "selftest: all criteria passed" : "selftest: FAILED") << "\n";
      return all ? kExitOk : kExitBottom;
    };
  });
}

void add_inspect(CLI::App& app, Ctx& ctx) {
  auto path = std::make_shared<std::string>();
  auto* sub = app.add_subcommand("inspect", "print an envelope header and check its round trip");
  sub->add_option("file", *path, "envelope file")->required();
  sub->callback([&ctx, path] {
    ctx.action = [&ctx, path] {
      const auto bytes = read_file(*path);
      const auto env = open(bytes);
      const auto* info = find_tag(env.tag);
      ctx.out << "tag        " << env.tag << " (" << info->what << ")\n";
      ctx.out << "version    " << kEnvelopeVersion << "\n";
      ctx.out << "payload    " << env.body.size() + 1 << " bytes\n";
      ctx.out << "flag       " << (env.simulation ? "SIMULATION" : "classical") << "\n";
      const bool same = reencode(env) == env.body;
      ctx.out << "round trip " << (same ? "identical" : "DIFFERS") << "\n";
      return same ? kExitOk : kExitEnvelope;
    };
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Ctx ctx{out, err, nullptr, 0, kDefaultOracleSeed, {}};
  CLI::App app{"cefe: certified everlasting encryption and functional encryption on a simulated quantum substrate",
               "cefe"};
  app.require_subcommand(1);
  app.fallthrough();
  ctx.seed_opt = app.add_option("--seed", ctx.seed, "RNG seed for reproducible runs");
  app.add_option("--oracle-seed", ctx.oracle_seed, "random oracle seed shared by enc and dec");

  add_params(app, ctx);
  add_ce(app, ctx, false);
  add_ce(app, ctx, true);
  add_rnce(app, ctx);
  add_garble(app, ctx);
  add_one_bounded<false>(app, ctx);
  add_one_bounded<true>(app, ctx);
  add_feq(app, ctx);
  add_demo(app, ctx);
  add_attack(app, ctx);
  add_selftest(app, ctx);
  add_inspect(app, ctx);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (!ctx.action) return kExitUsage;

  try {
    return ctx.action();
  } catch (const DecodeError& e) {
    err << "error: bad envelope: " << e.what() << "\n";
    return kExitEnvelope;
  } catch (const garble::CircuitError& e) {
    err << "error: bad circuit: " << e.what() << "\n";
    return kExitEnvelope;
  } catch (const base::ParameterError& e) {
    err << "error: parameters rejected: " << e.what() << "\n";
    return kExitParameter;
  } catch (const gf2::InvalidCode& e) {
    err << "error: parameters rejected: " << e.what() << "\n";
    return kExitParameter;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace cefe::cli
