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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "cefe/cli.hpp"
#include "cefe/envelope.hpp"

using namespace cefe;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cefe_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::vector<std::uint8_t>& bytes) const {
    std::ofstream f(path(name), std::ios::binary);
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  }
  std::vector<std::uint8_t> read(const std::string& name) const {
    std::ifstream f(path(name), std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
  }

  fs::path dir_;
};

std::string last_line(const std::string& s) {
  auto t = s;
  while (!t.empty() && t.back() == '\n') t.pop_back();
  const auto at = t.rfind('\n');
  return at == std::string::npos ? t : t.substr(at + 1);
}

}  // namespace

TEST(cli, usage_errors) {
  EXPECT_EQ(invoke({}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"ske", "enc"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"demo", "nope"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"--help"}).code, cli::kExitOk);
}

TEST(cli, demo_fe1_transcript) {
  const auto r = invoke({"--seed", "7", "demo", "fe1"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(last_line(r.out), "dec = f(m): OK");
  EXPECT_NE(r.out.find("SIMULATION"), std::string::npos);
  // Same seed, same transcript.
  EXPECT_EQ(invoke({"--seed", "7", "demo", "fe1"}).out, r.out);
}

TEST(cli, demo_every_scheme) {
  for (std::string s : {"cd", "ske", "pke", "rnce", "garble", "fead", "feq"}) {
    const auto r = invoke({"--seed", "3", "demo", s});
    EXPECT_EQ(r.code, 0) << s << "\n" << r.out << r.err;
    EXPECT_NE(last_line(r.out).find(": OK"), std::string::npos) << s;
  }
}

TEST(cli, params_check) {
  auto r = invoke({"params", "check", "--pair", "qr47", "--p", "128"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("margin = 0.884554134903"), std::string::npos) << r.out;
  EXPECT_EQ(invoke({"params", "check", "--pair", "steane", "--p", "7"}).code, cli::kExitParameter);
  EXPECT_EQ(invoke({"params", "check", "--pair", "steane", "--p", "7", "--force"}).code, 0);
  EXPECT_EQ(invoke({"params", "check", "--p", "10", "--q", "7", "--t", "1", "--k1", "4", "--k2", "3"}).code,
            cli::kExitParameter);
  EXPECT_EQ(invoke({"params", "check", "--feq-desk"}).code, 0);
  EXPECT_EQ(invoke({"params", "check", "--feq-queries", "4", "--feq-lambda", "4"}).code, cli::kExitParameter);
  EXPECT_EQ(invoke({"params", "check"}).code, 0);
}

TEST_F(CliFiles, params_file) {
  std::ofstream(path("ok.txt")) << "# desk\nq=1\nlambda=2\nD=2\nell=2\nt=2\nN=16\nv=4\nS=16\nk=6\n";
  const auto r = invoke({"params", "check", "--feq", path("ok.txt")});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  std::ofstream(path("bad.txt")) << "q=1\nlambda=2\nD=2\nell=2\nt=2\nN=4\nv=4\nS=16\nk=6\n";
  EXPECT_EQ(invoke({"params", "check", "--feq", path("bad.txt")}).code, cli::kExitParameter);
}

TEST_F(CliFiles, ske_file_roundtrip) {
  const std::vector<std::uint8_t> msg{'h', 'e', 'l', 'l', 'o', 0x00, 0xff, 0x80};
  write("m.bin", msg);
  ASSERT_EQ(invoke({"--seed", "1", "ske", "keygen", "--out", path("k")}).code, 0);
  ASSERT_EQ(invoke({"--seed", "2", "ske", "enc", "--key", path("k"), "--in", path("m.bin"), "--ct", path("ct"), "--vk",
                 path("vk")})
                .code,
            0);
  auto r = invoke({"ske", "dec", "--key", path("k"), "--ct", path("ct"), "--out", path("out.bin")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read("out.bin"), msg);

  // Wrong key: ⊥.
  ASSERT_EQ(invoke({"--seed", "9", "ske", "keygen", "--out", path("k2")}).code, 0);
  EXPECT_EQ(invoke({"ske", "dec", "--key", path("k2"), "--ct", path("ct")}).code, cli::kExitBottom);

  ASSERT_EQ(invoke({"ske", "del", "--ct", path("ct"), "--cert", path("cert")}).code, 0);
  r = invoke({"ske", "vrfy", "--vk", path("vk"), "--cert", path("cert")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "accept\n");

  // A certificate for another ciphertext is rejected.
  ASSERT_EQ(invoke({"ske", "enc", "--key", path("k"), "--in", path("m.bin"), "--ct", path("ct2"), "--vk", path("vk2")})
                .code,
            0);
  ASSERT_EQ(invoke({"ske", "del", "--ct", path("ct2"), "--cert", path("cert2")}).code, 0);
  r = invoke({"ske", "vrfy", "--vk", path("vk"), "--cert", path("cert2")});
  EXPECT_EQ(r.code, cli::kExitBottom);
  EXPECT_EQ(r.out, "reject\n");
}

TEST_F(CliFiles, ske_css_requires_positive_margin) {
  EXPECT_EQ(invoke({"ske", "keygen", "--variant", "css", "--out", path("k")}).code, cli::kExitParameter);
  ASSERT_EQ(invoke({"ske", "keygen", "--variant", "css", "--force", "--out", path("k")}).code, 0);
  const std::vector<std::uint8_t> msg{0xa5, 0x3c};
  write("m.bin", msg);
  ASSERT_EQ(invoke({"ske", "enc", "--key", path("k"), "--in", path("m.bin"), "--ct", path("ct"), "--vk", path("vk")})
                .code,
            0);
  ASSERT_EQ(invoke({"ske", "dec", "--key", path("k"), "--ct", path("ct"), "--out", path("out.bin")}).code, 0);
  EXPECT_EQ(read("out.bin"), msg);
  ASSERT_EQ(invoke({"ske", "del", "--ct", path("ct"), "--cert", path("cert")}).code, 0);
  EXPECT_EQ(invoke({"ske", "vrfy", "--vk", path("vk"), "--cert", path("cert")}).code, 0);
}

TEST_F(CliFiles, pke_file_roundtrip) {
  const std::vector<std::uint8_t> msg{0x01, 0x23, 0x45, 0x67};
  write("m.bin", msg);
  ASSERT_EQ(invoke({"pke", "keygen", "--w", "16", "--pk", path("pk"), "--sk", path("sk")}).code, 0);
  ASSERT_EQ(invoke({"pke", "enc", "--pk", path("pk"), "--in", path("m.bin"), "--ct", path("ct"), "--vk", path("vk")})
                .code,
            0);
  ASSERT_EQ(invoke({"pke", "dec", "--sk", path("sk"), "--ct", path("ct"), "--out", path("out.bin")}).code, 0);
  EXPECT_EQ(read("out.bin"), msg);
  ASSERT_EQ(invoke({"pke", "del", "--ct", path("ct"), "--cert", path("cert")}).code, 0);
  EXPECT_EQ(invoke({"pke", "vrfy", "--vk", path("vk"), "--cert", path("cert")}).code, 0);
}

TEST_F(CliFiles, rnce_file_roundtrip) {
  const std::vector<std::uint8_t> msg{0x5a};
  write("m.bin", msg);
  ASSERT_EQ(invoke({"rnce", "setup", "--n", "8", "--pk", path("pk"), "--msk", path("msk")}).code, 0);
  ASSERT_EQ(invoke({"rnce", "keygen", "--msk", path("msk"), "--sk", path("sk")}).code, 0);
  ASSERT_EQ(invoke({"rnce", "enc", "--pk", path("pk"), "--in", path("m.bin"), "--ct", path("ct"), "--vk", path("vk")})
                .code,
            0);
  ASSERT_EQ(
      invoke({"rnce", "dec", "--pk", path("pk"), "--sk", path("sk"), "--ct", path("ct"), "--out", path("out.bin")}).code,
      0);
  EXPECT_EQ(read("out.bin"), msg);
  ASSERT_EQ(invoke({"rnce", "del", "--ct", path("ct"), "--cert", path("cert")}).code, 0);
  EXPECT_EQ(invoke({"rnce", "vrfy", "--vk", path("vk"), "--cert", path("cert")}).code, 0);
}

TEST_F(CliFiles, garble_flow) {
  // y0 = x0 AND x1, y1 = x0 XOR x1.
  std::ofstream(path("c.txt")) << "2 2 4 2\n1 0001 0 1 2\n1 0110 0 1 3\n2 3\n";
  ASSERT_EQ(invoke({"garble", "keygen", "--n", "2", "--labels", path("l")}).code, 0);
  auto r = invoke({"garble", "enc", "--labels", path("l"), "--circuit", path("c.txt"), "--gc", path("gc"), "--vk",
                path("vk")});
  ASSERT_EQ(r.code, 0) << r.err;
  for (auto [x, y] : {std::pair{"00", "00"}, {"01", "01"}, {"10", "01"}, {"11", "10"}}) {
    r = invoke({"garble", "dec", "--gc", path("gc"), "--labels", path("l"), "--x", x});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, std::string("y = ") + y + "\n");
  }
  ASSERT_EQ(invoke({"garble", "del", "--gc", path("gc"), "--cert", path("cert")}).code, 0);
  EXPECT_EQ(invoke({"garble", "vrfy", "--vk", path("vk"), "--cert", path("cert")}).code, 0);
}

TEST_F(CliFiles, bad_circuit_text) {
  std::ofstream(path("c.txt")) << "2 1 4 2\n1 1000 0 1 2\n2 0110 2 0 3\n3\n";
  ASSERT_EQ(invoke({"garble", "keygen", "--n", "2", "--labels", path("l")}).code, 0);
  EXPECT_EQ(invoke({"garble", "enc", "--labels", path("l"), "--circuit", path("c.txt"), "--gc", path("gc"), "--vk",
                 path("vk")})
                .code,
            cli::kExitEnvelope);
}

TEST_F(CliFiles, fe1_flow) {
  ASSERT_EQ(invoke({"fe1", "setup", "--family", "mux:2", "--mpk", path("mpk"), "--msk", path("msk")}).code, 0);
  ASSERT_EQ(invoke({"fe1", "keygen", "--msk", path("msk"), "--f", "0110", "--sk", path("sk")}).code, 0);
  // m = 10 read LSB-first is index 1.
  ASSERT_EQ(invoke({"fe1", "enc", "--mpk", path("mpk"), "--bits", "10", "--ct", path("ct"), "--vk", path("vk")}).code,
            0);
  auto r = invoke({"fe1", "dec", "--sk", path("sk"), "--ct", path("ct")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "f(m) = 1\n");
  ASSERT_EQ(invoke({"fe1", "del", "--ct", path("ct"), "--cert", path("cert")}).code, 0);
  EXPECT_EQ(invoke({"fe1", "vrfy", "--vk", path("vk"), "--cert", path("cert")}).code, 0);
  EXPECT_EQ(invoke({"fe1", "keygen", "--msk", path("msk"), "--f", "011", "--sk", path("sk2")}).code, cli::kExitUsage);
}

TEST_F(CliFiles, fead_flow) {
  ASSERT_EQ(invoke({"fead", "setup", "--family", "mux:1", "--mpk", path("mpk"), "--msk", path("msk")}).code, 0);
  ASSERT_EQ(invoke({"fead", "keygen", "--msk", path("msk"), "--f", "10", "--sk", path("sk")}).code, 0);
  ASSERT_EQ(invoke({"fead", "enc", "--mpk", path("mpk"), "--bits", "0", "--ct", path("ct"), "--vk", path("vk")}).code, 0);
  auto r = invoke({"fead", "dec", "--sk", path("sk"), "--ct", path("ct")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "f(m) = 1\n");
  ASSERT_EQ(invoke({"fead", "del", "--ct", path("ct"), "--cert", path("cert")}).code, 0);
  EXPECT_EQ(invoke({"fead", "vrfy", "--vk", path("vk"), "--cert", path("cert")}).code, 0);
}

TEST_F(CliFiles, feq_flow) {
  std::ofstream(path("p.txt")) << "q=1\nlambda=1\nD=2\nell=1\nt=1\nN=4\nv=1\nS=2\nk=3\n";
  ASSERT_EQ(invoke({"feq", "setup", "--params", path("p.txt"), "--mpk", path("mpk"), "--msk", path("msk")}).code, 0);
  // C(x) = 1 + 2x + 3x² over GF(8).
  ASSERT_EQ(invoke({"feq", "keygen", "--mpk", path("mpk"), "--msk", path("msk"), "--poly", "1,2,3", "--sk", path("sk")})
                .code,
            0);
  ASSERT_EQ(invoke({"feq", "enc", "--mpk", path("mpk"), "--x", "1", "--ct", path("ct"), "--vk", path("vk")}).code, 0);
  auto r = invoke({"feq", "dec", "--sk", path("sk"), "--ct", path("ct")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "C(x) = 0\n");  // 1 ⊕ 2 ⊕ 3
  ASSERT_EQ(invoke({"feq", "del", "--ct", path("ct"), "--cert", path("cert")}).code, 0);
  EXPECT_EQ(invoke({"feq", "vrfy", "--vk", path("vk"), "--cert", path("cert")}).code, 0);
  EXPECT_EQ(invoke({"feq", "keygen", "--mpk", path("mpk"), "--msk", path("msk"), "--poly", "1,2", "--sk", path("sk2")})
                .code,
            cli::kExitUsage);
}

TEST_F(CliFiles, bad_envelopes) {
  ASSERT_EQ(invoke({"ske", "keygen", "--out", path("k")}).code, 0);
  write("m.bin", {0x42});
  ASSERT_EQ(invoke({"ske", "enc", "--key", path("k"), "--in", path("m.bin"), "--ct", path("ct"), "--vk", path("vk")})
                .code,
            0);
  ASSERT_EQ(invoke({"ske", "del", "--ct", path("ct"), "--cert", path("cert")}).code, 0);

  // Truncated certificate.
  auto bytes = read("cert");
  bytes.resize(bytes.size() - 1);
  write("cut", bytes);
  EXPECT_EQ(invoke({"ske", "vrfy", "--vk", path("vk"), "--cert", path("cut")}).code, cli::kExitEnvelope);
  bytes.resize(10);
  write("cut", bytes);
  EXPECT_EQ(invoke({"ske", "vrfy", "--vk", path("vk"), "--cert", path("cut")}).code, cli::kExitEnvelope);

  // Unknown tag, echoed in the message.
  bytes = read("cert");
  std::copy_n("ZQXW", 4, bytes.begin() + 6);
  write("unknown", bytes);
  auto r = invoke({"ske", "vrfy", "--vk", path("vk"), "--cert", path("unknown")});
  EXPECT_EQ(r.code, cli::kExitEnvelope);
  EXPECT_NE(r.err.find("ZQXW"), std::string::npos) << r.err;

  // Wrong but valid tag.
  EXPECT_EQ(invoke({"ske", "vrfy", "--vk", path("vk"), "--cert", path("vk")}).code, cli::kExitEnvelope);

  // Classical flag on a quantum tag.
  bytes = read("cert");
  bytes[cli::kEnvelopeHeader] = cli::kClassical;
  write("flag", bytes);
  EXPECT_EQ(invoke({"ske", "vrfy", "--vk", path("vk"), "--cert", path("flag")}).code, cli::kExitEnvelope);

  // Missing file is a usage error.
  EXPECT_EQ(invoke({"ske", "vrfy", "--vk", path("vk"), "--cert", path("missing")}).code, cli::kExitUsage);
}

TEST_F(CliFiles, inspect) {
  ASSERT_EQ(invoke({"ske", "keygen", "--out", path("k")}).code, 0);
  write("m.bin", {0x42});
  ASSERT_EQ(invoke({"ske", "enc", "--key", path("k"), "--in", path("m.bin"), "--ct", path("ct"), "--vk", path("vk")})
                .code,
            0);
  auto r = invoke({"inspect", path("ct")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("CECT"), std::string::npos);
  EXPECT_NE(r.out.find("SIMULATION"), std::string::npos);
  EXPECT_NE(r.out.find("identical"), std::string::npos);
  r = invoke({"inspect", path("k")});
  EXPECT_NE(r.out.find("classical"), std::string::npos);
}

TEST_F(CliFiles, attack_report_and_csv) {
  auto r = invoke({"--seed", "5", "attack", "cesk-qrom", "--strategy", "measure-all", "--trials", "2000", "--csv",
                path("r.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("predicted  0.00390625"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("in CI      yes"), std::string::npos) << r.out;
  std::ifstream csv(path("r.csv"));
  std::string header, row;
  std::getline(csv, header);
  std::getline(csv, row);
  EXPECT_EQ(header, "strategy,trials,passes,rate,ci_low,ci_high");
  EXPECT_EQ(row.rfind("measure-all,2000,", 0), 0u) << row;

  r = invoke({"attack", "cd", "--strategy", "honest", "--trials", "200"});
  EXPECT_NE(r.out.find("passes     200"), std::string::npos) << r.out;
  EXPECT_EQ(invoke({"attack", "cd", "--strategy", "guess"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"attack", "nothing"}).code, cli::kExitUsage);
}

TEST(cli, binary_exit_codes) {
  const char* bin = std::getenv("CEFE_BIN");
  if (!bin) GTEST_SKIP() << "CEFE_BIN not set";
  const auto dir = fs::temp_directory_path() / "cefe_cli_binary";
  fs::create_directories(dir);
  const auto cut = (dir / "cut").string();
  std::ofstream(cut, std::ios::binary) << "CEFE\x01";
  const auto status = [&](const std::string& args) {
    const int raw = std::system((std::string(bin) + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("ske vrfy --vk " + cut + " --cert " + cut), cli::kExitEnvelope);
  EXPECT_EQ(status("params check --pair steane --p 7"), cli::kExitParameter);
  EXPECT_EQ(status("bogus"), cli::kExitUsage);
  EXPECT_EQ(status("--seed 1 demo cd"), 0);
  fs::remove_all(dir);
}
