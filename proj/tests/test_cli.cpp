// Copyright 2026 The tqls Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "tqls/cli.hpp"

using tqls::cli::parse_and_dispatch;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = parse_and_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string run_binary(const std::string& args) {
  const std::string cmd = std::string(TQLS_CLI_PATH) + " " + args;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  REQUIRE(pipe);
  std::string output;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) output.append(buf.data(), got);
  return output;
}

}  // namespace

TEST_CASE("solve reports the circulant solution") {
  const auto r = run({"solve", "--symbol", "cos:2,1", "--n", "4", "--rhs", "basis:0", "--output", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const double expected[] = {7.0 / 12, -1.0 / 6, 1.0 / 12, -1.0 / 6};
  for (int i = 0; i < 4; ++i) CHECK(j["x"][i].get<double>() == doctest::Approx(expected[i]).epsilon(1e-14));
  CHECK(j["residual"].get<double>() <= 1e-10);
  CHECK(j["symbol"] == "cos:2,1");
}

TEST_CASE("emulate with the identity symbol") {
  const auto r = run({"emulate", "--symbol", "const:1", "--n", "8", "--rhs", "random:42"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["success_probability"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(j["fidelity_vs_classical"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));
  const auto g = run({"emulate", "--symbol", "kms:0.5", "--n", "16", "--amplification", "grover:2", "--bits", "12"});
  REQUIRE(g.code == 0);
  const auto jg = nlohmann::json::parse(g.out);
  CHECK(jg["grover_iterations"] == 2);
  CHECK(jg["bits"] == 12);
  CHECK(jg.contains("amplified_probability"));
  const auto w = run({"emulate", "--symbol", "cos:2,1", "--n", "16", "--mode", "wiener"});
  REQUIRE(w.code == 0);
  CHECK(nlohmann::json::parse(w.out)["mode"] == "wiener");
}

TEST_CASE("converge emits a decreasing epsilon column") {
  const auto r = run({"converge", "--symbol", "kms:0.5", "--n-list", "16:1024:dyadic", "--rhs", "random:7", "--output", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "n,epsilon,kappa,vec_err,state_err,bound_vec,bound_state,success_probability,rhs_kind,seed");
  double previous = INFINITY;
  int rows = 0;
  while (std::getline(lines, line)) {
    const auto comma = line.find(',');
    const double eps = std::stod(line.substr(comma + 1, line.find(',', comma + 1) - comma - 1));
    CHECK(eps < previous);
    previous = eps;
    ++rows;
  }
  CHECK(rows == 7);
  const auto j = run({"converge", "--symbol", "kms:0.5", "--n-list", "8,16", "--output", "json"});
  REQUIRE(j.code == 0);
  CHECK(nlohmann::json::parse(j.out).size() == 2);
}

TEST_CASE("decompose, rates and eigens") {
  const auto d = run({"decompose", "--symbol", "cos:2,1", "--n", "4", "--output", "json"});
  REQUIRE(d.code == 0);
  CHECK(nlohmann::json::parse(d.out)[0]["total_rel"].get<double>() == doctest::Approx(0.169031).epsilon(1e-5));
  const auto r = run({"rates", "--kind", "pseries", "--p", "3", "--t0", "3", "--n-list", "64:256:dyadic"});
  REQUIRE(r.code == 0);
  const auto rj = nlohmann::json::parse(r.out);
  CHECK(rj["model"] == "lnn_logn_over_n");
  CHECK(rj["verdict"] == "bounded");
  const auto e = run({"eigens", "--symbol", "cos:2,1", "--n-list", "16:64:dyadic"});
  REQUIRE(e.code == 0);
  CHECK(e.out.rfind("n,max_gap,max_gap_times_n\n16,", 0) == 0);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"solve", "--symbol", "cos:2,1", "--n", "4", "--bogus"}).code == 2);
  CHECK(run({"solve", "--symbol", "cos:2,1", "--n", "4", "emulate"}).code == 2);
  CHECK(run({"solve", "--n", "4"}).code == 2);
  CHECK(run({"solve", "--symbol", "cosine:2,1", "--n", "4"}).code == 2);
  CHECK(run({"solve", "--symbol", "cos:2", "--n", "4"}).code == 2);
  CHECK(run({"solve", "--symbol", "cos:2,1", "--n", "4", "--rhs", "unit:0"}).code == 2);
  CHECK(run({"solve", "--symbol", "cos:2,1", "--n", "4", "--output", "xml"}).code == 2);
  CHECK(run({"converge", "--symbol", "kms:0.5", "--n-list", "64:16:dyadic"}).code == 2);
  CHECK(run({"emulate", "--symbol", "kms:0.5", "--n", "12", "--amplification", "grover:x"}).code == 2);
  const auto np2 = run({"emulate", "--symbol", "kms:0.5", "--n", "12"});
  CHECK(np2.code == 2);
  CHECK(np2.err.find("power of two") != std::string::npos);
  CHECK(np2.out.empty());
}

TEST_CASE("numerical errors exit with 1 and a JSON object") {
  const auto dom = run({"solve", "--symbol", "cos:1,2", "--n", "4"});
  CHECK(dom.code == 1);
  const auto jd = nlohmann::json::parse(dom.err);
  CHECK(jd["error"] == "domain");
  CHECK(jd["detail"].is_string());
  const auto m = run({"emulate", "--symbol", "kms:0.5", "--n", "8", "--m", "1"});
  CHECK(m.code == 1);
  CHECK(nlohmann::json::parse(m.err)["error"] == "m_too_large");
  const auto cap = run({"eigens", "--symbol", "kms:0.5", "--n", "5000"});
  CHECK(cap.code == 1);
  CHECK(nlohmann::json::parse(cap.err)["error"] == "cap_exceeded");
  const auto sing = run({"emulate", "--symbol", "cos:2.2,1.8", "--n", "4", "--bits", "2"});
  CHECK(sing.code == 1);
  CHECK(nlohmann::json::parse(sing.err)["error"] == "singular");
}

TEST_CASE("every subcommand's help carries the grammars") {
  for (const char* sub : {"solve", "emulate", "converge", "decompose", "rates", "eigens"}) {
    const auto r = run({sub, "--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find(tqls::cli::kSymbolGrammar) != std::string::npos);
    CHECK(r.out.find(tqls::cli::kRhsGrammar) != std::string::npos);
  }
}

TEST_CASE("file output and file rhs") {
  const std::string rhs = "tqls_cli_rhs.txt";
  const std::string out = "tqls_cli_out.json";
  {
    std::ofstream f(rhs);
    f << "1 0\n0 0\n0 0\n0 0\n";
  }
  const auto r = run({"solve", "--symbol", "cos:2,1", "--n", "4", "--rhs", "file:" + rhs, "--out", out});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["x"][0].get<double>() == doctest::Approx(7.0 / 12));
  std::remove(rhs.c_str());
  std::remove(out.c_str());
}

TEST_CASE("grammar parsers") {
  using namespace tqls::cli;
  CHECK(parse_n_list("16:1024:dyadic") == std::vector<Eigen::Index>{16, 32, 64, 128, 256, 512, 1024});
  CHECK(parse_n_list("4:12:4") == std::vector<Eigen::Index>{4, 8, 12});
  CHECK(parse_n_list("3,5,9") == std::vector<Eigen::Index>{3, 5, 9});
  CHECK_THROWS_AS(parse_n_list("9,5"), UsageError);
  CHECK(parse_symbol("band:0.5,2,0.5").describe() == "band:0.5,2,0.5");
  CHECK(parse_symbol("pseries:2,4").describe() == "pseries:2,4");
  CHECK(parse_rhs("banded:3").half_width == 3);
  CHECK(parse_rhs("random:18446744073709551615").seed == 18446744073709551615ULL);
  CHECK_THROWS_AS(parse_rhs("basis:1.5"), UsageError);
}

TEST_CASE("the binary is byte-deterministic") {
  const std::string args = "converge --symbol pseries:2,4 --n-list 16:256:dyadic --rhs random:7 --output csv";
  const std::string a = run_binary(args);
  const std::string b = run_binary(args);
  CHECK(!a.empty());
  CHECK(a == b);
}
