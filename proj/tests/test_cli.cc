// Copyright 2026 The rrm Authors.
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rrm/cli.h"

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run Call(std::vector<std::string> args) {
  args.insert(args.begin(), "rrm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = rrm::RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path Dir() {
  const fs::path d = fs::temp_directory_path() / "rrm_test_cli";
  fs::create_directories(d);
  return d;
}

std::string SevenTupleCsv() {
  const fs::path p = Dir() / "sample.csv";
  std::ofstream(p) << "A1,A2\n0,1\n0.4,0.95\n0.57,0.75\n0.79,0.6\n0.2,0.5\n0.35,0.3\n1,0\n";
  return p.string();
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("netbound prints the integer bound") {
  const auto r = Call({"netbound", "--c", "1", "--d", "3", "--eps", "0.1"});
  CHECK(r.code == 0);
  CHECK(r.out == "215577\n");
  CHECK(Call({"netbound", "--c", "1", "--d", "4", "--eps", "0.1"}).out == "172186147\n");
  CHECK(Call({"netbound", "--eps", "1.5"}).code == rrm::kExitUsage);
}

TEST_CASE("solve seven-tuple example with r = 1") {
  const auto r = Call({"solve", "--algo", "2d", "--r", "1", "--input", SevenTupleCsv()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["indices"] == nlohmann::json::array({3}));
  CHECK(j["rank_regret"] == 3);
  CHECK(j["params"]["config"]["command"] == "solve");
  CHECK(j["params"]["config"]["r"] == 1);
}

TEST_CASE("eval of the full set") {
  const auto r = Call({"eval", "--set", "1..7", "--samples", "1000", "--input", SevenTupleCsv()});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["estimated_rank_regret"] == 1);
}

TEST_CASE("eval metrics") {
  const auto r = Call({"eval", "--set", "4", "--samples", "20000", "--metrics", "rank,ratk,regret-ratio",
                       "--rat-k", "4,5", "--input", SevenTupleCsv()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["estimated_rank_regret"] == 4);
  CHECK(j["rat_k"]["4"] == 1.0);
  CHECK(j["max_regret_ratio"].get<double>() == doctest::Approx(0.40).epsilon(0.01));
  CHECK(Call({"eval", "--set", "1", "--metrics", "speed", "--input", SevenTupleCsv()}).code == rrm::kExitUsage);
  CHECK(Call({"eval", "--set", "0", "--input", SevenTupleCsv()}).code == rrm::kExitUsage);
  CHECK(Call({"eval", "--input", SevenTupleCsv()}).code == rrm::kExitUsage);
}

TEST_CASE("usage errors exit 1, solver errors exit 2") {
  CHECK(Call({}).code == rrm::kExitUsage);
  CHECK(Call({"solve", "--input", SevenTupleCsv()}).code == rrm::kExitUsage);
  CHECK(Call({"solve", "--r", "2", "--input", "/no/such.csv"}).code == rrm::kExitUsage);
  CHECK(Call({"frobnicate"}).code == rrm::kExitUsage);
  const fs::path d3 = Dir() / "d3.csv";
  std::ofstream(d3) << "a,b,c\n1,0,0\n0,1,0\n0,0,1\n";
  CHECK(Call({"solve", "--algo", "2d", "--r", "2", "--input", d3.string()}).code == rrm::kExitUsage);
  // budget below the basis size
  CHECK(Call({"solve", "--algo", "hd", "--r", "2", "--m", "10", "--input", d3.string()}).code == rrm::kExitFailure);
  const auto guard = Call({"oracle", "--mode", "arc", "--n", "1000", "--r", "5"});
  CHECK(guard.code == rrm::kExitFailure);
  CHECK(guard.err.find("guard") != std::string::npos);
  const fs::path bad = Dir() / "bad.csv";
  std::ofstream(bad) << "a,b\n1,2\n3\n";
  const auto ragged = Call({"solve", "--r", "1", "--input", bad.string()});
  CHECK(ragged.code == rrm::kExitFailure);
  CHECK(ragged.err.find("row 3") != std::string::npos);
}

TEST_CASE("oracle subcommand") {
  const auto r = Call({"oracle", "--r", "1", "--input", SevenTupleCsv()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["optimal_value"] == 3);
  CHECK(j["optimal_sets"] == nlohmann::json::parse("[[3]]"));
  CHECK(j["method"] == "exhaustive-2d-exact");
  const auto arc = nlohmann::json::parse(Call({"oracle", "--mode", "arc", "--n", "100", "--r", "3"}).out);
  CHECK(arc["optimal_value"].get<int>() >= 12);
}

TEST_CASE("gen, solve hd, eval the saved result") {
  const fs::path data = Dir() / "gen.csv", res = Dir() / "res.json";
  REQUIRE(Call({"gen", "--family", "independent", "--n", "300", "--d", "3", "--seed", "4", "--out",
                data.string()}).code == 0);
  REQUIRE(Call({"solve", "--algo", "hd", "--r", "8", "--m", "3000", "--seed", "4", "--input", data.string(),
                "--out", res.string()}).code == 0);
  const auto j = nlohmann::json::parse(Slurp(res));
  CHECK(j["size"].get<int>() <= 8);
  CHECK(j["params"]["config"]["m"] == 3000);
  const auto ev = Call({"eval", "--result", res.string(), "--samples", "20000", "--input", data.string()});
  REQUIRE(ev.code == 0);
  const auto e = nlohmann::json::parse(ev.out);
  const std::string k = std::to_string(j["rank_regret"].get<int>());
  CHECK(e["rat_k"][k].get<double>() >= 0.97);
}

TEST_CASE("identical flags give identical bytes") {
  const std::vector<std::string> args{"solve", "--algo", "hd", "--r", "5", "--m", "500", "--seed", "2",
                                      "--input", SevenTupleCsv()};
  CHECK(Call(args).out == Call(args).out);
  const std::vector<std::string> gen{"gen", "--n", "50", "--d", "3", "--seed", "1"};
  CHECK(Call(gen).out == Call(gen).out);
  const std::vector<std::string> ev{"eval", "--set", "2,3", "--samples", "5000", "--input", SevenTupleCsv()};
  CHECK(Call(ev).out == Call(ev).out);
}

TEST_CASE("seed falls back to RRK_SEED") {
  ::setenv("RRK_SEED", "77", 1);
  const auto r = Call({"gen", "--n", "20", "--d", "2"});
  ::unsetenv("RRK_SEED");
  const auto explicit_seed = Call({"gen", "--n", "20", "--d", "2", "--seed", "77"});
  const auto zero = Call({"gen", "--n", "20", "--d", "2"});
  CHECK(r.out == explicit_seed.out);
  CHECK(r.out != zero.out);
}

TEST_CASE("restricted solve") {
  const fs::path space = Dir() / "space.json";
  std::ofstream(space) << R"({"halfspaces": [[1, -1]]})";
  const auto r = Call({"solve", "--r", "1", "--restrict", space.string(), "--input", SevenTupleCsv()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["params"]["config"]["restrict"] == space.string());
  CHECK(j["size"] == 1);
}

TEST_CASE("rrr subcommand") {
  const auto r = Call({"rrr", "--k", "3", "--input", SevenTupleCsv()});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["indices"] == nlohmann::json::array({3}));
  CHECK(j["rank_regret"] == 3);
}

TEST_CASE("bench emits a tidy CSV") {
  const auto r = Call({"bench", "--n", "100", "--d", "2,3", "--r", "4", "--m", "200", "--eval-samples", "500"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header, line;
  std::getline(in, header);
  CHECK(header == "algo,family,n,d,r,gamma,delta,m,seed,time_ms,size,rank_regret,estimated_rank_regret");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 12);
  }
  CHECK(rows == 3);  // 2d at d=2, hd at d=2 and d=3
}
