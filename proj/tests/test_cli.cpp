#include "qorder/cli.hpp"
#include "qorder/stochastic.hpp"

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qorder;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("tree subcommand") {
  auto r = run({"tree", "--kind", "sb", "--permuted", "--depth", "4", "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 9);
  CHECK(rows[0] == "level,index,num,den");
  CHECK(rows[1] == "4,0,1,4");
  CHECK(rows[8] == "4,7,4,1");
  r = run({"tree", "--kind", "farey", "--depth", "3", "--all-levels"});
  CHECK(lines(r.out) == std::vector<std::string>{"level,index,num,den", "1,0,1,2", "2,0,1,3", "2,1,2,3", "3,0,1,4",
                                                 "3,1,2,5", "3,2,3,5", "3,3,3,4"});
  r = run({"tree", "--kind", "dyadic", "--depth", "2", "--format", "json"});
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["meta"]["command"] == "tree");
  CHECK(doc["meta"]["version"] == cli::kVersion);
  CHECK(doc["rows"] == nlohmann::json::parse(R"([["2","0","1","4"],["2","1","3","4"]])"));
}

TEST_CASE("enumerate subcommand") {
  auto r = run({"enumerate", "--map", "R", "--start", "1/0", "--count", "9"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows.front() == "i,num,den");
  CHECK(rows[1] == "0,1,0");
  CHECK(rows.back() == "8,3,1");
  r = run({"enumerate", "--map", "T", "--count", "4"});
  CHECK(lines(r.out) == std::vector<std::string>{"i,num,den", "0,1,1", "1,0,1", "2,1,2", "3,1,4"});
  CHECK(run({"enumerate", "--map", "S", "--start", "3/2", "--count", "2"}).code == cli::kUsageError);
}

TEST_CASE("qmark subcommand") {
  auto r = run({"qmark", "2/5", "1/3"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out) == std::vector<std::string>{"input,value,decimal", "2/5,3/2^3,0.375", "1/3,1/2^2,0.25"});
  r = run({"qmark", "--extended", "2/5", "1/0"});
  CHECK(lines(r.out)[1] == "2/5,3/2^4,0.1875");
  CHECK(lines(r.out)[2] == "1/0,1/2^0,1");
  r = run({"qmark", "--inverse", "3/2^3"});
  CHECK(lines(r.out)[1].starts_with("3/2^3,2/5,"));
  r = run({"qmark", "--enclosure", "[0;2,3]"});
  CHECK(lines(r.out)[1] == "\"[0;2,3]\",7/2^4,15/2^5,0.4375,0.46875,qmark");
  CHECK(run({"qmark"}).code == cli::kUsageError);
  CHECK(run({"qmark", "3/2"}).code == cli::kUsageError);
  CHECK(run({"qmark", "--inverse", "1/3"}).code == cli::kUsageError);
}

TEST_CASE("fourier subcommand") {
  const auto r = run({"fourier", "-n", "1,3", "--size", "10"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "n,re,im,method,size");
  CHECK(rows[1].starts_with("1,-0.3"));
  CHECK(rows[2].ends_with(",tree,10"));
  const auto e = run({"fourier", "--method", "ergodic", "-n", "1", "--size", "1024"});
  CHECK(lines(e.out)[1].ends_with(",ergodic,1024"));
  CHECK(run({"fourier", "-n", "1", "--size", "30"}).code == cli::kUsageError);
}

TEST_CASE("simulate subcommand") {
  auto r = run({"simulate", "--chain", "rw", "--walks", "50", "--horizon", "100", "--interval", "2/5,3/5",
                "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["rows"].size() == 50);
  CHECK(doc["summary"]["curve"].size() == 101);
  CHECK(doc["meta"]["seed"] == kDefaultSeed);
  const auto csv = run({"simulate", "--chain", "mc1", "--start", "2/1", "--walks", "5", "--horizon", "3", "--seed", "9"});
  CHECK(lines(csv.out).size() == 6);
  CHECK(lines(csv.out)[0] == "walk,hit_time,final_num,final_den");
  CHECK(lines(csv.out)[1].starts_with("0,-1,"));
  CHECK(run({"simulate", "--chain", "rw", "--start", "2/1"}).code == cli::kUsageError);
  CHECK(run({"simulate", "--walks", "2000000"}).code == cli::kUsageError);
  CHECK(run({"simulate", "--interval", "3/5,2/5"}).code == cli::kUsageError);
}

TEST_CASE("verify subcommand") {
  auto r = run({"verify", "--suite", "exact-core", "--seed", "7"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].find(",PASS,") != std::string::npos);
  r = run({"verify", "--list"});
  CHECK(lines(r.out).size() == cli::full_registry().size() + 1);
  r = run({"verify", "--suite", "tree-gen/calkin-wilf"});
  CHECK(lines(r.out).size() == 2);
  CHECK(run({"verify", "--suite", "nope"}).code == cli::kUsageError);
}

TEST_CASE("usage errors and output files") {
  CHECK(run({}).code == cli::kUsageError);
  CHECK(run({"bogus"}).code == cli::kUsageError);
  CHECK(run({"tree"}).code == cli::kUsageError);
  CHECK(run({"tree", "--depth", "3", "--format", "xml"}).code == cli::kUsageError);
  const auto cap = run({"tree", "--depth", "25"});
  CHECK(cap.code == cli::kUsageError);
  CHECK(cap.err.find("cap 24") != std::string::npos);
  CHECK(run({"enumerate", "--count", "3", "--start", "1/x"}).code == cli::kUsageError);
  CHECK(run({"--help"}).code == 0);

  const auto dir = std::filesystem::temp_directory_path() / "qorder_cli_test";
  std::filesystem::create_directories(dir);
  setenv(cli::kOutputDirEnv, dir.c_str(), 1);
  const auto r = run({"tree", "--depth", "3", "--output", "t.csv"});
  unsetenv(cli::kOutputDirEnv);
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(dir / "t.csv");
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == run({"tree", "--depth", "3"}).out);
  std::filesystem::remove_all(dir);
}

TEST_CASE("output is identical across worker counts") {
  const std::vector<std::string> base = {"simulate", "--chain", "mc1", "--walks", "600", "--horizon", "64",
                                         "--interval", "1/2,2/1", "--format", "json"};
  auto with = [&](int t) {
    auto a = base;
    a.insert(a.end(), {"--threads", std::to_string(t)});
    return run(a).out;
  };
  const auto one = with(1);
  CHECK(with(1) == one);
  CHECK(with(2) == one);
  CHECK(with(8) == one);
}
