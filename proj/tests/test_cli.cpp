#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

int run(const std::string& args) {
  std::string cmd = std::string(APEX_BIN) + " " + args;
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const char* kConfig = R"({
  "type": "A1",
  "m": 2,
  "r": "1/2",
  "window_radius": "4",
  "base_vertex": ["0"]
})";

}  // namespace

TEST_CASE("apartment dumps are valid and byte-stable") {
  write_file("cli_cfg.json", kConfig);
  CHECK(run("apartment --config cli_cfg.json --out cli_ap.json") == 0);
  json j = json::parse(read_file("cli_ap.json"));
  CHECK(j.at("euler") == 1);
  CHECK(j.at("counts") == json::array({9, 8}));
  CHECK(j.at("config").at("type") == "A1");
  CHECK(j.at("cells").size() == 17);

  CHECK(run("apartment --config cli_cfg.json --out cli_ap2.json") == 0);
  CHECK(read_file("cli_ap.json") == read_file("cli_ap2.json"));
  std::remove("cli_ap.json");
  std::remove("cli_ap2.json");
}

TEST_CASE("contract then verify round trips through the chain file") {
  write_file("cli_cfg.json", kConfig);
  CHECK(run("contract --config cli_cfg.json --out cli_chains.json > cli_out.txt") == 0);
  json summary = json::parse(read_file("cli_out.txt"));
  CHECK(summary.at("cells") == 17);
  CHECK(summary.at("max_coeff") == "1");

  CHECK(run("verify --chains cli_chains.json > cli_out.txt") == 0);
  json rep = json::parse(read_file("cli_out.txt"));
  CHECK(rep.at("identity") == "pass");
  CHECK(rep.at("support") == "pass");
  CHECK(rep.at("equivariance") == "pass");
  CHECK(rep.at("pointwise_fix") == "pass");

  CHECK(run("--jobs 3 verify --chains cli_chains.json > cli_out.txt") == 0);

  // one corrupted coefficient must fail verification
  json chains = json::parse(read_file("cli_chains.json"));
  for (auto& [key, entry] : chains.at("maps").items())
    if (!entry.at("terms").empty()) {
      auto& term = entry.at("terms")[0];
      term[1] = term[1].get<long long>() + 3;
      break;
    }
  write_file("cli_bad.json", chains.dump());
  CHECK(run("verify --chains cli_bad.json > cli_out.txt") == 1);
  json bad = json::parse(read_file("cli_out.txt"));
  CHECK(bad.at("identity") == "fail");
  CHECK(bad.contains("detail"));
  std::remove("cli_chains.json");
  std::remove("cli_bad.json");
}

TEST_CASE("support and depth filtration queries succeed") {
  write_file("cli_cfg.json", kConfig);
  CHECK(run("support --config cli_cfg.json --sigma 0 --out cli_sup.json") == 0);
  json sup = json::parse(read_file("cli_sup.json"));
  CHECK(sup.at("sigma") == 0);
  CHECK(!sup.at("cells").empty());
  CHECK(!sup.at("core").empty());
  std::remove("cli_sup.json");

  CHECK(run("mp index --type A1 --x 0 --r 1 > cli_out.txt") == 0);
  json idx = json::parse(read_file("cli_out.txt"));
  CHECK(idx.at("t") == json::array({2, 2}));
  CHECK(idx.at("t0") == 2);

  CHECK(run("mp mp1 --type A1 --x 0 --y 2 --z 1 --r 1 > cli_out.txt") == 0);
  CHECK(json::parse(read_file("cli_out.txt")).at("ok") == true);
  CHECK(run("mp mp1 --type A1 --x 0 --y 2 --z 3 --r 1 2> /dev/null") == 2);

  CHECK(run("mp mp2 --config cli_cfg.json --sigma 0 --tau 0 > cli_out.txt") == 0);
  CHECK(json::parse(read_file("cli_out.txt")).at("found") == true);
}

TEST_CASE("bounds sweep writes the coefficient table") {
  CHECK(run("bounds --type A1 --m 1 --radii 1,2,3 --out cli_bounds.csv") == 0);
  std::string csv = read_file("cli_bounds.csv");
  CHECK(csv.rfind("radius,max_coeff,timed_out\n", 0) == 0);
  CHECK(csv.find("1,1,0") != std::string::npos);
  CHECK(csv.find("3,1,0") != std::string::npos);
  std::remove("cli_bounds.csv");
}

TEST_CASE("residue tree exactness runs from the command line") {
  CHECK(run("sl2 exactness --p 2 --r 3/2 > cli_out.txt") == 0);
  json j = json::parse(read_file("cli_out.txt"));
  CHECK(j.at("level") == 3);
  CHECK(j.at("homology") == json::array({0, 0, 0}));
  CHECK(j.at("coset_checks") == "pass");
  CHECK(j.at("iwahori_checks") == "pass");
  CHECK(j.at("dims").at("v") == 48);

  CHECK(run("sl2 exactness --p 2 --r 3/2 --rep bogus 2> /dev/null") == 2);
}

TEST_CASE("renders produce svg pictures") {
  CHECK(run("render --type A1 --m 1 --R 2 --out cli_r1.svg") == 0);
  CHECK(read_file("cli_r1.svg").rfind("<svg", 0) == 0);
  CHECK(run("render --type A2 --R 2 --sigma 0 --out cli_r2.svg") == 0);
  CHECK(read_file("cli_r2.svg").rfind("<svg", 0) == 0);
  CHECK(read_file("cli_r2.svg").find("</svg>") != std::string::npos);
  std::remove("cli_r1.svg");
  std::remove("cli_r2.svg");
}

TEST_CASE("usage errors exit with the error code") {
  CHECK(run("apartment --config cli_missing.json 2> /dev/null") == 2);
  write_file("cli_cfg.json", kConfig);
  CHECK(run("apartment --config cli_cfg.json --bogus 2> /dev/null") == 2);
  CHECK(run("frobnicate 2> /dev/null") == 2);
  CHECK(run("mp 2> /dev/null") == 2);
  CHECK(run("2> /dev/null") == 2);
  CHECK(run("support --config cli_cfg.json --sigma 10000 2> /dev/null") == 2);
  std::remove("cli_cfg.json");
  std::remove("cli_out.txt");
}
