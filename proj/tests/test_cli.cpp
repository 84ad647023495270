#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("PALRICH_CLI_PATH");
  REQUIRE_MESSAGE(p != nullptr, "PALRICH_CLI_PATH must point at the binary");
  return p;
}

RunResult run(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string l;
  while (std::getline(in, l)) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("gen emits a header line and the prefix") {
  RunResult r = run("gen --D 3 --len 9");
  CHECK(r.exit_code == 0);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  json hdr = json::parse(ls[0]);
  CHECK(hdr["alphabet_size"] == 3);
  CHECK(hdr["length"] == 9);
  CHECK(hdr["morphism"]["images"] == json::parse("[[0,1],[0,2],[0,2,2]]"));
  CHECK(ls[1] == "0 1 0 2 0 1 0 2 2");
}

TEST_CASE("gen handles an empty request") {
  RunResult r = run("gen --D 3 --len 0");
  CHECK(r.exit_code == 0);
  auto ls = lines(r.out);
  REQUIRE(!ls.empty());
  json hdr = json::parse(ls[0]);
  CHECK(hdr["length"] == 0);
}

TEST_CASE("gen with the weighted recoding uses the larger alphabet") {
  RunResult r = run("gen --pi --d 3 --len 40");
  CHECK(r.exit_code == 0);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  json hdr = json::parse(ls[0]);
  CHECK(hdr["alphabet_size"] == 11);  // d + 2^d = 3 + 8
  CHECK(hdr["length"] == 40);
}

TEST_CASE("verify rejects unsupported parameters with the usage code") {
  CHECK(run("verify --d 2").exit_code == 3);
  CHECK(run("gen --D 2 --len 5").exit_code == 3);
  CHECK(run("nonsense").exit_code == 3);
}

TEST_CASE("verify passes on a sound configuration") {
  RunResult r = run("verify --d 3 --N 25 --prefix 3000");
  CHECK(r.exit_code == 0);
  json rep = json::parse(r.out);
  CHECK(rep["status"] == "pass");
  CHECK(rep["schema_version"] == 1);
  int n_checks = 0;
  for (const auto& c : rep["checks"]) {
    CHECK(c["status"] == "pass");
    ++n_checks;
  }
  CHECK(n_checks >= 10);
}

TEST_CASE("verify fails and reports when a defect is injected") {
  RunResult r = run("verify --d 3 --N 20 --prefix 2000 --perturb");
  CHECK(r.exit_code == 1);
  json rep = json::parse(r.out);
  CHECK(rep["status"] == "fail");
}

TEST_CASE("rt-table prints certified digits, decreasing toward 2") {
  RunResult r = run("rt-table --D 3 --D 5 --D 7 --digits 8");
  CHECK(r.exit_code == 0);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[0] == "D,lambda_lo,lambda_hi,estar_lo,estar_hi,digits");
  double prev = 3.0;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    std::istringstream row(ls[i]);
    std::string field;
    std::vector<std::string> f;
    while (std::getline(row, field, ',')) f.push_back(field);
    REQUIRE(f.size() == 6);
    double lo = std::stod(f[3]), hi = std::stod(f[4]);
    CHECK(lo <= hi);
    CHECK(hi - lo < 1e-7);
    CHECK(2.0 < lo);
    CHECK(hi < prev);
    prev = lo;
  }
  // spot values
  CHECK(ls[1].substr(0, 2) == "3,");
  CHECK(ls[1].find("2.7071067") != std::string::npos);
  CHECK(ls[3].find("2.1197196") != std::string::npos);
}

TEST_CASE("rt-table approaches 2 for a large alphabet") {
  RunResult r = run("rt-table --D 101 --digits 6");
  CHECK(r.exit_code == 0);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  std::istringstream row(ls[1]);
  std::string field;
  std::vector<std::string> f;
  while (std::getline(row, field, ',')) f.push_back(field);
  REQUIRE(f.size() == 6);
  CHECK(std::stod(f[4]) < 2.02);
}
