#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

#ifndef BOHRFRAC_CLI_PATH
#error "BOHRFRAC_CLI_PATH must point at the built CLI binary"
#endif

namespace {

const std::string kCli = BOHRFRAC_CLI_PATH;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run(const std::string& args) {
  std::string out_path = std::string("/tmp/bohrfrac_test_out_") +
                         std::to_string(::getpid());
  std::string err_path = out_path + ".err";
  std::string cmd = kCli + " " + args + " >" + out_path + " 2>" + err_path;
  int rc = std::system(cmd.c_str());

  RunResult res;
  res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  auto slurp = [](const std::string& path) {
    std::ifstream f(path);
    std::ostringstream os;
    os << f.rdbuf();
    std::remove(path.c_str());
    return os.str();
  };
  res.out = slurp(out_path);
  res.err = slurp(err_path);
  return res;
}

std::string fmt12(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

}  // namespace

TEST_CASE("radius: text output and exit 0") {
  RunResult r = run("radius --family convex --alpha 0");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0.333333") != std::string::npos);
}

TEST_CASE("radius: csv row parses and round-trips at 12 digits") {
  RunResult r = run("radius --family bloch --alpha 0.9 --format csv");
  REQUIRE(r.exit_code == 0);
  std::istringstream is(r.out);
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  CHECK(header.rfind("family,variant,alpha,root", 0) == 0);

  // root is the 4th field
  std::istringstream fields(row);
  std::string tok;
  for (int i = 0; i < 4; ++i) std::getline(fields, tok, ',');
  double root = std::stod(tok);
  CHECK(std::abs(root - 0.088162) <= 2e-4);
  CHECK(fmt12(root) == tok);  // printed precision survives the round trip
}

TEST_CASE("radius: json output is valid json") {
  RunResult r = run("radius --family shifted --alpha 1 --format json");
  REQUIRE(r.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(std::abs(doc["root"].get<double>() - 0.18350) <= 2e-4);
  CHECK(doc["family"] == "shifted");
}

TEST_CASE("radius: domain errors exit 2") {
  CHECK(run("radius --family analytic --alpha 1.5").exit_code == 2);
  CHECK(run("radius --family analytic --alpha -0.2").exit_code == 2);
  CHECK(run("radius --family convex --alpha 1").exit_code == 2);
}

TEST_CASE("radius: no root within the window exits 3") {
  RunResult r = run("radius --family univalent --alpha 0.9");
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("no sign change") != std::string::npos);
}

TEST_CASE("usage errors exit 64") {
  CHECK(run("radius --family convex").exit_code == 64);       // missing alpha
  CHECK(run("radius --alpha 0.5").exit_code == 64);           // missing family
  CHECK(run("frobnicate").exit_code == 64);                   // bad subcommand
  CHECK(run("radius --family nosuch --alpha 0.5").exit_code == 64);
  CHECK(run("radius --family convex --alpha 0.5 --format yaml").exit_code == 64);
  CHECK(run("curve --family convex --alpha-min 0 --alpha-max 0.5 --steps 1").exit_code == 64);
  CHECK(run("curve --family convex --alpha-min 0.5 --alpha-max 0.2 --steps 4").exit_code == 64);
  CHECK(run("curve --family analytic --alpha-min 0 --alpha-max 1 --steps 4").exit_code == 64);
  CHECK(run("majorant --alpha 0.5 --r 0.3").exit_code == 64); // no source
  CHECK(run("majorant --preset nosuch --alpha 0.5 --r 0.3").exit_code == 64);
}

TEST_CASE("curve: endpoints of the shifted family table") {
  std::string out = "/tmp/bohrfrac_curve_test.csv";
  std::remove(out.c_str());
  RunResult r = run("curve --family shifted --alpha-min 0 --alpha-max 1 "
                    "--steps 5 --format csv --out " + out);
  REQUIRE(r.exit_code == 0);

  std::ifstream f(out);
  REQUIRE(f.good());
  std::string line;
  std::getline(f, line);
  CHECK(line == "alpha,root,residual,status");
  double first_root = -1.0, last_root = -1.0, prev = 2.0;
  bool decreasing = true;
  int rows = 0;
  while (std::getline(f, line)) {
    std::istringstream fields(line);
    std::string alpha_s, root_s, resid_s, status_s;
    std::getline(fields, alpha_s, ',');
    std::getline(fields, root_s, ',');
    std::getline(fields, resid_s, ',');
    std::getline(fields, status_s, ',');
    CHECK(status_s == "ok");
    double root = std::stod(root_s);
    if (rows == 0) first_root = root;
    last_root = root;
    decreasing = decreasing && root < prev;
    prev = root;
    ++rows;
  }
  std::remove(out.c_str());
  CHECK(rows == 5);
  CHECK(std::abs(first_root - 0.33333) <= 2e-4);
  CHECK(std::abs(last_root - 0.18350) <= 2e-4);
  CHECK(decreasing);
}

TEST_CASE("curve: json rows carry status") {
  RunResult r = run("curve --family univalent --alpha-min 0 --alpha-max 0.5 "
                    "--steps 6 --format json");
  REQUIRE(r.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.size() == 6);
  double prev = 1.0;
  for (const auto& row : doc) {
    CHECK(row["status"] == "ok");
    double root = row["root"].get<double>();
    CHECK(root < prev);
    prev = root;
  }
  CHECK(std::abs(doc[1]["root"].get<double>() - 0.139068) <= 2e-4);
}

TEST_CASE("curve: unwritable output path exits 74") {
  RunResult r = run("curve --family shifted --alpha-min 0 --alpha-max 1 "
                    "--steps 3 --out /nonexistent_dir/x.csv");
  CHECK(r.exit_code == 74);
}

TEST_CASE("majorant: presets") {
  RunResult r = run("majorant --preset koebe --alpha 0 --r 0.1");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("0.123457") != std::string::npos);

  r = run("majorant --preset half_plane --alpha 0 --r 0.333333333333333 --format json");
  REQUIRE(r.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.out);
  CHECK(std::abs(doc["majorant"].get<double>() - 0.5) <= 1e-12);
  CHECK(doc["tail_bound"].get<double>() < 1e-12);
}

TEST_CASE("majorant: coefficient file with integral direction") {
  std::string path = "/tmp/bohrfrac_coeffs_test.txt";
  {
    std::ofstream f(path);
    f << "1\n";
  }
  RunResult r = run("majorant --coeffs " + path +
                    " --alpha 0.5 --r 0.25 --direction integral --format csv");
  REQUIRE(r.exit_code == 0);
  std::istringstream is(r.out);
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  double value = std::stod(row.substr(0, row.find(',')));
  // 0.25^0.5 / Gamma(1.5)
  CHECK(std::abs(value - 0.564189583547756) <= 1e-12);
  std::remove(path.c_str());
}

TEST_CASE("majorant: parse failures exit 65 and name the line") {
  std::string path = "/tmp/bohrfrac_badcoeffs_test.txt";
  {
    std::ofstream f(path);
    f << "1.0\nnot-a-number\n";
  }
  RunResult r = run("majorant --coeffs " + path + " --alpha 0.5 --r 0.25");
  CHECK(r.exit_code == 65);
  CHECK(r.err.find("line 2") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("majorant: domain errors exit 2") {
  CHECK(run("majorant --preset koebe --alpha 0.5 --r 1.5").exit_code == 2);
  CHECK(run("majorant --preset koebe --alpha 2 --r 0.3").exit_code == 2);
}

TEST_CASE("max-terms precedence: flag beats a broken environment value") {
  std::string cmd = "env BOHRFRAC_MAX_TERMS=bogus " + kCli +
                    " radius --family convex --alpha 0.3 --max-terms 4096 "
                    ">/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(rc) == 0);

  cmd = "env BOHRFRAC_MAX_TERMS=bogus " + kCli +
        " radius --family convex --alpha 0.3 >/dev/null 2>&1";
  rc = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(rc) == 64);

  cmd = "env BOHRFRAC_MAX_TERMS=65536 " + kCli +
        " radius --family convex --alpha 0.3 >/dev/null 2>&1";
  rc = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(rc) == 0);
}

TEST_CASE("verify: json report parses, as_stated rows flagged") {
  std::string out = "/tmp/bohrfrac_verify_test.json";
  std::remove(out.c_str());
  RunResult r = run("verify --format json --out " + out);
  CHECK(r.exit_code == 0);

  std::ifstream f(out);
  REQUIRE(f.good());
  nlohmann::json doc = nlohmann::json::parse(f);
  REQUIRE(doc.is_array());
  CHECK(doc.size() == 39);
  int mismatches = 0, variant_matches = 0;
  for (const auto& row : doc) {
    if (row["status"] == "mismatch") ++mismatches;
    if (row["status"] == "variant_match") ++variant_matches;
  }
  CHECK(mismatches == 4);      // nonzero-alpha analytic rows, as_stated
  CHECK(variant_matches == 5); // all as_tabulated rows
  std::remove(out.c_str());
}

TEST_CASE("verify: unwritable report path exits 74") {
  RunResult r = run("verify --out /nonexistent_dir/report.json");
  CHECK(r.exit_code == 74);
}
