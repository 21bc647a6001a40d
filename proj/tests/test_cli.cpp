// Drives the installed CLI binary end to end through subprocesses.

#include "eveopt/interaction.hpp"

#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <string>

#include <sys/wait.h>

#ifndef EVEOPT_CLI_PATH
#error "EVEOPT_CLI_PATH must point at the CLI binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(EVEOPT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/eveopt_cli_test_") + name;
}

}  // namespace

TEST_CASE("construct emits the unequal-error instance") {
  const RunResult r = run_cli("construct --family fuchs1 --dxy 0.2 --duv 0.3");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto [dp, dm] = eveopt::d_coefficients(0.3);
  CHECK(std::abs(j["xi_x"][0][0].get<double>() - dp) < 1e-12);
  CHECK(std::abs(j["xi_x"][1][0].get<double>()) < 1e-12);
  CHECK(std::abs(j["xi_x"][2][0].get<double>()) < 1e-12);
  CHECK(std::abs(j["xi_x"][3][0].get<double>() - dm) < 1e-12);
  CHECK(j["optimal"].get<bool>());
  CHECK(std::abs(j["gain"]["achieved"].get<double>() - j["gain"]["bound"].get<double>()) < 1e-9);
}

TEST_CASE("construct one-param at a = 1/2 reports the +/- POVM") {
  const RunResult r = run_cli("construct --family one-param --a 0.5 --dxy 0.25 --duv 0.25");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const double s = 1.0 / std::sqrt(2.0);
  const double expected[4][4] = {{s, -s, 0, 0}, {s, s, 0, 0}, {0, 0, s, -s}, {0, 0, s, s}};
  for (int l = 0; l < 4; ++l) {
    for (int c = 0; c < 4; ++c) {
      CHECK(std::abs(j["povm"][l][c][0].get<double>() - expected[l][c]) < 1e-9);
      CHECK(std::abs(j["povm"][l][c][1].get<double>()) < 1e-12);
    }
  }
}

TEST_CASE("construct at the degenerate origin") {
  const RunResult r = run_cli("construct --family general --dxy 0 --duv 0");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["gain"]["achieved"].get<double>()) < 1e-12);
  CHECK(std::abs(j["mutual_information"]["achieved"].get<double>()) < 1e-12);
  CHECK(j["degenerate"].get<bool>());
}

TEST_CASE("construct rejects inconsistent flags") {
  CHECK(run_cli("construct --family fuchs1 --a 0.5").exit_code == 2);
  CHECK(run_cli("construct --family general --seed 3").exit_code == 2);
  CHECK(run_cli("construct --family nonsense").exit_code == 2);
  CHECK(run_cli("construct --family fuchs2 --dxy 0.2 --duv 0.3").exit_code == 2);
}

TEST_CASE("construct output is byte-identical across runs") {
  const RunResult a = run_cli("construct --family rotated --seed 9 --dxy 0.15 --duv 0.35");
  const RunResult b = run_cli("construct --family rotated --seed 9 --dxy 0.15 --duv 0.35");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("sweep emits the fixed CSV schema") {
  const RunResult r = run_cli("sweep --dmin 0.25 --dmax 0.25 --steps 1 --family general --out -");
  REQUIRE(r.exit_code == 0);
  const std::string header =
      "d_xy,d_uv,g_bound,g_achieved,i_bound,i_achieved,max_prop3_residual,canonical_ok";
  CHECK(r.out.substr(0, header.size()) == header);
  CHECK(r.out.find("\r") == std::string::npos);
  CHECK(r.out.find("0.8660254038") != std::string::npos);  // bound and achieved
  const std::size_t first = r.out.find("0.8660254038");
  CHECK(r.out.find("0.8660254038", first + 1) != std::string::npos);

  const RunResult zero = run_cli("sweep --dmin 0 --dmax 0 --steps 1 --family general --out -");
  REQUIRE(zero.exit_code == 0);
  CHECK(zero.out.find("\n0,0,0,") != std::string::npos);
  CHECK(zero.out.back() == '\n');
  const std::string last_line = zero.out.substr(zero.out.rfind('\n', zero.out.size() - 2) + 1);
  CHECK(last_line.find(",0\n") != std::string::npos);  // canonical_ok = 0
}

TEST_CASE("sweep writes files and is deterministic") {
  const std::string path = temp_path("sweep.csv");
  const std::string flags = "sweep --dmin 0.05 --dmax 0.45 --steps 5 --family fuchs1 --out " + path;
  REQUIRE(run_cli(flags).exit_code == 0);
  std::ifstream in1(path);
  std::string first((std::istreambuf_iterator<char>(in1)), std::istreambuf_iterator<char>());
  REQUIRE(run_cli(flags).exit_code == 0);
  std::ifstream in2(path);
  std::string second((std::istreambuf_iterator<char>(in2)), std::istreambuf_iterator<char>());
  CHECK(first == second);
  // header + 25 rows
  int lines = 0;
  for (char ch : first) lines += ch == '\n';
  CHECK(lines == 26);
  std::remove(path.c_str());

  CHECK(run_cli("sweep --dmin 0.1 --dmax 0.2 --steps 3 --out /nonexistent-dir/x.csv").exit_code == 2);
  CHECK(run_cli("sweep --dmin 0.4 --dmax 0.2 --steps 3 --out -").exit_code == 2);
}

TEST_CASE("serial and parallel sweeps agree byte for byte") {
  const RunResult par = run_cli("sweep --dmin 0.05 --dmax 0.45 --steps 4 --out -");
  const RunResult ser = run_cli("sweep --dmin 0.05 --dmax 0.45 --steps 4 --out - --serial");
  REQUIRE(par.exit_code == 0);
  REQUIRE(ser.exit_code == 0);
  CHECK(par.out == ser.out);
}

TEST_CASE("verify passes quickly with few trials and is deterministic") {
  const RunResult a = run_cli("verify --trials 50 --seed 7");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out.find("[FAIL]") == std::string::npos);
  CHECK(a.out.find("perturbed-POVM canary") != std::string::npos);
  const RunResult b = run_cli("verify --trials 50 --seed 7");
  CHECK(a.out == b.out);
  CHECK(run_cli("verify --trials 0").exit_code == 2);
}

TEST_CASE("canonicalize round-trips a construct document") {
  const RunResult built = run_cli("construct --family fuchs2 --dxy 0.25 --duv 0.25");
  REQUIRE(built.exit_code == 0);
  const std::string path = temp_path("doc.json");
  {
    std::ofstream out(path);
    out << built.out;
  }
  const RunResult canon = run_cli("canonicalize " + path);
  REQUIRE(canon.exit_code == 0);
  const auto j = nlohmann::json::parse(canon.out);
  CHECK(j["matches_pattern"].get<bool>());
  CHECK(j["optimal"].get<bool>());
  std::remove(path.c_str());
}

TEST_CASE("canonicalize rejects malformed documents") {
  const std::string path = temp_path("bad.json");
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK(run_cli("canonicalize " + path).exit_code == 2);

  {
    std::ofstream out(path);
    out << R"({"basis":"canonical","d_xy":0.2,"d_uv":0.3,)"
        << R"("xi_x":[[2,0],[0,0],[0,0],[0,0]],)"
        << R"("xi_y":[[0,0],[1,0],[0,0],[0,0]],)"
        << R"("zeta_x":[[0,0],[0,0],[1,0],[0,0]],)"
        << R"("zeta_y":[[0,0],[0,0],[0,0],[1,0]]})";
  }
  const std::string cmd = std::string(EVEOPT_CLI_PATH) + " canonicalize " + path + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string with_err;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) with_err.append(buf.data(), n);
  const int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 2);
  CHECK(with_err.find("xi_x") != std::string::npos);  // names the offending vector

  CHECK(run_cli("canonicalize /does/not/exist.json").exit_code == 2);
  std::remove(path.c_str());
}

TEST_CASE("canonicalize reports slack for a non-optimal document") {
  // a lopsided two-block interaction: valid, but off the optimal pattern
  const std::string path = temp_path("nonopt.json");
  {
    const double a = std::sqrt(0.9), b = std::sqrt(0.1);
    std::ofstream out(path);
    out << "{\"basis\":\"canonical\",\"d_xy\":0.25,\"d_uv\":0.25,"
        << "\"xi_x\":[[" << a << ",0],[" << b << ",0],[0,0],[0,0]],"
        << "\"xi_y\":[[" << b << ",0],[" << a << ",0],[0,0],[0,0]],"
        << "\"zeta_x\":[[0,0],[0,0],[1,0],[0,0]],"
        << "\"zeta_y\":[[0,0],[0,0],[0,0],[1,0]]}";
  }
  const RunResult canon = run_cli("canonicalize " + path);
  REQUIRE(canon.exit_code == 0);
  const auto j = nlohmann::json::parse(canon.out);
  CHECK_FALSE(j["matches_pattern"].get<bool>());
  CHECK_FALSE(j["optimal"].get<bool>());
  CHECK(j["slack_g"].get<double>() > 1e-6);
  std::remove(path.c_str());
}

TEST_CASE("mutual-information unit flag") {
  const RunResult nats = run_cli("construct --family general --dxy 0.25 --duv 0.5");
  const RunResult bits = run_cli("construct --family general --dxy 0.25 --duv 0.5 --bits");
  REQUIRE(nats.exit_code == 0);
  REQUIRE(bits.exit_code == 0);
  const auto jn = nlohmann::json::parse(nats.out);
  const auto jb = nlohmann::json::parse(bits.out);
  CHECK(std::abs(jn["mutual_information"]["achieved"].get<double>() - std::log(2.0)) < 1e-12);
  CHECK(std::abs(jb["mutual_information"]["achieved"].get<double>() - 1.0) < 1e-12);
  CHECK(jb["mutual_information"]["units"] == "bits");
}
