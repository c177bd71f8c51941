#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef DOFLAB_CLI_PATH
#error "DOFLAB_CLI_PATH must point at the doflab binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(DOFLAB_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), buf.size(), pipe)) res.output += buf.data();
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp_path(const char* name) {
  return std::string("cli_test_") + name;
}

}  // namespace

TEST_CASE("list-schemes prints the registry with exact fractions") {
  auto res = run_cli("list-schemes");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("pdd23") != std::string::npos);
  CHECK(res.output.find("5/3") != std::string::npos);
  CHECK(res.output.find("9/4") != std::string::npos);
  CHECK(res.output.find("PPD") != std::string::npos);
  CHECK(res.output.find("ppp_zf") != std::string::npos);
}

TEST_CASE("verify: pass, property failure and usage failure exit codes") {
  CHECK(run_cli("verify pd22 --trials 5").exit_code == 0);

  auto inject = run_cli("verify pdd23 --trials 3 --inject-degenerate");
  CHECK(inject.exit_code == 1);
  CHECK(inject.output.find("first failure") != std::string::npos);

  auto unknown = run_cli("verify does_not_exist");
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.output.find("unknown scheme") != std::string::npos);

  CHECK(run_cli("bogus-subcommand").exit_code == 2);
  CHECK(run_cli("verify pd22 --trials 0").exit_code == 2);
}

TEST_CASE("verify writes a JSON report") {
  std::string out = tmp_path("verify.json");
  auto res = run_cli("verify ppd33 --trials 4 --out " + out);
  CHECK(res.exit_code == 0);
  std::string body = slurp(out);
  CHECK(body.find("\"passes\": 4") != std::string::npos);
  CHECK(body.find("\"audit_clean\": true") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("sweep: slope gate, format choice, grid validation") {
  std::string out = tmp_path("sweep.csv");
  auto res = run_cli("sweep pd22 --trials 6 --seed 1 --out " + out);
  CHECK(res.exit_code == 0);
  std::string csv = slurp(out);
  CHECK(csv.rfind("scheme,P_T,trial_mean_sum_rate,r1,r2,r3,slope_fit\n", 0) == 0);
  std::remove(out.c_str());

  auto json_run = run_cli("sweep pd22 --trials 4 --format json");
  CHECK(json_run.exit_code == 0);
  CHECK(json_run.output.find("\"slope_fit\"") != std::string::npos);

  CHECK(run_cli("sweep pd22 --grid 1e6 --trials 4").exit_code == 2);
  CHECK(run_cli("sweep pd22 --grid 1e4,1e6 --trials 4").exit_code == 2);
  CHECK(run_cli("sweep pd22 --format yaml --trials 4").exit_code == 2);
}

TEST_CASE("sweep output is byte-identical across runs and worker counts") {
  std::string a = tmp_path("sweep_a.csv"), b = tmp_path("sweep_b.csv"),
              c = tmp_path("sweep_c.csv");
  CHECK(run_cli("sweep pdd23 --trials 8 --seed 3 --workers 1 --out " + a)
            .exit_code == 0);
  CHECK(run_cli("sweep pdd23 --trials 8 --seed 3 --workers 4 --out " + b)
            .exit_code == 0);
  CHECK(run_cli("sweep pdd23 --trials 8 --seed 3 --workers 2 --out " + c)
            .exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) == slurp(c));
  CHECK_FALSE(slurp(a).empty());
  std::remove(a.c_str());
  std::remove(b.c_str());
  std::remove(c.c_str());
}

TEST_CASE("region: tightness report and exit codes") {
  auto corner = run_cli("region 1/2 1/4 1/2");
  CHECK(corner.exit_code == 0);
  CHECK(corner.output.find("inside") != std::string::npos);
  // All three constraints tight at the achieved corner.
  std::size_t count = 0;
  for (std::size_t pos = 0;
       (pos = corner.output.find("(tight)", pos)) != std::string::npos; ++pos)
    ++count;
  CHECK(count == 3);

  auto outside = run_cli("region 1 0 1");
  CHECK(outside.exit_code == 1);
  CHECK(outside.output.find("outside") != std::string::npos);

  CHECK(run_cli("region -1/2 0 0").exit_code == 2);
  CHECK(run_cli("region x y z").exit_code == 2);
}

TEST_CASE("a JSON config file supplies defaults, flags still win") {
  std::string cfg = tmp_path("config.json");
  {
    std::ofstream out(cfg);
    out << R"({"trials": 4, "seed": 9, "grid": [1e4, 1e6, 1e8]})";
  }
  std::string out_a = tmp_path("cfg_a.csv"), out_b = tmp_path("cfg_b.csv");
  CHECK(run_cli("sweep pd22 --config " + cfg + " --out " + out_a).exit_code == 0);
  CHECK(run_cli("sweep pd22 --trials 4 --seed 9 --out " + out_b).exit_code == 0);
  CHECK(slurp(out_a) == slurp(out_b));
  // An explicit flag overrides the file value.
  std::string out_c = tmp_path("cfg_c.csv");
  CHECK(run_cli("sweep pd22 --config " + cfg + " --seed 10 --out " + out_c)
            .exit_code == 0);
  CHECK(slurp(out_a) != slurp(out_c));
  CHECK(run_cli("sweep pd22 --config missing.json").exit_code == 2);
  for (const auto& p : {cfg, out_a, out_b, out_c}) std::remove(p.c_str());
}
