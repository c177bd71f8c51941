#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "doflab/decoding.hpp"
#include "doflab/dof_lab.hpp"
#include "doflab/schemes.hpp"
#include "json.hpp"

using namespace doflab;

namespace {

Transcript<QComplex> run_exact(const SchemeDef& s, std::uint64_t seed) {
  auto real = draw_channel_exact(seed, s.desc.tx, s.desc.rx, s.desc.slots);
  return run_scheme(s, real, s.desc.csit);
}

Transcript<CDouble> run_float(const SchemeDef& s, std::uint64_t seed) {
  auto real = draw_channel_float(seed, s.desc.tx, s.desc.rx, s.desc.slots);
  return run_scheme(s, real, s.desc.csit);
}

}  // namespace

TEST_CASE("oracle names the decodable symbols per receiver") {
  auto pd = run_exact(schemes::pd22(), 0);
  CHECK(oracle_decodable(pd, 0) == std::vector<std::string>{"a1", "a2"});
  CHECK(oracle_decodable(pd, 1) == std::vector<std::string>{"b"});
  CHECK_THROWS_AS(oracle_decodable(pd, 5), InvalidInput);

  auto ppd = run_exact(schemes::ppd33(), 0);
  CHECK(oracle_decodable(ppd, 2) == std::vector<std::string>{"c"});
}

TEST_CASE("zf_rate: zero power gives zero rate, and rate keeps growing") {
  auto tr = run_float(schemes::pd22(), 1);
  CHECK(zf_rate(tr, 0, 0.0) == 0.0);
  double r6 = zf_rate(tr, 0, 1e6);
  double r12 = zf_rate(tr, 0, 1e12);
  CHECK(r6 > 0.0);
  CHECK(r12 > r6 + 5.0);  // ~ d_1 * 20 more bits of log2 P
  CHECK_THROWS_AS(zf_rate(tr, 0, -1.0), InvalidInput);
}

TEST_CASE("zf_rate is nondecreasing along a geometric power grid") {
  for (const char* name : {"pd22", "pdd23", "ppd33"}) {
    auto scheme = *schemes::find(name);
    CAPTURE(name);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto tr = run_float(scheme, seed);
      for (std::size_t k = 0; k < scheme.desc.rx; ++k) {
        double prev = 0.0;
        for (double p = 1.0; p <= 1e10; p *= 10.0) {
          double r = zf_rate(tr, k, p);
          CHECK(r >= prev);
          prev = r;
        }
      }
    }
  }
}

TEST_CASE("pdd23 receiver-1 rate fixture and near-unit slope") {
  // Seed-averaged over 50 draws at P_T = 1e6; value pinned as a regression
  // fixture (recomputed value must stay put to 1e-9 relative).
  const int trials = 50;
  auto scheme = schemes::pdd23();
  std::vector<double> grid = {1e4, 1e6, 1e8};
  std::vector<double> mean(grid.size(), 0.0);
  for (std::uint64_t seed = 0; seed < trials; ++seed) {
    auto tr = run_float(scheme, seed);
    for (std::size_t p = 0; p < grid.size(); ++p)
      mean[p] += zf_rate(tr, 0, grid[p]) / trials;
  }
  CHECK(mean[1] == doctest::Approx(16.4940416261).epsilon(1e-9));
  double slope = (mean[2] - mean[0]) / (std::log2(1e8) - std::log2(1e4));
  CHECK(slope == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("dropping any delivery slot of pdd23 breaks some receiver") {
  auto tr = run_exact(schemes::pdd23(), 4);
  REQUIRE(oracle_report(tr).all_pass);
  for (std::size_t t = 8; t < 12; ++t) {
    CAPTURE(t);
    CHECK_FALSE(oracle_report(drop_slot(tr, t)).all_pass);
  }
}

TEST_CASE("dropping ppd33's last slot breaks some receiver") {
  auto tr = run_exact(schemes::ppd33(), 4);
  REQUIRE(oracle_report(tr).all_pass);
  CHECK_FALSE(oracle_report(drop_slot(tr, 3)).all_pass);
}

TEST_CASE("zero-forcing on an undecodable transcript propagates") {
  auto tr = run_float(schemes::pdd23(), 4);
  auto crippled = drop_slot(tr, 9);
  CHECK_FALSE(zf_gains(crippled, 0).has_value());
  CHECK_THROWS_AS(zf_rate(crippled, 0, 1e6), DegenerateChannel);
}

TEST_CASE("decode report serializes with per-receiver detail") {
  auto rep = oracle_report(run_exact(schemes::ppd33(), 0));
  auto j = nlohmann::json::parse(report_to_json(rep));
  CHECK(j["scheme"] == "ppd33");
  CHECK(j["all_pass"] == true);
  CHECK(j["receivers"].size() == 3);
  CHECK(j["receivers"][2]["decodable"] == nlohmann::json::array({"c"}));
  CHECK(j["receivers"][0]["all_targets"] == true);
}
