// doflab: run, verify and sweep the hybrid-CSIT broadcast schemes.
//
// Exit codes: 0 pass, 1 property failure, 2 usage or configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "doflab/decoding.hpp"
#include "doflab/dof_lab.hpp"
#include "doflab/schemes.hpp"
#include "json.hpp"

namespace {

using namespace doflab;

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open output file '" + path + "'");
  out << content;
}

/// Optional JSON run configuration; explicit flags win over file values.
struct FileConfig {
  nlohmann::json j;

  static FileConfig load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    FileConfig cfg;
    try {
      cfg.j = nlohmann::json::parse(ss.str());
    } catch (const nlohmann::json::exception& e) {
      throw InvalidInput(std::string("config file: ") + e.what());
    }
    return cfg;
  }

  template <class T>
  void fill(const CLI::Option* opt, const char* key, T& value) const {
    if (opt->count() == 0 && j.contains(key)) value = j.at(key).get<T>();
  }
};

const SchemeDef& scheme_or_throw(const std::string& name) {
  const SchemeDef* s = schemes::find(name);
  if (!s) throw InvalidInput("unknown scheme '" + name + "' (see list-schemes)");
  return *s;
}

int cmd_list_schemes() {
  std::printf("%-16s %-7s %-6s %4s %8s  %s\n", "scheme", "(M,K)", "CSIT", "T",
              "sum DoF", "per-receiver / per-pair");
  for (const SchemeDef& s : schemes::registry()) {
    const auto& d = s.desc;
    std::string mk = "(" + std::to_string(d.tx) + "," + std::to_string(d.rx) + ")";
    std::printf("%-16s %-7s %-6s %4zu %8s  %s\n", d.name.c_str(), mk.c_str(),
                d.csit.str().c_str(), d.slots,
                rat_to_string(d.claimed.sum()).c_str(), d.claimed.str().c_str());
  }
  return kExitPass;
}

int cmd_verify(const std::string& name, int trials, std::uint64_t seed,
               bool inject, int workers, const std::string& out_path) {
  const SchemeDef& scheme = scheme_or_throw(name);
  VerifyResult res = verify_decodability(scheme, trials, seed, inject, workers);
  std::printf("verify %s: %d/%d seeds decodable, CSIT audit %s\n",
              res.scheme.c_str(), res.passes, res.trials,
              res.audit_clean ? "clean" : "VIOLATED");
  if (res.first_failure) {
    const VerifyFailure& f = *res.first_failure;
    std::printf("first failure: seed %llu, receiver %zu (%s)\n",
                static_cast<unsigned long long>(f.seed), f.receiver + 1,
                f.detail.c_str());
    for (const std::string& id : f.missing)
      std::printf("  undecodable: %s\n", id.c_str());
  }
  if (!out_path.empty()) {
    nlohmann::json j;
    j["scheme"] = res.scheme;
    j["trials"] = res.trials;
    j["passes"] = res.passes;
    j["seed0"] = seed;
    j["inject_degenerate"] = inject;
    j["audit_clean"] = res.audit_clean;
    if (res.first_failure) {
      j["first_failure"] = {{"seed", res.first_failure->seed},
                            {"receiver", res.first_failure->receiver + 1},
                            {"missing", res.first_failure->missing},
                            {"detail", res.first_failure->detail}};
    }
    write_file(out_path, j.dump(2) + "\n");
  }
  return res.all_pass() ? kExitPass : kExitFailure;
}

int cmd_sweep(const std::string& name, const std::vector<double>& grid,
              int trials, std::uint64_t seed, int workers,
              const std::string& out_path, const std::string& format) {
  const SchemeDef& scheme = scheme_or_throw(name);
  if (format != "csv" && format != "json")
    throw InvalidInput("format must be csv or json");
  SweepResult res = fit_dof(scheme, grid, trials, seed, workers);
  double claimed = counting_dof(scheme).sum().get_d();
  double err = std::abs(res.slope - claimed);
  std::printf("sweep %s: slope %.4f vs counting %s (|err| %.4f, tol %.2f)",
              res.scheme.c_str(), res.slope,
              rat_to_string(counting_dof(scheme).sum()).c_str(), err, kSlopeTol);
  if (res.excluded > 0) std::printf(", %d trials excluded", res.excluded);
  std::printf("\n");
  std::string payload = format == "csv" ? sweep_to_csv(res) : sweep_to_json(res);
  if (!out_path.empty())
    write_file(out_path, payload);
  else
    std::fputs(payload.c_str(), stdout);
  return err <= kSlopeTol ? kExitPass : kExitFailure;
}

int cmd_region(const std::string& d12, const std::string& d23,
               const std::string& d13) {
  RegionReport rep = region_check(rat_from_string(d12), rat_from_string(d23),
                                  rat_from_string(d13));
  static const char* names[3] = {"d12 + d13 <= 1", "2(d12 + d23) + d13 <= 2",
                                 "d12 + 2(d23 + d13) <= 2"};
  for (std::size_t i = 0; i < 3; ++i)
    std::printf("%-26s lhs = %-8s%s\n", names[i],
                rat_to_string(rep.lhs[i]).c_str(),
                rep.tight[i] ? " (tight)" : "");
  std::printf("point is %s the order-2 region\n",
              rep.inside ? "inside" : "outside");
  return rep.inside ? kExitPass : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid-CSIT MISO broadcast-channel DoF laboratory"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list-schemes", "print the scheme registry");

  std::string v_scheme, v_out, v_config;
  int v_trials = kDefaultVerifyTrials;
  std::uint64_t v_seed = 0;
  int v_workers = 0;
  bool v_inject = false;
  auto* verify = app.add_subcommand(
      "verify", "exact-mode decodability + causality audit over many seeds");
  verify->add_option("scheme", v_scheme, "scheme name")->required();
  auto* vo_trials = verify->add_option("--trials", v_trials, "number of seeds");
  auto* vo_seed = verify->add_option("--seed", v_seed, "base seed");
  verify->add_flag("--inject-degenerate", v_inject,
                   "duplicate receiver 1's channel onto receiver 2");
  auto* vo_out = verify->add_option("--out", v_out, "write a JSON report here");
  auto* vo_workers = verify->add_option("--workers", v_workers, "worker threads");
  verify->add_option("--config", v_config, "JSON run configuration file");

  std::string s_scheme, s_out, s_format = "csv", s_config;
  std::vector<double> s_grid;
  int s_trials = kDefaultSweepTrials;
  std::uint64_t s_seed = 0;
  int s_workers = 0;
  auto* sweep = app.add_subcommand(
      "sweep", "floating-mode SNR sweep with sum-rate slope fit");
  sweep->add_option("scheme", s_scheme, "scheme name")->required();
  auto* so_grid =
      sweep->add_option("--grid", s_grid, "power grid, e.g. 1e4,1e6,1e8")
          ->delimiter(',');
  auto* so_trials = sweep->add_option("--trials", s_trials, "number of draws");
  auto* so_seed = sweep->add_option("--seed", s_seed, "base seed");
  auto* so_out = sweep->add_option("--out", s_out, "output path");
  auto* so_format =
      sweep->add_option("--format", s_format, "csv or json")->capture_default_str();
  auto* so_workers = sweep->add_option("--workers", s_workers, "worker threads");
  sweep->add_option("--config", s_config, "JSON run configuration file");

  std::string r1, r2, r3;
  auto* region = app.add_subcommand(
      "region", "exact order-2 region membership for (d12, d23, d13)");
  region->add_option("d12", r1)->required();
  region->add_option("d23", r2)->required();
  region->add_option("d13", r3)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (list->parsed()) return cmd_list_schemes();
    if (verify->parsed()) {
      if (!v_config.empty()) {
        FileConfig cfg = FileConfig::load(v_config);
        cfg.fill(vo_trials, "trials", v_trials);
        cfg.fill(vo_seed, "seed", v_seed);
        cfg.fill(vo_out, "out", v_out);
        cfg.fill(vo_workers, "workers", v_workers);
      }
      return cmd_verify(v_scheme, v_trials, v_seed, v_inject, v_workers, v_out);
    }
    if (sweep->parsed()) {
      if (!s_config.empty()) {
        FileConfig cfg = FileConfig::load(s_config);
        cfg.fill(so_grid, "grid", s_grid);
        cfg.fill(so_trials, "trials", s_trials);
        cfg.fill(so_seed, "seed", s_seed);
        cfg.fill(so_out, "out", s_out);
        cfg.fill(so_format, "format", s_format);
        cfg.fill(so_workers, "workers", s_workers);
      }
      if (s_grid.empty()) s_grid = default_power_grid();
      return cmd_sweep(s_scheme, s_grid, s_trials, s_seed, s_workers, s_out,
                       s_format);
    }
    if (region->parsed()) return cmd_region(r1, r2, r3);
  } catch (const InvalidInput& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const Unsupported& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}
