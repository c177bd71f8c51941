#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "doflab/decoding.hpp"
#include "doflab/scheme.hpp"

namespace doflab {

/// Acceptance tolerance for fitted sum-rate slopes against exact counting.
inline constexpr double kSlopeTol = 0.05;

/// Default sweep grid {1e4, 1e6, 1e8}: high enough that O(1) rate offsets
/// perturb a three-point log-linear fit well below kSlopeTol.
std::vector<double> default_power_grid();

inline constexpr int kDefaultVerifyTrials = 100;
inline constexpr int kDefaultSweepTrials = 50;

struct VerifyFailure {
  std::uint64_t seed = 0;
  std::size_t receiver = 0;  // 0-based
  std::vector<std::string> missing;
  std::string detail;
};

struct VerifyResult {
  std::string scheme;
  int trials = 0;
  int passes = 0;
  bool audit_clean = true;
  std::optional<VerifyFailure> first_failure;

  bool all_pass() const { return passes == trials && audit_clean; }
};

/// Runs `trials` exact-mode draws (seeds seed0, seed0+1, ...), executes the
/// scheme and counts the runs where every receiver's declared targets are
/// oracle-decodable and the causality audit is clean. `inject_degenerate`
/// overwrites receiver 2's channel with receiver 1's before each run.
VerifyResult verify_decodability(const SchemeDef& scheme, int trials,
                                 std::uint64_t seed0,
                                 bool inject_degenerate = false,
                                 int workers = 0);

struct SweepPoint {
  double p_t = 0.0;
  double sum_rate = 0.0;               // symbols counted once (min over audience)
  std::vector<double> per_receiver;    // each receiver's decoded rate
};

struct SweepResult {
  std::string scheme;
  std::vector<double> grid;
  int trials = 0;
  int excluded = 0;  // trials dropped for an infeasible zero-forcer
  std::vector<SweepPoint> points;
  double slope = 0.0;  // d(mean sum rate)/d(log2 P_T), least squares
  std::vector<double> receiver_slopes;
  double residual = 0.0;  // RMS deviation from the linear fit
};

/// Monte-Carlo SNR sweep in floating mode with least-squares slope fit. The
/// grid must have at least three strictly increasing points. Trials are
/// distributed over a worker pool; per-trial seeds are seed0+i, so the result
/// is identical for any worker count.
SweepResult fit_dof(const SchemeDef& scheme, const std::vector<double>& p_grid,
                    int trials, std::uint64_t seed0, int workers = 0);

/// CSV schema: scheme,P_T,trial_mean_sum_rate,r1,r2,r3,slope_fit
std::string sweep_to_csv(const SweepResult& r);
std::string sweep_to_json(const SweepResult& r);

struct RegionReport {
  bool inside = false;
  std::array<bool, 3> tight{};  // which constraints hold with equality
  std::array<Rat, 3> lhs{};     // left-hand sides, exact
};

/// Exact membership test for the order-2 triple (d12, d23, d13) against
///   d12 + d13 <= 1
///   2(d12 + d23) + d13 <= 2
///   d12 + 2(d23 + d13) <= 2.
RegionReport region_check(const Rat& d12, const Rat& d23, const Rat& d13);

/// Known sum-DoF ceilings: PDD(2,3) -> 5/3, PDD(3,3) -> 17/9,
/// PPD(3,3) -> 7/3. std::nullopt for configurations without a recorded bound.
std::optional<Rat> dof_upper_bound(const CsitConfig& cfg, std::size_t tx,
                                   std::size_t rx);

/// True iff the achieved sum respects the recorded ceiling; throws
/// Unsupported when no ceiling is recorded for the configuration.
bool bound_check(const CsitConfig& cfg, std::size_t tx, std::size_t rx,
                 const Rat& sum_dof);

}  // namespace doflab
