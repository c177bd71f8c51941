#include "doflab/dof_lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "json.hpp"

namespace doflab {

std::vector<double> default_power_grid() { return {1e4, 1e6, 1e8}; }

namespace {

/// Index-sharded worker pool. Results land in per-index slots and every
/// reduction below walks them in index order, so the outcome is independent
/// of scheduling and worker count.
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t count = workers > 0 ? static_cast<std::size_t>(workers)
                                  : std::min<std::size_t>(hw ? hw : 1, 8);
  count = std::min(count, n);
  if (count <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(count);
  for (std::size_t w = 0; w < count; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct LineFit {
  double slope = 0.0;
  double residual = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  double intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double e = y[i] - (f.slope * x[i] + intercept);
    ss += e * e;
  }
  f.residual = std::sqrt(ss / static_cast<double>(n));
  return f;
}

}  // namespace

VerifyResult verify_decodability(const SchemeDef& scheme, int trials,
                                 std::uint64_t seed0, bool inject_degenerate,
                                 int workers) {
  if (trials < 1) throw InvalidInput("verify: trials must be >= 1");
  struct TrialOutcome {
    bool pass = false;
    bool audit_clean = true;
    std::optional<VerifyFailure> failure;
  };
  std::vector<TrialOutcome> outcomes(trials);
  const SchemeDescriptor& d = scheme.desc;
  parallel_for(static_cast<std::size_t>(trials), workers, [&](std::size_t i) {
    std::uint64_t seed = seed0 + i;
    TrialOutcome& out = outcomes[i];
    try {
      auto real = draw_channel_exact(seed, d.tx, d.rx, d.slots);
      if (inject_degenerate && d.rx >= 2) duplicate_receiver_channel(real, 0, 1);
      auto tr = run_scheme(scheme, real, d.csit);
      out.audit_clean = tr.audit.clean();
      DecodeReport rep = oracle_report(tr);
      out.pass = rep.all_pass && out.audit_clean;
      if (!out.pass) {
        VerifyFailure f;
        f.seed = seed;
        for (const auto& r : rep.receivers) {
          if (!r.all_targets) {
            f.receiver = r.receiver;
            f.missing = r.undecodable;
            break;
          }
        }
        f.detail = out.audit_clean ? "targets not oracle-decodable"
                                   : "CSIT audit has violations";
        out.failure = std::move(f);
      }
    } catch (const Error& e) {
      out.pass = false;
      out.failure = VerifyFailure{seed, 0, {}, e.what()};
    }
  });
  VerifyResult res;
  res.scheme = d.name;
  res.trials = trials;
  for (const TrialOutcome& out : outcomes) {
    if (out.pass) ++res.passes;
    res.audit_clean = res.audit_clean && out.audit_clean;
    if (!res.first_failure && out.failure) res.first_failure = out.failure;
  }
  return res;
}

SweepResult fit_dof(const SchemeDef& scheme, const std::vector<double>& p_grid,
                    int trials, std::uint64_t seed0, int workers) {
  if (p_grid.size() < 3)
    throw InvalidInput("fit_dof: need at least 3 grid points");
  for (std::size_t i = 1; i < p_grid.size(); ++i)
    if (p_grid[i] <= p_grid[i - 1])
      throw InvalidInput("fit_dof: grid must be strictly increasing");
  if (trials < 1) throw InvalidInput("fit_dof: trials must be >= 1");

  const SchemeDescriptor& d = scheme.desc;
  const std::size_t points = p_grid.size();
  const std::size_t symbols = d.ledger.size();

  // noise_amp[i][k] indexed by target position within receiver k's list.
  struct TrialData {
    bool feasible = false;
    std::vector<std::vector<double>> noise_amp;
  };
  std::vector<TrialData> data(trials);
  parallel_for(static_cast<std::size_t>(trials), workers, [&](std::size_t i) {
    auto real = draw_channel_float(seed0 + i, d.tx, d.rx, d.slots);
    auto tr = run_scheme(scheme, real, d.csit);
    TrialData& td = data[i];
    td.noise_amp.resize(d.rx);
    td.feasible = true;
    for (std::size_t k = 0; k < d.rx; ++k) {
      auto gains = zf_gains(tr, k);
      if (!gains) {
        td.feasible = false;
        return;
      }
      td.noise_amp[k] = std::move(gains->noise_amp);
    }
  });

  // Per-symbol stream rate at receiver k; symbols shared by several
  // receivers count once in the sum, at the weakest audience member.
  std::vector<std::vector<int>> stream_of(d.rx, std::vector<int>(symbols, -1));
  for (std::size_t k = 0; k < d.rx; ++k) {
    auto idx = d.target_indices(k);
    for (std::size_t i = 0; i < idx.size(); ++i)
      stream_of[k][idx[i]] = static_cast<int>(i);
  }

  SweepResult res;
  res.scheme = d.name;
  res.grid = p_grid;
  res.trials = trials;
  std::vector<double> sum_acc(points, 0.0);
  std::vector<std::vector<double>> rx_acc(points,
                                          std::vector<double>(d.rx, 0.0));
  int included = 0;
  const double slots = static_cast<double>(d.slots);
  for (const TrialData& td : data) {
    if (!td.feasible) {
      ++res.excluded;
      continue;
    }
    ++included;
    for (std::size_t p = 0; p < points; ++p) {
      double pt = p_grid[p];
      auto stream_rate = [&](std::size_t k, std::size_t s) {
        double amp = td.noise_amp[k][static_cast<std::size_t>(stream_of[k][s])];
        return std::log2(1.0 + (amp > 0.0 ? pt / amp : 0.0)) / slots;
      };
      for (std::size_t s = 0; s < symbols; ++s) {
        double symbol_rate = -1.0;
        for (std::size_t k : d.ledger[s].audience) {
          if (stream_of[k][s] < 0) continue;
          double r = stream_rate(k, s);
          rx_acc[p][k] += r;
          if (symbol_rate < 0.0 || r < symbol_rate) symbol_rate = r;
        }
        if (symbol_rate > 0.0) sum_acc[p] += symbol_rate;
      }
    }
  }
  if (included == 0)
    throw DegenerateChannel("fit_dof: every trial had an infeasible zero-forcer");

  std::vector<double> xs(points);
  std::vector<double> ys(points);
  res.points.resize(points);
  for (std::size_t p = 0; p < points; ++p) {
    res.points[p].p_t = p_grid[p];
    res.points[p].sum_rate = sum_acc[p] / included;
    res.points[p].per_receiver.resize(d.rx);
    for (std::size_t k = 0; k < d.rx; ++k)
      res.points[p].per_receiver[k] = rx_acc[p][k] / included;
    xs[p] = std::log2(p_grid[p]);
    ys[p] = res.points[p].sum_rate;
  }
  LineFit f = fit_line(xs, ys);
  res.slope = f.slope;
  res.residual = f.residual;
  res.receiver_slopes.resize(d.rx);
  for (std::size_t k = 0; k < d.rx; ++k) {
    std::vector<double> yk(points);
    for (std::size_t p = 0; p < points; ++p)
      yk[p] = res.points[p].per_receiver[k];
    res.receiver_slopes[k] = fit_line(xs, yk).slope;
  }
  return res;
}

std::string sweep_to_csv(const SweepResult& r) {
  std::string csv = "scheme,P_T,trial_mean_sum_rate,r1,r2,r3,slope_fit\n";
  for (const SweepPoint& p : r.points) {
    csv += r.scheme;
    csv += ',';
    csv += fmt_double(p.p_t);
    csv += ',';
    csv += fmt_double(p.sum_rate);
    for (std::size_t k = 0; k < 3; ++k) {
      csv += ',';
      csv += fmt_double(k < p.per_receiver.size() ? p.per_receiver[k] : 0.0);
    }
    csv += ',';
    csv += fmt_double(r.slope);
    csv += '\n';
  }
  return csv;
}

std::string sweep_to_json(const SweepResult& r) {
  nlohmann::json j;
  j["scheme"] = r.scheme;
  j["grid"] = r.grid;
  j["trials"] = r.trials;
  j["excluded"] = r.excluded;
  j["slope_fit"] = r.slope;
  j["receiver_slopes"] = r.receiver_slopes;
  j["residual"] = r.residual;
  nlohmann::json pts = nlohmann::json::array();
  for (const SweepPoint& p : r.points) {
    nlohmann::json e;
    e["P_T"] = p.p_t;
    e["trial_mean_sum_rate"] = p.sum_rate;
    e["per_receiver"] = p.per_receiver;
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  return j.dump(2);
}

RegionReport region_check(const Rat& d12, const Rat& d23, const Rat& d13) {
  if (sgn(d12) < 0 || sgn(d23) < 0 || sgn(d13) < 0)
    throw InvalidInput("region_check: components must be nonnegative");
  RegionReport rep;
  rep.lhs = {d12 + d13, 2 * (d12 + d23) + d13, d12 + 2 * (d23 + d13)};
  const std::array<Rat, 3> rhs = {Rat(1), Rat(2), Rat(2)};
  rep.inside = true;
  for (std::size_t i = 0; i < 3; ++i) {
    if (rep.lhs[i] > rhs[i]) rep.inside = false;
    rep.tight[i] = rep.lhs[i] == rhs[i];
  }
  return rep;
}

std::optional<Rat> dof_upper_bound(const CsitConfig& cfg, std::size_t tx,
                                   std::size_t rx) {
  const std::string s = cfg.str();
  if (s == "PDD" && tx == 2 && rx == 3) return rat_of(5, 3);
  if (s == "PDD" && tx == 3 && rx == 3) return rat_of(17, 9);
  if (s == "PPD" && tx == 3 && rx == 3) return rat_of(7, 3);
  return std::nullopt;
}

bool bound_check(const CsitConfig& cfg, std::size_t tx, std::size_t rx,
                 const Rat& sum_dof) {
  auto bound = dof_upper_bound(cfg, tx, rx);
  if (!bound)
    throw Unsupported("bound_check: no recorded ceiling for " + cfg.str() +
                      "(" + std::to_string(tx) + "," + std::to_string(rx) + ")");
  return sum_dof <= *bound;
}

}  // namespace doflab
