#include "doflab/decoding.hpp"

#include <algorithm>
#include <cmath>

#include "doflab/numerics.hpp"
#include "json.hpp"

namespace doflab {

std::vector<std::string> oracle_decodable(const Transcript<QComplex>& tr,
                                          std::size_t k) {
  if (k >= tr.desc.rx) throw InvalidInput("oracle_decodable: bad receiver");
  const Mat<QComplex>& g = tr.obs[k];
  const std::size_t base = rank(g);
  std::vector<std::string> out;
  for (const std::string& id : tr.desc.targets[k]) {
    std::size_t col = tr.desc.symbol_index(id);
    // e_col in rowspace(G) <=> appending it does not raise the rank.
    Mat<QComplex> aug(g.rows() + 1, g.cols());
    for (std::size_t r = 0; r < g.rows(); ++r)
      for (std::size_t c = 0; c < g.cols(); ++c) aug.at(r, c) = g.at(r, c);
    aug.at(g.rows(), col) = ScalarOps<QComplex>::one();
    if (rank(aug) == base) out.push_back(id);
  }
  return out;
}

DecodeReport oracle_report(const Transcript<QComplex>& tr) {
  DecodeReport rep;
  rep.scheme = tr.desc.name;
  rep.mode = Mode::exact;
  rep.all_pass = true;
  for (std::size_t k = 0; k < tr.desc.rx; ++k) {
    ReceiverReport r;
    r.receiver = k;
    r.decodable = oracle_decodable(tr, k);
    for (const std::string& id : tr.desc.targets[k])
      if (std::find(r.decodable.begin(), r.decodable.end(), id) ==
          r.decodable.end())
        r.undecodable.push_back(id);
    // Joint criterion over the whole declared target set.
    auto idx = tr.desc.target_indices(k);
    std::sort(idx.begin(), idx.end());
    const Mat<QComplex>& g = tr.obs[k];
    std::size_t r_all = rank(g);
    std::size_t r_intf =
        idx.size() == g.cols() ? 0 : rank(g.without_cols(idx));
    r.all_targets = r.undecodable.empty() && r_all == r_intf + idx.size();
    rep.all_pass = rep.all_pass && r.all_targets;
    rep.receivers.push_back(std::move(r));
  }
  return rep;
}

std::optional<ZfGains> zf_gains(const Transcript<CDouble>& tr, std::size_t k) {
  if (k >= tr.desc.rx) throw InvalidInput("zf_gains: bad receiver");
  auto idx = tr.desc.target_indices(k);
  auto w = solve_zero_forcer(tr.obs[k], idx);
  if (!w) return std::nullopt;
  ZfGains gains;
  gains.symbols = tr.desc.targets[k];
  gains.noise_amp.reserve(idx.size());
  for (std::size_t i = 0; i < w->rows(); ++i) {
    double amp = 0.0;
    for (std::size_t j = 0; j < w->cols(); ++j) amp += std::norm(w->at(i, j));
    gains.noise_amp.push_back(amp);
  }
  return gains;
}

double zf_rate(const Transcript<CDouble>& tr, std::size_t k, double p_t) {
  if (p_t < 0.0) throw InvalidInput("zf_rate: negative power");
  auto gains = zf_gains(tr, k);
  if (!gains)
    throw DegenerateChannel("zf_rate: no zero-forcer for receiver " +
                            std::to_string(k + 1));
  double rate = 0.0;
  for (double amp : gains->noise_amp)
    rate += std::log2(1.0 + (amp > 0.0 ? p_t / amp : 0.0));
  return rate / static_cast<double>(tr.desc.slots);
}

std::string report_to_json(const DecodeReport& report) {
  nlohmann::json j;
  j["scheme"] = report.scheme;
  j["mode"] = to_string(report.mode);
  j["all_pass"] = report.all_pass;
  nlohmann::json rs = nlohmann::json::array();
  for (const ReceiverReport& r : report.receivers) {
    nlohmann::json e;
    e["receiver"] = r.receiver + 1;
    e["decodable"] = r.decodable;
    e["undecodable"] = r.undecodable;
    e["all_targets"] = r.all_targets;
    rs.push_back(std::move(e));
  }
  j["receivers"] = std::move(rs);
  return j.dump();
}

}  // namespace doflab
