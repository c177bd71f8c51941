#include "doflab/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "doflab/numerics.hpp"
#include "json.hpp"

namespace doflab {

CsitConfig CsitConfig::parse(std::string_view text) {
  CsitConfig cfg;
  cfg.states.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'P':
      case 'p':
        cfg.states.push_back(CsitState::perfect);
        break;
      case 'D':
      case 'd':
        cfg.states.push_back(CsitState::delayed);
        break;
      default:
        throw InvalidInput("CsitConfig: only P/D states exist");
    }
  }
  if (cfg.states.empty()) throw InvalidInput("CsitConfig: empty");
  return cfg;
}

std::string CsitConfig::str() const {
  std::string s;
  for (CsitState st : states) s += st == CsitState::perfect ? 'P' : 'D';
  return s;
}

namespace {

// All draws come straight from mt19937_64 outputs so realizations are
// bit-reproducible across platforms and standard-library versions.
Rat draw_rat(std::mt19937_64& rng) {
  // 17 low bits give a bias-free uniform over 2*2^16 values.
  std::uint64_t u = rng() & 0x1FFFF;
  long num = u < 65536 ? static_cast<long>(u) + 1
                       : -(static_cast<long>(u) - 65536 + 1);
  return rat_of(num, 256);
}

double draw_unit_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
}

CDouble draw_cgauss(std::mt19937_64& rng) {
  // Box-Muller; the pair (cos, sin) at radius sqrt(-ln u) gives
  // independent N(0, 1/2) parts, i.e. a standard CN(0,1) sample.
  double u1 = draw_unit_open(rng);
  double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  double r = std::sqrt(-std::log(u1));
  double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace

ChannelRealization<QComplex> draw_channel_exact(std::uint64_t seed,
                                                std::size_t tx, std::size_t rx,
                                                std::size_t slots) {
  if (tx == 0 || rx == 0 || slots == 0)
    throw InvalidInput("draw_channel: dimensions must be >= 1");
  ChannelRealization<QComplex> real;
  real.tx = tx;
  real.rx = rx;
  real.slots = slots;
  real.seed = seed;
  real.h.assign(rx * slots, Vec<QComplex>(tx));
  std::mt19937_64 rng(seed);
  const std::size_t want = std::min(rx, tx);
  for (std::size_t t = 0; t < slots; ++t) {
    for (;;) {
      for (std::size_t k = 0; k < rx; ++k)
        for (std::size_t m = 0; m < tx; ++m)
          real.at(k, t)[m] = QComplex{draw_rat(rng), draw_rat(rng)};
      if (want == 1) break;
      std::vector<Vec<QComplex>> slot_rows;
      slot_rows.reserve(rx);
      for (std::size_t k = 0; k < rx; ++k) slot_rows.push_back(real.at(k, t));
      if (rank(Mat<QComplex>::from_rows(slot_rows)) == want) break;
      // Measure-zero degeneracy: redraw the whole slot.
    }
  }
  return real;
}

ChannelRealization<CDouble> draw_channel_float(std::uint64_t seed,
                                               std::size_t tx, std::size_t rx,
                                               std::size_t slots) {
  if (tx == 0 || rx == 0 || slots == 0)
    throw InvalidInput("draw_channel: dimensions must be >= 1");
  ChannelRealization<CDouble> real;
  real.tx = tx;
  real.rx = rx;
  real.slots = slots;
  real.seed = seed;
  real.h.assign(rx * slots, Vec<CDouble>(tx));
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < slots; ++t)
    for (std::size_t k = 0; k < rx; ++k)
      for (std::size_t m = 0; m < tx; ++m) real.at(k, t)[m] = draw_cgauss(rng);
  return real;
}

namespace {

using nlohmann::json;

template <class S>
json channel_header(const ChannelRealization<S>& real) {
  json j;
  j["M"] = real.tx;
  j["K"] = real.rx;
  j["T"] = real.slots;
  j["seed"] = real.seed;
  j["mode"] = to_string(ChannelRealization<S>::mode);
  return j;
}

json entry_to_json(const QComplex& v) {
  return json::array({rat_to_string(v.re), rat_to_string(v.im)});
}

json entry_to_json(const CDouble& v) { return json::array({v.real(), v.imag()}); }

template <class S>
json grid_to_json(const ChannelRealization<S>& real) {
  json grid = json::array();
  for (std::size_t k = 0; k < real.rx; ++k) {
    json per_slot = json::array();
    for (std::size_t t = 0; t < real.slots; ++t) {
      json row = json::array();
      for (std::size_t m = 0; m < real.tx; ++m)
        row.push_back(entry_to_json(real.at(k, t)[m]));
      per_slot.push_back(std::move(row));
    }
    grid.push_back(std::move(per_slot));
  }
  return grid;
}

}  // namespace

std::string channel_to_json(const ChannelRealization<QComplex>& real) {
  json j = channel_header(real);
  j["h"] = grid_to_json(real);
  return j.dump();
}

std::string channel_to_json(const ChannelRealization<CDouble>& real) {
  json j = channel_header(real);
  j["h"] = grid_to_json(real);
  return j.dump();
}

AnyChannel channel_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("channel fixture: bad JSON: ") + e.what());
  }
  try {
    std::size_t tx = j.at("M").get<std::size_t>();
    std::size_t rx = j.at("K").get<std::size_t>();
    std::size_t slots = j.at("T").get<std::size_t>();
    std::uint64_t seed = j.at("seed").get<std::uint64_t>();
    std::string mode = j.at("mode").get<std::string>();
    const json& grid = j.at("h");
    if (grid.size() != rx) throw InvalidInput("channel fixture: bad K");
    auto fill = [&](auto& real) {
      real.tx = tx;
      real.rx = rx;
      real.slots = slots;
      real.seed = seed;
      using S = std::decay_t<decltype(real.h.front().front())>;
      real.h.assign(rx * slots, Vec<S>(tx));
      for (std::size_t k = 0; k < rx; ++k) {
        if (grid[k].size() != slots) throw InvalidInput("channel fixture: bad T");
        for (std::size_t t = 0; t < slots; ++t) {
          if (grid[k][t].size() != tx)
            throw InvalidInput("channel fixture: bad M");
          for (std::size_t m = 0; m < tx; ++m) {
            const json& e = grid[k][t][m];
            if constexpr (std::is_same_v<S, QComplex>) {
              real.at(k, t)[m] =
                  QComplex{rat_from_string(e.at(0).get<std::string>()),
                           rat_from_string(e.at(1).get<std::string>())};
            } else {
              real.at(k, t)[m] =
                  CDouble{e.at(0).get<double>(), e.at(1).get<double>()};
            }
          }
        }
      }
    };
    if (mode == "exact") {
      ChannelRealization<QComplex> real;
      fill(real);
      return real;
    }
    if (mode == "float") {
      ChannelRealization<CDouble> real;
      fill(real);
      return real;
    }
    throw InvalidInput("channel fixture: unknown mode '" + mode + "'");
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("channel fixture: missing field: ") +
                       e.what());
  }
}

}  // namespace doflab
