// Independent re-simulation of a transcript: assemble the antenna-domain
// signal x(t) per slot, then take each receiver's inner product. Exercises a
// different evaluation order than the transcript assembly it checks.
#pragma once

#include <cmath>

#include "doflab/channel.hpp"
#include "doflab/scheme.hpp"

namespace doflab::testing {

template <class S>
Vec<S> simulate_noiseless(const ChannelRealization<S>& real,
                          const Transcript<S>& tr, std::size_t k,
                          const Vec<S>& symbols) {
  Vec<S> out(tr.plans.size(), ScalarOps<S>::zero());
  for (std::size_t t = 0; t < tr.plans.size(); ++t) {
    Vec<S> x(real.tx, ScalarOps<S>::zero());
    const auto& beams = tr.plans[t].beams;
    for (const Beam<S>& bm : beams) {
      S payload = dot(bm.row, symbols);
      if constexpr (ScalarOps<S>::mode == Mode::floating) {
        double amp = 1.0 / std::sqrt(vec_abs_sq(bm.direction) *
                                     vec_abs_sq(bm.row) *
                                     static_cast<double>(beams.size()));
        payload *= S{amp, 0.0};
      }
      for (std::size_t m = 0; m < real.tx; ++m)
        x[m] += bm.direction[m] * payload;
    }
    out[t] = dot(real.at(k, t), x);
  }
  return out;
}

}  // namespace doflab::testing
