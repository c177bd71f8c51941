#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "doflab/channel.hpp"
#include "doflab/errors.hpp"
#include "doflab/matrix.hpp"
#include "doflab/numerics.hpp"
#include "doflab/scalar.hpp"

namespace doflab {

enum class SymbolOrigin : std::uint8_t { fresh, reconstructed };

/// One information symbol. The audience is the set of receivers the symbol is
/// useful to; its size is the symbol's order (1, 2 or 3). The ledger of a
/// scheme holds fresh symbols only: everything a transmitter re-sends is a
/// fixed linear combination of fresh symbols with channel-dependent
/// coefficients, folded into the per-slot beam rows.
struct Symbol {
  std::string id;
  std::vector<std::size_t> audience;  // receiver indices, ascending
  SymbolOrigin origin = SymbolOrigin::fresh;
};

/// Exact per-receiver DoF values (d_1..d_K), or the order-2 triple
/// (d_12, d_23, d_13) for schemes whose payload is pair symbols.
struct DofTuple {
  enum class Kind : std::uint8_t { per_receiver, per_pair };
  Kind kind = Kind::per_receiver;
  std::vector<Rat> values;

  Rat sum() const {
    Rat s = 0;
    for (const Rat& v : values) s += v;
    return s;
  }
  std::string str() const;

  friend bool operator==(const DofTuple&, const DofTuple&) = default;
};

DofTuple per_receiver_dof(std::initializer_list<Rat> values);
DofTuple per_pair_dof(const Rat& d12, const Rat& d23, const Rat& d13);

struct SchemeDescriptor {
  std::string name;
  std::size_t tx = 0;     // required transmit antennas
  std::size_t rx = 0;     // required receivers
  std::size_t slots = 0;  // slots per block
  CsitConfig csit;        // required feedback configuration
  std::vector<Symbol> ledger;                     // fresh symbols, in order
  std::vector<std::vector<std::string>> targets;  // per receiver, symbol ids
  DofTuple claimed;

  std::size_t symbol_index(std::string_view id) const {
    for (std::size_t i = 0; i < ledger.size(); ++i)
      if (ledger[i].id == id) return i;
    throw InvalidInput("unknown symbol '" + std::string(id) + "'");
  }
  std::vector<std::size_t> target_indices(std::size_t k) const {
    std::vector<std::size_t> idx;
    idx.reserve(targets[k].size());
    for (const auto& id : targets[k]) idx.push_back(symbol_index(id));
    return idx;
  }
};

/// One transmitted stream in one slot: x-contribution
/// direction · (row · s), with `row` over the fresh-symbol vector s. Fresh
/// symbols ride unit rows; reconstructed combinations ride channel-dependent
/// rows.
template <class S>
struct Beam {
  Vec<S> direction;  // length M
  Vec<S> row;        // length = ledger size
  std::string note;
};

template <class S>
struct SlotPlan {
  std::size_t slot = 0;
  std::vector<Beam<S>> beams;
};

namespace detail {

/// Per-beam amplitude in floating mode: unit-normalize direction and row,
/// split power equally across the slot's beams. Keeps E|x(t)|^2 = P_T at
/// P_T = 1 and lets the whole transcript scale by sqrt(P_T).
inline double beam_amplitude(double dir_sq, double row_sq, std::size_t beams) {
  double denom = std::sqrt(dir_sq * row_sq * static_cast<double>(beams));
  return denom > 0.0 ? 1.0 / denom : 1.0;
}

}  // namespace detail

/// Build-time context handed to a scheme. All channel access goes through the
/// slot's causality-gated view and is audited; the true channel never leaks
/// into planning.
template <class S>
class SchemeContext {
 public:
  using Scalar = S;

  SchemeContext(const SchemeDescriptor& desc, const ChannelRealization<S>& real,
                const CsitConfig& cfg, CsitAudit& audit)
      : desc_(&desc), real_(&real), cfg_(&cfg), audit_(&audit) {}

  void begin_slot() {
    if (in_slot_) throw Error("begin_slot: previous slot still open");
    if (next_slot_ >= desc_->slots)
      throw DimensionMismatch(desc_->name + ": more slots than declared");
    in_slot_ = true;
  }

  void end_slot() {
    require_open();
    if (current().beams.empty())
      throw Error(desc_->name + ": slot without beams");
    in_slot_ = false;
    ++next_slot_;
  }

  std::size_t slot() const {
    if (!in_slot_) throw Error("slot(): no slot open");
    return next_slot_;
  }

  /// Gated channel row; throws CsitViolation outside the causality window.
  const Vec<S>& h(std::size_t k, std::size_t tau) {
    require_open();
    return CsitView<S>(*real_, *cfg_, next_slot_, audit_).get(k, tau);
  }

  void beam(Vec<S> direction, Vec<S> row, std::string note = {}) {
    require_open();
    if (direction.size() != desc_->tx)
      throw DimensionMismatch(desc_->name + ": beam direction length");
    if (row.size() != desc_->ledger.size())
      throw DimensionMismatch(desc_->name + ": beam row length");
    if (plans_.size() <= next_slot_) plans_.resize(next_slot_ + 1);
    plans_[next_slot_].slot = next_slot_;
    plans_[next_slot_].beams.push_back(
        Beam<S>{std::move(direction), std::move(row), std::move(note)});
  }

  Vec<S> unit_row(std::string_view id) const {
    Vec<S> row(desc_->ledger.size(), ScalarOps<S>::zero());
    row[desc_->symbol_index(id)] = ScalarOps<S>::one();
    return row;
  }

  Vec<S> axis(std::size_t i) const {
    if (i >= desc_->tx) throw InvalidInput("axis out of range");
    Vec<S> d(desc_->tx, ScalarOps<S>::zero());
    d[i] = ScalarOps<S>::one();
    return d;
  }

  Mat<S> null_projector(const std::vector<Vec<S>>& rows) const {
    return orth_projector(rows, desc_->tx);
  }

  /// Gain of past beam `b` of slot `tau` at receiver `k`: h_k(tau)·direction,
  /// including the beam's transmit amplitude, so it is exactly the
  /// coefficient the receiver saw.
  S gain(std::size_t k, std::size_t tau, std::size_t b) {
    const Vec<S>& hk = h(k, tau);
    return transmit_gain(hk, tau, plan_beam(tau, b));
  }

  /// Receiver k's noiseless observation of a subset of slot tau's beams, as a
  /// row over fresh symbols. This is how a transmitter reconstructs overheard
  /// combinations from delayed feedback; amplitudes are folded in so the row
  /// matches the receiver's observation coefficient for coefficient.
  Vec<S> observed_row(std::size_t k, std::size_t tau,
                      std::span<const std::size_t> beams) {
    const Vec<S>& hk = h(k, tau);
    Vec<S> out(desc_->ledger.size(), ScalarOps<S>::zero());
    for (std::size_t b : beams) {
      const Beam<S>& bm = plan_beam(tau, b);
      S g = transmit_gain(hk, tau, bm);
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += g * bm.row[j];
    }
    return out;
  }
  Vec<S> observed_row(std::size_t k, std::size_t tau,
                      std::initializer_list<std::size_t> beams) {
    return observed_row(k, tau, std::span<const std::size_t>(beams.begin(),
                                                             beams.size()));
  }
  Vec<S> observed_row(std::size_t k, std::size_t tau) {
    if (tau >= plans_.size())
      throw InvalidInput("observed_row: slot not planned yet");
    std::vector<std::size_t> all(plans_[tau].beams.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return observed_row(k, tau, std::span<const std::size_t>(all));
  }

  const std::vector<SlotPlan<S>>& plans() const { return plans_; }
  std::vector<SlotPlan<S>> take_plans() && { return std::move(plans_); }
  std::size_t planned_slots() const { return next_slot_; }
  const SchemeDescriptor& descriptor() const { return *desc_; }

 private:
  void require_open() const {
    if (!in_slot_) throw Error("channel access outside an open slot");
  }
  SlotPlan<S>& current() { return plans_.at(next_slot_); }
  const Beam<S>& plan_beam(std::size_t tau, std::size_t b) const {
    if (tau >= plans_.size() || b >= plans_[tau].beams.size())
      throw InvalidInput("beam reference out of range");
    return plans_[tau].beams[b];
  }
  /// Channel gain times the transmit amplitude the beam actually had.
  S transmit_gain(const Vec<S>& hk, std::size_t tau, const Beam<S>& bm) const {
    S g = dot(hk, bm.direction);
    if constexpr (ScalarOps<S>::mode == Mode::floating) {
      double amp = detail::beam_amplitude(vec_abs_sq(bm.direction),
                                          vec_abs_sq(bm.row),
                                          plans_[tau].beams.size());
      g *= S{amp, 0.0};
    }
    return g;
  }

  const SchemeDescriptor* desc_;
  const ChannelRealization<S>* real_;
  const CsitConfig* cfg_;
  CsitAudit* audit_;
  std::vector<SlotPlan<S>> plans_;
  std::size_t next_slot_ = 0;
  bool in_slot_ = false;
};

/// Complete noiseless linear map from fresh symbols to what every receiver
/// hears: obs[k] has one row per slot, row t = h_k(t)·B(t). In floating mode
/// the rows carry the power normalization (unit beam directions and rows,
/// equal split across a slot's beams), so scaling by sqrt(P_T) models the
/// full-power transmission exactly.
template <class S>
struct Transcript {
  SchemeDescriptor desc;
  Mode mode = ScalarOps<S>::mode;
  std::vector<Mat<S>> obs;           // per receiver
  std::vector<SlotPlan<S>> plans;
  std::vector<std::size_t> beams_per_slot;
  CsitAudit audit;
};

struct SchemeDef {
  SchemeDescriptor desc;
  std::function<void(SchemeContext<QComplex>&)> emit_exact;
  std::function<void(SchemeContext<CDouble>&)> emit_float;
};

/// Binds one generic emitter to both arithmetic modes.
template <class F>
SchemeDef make_scheme(SchemeDescriptor desc, F emit) {
  SchemeDef def;
  def.desc = std::move(desc);
  def.emit_exact = emit;
  def.emit_float = std::move(emit);
  return def;
}

namespace detail {

template <class S>
void accumulate_observation(Vec<S>& out, const Vec<S>& hk, const SlotPlan<S>& plan) {
  for (const Beam<S>& bm : plan.beams) {
    S g = dot(hk, bm.direction);
    if constexpr (ScalarOps<S>::mode == Mode::floating) {
      double amp = beam_amplitude(vec_abs_sq(bm.direction), vec_abs_sq(bm.row),
                                  plan.beams.size());
      g *= S{amp, 0.0};
    }
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += g * bm.row[j];
  }
}

}  // namespace detail

/// Runs a scheme against a realization: plans every slot through gated views,
/// then assembles each receiver's observation matrix from the true channel
/// (receivers have full CSIR). Throws CsitViolation if the scheme demands a
/// different feedback configuration or reaches outside its window.
template <class S>
Transcript<S> run_scheme(const SchemeDef& scheme,
                         const ChannelRealization<S>& real,
                         const CsitConfig& cfg) {
  const SchemeDescriptor& d = scheme.desc;
  if (real.tx != d.tx || real.rx != d.rx || real.slots != d.slots)
    throw DimensionMismatch(d.name + ": realization is (" +
                            std::to_string(real.tx) + "," +
                            std::to_string(real.rx) + "," +
                            std::to_string(real.slots) + "), scheme needs (" +
                            std::to_string(d.tx) + "," + std::to_string(d.rx) +
                            "," + std::to_string(d.slots) + ")");
  if (!(cfg == d.csit))
    throw CsitViolation(d.name + " requires CSIT " + d.csit.str() + ", got " +
                        cfg.str());

  Transcript<S> tr;
  tr.desc = d;
  tr.audit = {};
  SchemeContext<S> ctx(d, real, cfg, tr.audit);
  if constexpr (ScalarOps<S>::mode == Mode::exact)
    scheme.emit_exact(ctx);
  else
    scheme.emit_float(ctx);
  if (ctx.planned_slots() != d.slots)
    throw DimensionMismatch(d.name + ": planned " +
                            std::to_string(ctx.planned_slots()) + " of " +
                            std::to_string(d.slots) + " slots");
  tr.plans = std::move(ctx).take_plans();
  tr.beams_per_slot.reserve(d.slots);
  for (const auto& p : tr.plans) tr.beams_per_slot.push_back(p.beams.size());

  tr.obs.reserve(d.rx);
  for (std::size_t k = 0; k < d.rx; ++k) {
    Mat<S> g(d.slots, d.ledger.size());
    for (std::size_t t = 0; t < d.slots; ++t) {
      Vec<S> row(d.ledger.size(), ScalarOps<S>::zero());
      detail::accumulate_observation(row, real.at(k, t), tr.plans[t]);
      g.set_row(t, row);
    }
    tr.obs.push_back(std::move(g));
  }
  return tr;
}

/// Exact fresh-symbol bookkeeping: order-1 schemes get per-receiver counts
/// over slots, order-2 schemes the pair triple (d_12, d_23, d_13). Depends on
/// the descriptor only, never on a channel draw.
DofTuple counting_dof(const SchemeDef& scheme);

/// Transcript with slot t's observation removed at every receiver (the
/// scheme without that delivery slot). Plans are kept for reference.
template <class S>
Transcript<S> drop_slot(const Transcript<S>& tr, std::size_t t) {
  if (t >= tr.obs.front().rows()) throw InvalidInput("drop_slot: bad slot");
  Transcript<S> out = tr;
  for (auto& g : out.obs) g = g.without_row(t);
  return out;
}

std::string transcript_to_json(const Transcript<QComplex>& tr);
std::string transcript_to_json(const Transcript<CDouble>& tr);

}  // namespace doflab
