#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "doflab/errors.hpp"
#include "doflab/matrix.hpp"
#include "doflab/scalar.hpp"

namespace doflab {

/// Per-receiver transmitter-side channel knowledge: perfect/instantaneous (P)
/// or completely delayed (D).
enum class CsitState : std::uint8_t { perfect, delayed };

struct CsitConfig {
  std::vector<CsitState> states;

  static CsitConfig parse(std::string_view text);  // e.g. "PDD"
  std::string str() const;
  std::size_t size() const { return states.size(); }

  friend bool operator==(const CsitConfig&, const CsitConfig&) = default;
};

/// One drawn channel: a 1×M row vector h_k(t) per receiver k and slot t.
/// Immutable after construction; the seed pins the draw bit-for-bit.
template <class S>
struct ChannelRealization {
  std::size_t tx = 0;     // transmit antennas (M)
  std::size_t rx = 0;     // receivers (K)
  std::size_t slots = 0;  // slots (T)
  std::uint64_t seed = 0;
  std::vector<Vec<S>> h;  // index k*slots + t

  const Vec<S>& at(std::size_t k, std::size_t t) const {
    return h[k * slots + t];
  }
  Vec<S>& at(std::size_t k, std::size_t t) { return h[k * slots + t]; }

  static constexpr Mode mode = ScalarOps<S>::mode;
};

/// Exact draw: i.i.d. entries (re and im independently) n/256 with the
/// numerator n uniform over [-2^16, 2^16] \ {0}. Every per-slot K×M channel
/// matrix is redrawn until it has full rank min(K, M), so generic-position
/// failures are detected exactly and never survive.
ChannelRealization<QComplex> draw_channel_exact(std::uint64_t seed,
                                                std::size_t tx, std::size_t rx,
                                                std::size_t slots);

/// Floating draw: i.i.d. standard circularly-symmetric complex Gaussians.
ChannelRealization<CDouble> draw_channel_float(std::uint64_t seed,
                                               std::size_t tx, std::size_t rx,
                                               std::size_t slots);

/// Diagnostic fault injection: makes receiver `dst` see exactly receiver
/// `src`'s channel in every slot, a measure-zero degeneracy real draws avoid.
template <class S>
void duplicate_receiver_channel(ChannelRealization<S>& real, std::size_t src,
                                std::size_t dst) {
  if (src >= real.rx || dst >= real.rx)
    throw InvalidInput("duplicate_receiver_channel: receiver out of range");
  for (std::size_t t = 0; t < real.slots; ++t) real.at(dst, t) = real.at(src, t);
}

struct CsitAccess {
  std::size_t receiver = 0;
  std::size_t slot_queried = 0;
  std::size_t now = 0;
  bool allowed = true;
};

/// Every channel access a scheme makes while planning, allowed or not. The
/// hybrid-CSIT contract made testable: shipped schemes must leave it without
/// violations.
struct CsitAudit {
  std::vector<CsitAccess> accesses;

  bool clean() const {
    for (const auto& a : accesses)
      if (!a.allowed) return false;
    return true;
  }
  std::size_t violations() const {
    std::size_t n = 0;
    for (const auto& a : accesses)
      if (!a.allowed) ++n;
    return n;
  }
};

/// Causality-gated window onto a realization at planning time `now`:
/// P-receivers expose slots <= now, D-receivers strictly < now. Disallowed
/// accesses are recorded and then rejected. Single-use, one per slot.
template <class S>
class CsitView {
 public:
  CsitView(const ChannelRealization<S>& real, const CsitConfig& cfg,
           std::size_t now, CsitAudit* audit)
      : real_(&real), cfg_(&cfg), now_(now), audit_(audit) {}

  std::size_t now() const { return now_; }

  const Vec<S>& get(std::size_t k, std::size_t tau) const {
    if (k >= real_->rx || tau >= real_->slots)
      throw InvalidInput("CsitView::get: index out of range");
    bool allowed = cfg_->states[k] == CsitState::perfect ? tau <= now_
                                                         : tau < now_;
    if (audit_) audit_->accesses.push_back({k, tau, now_, allowed});
    if (!allowed)
      throw CsitViolation("receiver " + std::to_string(k + 1) + " channel at slot " +
                          std::to_string(tau) + " is not available at slot " +
                          std::to_string(now_));
    return real_->at(k, tau);
  }

 private:
  const ChannelRealization<S>* real_;
  const CsitConfig* cfg_;
  std::size_t now_;
  CsitAudit* audit_;
};

template <class S>
CsitView<S> view(const ChannelRealization<S>& real, const CsitConfig& cfg,
                 std::size_t t, CsitAudit* audit) {
  if (cfg.size() != real.rx)
    throw DimensionMismatch("view: config length != receiver count");
  if (t >= real.slots) throw InvalidInput("view: slot out of range");
  return CsitView<S>(real, cfg, t, audit);
}

// JSON fixture format {M, K, T, seed, mode, h: [[[re,im],...],...]} with
// h indexed [receiver][slot][antenna]; exact entries serialize re/im as
// "num/den" strings, floating entries as numbers.
std::string channel_to_json(const ChannelRealization<QComplex>& real);
std::string channel_to_json(const ChannelRealization<CDouble>& real);

using AnyChannel =
    std::variant<ChannelRealization<QComplex>, ChannelRealization<CDouble>>;
AnyChannel channel_from_json(const std::string& text);

}  // namespace doflab
