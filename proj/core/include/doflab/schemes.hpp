#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "doflab/scheme.hpp"

namespace doflab {
namespace schemes {

/// (2,2) MISO BC, CSIT PD: two private symbols for receiver 1 plus one for
/// receiver 2 steered into receiver 1's null space, then the overheard mix of
/// (a1, a2) re-sent once. Sum DoF 3/2.
SchemeDef pd22();

/// Order-2 delivery for three receivers under PDD: five pair symbols
/// (ab1, ab2, ac1, ac2, bc) in four slots. Valid for 2 or 3 transmit
/// antennas. Pair DoF (1/2, 1/4, 1/2), sum 5/4.
SchemeDef order2_delivery(std::size_t tx = 2);

/// (2,3), CSIT PDD: eight slots generate five order-2 symbols, four slots
/// deliver them. 12+4+4 symbols in 12 slots, sum DoF 5/3.
SchemeDef pdd23();

/// (3,3), CSIT PDD: six slots generate the five order-2 symbols at a higher
/// rate, four slots deliver them. 10+4+4 symbols in 10 slots, sum DoF 9/5.
SchemeDef pdd33();

/// (3,3), CSIT PPD: private streams for receivers 1 and 2 in each other's
/// null spaces, one common symbol for receiver 3, then two slots of aligned
/// retransmissions reconstructed from receiver 3's delayed feedback.
/// Sum DoF 9/4.
SchemeDef ppd33();

/// ppd33 with the slot-1 pair projector reused verbatim for the second c
/// beam. Receiver 1 then hears c at slot 2 with only four observations for
/// five effective unknowns, so its targets are provably undecodable; kept as
/// a negative regression probe.
SchemeDef ppd33_stale_pair_projector();

/// All-perfect CSIT zero-forcing: K streams through the right pseudo-inverse
/// of the per-slot channel, one slot. Requires tx >= rx, else Unsupported.
SchemeDef ppp_zf(std::size_t tx = 3, std::size_t rx = 3);

/// One order-3 symbol broadcast on antenna 1 for one slot; every receiver
/// hears a nonzero multiple.
SchemeDef order3_probe();

/// The shipped schemes, in listing order.
const std::vector<SchemeDef>& registry();
const SchemeDef* find(std::string_view name);

/// Row producer evaluated inside the slot that transmits it, so all channel
/// access stays causality-gated.
template <class S>
using RowFn = std::function<Vec<S>(SchemeContext<S>&)>;

/// One-slot broadcast of an order-3 combination on antenna 1.
template <class S, class F>
void emit_order3_broadcast(SchemeContext<S>& ctx, F&& make_row,
                           std::string note = {}) {
  ctx.begin_slot();
  ctx.beam(ctx.axis(0), make_row(ctx), std::move(note));
  ctx.end_slot();
}

/// Four-slot order-2 delivery block starting at the context's next slot. The
/// five rows may be fresh unit rows (standalone scheme) or reconstructed
/// combinations (second stage of pdd23/pdd33).
template <class S>
void emit_order2_delivery(SchemeContext<S>& ctx, const RowFn<S>& ab1,
                          const RowFn<S>& ab2, const RowFn<S>& ac1,
                          const RowFn<S>& ac2, const RowFn<S>& bc) {
  ctx.begin_slot();
  const std::size_t slot_ab = ctx.slot();
  {
    auto p = ctx.null_projector({ctx.h(0, slot_ab)});
    ctx.beam(ctx.axis(0), ab1(ctx), "ab1");
    ctx.beam(ctx.axis(1), ab2(ctx), "ab2");
    ctx.beam(p.col(0), bc(ctx), "bc");
  }
  ctx.end_slot();

  ctx.begin_slot();
  const std::size_t slot_ac = ctx.slot();
  {
    auto p = ctx.null_projector({ctx.h(0, slot_ac)});
    ctx.beam(ctx.axis(0), ac1(ctx), "ac1");
    ctx.beam(ctx.axis(1), ac2(ctx), "ac2");
    ctx.beam(p.col(0), bc(ctx), "bc");
  }
  ctx.end_slot();

  // Receiver 3's overheard ab mix and receiver 2's overheard ac mix are
  // useful everywhere; deliver each as an order-3 broadcast.
  emit_order3_broadcast(
      ctx, [&](SchemeContext<S>& c) { return c.observed_row(2, slot_ab, {0, 1}); },
      "rx3 ab mix");
  emit_order3_broadcast(
      ctx, [&](SchemeContext<S>& c) { return c.observed_row(1, slot_ac, {0, 1}); },
      "rx2 ac mix");
}

}  // namespace schemes
}  // namespace doflab
