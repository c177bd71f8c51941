#include "doflab/schemes.hpp"

#include <string>

namespace doflab {
namespace schemes {

namespace {

Symbol sym(std::string id, std::vector<std::size_t> audience) {
  return Symbol{std::move(id), std::move(audience), SymbolOrigin::fresh};
}

std::vector<Symbol> numbered(const std::string& prefix, std::size_t count,
                             std::vector<std::size_t> audience) {
  std::vector<Symbol> out;
  out.reserve(count);
  for (std::size_t i = 1; i <= count; ++i)
    out.push_back(sym(prefix + std::to_string(i), audience));
  return out;
}

void append(std::vector<Symbol>& ledger, std::vector<Symbol> more) {
  for (auto& s : more) ledger.push_back(std::move(s));
}

std::vector<std::string> ids(const std::string& prefix, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

template <class S>
void guard_nonzero(const S& v, const char* what) {
  if (ScalarOps<S>::abs_sq(v) <= 0.0)
    throw DegenerateChannel(std::string("vanishing gain: ") + what);
}

}  // namespace

SchemeDef pd22() {
  SchemeDescriptor d;
  d.name = "pd22";
  d.tx = 2;
  d.rx = 2;
  d.slots = 2;
  d.csit = CsitConfig::parse("PD");
  d.ledger = {sym("a1", {0}), sym("a2", {0}), sym("b", {1})};
  d.targets = {{"a1", "a2"}, {"b"}};
  d.claimed = per_receiver_dof({rat_of(1), rat_of(1, 2)});
  return make_scheme(d, [](auto& ctx) {
    ctx.begin_slot();
    {
      auto p = ctx.null_projector({ctx.h(0, 0)});
      ctx.beam(ctx.axis(0), ctx.unit_row("a1"));
      ctx.beam(ctx.axis(1), ctx.unit_row("a2"));
      ctx.beam(p.col(0), ctx.unit_row("b"));
    }
    ctx.end_slot();
    // Receiver 2 overheard a mix of (a1, a2); delayed feedback lets the
    // transmitter rebuild it, and one clean copy serves both receivers.
    ctx.begin_slot();
    ctx.beam(ctx.axis(0), ctx.observed_row(1, 0, {0, 1}), "rx2 a mix");
    ctx.end_slot();
  });
}

SchemeDef order2_delivery(std::size_t tx) {
  if (tx != 2 && tx != 3)
    throw Unsupported("order2_delivery: needs 2 or 3 transmit antennas");
  SchemeDescriptor d;
  d.name = "order2_delivery";
  d.tx = tx;
  d.rx = 3;
  d.slots = 4;
  d.csit = CsitConfig::parse("PDD");
  d.ledger = {sym("ab1", {0, 1}), sym("ab2", {0, 1}), sym("ac1", {0, 2}),
              sym("ac2", {0, 2}), sym("bc", {1, 2})};
  d.targets = {{"ab1", "ab2", "ac1", "ac2"}, {"ab1", "ab2", "bc"},
               {"ac1", "ac2", "bc"}};
  d.claimed = per_pair_dof(rat_of(1, 2), rat_of(1, 4), rat_of(1, 2));
  return make_scheme(d, [](auto& ctx) {
    using Ctx = std::decay_t<decltype(ctx)>;
    using S = typename Ctx::Scalar;
    auto unit = [](const char* id) {
      return RowFn<S>([id](Ctx& c) { return c.unit_row(id); });
    };
    emit_order2_delivery<S>(ctx, unit("ab1"), unit("ab2"), unit("ac1"),
                            unit("ac2"), unit("bc"));
  });
}

SchemeDef pdd23() {
  SchemeDescriptor d;
  d.name = "pdd23";
  d.tx = 2;
  d.rx = 3;
  d.slots = 12;
  d.csit = CsitConfig::parse("PDD");
  d.ledger = numbered("a", 12, {0});
  append(d.ledger, numbered("b", 4, {1}));
  append(d.ledger, numbered("c", 4, {2}));
  d.targets = {ids("a", 12), ids("b", 4), ids("c", 4)};
  d.claimed = per_receiver_dof({rat_of(1), rat_of(1, 3), rat_of(1, 3)});
  return make_scheme(d, [](auto& ctx) {
    using Ctx = std::decay_t<decltype(ctx)>;
    using S = typename Ctx::Scalar;

    // Two fresh private symbols plus one cross symbol in receiver 1's null
    // space; next slot re-sends the overheard a mix with a second cross
    // symbol. `mix_rx` is the receiver whose delayed feedback supplies the
    // mix (receiver 2 for b slots, receiver 3 for c slots).
    auto fresh_pair = [&](const char* s1, const char* s2, const char* cross) {
      ctx.begin_slot();
      auto p = ctx.null_projector({ctx.h(0, ctx.slot())});
      ctx.beam(ctx.axis(0), ctx.unit_row(s1));
      ctx.beam(ctx.axis(1), ctx.unit_row(s2));
      ctx.beam(p.col(0), ctx.unit_row(cross));
      ctx.end_slot();
    };
    auto resend_mix = [&](std::size_t mix_rx, std::size_t tau,
                          const char* cross) {
      ctx.begin_slot();
      auto p = ctx.null_projector({ctx.h(0, ctx.slot())});
      ctx.beam(ctx.axis(0), ctx.observed_row(mix_rx, tau, {0, 1}), "a mix");
      ctx.beam(p.col(0), ctx.unit_row(cross));
      ctx.end_slot();
    };

    // Stage 1. Slots 0-3 create the single bc ingredient pair, slots 4-7
    // the ab and ac pairs.
    fresh_pair("a1", "a2", "b1");
    resend_mix(1, 0, "b2");
    fresh_pair("a3", "a4", "c1");
    resend_mix(2, 2, "c2");
    fresh_pair("a5", "a6", "b3");
    fresh_pair("a7", "a8", "b4");
    fresh_pair("a9", "a10", "c3");
    fresh_pair("a11", "a12", "c4");

    // Stage 2: deliver the five order-2 combinations. The bc symbol is the
    // sum of receiver 3's slot-1 observation and receiver 2's slot-3
    // observation; each of those receivers can strip its own copy.
    RowFn<S> ab1 = [](Ctx& c) { return c.observed_row(1, 4, {0, 1}); };
    RowFn<S> ab2 = [](Ctx& c) { return c.observed_row(1, 5, {0, 1}); };
    RowFn<S> ac1 = [](Ctx& c) { return c.observed_row(2, 6, {0, 1}); };
    RowFn<S> ac2 = [](Ctx& c) { return c.observed_row(2, 7, {0, 1}); };
    RowFn<S> bc = [](Ctx& c) {
      return vec_add(c.observed_row(2, 1), c.observed_row(1, 3));
    };
    emit_order2_delivery<S>(ctx, ab1, ab2, ac1, ac2, bc);
  });
}

SchemeDef pdd33() {
  SchemeDescriptor d;
  d.name = "pdd33";
  d.tx = 3;
  d.rx = 3;
  d.slots = 10;
  d.csit = CsitConfig::parse("PDD");
  d.ledger = numbered("a", 10, {0});
  append(d.ledger, numbered("b", 4, {1}));
  append(d.ledger, numbered("c", 4, {2}));
  d.targets = {ids("a", 10), ids("b", 4), ids("c", 4)};
  d.claimed = per_receiver_dof({rat_of(1), rat_of(2, 5), rat_of(2, 5)});
  return make_scheme(d, [](auto& ctx) {
    using Ctx = std::decay_t<decltype(ctx)>;
    using S = typename Ctx::Scalar;

    // Slot 0: three private symbols straight onto the antennas.
    ctx.begin_slot();
    ctx.beam(ctx.axis(0), ctx.unit_row("a1"));
    ctx.beam(ctx.axis(1), ctx.unit_row("a2"));
    ctx.beam(ctx.axis(2), ctx.unit_row("a3"));
    ctx.end_slot();

    // Slots 1-2: re-send the a mix overheard by receiver 2 (then 3) while
    // two cross symbols ride receiver 1's null space.
    auto mix_plus_pair = [&](std::size_t mix_rx, std::size_t antenna,
                             const char* s1, const char* s2) {
      ctx.begin_slot();
      auto p = ctx.null_projector({ctx.h(0, ctx.slot())});
      ctx.beam(ctx.axis(antenna), ctx.observed_row(mix_rx, 0, {0, 1, 2}),
               "a mix");
      ctx.beam(p.col(1), ctx.unit_row(s1));
      ctx.beam(p.col(2), ctx.unit_row(s2));
      ctx.end_slot();
    };
    mix_plus_pair(1, 1, "b1", "b2");
    mix_plus_pair(2, 2, "c1", "c2");

    // Slots 3-4: full-rate fresh triples with cross pairs in receiver 1's
    // null space.
    auto triple_plus_pair = [&](const char* a_1, const char* a_2,
                                const char* a_3, const char* s1,
                                const char* s2) {
      ctx.begin_slot();
      auto p = ctx.null_projector({ctx.h(0, ctx.slot())});
      ctx.beam(ctx.axis(0), ctx.unit_row(a_1));
      ctx.beam(ctx.axis(1), ctx.unit_row(a_2));
      ctx.beam(ctx.axis(2), ctx.unit_row(a_3));
      ctx.beam(p.col(1), ctx.unit_row(s1));
      ctx.beam(p.col(2), ctx.unit_row(s2));
      ctx.end_slot();
    };
    triple_plus_pair("a4", "a5", "a6", "b3", "b4");
    triple_plus_pair("a7", "a8", "a9", "c3", "c4");

    // Slot 5: one more fresh symbol, and the two overheard cross mixes
    // relayed through receiver 1's null space.
    ctx.begin_slot();
    {
      auto p = ctx.null_projector({ctx.h(0, 5)});
      ctx.beam(ctx.axis(0), ctx.unit_row("a10"));
      ctx.beam(p.col(1), ctx.observed_row(2, 3), "rx3 slot-3 obs");
      ctx.beam(p.col(2), ctx.observed_row(1, 4), "rx2 slot-4 obs");
    }
    ctx.end_slot();

    // Stage 2. The ab pair is receiver 2's slot-3 a mix plus the mix it can
    // distill from slots 4/5 (a10 and receiver 3's slot-3 a mix); the ac
    // pair mirrors it with receivers swapped.
    RowFn<S> ab1 = [](Ctx& c) { return c.observed_row(1, 3, {0, 1, 2}); };
    RowFn<S> ab2 = [](Ctx& c) {
      return vec_add(c.observed_row(1, 5, {0}),
                     vec_scaled(c.observed_row(2, 3, {0, 1, 2}), c.gain(1, 5, 1)));
    };
    RowFn<S> ac1 = [](Ctx& c) { return c.observed_row(2, 4, {0, 1, 2}); };
    RowFn<S> ac2 = [](Ctx& c) {
      return vec_add(c.observed_row(2, 5, {0}),
                     vec_scaled(c.observed_row(1, 4, {0, 1, 2}), c.gain(2, 5, 2)));
    };
    RowFn<S> bc = [](Ctx& c) {
      return vec_add(c.observed_row(2, 1), c.observed_row(1, 2));
    };
    emit_order2_delivery<S>(ctx, ab1, ab2, ac1, ac2, bc);
  });
}

namespace {

SchemeDef ppd33_impl(std::string name, bool stale_pair_projector) {
  SchemeDescriptor d;
  d.name = std::move(name);
  d.tx = 3;
  d.rx = 3;
  d.slots = 4;
  d.csit = CsitConfig::parse("PPD");
  d.ledger = numbered("a", 4, {0});
  append(d.ledger, numbered("b", 4, {1}));
  d.ledger.push_back(sym("c", {2}));
  d.targets = {ids("a", 4), ids("b", 4), {"c"}};
  d.claimed = per_receiver_dof({rat_of(1), rat_of(1), rat_of(1, 4)});
  return make_scheme(d, [stale_pair_projector](auto& ctx) {
    // Slots 0-1: private pairs for receivers 1 and 2 in each other's null
    // spaces, plus the common symbol c orthogonal to both.
    for (std::size_t t = 0; t < 2; ++t) {
      ctx.begin_slot();
      auto p_null2 = ctx.null_projector({ctx.h(1, t)});
      auto p_null1 = ctx.null_projector({ctx.h(0, t)});
      auto p_pair = (stale_pair_projector && t == 1)
                        ? ctx.null_projector({ctx.h(0, 0), ctx.h(1, 0)})
                        : ctx.null_projector({ctx.h(0, t), ctx.h(1, t)});
      ctx.beam(p_null2.col(0), ctx.unit_row(t == 0 ? "a1" : "a3"));
      ctx.beam(p_null2.col(1), ctx.unit_row(t == 0 ? "a2" : "a4"));
      ctx.beam(p_null1.col(0), ctx.unit_row(t == 0 ? "b1" : "b3"));
      ctx.beam(p_null1.col(1), ctx.unit_row(t == 0 ? "b2" : "b4"));
      ctx.beam(p_pair.col(0), ctx.unit_row("c"));
      ctx.end_slot();
    }

    // Slot 2: re-send the mixes receiver 3 overheard (an a mix from slot 0,
    // a b mix from slot 1), reconstructed from its delayed feedback.
    ctx.begin_slot();
    {
      auto p_null2 = ctx.null_projector({ctx.h(1, 2)});
      auto p_null1 = ctx.null_projector({ctx.h(0, 2)});
      ctx.beam(p_null2.col(0), ctx.observed_row(2, 0, {0, 1}), "rx3 a mix");
      ctx.beam(p_null1.col(0), ctx.observed_row(2, 1, {2, 3}), "rx3 b mix");
    }
    ctx.end_slot();

    // Slot 3: combinations aligned so that receiver 3 can cancel all private
    // interference with its slot-2 observation. mu/nu are receiver 3's slot-2
    // beam gains; the transmitter knows them one slot later.
    ctx.begin_slot();
    {
      using S = typename std::decay_t<decltype(ctx)>::Scalar;
      S mu = ctx.gain(2, 2, 0);
      S nu = ctx.gain(2, 2, 1);
      guard_nonzero(mu, "receiver 3 on the slot-2 a beam");
      guard_nonzero(nu, "receiver 3 on the slot-2 b beam");
      Vec<S> g_a = vec_sub(ctx.observed_row(2, 1, {0, 1}),
                           vec_scaled(ctx.observed_row(2, 0, {0, 1}), mu / nu));
      Vec<S> g_b = vec_sub(ctx.observed_row(2, 0, {2, 3}),
                           vec_scaled(ctx.observed_row(2, 1, {2, 3}), nu / mu));
      auto p_null2 = ctx.null_projector({ctx.h(1, 3)});
      auto p_null1 = ctx.null_projector({ctx.h(0, 3)});
      ctx.beam(p_null2.col(0), g_a, "aligned a mix");
      ctx.beam(p_null1.col(0), g_b, "aligned b mix");
    }
    ctx.end_slot();
  });
}

}  // namespace

SchemeDef ppd33() { return ppd33_impl("ppd33", false); }

SchemeDef ppd33_stale_pair_projector() {
  return ppd33_impl("ppd33_stale_pair_projector", true);
}

SchemeDef ppp_zf(std::size_t tx, std::size_t rx) {
  if (tx < rx)
    throw Unsupported("ppp_zf: needs at least as many antennas as receivers");
  SchemeDescriptor d;
  d.name = "ppp_zf";
  d.tx = tx;
  d.rx = rx;
  d.slots = 1;
  d.csit = CsitConfig{std::vector<CsitState>(rx, CsitState::perfect)};
  d.ledger = numbered("x", rx, {});
  for (std::size_t k = 0; k < rx; ++k) d.ledger[k].audience = {k};
  d.targets.resize(rx);
  for (std::size_t k = 0; k < rx; ++k) d.targets[k] = {d.ledger[k].id};
  DofTuple claim;
  claim.kind = DofTuple::Kind::per_receiver;
  claim.values.assign(rx, rat_of(1));
  d.claimed = claim;
  return make_scheme(d, [rx](auto& ctx) {
    using S = typename std::decay_t<decltype(ctx)>::Scalar;
    ctx.begin_slot();
    std::vector<Vec<S>> rows;
    rows.reserve(rx);
    for (std::size_t k = 0; k < rx; ++k) rows.push_back(ctx.h(k, 0));
    auto pinv = right_pseudo_inverse(Mat<S>::from_rows(rows));
    for (std::size_t k = 0; k < rx; ++k)
      ctx.beam(pinv.col(k), ctx.unit_row("x" + std::to_string(k + 1)));
    ctx.end_slot();
  });
}

SchemeDef order3_probe() {
  SchemeDescriptor d;
  d.name = "order3_probe";
  d.tx = 2;
  d.rx = 3;
  d.slots = 1;
  d.csit = CsitConfig::parse("PDD");
  d.ledger = {sym("g", {0, 1, 2})};
  d.targets = {{"g"}, {"g"}, {"g"}};
  d.claimed = per_receiver_dof({rat_of(0), rat_of(0), rat_of(0)});
  return make_scheme(d, [](auto& ctx) {
    using Ctx = std::decay_t<decltype(ctx)>;
    emit_order3_broadcast(ctx, [](Ctx& c) { return c.unit_row("g"); });
  });
}

const std::vector<SchemeDef>& registry() {
  static const std::vector<SchemeDef> schemes = {
      pd22(),  order2_delivery(), pdd23(),
      pdd33(), ppd33(),           ppp_zf()};
  return schemes;
}

const SchemeDef* find(std::string_view name) {
  for (const SchemeDef& s : registry())
    if (s.desc.name == name) return &s;
  return nullptr;
}

}  // namespace schemes
}  // namespace doflab
