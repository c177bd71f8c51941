#include "doflab/scheme.hpp"

#include <array>

#include "json.hpp"

namespace doflab {

std::string DofTuple::str() const {
  static const std::array<const char*, 3> pair_names = {"d12", "d23", "d13"};
  std::string s = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ", ";
    if (kind == Kind::per_pair && i < pair_names.size()) {
      s += pair_names[i];
      s += "=";
    }
    s += rat_to_string(values[i]);
  }
  return s + ")";
}

DofTuple per_receiver_dof(std::initializer_list<Rat> values) {
  DofTuple t;
  t.kind = DofTuple::Kind::per_receiver;
  t.values.assign(values.begin(), values.end());
  return t;
}

DofTuple per_pair_dof(const Rat& d12, const Rat& d23, const Rat& d13) {
  DofTuple t;
  t.kind = DofTuple::Kind::per_pair;
  t.values = {d12, d23, d13};
  return t;
}

DofTuple counting_dof(const SchemeDef& scheme) {
  const SchemeDescriptor& d = scheme.desc;
  Rat slots = rat_of(static_cast<long>(d.slots));
  bool any_pair = false;
  for (const Symbol& s : d.ledger) {
    if (s.audience.size() == 2) any_pair = true;
    if (s.audience.size() > 2)
      throw Unsupported("counting_dof: order-3 ledger has no tuple form");
  }
  DofTuple t;
  if (!any_pair) {
    t.kind = DofTuple::Kind::per_receiver;
    t.values.assign(d.rx, Rat(0));
    for (const Symbol& s : d.ledger) t.values[s.audience.front()] += 1;
  } else {
    if (d.rx != 3)
      throw Unsupported("counting_dof: pair counting defined for 3 receivers");
    t.kind = DofTuple::Kind::per_pair;
    t.values.assign(3, Rat(0));
    for (const Symbol& s : d.ledger) {
      if (s.audience.size() != 2)
        throw Unsupported("counting_dof: mixed-order ledger");
      // (0,1) -> d12, (1,2) -> d23, (0,2) -> d13
      if (s.audience[0] == 0 && s.audience[1] == 1)
        t.values[0] += 1;
      else if (s.audience[0] == 1 && s.audience[1] == 2)
        t.values[1] += 1;
      else
        t.values[2] += 1;
    }
  }
  for (Rat& v : t.values) v /= slots;
  return t;
}

namespace {

using nlohmann::json;

json entry_json(const QComplex& v) {
  return json::array({rat_to_string(v.re), rat_to_string(v.im)});
}
json entry_json(const CDouble& v) { return json::array({v.real(), v.imag()}); }

template <class S>
std::string transcript_json_impl(const Transcript<S>& tr) {
  json j;
  j["scheme"] = tr.desc.name;
  j["M"] = tr.desc.tx;
  j["K"] = tr.desc.rx;
  j["T"] = tr.desc.slots;
  j["csit"] = tr.desc.csit.str();
  j["mode"] = to_string(tr.mode);
  json ledger = json::array();
  for (const Symbol& s : tr.desc.ledger) {
    json e;
    e["id"] = s.id;
    e["audience"] = s.audience;
    e["origin"] = s.origin == SymbolOrigin::fresh ? "fresh" : "reconstructed";
    ledger.push_back(std::move(e));
  }
  j["symbols"] = std::move(ledger);
  j["targets"] = tr.desc.targets;
  j["beams_per_slot"] = tr.beams_per_slot;
  json gs = json::array();
  for (const Mat<S>& g : tr.obs) {
    json rows = json::array();
    for (std::size_t r = 0; r < g.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < g.cols(); ++c)
        row.push_back(entry_json(g.at(r, c)));
      rows.push_back(std::move(row));
    }
    gs.push_back(std::move(rows));
  }
  j["G"] = std::move(gs);
  j["audit_clean"] = tr.audit.clean();
  return j.dump();
}

}  // namespace

std::string transcript_to_json(const Transcript<QComplex>& tr) {
  return transcript_json_impl(tr);
}
std::string transcript_to_json(const Transcript<CDouble>& tr) {
  return transcript_json_impl(tr);
}

}  // namespace doflab
