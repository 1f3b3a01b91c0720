#pragma once

// Deterministic JSON views of the core structures: stable key order, objects
// sorted lexicographically, morphisms by (source, target, id).

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "catlim/enhanced.hpp"
#include "catlim/examples.hpp"
#include "catlim/fincat.hpp"
#include "catlim/marked.hpp"
#include "catlim/two_cat.hpp"

namespace catlim {

using json = nlohmann::ordered_json;

inline json category_json(const FinCategory& c) {
  json j;
  std::vector<Id> objs = c.objects;
  std::sort(objs.begin(), objs.end());
  j["objects"] = objs;
  std::vector<Morphism> mors = c.morphisms;
  std::sort(mors.begin(), mors.end(), [](const Morphism& a, const Morphism& b) {
    return std::tie(a.src, a.tgt, a.id) < std::tie(b.src, b.tgt, b.id);
  });
  json jm = json::array();
  for (const auto& m : mors) {
    json e;
    e["id"] = m.id;
    e["source"] = m.src;
    e["target"] = m.tgt;
    e["identity"] = c.is_identity(m.id);
    jm.push_back(e);
  }
  j["morphisms"] = jm;
  json jc = json::array();
  for (const auto& [gf, h] : c.compose_table) {
    json e;
    e["g"] = gf.first;
    e["f"] = gf.second;
    e["gf"] = h;
    jc.push_back(e);
  }
  j["compose"] = jc;
  return j;
}

inline json functor_json(const Functor& f) {
  json j;
  j["on_objects"] = json::object();
  for (const auto& [a, b] : f.on_objects) j["on_objects"][a] = b;
  j["on_morphisms"] = json::object();
  for (const auto& [a, b] : f.on_morphisms) j["on_morphisms"][a] = b;
  return j;
}

inline json report_json(const ValidationReport& r) {
  json j;
  j["ok"] = r.ok();
  j["violations"] = r.violations;
  return j;
}

inline json equivalence_json(const EquivalenceReport& r) {
  json j;
  j["isomorphic"] = r.isomorphic;
  j["forward_backward_identity"] = r.forward_backward_id;
  j["backward_forward_identity"] = r.backward_forward_id;
  j["forward"] = functor_json(r.forward);
  j["backward"] = functor_json(r.backward);
  j["notes"] = r.notes;
  return j;
}

inline json fobject_json(const FObject& x) {
  json j;
  j["loose"] = category_json(*x.loose_part);
  j["tight"] = category_json(*x.tight_part);
  j["embedding"] = functor_json(x.embedding);
  return j;
}

inline json two_category_json(const Fin2Category& c) {
  json j;
  std::vector<Id> objs = c.objects;
  std::sort(objs.begin(), objs.end());
  j["objects"] = objs;
  json homs = json::object();
  for (const auto& a : objs)
    for (const auto& b : objs)
      homs[pair_id(a, b)] = category_json(c.hom_at(a, b));
  j["hom"] = homs;
  json c1 = json::array();
  for (const auto& [gf, h] : c.compose1) {
    json e;
    e["g"] = gf.first;
    e["f"] = gf.second;
    e["gf"] = h;
    c1.push_back(e);
  }
  j["compose1"] = c1;
  return j;
}

inline json pie_json(const PieReport& r) {
  json j;
  j["verdict"] = pie_class_name(r.verdict);
  j["initials"] = r.initials;
  j["notes"] = r.notes;
  return j;
}

inline json shape_json(const ExampleShape& ex) {
  json j;
  j["kind"] = ex.kind;
  j["rigging"] = ex.rigging;
  j["colax"] = ex.colax;
  j["base"] = two_category_json(*ex.dd.base->loose);
  j["tight"] = std::vector<Id>(ex.dd.base->tight.begin(),
                               ex.dd.base->tight.end());
  j["sigma"] = std::vector<Id>(ex.dd.sigma.begin(), ex.dd.sigma.end());
  j["dotted"] = std::vector<Id>(ex.dd.dotted.begin(), ex.dd.dotted.end());
  j["detecting"] = ex.detecting;
  if (ex.kind == "descent") j["equations_gap"] = ex.descent_equations_gap;
  if (ex.kind == "alternating") j["depth"] = ex.depth;
  j["notes"] = ex.notes;
  return j;
}

}  // namespace catlim
