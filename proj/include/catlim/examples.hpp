#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "catlim/codescent.hpp"
#include "catlim/core.hpp"
#include "catlim/dotted.hpp"
#include "catlim/enhanced.hpp"
#include "catlim/presentation.hpp"

namespace catlim {

// Least class of 1-cells containing the identities and the given generators,
// closed under composition.
inline std::set<Id> one_cell_closure(const Fin2Category& c, std::set<Id> gens) {
  for (const auto& [o, i] : c.id1) gens.insert(i);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Id> cur(gens.begin(), gens.end());
    for (const auto& g : cur)
      for (const auto& f : cur) {
        if (c.cell1_ends(f).second != c.cell1_ends(g).first) continue;
        if (gens.insert(c.compose_cells(g, f)).second) changed = true;
      }
  }
  return gens;
}

// The rigged-limit shapes of enhanced 2-category theory, as dotted
// F-categories, plus a machine-checkable descriptor of the expected cone.
struct ExampleShape {
  DottedFCategory dd;
  std::string kind;     // inserter | equifier | descent | alternating
  std::string rigging;  // l | c | p | ""
  bool colax = false;   // evaluate through the colax dualizer
  std::vector<Id> detecting;           // projections that detect tightness
  bool descent_equations_gap = false;  // cone equations not restated here
  std::size_t depth = 0;               // alternating truncation depth
  std::vector<std::string> notes;
};

namespace detail {

// objects x, y with parallel 1-cells f, g : x -> y and optional 2-cells
// f => g named in `two_cells`.
inline TwoCatPtr parallel_pair_two_cat(const std::vector<Id>& two_cells) {
  Fin2Category c;
  c.objects = {"x", "y"};
  auto homcat = [&](std::vector<Id> obs, std::vector<Morphism> tws) {
    FinCategory h;
    h.objects = std::move(obs);
    for (const auto& o : h.objects) {
      Id i = "1_" + o;
      h.morphisms.push_back({i, o, o});
      h.identity[o] = i;
    }
    for (auto& t : tws) h.morphisms.push_back(t);
    h.reindex();
    for (const auto& m : h.morphisms) {
      h.compose_table[{h.identity[m.tgt], m.id}] = m.id;
      h.compose_table[{m.id, h.identity[m.src]}] = m.id;
    }
    h.reindex();
    return h;
  };
  std::vector<Morphism> tws;
  for (const auto& t : two_cells) tws.push_back({t, "f", "g"});
  c.hom[{"x", "x"}] = homcat({"1_x"}, {});
  c.hom[{"y", "y"}] = homcat({"1_y"}, {});
  c.hom[{"x", "y"}] = homcat({"f", "g"}, std::move(tws));
  c.hom[{"y", "x"}] = homcat({}, {});
  c.id1 = {{"x", "1_x"}, {"y", "1_y"}};
  for (const Id u : {"f", "g"}) {
    c.compose1[{u, "1_x"}] = u;
    c.compose1[{"1_y", u}] = u;
  }
  c.compose1[{"1_x", "1_x"}] = "1_x";
  c.compose1[{"1_y", "1_y"}] = "1_y";
  c.reindex();
  fill_forced_hcompose(c);
  c.reindex();
  auto ptr = make_two_cat(std::move(c));
  auto rep = validate_two_category(*ptr);
  if (!rep.ok())
    throw CatError(ErrorKind::Validation,
                   "parallel pair shape invalid: " + rep.violations.front());
  return ptr;
}

// The 2-truncated simplex shape for descent objects: n1 ⇉ n2 with a section
// and three coboundaries into n3, saturated from the simplicial relations.
inline SaturationResult descent_shape_category() {
  CatPresentation p;
  p.objects = {"n1", "n2", "n3"};
  p.generators = {{"d0a", "n1", "n2"}, {"d1a", "n1", "n2"},
                  {"sg", "n2", "n1"},  {"d0b", "n2", "n3"},
                  {"d1b", "n2", "n3"}, {"d2b", "n2", "n3"}};
  auto w = [](Id src, Id tgt, std::vector<Id> gens) {
    return Word{std::move(src), std::move(tgt), std::move(gens)};
  };
  p.relations = {
      {w("n1", "n1", {"d0a", "sg"}), w("n1", "n1", {})},
      {w("n1", "n1", {"d1a", "sg"}), w("n1", "n1", {})},
      {w("n1", "n3", {"d0a", "d1b"}), w("n1", "n3", {"d0a", "d0b"})},
      {w("n1", "n3", {"d1a", "d2b"}), w("n1", "n3", {"d1a", "d1b"})},
      {w("n1", "n3", {"d0a", "d2b"}), w("n1", "n3", {"d1a", "d0b"})},
  };
  p.closure_bound = 2000;
  return saturate_presentation(p);
}

}  // namespace detail

inline ExampleShape example_library(const std::string& kind,
                                    const std::string& rigging,
                                    std::size_t depth = 4) {
  ExampleShape ex;
  ex.kind = kind;
  ex.rigging = rigging;
  auto bad = [&]() -> CatError {
    return CatError(ErrorKind::UnsupportedCombination,
                    "no such rigged shape: (" + kind + ", " + rigging + ")");
  };
  if (kind == "inserter" || kind == "equifier") {
    if (rigging != "l" && rigging != "c" && rigging != "p") throw bad();
    TwoCatPtr base = kind == "inserter"
                         ? detail::parallel_pair_two_cat({})
                         : detail::parallel_pair_two_cat({"al", "be"});
    FCategory f;
    f.loose = base;
    if (rigging == "p") {
      f.tight = {"1_x", "1_y"};
    } else if (kind == "inserter") {
      f.tight = {"1_x", "1_y", "g"};  // the marked leg is tight
    } else {
      // equifier: the marked parallel cell is tight (f for l, g for c)
      f.tight = {"1_x", "1_y", rigging == "l" ? "f" : "g"};
    }
    ex.dd.base = make_fcat(std::move(f));
    Id marked = (kind == "equifier" && rigging == "l") ? "f" : "g";
    ex.dd.sigma = {"1_x", "1_y", marked};
    ex.dd.dotted =
        rigging == "p" ? std::set<Id>{"x"} : std::set<Id>{"x", "y"};
    ex.colax = rigging == "l";
    ex.detecting = {"x"};
  } else if (kind == "descent") {
    if (rigging != "l" && rigging != "c") throw bad();
    auto sat = detail::descent_shape_category();
    TwoCatPtr base = make_two_cat(locally_discrete(sat.cat));
    FCategory f;
    f.loose = base;
    f.tight = one_cell_closure(
        *base, {sat.generator_class.at("d0a"), sat.generator_class.at("sg"),
                sat.generator_class.at("d0b"), sat.generator_class.at("d1b")});
    ex.dd.base = make_fcat(std::move(f));
    ex.dd.sigma = ex.dd.base->tight;  // Σ coincides with the tight part
    ex.dd.dotted = {"n1", "n2", "n3"};
    ex.colax = rigging == "l";
    ex.detecting = {"n1"};
    ex.descent_equations_gap = true;
    ex.notes.push_back(
        "the source presents only the cone shape for descent objects; the "
        "cone equations are not restated and are not invented here");
  } else if (kind == "alternating") {
    if (!rigging.empty()) throw bad();
    if (depth < 1 || depth > 16)
      throw CatError(ErrorKind::UnsupportedCombination,
                     "alternating depth out of range");
    ex.depth = depth;
    CatPresentation p;
    for (std::size_t i = 1; i <= depth; ++i)
      p.objects.push_back(std::to_string(i));
    for (std::size_t i = 1; i + 1 <= depth; ++i)
      p.generators.push_back(
          {"u" + std::to_string(i), std::to_string(i + 1), std::to_string(i)});
    p.closure_bound = 200;
    auto sat = saturate_presentation(p);
    TwoCatPtr base = make_two_cat(locally_discrete(sat.cat));
    FCategory f;
    f.loose = base;
    // n -> m tight iff identity, or n even and m odd
    for (const auto& m : sat.cat.morphisms) {
      if (sat.cat.is_identity(m.id)) {
        f.tight.insert(m.id);
        continue;
      }
      std::size_t n = std::stoul(m.src), mm = std::stoul(m.tgt);
      if (n % 2 == 0 && mm % 2 == 1) f.tight.insert(m.id);
    }
    ex.dd.base = make_fcat(std::move(f));
    ex.dd.sigma = all_one_cells(*base);
    for (std::size_t i = 1; i <= depth; i += 2)
      ex.dd.dotted.insert(std::to_string(i));
    ex.colax = false;
    for (std::size_t i = 1; i <= depth; i += 2)
      ex.detecting.push_back(std::to_string(i));
    ex.notes.push_back(
        "finite truncation of the opposite poset of natural numbers; the "
        "untruncated example has no initial object, so the PIE verdict on "
        "the truncation is an artifact of the cut-off");
  } else {
    throw bad();
  }
  auto rep = validate_dotted(ex.dd);
  if (!rep.ok())
    throw CatError(ErrorKind::Validation,
                   "example shape invalid: " + rep.violations.front());
  return ex;
}

// ---------------------------------------------------------------------------
// Expected-shape verification: computes the dotted limit of a diagram on an
// example shape and checks it against the structure the shape promises.

struct ShapeReport {
  bool ok = true;
  std::vector<std::string> notes;
  void fail(std::string n) {
    ok = false;
    notes.push_back(std::move(n));
  }
};

inline ShapeReport check_example_shape(const ExampleShape& ex,
                                       const FDiagram& s,
                                       const Caps& caps = {}) {
  ShapeReport rep;
  DottedFCategory dd = ex.dd;
  FDiagram inst = s;
  if (ex.colax) {
    auto dual = co_dualize(ex.dd, s);
    dd = dual.d;
    inst = dual.s;
  }
  auto cones = dotted_lax_cone_fobject(dd, inst, caps);

  // 2-components at marked cells are identities (all cones)
  for (const auto& t : cones.loose.objs)
    for (const auto& u : dd.sigma)
      if (!nat_is_identity(t.at2(u)))
        rep.fail("marked 2-component not an identity at " + u);

  // expected loose part per kind
  if (ex.kind == "inserter" || ex.kind == "equifier") {
    const FinCategory& SX = *inst.loose.at("x");
    const Functor& Sf = inst.loose.f1("f");
    const Functor& Sg = inst.loose.f1("g");
    FinCategory expected;
    if (ex.kind == "inserter") {
      // the inserter of (Sf, Sg): pairs (a, u : Sf(a) -> Sg(a)), with the
      // SX-morphisms making the evident squares commute
      std::vector<std::pair<Id, Id>> objs;  // (a, u)
      const FinCategory& SY = *inst.loose.at("y");
      for (const auto& a : SX.objects)
        for (const auto& u : SY.hom(Sf.ob(a), Sg.ob(a))) {
          objs.push_back({a, u});
          expected.objects.push_back(pair_id(a, u));
        }
      std::size_t mc = 0;
      std::map<Id, Id> under;  // expected morphism -> underlying SX morphism
      for (const auto& [a1, u1] : objs)
        for (const auto& [a2, u2] : objs)
          for (const auto& r : SX.hom(a1, a2)) {
            if (SY.compose(u2, Sf.mo(r)) != SY.compose(Sg.mo(r), u1)) continue;
            Id mid;
            if (a1 == a2 && u1 == u2 && SX.is_identity(r)) {
              mid = identity_name(pair_id(a1, u1));
              expected.identity[pair_id(a1, u1)] = mid;
            } else {
              mid = "e" + std::to_string(mc++);
            }
            expected.morphisms.push_back(
                {mid, pair_id(a1, u1), pair_id(a2, u2)});
            under[mid] = r;
          }
      expected.reindex();
      for (const auto& m1 : expected.morphisms)
        for (const auto& m2 : expected.morphisms) {
          if (m1.tgt != m2.src) continue;
          Id comp = SX.compose(under.at(m2.id), under.at(m1.id));
          for (const auto& m3 : expected.morphisms)
            if (m3.src == m1.src && m3.tgt == m2.tgt &&
                under.at(m3.id) == comp)
              expected.compose_table[{m2.id, m1.id}] = m3.id;
        }
      expected.reindex();
    } else {
      // equifier: the full subcategory of S(x) on the equified objects
      const NatTransformation& Sal = inst.loose.f2("al");
      const NatTransformation& Sbe = inst.loose.f2("be");
      std::set<Id> keep;
      for (const auto& a : SX.objects)
        if (Sal.at(a) == Sbe.at(a)) keep.insert(a);
      expected = full_subcategory(SX, keep);
    }
    if (!validate_category(expected).ok())
      rep.fail("expected category construction failed");
    else if (!find_isomorphism(make_cat(cones.loose.cat), make_cat(expected),
                               caps)
                  .has_value())
      rep.fail("cone category does not match the expected " + ex.kind);
  } else if (ex.kind == "alternating") {
    // the truncated projective limit is the top value
    Id top = std::to_string(ex.depth);
    if (!find_isomorphism(make_cat(cones.loose.cat), inst.loose.at(top), caps)
             .has_value())
      rep.fail("cone category does not match the truncated projective limit");
  } else if (ex.kind == "descent") {
    rep.notes.push_back("descent equations gap: only the cone shape checked");
  }

  // tightness of the promised legs on tight cones
  for (const auto& o : cones.tight_objects) {
    const LaxTransformation& t = cones.loose.trans_of(o);
    for (const auto& dtt : dd.dotted) {
      Id leg = t.at(dtt).ob("*");
      if (!fobject_is_tight_object(inst.values.at(dtt), leg))
        rep.fail("tight cone has a loose leg at " + dtt);
    }
  }
  // detection: a cone is tight iff its legs at the detecting projections are
  for (std::size_t k = 0; k < cones.loose.objs.size(); ++k) {
    bool detected = true;
    for (const auto& dtt : ex.detecting) {
      Id leg = cones.loose.objs[k].at(dtt).ob("*");
      if (!fobject_is_tight_object(inst.values.at(dtt), leg)) {
        detected = false;
        break;
      }
    }
    bool tight = cones.tight_objects.count(cones.loose.cat.objects[k]) > 0;
    if (detected != tight)
      rep.fail("tightness detection fails at cone " +
               cones.loose.cat.objects[k]);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// PIE-indexing predicates.

enum class PieClass { None, Weak, Strong };

struct PieReport {
  PieClass verdict = PieClass::None;
  std::vector<Id> initials;  // N: one initial object per component
  std::vector<std::string> notes;
};

inline const char* pie_class_name(PieClass c) {
  switch (c) {
    case PieClass::None: return "none";
    case PieClass::Weak: return "weak";
    case PieClass::Strong: return "strong";
  }
  return "none";
}

// gamma defaults to the dotted class.
inline PieReport pie_indexing(const DottedFCategory& d,
                              const std::set<Id>* gamma = nullptr) {
  {
    auto rep = validate_dotted(d);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation, rep.violations.front());
  }
  const std::set<Id>& G = gamma ? *gamma : d.dotted;
  const Fin2Category& C = *d.base->loose;
  PieReport out;
  // connected components of the wide sub-2-category on Σ
  std::map<Id, Id> up;
  for (const auto& o : C.objects) up[o] = o;
  std::function<Id(Id)> find = [&](Id x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  };
  for (const auto& u : d.sigma) {
    auto [a, b] = C.cell1_ends(u);
    Id ra = find(a), rb = find(b);
    if (ra != rb) up[rb] = ra;
  }
  std::map<Id, std::vector<Id>> comps;
  for (const auto& o : C.objects) comps[find(o)].push_back(o);
  auto sigma_hom_count = [&](const Id& a, const Id& b) {
    std::size_t n = 0;
    for (const auto& u : C.hom_at(a, b).objects)
      if (d.sigma.count(u)) ++n;
    return n;
  };
  bool weak = true, strong = true;
  for (const auto& [rep_, members] : comps) {
    std::vector<Id> initials, strong_initials;
    for (const auto& i : members) {
      bool initial = true;
      for (const auto& b : members)
        if (sigma_hom_count(i, b) != 1) {
          initial = false;
          break;
        }
      if (!initial) continue;
      initials.push_back(i);
      bool all_tight = true;
      for (const auto& b : members)
        for (const auto& u : C.hom_at(i, b).objects)
          if (d.sigma.count(u) && !d.base->tight.count(u)) all_tight = false;
      if (all_tight) strong_initials.push_back(i);
    }
    std::vector<Id> in_gamma, strong_in_gamma;
    for (const auto& i : initials)
      if (G.count(i)) in_gamma.push_back(i);
    for (const auto& i : strong_initials)
      if (G.count(i)) strong_in_gamma.push_back(i);
    if (in_gamma.empty()) {
      weak = false;
      strong = false;
      if (initials.empty())
        out.notes.push_back("component of " + rep_ + " has no initial object");
      else
        out.notes.push_back("component of " + rep_ +
                            " has no initial object in Γ");
    } else {
      out.initials.push_back(in_gamma.front());
      if (strong_in_gamma.empty()) strong = false;
    }
  }
  out.verdict =
      !weak ? PieClass::None : (strong ? PieClass::Strong : PieClass::Weak);
  return out;
}

}  // namespace catlim
