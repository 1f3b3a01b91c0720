#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "catlim/core.hpp"
#include "catlim/fincat.hpp"
#include "catlim/two_cat.hpp"
#include "catlim/two_cat_ops.hpp"

namespace catlim {

// An F-category: a 2-category with a tightness predicate on 1-cells whose
// induced inclusion is identity-on-objects, faithful and locally fully
// faithful by construction.
struct FCategory {
  TwoCatPtr loose;
  std::set<Id> tight;
};

using FCatPtr = std::shared_ptr<const FCategory>;

inline FCatPtr make_fcat(FCategory f) {
  return std::make_shared<const FCategory>(std::move(f));
}

inline ValidationReport validate_fcategory(const FCategory& f) {
  ValidationReport rep;
  const Fin2Category& C = *f.loose;
  for (const auto& u : f.tight)
    if (!C.has_cell1(u)) rep.add("tight class contains unknown 1-cell " + u);
  if (!rep.ok()) return rep;
  for (const auto& [o, i] : C.id1)
    if (!f.tight.count(i)) rep.add("tight class misses the identity " + i);
  for (const auto& g : f.tight)
    for (const auto& u : f.tight) {
      if (C.cell1_ends(u).second != C.cell1_ends(g).first) continue;
      const Id& gu = C.compose_cells(g, u);
      if (!f.tight.count(gu))
        rep.add("tight class misses the composite " + gu + " = " + g + " ∘ " +
                u);
    }
  return rep;
}

inline FCategory chordate(TwoCatPtr c) {
  FCategory f;
  f.loose = std::move(c);
  for (const auto& u : f.loose->one_cells()) f.tight.insert(u);
  return f;
}

inline FCategory inchordate(TwoCatPtr c) {
  FCategory f;
  f.loose = std::move(c);
  for (const auto& [o, i] : f.loose->id1) f.tight.insert(i);
  return f;
}

// The tight part as a 2-category (wide, locally full) with its inclusion.
struct TightPart {
  TwoCatPtr cat;
  TwoFunctor inclusion;  // tight part -> loose part
};

inline TightPart tight_part(const FCategory& f) {
  {
    auto rep = validate_fcategory(f);
    if (!rep.ok())
      throw CatError(ErrorKind::ClosureViolation, rep.violations.front());
  }
  const Fin2Category& C = *f.loose;
  Fin2Category t;
  t.objects = C.objects;
  for (const auto& [ab, h] : C.hom) {
    std::set<Id> keep;
    for (const auto& u : h.objects)
      if (f.tight.count(u)) keep.insert(u);
    t.hom[ab] = full_subcategory(h, keep);
  }
  t.id1 = C.id1;
  for (const auto& [gf, h] : C.compose1)
    if (f.tight.count(gf.first) && f.tight.count(gf.second))
      t.compose1[gf] = h;
  t.reindex();
  // horizontal composition restricted to 2-cells between tight 1-cells
  std::set<Id> tight2;
  for (const auto& m : t.two_cells()) tight2.insert(m);
  for (const auto& [ba, r] : C.hcompose2)
    if (tight2.count(ba.first) && tight2.count(ba.second))
      t.hcompose2[ba] = r;
  t.reindex();
  TightPart out;
  out.cat = make_two_cat(std::move(t));
  out.inclusion.source = out.cat;
  out.inclusion.target = f.loose;
  for (const auto& o : out.cat->objects) out.inclusion.on_objects[o] = o;
  for (const auto& u : out.cat->one_cells()) out.inclusion.on_one_cells[u] = u;
  for (const auto& m : out.cat->two_cells()) out.inclusion.on_two_cells[m] = m;
  {
    auto rep = validate_two_category(*out.cat);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "tight part is not a 2-category: " + rep.violations.front());
    rep = validate_two_functor(out.inclusion);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "tight inclusion invalid: " + rep.violations.front());
  }
  return out;
}

// Checks that a 2-functor between loose parts preserves tightness; on
// success returns the induced tight-part 2-functor.
inline TwoFunctor f_functor_check(const TwoFunctor& fl, const FCategory& src,
                                  const FCategory& tgt, const TightPart& sp,
                                  const TightPart& tp) {
  for (const auto& u : src.tight)
    if (!tgt.tight.count(fl.c1(u)))
      throw CatError(ErrorKind::TightnessViolation,
                     "tight 1-cell " + u + " maps to a loose 1-cell " +
                         fl.c1(u));
  TwoFunctor ft;
  ft.source = sp.cat;
  ft.target = tp.cat;
  for (const auto& o : sp.cat->objects) ft.on_objects[o] = fl.ob(o);
  for (const auto& u : sp.cat->one_cells()) ft.on_one_cells[u] = fl.c1(u);
  for (const auto& m : sp.cat->two_cells()) ft.on_two_cells[m] = fl.c2(m);
  auto rep = validate_two_functor(ft);
  if (!rep.ok())
    throw CatError(ErrorKind::Validation,
                   "induced tight 2-functor invalid: " + rep.violations.front());
  return ft;
}

// ---------------------------------------------------------------------------
// Objects of 𝔽: full embeddings of finite categories.

struct FObject {
  CatPtr tight_part, loose_part;
  Functor embedding;  // tight -> loose, a full embedding
};

inline ValidationReport validate_fobject(const FObject& x) {
  ValidationReport rep;
  auto r = validate_functor(x.embedding);
  for (auto& v : r.violations) rep.add(v);
  if (!rep.ok()) return rep;
  if (!is_full_embedding(x.embedding))
    rep.add("embedding is not a full embedding");
  return rep;
}

// Canonical form: the tight part is the full subcategory on a set of
// objects of the loose part.
inline FObject fobject_from_subset(CatPtr loose, const std::set<Id>& tights) {
  FObject x;
  x.loose_part = std::move(loose);
  x.tight_part = make_cat(full_subcategory(*x.loose_part, tights));
  Functor m;
  m.source = x.tight_part;
  m.target = x.loose_part;
  for (const auto& o : x.tight_part->objects) m.on_objects[o] = o;
  for (const auto& mm : x.tight_part->morphisms) m.on_morphisms[mm.id] = mm.id;
  x.embedding = std::move(m);
  return x;
}

inline FObject chordate_fobject(CatPtr c) {
  std::set<Id> all(c->objects.begin(), c->objects.end());
  return fobject_from_subset(std::move(c), all);
}

inline FObject terminal_fobject() {
  return chordate_fobject(make_cat(terminal_category()));
}

// Is a loose object in the image of the tight part?
inline bool fobject_is_tight_object(const FObject& x, const Id& loose_obj) {
  for (const auto& [o, img] : x.embedding.on_objects)
    if (img == loose_obj) return true;
  return false;
}

// A functor between loose parts is a tight morphism of 𝔽 iff it maps tight
// objects to tight objects (fullness gives the rest).
inline bool fobject_tight_morphism(const FObject& a, const FObject& b,
                                   const Functor& f) {
  for (const auto& [o, img] : a.embedding.on_objects)
    if (!fobject_is_tight_object(b, f.ob(img))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// F-functors into 𝔽 (or chordate Cat), as diagrams with F-object values.

struct FDiagram {
  FCatPtr base;
  CatValued2Functor loose;        // on base->loose
  std::map<Id, FObject> values;   // object -> F-object with that loose part
};

inline ValidationReport validate_fdiagram(const FDiagram& s) {
  ValidationReport rep;
  auto r = validate_diagram(s.loose);
  for (auto& v : r.violations) rep.add(v);
  if (!rep.ok()) return rep;
  const Fin2Category& C = *s.base->loose;
  for (const auto& o : C.objects) {
    auto it = s.values.find(o);
    if (it == s.values.end()) {
      rep.add("missing F-object value at " + o);
      continue;
    }
    auto rr = validate_fobject(it->second);
    for (auto& v : rr.violations) rep.add("value at " + o + ": " + v);
    if (!(it->second.loose_part->objects == s.loose.at(o)->objects))
      rep.add("loose part mismatch at " + o);
  }
  if (!rep.ok()) return rep;
  for (const auto& u : s.base->tight) {
    auto [d, c] = C.cell1_ends(u);
    if (!fobject_tight_morphism(s.values.at(d), s.values.at(c), s.loose.f1(u)))
      rep.add("tight 1-cell " + u + " does not preserve tightness");
  }
  return rep;
}

inline FDiagram chordate_fdiagram(FCatPtr base, CatValued2Functor loose) {
  FDiagram s;
  s.base = std::move(base);
  for (const auto& [o, v] : loose.on_objects)
    s.values[o] = chordate_fobject(v);
  s.loose = std::move(loose);
  return s;
}

// ---------------------------------------------------------------------------
// Hom F-objects of the functor F-category [D, K].

// The F-natural transformations between F-functors: loose part = 2-natural
// transformations of loose parts with modifications; tight part = the full
// subcategory of those with tight components everywhere.
struct FNatResult {
  FObject hom;
  TransCategory loose;        // the enumerated loose part
  std::set<Id> tight_objects; // objects of loose.cat in the tight part
};

inline FNatResult enumerate_fnat(const FDiagram& f, const FDiagram& g,
                                 const Caps& caps = {}) {
  FNatResult out;
  out.loose = enumerate_lax_transformations(make_diag(f.loose),
                                            make_diag(g.loose), true, caps);
  const Fin2Category& C = *f.base->loose;
  for (std::size_t k = 0; k < out.loose.objs.size(); ++k) {
    bool tight = true;
    for (const auto& d : C.objects)
      if (!fobject_tight_morphism(f.values.at(d), g.values.at(d),
                                  out.loose.objs[k].at(d))) {
        tight = false;
        break;
      }
    if (tight) out.tight_objects.insert(out.loose.cat.objects[k]);
  }
  out.hom = fobject_from_subset(make_cat(out.loose.cat), out.tight_objects);
  {
    auto rep = validate_fobject(out.hom);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "enumerate_fnat hom invalid: " + rep.violations.front());
  }
  return out;
}

// ---------------------------------------------------------------------------
// F-weights (Φ_τ, Φ_λ, φ) with φ componentwise a full embedding.

struct FWeight {
  FCatPtr base;
  TightPart tight;               // D_τ with inclusion J
  CatValued2Functor tau;         // on tight.cat
  CatValued2Functor lambda;      // on base->loose
  std::map<Id, Functor> phi;     // d -> full embedding tau(d) -> lambda(d)
};

inline ValidationReport validate_fweight(const FWeight& w) {
  ValidationReport rep;
  auto r1 = validate_diagram(w.tau);
  for (auto& v : r1.violations) rep.add("tau: " + v);
  auto r2 = validate_diagram(w.lambda);
  for (auto& v : r2.violations) rep.add("lambda: " + v);
  if (!rep.ok()) return rep;
  const Fin2Category& T = *w.tight.cat;
  for (const auto& d : T.objects) {
    auto it = w.phi.find(d);
    if (it == w.phi.end()) {
      rep.add("missing phi component at " + d);
      continue;
    }
    auto r = validate_functor(it->second);
    for (auto& v : r.violations) rep.add("phi at " + d + ": " + v);
    if (r.ok() && !is_full_embedding(it->second))
      rep.add("phi component at " + d + " is not a full embedding");
  }
  if (!rep.ok()) return rep;
  // 2-naturality of phi over the tight part
  for (const auto& u : T.one_cells()) {
    auto [d, c] = T.cell1_ends(u);
    if (!(compose_functors(w.lambda.f1(u), w.phi.at(d)) ==
          compose_functors(w.phi.at(c), w.tau.f1(u))))
      rep.add("phi not natural at " + u);
  }
  for (const auto& m : T.two_cells()) {
    auto ab = T.cell2_hom(m);
    NatTransformation lhs =
        whisker_nat_functor(w.lambda.f2(m), w.phi.at(ab.first));
    NatTransformation rhs =
        whisker_functor_nat(w.phi.at(ab.second), w.tau.f2(m));
    if (!(lhs.components == rhs.components))
      rep.add("phi not 2-natural at " + m);
  }
  return rep;
}

// The F-object value of an F-weight at an object.
inline FObject fweight_value(const FWeight& w, const Id& d) {
  FObject x;
  x.tight_part = w.tau.at(d);
  x.loose_part = w.lambda.at(d);
  x.embedding = w.phi.at(d);
  return x;
}

// The terminal F-weight Δ(1).
inline FWeight terminal_fweight(FCatPtr base) {
  FWeight w;
  w.base = base;
  w.tight = tight_part(*base);
  auto pt = make_cat(terminal_category());
  w.tau = constant_diagram(w.tight.cat, pt);
  w.lambda = constant_diagram(base->loose, pt);
  for (const auto& d : base->loose->objects)
    w.phi[d] = identity_functor(pt);
  return w;
}

// The F-weighted limit {Φ, S} of an 𝔽-valued diagram, as the hom F-object
// [D, 𝔽](Φ, S): loose part the strict transformations Φ_λ => S_λ, tight part
// the F-natural ones.
struct FWeightedLimit {
  FObject lim;
  TransCategory loose;
  std::set<Id> tight_objects;
};

inline FWeightedLimit f_weighted_limit(const FWeight& w, const FDiagram& s,
                                       const Caps& caps = {}) {
  FWeightedLimit out;
  out.loose = enumerate_lax_transformations(make_diag(w.lambda),
                                            make_diag(s.loose), true, caps);
  const Fin2Category& C = *w.base->loose;
  for (std::size_t k = 0; k < out.loose.objs.size(); ++k) {
    // tight iff every component maps the phi-image into the tight image
    bool tight = true;
    for (const auto& d : C.objects) {
      const Functor& beta_d = out.loose.objs[k].at(d);
      for (const auto& [to, img] : w.phi.at(d).on_objects)
        if (!fobject_is_tight_object(s.values.at(d), beta_d.ob(img))) {
          tight = false;
          break;
        }
      if (!tight) break;
    }
    if (tight) out.tight_objects.insert(out.loose.cat.objects[k]);
  }
  out.lim = fobject_from_subset(make_cat(out.loose.cat), out.tight_objects);
  return out;
}

}  // namespace catlim
