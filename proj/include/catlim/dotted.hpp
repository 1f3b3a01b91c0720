#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "catlim/classifier.hpp"
#include "catlim/core.hpp"
#include "catlim/enhanced.hpp"
#include "catlim/fincat.hpp"
#include "catlim/marked.hpp"
#include "catlim/two_cat.hpp"
#include "catlim/two_cat_ops.hpp"

namespace catlim {

// A marked F-category with a class T of dotted objects closed under tight
// marked morphisms.
struct DottedFCategory {
  FCatPtr base;
  std::set<Id> sigma;   // 1-cells of the loose part
  std::set<Id> dotted;  // objects
};

inline ValidationReport validate_dotted(const DottedFCategory& d) {
  ValidationReport rep;
  auto r = validate_fcategory(*d.base);
  for (auto& v : r.violations) rep.add(v);
  MarkedTwoCategory m{d.base->loose, d.sigma};
  auto r2 = validate_marked(m);
  for (auto& v : r2.violations) rep.add(v);
  if (!rep.ok()) return rep;
  const Fin2Category& C = *d.base->loose;
  for (const auto& o : d.dotted)
    if (std::find(C.objects.begin(), C.objects.end(), o) == C.objects.end())
      rep.add("dotted class contains unknown object " + o);
  if (!rep.ok()) return rep;
  for (const auto& u : d.sigma) {
    if (!d.base->tight.count(u)) continue;
    auto [a, b] = C.cell1_ends(u);
    if (d.dotted.count(a) && !d.dotted.count(b))
      rep.add("dotted class not closed: " + a + " is dotted but " + b +
              " is not, via tight marked " + u);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Dotted-lax limits with 𝔽-valued (or chordate Cat-valued) diagrams.

struct DottedConeResult {
  FObject cone;                // the dotted-lax limit as an F-object
  TransCategory loose;         // marked-lax cone category of the loose data
  std::set<Id> tight_objects;  // cones with tight legs at every dotted object
};

inline DottedConeResult dotted_lax_cone_fobject(const DottedFCategory& d,
                                                const FDiagram& s,
                                                const Caps& caps = {}) {
  {
    auto rep = validate_dotted(d);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation, rep.violations.front());
    // the diagram must be an F-functor out of this dotted base
    FDiagram rebased = s;
    rebased.base = d.base;
    rebased.loose.source = d.base->loose;
    rep = validate_fdiagram(rebased);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "diagram is not an F-functor on the dotted base: " +
                         rep.violations.front());
  }
  DottedConeResult out;
  MarkedTwoCategory mc{d.base->loose, d.sigma};
  CatValued2Functor loose = s.loose;
  loose.source = d.base->loose;
  out.loose = marked_lax_cone_category(mc, make_diag(loose), caps);
  for (std::size_t k = 0; k < out.loose.objs.size(); ++k) {
    bool tight = true;
    for (const auto& t : d.dotted) {
      Id leg = out.loose.objs[k].at(t).ob("*");
      if (!fobject_is_tight_object(s.values.at(t), leg)) {
        tight = false;
        break;
      }
    }
    if (tight) out.tight_objects.insert(out.loose.cat.objects[k]);
  }
  out.cone = fobject_from_subset(make_cat(out.loose.cat), out.tight_objects);
  return out;
}

// The colax dual of a dotted instance: 2-cells reversed in the base,
// values replaced by their opposites.
struct DualizedDotted {
  DottedFCategory d;
  FDiagram s;
};

inline DualizedDotted co_dualize(const DottedFCategory& d, const FDiagram& s) {
  DualizedDotted out;
  TwoCatPtr co_base = make_two_cat(co_dual(*d.base->loose));
  FCategory f;
  f.loose = co_base;
  f.tight = d.base->tight;
  out.d.base = make_fcat(std::move(f));
  out.d.sigma = d.sigma;
  out.d.dotted = d.dotted;
  out.s.base = out.d.base;
  out.s.loose = co_diagram(s.loose, co_base);
  for (const auto& [o, v] : s.values) {
    FObject x;
    x.loose_part = out.s.loose.at(o);
    x.tight_part = make_cat(opposite_category(*v.tight_part));
    x.embedding.source = x.tight_part;
    x.embedding.target = x.loose_part;
    x.embedding.on_objects = v.embedding.on_objects;
    x.embedding.on_morphisms = v.embedding.on_morphisms;
    out.s.values[o] = std::move(x);
  }
  return out;
}

// Dotted-colax limits computed through the formal dualizer (never a second
// code path).
inline DottedConeResult dotted_colax_cone_fobject(const DottedFCategory& d,
                                                  const FDiagram& s,
                                                  const Caps& caps = {}) {
  auto dual = co_dualize(d, s);
  return dotted_lax_cone_fobject(dual.d, dual.s, caps);
}

// ---------------------------------------------------------------------------
// The sharp classifier (-)^#: loose part by the 2-categorical classifier,
// tight part by left Kan extension along T ↪ D_τ followed by embedded-image
// factorization.

struct SharpWeight {
  FWeight sharp;           // (F#_τ, F#_λ, φ)
  Classifier loose;        // the ‡ machinery on the loose part; unit η_F
  TwoCatPtr Tcat;          // T as a full sub-2-category of Σ_τ
  TwoFunctor jT;           // T -> D_τ
  PointwiseLan lan;        // L with unit π
  std::map<Id, Functor> l; // L(d) -> F#_λ(d)
  std::map<Id, Functor> p; // L(d) ->> F#_τ(d)
};

// T as a 2-category: dotted objects, tight marked 1-cells, all 2-cells
// between them.
inline std::pair<TwoCatPtr, TwoFunctor> dotted_sub_two_category(
    const DottedFCategory& d, const TightPart& tp) {
  const Fin2Category& DT = *tp.cat;
  Fin2Category T;
  for (const auto& o : DT.objects)
    if (d.dotted.count(o)) T.objects.push_back(o);
  for (const auto& a : T.objects)
    for (const auto& b : T.objects) {
      std::set<Id> keep;
      for (const auto& u : DT.hom_at(a, b).objects)
        if (d.sigma.count(u)) keep.insert(u);
      T.hom[{a, b}] = full_subcategory(DT.hom_at(a, b), keep);
    }
  for (const auto& o : T.objects) T.id1[o] = DT.id1.at(o);
  T.reindex();
  std::set<Id> ones;
  for (const auto& u : T.one_cells()) ones.insert(u);
  std::set<Id> twos;
  for (const auto& m : T.two_cells()) twos.insert(m);
  for (const auto& [gf, h] : DT.compose1)
    if (ones.count(gf.first) && ones.count(gf.second)) T.compose1[gf] = h;
  for (const auto& [ba, r] : DT.hcompose2)
    if (twos.count(ba.first) && twos.count(ba.second)) T.hcompose2[ba] = r;
  T.reindex();
  auto Tptr = make_two_cat(std::move(T));
  {
    auto rep = validate_two_category(*Tptr);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "dotted sub-2-category invalid: " + rep.violations.front());
  }
  TwoFunctor j;
  j.source = Tptr;
  j.target = tp.cat;
  for (const auto& o : Tptr->objects) j.on_objects[o] = o;
  for (const auto& u : Tptr->one_cells()) j.on_one_cells[u] = u;
  for (const auto& m : Tptr->two_cells()) j.on_two_cells[m] = m;
  return {Tptr, j};
}

inline SharpWeight sharp_classifier(const DottedFCategory& d, const FWeight& f,
                                    std::size_t bound = 10000,
                                    const Caps& caps = {}) {
  {
    auto rep = validate_dotted(d);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation, rep.violations.front());
    rep = validate_fweight(f);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation, rep.violations.front());
  }
  SharpWeight out;
  MarkedTwoCategory mc{d.base->loose, d.sigma};
  out.loose = classifier(mc, make_diag(f.lambda), bound, caps);
  auto [Tcat, jT] = dotted_sub_two_category(d, f.tight);
  out.Tcat = Tcat;
  out.jT = jT;
  // F_tau restricted to T
  CatValued2Functor ftau_T = precompose_diagram(f.tau, jT);
  out.lan = pointwise_lan(jT, ftau_T, bound, caps);
  // M = F#_λ ∘ J : D_τ -> Cat
  CatValued2Functor M = precompose_diagram(*out.loose.result,
                                           f.tight.inclusion);
  // tau_t = η_{F,t} ∘ θ_t : F_τ(t) -> F#_λ(t)
  std::map<Id, Functor> tau;
  for (const auto& t : Tcat->objects)
    tau[t] = compose_functors(out.loose.unit.at(t), f.phi.at(t));
  out.l = lan_transpose(out.lan, jT, ftau_T, M, tau);
  // (l · J_T) ∘ π = (η·J·J_T) ∘ (θ·J_T)
  for (const auto& t : Tcat->objects)
    if (!(compose_functors(out.l.at(t), out.lan.unit.at(t)) == tau.at(t)))
      throw CatError(ErrorKind::Validation,
                     "sharp: Kan transpose equation fails at " + t);
  // pointwise factorization and the unique 2-functor extension
  const Fin2Category& DT = *f.tight.cat;
  std::map<Id, Functor> ltilde;
  CatValued2Functor Ltilde;
  Ltilde.source = f.tight.cat;
  for (const auto& dd : DT.objects) {
    auto [e, m] = factorize_functor(out.l.at(dd));
    out.p[dd] = e;
    ltilde[dd] = m;
    Ltilde.on_objects[dd] = m.source;
  }
  for (const auto& u : DT.one_cells()) {
    auto [a, b] = DT.cell1_ends(u);
    Functor top = compose_functors(out.p.at(b), out.lan.lan.f1(u));
    Functor bottom = compose_functors(M.f1(u), ltilde.at(a));
    Ltilde.on_one_cells[u] =
        unique_lift(out.p.at(a), ltilde.at(b), top, bottom);
  }
  for (const auto& m2 : DT.two_cells()) {
    auto ab = DT.cell2_hom(m2);
    const auto& mm = DT.hom_at(ab.first, ab.second).mor(m2);
    NatTransformation n;
    n.source = Ltilde.on_one_cells.at(mm.src);
    n.target = Ltilde.on_one_cells.at(mm.tgt);
    // components: unique l̃-preimages of the M(m2)-components
    std::map<Id, Id> minv;
    for (const auto& [x, img] : ltilde.at(ab.second).on_morphisms)
      minv[img] = x;
    const Functor& ld = ltilde.at(ab.first);
    for (const auto& o : Ltilde.on_objects.at(ab.first)->objects) {
      Id img = M.f2(m2).at(ld.ob(o));
      auto it = minv.find(img);
      if (it == minv.end())
        throw CatError(ErrorKind::Validation,
                       "sharp: 2-cell component misses the embedded image");
      n.components[o] = it->second;
    }
    Ltilde.on_two_cells[m2] = std::move(n);
  }
  {
    auto rep = validate_diagram(Ltilde);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "sharp tight part is not a 2-functor: " +
                         rep.violations.front());
  }
  for (const auto& dd : DT.objects)
    if (!(compose_functors(ltilde.at(dd), out.p.at(dd)) == out.l.at(dd)))
      throw CatError(ErrorKind::Validation,
                     "sharp: factorization identity fails at " + dd);
  out.sharp.base = d.base;
  out.sharp.tight = f.tight;
  out.sharp.tau = std::move(Ltilde);
  out.sharp.lambda = *out.loose.result;
  out.sharp.phi = ltilde;
  {
    auto rep = validate_fweight(out.sharp);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "sharp weight invalid: " + rep.violations.front());
  }
  return out;
}

// Prop-level check: η_F is a dotted-lax natural transformation, i.e. its
// components at dotted objects are tight morphisms of 𝔽; with a second
// weight given, also checks that every transpose β ∘ η_F stays dotted-lax.
inline ValidationReport verify_unit_dotted(const DottedFCategory& d,
                                           const FWeight& f,
                                           const SharpWeight& sh,
                                           const FWeight* g = nullptr,
                                           const Caps& caps = {}) {
  ValidationReport rep;
  for (const auto& t : sh.Tcat->objects) {
    // square: η_F t ∘ θ_t = φ_t ∘ (p_t ∘ π_t)
    Functor lhs = compose_functors(sh.loose.unit.at(t), f.phi.at(t));
    Functor rhs = compose_functors(
        sh.sharp.phi.at(t), compose_functors(sh.p.at(t), sh.lan.unit.at(t)));
    if (!(lhs == rhs)) {
      rep.add("unit square fails at dotted object " + t);
      continue;
    }
    // hence the unit maps the tight part into the φ-image
    FObject src = fweight_value(f, t);
    FObject dst = fweight_value(sh.sharp, t);
    if (!fobject_tight_morphism(src, dst, sh.loose.unit.at(t)))
      rep.add("unit component at " + t + " is not tight");
  }
  if (g) {
    auto strict = enumerate_lax_transformations(sh.loose.result,
                                                make_diag(g->lambda), true,
                                                caps);
    for (std::size_t k = 0; k < strict.objs.size(); ++k) {
      LaxTransformation transpose =
          vcompose_lax(strict.objs[k], sh.loose.unit);
      auto r = validate_lax(transpose, &d.sigma);
      if (!r.ok()) {
        rep.add("transpose of " + strict.cat.objects[k] +
                " is not marked-lax: " + r.violations.front());
        continue;
      }
      // an F-natural beta has tight components, so its transpose must have
      // tight components at every dotted object
      bool beta_tight = true;
      for (const auto& dd2 : f.tight.cat->objects)
        if (!fobject_tight_morphism(fweight_value(sh.sharp, dd2),
                                    fweight_value(*g, dd2),
                                    strict.objs[k].at(dd2)))
          beta_tight = false;
      if (!beta_tight) continue;
      for (const auto& t : d.dotted)
        if (!fobject_tight_morphism(fweight_value(f, t), fweight_value(*g, t),
                                    transpose.at(t)))
          rep.add("transpose of a tight " + strict.cat.objects[k] +
                  " is loose at " + t);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// The sharp adjunction: [D,𝔽]_{l,Σ,T}(F, G) ≅ [D,𝔽](F^#, G) by
// pre-composition with η_F, as an isomorphism of hom F-objects.

struct SharpHomObjects {
  FObject lhs;  // dotted-lax transformations F ⇒ G
  FObject rhs;  // F-natural transformations F^# ⇒ G
  TransCategory lhs_loose, rhs_loose;
  std::set<Id> lhs_tight, rhs_tight;
};

inline EquivalenceReport verify_sharp_adjunction(const DottedFCategory& d,
                                                 const FWeight& f,
                                                 const FWeight& g,
                                                 std::size_t bound = 10000,
                                                 const Caps& caps = {}) {
  SharpWeight sh = sharp_classifier(d, f, bound, caps);
  AdjunctionTransport tr =
      make_adjunction_transport(sh.loose, make_diag(g.lambda), caps);
  // loose parts: tr.marked = [D_λ,Cat]_{l,Σ}(F_λ, G_λ),
  //              tr.strict = [D_λ,Cat](F#_λ, G_λ)
  EquivalenceReport rep = transport_report(tr.fwd, tr.bwd);
  if (!rep.isomorphic) return rep;
  // tight parts: dotted-lax on the left, F-natural on the right
  std::set<Id> lhs_tight, rhs_tight;
  for (std::size_t k = 0; k < tr.marked.objs.size(); ++k) {
    bool tight = true;
    for (const auto& t : d.dotted)
      if (!fobject_tight_morphism(fweight_value(f, t), fweight_value(g, t),
                                  tr.marked.objs[k].at(t))) {
        tight = false;
        break;
      }
    if (tight) lhs_tight.insert(tr.marked.cat.objects[k]);
  }
  const Fin2Category& DT = *f.tight.cat;
  for (std::size_t k = 0; k < tr.strict.objs.size(); ++k) {
    bool tight = true;
    for (const auto& dd : DT.objects)
      if (!fobject_tight_morphism(fweight_value(sh.sharp, dd),
                                  fweight_value(g, dd),
                                  tr.strict.objs[k].at(dd))) {
        tight = false;
        break;
      }
    if (tight) rhs_tight.insert(tr.strict.cat.objects[k]);
  }
  // the transports must restrict to bijections of the tight parts
  for (const auto& o : rhs_tight)
    if (!lhs_tight.count(tr.fwd.ob(o))) {
      rep.isomorphic = false;
      rep.notes.push_back("tight part not preserved forward at " + o);
    }
  for (const auto& o : lhs_tight)
    if (!rhs_tight.count(tr.bwd.ob(o))) {
      rep.isomorphic = false;
      rep.notes.push_back("tight part not preserved backward at " + o);
    }
  if (rep.notes.empty())
    rep.notes.push_back("tight parts correspond bijectively");
  return rep;
}

// Theorem-level check: the dotted-lax limit of S equals the F-weighted limit
// {Δ(1)^#, S}, tight parts included.
inline EquivalenceReport verify_dotted_limit_theorem(const DottedFCategory& d,
                                                     const FDiagram& s,
                                                     std::size_t bound = 10000,
                                                     const Caps& caps = {}) {
  FWeight one = terminal_fweight(d.base);
  SharpWeight sh = sharp_classifier(d, one, bound, caps);
  DottedConeResult cones = dotted_lax_cone_fobject(d, s, caps);
  FWeightedLimit lim = f_weighted_limit(sh.sharp, s, caps);
  // loose-level transport via the classifier adjunction at A = Δ1
  AdjunctionTransport tr =
      make_adjunction_transport(sh.loose, make_diag(s.loose), caps);
  EquivalenceReport rep = transport_report(tr.bwd, tr.fwd);
  if (!rep.isomorphic) return rep;
  // identify the enumerations (same construction, same ids)
  if (!(tr.marked.cat == cones.loose.cat) ||
      !(tr.strict.cat == lim.loose.cat)) {
    rep.isomorphic = false;
    rep.notes.push_back("enumeration mismatch");
    return rep;
  }
  // tight parts correspond
  for (const auto& o : cones.tight_objects)
    if (!lim.tight_objects.count(tr.bwd.ob(o))) {
      rep.isomorphic = false;
      rep.notes.push_back("cone tightness not preserved at " + o);
    }
  for (const auto& o : lim.tight_objects)
    if (!cones.tight_objects.count(tr.fwd.ob(o))) {
      rep.isomorphic = false;
      rep.notes.push_back("limit tightness not preserved at " + o);
    }
  if (rep.notes.empty()) rep.notes.push_back("tight parts correspond");
  return rep;
}

// ---------------------------------------------------------------------------
// The F-category of elements of an F-weight, with Σ = {(d, 1)} and
// T = {(D, δ tight)}.

struct FElementsResult {
  DottedFCategory elements;
  ElementsResult loose_el;  // the 2-category of elements of Φ_λ
  TwoFunctor projection;    // loose-level projection
};

inline FElementsResult f_category_of_elements(const FWeight& w,
                                              const Caps& caps = {}) {
  FElementsResult out;
  out.loose_el = category_of_elements(make_diag(w.lambda), caps);
  out.projection = out.loose_el.projection;
  const Fin2Category& E = *out.loose_el.marked.base;
  FCategory f;
  f.loose = out.loose_el.marked.base;
  // tight 1-cells: pairs whose base morphism is tight in D
  for (const auto& u : E.one_cells()) {
    const auto& [dmor, omega] = out.loose_el.cell_of.at(u);
    if (w.base->tight.count(dmor)) f.tight.insert(u);
  }
  out.elements.base = make_fcat(std::move(f));
  out.elements.sigma = out.loose_el.marked.sigma;
  for (const auto& o : E.objects) {
    const auto& [Dd, delta] = out.loose_el.object_of.at(o);
    if (fobject_is_tight_object(fweight_value(w, Dd), delta))
      out.elements.dotted.insert(o);
  }
  {
    auto rep = validate_dotted(out.elements);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "F-elements invalid: " + rep.violations.front());
  }
  return out;
}

// Precompose an 𝔽-valued diagram with the elements projection.
inline FDiagram precompose_fdiagram_elements(const FElementsResult& el,
                                             const FDiagram& s) {
  FDiagram sp;
  sp.base = el.elements.base;
  sp.loose = precompose_diagram(s.loose, el.projection);
  for (const auto& o : el.elements.base->loose->objects) {
    const auto& [Dd, delta] = el.loose_el.object_of.at(o);
    sp.values[o] = s.values.at(Dd);
  }
  return sp;
}

// Theorem-level check: {Φ, S} ≅ dotted-lax limit of S P over El(Φ), tight
// parts included.
inline EquivalenceReport check_fweighted_equals_dotted(const FWeight& w,
                                                       const FDiagram& s,
                                                       const Caps& caps = {}) {
  FWeightedLimit lim = f_weighted_limit(w, s, caps);
  FElementsResult el = f_category_of_elements(w, caps);
  FDiagram sp = precompose_fdiagram_elements(el, s);
  DottedConeResult cones = dotted_lax_cone_fobject(el.elements, sp, caps);
  // loose transports via the marked module
  MarkedTransport tr;
  tr.elements = el.loose_el;
  tr.weighted = lim.loose;
  tr.marked = cones.loose;
  tr.forward = weighted_to_marked_transport(tr, true);
  tr.backward = weighted_to_marked_transport(tr, false);
  EquivalenceReport rep = transport_report(tr.forward, tr.backward);
  if (!rep.isomorphic) return rep;
  // tight restriction (Prop: "which restricts to the tight parts")
  for (const auto& o : lim.tight_objects)
    if (!cones.tight_objects.count(tr.forward.ob(o))) {
      rep.isomorphic = false;
      rep.notes.push_back("tightness not preserved forward at " + o);
    }
  for (const auto& o : cones.tight_objects)
    if (!lim.tight_objects.count(tr.backward.ob(o))) {
      rep.isomorphic = false;
      rep.notes.push_back("tightness not preserved backward at " + o);
    }
  if (rep.notes.empty()) rep.notes.push_back("restricts to the tight parts");
  return rep;
}

}  // namespace catlim
