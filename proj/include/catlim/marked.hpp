#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "catlim/core.hpp"
#include "catlim/fincat.hpp"
#include "catlim/two_cat.hpp"
#include "catlim/two_cat_ops.hpp"

namespace catlim {

// A 2-category with a class of marked 1-cells containing the identities and
// closed under composition.
struct MarkedTwoCategory {
  TwoCatPtr base;
  std::set<Id> sigma;
};

// Rejects any sigma missing an identity or a composite; the violation names
// the counterexample.
inline ValidationReport validate_marked(const MarkedTwoCategory& m) {
  ValidationReport rep;
  const Fin2Category& C = *m.base;
  for (const auto& f : m.sigma)
    if (!C.has_cell1(f)) rep.add("sigma contains unknown 1-cell " + f);
  if (!rep.ok()) return rep;
  for (const auto& [o, i] : C.id1)
    if (!m.sigma.count(i)) rep.add("sigma misses the identity " + i);
  for (const auto& g : m.sigma)
    for (const auto& f : m.sigma) {
      if (C.cell1_ends(f).second != C.cell1_ends(g).first) continue;
      const Id& gf = C.compose_cells(g, f);
      if (!m.sigma.count(gf))
        rep.add("sigma misses the composite " + gf + " = " + g + " ∘ " + f);
    }
  return rep;
}

// The marked-lax limit of f in Cat, represented by its cone category
// [A, Cat]_{l,Σ}(Δ1, f); projections recorded separately.
inline TransCategory marked_lax_cone_category(const MarkedTwoCategory& c,
                                              DiagPtr f,
                                              const Caps& caps = {}) {
  {
    auto rep = validate_marked(c);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation, rep.violations.front());
  }
  auto d1 = make_diag(delta_one(c.base));
  return enumerate_marked_transformations(d1, f, c.sigma, caps);
}

// Projection of the cone category onto the value at d: cone ↦ its leg.
inline Functor cone_projection(const TransCategory& cones, const Id& d) {
  Functor p;
  p.source = make_cat(cones.cat);
  p.target = cones.to->at(d);
  for (std::size_t i = 0; i < cones.objs.size(); ++i)
    p.on_objects[cones.cat.objects[i]] = cones.objs[i].at(d).ob("*");
  for (std::size_t i = 0; i < cones.mors.size(); ++i)
    p.on_morphisms[cones.cat.morphisms[i].id] = cones.mors[i].at(d).at("*");
  return p;
}

// ---------------------------------------------------------------------------
// The 2-category of elements of a Cat-valued weight, with its canonical
// marking Σ = {(d, 1)} and projection.

struct ElementsResult {
  MarkedTwoCategory marked;
  TwoFunctor projection;  // El(W) -> D
  DiagPtr weight;
  // id helpers
  std::map<Id, IdPair> object_of;            // elements object -> (D, delta)
  std::map<Id, std::pair<Id, Id>> cell_of;   // 1-cell -> (d, omega)
  std::map<Id, Id> two_cell_of;              // 2-cell -> alpha in D
};

namespace detail {

inline Id el_obj(const Id& D, const Id& delta) { return pair_id(D, delta); }
inline Id el_one(const Id& src_obj, const Id& d, const Id& omega) {
  return "(" + src_obj + "|" + d + "|" + omega + ")";
}
inline Id el_two(const Id& src1, const Id& tgt1, const Id& alpha) {
  return "[" + src1 + ">" + tgt1 + ";" + alpha + "]";
}

}  // namespace detail

inline ElementsResult category_of_elements(DiagPtr w, const Caps& caps = {}) {
  const Fin2Category& D = *w->source;
  ElementsResult out;
  out.weight = w;
  Fin2Category E;
  // objects
  for (const auto& Dd : D.objects)
    for (const auto& delta : w->at(Dd)->objects) {
      Id o = detail::el_obj(Dd, delta);
      E.objects.push_back(o);
      out.object_of[o] = {Dd, delta};
    }
  check_object_cap(E.objects.size(), caps, "category_of_elements");
  // hom categories
  struct Cell1 {
    Id id, d, omega, src, tgt;
  };
  std::map<IdPair, std::vector<Cell1>> homs1;
  for (const auto& o1 : E.objects)
    for (const auto& o2 : E.objects) {
      auto [D1, d1v] = out.object_of.at(o1);
      auto [D2, d2v] = out.object_of.at(o2);
      for (const auto& d : D.hom_at(D1, D2).objects) {
        Id img = w->f1(d).ob(d1v);
        for (const auto& om : w->at(D2)->hom(img, d2v)) {
          Cell1 c{detail::el_one(o1, d, om), d, om, o1, o2};
          homs1[{o1, o2}].push_back(c);
          out.cell_of[c.id] = {d, om};
        }
      }
    }
  for (const auto& o1 : E.objects)
    for (const auto& o2 : E.objects) {
      auto [D1, d1v] = out.object_of.at(o1);
      auto [D2, d2v] = out.object_of.at(o2);
      FinCategory h;
      for (const auto& c : homs1[{o1, o2}]) h.objects.push_back(c.id);
      // 2-cells: alpha : d => d' with omega' ∘ W(alpha)_{delta1} = omega
      for (const auto& ca : homs1[{o1, o2}])
        for (const auto& cb : homs1[{o1, o2}]) {
          const FinCategory& homD = D.hom_at(D1, D2);
          for (const auto& al : homD.morphisms) {
            if (al.src != ca.d || al.tgt != cb.d) continue;
            Id walpha = w->f2(al.id).at(d1v);
            if (w->at(D2)->compose(cb.omega, walpha) != ca.omega) continue;
            Id mid = detail::el_two(ca.id, cb.id, al.id);
            h.morphisms.push_back({mid, ca.id, cb.id});
            out.two_cell_of[mid] = al.id;
            if (D.hom_at(D1, D2).is_identity(al.id) && ca.id == cb.id)
              h.identity[ca.id] = mid;
          }
        }
      h.reindex();
      // vertical composition inherited from D
      for (const auto& g : h.morphisms)
        for (const auto& f2 : h.morphisms) {
          if (f2.tgt != g.src) continue;
          Id alpha = D.vcompose(out.two_cell_of.at(g.id),
                                out.two_cell_of.at(f2.id));
          Id comp = detail::el_two(f2.src, g.tgt, alpha);
          if (!h.has_morphism(comp))
            throw CatError(ErrorKind::Validation,
                           "elements: vertical composite missing");
          h.compose_table[{g.id, f2.id}] = comp;
        }
      h.reindex();
      E.hom[{o1, o2}] = std::move(h);
    }
  // identity 1-cells and compositions
  for (const auto& o : E.objects) {
    auto [Dd, delta] = out.object_of.at(o);
    E.id1[o] = detail::el_one(o, D.id1.at(Dd), w->at(Dd)->id_of(delta));
  }
  for (const auto& [ends1, cells1] : homs1)
    for (const auto& [ends2, cells2] : homs1) {
      if (ends1.second != ends2.first) continue;
      for (const auto& a : cells1)
        for (const auto& b : cells2) {
          // (k, kappa) ∘ (h, eta) = (kh, kappa ∘ W(k)(eta))
          Id kh = D.compose_cells(b.d, a.d);
          Id wk_eta = w->f1(b.d).mo(a.omega);
          auto [D3, d3v] = out.object_of.at(b.tgt);
          Id omega = w->at(D3)->compose(b.omega, wk_eta);
          E.compose1[{b.id, a.id}] = detail::el_one(a.src, kh, omega);
        }
    }
  E.reindex();
  // horizontal composition of 2-cells, inherited from D
  for (const auto& [ends1, cells1] : homs1)
    for (const auto& [ends2, cells2] : homs1) {
      if (ends1.second != ends2.first) continue;
      const FinCategory& h1 = E.hom_at(ends1.first, ends1.second);
      const FinCategory& h2 = E.hom_at(ends2.first, ends2.second);
      for (const auto& m1 : h1.morphisms)
        for (const auto& m2 : h2.morphisms) {
          Id alpha = D.hcompose(out.two_cell_of.at(m2.id),
                                out.two_cell_of.at(m1.id));
          Id src = E.compose_cells(m2.src, m1.src);
          Id tgt = E.compose_cells(m2.tgt, m1.tgt);
          Id comp = detail::el_two(src, tgt, alpha);
          E.hcompose2[{m2.id, m1.id}] = comp;
        }
    }
  E.reindex();
  {
    auto rep = validate_two_category(E);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "category_of_elements built an invalid 2-category: " +
                         rep.violations.front());
  }
  out.marked.base = make_two_cat(std::move(E));
  // sigma: pairs with identity second component
  for (const auto& [cid, dom] : out.cell_of) {
    auto [D2x, d2v] = out.object_of.at(out.marked.base->cell1_ends(cid).second);
    if (w->at(D2x)->is_identity(dom.second)) out.marked.sigma.insert(cid);
  }
  {
    auto rep = validate_marked(out.marked);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "elements marking invalid: " + rep.violations.front());
  }
  // projection
  out.projection.source = out.marked.base;
  out.projection.target = w->source;
  for (const auto& [o, Dd] : out.object_of)
    out.projection.on_objects[o] = Dd.first;
  for (const auto& [cid, dom] : out.cell_of)
    out.projection.on_one_cells[cid] = dom.first;
  for (const auto& [mid, al] : out.two_cell_of)
    out.projection.on_two_cells[mid] = al;
  {
    auto rep = validate_two_functor(out.projection);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "elements projection invalid: " + rep.violations.front());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transport between weighted cones and marked-lax cones over the elements.

struct EquivalenceReport {
  bool isomorphic = false;
  Functor forward, backward;
  bool forward_backward_id = false;
  bool backward_forward_id = false;
  std::vector<std::string> notes;
};

// forward: beta ↦ beta P ∘ mu, as an honest functor between the enumerated
// cone categories; backward: alpha ↦ {alpha_(D,-)}.
struct MarkedTransport {
  ElementsResult elements;
  TransCategory weighted;  // [D, Cat](W, R)
  TransCategory marked;    // [El W, Cat]_{l,Σ}(Δ1, R P)
  Functor forward, backward;
};

inline LaxTransformation transport_forward_trans(
    const ElementsResult& el, const LaxTransformation& beta, DiagPtr rp) {
  // beta : W => R strict; result: Δ1 => R P marked-lax
  const Fin2Category& E = *el.marked.base;
  DiagPtr w = el.weight;
  LaxTransformation a;
  a.from = make_diag(delta_one(el.marked.base));
  a.to = rp;
  for (const auto& o : E.objects) {
    auto [Dd, delta] = el.object_of.at(o);
    a.comp1[o] = const_object_functor(rp->at(o), beta.at(Dd).ob(delta));
  }
  for (const auto& u : E.one_cells()) {
    auto [o1, o2] = E.cell1_ends(u);
    auto [d, omega] = el.cell_of.at(u);
    auto [D2, d2v] = el.object_of.at(o2);
    NatTransformation n;
    n.source = compose_functors(rp->f1(u), a.comp1.at(o1));
    n.target = compose_functors(a.comp1.at(o2),
                                identity_functor(a.from->at(o1)));
    n.components["*"] = beta.at(D2).mo(omega);
    a.comp2[u] = std::move(n);
  }
  return a;
}

inline LaxTransformation transport_backward_trans(
    const LaxTransformation& alpha, DiagPtr w, DiagPtr r) {
  // alpha : Δ1 => R P marked-lax; result: W => R strict
  const Fin2Category& D = *w->source;
  LaxTransformation b;
  b.from = w;
  b.to = r;
  for (const auto& Dd : D.objects) {
    Functor f;
    f.source = w->at(Dd);
    f.target = r->at(Dd);
    for (const auto& delta : w->at(Dd)->objects)
      f.on_objects[delta] = alpha.at(detail::el_obj(Dd, delta)).ob("*");
    for (const auto& om : w->at(Dd)->morphisms) {
      // component at the 1-cell (1_D, om)
      Id src_obj = detail::el_obj(Dd, om.src);
      Id cell = detail::el_one(src_obj, D.id1.at(Dd), om.id);
      f.on_morphisms[om.id] = alpha.at2(cell).at("*");
    }
    auto rep = validate_functor(f);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "transport backward produced invalid functor: " +
                         rep.violations.front());
    b.comp1[Dd] = std::move(f);
  }
  for (const auto& u : D.one_cells()) {
    auto [d, c] = D.cell1_ends(u);
    b.comp2[u] =
        identity_nat(compose_functors(r->f1(u), b.comp1.at(d)));
  }
  return b;
}

// direction: true = forward (weighted -> marked), false = backward.
inline Functor weighted_to_marked_transport(MarkedTransport& tr,
                                            bool forward) {
  const TransCategory& src = forward ? tr.weighted : tr.marked;
  const TransCategory& dst = forward ? tr.marked : tr.weighted;
  DiagPtr rp = tr.marked.to;
  DiagPtr w = tr.weighted.from;
  DiagPtr r = tr.weighted.to;
  Functor F;
  F.source = make_cat(src.cat);
  F.target = make_cat(dst.cat);
  for (std::size_t i = 0; i < src.objs.size(); ++i) {
    LaxTransformation img =
        forward ? transport_forward_trans(tr.elements, src.objs[i], rp)
                : transport_backward_trans(src.objs[i], w, r);
    F.on_objects[src.cat.objects[i]] = dst.object_of(img);
  }
  for (std::size_t i = 0; i < src.mors.size(); ++i) {
    const Modification& m = src.mors[i];
    Modification img;
    if (forward) {
      // component at (D, delta): the single component of Gamma_D at delta
      for (const auto& o : tr.elements.marked.base->objects) {
        auto [Dd, delta] = tr.elements.object_of.at(o);
        const Morphism& mm = src.cat.morphisms[i];
        NatTransformation n;
        n.source = transport_forward_trans(tr.elements,
                                           src.trans_of(mm.src), rp)
                       .at(o);
        n.target = transport_forward_trans(tr.elements,
                                           src.trans_of(mm.tgt), rp)
                       .at(o);
        n.components["*"] = m.at(Dd).at(delta);
        img.comp[o] = std::move(n);
      }
    } else {
      const Morphism& mm = src.cat.morphisms[i];
      LaxTransformation b1 =
          transport_backward_trans(src.trans_of(mm.src), w, r);
      LaxTransformation b2 =
          transport_backward_trans(src.trans_of(mm.tgt), w, r);
      for (const auto& Dd : w->source->objects) {
        NatTransformation n;
        n.source = b1.at(Dd);
        n.target = b2.at(Dd);
        for (const auto& delta : w->at(Dd)->objects)
          n.components[delta] = m.at(detail::el_obj(Dd, delta)).at("*");
        img.comp[Dd] = std::move(n);
      }
    }
    const Morphism& mm = src.cat.morphisms[i];
    F.on_morphisms[mm.id] = dst.morphism_of(
        F.on_objects.at(mm.src), img, F.on_objects.at(mm.tgt));
  }
  auto rep = validate_functor(F);
  if (!rep.ok())
    throw CatError(ErrorKind::Validation,
                   "transport functor invalid: " + rep.violations.front());
  return F;
}

// Builds both cone categories and the transports; used by the verifier.
inline MarkedTransport make_marked_transport(DiagPtr w, DiagPtr r,
                                             const Caps& caps = {}) {
  MarkedTransport tr;
  tr.elements = category_of_elements(w, caps);
  tr.weighted = weighted_limit_in_cat(w, r, caps);
  CatValued2Functor rp = precompose_diagram(*r, tr.elements.projection);
  tr.marked =
      marked_lax_cone_category(tr.elements.marked, make_diag(rp), caps);
  tr.forward = weighted_to_marked_transport(tr, true);
  tr.backward = weighted_to_marked_transport(tr, false);
  return tr;
}

// Verifies {W, R} ≅ marked-lax limit of R P over El(W), with the round trips
// being identities on the nose.
inline EquivalenceReport check_weighted_equals_marked(DiagPtr w, DiagPtr r,
                                                      const Caps& caps = {}) {
  MarkedTransport tr = make_marked_transport(w, r, caps);
  EquivalenceReport rep;
  rep.forward = tr.forward;
  rep.backward = tr.backward;
  Functor gf = compose_functors(tr.backward, tr.forward);
  Functor fg = compose_functors(tr.forward, tr.backward);
  rep.backward_forward_id = gf == identity_functor(gf.source);
  rep.forward_backward_id = fg == identity_functor(fg.source);
  rep.isomorphic = rep.backward_forward_id && rep.forward_backward_id;
  if (!rep.isomorphic) rep.notes.push_back("round trips are not identities");
  return rep;
}

}  // namespace catlim
