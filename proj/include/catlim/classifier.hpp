#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "catlim/codescent.hpp"
#include "catlim/core.hpp"
#include "catlim/fincat.hpp"
#include "catlim/marked.hpp"
#include "catlim/presentation.hpp"
#include "catlim/two_cat.hpp"
#include "catlim/two_cat_ops.hpp"

namespace catlim {

// ---------------------------------------------------------------------------
// Presheaf-level monad plumbing for T = E* Lan_E on a marked base (C, Σ).

namespace barmonad {

inline std::map<Id, CatPtr> values_of(const CatValued2Functor& A) {
  std::map<Id, CatPtr> v;
  for (const auto& [o, c] : A.on_objects) v[o] = c;
  return v;
}

// mu_X : T(TX) -> TX, (f, (g, x)) ↦ (fg, x).
inline std::map<Id, Functor> mu_family(const Fin2Category& C,
                                       const std::map<Id, CatPtr>& X,
                                       const CatValued2Functor& TX,
                                       const CatValued2Functor& TTX) {
  std::map<Id, Functor> mu;
  for (const auto& c : C.objects) {
    Functor f;
    f.source = TTX.at(c);
    f.target = TX.at(c);
    for (const auto& d1 : C.objects) {
      const FinCategory& h1 = C.hom_at(d1, c);
      for (const auto& ff : h1.objects)
        for (const auto& d : C.objects) {
          const FinCategory& h2 = C.hom_at(d, d1);
          for (const auto& g : h2.objects)
            for (const auto& x : X.at(d)->objects)
              f.on_objects[tag_id(d1, pair_id(ff, tag_id(d, pair_id(g, x))))] =
                  tag_id(d, pair_id(C.compose_cells(ff, g), x));
          for (const auto& ga : h1.morphisms)
            for (const auto& de : h2.morphisms)
              for (const auto& xi : X.at(d)->morphisms)
                f.on_morphisms[tag_id(
                    d1, pair_id(ga.id, tag_id(d, pair_id(de.id, xi.id))))] =
                    tag_id(d, pair_id(C.hcompose(ga.id, de.id), xi.id));
        }
    }
    mu[c] = std::move(f);
  }
  return mu;
}

// T h : TX -> TZ for a family h_d : X(d) -> Z(d).
inline std::map<Id, Functor> apply_T(const Fin2Category& C,
                                     const std::map<Id, CatPtr>& X,
                                     const CatValued2Functor& TX,
                                     const CatValued2Functor& TZ,
                                     const std::map<Id, Functor>& h) {
  std::map<Id, Functor> out;
  for (const auto& c : C.objects) {
    Functor f;
    f.source = TX.at(c);
    f.target = TZ.at(c);
    for (const auto& d : C.objects) {
      const FinCategory& hd = C.hom_at(d, c);
      for (const auto& ff : hd.objects)
        for (const auto& x : X.at(d)->objects)
          f.on_objects[tag_id(d, pair_id(ff, x))] =
              tag_id(d, pair_id(ff, h.at(d).ob(x)));
      for (const auto& ga : hd.morphisms)
        for (const auto& xi : X.at(d)->morphisms)
          f.on_morphisms[tag_id(d, pair_id(ga.id, xi.id))] =
              tag_id(d, pair_id(ga.id, h.at(d).mo(xi.id)));
    }
    out[c] = std::move(f);
  }
  return out;
}

// Structure map a : TA -> A of the presheaf A, a_c(f, x) = A(f)(x).
inline std::map<Id, Functor> algebra_family(const CatValued2Functor& A,
                                            const CatValued2Functor& TA) {
  const Fin2Category& C = *A.source;
  std::map<Id, Functor> out;
  for (const auto& c : C.objects) {
    Functor ac;
    ac.source = TA.at(c);
    ac.target = A.at(c);
    for (const auto& d : C.objects) {
      const FinCategory& hd = C.hom_at(d, c);
      for (const auto& ff : hd.objects)
        for (const auto& x : A.at(d)->objects)
          ac.on_objects[tag_id(d, pair_id(ff, x))] = A.f1(ff).ob(x);
      for (const auto& ga : hd.morphisms)
        for (const auto& xi : A.at(d)->morphisms) {
          const Morphism& xim = A.at(d)->mor(xi.id);
          Id first = A.f1(ga.src).mo(xi.id);
          Id second = A.f2(ga.id).at(xim.tgt);
          ac.on_morphisms[tag_id(d, pair_id(ga.id, xi.id))] =
              A.at(c)->compose(second, first);
        }
    }
    out[c] = std::move(ac);
  }
  return out;
}

// Wraps a per-object family as a strict transformation and validates it.
inline LaxTransformation family_to_strict(DiagPtr from, DiagPtr to,
                                          const std::map<Id, Functor>& fam) {
  LaxTransformation t;
  t.from = from;
  t.to = to;
  const Fin2Category& C = *from->source;
  t.comp1 = fam;
  for (const auto& u : C.one_cells()) {
    auto [d, c] = C.cell1_ends(u);
    t.comp2[u] = identity_nat(compose_functors(to->f1(u), fam.at(d)));
  }
  auto rep = validate_lax(t);
  if (!rep.ok())
    throw CatError(ErrorKind::Validation,
                   "family is not a strict transformation: " +
                       rep.violations.front());
  return t;
}

}  // namespace barmonad

// ---------------------------------------------------------------------------
// The bar resolution: marked coherence data in [C, Cat] built from
// T = E* Lan_E and A_σ = Σ Σ C(d1,-) × Σ(d,d1) × A(d).

struct BarResolution {
  MarkedTwoCategory base;
  DiagPtr A, TA, T2A, T3A, As;
  LaxTransformation p, m, q;  // T3A => T2A
  LaxTransformation s, t;     // T2A => TA
  LaxTransformation i;        // TA => T2A
  LaxTransformation j;        // TA => As
  LaxTransformation z;        // As => T2A
};

inline BarResolution bar_resolution(const MarkedTwoCategory& mc, DiagPtr A,
                                    const Caps& caps = {}) {
  {
    auto rep = validate_marked(mc);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation, rep.violations.front());
  }
  const Fin2Category& C = *mc.base;
  using namespace barmonad;
  BarResolution bar;
  bar.base = mc;
  bar.A = A;
  auto Av = values_of(*A);
  auto TAr = lan_along_objects(mc.base, Av, caps);
  auto TAv = values_of(TAr.lan);
  auto T2Ar = lan_along_objects(mc.base, TAv, caps);
  auto T2Av = values_of(T2Ar.lan);
  auto T3Ar = lan_along_objects(mc.base, T2Av, caps);
  bar.TA = make_diag(TAr.lan);
  bar.T2A = make_diag(T2Ar.lan);
  bar.T3A = make_diag(T3Ar.lan);

  // A_σ = T(Y) with Y(d1) = Σ_d Σ(d,d1) × A(d); names agree with TA's.
  std::map<Id, CatPtr> Yv;
  for (const auto& d1 : C.objects) {
    std::vector<FinCategory> keep;
    keep.reserve(C.objects.size());
    std::vector<std::pair<Id, const FinCategory*>> summands;
    for (const auto& d : C.objects) {
      std::set<Id> marked_cells;
      for (const auto& e : C.hom_at(d, d1).objects)
        if (mc.sigma.count(e)) marked_cells.insert(e);
      keep.push_back(product_category(
          full_subcategory(C.hom_at(d, d1), marked_cells), *A->at(d)));
      summands.push_back({d, &keep.back()});
    }
    Yv[d1] = make_cat(coproduct_category(summands));
  }
  auto Asr = lan_along_objects(mc.base, Yv, caps);
  bar.As = make_diag(Asr.lan);

  // arrows
  auto mu_A = mu_family(C, Av, TAr.lan, T2Ar.lan);
  auto a_fam = algebra_family(*A, TAr.lan);
  auto Ta = apply_T(C, TAv, T2Ar.lan, TAr.lan, a_fam);
  std::map<Id, Functor> eta_A;
  for (const auto& c : C.objects) eta_A[c] = TAr.unit.at(c);
  // T eta : TA => T2A takes (f, x) ↦ (f, (1, x))
  auto Teta_fixed = apply_T(C, Av, TAr.lan, T2Ar.lan, eta_A);
  auto mu_TA = mu_family(C, TAv, T2Ar.lan, T3Ar.lan);
  auto Tmu = apply_T(C, T2Av, T3Ar.lan, T2Ar.lan, mu_A);
  auto T2a = apply_T(C, T2Av, T3Ar.lan, T2Ar.lan, Ta);

  bar.s = barmonad::family_to_strict(bar.T2A, bar.TA, mu_A);
  bar.t = barmonad::family_to_strict(bar.T2A, bar.TA, Ta);
  bar.i = barmonad::family_to_strict(bar.TA, bar.T2A, Teta_fixed);
  bar.p = barmonad::family_to_strict(bar.T3A, bar.T2A, mu_TA);
  bar.m = barmonad::family_to_strict(bar.T3A, bar.T2A, Tmu);
  bar.q = barmonad::family_to_strict(bar.T3A, bar.T2A, T2a);
  // j : corestriction of T eta_A through A_σ (same names), z : inclusion
  std::map<Id, Functor> jfam, zfam;
  for (const auto& c : C.objects) {
    Functor jf = Teta_fixed.at(c);
    jf.target = bar.As->at(c);
    jfam[c] = std::move(jf);
    Functor zf;
    zf.source = bar.As->at(c);
    zf.target = bar.T2A->at(c);
    for (const auto& o : zf.source->objects) zf.on_objects[o] = o;
    for (const auto& mm : zf.source->morphisms) zf.on_morphisms[mm.id] = mm.id;
    zfam[c] = std::move(zf);
  }
  bar.j = barmonad::family_to_strict(bar.TA, bar.As, jfam);
  bar.z = barmonad::family_to_strict(bar.As, bar.T2A, zfam);

  // marked identities at the presheaf level
  auto expect_equal = [&](const LaxTransformation& x,
                          const LaxTransformation& y, const char* what) {
    if (ser(x) != ser(y))
      throw CatError(ErrorKind::Validation,
                     std::string("bar resolution identity fails: ") + what);
  };
  expect_equal(vcompose_lax(bar.s, bar.i), identity_lax(bar.TA), "si = 1");
  expect_equal(vcompose_lax(bar.t, bar.i), identity_lax(bar.TA), "ti = 1");
  expect_equal(vcompose_lax(bar.s, bar.p), vcompose_lax(bar.s, bar.m),
               "sp = sm");
  expect_equal(vcompose_lax(bar.t, bar.q), vcompose_lax(bar.t, bar.m),
               "tq = tm");
  expect_equal(vcompose_lax(bar.t, bar.p), vcompose_lax(bar.s, bar.q),
               "tp = sq");
  expect_equal(vcompose_lax(bar.z, bar.j), bar.i, "i = zj");
  return bar;
}

// ΣCocone(𝔄_σ, B) in the presheaf host: objects (G_σ : A_σ => B strict,
// υ : Gμ ⇒ GTa modification) with the multiplicative and marked equations.
struct PresheafCoconeCategory {
  FinCategory cat;
  std::vector<std::pair<LaxTransformation, Modification>> objs;
  std::map<Id, std::size_t> obj_index;
  std::vector<Modification> mors;
  std::map<Id, std::size_t> mor_index;

  Id object_of(const LaxTransformation& gs, const Modification& up) const {
    std::string key = ser(gs) + ser(up);
    for (std::size_t k = 0; k < objs.size(); ++k)
      if (ser(objs[k].first) + ser(objs[k].second) == key)
        return cat.objects[k];
    throw CatError(ErrorKind::Validation, "presheaf cocone not found");
  }
  Id morphism_of(const Id& src, const Modification& th, const Id& tgt) const {
    for (std::size_t k = 0; k < mors.size(); ++k)
      if (cat.morphisms[k].src == src && cat.morphisms[k].tgt == tgt &&
          ser(mors[k]) == ser(th))
        return cat.morphisms[k].id;
    throw CatError(ErrorKind::Validation, "presheaf cocone morphism not found");
  }
};

inline bool presheaf_cocone_equations_hold(const BarResolution& bar,
                                           const LaxTransformation& gs,
                                           const Modification& up) {
  LaxTransformation y = vcompose_lax(gs, bar.j);
  Modification up_p = whisker_mod_lax(up, bar.p);
  Modification up_q = whisker_mod_lax(up, bar.q);
  Modification up_m = whisker_mod_lax(up, bar.m);
  if (ser(vcompose_modifications(up_q, up_p)) != ser(up_m)) return false;
  LaxTransformation ys = vcompose_lax(y, bar.s);
  LaxTransformation yt = vcompose_lax(y, bar.t);
  if (ser(vcompose_lax(ys, bar.z)) != ser(gs)) return false;
  if (ser(vcompose_lax(yt, bar.z)) != ser(gs)) return false;
  Modification up_z = whisker_mod_lax(up, bar.z);
  for (const auto& [o, n] : up_z.comp)
    if (!nat_is_identity(n)) return false;
  return true;
}

inline PresheafCoconeCategory presheaf_cocone_category(const BarResolution& bar,
                                                       DiagPtr B,
                                                       const Caps& caps = {}) {
  PresheafCoconeCategory out;
  auto strict_gs =
      detail::enumerate_transformations(bar.As, B, all_one_cells(*bar.base.base),
                                        caps);
  std::size_t n = 0;
  for (const auto& gs : strict_gs) {
    LaxTransformation y = vcompose_lax(gs, bar.j);
    LaxTransformation ys = vcompose_lax(y, bar.s);
    LaxTransformation yt = vcompose_lax(y, bar.t);
    for (auto& up : detail::enumerate_modifications(ys, yt, caps)) {
      if (!presheaf_cocone_equations_hold(bar, gs, up)) continue;
      Id oid = "c" + std::to_string(n++);
      out.cat.objects.push_back(oid);
      out.obj_index[oid] = out.objs.size();
      out.objs.push_back({gs, up});
    }
  }
  check_object_cap(out.objs.size(), caps, "presheaf_cocone_category");
  LaxTransformation js = vcompose_lax(bar.j, bar.s);
  LaxTransformation jt = vcompose_lax(bar.j, bar.t);
  std::size_t mcount = 0;
  for (std::size_t a = 0; a < out.objs.size(); ++a)
    for (std::size_t b = 0; b < out.objs.size(); ++b) {
      for (auto& th : detail::enumerate_modifications(out.objs[a].first,
                                                      out.objs[b].first,
                                                      caps)) {
        Modification th_s = whisker_mod_lax(th, js);
        Modification th_t = whisker_mod_lax(th, jt);
        if (ser(vcompose_modifications(th_t, out.objs[a].second)) !=
            ser(vcompose_modifications(out.objs[b].second, th_s)))
          continue;
        bool is_id = a == b;
        if (is_id)
          for (const auto& [o, nn] : th.comp)
            if (!nat_is_identity(nn)) { is_id = false; break; }
        Id mid;
        if (is_id) {
          mid = identity_name(out.cat.objects[a]);
          out.cat.identity[out.cat.objects[a]] = mid;
        } else {
          mid = "cm" + std::to_string(mcount++);
        }
        out.cat.morphisms.push_back(
            {mid, out.cat.objects[a], out.cat.objects[b]});
        out.mor_index[mid] = out.mors.size();
        out.mors.push_back(std::move(th));
      }
    }
  for (const auto& g : out.cat.morphisms)
    for (const auto& f : out.cat.morphisms) {
      if (f.tgt != g.src) continue;
      Modification c = vcompose_modifications(
          out.mors[out.mor_index.at(g.id)], out.mors[out.mor_index.at(f.id)]);
      out.cat.compose_table[{g.id, f.id}] = out.morphism_of(f.src, c, g.tgt);
    }
  out.cat.reindex();
  auto rep = validate_category(out.cat);
  if (!rep.ok())
    throw CatError(ErrorKind::Validation,
                   "presheaf cocone category invalid: " +
                       rep.violations.front());
  return out;
}

// ---------------------------------------------------------------------------
// The bridge ΣCocone(𝔄_σ, B) ≅ [C, Cat]_{l,Σ}(A, B).

// marked-lax (F, F̄) ↦ cocone (G_σ, υ) with G = b·TF, υ = b·TF̄.
inline std::pair<LaxTransformation, Modification> bridge_from_marked(
    const BarResolution& bar, DiagPtr B, const LaxTransformation& F) {
  const Fin2Category& C = *bar.base.base;
  LaxTransformation gs;
  gs.from = bar.As;
  gs.to = B;
  for (const auto& c : C.objects) {
    Functor g;
    g.source = bar.As->at(c);
    g.target = B->at(c);
    for (const auto& d1 : C.objects) {
      const FinCategory& h1 = C.hom_at(d1, c);
      for (const auto& d : C.objects) {
        const FinCategory& h2 = C.hom_at(d, d1);
        for (const auto& ff : h1.objects)
          for (const auto& e : h2.objects) {
            if (!bar.base.sigma.count(e)) continue;
            Id fe = C.compose_cells(ff, e);
            for (const auto& x : bar.A->at(d)->objects)
              g.on_objects[tag_id(d1, pair_id(ff, tag_id(d, pair_id(e, x))))] =
                  B->f1(fe).ob(F.at(d).ob(x));
          }
        for (const auto& ga : h1.morphisms)
          for (const auto& de : h2.morphisms) {
            if (!bar.base.sigma.count(de.src) || !bar.base.sigma.count(de.tgt))
              continue;
            for (const auto& xi : bar.A->at(d)->morphisms) {
              const Morphism& xim = bar.A->at(d)->mor(xi.id);
              Id two = C.hcompose(ga.id, de.id);  // fe ⇒ f'e'
              Id fe = C.compose_cells(ga.src, de.src);
              Id first = B->f1(fe).mo(F.at(d).mo(xi.id));
              Id second = B->f2(two).at(F.at(d).ob(xim.tgt));
              g.on_morphisms[tag_id(
                  d1, pair_id(ga.id, tag_id(d, pair_id(de.id, xi.id))))] =
                  B->at(c)->compose(second, first);
            }
          }
      }
    }
    gs.comp1[c] = std::move(g);
  }
  for (const auto& u : C.one_cells()) {
    auto [d, c] = C.cell1_ends(u);
    gs.comp2[u] = identity_nat(compose_functors(B->f1(u), gs.comp1.at(d)));
  }
  {
    auto rep = validate_lax(gs);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "bridge G_σ not strict: " + rep.violations.front());
  }
  // υ : Gμ_A ⇒ GTa, component at c at (f, (g, x)) is B(f)(F̄_g at x)
  Modification up;
  LaxTransformation y = vcompose_lax(gs, bar.j);
  LaxTransformation ys = vcompose_lax(y, bar.s);
  LaxTransformation yt = vcompose_lax(y, bar.t);
  for (const auto& c : C.objects) {
    NatTransformation n;
    n.source = ys.at(c);
    n.target = yt.at(c);
    for (const auto& d1 : C.objects) {
      const FinCategory& h1 = C.hom_at(d1, c);
      for (const auto& d : C.objects) {
        const FinCategory& h2 = C.hom_at(d, d1);
        for (const auto& ff : h1.objects)
          for (const auto& g : h2.objects)
            for (const auto& x : bar.A->at(d)->objects)
              n.components[tag_id(d1,
                                  pair_id(ff, tag_id(d, pair_id(g, x))))] =
                  B->f1(ff).mo(F.at2(g).at(x));
      }
    }
    up.comp[c] = std::move(n);
  }
  return {gs, up};
}

// cocone (G_σ, υ) ↦ marked-lax (F, F̄): F = G∘η, F̄ from υ at (1, g, x).
inline LaxTransformation bridge_to_marked(const BarResolution& bar, DiagPtr B,
                                          const LaxTransformation& gs,
                                          const Modification& up) {
  const Fin2Category& C = *bar.base.base;
  LaxTransformation G = vcompose_lax(gs, bar.j);
  LaxTransformation F;
  F.from = bar.A;
  F.to = B;
  for (const auto& c : C.objects) {
    Functor f;
    f.source = bar.A->at(c);
    f.target = B->at(c);
    const Id& onec = C.id1.at(c);
    for (const auto& x : bar.A->at(c)->objects)
      f.on_objects[x] = G.at(c).ob(tag_id(c, pair_id(onec, x)));
    for (const auto& xi : bar.A->at(c)->morphisms)
      f.on_morphisms[xi.id] =
          G.at(c).mo(tag_id(c, pair_id(C.id2(onec), xi.id)));
    F.comp1[c] = std::move(f);
  }
  for (const auto& u : C.one_cells()) {
    auto [d, c] = C.cell1_ends(u);
    NatTransformation n;
    n.source = compose_functors(B->f1(u), F.at(d));
    n.target = compose_functors(F.at(c), bar.A->f1(u));
    const Id& onec = C.id1.at(c);
    for (const auto& x : bar.A->at(d)->objects)
      n.components[x] = up.at(c).at(
          tag_id(c, pair_id(onec, tag_id(d, pair_id(u, x)))));
    F.comp2[u] = std::move(n);
  }
  auto rep = validate_lax(F, &bar.base.sigma);
  if (!rep.ok())
    throw CatError(ErrorKind::Validation,
                   "bridge produced a non-marked-lax transformation: " +
                       rep.violations.front());
  return F;
}

// direction: true = from cocones to marked-lax transformations.
inline Functor cocone_marked_lax_bridge(const BarResolution& bar, DiagPtr B,
                                        const PresheafCoconeCategory& cocones,
                                        const TransCategory& marked,
                                        bool to_marked) {
  Functor F;
  if (to_marked) {
    F.source = make_cat(cocones.cat);
    F.target = make_cat(marked.cat);
    for (std::size_t k = 0; k < cocones.objs.size(); ++k)
      F.on_objects[cocones.cat.objects[k]] = marked.object_of(
          bridge_to_marked(bar, B, cocones.objs[k].first,
                           cocones.objs[k].second));
    for (std::size_t k = 0; k < cocones.mors.size(); ++k) {
      const Morphism& mm = cocones.cat.morphisms[k];
      // θ ↦ ρ with ρ_c at x = θ_c at (1_c, x)
      Modification rho;
      const Fin2Category& C = *bar.base.base;
      LaxTransformation F1 = bridge_to_marked(
          bar, B, cocones.objs[cocones.obj_index.at(mm.src)].first,
          cocones.objs[cocones.obj_index.at(mm.src)].second);
      LaxTransformation F2 = bridge_to_marked(
          bar, B, cocones.objs[cocones.obj_index.at(mm.tgt)].first,
          cocones.objs[cocones.obj_index.at(mm.tgt)].second);
      for (const auto& c : C.objects) {
        NatTransformation n;
        n.source = F1.at(c);
        n.target = F2.at(c);
        const Id& onec = C.id1.at(c);
        for (const auto& x : bar.A->at(c)->objects)
          n.components[x] = cocones.mors[k].at(c).at(
              tag_id(c, pair_id(onec, tag_id(c, pair_id(onec, x)))));
        rho.comp[c] = std::move(n);
      }
      F.on_morphisms[mm.id] = marked.morphism_of(
          F.on_objects.at(mm.src), rho, F.on_objects.at(mm.tgt));
    }
  } else {
    F.source = make_cat(marked.cat);
    F.target = make_cat(cocones.cat);
    for (std::size_t k = 0; k < marked.objs.size(); ++k) {
      auto [gs, up] = bridge_from_marked(bar, B, marked.objs[k]);
      F.on_objects[marked.cat.objects[k]] = cocones.object_of(gs, up);
    }
    for (std::size_t k = 0; k < marked.mors.size(); ++k) {
      const Morphism& mm = marked.cat.morphisms[k];
      const Fin2Category& C = *bar.base.base;
      // ρ ↦ θ with θ_c at (f, (e, x)) = B(fe)(ρ_d at x)
      Modification th;
      auto [g1, u1] = bridge_from_marked(bar, B,
                                         marked.trans_of(mm.src));
      auto [g2, u2] = bridge_from_marked(bar, B, marked.trans_of(mm.tgt));
      for (const auto& c : C.objects) {
        NatTransformation n;
        n.source = g1.at(c);
        n.target = g2.at(c);
        for (const auto& d1 : C.objects)
          for (const auto& d : C.objects) {
            const FinCategory& h1 = C.hom_at(d1, c);
            const FinCategory& h2 = C.hom_at(d, d1);
            for (const auto& ff : h1.objects)
              for (const auto& e : h2.objects) {
                if (!bar.base.sigma.count(e)) continue;
                Id fe = C.compose_cells(ff, e);
                for (const auto& x : bar.A->at(d)->objects)
                  n.components[tag_id(
                      d1, pair_id(ff, tag_id(d, pair_id(e, x))))] =
                      B->f1(fe).mo(marked.mors[k].at(d).at(x));
              }
          }
        th.comp[c] = std::move(n);
      }
      F.on_morphisms[mm.id] = cocones.morphism_of(
          F.on_objects.at(mm.src), th, F.on_objects.at(mm.tgt));
    }
  }
  auto rep = validate_functor(F);
  if (!rep.ok())
    throw CatError(ErrorKind::Validation,
                   "bridge functor invalid: " + rep.violations.front());
  return F;
}

// ---------------------------------------------------------------------------
// The marked-lax morphism classifier (-)^‡ = W * 𝔄_σ, computed pointwise by
// presentation: objects (f : d -> x, ξ ∈ A(d)) modulo (fe, ξ) ~ (f, A(e)ξ)
// for e ∈ Σ; morphisms generated by hom-pairs and connecting κ's modulo
// naturality, multiplicativity, unit, and κ = 1 on Σ.

struct Classifier {
  MarkedTwoCategory base;
  DiagPtr A;
  DiagPtr TA;
  DiagPtr result;          // A^‡
  LaxTransformation unit;  // η : A ⇒ A^‡, marked-lax
  LaxTransformation leg;   // x^‡ : TA ⇒ A^‡, strict
  std::map<Id, SaturationResult> sat;        // per object of C
  std::map<Id, std::map<Id, Id>> obj_class;  // x -> TA(x) object -> class
  std::map<Id, std::map<Id, Id>> mor_class;  // x -> TA(x) morphism -> class
  struct KappaKey {
    Id f, k, xi;
  };
  std::map<Id, std::map<Id, KappaKey>> kappa_data;  // x -> gen name -> key

  // the class of κ_{f,k,ξ} : (fk, ξ) -> (f, A(k)ξ) in A^‡(x)
  Id kappa_class(const Id& x, const Id& f, const Id& k, const Id& xi) const {
    const Fin2Category& C = *base.base;
    if (base.sigma.count(k)) {
      auto [d, d1] = C.cell1_ends(k);
      Id target_obj =
          obj_class.at(x).at(tag_id(d1, pair_id(f, A->f1(k).ob(xi))));
      return sat.at(x).cat.id_of(target_obj);
    }
    Id name = "K(" + f + "|" + k + "|" + xi + ")";
    return sat.at(x).generator_class.at(name);
  }
};

inline Classifier classifier(const MarkedTwoCategory& mc, DiagPtr A,
                             std::size_t bound = 10000,
                             const Caps& caps = {}) {
  {
    auto rep = validate_marked(mc);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation, rep.violations.front());
  }
  const Fin2Category& C = *mc.base;
  Classifier cls;
  cls.base = mc;
  cls.A = A;
  auto TAr = lan_along_objects(mc.base, barmonad::values_of(*A), caps);
  cls.TA = make_diag(TAr.lan);

  auto kappa_name = [](const Id& f, const Id& k, const Id& xi) {
    return "K(" + f + "|" + k + "|" + xi + ")";
  };

  // per-object saturation
  std::map<Id, QuotientBuilder> builders;
  for (const auto& x : C.objects) {
    const FinCategory& TAx = *cls.TA->at(x);
    // object congruence over Σ
    std::vector<IdPair> obj_pairs;
    for (const auto& d : C.objects)
      for (const auto& d1 : C.objects) {
        const FinCategory& he = C.hom_at(d, d1);
        const FinCategory& hf = C.hom_at(d1, x);
        for (const auto& e : he.objects) {
          if (!mc.sigma.count(e)) continue;
          for (const auto& f : hf.objects)
            for (const auto& xi : A->at(d)->objects)
              obj_pairs.push_back(
                  {tag_id(d, pair_id(C.compose_cells(f, e), xi)),
                   tag_id(d1, pair_id(f, A->f1(e).ob(xi)))});
        }
      }
    QuotientBuilder b = make_quotient_builder(TAx, obj_pairs, bound);
    // κ generators for unmarked 1-cells
    for (const auto& d : C.objects)
      for (const auto& d1 : C.objects) {
        const FinCategory& hk = C.hom_at(d, d1);
        const FinCategory& hf = C.hom_at(d1, x);
        for (const auto& k : hk.objects) {
          if (mc.sigma.count(k)) continue;
          for (const auto& f : hf.objects)
            for (const auto& xi : A->at(d)->objects) {
              Id name = kappa_name(f, k, xi);
              Id src = b.object_map.at(
                  tag_id(d, pair_id(C.compose_cells(f, k), xi)));
              Id tgt =
                  b.object_map.at(tag_id(d1, pair_id(f, A->f1(k).ob(xi))));
              b.pres.generators.push_back({name, src, tgt});
              cls.kappa_data[x][name] = {f, k, xi};
            }
        }
      }
    auto kappa_word = [&](const Id& f, const Id& k, const Id& xi) -> Word {
      auto [d, d1] = C.cell1_ends(k);
      Id src =
          b.object_map.at(tag_id(d, pair_id(C.compose_cells(f, k), xi)));
      Id tgt = b.object_map.at(tag_id(d1, pair_id(f, A->f1(k).ob(xi))));
      if (mc.sigma.count(k)) return {src, tgt, {}};
      return {src, tgt, {kappa_name(f, k, xi)}};
    };
    auto concat = [](const Word& first, const Word& then) {
      Word w{first.src, then.tgt, first.gens};
      w.gens.insert(w.gens.end(), then.gens.begin(), then.gens.end());
      return w;
    };
    // κ naturality in the hom-pair direction
    for (const auto& d : C.objects)
      for (const auto& d1 : C.objects) {
        const FinCategory& hk = C.hom_at(d, d1);
        const FinCategory& hf = C.hom_at(d1, x);
        for (const auto& k : hk.objects)
          for (const auto& ga : hf.morphisms)  // γ : f ⇒ f'
            for (const auto& m : A->at(d)->morphisms) {
              const Morphism& mm = A->at(d)->mor(m.id);
              Word pair1 = b.word_of(
                  tag_id(d, pair_id(C.hcompose(ga.id, C.id2(k)), m.id)));
              Word pair2 = b.word_of(
                  tag_id(d1, pair_id(ga.id, A->f1(k).mo(m.id))));
              Word lhs = concat(pair1, kappa_word(ga.tgt, k, mm.tgt));
              Word rhs = concat(kappa_word(ga.src, k, mm.src), pair2);
              b.pres.relations.push_back({lhs, rhs});
            }
        // κ naturality in the base-2-cell direction
        for (const auto& rho : hk.morphisms) {  // ρ : k ⇒ k'
          if (hk.is_identity(rho.id)) continue;
          for (const auto& f : hf.objects)
            for (const auto& xi : A->at(d)->objects) {
              Word pair1 = b.word_of(tag_id(
                  d, pair_id(C.hcompose(C.id2(f), rho.id),
                             A->at(d)->id_of(xi))));
              Word pair2 = b.word_of(
                  tag_id(d1, pair_id(C.id2(f), A->f2(rho.id).at(xi))));
              Word lhs = concat(pair1, kappa_word(f, rho.tgt, xi));
              Word rhs = concat(kappa_word(f, rho.src, xi), pair2);
              b.pres.relations.push_back({lhs, rhs});
            }
        }
      }
    // multiplicativity
    for (const auto& d : C.objects)
      for (const auto& d1 : C.objects)
        for (const auto& d2 : C.objects) {
          const FinCategory& h1 = C.hom_at(d, d1);
          const FinCategory& h2 = C.hom_at(d1, d2);
          const FinCategory& hf = C.hom_at(d2, x);
          for (const auto& k1 : h1.objects)
            for (const auto& k2 : h2.objects)
              for (const auto& f : hf.objects)
                for (const auto& xi : A->at(d)->objects) {
                  Word lhs = kappa_word(f, C.compose_cells(k2, k1), xi);
                  Word rhs =
                      concat(kappa_word(C.compose_cells(f, k2), k1, xi),
                             kappa_word(f, k2, A->f1(k1).ob(xi)));
                  b.pres.relations.push_back({lhs, rhs});
                }
        }
    builders.emplace(x, std::move(b));
  }
  CatValued2Functor R;
  R.source = mc.base;
  for (const auto& x : C.objects) {
    const QuotientBuilder& b = builders.at(x);
    cls.sat[x] = saturate_presentation(b.pres);
    cls.obj_class[x] = {};
    for (const auto& [bo, cl] : b.object_map) cls.obj_class[x][bo] = cl;
    for (const auto& m : cls.TA->at(x)->morphisms)
      cls.mor_class[x][m.id] = cls.sat[x].trace(b.word_of(m.id));
    R.on_objects[x] = make_cat(cls.sat[x].cat);
  }
  // action on 1-cells
  for (const auto& u : C.one_cells()) {
    auto [x, x2] = C.cell1_ends(u);
    Functor act;
    act.source = R.on_objects.at(x);
    act.target = R.on_objects.at(x2);
    // structural maps
    std::map<Id, Id> base_ob_img, base_mo_img;
    for (const auto& d : C.objects) {
      const FinCategory& hd = C.hom_at(d, x);
      for (const auto& f : hd.objects)
        for (const auto& xi : A->at(d)->objects)
          base_ob_img[tag_id(d, pair_id(f, xi))] =
              tag_id(d, pair_id(C.compose_cells(u, f), xi));
      for (const auto& ga : hd.morphisms)
        for (const auto& m : A->at(d)->morphisms)
          base_mo_img[tag_id(d, pair_id(ga.id, m.id))] =
              tag_id(d, pair_id(C.whisker_left(u, ga.id), m.id));
    }
    for (const auto& [bo, cl] : cls.obj_class.at(x)) {
      Id img = cls.obj_class.at(x2).at(base_ob_img.at(bo));
      auto it = act.on_objects.find(cl);
      if (it != act.on_objects.end() && it->second != img)
        throw CatError(ErrorKind::Validation,
                       "classifier action not constant on object classes");
      act.on_objects[cl] = img;
    }
    auto gen_image = [&](const Id& gen) -> Id {
      auto itk = cls.kappa_data[x].find(gen);
      if (itk != cls.kappa_data[x].end()) {
        const auto& kk = itk->second;
        return cls.kappa_class(x2, C.compose_cells(u, kk.f), kk.k, kk.xi);
      }
      return cls.mor_class.at(x2).at(base_mo_img.at(gen));
    };
    for (const auto& qm : cls.sat.at(x).cat.morphisms) {
      const auto& rep = cls.sat.at(x).rep_word.at(qm.id);
      if (rep.empty()) {
        act.on_morphisms[qm.id] =
            cls.sat.at(x2).cat.id_of(act.on_objects.at(qm.src));
        continue;
      }
      std::vector<Id> applicative;
      for (auto it = rep.rbegin(); it != rep.rend(); ++it) {
        Id g = gen_image(*it);
        if (!cls.sat.at(x2).cat.is_identity(g)) applicative.push_back(g);
      }
      act.on_morphisms[qm.id] =
          applicative.empty()
              ? cls.sat.at(x2).cat.id_of(act.on_objects.at(qm.src))
              : cls.sat.at(x2).cat.compose_path("", applicative);
    }
    R.on_one_cells[u] = std::move(act);
  }
  // action on 2-cells
  for (const auto& m2 : C.two_cells()) {
    auto ab = C.cell2_hom(m2);
    const auto& mm = C.hom_at(ab.first, ab.second).mor(m2);
    NatTransformation n;
    n.source = R.on_one_cells.at(mm.src);
    n.target = R.on_one_cells.at(mm.tgt);
    for (const auto& d : C.objects) {
      const FinCategory& hd = C.hom_at(d, ab.first);
      for (const auto& f : hd.objects)
        for (const auto& xi : A->at(d)->objects) {
          Id cl = cls.obj_class.at(ab.first).at(tag_id(d, pair_id(f, xi)));
          // component: the class of the hom-pair (δ * 1_f | 1_ξ)
          Id base = tag_id(d, pair_id(C.hcompose(m2, C.id2(f)),
                                      A->at(d)->id_of(xi)));
          Id img = cls.mor_class.at(ab.second).at(base);
          auto it = n.components.find(cl);
          if (it != n.components.end() && it->second != img)
            throw CatError(ErrorKind::Validation,
                           "classifier 2-cell action not constant on classes");
          n.components[cl] = img;
        }
    }
    R.on_two_cells[m2] = std::move(n);
  }
  {
    auto rep = validate_diagram(R);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "classifier is not a 2-functor: " + rep.violations.front());
  }
  cls.result = make_diag(std::move(R));
  // cocone leg and unit
  {
    std::map<Id, Functor> legs;
    for (const auto& x : C.objects) {
      Functor l;
      l.source = cls.TA->at(x);
      l.target = cls.result->at(x);
      for (const auto& [bo, cl] : cls.obj_class.at(x)) l.on_objects[bo] = cl;
      for (const auto& [bm, cl] : cls.mor_class.at(x)) l.on_morphisms[bm] = cl;
      legs[x] = std::move(l);
    }
    cls.leg = barmonad::family_to_strict(cls.TA, cls.result, legs);
  }
  {
    LaxTransformation eta;
    eta.from = A;
    eta.to = cls.result;
    for (const auto& x : C.objects) {
      Functor f;
      f.source = A->at(x);
      f.target = cls.result->at(x);
      const Id& onex = C.id1.at(x);
      for (const auto& xi : A->at(x)->objects)
        f.on_objects[xi] =
            cls.obj_class.at(x).at(tag_id(x, pair_id(onex, xi)));
      for (const auto& m : A->at(x)->morphisms)
        f.on_morphisms[m.id] = cls.mor_class.at(x).at(
            tag_id(x, pair_id(C.id2(onex), m.id)));
      eta.comp1[x] = std::move(f);
    }
    for (const auto& u : C.one_cells()) {
      auto [d, c] = C.cell1_ends(u);
      NatTransformation n;
      n.source = compose_functors(cls.result->f1(u), eta.comp1.at(d));
      n.target = compose_functors(eta.comp1.at(c), A->f1(u));
      for (const auto& xi : A->at(d)->objects)
        n.components[xi] = cls.kappa_class(c, C.id1.at(c), u, xi);
      eta.comp2[u] = std::move(n);
    }
    auto rep = validate_lax(eta, &mc.sigma);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "classifier unit is not marked-lax: " +
                         rep.violations.front());
    cls.unit = std::move(eta);
  }
  return cls;
}

// χ^‡ : leg∘μ_A ⇒ leg∘Ta, with component κ_{f,g,ξ} at (f, (g, ξ)).
inline Modification classifier_chi(const Classifier& cls,
                                   const BarResolution& bar) {
  const Fin2Category& C = *cls.base.base;
  Modification chi;
  LaxTransformation ls = vcompose_lax(cls.leg, bar.s);
  LaxTransformation lt = vcompose_lax(cls.leg, bar.t);
  for (const auto& x : C.objects) {
    NatTransformation n;
    n.source = ls.at(x);
    n.target = lt.at(x);
    for (const auto& d1 : C.objects) {
      const FinCategory& h1 = C.hom_at(d1, x);
      for (const auto& d : C.objects) {
        const FinCategory& h2 = C.hom_at(d, d1);
        for (const auto& f : h1.objects)
          for (const auto& g : h2.objects)
            for (const auto& xi : cls.A->at(d)->objects)
              n.components[tag_id(d1, pair_id(f, tag_id(d, pair_id(g, xi))))] =
                  cls.kappa_class(x, f, g, xi);
      }
    }
    chi.comp[x] = std::move(n);
  }
  return chi;
}

// Transpose of the classifier adjunction: a marked-lax F : A ⇒ B induces the
// strict beta : A^‡ ⇒ B with beta(f, ξ) = B(f)(F_d ξ) and beta(κ) = B(f)(F̄).
inline LaxTransformation classifier_transpose(const Classifier& cls, DiagPtr B,
                                              const LaxTransformation& F) {
  const Fin2Category& C = *cls.base.base;
  std::map<Id, Functor> fam;
  for (const auto& x : C.objects) {
    Functor bx;
    bx.source = cls.result->at(x);
    bx.target = B->at(x);
    // objects by representatives, with a consistency check
    for (const auto& d : C.objects) {
      const FinCategory& hd = C.hom_at(d, x);
      for (const auto& f : hd.objects)
        for (const auto& xi : cls.A->at(d)->objects) {
          Id cl = cls.obj_class.at(x).at(tag_id(d, pair_id(f, xi)));
          Id img = B->f1(f).ob(F.at(d).ob(xi));
          auto it = bx.on_objects.find(cl);
          if (it != bx.on_objects.end() && it->second != img)
            throw CatError(ErrorKind::Validation,
                           "classifier transpose not constant on classes");
          bx.on_objects[cl] = img;
        }
    }
    // generator images
    std::map<Id, Id> gen_img;
    for (const auto& d : C.objects) {
      const FinCategory& hd = C.hom_at(d, x);
      for (const auto& ga : hd.morphisms)
        for (const auto& m : cls.A->at(d)->morphisms) {
          const Morphism& mm = cls.A->at(d)->mor(m.id);
          Id first = B->f1(ga.src).mo(F.at(d).mo(m.id));
          Id second = B->f2(ga.id).at(F.at(d).ob(mm.tgt));
          gen_img[tag_id(d, pair_id(ga.id, m.id))] =
              B->at(x)->compose(second, first);
        }
    }
    if (auto itx = cls.kappa_data.find(x); itx != cls.kappa_data.end())
      for (const auto& [kname, kk] : itx->second)
        gen_img[kname] = B->f1(kk.f).mo(F.at2(kk.k).at(kk.xi));
    for (const auto& qm : cls.sat.at(x).cat.morphisms) {
      const auto& rep = cls.sat.at(x).rep_word.at(qm.id);
      if (rep.empty()) {
        bx.on_morphisms[qm.id] = B->at(x)->id_of(bx.on_objects.at(qm.src));
        continue;
      }
      std::vector<Id> applicative;
      for (auto it = rep.rbegin(); it != rep.rend(); ++it)
        applicative.push_back(gen_img.at(*it));
      bx.on_morphisms[qm.id] = B->at(x)->compose_path("", applicative);
    }
    auto r = validate_functor(bx);
    if (!r.ok())
      throw CatError(ErrorKind::Validation,
                     "classifier transpose invalid at " + x + ": " +
                         r.violations.front());
    fam[x] = std::move(bx);
  }
  return barmonad::family_to_strict(cls.result, B, fam);
}

inline Modification classifier_transpose_mod(const Classifier& cls, DiagPtr B,
                                             const LaxTransformation& beta1,
                                             const LaxTransformation& beta2,
                                             const Modification& rho) {
  const Fin2Category& C = *cls.base.base;
  Modification out;
  for (const auto& x : C.objects) {
    NatTransformation n;
    n.source = beta1.at(x);
    n.target = beta2.at(x);
    for (const auto& d : C.objects) {
      const FinCategory& hd = C.hom_at(d, x);
      for (const auto& f : hd.objects)
        for (const auto& xi : cls.A->at(d)->objects) {
          Id cl = cls.obj_class.at(x).at(tag_id(d, pair_id(f, xi)));
          Id img = B->f1(f).mo(rho.at(d).at(xi));
          auto it = n.components.find(cl);
          if (it != n.components.end() && it->second != img)
            throw CatError(ErrorKind::Validation,
                           "transpose modification not constant on classes");
          n.components[cl] = img;
        }
    }
    out.comp[x] = std::move(n);
  }
  return out;
}

// The two transport functors of the classifier adjunction, between the
// enumerated hom-categories [C,Cat](A^‡, B) and [C,Cat]_{l,Σ}(A, B).
struct AdjunctionTransport {
  TransCategory strict;  // [C,Cat](A^‡, B)
  TransCategory marked;  // [C,Cat]_{l,Σ}(A, B)
  Functor fwd;           // strict -> marked: beta ↦ beta ∘ η
  Functor bwd;           // marked -> strict: the presentation transpose
};

inline AdjunctionTransport make_adjunction_transport(const Classifier& cls,
                                                     DiagPtr B,
                                                     const Caps& caps = {}) {
  AdjunctionTransport tr;
  tr.strict = enumerate_lax_transformations(cls.result, B, true, caps);
  tr.marked =
      enumerate_marked_transformations(cls.A, B, cls.base.sigma, caps);
  tr.fwd.source = make_cat(tr.strict.cat);
  tr.fwd.target = make_cat(tr.marked.cat);
  for (std::size_t k = 0; k < tr.strict.objs.size(); ++k)
    tr.fwd.on_objects[tr.strict.cat.objects[k]] =
        tr.marked.object_of(vcompose_lax(tr.strict.objs[k], cls.unit));
  for (std::size_t k = 0; k < tr.strict.mors.size(); ++k) {
    const Morphism& mm = tr.strict.cat.morphisms[k];
    Modification img = whisker_mod_lax(tr.strict.mors[k], cls.unit);
    tr.fwd.on_morphisms[mm.id] = tr.marked.morphism_of(
        tr.fwd.on_objects.at(mm.src), img, tr.fwd.on_objects.at(mm.tgt));
  }
  tr.bwd.source = make_cat(tr.marked.cat);
  tr.bwd.target = make_cat(tr.strict.cat);
  std::vector<LaxTransformation> transposes;
  for (std::size_t k = 0; k < tr.marked.objs.size(); ++k) {
    transposes.push_back(classifier_transpose(cls, B, tr.marked.objs[k]));
    tr.bwd.on_objects[tr.marked.cat.objects[k]] =
        tr.strict.object_of(transposes.back());
  }
  for (std::size_t k = 0; k < tr.marked.mors.size(); ++k) {
    const Morphism& mm = tr.marked.cat.morphisms[k];
    Modification img = classifier_transpose_mod(
        cls, B, transposes[tr.marked.obj_index.at(mm.src)],
        transposes[tr.marked.obj_index.at(mm.tgt)], tr.marked.mors[k]);
    tr.bwd.on_morphisms[mm.id] = tr.strict.morphism_of(
        tr.bwd.on_objects.at(mm.src), img, tr.bwd.on_objects.at(mm.tgt));
  }
  return tr;
}

inline EquivalenceReport transport_report(const Functor& fwd,
                                          const Functor& bwd) {
  EquivalenceReport rep;
  rep.forward = fwd;
  rep.backward = bwd;
  auto r1 = validate_functor(fwd);
  auto r2 = validate_functor(bwd);
  if (!r1.ok() || !r2.ok()) {
    rep.notes.push_back("transport functors invalid");
    return rep;
  }
  rep.forward_backward_id =
      compose_functors(fwd, bwd) == identity_functor(bwd.source);
  rep.backward_forward_id =
      compose_functors(bwd, fwd) == identity_functor(fwd.source);
  rep.isomorphic = rep.forward_backward_id && rep.backward_forward_id;
  return rep;
}

// [C,Cat](A^‡, B) ≅ [C,Cat]_{l,Σ}(A, B), with mutually inverse functors.
inline EquivalenceReport verify_classifier_adjunction(
    const MarkedTwoCategory& mc, DiagPtr A, DiagPtr B,
    std::size_t bound = 10000, const Caps& caps = {}) {
  Classifier cls = classifier(mc, A, bound, caps);
  AdjunctionTransport tr = make_adjunction_transport(cls, B, caps);
  return transport_report(tr.fwd, tr.bwd);
}

// Theorem-level check: the marked-lax limit of f has the same universal
// property as the Cat-weighted limit {Δ1^‡, f}.  The marked cone category is
// [C,Cat]_{l,Σ}(Δ1, f) and the weighted limit is [C,Cat](Δ1^‡, f), so this
// is the adjunction transport at A = Δ1.
inline EquivalenceReport verify_marked_limit_theorem(
    const MarkedTwoCategory& mc, DiagPtr f, std::size_t bound = 10000,
    const Caps& caps = {}) {
  DiagPtr d1 = make_diag(delta_one(mc.base));
  Classifier cls = classifier(mc, d1, bound, caps);
  AdjunctionTransport tr = make_adjunction_transport(cls, f, caps);
  return transport_report(tr.bwd, tr.fwd);  // cones -> lim forward
}

}  // namespace catlim
