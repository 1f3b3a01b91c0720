#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "catlim/core.hpp"
#include "catlim/fincat.hpp"
#include "catlim/marked.hpp"
#include "catlim/presentation.hpp"
#include "catlim/two_cat.hpp"
#include "catlim/two_cat_ops.hpp"

namespace catlim {

// ---------------------------------------------------------------------------
// The marked simplex category Δ_σ: the 2-truncated simplex category with an
// extra object [σ] and the relation i = jk.

inline CatPresentation delta_sigma_presentation() {
  CatPresentation p;
  p.objects = {"o0", "o1", "o2", "os"};
  p.generators = {{"p", "o1", "o2"}, {"m", "o1", "o2"}, {"q", "o1", "o2"},
                  {"s", "o0", "o1"}, {"t", "o0", "o1"}, {"i", "o1", "o0"},
                  {"k", "o1", "os"}, {"j", "os", "o0"}};
  auto w = [](Id src, Id tgt, std::vector<Id> gens) {
    return Word{std::move(src), std::move(tgt), std::move(gens)};
  };
  p.relations = {
      {w("o0", "o0", {"s", "i"}), w("o0", "o0", {})},
      {w("o0", "o0", {"t", "i"}), w("o0", "o0", {})},
      {w("o0", "o2", {"s", "p"}), w("o0", "o2", {"s", "m"})},
      {w("o0", "o2", {"t", "q"}), w("o0", "o2", {"t", "m"})},
      {w("o0", "o2", {"t", "p"}), w("o0", "o2", {"s", "q"})},
      {w("o1", "o0", {"i"}), w("o1", "o0", {"k", "j"})},
  };
  p.closure_bound = 2000;
  return p;
}

struct DeltaSigma {
  SaturationResult sat;
  TwoCatPtr as_two_cat;  // locally discrete view

  Id arrow(const std::vector<Id>& applicative_gens) const {
    std::vector<Id> diagram(applicative_gens.rbegin(),
                            applicative_gens.rend());
    const Morphism& first = sat.cat.mor(sat.generator_class.at(diagram[0]));
    Id src = first.src;
    Id tgt = sat.cat.mor(sat.generator_class.at(diagram.back())).tgt;
    return sat.trace({src, tgt, diagram});
  }
};

inline DeltaSigma build_delta_sigma() {
  DeltaSigma d;
  d.sat = saturate_presentation(delta_sigma_presentation());
  d.as_two_cat = make_two_cat(locally_discrete(d.sat.cat));
  return d;
}

// The marked weight W : Δ_σ -> Cat: the usual embedding of the 2-truncated
// simplex category on [0], [1], [2], constant at the point on [σ].
inline CatValued2Functor marked_weight(const DeltaSigma& ds,
                                       const Caps& caps = {}) {
  (void)caps;
  const FinCategory& D = ds.sat.cat;
  CatValued2Functor W;
  W.source = ds.as_two_cat;
  CatPtr c0 = make_cat(chain_category(0));
  CatPtr c1 = make_cat(chain_category(1));
  CatPtr c2 = make_cat(chain_category(2));
  W.on_objects = {{"o0", c0}, {"o1", c1}, {"o2", c2}, {"os", c0}};
  auto fo = [&](CatPtr a, CatPtr b, std::map<Id, Id> ob) {
    Functor f;
    f.source = a;
    f.target = b;
    f.on_objects = std::move(ob);
    for (const auto& m : a->morphisms) {
      const Morphism& mm = a->mor(m.id);
      // target is a poset: the image arrow is determined by endpoints
      auto h = b->hom(f.on_objects.at(mm.src), f.on_objects.at(mm.tgt));
      if (h.size() != 1)
        throw CatError(ErrorKind::Validation, "marked_weight: not thin");
      f.on_morphisms[m.id] = h.front();
    }
    return f;
  };
  std::map<Id, Functor> gen;
  gen["s"] = fo(c0, c1, {{"0", "0"}});
  gen["t"] = fo(c0, c1, {{"0", "1"}});
  gen["i"] = fo(c1, c0, {{"0", "0"}, {"1", "0"}});
  gen["p"] = fo(c1, c2, {{"0", "0"}, {"1", "1"}});
  gen["m"] = fo(c1, c2, {{"0", "0"}, {"1", "2"}});
  gen["q"] = fo(c1, c2, {{"0", "1"}, {"1", "2"}});
  gen["k"] = fo(c1, c0, {{"0", "0"}, {"1", "0"}});
  gen["j"] = fo(c0, c0, {{"0", "0"}});
  // extend along representative words
  for (const auto& m : D.morphisms) {
    const auto& rep = ds.sat.rep_word.at(m.id);
    Functor f = identity_functor(W.on_objects.at(m.src));
    for (const auto& g : rep) f = compose_functors(gen.at(g), f);
    W.on_one_cells[m.id] = std::move(f);
  }
  for (const auto& m : D.morphisms)
    W.on_two_cells["i2_" + m.id] = identity_nat(W.on_one_cells.at(m.id));
  auto rep = validate_diagram(W);
  if (!rep.ok())
    throw CatError(ErrorKind::Validation,
                   "marked weight does not satisfy the marked relations: " +
                       rep.violations.front());
  return W;
}

// ---------------------------------------------------------------------------
// Marked coherence data with host Cat.

struct MarkedCoherenceData {
  CatPtr X2, X1, X0, Xs;
  Functor p, m, q;  // X2 -> X1
  Functor s, t;     // X1 -> X0
  Functor i;        // X0 -> X1
  Functor j;        // X0 -> Xs
  Functor z;        // Xs -> X1
};

inline ValidationReport validate_coherence(const MarkedCoherenceData& x) {
  ValidationReport rep;
  for (const Functor* f : {&x.p, &x.m, &x.q, &x.s, &x.t, &x.i, &x.j, &x.z}) {
    auto r = validate_functor(*f);
    for (auto& v : r.violations) rep.add(v);
  }
  if (!rep.ok()) return rep;
  auto eq = [&](const Functor& a, const Functor& b, const std::string& what) {
    if (!(a == b)) rep.add("marked identity fails: " + what);
  };
  eq(compose_functors(x.s, x.i), identity_functor(x.X0), "si = 1");
  eq(compose_functors(x.t, x.i), identity_functor(x.X0), "ti = 1");
  eq(compose_functors(x.s, x.p), compose_functors(x.s, x.m), "sp = sm");
  eq(compose_functors(x.t, x.q), compose_functors(x.t, x.m), "tq = tm");
  eq(compose_functors(x.t, x.p), compose_functors(x.s, x.q), "tp = sq");
  eq(compose_functors(x.z, x.j), x.i, "i = zj");
  return rep;
}

// ΣCocone(X_σ, Y) for host Cat: objects (y_σ : X_σ -> Y, υ : ys ⇒ yt)
// satisfying the multiplicative and marked equations; morphisms θ with
// θt ∘ υ1 = υ2 ∘ θs.
struct CoconeCategory {
  FinCategory cat;
  std::vector<std::pair<Functor, NatTransformation>> objs;
  std::map<Id, std::size_t> obj_index;
  std::vector<NatTransformation> mors;
  std::map<Id, std::size_t> mor_index;

  Id object_of(const Functor& ys, const NatTransformation& up) const {
    std::string key = ser(ys) + ser(up);
    for (std::size_t k = 0; k < objs.size(); ++k)
      if (ser(objs[k].first) + ser(objs[k].second) == key)
        return cat.objects[k];
    throw CatError(ErrorKind::Validation, "cocone not found");
  }
  Id morphism_of(const Id& src, const NatTransformation& th,
                 const Id& tgt) const {
    for (std::size_t k = 0; k < mors.size(); ++k)
      if (cat.morphisms[k].src == src && cat.morphisms[k].tgt == tgt &&
          mors[k].components == th.components)
        return cat.morphisms[k].id;
    throw CatError(ErrorKind::Validation, "cocone morphism not found");
  }
};

inline bool cocone_equations_hold(const MarkedCoherenceData& x,
                                  const Functor& ys,
                                  const NatTransformation& up) {
  Functor y = compose_functors(ys, x.j);
  // multiplicative: (υ * q) ∘ (υ * p) = υ * m
  NatTransformation up_p = whisker_nat_functor(up, x.p);
  NatTransformation up_q = whisker_nat_functor(up, x.q);
  NatTransformation up_m = whisker_nat_functor(up, x.m);
  if (!(vcompose_nats(up_q, up_p).components == up_m.components)) return false;
  // marked: υ * z = identity of y_σ (boundaries included)
  if (!(compose_functors(compose_functors(y, x.s), x.z) == ys)) return false;
  if (!(compose_functors(compose_functors(y, x.t), x.z) == ys)) return false;
  if (!nat_is_identity(whisker_nat_functor(up, x.z))) return false;
  (void)y;
  return true;
}

inline CoconeCategory sigma_cocone_category(const MarkedCoherenceData& x,
                                            CatPtr Y, const Caps& caps = {}) {
  CoconeCategory out;
  auto candidates = enumerate_functors(x.Xs, Y, caps);
  std::size_t n = 0;
  for (const auto& ys : candidates) {
    Functor y = compose_functors(ys, x.j);
    Functor yss = compose_functors(y, x.s);
    Functor ytt = compose_functors(y, x.t);
    for (auto& up : enumerate_nats(yss, ytt, caps)) {
      if (!cocone_equations_hold(x, ys, up)) continue;
      Id oid = "c" + std::to_string(n++);
      out.cat.objects.push_back(oid);
      out.obj_index[oid] = out.objs.size();
      out.objs.push_back({ys, up});
    }
  }
  check_object_cap(out.objs.size(), caps, "sigma_cocone_category");
  std::size_t mc = 0;
  // θs and θt are θ whiskered with j∘s and j∘t : X1 -> Xs
  Functor j_s = compose_functors(x.j, x.s);
  Functor j_t = compose_functors(x.j, x.t);
  for (std::size_t a = 0; a < out.objs.size(); ++a)
    for (std::size_t b = 0; b < out.objs.size(); ++b) {
      for (auto& th : enumerate_nats(out.objs[a].first, out.objs[b].first,
                                     caps)) {
        NatTransformation th_s = whisker_nat_functor(th, j_s);
        NatTransformation th_t = whisker_nat_functor(th, j_t);
        if (!(vcompose_nats(th_t, out.objs[a].second).components ==
              vcompose_nats(out.objs[b].second, th_s).components))
          continue;
        Id mid;
        if (a == b && nat_is_identity(th)) {
          mid = identity_name(out.cat.objects[a]);
          out.cat.identity[out.cat.objects[a]] = mid;
        } else {
          mid = "cm" + std::to_string(mc++);
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
      NatTransformation c = vcompose_nats(out.mors[out.mor_index.at(g.id)],
                                          out.mors[out.mor_index.at(f.id)]);
      out.cat.compose_table[{g.id, f.id}] =
          out.morphism_of(f.src, c, g.tgt);
    }
  out.cat.reindex();
  auto rep = validate_category(out.cat);
  if (!rep.ok())
    throw CatError(ErrorKind::Validation,
                   "cocone category invalid: " + rep.violations.front());
  return out;
}

// hom(X_σ -, Y) : Δ_σ -> Cat, materialized with its functor-category payloads
// so transformations can be located by value.
struct HomDiagram {
  CatValued2Functor diag;
  std::map<Id, FunctorCategory> fc;  // Δ_σ object -> functor category
};

inline HomDiagram coherence_hom_diagram(const DeltaSigma& ds,
                                        const MarkedCoherenceData& x, CatPtr Y,
                                        const Caps& caps = {}) {
  HomDiagram H;
  H.diag.source = ds.as_two_cat;
  std::map<Id, CatPtr> vertex{
      {"o0", x.X0}, {"o1", x.X1}, {"o2", x.X2}, {"os", x.Xs}};
  std::map<Id, Functor> gen{{"p", x.p}, {"m", x.m}, {"q", x.q}, {"s", x.s},
                            {"t", x.t}, {"i", x.i}, {"k", x.z}, {"j", x.j}};
  for (const auto& o : ds.sat.cat.objects) {
    H.fc[o] = functor_category(vertex.at(o), Y, caps);
    H.diag.on_objects[o] = make_cat(H.fc[o].cat);
  }
  for (const auto& mo : ds.sat.cat.morphisms) {
    const auto& rep = ds.sat.rep_word.at(mo.id);
    // contravariant image of the arrow: X(g_n ∘ ... ∘ g_1) = X(g_1) ∘ ... ∘ X(g_n)
    Functor xarr = identity_functor(vertex.at(mo.src));
    for (const auto& g : rep)
      xarr = compose_functors(xarr, gen.at(g));
    // precomposition action: hom(X_src, Y) -> hom(X_tgt, Y), t ↦ t ∘ X(arrow)
    Functor act;
    act.source = H.diag.on_objects.at(mo.src);
    act.target = H.diag.on_objects.at(mo.tgt);
    const FunctorCategory& fs = H.fc.at(mo.src);
    const FunctorCategory& ft = H.fc.at(mo.tgt);
    for (std::size_t k = 0; k < fs.objs.size(); ++k) {
      Functor composed = compose_functors(fs.objs[k], xarr);
      auto found = ft.find_object(composed);
      if (!found)
        throw CatError(ErrorKind::Validation, "hom diagram: image missing");
      act.on_objects[fs.cat.objects[k]] = *found;
    }
    for (std::size_t k = 0; k < fs.mors.size(); ++k) {
      NatTransformation whisk = whisker_nat_functor(fs.mors[k], xarr);
      auto found = ft.find_morphism(whisk);
      if (!found)
        throw CatError(ErrorKind::Validation,
                       "hom diagram: morphism image missing");
      act.on_morphisms[fs.cat.morphisms[k].id] = *found;
    }
    H.diag.on_one_cells[mo.id] = std::move(act);
  }
  for (const auto& mo : ds.sat.cat.morphisms)
    H.diag.on_two_cells["i2_" + mo.id] =
        identity_nat(H.diag.on_one_cells.at(mo.id));
  auto r = validate_diagram(H.diag);
  if (!r.ok())
    throw CatError(ErrorKind::Validation,
                   "hom diagram invalid: " + r.violations.front());
  return H;
}

// Prop. level result: ΣCocone(X_σ, Y) ≅ [Δ_σ, Cat](W, hom(X_σ -, Y)),
// with an explicit isomorphism.
struct CoconeWeightedIso {
  CoconeCategory cocones;
  TransCategory weighted;
  IsoWitness witness;
  bool round_trip_identity = false;
};

inline CoconeWeightedIso cocones_as_weighted_transformations(
    const DeltaSigma& ds, const MarkedCoherenceData& x, CatPtr Y,
    const Caps& caps = {}) {
  CoconeWeightedIso out;
  out.cocones = sigma_cocone_category(x, Y, caps);
  auto H = coherence_hom_diagram(ds, x, Y, caps);
  auto W = make_diag(marked_weight(ds, caps));
  auto HD = make_diag(H.diag);
  out.weighted = weighted_limit_in_cat(W, HD, caps);

  const FinCategory& D = ds.sat.cat;
  // cocone -> 2-natural gamma : W => hom(X_σ -, Y)
  auto to_gamma = [&](const Functor& ys,
                      const NatTransformation& up) -> LaxTransformation {
    Functor y = compose_functors(ys, x.j);
    LaxTransformation g;
    g.from = W;
    g.to = HD;
    std::map<Id, Functor> legs;  // Δ_σ object -> functor W(o) -> hom cat
    // components on objects of the chains: whiskered composites of y and υ
    auto obj_functor = [&](const Id& o, const std::vector<Functor>& picks,
                           const std::vector<NatTransformation>& arrows) {
      // picks: image of chain objects 0..n; arrows: image of consecutive
      // arrows (r_0_1 etc); composites derived
      Functor f;
      f.source = W->at(o);
      f.target = H.diag.on_objects.at(o);
      const FunctorCategory& fc = H.fc.at(o);
      for (std::size_t i2 = 0; i2 < picks.size(); ++i2)
        f.on_objects[std::to_string(i2)] = *fc.find_object(picks[i2]);
      for (const auto& mm : W->at(o)->morphisms) {
        if (W->at(o)->is_identity(mm.id)) {
          f.on_morphisms[mm.id] =
              fc.cat.id_of(f.on_objects.at(mm.src));
          continue;
        }
        std::size_t a = std::stoul(mm.src);
        std::size_t b = std::stoul(mm.tgt);
        NatTransformation n = identity_nat(picks[a]);
        for (std::size_t k = a; k < b; ++k)
          n = vcompose_nats(arrows[k], n);
        f.on_morphisms[mm.id] = *fc.find_morphism(n);
      }
      return f;
    };
    legs["o0"] = obj_functor("o0", {y}, {});
    legs["os"] = obj_functor("os", {ys}, {});
    legs["o1"] = obj_functor(
        "o1", {compose_functors(y, x.s), compose_functors(y, x.t)}, {up});
    legs["o2"] = obj_functor(
        "o2",
        {compose_functors(compose_functors(y, x.s), x.p),
         compose_functors(compose_functors(y, x.t), x.p),
         compose_functors(compose_functors(y, x.t), x.q)},
        {whisker_nat_functor(up, x.p), whisker_nat_functor(up, x.q)});
    g.comp1 = legs;
    for (const auto& u : D.morphisms)
      g.comp2[u.id] = identity_nat(
          compose_functors(HD->f1(u.id), legs.at(u.src)));
    return g;
  };

  Functor fwd;
  fwd.source = make_cat(out.cocones.cat);
  fwd.target = make_cat(out.weighted.cat);
  for (std::size_t k = 0; k < out.cocones.objs.size(); ++k) {
    auto g = to_gamma(out.cocones.objs[k].first, out.cocones.objs[k].second);
    fwd.on_objects[out.cocones.cat.objects[k]] = out.weighted.object_of(g);
  }
  for (std::size_t k = 0; k < out.cocones.mors.size(); ++k) {
    const Morphism& mm = out.cocones.cat.morphisms[k];
    const NatTransformation& th = out.cocones.mors[k];
    Modification G;
    // component at o: whiskers of θ
    auto comp_at = [&](const Id& o, const std::vector<Functor>& whiskers) {
      // whiskers: functors X_o -> Xs to whisker θ with, in chain order
      const FunctorCategory& fc = H.fc.at(o);
      NatTransformation n;
      n.source = to_gamma(out.cocones.objs[out.cocones.obj_index.at(mm.src)]
                              .first,
                          out.cocones.objs[out.cocones.obj_index.at(mm.src)]
                              .second)
                     .at(o);
      n.target = to_gamma(out.cocones.objs[out.cocones.obj_index.at(mm.tgt)]
                              .first,
                          out.cocones.objs[out.cocones.obj_index.at(mm.tgt)]
                              .second)
                     .at(o);
      for (std::size_t i2 = 0; i2 < whiskers.size(); ++i2)
        n.components[std::to_string(i2)] =
            *fc.find_morphism(whisker_nat_functor(th, whiskers[i2]));
      return n;
    };
    Functor j_s = compose_functors(x.j, x.s);
    Functor j_t = compose_functors(x.j, x.t);
    G.comp["o0"] = comp_at("o0", {x.j});
    G.comp["os"] = comp_at("os", {identity_functor(x.Xs)});
    G.comp["o1"] = comp_at("o1", {j_s, j_t});
    G.comp["o2"] = comp_at("o2", {compose_functors(j_s, x.p),
                                  compose_functors(j_t, x.p),
                                  compose_functors(j_t, x.q)});
    fwd.on_morphisms[mm.id] = out.weighted.morphism_of(
        fwd.on_objects.at(mm.src), G, fwd.on_objects.at(mm.tgt));
  }
  {
    auto r = validate_functor(fwd);
    if (!r.ok())
      throw CatError(ErrorKind::Validation,
                     "cocone→weighted functor invalid: " + r.violations.front());
  }

  // inverse: gamma ↦ (y_σ := γ_[σ](0), υ := γ_[1](arrow))
  Functor bwd;
  bwd.source = make_cat(out.weighted.cat);
  bwd.target = make_cat(out.cocones.cat);
  for (std::size_t k = 0; k < out.weighted.objs.size(); ++k) {
    const LaxTransformation& g = out.weighted.objs[k];
    const FunctorCategory& fcs = H.fc.at("os");
    const FunctorCategory& fc1 = H.fc.at("o1");
    Functor ys = fcs.functor_of(g.at("os").ob("0"));
    NatTransformation up = fc1.nat_of(g.at("o1").mo("r_0_1"));
    bwd.on_objects[out.weighted.cat.objects[k]] =
        out.cocones.object_of(ys, up);
  }
  for (std::size_t k = 0; k < out.weighted.mors.size(); ++k) {
    const Morphism& mm = out.weighted.cat.morphisms[k];
    const Modification& G = out.weighted.mors[k];
    const FunctorCategory& fcs = H.fc.at("os");
    NatTransformation th = fcs.nat_of(G.at("os").at("0"));
    bwd.on_morphisms[mm.id] = out.cocones.morphism_of(
        bwd.on_objects.at(mm.src), th, bwd.on_objects.at(mm.tgt));
  }
  {
    auto r = validate_functor(bwd);
    if (!r.ok())
      throw CatError(ErrorKind::Validation,
                     "weighted→cocone functor invalid: " + r.violations.front());
  }
  out.witness = IsoWitness{fwd, bwd};
  out.round_trip_identity =
      compose_functors(bwd, fwd) == identity_functor(fwd.source) &&
      compose_functors(fwd, bwd) == identity_functor(bwd.source);
  return out;
}

}  // namespace catlim
