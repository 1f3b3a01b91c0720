#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "catlim/core.hpp"
#include "catlim/fincat.hpp"

namespace catlim {

// A finite 2-category.  hom(a,b) is a FinCategory whose objects are the
// 1-cells a -> b and whose morphisms are the 2-cells between them; 1-cell
// and 2-cell ids are globally unique so the composition tables can be keyed
// without hom context.
class Fin2Category {
 public:
  std::vector<Id> objects;
  std::map<IdPair, FinCategory> hom;   // (a,b) -> hom category
  std::map<Id, Id> id1;                // object -> identity 1-cell
  std::map<IdPair, Id> compose1;       // (g, f) -> g∘f
  std::map<IdPair, Id> hcompose2;      // (beta, alpha) -> beta * alpha

  const FinCategory& hom_at(const Id& a, const Id& b) const {
    auto it = hom.find({a, b});
    if (it == hom.end())
      throw CatError(ErrorKind::Validation,
                     "no hom category (" + a + ", " + b + ")");
    return it->second;
  }

  // (src, tgt) objects of a 1-cell.
  IdPair cell1_ends(const Id& f) const {
    auto it = cell1_index_.find(f);
    if (it == cell1_index_.end())
      throw CatError(ErrorKind::Validation, "unknown 1-cell: " + f);
    return it->second;
  }
  bool has_cell1(const Id& f) const { return cell1_index_.count(f) > 0; }

  // hom pair containing a 2-cell.
  IdPair cell2_hom(const Id& m) const {
    auto it = cell2_index_.find(m);
    if (it == cell2_index_.end())
      throw CatError(ErrorKind::Validation, "unknown 2-cell: " + m);
    return it->second;
  }

  std::vector<Id> one_cells() const {
    std::vector<Id> out;
    for (const auto& [ab, h] : hom)
      for (const auto& f : h.objects) out.push_back(f);
    return out;
  }
  std::vector<Id> two_cells() const {
    std::vector<Id> out;
    for (const auto& [ab, h] : hom)
      for (const auto& m : h.morphisms) out.push_back(m.id);
    return out;
  }

  const Id& compose_cells(const Id& g, const Id& f) const {
    auto it = compose1.find({g, f});
    if (it == compose1.end())
      throw CatError(ErrorKind::Validation,
                     "1-cell composition undefined for (" + g + ", " + f + ")");
    return it->second;
  }
  const Id& hcompose(const Id& beta, const Id& alpha) const {
    auto it = hcompose2.find({beta, alpha});
    if (it == hcompose2.end())
      throw CatError(ErrorKind::Validation,
                     "horizontal composition undefined for (" + beta + ", " +
                         alpha + ")");
    return it->second;
  }

  // identity 2-cell of a 1-cell
  const Id& id2(const Id& f) const {
    const auto& [a, b] = cell1_ends(f);
    return hom_at(a, b).id_of(f);
  }
  // whisker a 2-cell by 1-cells: g * alpha and alpha * f
  const Id& whisker_left(const Id& g, const Id& alpha) const {
    return hcompose(id2(g), alpha);
  }
  const Id& whisker_right(const Id& alpha, const Id& f) const {
    return hcompose(alpha, id2(f));
  }
  // vertical composition of 2-cells within their hom category
  const Id& vcompose(const Id& beta, const Id& alpha) const {
    const auto& hm = hom_at(cell2_hom(alpha).first, cell2_hom(alpha).second);
    return hm.compose(beta, alpha);
  }

  void reindex() {
    cell1_index_.clear();
    cell2_index_.clear();
    for (auto& [ab, h] : hom) {
      h.reindex();
      for (const auto& f : h.objects) cell1_index_[f] = ab;
      for (const auto& m : h.morphisms) cell2_index_[m.id] = ab;
    }
  }

 private:
  std::map<Id, IdPair> cell1_index_;
  std::map<Id, IdPair> cell2_index_;
};

using TwoCatPtr = std::shared_ptr<const Fin2Category>;

inline TwoCatPtr make_two_cat(Fin2Category c) {
  c.reindex();
  return std::make_shared<const Fin2Category>(std::move(c));
}

inline ValidationReport validate_two_category(const Fin2Category& c) {
  ValidationReport rep;
  std::set<Id> objs(c.objects.begin(), c.objects.end());
  std::set<Id> cells1, cells2;
  for (const auto& [ab, h] : c.hom) {
    if (!objs.count(ab.first) || !objs.count(ab.second))
      rep.add("hom category at unknown objects");
    auto r = validate_category(h);
    for (auto& v : r.violations)
      rep.add("hom(" + ab.first + "," + ab.second + "): " + v);
    for (const auto& f : h.objects)
      if (!cells1.insert(f).second) rep.add("duplicate 1-cell id " + f);
    for (const auto& m : h.morphisms)
      if (!cells2.insert(m.id).second) rep.add("duplicate 2-cell id " + m.id);
  }
  for (const auto& a : c.objects)
    for (const auto& b : c.objects)
      if (!c.hom.count({a, b})) rep.add("missing hom(" + a + "," + b + ")");
  if (!rep.ok()) return rep;
  for (const auto& o : c.objects) {
    auto it = c.id1.find(o);
    if (it == c.id1.end()) {
      rep.add("missing identity 1-cell at " + o);
      continue;
    }
    if (!c.hom_at(o, o).has_object(it->second))
      rep.add("identity 1-cell of " + o + " not in hom(" + o + "," + o + ")");
  }
  if (!rep.ok()) return rep;
  // 1-cell composition: total, typed, associative, unital
  auto ones = c.one_cells();
  for (const auto& g : ones)
    for (const auto& f : ones) {
      auto [fa, fb] = c.cell1_ends(f);
      auto [ga, gb] = c.cell1_ends(g);
      if (fb != ga) {
        if (c.compose1.count({g, f}))
          rep.add("compose1 defined on non-composable (" + g + ", " + f + ")");
        continue;
      }
      auto it = c.compose1.find({g, f});
      if (it == c.compose1.end()) {
        rep.add("compose1 missing (" + g + ", " + f + ")");
        continue;
      }
      if (!c.has_cell1(it->second) ||
          c.cell1_ends(it->second) != IdPair{fa, gb})
        rep.add("compose1 mistyped on (" + g + ", " + f + ")");
    }
  if (!rep.ok()) return rep;
  for (const auto& f : ones) {
    auto [a, b] = c.cell1_ends(f);
    if (c.compose_cells(c.id1.at(b), f) != f)
      rep.add("1-cell identity law fails: 1_" + b + " ∘ " + f);
    if (c.compose_cells(f, c.id1.at(a)) != f)
      rep.add("1-cell identity law fails: " + f + " ∘ 1_" + a);
  }
  for (const auto& h : ones)
    for (const auto& g : ones) {
      if (c.cell1_ends(g).second != c.cell1_ends(h).first) continue;
      for (const auto& f : ones) {
        if (c.cell1_ends(f).second != c.cell1_ends(g).first) continue;
        if (c.compose_cells(h, c.compose_cells(g, f)) !=
            c.compose_cells(c.compose_cells(h, g), f))
          rep.add("1-cell associativity fails on (" + h + ", " + g + ", " + f +
                  ")");
      }
    }
  // horizontal composition of 2-cells: total, typed, functorial (interchange),
  // associative, unital
  auto twos = c.two_cells();
  auto two_src_tgt = [&](const Id& m) {
    auto ab = c.cell2_hom(m);
    const auto& mm = c.hom_at(ab.first, ab.second).mor(m);
    return std::pair<Id, Id>{mm.src, mm.tgt};  // 1-cells
  };
  for (const auto& beta : twos)
    for (const auto& alpha : twos) {
      auto hb = c.cell2_hom(beta);
      auto ha = c.cell2_hom(alpha);
      if (ha.second != hb.first) {
        if (c.hcompose2.count({beta, alpha}))
          rep.add("hcompose2 on non-composable (" + beta + ", " + alpha + ")");
        continue;
      }
      auto it = c.hcompose2.find({beta, alpha});
      if (it == c.hcompose2.end()) {
        rep.add("hcompose2 missing (" + beta + ", " + alpha + ")");
        continue;
      }
      auto [bs, bt] = two_src_tgt(beta);
      auto [as, at] = two_src_tgt(alpha);
      auto [rs, rt] = two_src_tgt(it->second);
      if (rs != c.compose_cells(bs, as) || rt != c.compose_cells(bt, at))
        rep.add("hcompose2 mistyped on (" + beta + ", " + alpha + ")");
    }
  if (!rep.ok()) return rep;
  for (const auto& f : ones)
    for (const auto& g : ones) {
      if (c.cell1_ends(f).second != c.cell1_ends(g).first) continue;
      if (c.hcompose(c.id2(g), c.id2(f)) != c.id2(c.compose_cells(g, f)))
        rep.add("identity 2-cells are not multiplicative on (" + g + ", " + f +
                ")");
    }
  // interchange: (delta ∘v beta) * (gamma ∘v alpha) = (delta*gamma) ∘v (beta*alpha)
  for (const auto& [ab1, h1] : c.hom)
    for (const auto& [ab2, h2] : c.hom) {
      if (ab1.second != ab2.first) continue;
      for (const auto& beta : h2.morphisms)
        for (const auto& delta : h2.morphisms) {
          if (delta.src != beta.tgt) continue;
          for (const auto& alpha : h1.morphisms)
            for (const auto& gamma : h1.morphisms) {
              if (gamma.src != alpha.tgt) continue;
              Id lhs = c.hcompose(h2.compose(delta.id, beta.id),
                                  h1.compose(gamma.id, alpha.id));
              Id rhs = c.vcompose(c.hcompose(delta.id, gamma.id),
                                  c.hcompose(beta.id, alpha.id));
              if (lhs != rhs)
                rep.add("interchange fails on (" + delta.id + "," + beta.id +
                        "," + gamma.id + "," + alpha.id + ")");
            }
        }
    }
  // associativity and units of *
  for (const auto& gamma : twos)
    for (const auto& beta : twos) {
      if (c.cell2_hom(beta).second != c.cell2_hom(gamma).first) continue;
      for (const auto& alpha : twos) {
        if (c.cell2_hom(alpha).second != c.cell2_hom(beta).first) continue;
        if (c.hcompose(gamma, c.hcompose(beta, alpha)) !=
            c.hcompose(c.hcompose(gamma, beta), alpha))
          rep.add("horizontal associativity fails on (" + gamma + "," + beta +
                  "," + alpha + ")");
      }
    }
  for (const auto& alpha : twos) {
    auto [a, b] = c.cell2_hom(alpha);
    if (c.hcompose(c.id2(c.id1.at(b)), alpha) != alpha)
      rep.add("horizontal unit fails left on " + alpha);
    if (c.hcompose(alpha, c.id2(c.id1.at(a))) != alpha)
      rep.add("horizontal unit fails right on " + alpha);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Builders

// Views a category as a locally discrete 2-category (identity 2-cells only).
inline Fin2Category locally_discrete(const FinCategory& c) {
  Fin2Category t;
  t.objects = c.objects;
  for (const auto& a : c.objects)
    for (const auto& b : c.objects) {
      FinCategory h;
      for (const auto& m : c.morphisms)
        if (m.src == a && m.tgt == b) {
          h.objects.push_back(m.id);
          Id i2 = "i2_" + m.id;
          h.morphisms.push_back({i2, m.id, m.id});
          h.identity[m.id] = i2;
          h.compose_table[{i2, i2}] = i2;
        }
      h.reindex();
      t.hom[{a, b}] = std::move(h);
    }
  for (const auto& [o, i] : c.identity) t.id1[o] = i;
  for (const auto& [gf, h] : c.compose_table) {
    t.compose1[gf] = h;
    t.hcompose2[{"i2_" + gf.first, "i2_" + gf.second}] = "i2_" + h;
  }
  t.reindex();
  return t;
}

inline Fin2Category terminal_two_category() {
  return locally_discrete(terminal_category());
}

// Fills the horizontal-composition entries that the axioms force: composites
// of identity 2-cells, and whiskers by identity 1-cells.  Entries that are
// genuine data (whiskers by non-identity 1-cells between non-identity
// 2-cells) must already be present or validation will flag them.
inline void fill_forced_hcompose(Fin2Category& c) {
  c.reindex();
  for (const auto& g : c.one_cells())
    for (const auto& f : c.one_cells()) {
      if (c.cell1_ends(f).second != c.cell1_ends(g).first) continue;
      c.hcompose2.insert(
          {{c.id2(g), c.id2(f)}, c.id2(c.compose_cells(g, f))});
    }
  for (const auto& m : c.two_cells()) {
    auto [a, b] = c.cell2_hom(m);
    c.hcompose2.insert({{m, c.id2(c.id1.at(a))}, m});
    c.hcompose2.insert({{c.id2(c.id1.at(b)), m}, m});
  }
}

// Reverses all 2-cells (the formal (-)^co dual); 1-cells are untouched.
inline Fin2Category co_dual(const Fin2Category& c) {
  Fin2Category d;
  d.objects = c.objects;
  for (const auto& [ab, h] : c.hom) d.hom[ab] = opposite_category(h);
  d.id1 = c.id1;
  d.compose1 = c.compose1;
  d.hcompose2 = c.hcompose2;  // same table: source/target of cells swap consistently
  d.reindex();
  return d;
}

// ---------------------------------------------------------------------------
// 2-functors between finite 2-categories (used for inclusions/projections)

struct TwoFunctor {
  TwoCatPtr source, target;
  std::map<Id, Id> on_objects, on_one_cells, on_two_cells;

  const Id& ob(const Id& o) const { return on_objects.at(o); }
  const Id& c1(const Id& f) const { return on_one_cells.at(f); }
  const Id& c2(const Id& m) const { return on_two_cells.at(m); }
};

inline ValidationReport validate_two_functor(const TwoFunctor& f) {
  ValidationReport rep;
  const Fin2Category& A = *f.source;
  const Fin2Category& B = *f.target;
  for (const auto& o : A.objects)
    if (!f.on_objects.count(o)) rep.add("missing image of object " + o);
  for (const auto& u : A.one_cells())
    if (!f.on_one_cells.count(u)) rep.add("missing image of 1-cell " + u);
  for (const auto& m : A.two_cells())
    if (!f.on_two_cells.count(m)) rep.add("missing image of 2-cell " + m);
  if (!rep.ok()) return rep;
  for (const auto& u : A.one_cells()) {
    auto [a, b] = A.cell1_ends(u);
    if (B.cell1_ends(f.c1(u)) != IdPair{f.ob(a), f.ob(b)})
      rep.add("1-cell image mistyped at " + u);
  }
  for (const auto& o : A.objects)
    if (f.c1(A.id1.at(o)) != B.id1.at(f.ob(o)))
      rep.add("identity 1-cell not preserved at " + o);
  for (const auto& [gf, h] : A.compose1)
    if (B.compose_cells(f.c1(gf.first), f.c1(gf.second)) != f.c1(h))
      rep.add("1-cell composition not preserved at (" + gf.first + "," +
              gf.second + ")");
  for (const auto& m : A.two_cells()) {
    auto ab = A.cell2_hom(m);
    const auto& mm = A.hom_at(ab.first, ab.second).mor(m);
    auto fm = f.c2(m);
    auto fab = B.cell2_hom(fm);
    const auto& fmm = B.hom_at(fab.first, fab.second).mor(fm);
    if (fmm.src != f.c1(mm.src) || fmm.tgt != f.c1(mm.tgt))
      rep.add("2-cell image mistyped at " + m);
  }
  if (!rep.ok()) return rep;
  for (const auto& u : A.one_cells())
    if (f.c2(A.id2(u)) != B.id2(f.c1(u)))
      rep.add("identity 2-cell not preserved at " + u);
  for (const auto& [ab, h] : A.hom)
    for (const auto& [vc, w] : h.compose_table)
      if (B.vcompose(f.c2(vc.first), f.c2(vc.second)) != f.c2(w))
        rep.add("vertical composition not preserved at (" + vc.first + "," +
                vc.second + ")");
  for (const auto& [ba, r] : A.hcompose2)
    if (B.hcompose(f.c2(ba.first), f.c2(ba.second)) != f.c2(r))
      rep.add("horizontal composition not preserved at (" + ba.first + "," +
              ba.second + ")");
  return rep;
}

// ---------------------------------------------------------------------------
// Cat-valued 2-functors (diagrams of finite categories)

struct CatValued2Functor {
  TwoCatPtr source;
  std::map<Id, CatPtr> on_objects;
  std::map<Id, Functor> on_one_cells;          // 1-cell f: a->b  ->  F(a) -> F(b)
  std::map<Id, NatTransformation> on_two_cells;

  CatPtr at(const Id& o) const { return on_objects.at(o); }
  const Functor& f1(const Id& u) const { return on_one_cells.at(u); }
  const NatTransformation& f2(const Id& m) const { return on_two_cells.at(m); }
};

using DiagPtr = std::shared_ptr<const CatValued2Functor>;

inline DiagPtr make_diag(CatValued2Functor d) {
  return std::make_shared<const CatValued2Functor>(std::move(d));
}

inline ValidationReport validate_diagram(const CatValued2Functor& F) {
  ValidationReport rep;
  const Fin2Category& C = *F.source;
  for (const auto& o : C.objects) {
    if (!F.on_objects.count(o)) {
      rep.add("missing value at object " + o);
      continue;
    }
    auto r = validate_category(*F.at(o));
    for (auto& v : r.violations) rep.add("value at " + o + ": " + v);
  }
  if (!rep.ok()) return rep;
  for (const auto& u : C.one_cells()) {
    if (!F.on_one_cells.count(u)) {
      rep.add("missing value at 1-cell " + u);
      continue;
    }
    auto [a, b] = C.cell1_ends(u);
    const Functor& fu = F.f1(u);
    if (fu.source->objects != F.at(a)->objects ||
        fu.target->objects != F.at(b)->objects)
      rep.add("value at 1-cell " + u + " mistyped");
    auto r = validate_functor(fu);
    for (auto& v : r.violations) rep.add("value at " + u + ": " + v);
  }
  if (!rep.ok()) return rep;
  for (const auto& o : C.objects)
    if (!(F.f1(C.id1.at(o)) == identity_functor(F.at(o))))
      rep.add("identity 1-cell value is not the identity functor at " + o);
  for (const auto& [gf, h] : C.compose1)
    if (!(compose_functors(F.f1(gf.first), F.f1(gf.second)) == F.f1(h)))
      rep.add("strict functoriality fails on (" + gf.first + "," + gf.second +
              ")");
  for (const auto& m : C.two_cells()) {
    if (!F.on_two_cells.count(m)) {
      rep.add("missing value at 2-cell " + m);
      continue;
    }
    auto ab = C.cell2_hom(m);
    const auto& mm = C.hom_at(ab.first, ab.second).mor(m);
    const NatTransformation& nm = F.f2(m);
    if (!(nm.source == F.f1(mm.src)) || !(nm.target == F.f1(mm.tgt)))
      rep.add("value at 2-cell " + m + " mistyped");
    auto r = validate_nat(nm);
    for (auto& v : r.violations) rep.add("value at " + m + ": " + v);
  }
  if (!rep.ok()) return rep;
  for (const auto& u : C.one_cells())
    if (!(F.f2(C.id2(u)) == identity_nat(F.f1(u))))
      rep.add("identity 2-cell value is not the identity at " + u);
  for (const auto& [ab, h] : C.hom)
    for (const auto& [vc, w] : h.compose_table)
      if (!(vcompose_nats(F.f2(vc.first), F.f2(vc.second)) == F.f2(w)))
        rep.add("vertical functoriality fails on (" + vc.first + "," +
                vc.second + ")");
  for (const auto& [ba, r] : C.hcompose2) {
    // F(beta * alpha) = F(beta) * F(alpha): the horizontal composite of nats
    const NatTransformation& nb = F.f2(ba.first);
    const NatTransformation& na = F.f2(ba.second);
    NatTransformation horiz = vcompose_nats(
        whisker_nat_functor(nb, na.target), whisker_functor_nat(nb.source, na));
    if (!(horiz.components == F.f2(r).components))
      rep.add("horizontal functoriality fails on (" + ba.first + "," +
              ba.second + ")");
  }
  return rep;
}

// Constant diagram at a fixed category.
inline CatValued2Functor constant_diagram(TwoCatPtr base, CatPtr value) {
  CatValued2Functor F;
  F.source = base;
  Functor idv = identity_functor(value);
  for (const auto& o : base->objects) F.on_objects[o] = value;
  for (const auto& u : base->one_cells()) F.on_one_cells[u] = idv;
  for (const auto& m : base->two_cells()) F.on_two_cells[m] = identity_nat(idv);
  return F;
}

inline CatValued2Functor delta_one(TwoCatPtr base) {
  return constant_diagram(std::move(base), make_cat(terminal_category()));
}

// Precompose a diagram with a 2-functor: F ∘ P.
inline CatValued2Functor precompose_diagram(const CatValued2Functor& F,
                                            const TwoFunctor& P) {
  CatValued2Functor G;
  G.source = P.source;
  for (const auto& o : P.source->objects) G.on_objects[o] = F.at(P.ob(o));
  for (const auto& u : P.source->one_cells())
    G.on_one_cells[u] = F.f1(P.c1(u));
  for (const auto& m : P.source->two_cells())
    G.on_two_cells[m] = F.f2(P.c2(m));
  return G;
}

// 2-cell dual of a diagram: a 2-functor co(C) -> Cat with opposite values,
// so colax data over F become lax data over co_diagram(F).
inline CatValued2Functor co_diagram(const CatValued2Functor& F,
                                    TwoCatPtr co_base) {
  CatValued2Functor G;
  G.source = std::move(co_base);
  std::map<Id, CatPtr> op_vals;
  for (const auto& [o, v] : F.on_objects)
    op_vals[o] = make_cat(opposite_category(*v));
  G.on_objects = op_vals;
  for (const auto& [u, fu] : F.on_one_cells) {
    auto [a, b] = F.source->cell1_ends(u);
    Functor g;
    g.source = op_vals.at(a);
    g.target = op_vals.at(b);
    g.on_objects = fu.on_objects;
    g.on_morphisms = fu.on_morphisms;
    G.on_one_cells[u] = std::move(g);
  }
  for (const auto& [m, nm] : F.on_two_cells) {
    auto ab = F.source->cell2_hom(m);
    const auto& mm = F.source->hom_at(ab.first, ab.second).mor(m);
    // m: u => u' in C is a 2-cell u' => u in co(C); its value is the same
    // component family, now natural between the opposite functors
    NatTransformation n;
    n.source = G.f1(mm.tgt);
    n.target = G.f1(mm.src);
    n.components = nm.components;
    G.on_two_cells[m] = std::move(n);
  }
  return G;
}

// ---------------------------------------------------------------------------
// Lax transformations and modifications

// comp2 convention: for f: d -> c, comp2.at(f) : G(f)∘α_d => α_c∘F(f).
struct LaxTransformation {
  DiagPtr from, to;
  std::map<Id, Functor> comp1;
  std::map<Id, NatTransformation> comp2;

  const Functor& at(const Id& o) const { return comp1.at(o); }
  const NatTransformation& at2(const Id& u) const { return comp2.at(u); }
  bool is_strict() const {
    for (const auto& [u, n] : comp2)
      if (!nat_is_identity(n)) return false;
    return true;
  }
};

inline std::string ser(const LaxTransformation& t) {
  std::string s = "T{";
  for (const auto& [o, f] : t.comp1) s += o + "=" + ser(f) + ";";
  s += "|";
  for (const auto& [u, n] : t.comp2) s += u + "=" + ser(n) + ";";
  return s + "}";
}

// The expected boundary of comp2 at a 1-cell.
inline std::pair<Functor, Functor> lax_square(const LaxTransformation& t,
                                              const Id& u) {
  const Fin2Category& C = *t.from->source;
  auto [d, c] = C.cell1_ends(u);
  Functor lhs = compose_functors(t.to->f1(u), t.at(d));
  Functor rhs = compose_functors(t.at(c), t.from->f1(u));
  return {lhs, rhs};
}

inline ValidationReport validate_lax(const LaxTransformation& t,
                                     const std::set<Id>* sigma = nullptr) {
  ValidationReport rep;
  const CatValued2Functor& F = *t.from;
  const CatValued2Functor& G = *t.to;
  const Fin2Category& C = *F.source;
  for (const auto& o : C.objects) {
    if (!t.comp1.count(o)) {
      rep.add("missing 1-component at " + o);
      continue;
    }
    auto r = validate_functor(t.at(o));
    for (auto& v : r.violations) rep.add("component at " + o + ": " + v);
  }
  if (!rep.ok()) return rep;
  for (const auto& u : C.one_cells()) {
    if (!t.comp2.count(u)) {
      rep.add("missing 2-component at " + u);
      continue;
    }
    auto [lhs, rhs] = lax_square(t, u);
    const NatTransformation& n = t.at2(u);
    if (!(n.source == lhs) || !(n.target == rhs)) {
      rep.add("2-component mistyped at " + u);
      continue;
    }
    auto r = validate_nat(n);
    for (auto& v : r.violations) rep.add("2-component at " + u + ": " + v);
  }
  if (!rep.ok()) return rep;
  // lax unity
  for (const auto& o : C.objects)
    if (!nat_is_identity(t.at2(C.id1.at(o))))
      rep.add("lax unity fails at " + o);
  // lax functoriality: alpha_{v∘u} = (alpha_v * F(u)) ∘ (G(v) * alpha_u)
  for (const auto& [vu, w] : C.compose1) {
    const Id& v = vu.first;
    const Id& u = vu.second;
    NatTransformation expect = vcompose_nats(
        whisker_nat_functor(t.at2(v), F.f1(u)),
        whisker_functor_nat(G.f1(v), t.at2(u)));
    if (!(expect.components == t.at2(w).components))
      rep.add("lax functoriality fails on (" + v + ", " + u + ")");
  }
  // naturality in 2-cells: (alpha_c * F(m)) ∘ alpha_u = alpha_u' ∘ (G(m) * alpha_d)
  for (const auto& m : C.two_cells()) {
    auto ab = C.cell2_hom(m);
    const auto& mm = C.hom_at(ab.first, ab.second).mor(m);
    const Id& u = mm.src;
    const Id& u2 = mm.tgt;
    NatTransformation lhs = vcompose_nats(
        whisker_functor_nat(t.at(ab.second), F.f2(m)), t.at2(u));
    NatTransformation rhs = vcompose_nats(
        t.at2(u2), whisker_nat_functor(G.f2(m), t.at(ab.first)));
    if (!(lhs.components == rhs.components))
      rep.add("2-cell naturality fails at " + m);
  }
  if (sigma) {
    for (const auto& u : *sigma)
      if (t.comp2.count(u) && !nat_is_identity(t.at2(u)))
        rep.add("marked 2-component is not the identity at " + u);
  }
  return rep;
}

// Vertical composition of lax transformations.
inline LaxTransformation vcompose_lax(const LaxTransformation& b,
                                      const LaxTransformation& a) {
  LaxTransformation r;
  r.from = a.from;
  r.to = b.to;
  const Fin2Category& C = *a.from->source;
  for (const auto& o : C.objects)
    r.comp1[o] = compose_functors(b.at(o), a.at(o));
  for (const auto& u : C.one_cells()) {
    auto [d, c] = C.cell1_ends(u);
    r.comp2[u] = vcompose_nats(whisker_functor_nat(b.at(c), a.at2(u)),
                               whisker_nat_functor(b.at2(u), a.at(d)));
  }
  return r;
}

inline LaxTransformation identity_lax(DiagPtr F) {
  LaxTransformation t;
  t.from = t.to = F;
  const Fin2Category& C = *F->source;
  for (const auto& o : C.objects) t.comp1[o] = identity_functor(F->at(o));
  for (const auto& u : C.one_cells())
    t.comp2[u] = identity_nat(F->f1(u));
  return t;
}

struct Modification {
  // between parallel lax transformations s, t : F => G
  std::map<Id, NatTransformation> comp;  // object -> rho_d : s_d => t_d

  const NatTransformation& at(const Id& o) const { return comp.at(o); }
};

inline std::string ser(const Modification& m) {
  std::string s = "M{";
  for (const auto& [o, n] : m.comp) s += o + "=" + ser(n) + ";";
  return s + "}";
}

inline ValidationReport validate_modification(const LaxTransformation& s,
                                              const LaxTransformation& t,
                                              const Modification& rho) {
  ValidationReport rep;
  const CatValued2Functor& F = *s.from;
  const CatValued2Functor& G = *s.to;
  const Fin2Category& C = *F.source;
  for (const auto& o : C.objects) {
    if (!rho.comp.count(o)) {
      rep.add("missing component at " + o);
      continue;
    }
    const NatTransformation& n = rho.at(o);
    if (!(n.source == s.at(o)) || !(n.target == t.at(o))) {
      rep.add("component mistyped at " + o);
      continue;
    }
    auto r = validate_nat(n);
    for (auto& v : r.violations) rep.add("component at " + o + ": " + v);
  }
  if (!rep.ok()) return rep;
  // modification axiom per 1-cell u: d -> c:
  //   t_u ∘ (G(u) * rho_d) = (rho_c * F(u)) ∘ s_u
  for (const auto& u : C.one_cells()) {
    auto [d, c] = C.cell1_ends(u);
    NatTransformation lhs =
        vcompose_nats(t.at2(u), whisker_functor_nat(G.f1(u), rho.at(d)));
    NatTransformation rhs =
        vcompose_nats(whisker_nat_functor(rho.at(c), F.f1(u)), s.at2(u));
    if (!(lhs.components == rhs.components))
      rep.add("modification axiom fails at " + u);
  }
  return rep;
}

inline Modification identity_modification(const LaxTransformation& t) {
  Modification m;
  for (const auto& [o, f] : t.comp1) m.comp[o] = identity_nat(f);
  return m;
}

inline Modification vcompose_modifications(const Modification& b,
                                           const Modification& a) {
  Modification r;
  for (const auto& [o, n] : a.comp) r.comp[o] = vcompose_nats(b.at(o), n);
  return r;
}

// Whisker a modification with a transformation on either side.
inline Modification whisker_lax_mod(const LaxTransformation& post,
                                    const Modification& rho) {
  Modification r;
  for (const auto& [o, n] : rho.comp)
    r.comp[o] = whisker_functor_nat(post.at(o), n);
  return r;
}
inline Modification whisker_mod_lax(const Modification& rho,
                                    const LaxTransformation& pre) {
  Modification r;
  for (const auto& [o, n] : rho.comp)
    r.comp[o] = whisker_nat_functor(n, pre.at(o));
  return r;
}

}  // namespace catlim
