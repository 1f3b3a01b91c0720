#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "catlim/core.hpp"

namespace catlim {

using Id = std::string;
using IdPair = std::pair<Id, Id>;

struct Morphism {
  Id id, src, tgt;
  friend bool operator==(const Morphism& a, const Morphism& b) {
    return a.id == b.id && a.src == b.src && a.tgt == b.tgt;
  }
  friend auto operator<=>(const Morphism& a, const Morphism& b) = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string v) { violations.push_back(std::move(v)); }
};

// A finite category given by an explicit total composition table.
// Morphism ids are unique; equality of everything is id equality.
class FinCategory {
 public:
  std::vector<Id> objects;
  std::vector<Morphism> morphisms;
  std::map<Id, Id> identity;          // object -> morphism id
  std::map<IdPair, Id> compose_table; // (g, f) -> g∘f for tgt(f) = src(g)

  bool has_object(const Id& o) const {
    return std::find(objects.begin(), objects.end(), o) != objects.end();
  }
  bool has_morphism(const Id& m) const { return mor_index_.count(m) > 0; }

  const Morphism& mor(const Id& m) const {
    auto it = mor_index_.find(m);
    if (it == mor_index_.end())
      throw CatError(ErrorKind::Validation, "unknown morphism id: " + m);
    return morphisms[it->second];
  }

  const Id& id_of(const Id& obj) const {
    auto it = identity.find(obj);
    if (it == identity.end())
      throw CatError(ErrorKind::Validation, "no identity for object: " + obj);
    return it->second;
  }

  bool is_identity(const Id& m) const {
    const Morphism& mm = mor(m);
    auto it = identity.find(mm.src);
    return it != identity.end() && it->second == m;
  }

  // g∘f; throws on non-composable pairs.
  const Id& compose(const Id& g, const Id& f) const {
    auto it = compose_table.find({g, f});
    if (it == compose_table.end())
      throw CatError(ErrorKind::Validation,
                     "compose undefined for (" + g + ", " + f + ")");
    return it->second;
  }

  // Composes a path given in applicative order: compose_path({h,g,f}) = h∘g∘f.
  Id compose_path(const Id& at_object_if_empty,
                  const std::vector<Id>& applicative) const {
    if (applicative.empty()) return id_of(at_object_if_empty);
    Id acc = applicative.back();
    for (auto it = std::next(applicative.rbegin()); it != applicative.rend();
         ++it)
      acc = compose(*it, acc);
    return acc;
  }

  std::vector<Id> hom(const Id& a, const Id& b) const {
    std::vector<Id> out;
    for (const auto& m : morphisms)
      if (m.src == a && m.tgt == b) out.push_back(m.id);
    return out;
  }

  // Call after filling the public fields (and after any mutation).
  void reindex() {
    mor_index_.clear();
    for (std::size_t i = 0; i < morphisms.size(); ++i)
      mor_index_[morphisms[i].id] = i;
  }

  friend bool operator==(const FinCategory& a, const FinCategory& b) {
    return a.objects == b.objects && a.morphisms == b.morphisms &&
           a.identity == b.identity && a.compose_table == b.compose_table;
  }

 private:
  std::map<Id, std::size_t> mor_index_;
};

using CatPtr = std::shared_ptr<const FinCategory>;

inline CatPtr make_cat(FinCategory c) {
  c.reindex();
  return std::make_shared<const FinCategory>(std::move(c));
}

// Every violated law is reported; empty report iff the tables form a category.
inline ValidationReport validate_category(const FinCategory& c) {
  ValidationReport rep;
  std::set<Id> obj_set(c.objects.begin(), c.objects.end());
  if (obj_set.size() != c.objects.size()) rep.add("duplicate object ids");
  std::set<Id> mor_set;
  for (const auto& m : c.morphisms) {
    if (!mor_set.insert(m.id).second) rep.add("duplicate morphism id: " + m.id);
    if (!obj_set.count(m.src))
      rep.add("morphism " + m.id + " has unknown source " + m.src);
    if (!obj_set.count(m.tgt))
      rep.add("morphism " + m.id + " has unknown target " + m.tgt);
  }
  for (const auto& o : c.objects) {
    auto it = c.identity.find(o);
    if (it == c.identity.end()) {
      rep.add("missing identity for object " + o);
      continue;
    }
    if (!mor_set.count(it->second)) {
      rep.add("identity of " + o + " is not a morphism: " + it->second);
      continue;
    }
    const Morphism& idm = c.mor(it->second);
    if (idm.src != o || idm.tgt != o)
      rep.add("identity of " + o + " is not an endomorphism of " + o);
  }
  // Totality and typing of the composition table.
  for (const auto& g : c.morphisms) {
    for (const auto& f : c.morphisms) {
      if (f.tgt != g.src) {
        if (c.compose_table.count({g.id, f.id}))
          rep.add("compose defined on non-composable pair (" + g.id + ", " +
                  f.id + ")");
        continue;
      }
      auto it = c.compose_table.find({g.id, f.id});
      if (it == c.compose_table.end()) {
        rep.add("compose missing for (" + g.id + ", " + f.id + ")");
        continue;
      }
      if (!mor_set.count(it->second)) {
        rep.add("compose(" + g.id + ", " + f.id + ") is not a morphism: " +
                it->second);
        continue;
      }
      const Morphism& gf = c.mor(it->second);
      if (gf.src != f.src || gf.tgt != g.tgt)
        rep.add("compose(" + g.id + ", " + f.id + ") mistyped: got " + gf.id +
                ": " + gf.src + " -> " + gf.tgt);
    }
  }
  if (!rep.ok()) return rep;  // laws below assume a well-typed total table
  // Identity laws.
  for (const auto& f : c.morphisms) {
    if (c.compose(c.id_of(f.tgt), f.id) != f.id)
      rep.add("identity law fails: id_" + f.tgt + " ∘ " + f.id);
    if (c.compose(f.id, c.id_of(f.src)) != f.id)
      rep.add("identity law fails: " + f.id + " ∘ id_" + f.src);
  }
  // Associativity, exhaustively over composable triples.
  for (const auto& h : c.morphisms)
    for (const auto& g : c.morphisms) {
      if (g.tgt != h.src) continue;
      for (const auto& f : c.morphisms) {
        if (f.tgt != g.src) continue;
        if (c.compose(h.id, c.compose(g.id, f.id)) !=
            c.compose(c.compose(h.id, g.id), f.id))
          rep.add("associativity fails on (" + h.id + ", " + g.id + ", " +
                  f.id + ")");
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Builders

inline Id identity_name(const Id& obj) { return "1_" + obj; }

inline FinCategory discrete_category(const std::vector<Id>& objs) {
  FinCategory c;
  c.objects = objs;
  for (const auto& o : objs) {
    Id i = identity_name(o);
    c.morphisms.push_back({i, o, o});
    c.identity[o] = i;
    c.compose_table[{i, i}] = i;
  }
  c.reindex();
  return c;
}

inline FinCategory empty_category() { return discrete_category({}); }

inline FinCategory terminal_category() { return discrete_category({"*"}); }

// The poset {0 < 1 < ... < n} as a category with n+1 objects.
inline FinCategory chain_category(std::size_t n) {
  FinCategory c;
  for (std::size_t i = 0; i <= n; ++i) c.objects.push_back(std::to_string(i));
  auto arrow = [](std::size_t i, std::size_t j) {
    return i == j ? identity_name(std::to_string(i))
                  : "r_" + std::to_string(i) + "_" + std::to_string(j);
  };
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j)
      c.morphisms.push_back(
          {arrow(i, j), std::to_string(i), std::to_string(j)});
  for (std::size_t i = 0; i <= n; ++i)
    c.identity[std::to_string(i)] = arrow(i, i);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j)
      for (std::size_t k = j; k <= n; ++k)
        c.compose_table[{arrow(j, k), arrow(i, j)}] = arrow(i, k);
  c.reindex();
  return c;
}

inline Id pair_id(const Id& a, const Id& b) { return "(" + a + "|" + b + ")"; }

inline Id tag_id(const Id& tag, const Id& x) { return tag + ":" + x; }

inline FinCategory product_category(const FinCategory& a,
                                    const FinCategory& b) {
  FinCategory p;
  for (const auto& oa : a.objects)
    for (const auto& ob : b.objects) p.objects.push_back(pair_id(oa, ob));
  for (const auto& ma : a.morphisms)
    for (const auto& mb : b.morphisms)
      p.morphisms.push_back({pair_id(ma.id, mb.id), pair_id(ma.src, mb.src),
                             pair_id(ma.tgt, mb.tgt)});
  for (const auto& oa : a.objects)
    for (const auto& ob : b.objects)
      p.identity[pair_id(oa, ob)] = pair_id(a.id_of(oa), b.id_of(ob));
  for (const auto& [ga_fa, ha] : a.compose_table)
    for (const auto& [gb_fb, hb] : b.compose_table)
      p.compose_table[{pair_id(ga_fa.first, gb_fb.first),
                       pair_id(ga_fa.second, gb_fb.second)}] =
          pair_id(ha, hb);
  p.reindex();
  return p;
}

// Disjoint union; each summand is tagged.
inline FinCategory coproduct_category(
    const std::vector<std::pair<Id, const FinCategory*>>& summands) {
  FinCategory s;
  for (const auto& [tag, c] : summands) {
    for (const auto& o : c->objects) s.objects.push_back(tag_id(tag, o));
    for (const auto& m : c->morphisms)
      s.morphisms.push_back(
          {tag_id(tag, m.id), tag_id(tag, m.src), tag_id(tag, m.tgt)});
    for (const auto& [o, i] : c->identity)
      s.identity[tag_id(tag, o)] = tag_id(tag, i);
    for (const auto& [gf, h] : c->compose_table)
      s.compose_table[{tag_id(tag, gf.first), tag_id(tag, gf.second)}] =
          tag_id(tag, h);
  }
  s.reindex();
  return s;
}

inline FinCategory opposite_category(const FinCategory& c) {
  FinCategory o;
  o.objects = c.objects;
  for (const auto& m : c.morphisms) o.morphisms.push_back({m.id, m.tgt, m.src});
  o.identity = c.identity;
  for (const auto& [gf, h] : c.compose_table)
    o.compose_table[{gf.second, gf.first}] = h;
  o.reindex();
  return o;
}

inline FinCategory full_subcategory(const FinCategory& c,
                                    const std::set<Id>& objs) {
  FinCategory s;
  for (const auto& o : c.objects)
    if (objs.count(o)) s.objects.push_back(o);
  for (const auto& m : c.morphisms)
    if (objs.count(m.src) && objs.count(m.tgt)) s.morphisms.push_back(m);
  for (const auto& o : s.objects) s.identity[o] = c.identity.at(o);
  for (const auto& [gf, h] : c.compose_table) {
    const auto& g = c.mor(gf.first);
    const auto& f = c.mor(gf.second);
    if (objs.count(f.src) && objs.count(f.tgt) && objs.count(g.tgt))
      s.compose_table[gf] = h;
  }
  s.reindex();
  return s;
}

// ---------------------------------------------------------------------------
// Functors and natural transformations

struct Functor {
  CatPtr source, target;
  std::map<Id, Id> on_objects;
  std::map<Id, Id> on_morphisms;

  const Id& ob(const Id& o) const {
    auto it = on_objects.find(o);
    if (it == on_objects.end())
      throw CatError(ErrorKind::Validation, "functor: no image for object " + o);
    return it->second;
  }
  const Id& mo(const Id& m) const {
    auto it = on_morphisms.find(m);
    if (it == on_morphisms.end())
      throw CatError(ErrorKind::Validation,
                     "functor: no image for morphism " + m);
    return it->second;
  }
  friend bool operator==(const Functor& a, const Functor& b) {
    return a.on_objects == b.on_objects && a.on_morphisms == b.on_morphisms;
  }
  friend bool operator<(const Functor& a, const Functor& b) {
    if (a.on_objects != b.on_objects) return a.on_objects < b.on_objects;
    return a.on_morphisms < b.on_morphisms;
  }
};

inline ValidationReport validate_functor(const Functor& f) {
  ValidationReport rep;
  const FinCategory& A = *f.source;
  const FinCategory& B = *f.target;
  for (const auto& o : A.objects) {
    auto it = f.on_objects.find(o);
    if (it == f.on_objects.end()) {
      rep.add("no image for object " + o);
      continue;
    }
    if (!B.has_object(it->second))
      rep.add("object image " + it->second + " not in target");
  }
  for (const auto& m : A.morphisms) {
    auto it = f.on_morphisms.find(m.id);
    if (it == f.on_morphisms.end()) {
      rep.add("no image for morphism " + m.id);
      continue;
    }
    if (!B.has_morphism(it->second)) {
      rep.add("morphism image " + it->second + " not in target");
      continue;
    }
    const Morphism& fm = B.mor(it->second);
    if (f.on_objects.count(m.src) && fm.src != f.ob(m.src))
      rep.add("source not preserved on " + m.id);
    if (f.on_objects.count(m.tgt) && fm.tgt != f.ob(m.tgt))
      rep.add("target not preserved on " + m.id);
  }
  if (!rep.ok()) return rep;
  for (const auto& o : A.objects)
    if (f.mo(A.id_of(o)) != B.id_of(f.ob(o)))
      rep.add("identity not preserved at " + o);
  for (const auto& [gf, h] : A.compose_table)
    if (f.mo(h) != B.compose(f.mo(gf.first), f.mo(gf.second)))
      rep.add("composition not preserved on (" + gf.first + ", " + gf.second +
              ")");
  return rep;
}

inline Functor identity_functor(CatPtr c) {
  Functor f;
  f.source = f.target = c;
  for (const auto& o : c->objects) f.on_objects[o] = o;
  for (const auto& m : c->morphisms) f.on_morphisms[m.id] = m.id;
  return f;
}

// g∘f.
inline Functor compose_functors(const Functor& g, const Functor& f) {
  Functor h;
  h.source = f.source;
  h.target = g.target;
  for (const auto& [o, fo] : f.on_objects) h.on_objects[o] = g.ob(fo);
  for (const auto& [m, fm] : f.on_morphisms) h.on_morphisms[m] = g.mo(fm);
  return h;
}

// Picks an object: functor from the terminal category.
inline Functor const_object_functor(CatPtr target, const Id& obj) {
  Functor f;
  f.source = make_cat(terminal_category());
  f.target = std::move(target);
  f.on_objects["*"] = obj;
  f.on_morphisms[identity_name("*")] = f.target->id_of(obj);
  return f;
}

struct NatTransformation {
  Functor source, target;       // parallel functors
  std::map<Id, Id> components;  // object of source cat -> morphism of target cat

  const Id& at(const Id& o) const {
    auto it = components.find(o);
    if (it == components.end())
      throw CatError(ErrorKind::Validation, "nat: no component at " + o);
    return it->second;
  }
  friend bool operator==(const NatTransformation& a,
                         const NatTransformation& b) {
    return a.components == b.components && a.source == b.source &&
           a.target == b.target;
  }
};

inline ValidationReport validate_nat(const NatTransformation& n) {
  ValidationReport rep;
  const FinCategory& A = *n.source.source;
  const FinCategory& B = *n.source.target;
  for (const auto& o : A.objects) {
    auto it = n.components.find(o);
    if (it == n.components.end()) {
      rep.add("missing component at " + o);
      continue;
    }
    const Morphism& c = B.mor(it->second);
    if (c.src != n.source.ob(o) || c.tgt != n.target.ob(o))
      rep.add("component at " + o + " mistyped");
  }
  if (!rep.ok()) return rep;
  for (const auto& m : A.morphisms)
    if (B.compose(n.at(m.tgt), n.source.mo(m.id)) !=
        B.compose(n.target.mo(m.id), n.at(m.src)))
      rep.add("naturality fails at " + m.id);
  return rep;
}

inline NatTransformation identity_nat(const Functor& f) {
  NatTransformation n;
  n.source = n.target = f;
  for (const auto& o : f.source->objects)
    n.components[o] = f.target->id_of(f.ob(o));
  return n;
}

inline bool nat_is_identity(const NatTransformation& n) {
  for (const auto& [o, c] : n.components)
    if (!n.source.target->is_identity(c)) return false;
  return n.source == n.target;
}

// Vertical composition: (m ∘ n)_x = m_x ∘ n_x.
inline NatTransformation vcompose_nats(const NatTransformation& m,
                                       const NatTransformation& n) {
  NatTransformation r;
  r.source = n.source;
  r.target = m.target;
  const FinCategory& B = *n.source.target;
  for (const auto& [o, c] : n.components)
    r.components[o] = B.compose(m.at(o), c);
  return r;
}

// Whisker on the left by a functor: (h · n)_x = h(n_x).
inline NatTransformation whisker_functor_nat(const Functor& h,
                                             const NatTransformation& n) {
  NatTransformation r;
  r.source = compose_functors(h, n.source);
  r.target = compose_functors(h, n.target);
  for (const auto& [o, c] : n.components) r.components[o] = h.mo(c);
  return r;
}

// Whisker on the right by a functor: (n · h)_x = n_{h(x)}.
inline NatTransformation whisker_nat_functor(const NatTransformation& n,
                                             const Functor& h) {
  NatTransformation r;
  r.source = compose_functors(n.source, h);
  r.target = compose_functors(n.target, h);
  for (const auto& o : h.source->objects) r.components[o] = n.at(h.ob(o));
  return r;
}

// ---------------------------------------------------------------------------
// Enumeration with constraint propagation.  Identities are forced and each
// defined composite forces the image of the composite morphism, so the
// branching factor is over generator-like morphisms only.

namespace detail {

// Interleaved search: after each object image is chosen, every A-morphism
// whose endpoints are both assigned becomes a pending choice point, with
// composite forcing along the composition table.  This keeps the branching
// local so large source categories stay tractable.
struct FunctorSearch {
  const FinCategory& A;
  const FinCategory& B;
  const Caps& caps;
  std::vector<Id> order;  // interleaved: "o:<id>" then "m:<id>" steps
  std::map<Id, std::vector<Id>> hom_cache;
  std::size_t nodes = 0;

  FunctorSearch(const FinCategory& a, const FinCategory& b, const Caps& c)
      : A(a), B(b), caps(c) {
    std::set<Id> placed, queued;
    for (const auto& o : A.objects) {
      order.push_back("o" + o);
      placed.insert(o);
      for (const auto& m : A.morphisms)
        if (placed.count(m.src) && placed.count(m.tgt) &&
            !A.is_identity(m.id) && queued.insert(m.id).second)
          order.push_back("m" + m.id);
    }
  }

  const std::vector<Id>& homs(const Id& a, const Id& b) {
    Id key = pair_id(a, b);
    auto it = hom_cache.find(key);
    if (it != hom_cache.end()) return it->second;
    return hom_cache.emplace(key, B.hom(a, b)).first->second;
  }

  // Propagate forced composites; returns false on conflict.
  bool propagate(const std::map<Id, Id>& ob_map, std::map<Id, Id>& mo_map,
                 std::vector<Id>& forced) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [gf, h] : A.compose_table) {
        auto ig = mo_map.find(gf.first);
        auto iff = mo_map.find(gf.second);
        if (ig == mo_map.end() || iff == mo_map.end()) continue;
        const Id& want = B.compose(ig->second, iff->second);
        auto ih = mo_map.find(h);
        if (ih == mo_map.end()) {
          mo_map[h] = want;
          forced.push_back(h);
          changed = true;
        } else if (ih->second != want) {
          return false;
        }
      }
    }
    (void)ob_map;
    return true;
  }

  template <typename Sink>
  void run(Sink&& sink) {
    std::map<Id, Id> ob_map, mo_map;
    step(0, ob_map, mo_map, sink);
  }

  template <typename Sink>
  void step(std::size_t i, std::map<Id, Id>& ob_map, std::map<Id, Id>& mo_map,
            Sink&& sink) {
    if (++nodes > caps.max_search)
      throw CatError(ErrorKind::SizeOverflow, "functor enumeration too large");
    while (i < order.size() && order[i][0] == 'm' &&
           mo_map.count(order[i].substr(1)))
      ++i;
    if (i == order.size()) {
      Functor f;
      f.on_objects = ob_map;
      f.on_morphisms = mo_map;
      sink(f);
      return;
    }
    if (order[i][0] == 'o') {
      Id o = order[i].substr(1);
      for (const auto& img : B.objects) {
        ob_map[o] = img;
        bool feasible = true;
        for (const auto& [p, pi] : ob_map) {
          if (!A.hom(o, p).empty() && homs(img, pi).empty()) feasible = false;
          if (!A.hom(p, o).empty() && homs(pi, img).empty()) feasible = false;
          if (!feasible) break;
        }
        if (feasible) {
          Id idA = A.id_of(o);
          mo_map[idA] = B.id_of(img);
          std::vector<Id> forced;
          if (propagate(ob_map, mo_map, forced))
            step(i + 1, ob_map, mo_map, sink);
          for (const auto& fid : forced) mo_map.erase(fid);
          mo_map.erase(idA);
        }
      }
      ob_map.erase(o);
      return;
    }
    Id mid = order[i].substr(1);
    const Morphism& m = A.mor(mid);
    for (const auto& img : homs(ob_map.at(m.src), ob_map.at(m.tgt))) {
      mo_map[mid] = img;
      std::vector<Id> forced;
      if (propagate(ob_map, mo_map, forced)) step(i + 1, ob_map, mo_map, sink);
      for (const auto& fid : forced) mo_map.erase(fid);
      mo_map.erase(mid);
    }
  }
};

}  // namespace detail

inline std::vector<Functor> enumerate_functors(CatPtr a, CatPtr b,
                                               const Caps& caps = {}) {
  std::vector<Functor> out;
  detail::FunctorSearch search(*a, *b, caps);
  search.run([&](Functor& f) {
    f.source = a;
    f.target = b;
    out.push_back(f);
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<NatTransformation> enumerate_nats(const Functor& f,
                                                     const Functor& g,
                                                     const Caps& caps = {}) {
  const FinCategory& A = *f.source;
  const FinCategory& B = *f.target;
  std::vector<NatTransformation> out;
  std::map<Id, Id> comp;
  std::size_t nodes = 0;
  auto ok_so_far = [&](std::size_t upto) {
    // check naturality squares whose endpoints are both assigned
    for (const auto& m : A.morphisms) {
      auto is_ = comp.find(m.src);
      auto it_ = comp.find(m.tgt);
      if (is_ == comp.end() || it_ == comp.end()) continue;
      if (B.compose(it_->second, f.mo(m.id)) !=
          B.compose(g.mo(m.id), is_->second))
        return false;
    }
    (void)upto;
    return true;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (++nodes > caps.max_search)
      throw CatError(ErrorKind::SizeOverflow, "nat enumeration too large");
    if (i == A.objects.size()) {
      NatTransformation n;
      n.source = f;
      n.target = g;
      n.components = comp;
      out.push_back(std::move(n));
      return;
    }
    const Id& o = A.objects[i];
    for (const auto& c : B.hom(f.ob(o), g.ob(o))) {
      comp[o] = c;
      if (ok_so_far(i)) rec(i + 1);
      comp.erase(o);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(),
            [](const NatTransformation& x, const NatTransformation& y) {
              return x.components < y.components;
            });
  return out;
}

// ---------------------------------------------------------------------------
// The functor category [a, b]: objects all functors, morphisms all natural
// transformations, composition vertical.

struct FunctorCategory {
  FinCategory cat;
  std::vector<Functor> objs;                 // aligned with cat.objects
  std::map<Id, std::size_t> obj_index;       // object id -> index
  std::vector<NatTransformation> mors;       // aligned with cat.morphisms
  std::map<Id, std::size_t> mor_index;

  const Functor& functor_of(const Id& obj) const {
    return objs[obj_index.at(obj)];
  }
  const NatTransformation& nat_of(const Id& m) const {
    return mors[mor_index.at(m)];
  }
  // Object id of a functor (by structural equality of maps).
  std::optional<Id> find_object(const Functor& f) const {
    for (std::size_t i = 0; i < objs.size(); ++i)
      if (objs[i] == f) return cat.objects[i];
    return std::nullopt;
  }
  std::optional<Id> find_morphism(const NatTransformation& n) const {
    for (std::size_t i = 0; i < mors.size(); ++i)
      if (mors[i].components == n.components &&
          mors[i].source.on_objects == n.source.on_objects &&
          mors[i].target.on_objects == n.target.on_objects &&
          mors[i].source.on_morphisms == n.source.on_morphisms &&
          mors[i].target.on_morphisms == n.target.on_morphisms)
        return cat.morphisms[i].id;
    return std::nullopt;
  }
};

inline FunctorCategory functor_category(CatPtr a, CatPtr b,
                                        const Caps& caps = {}) {
  FunctorCategory fc;
  auto functors = enumerate_functors(a, b, caps);
  check_object_cap(functors.size(), caps, "functor_category");
  for (std::size_t i = 0; i < functors.size(); ++i) {
    Id oid = "F" + std::to_string(i);
    fc.cat.objects.push_back(oid);
    fc.obj_index[oid] = i;
    fc.objs.push_back(functors[i]);
  }
  std::size_t mcount = 0;
  std::map<IdPair, std::vector<std::size_t>> by_endpoints;
  for (std::size_t i = 0; i < functors.size(); ++i)
    for (std::size_t j = 0; j < functors.size(); ++j) {
      auto nats = enumerate_nats(functors[i], functors[j], caps);
      for (auto& n : nats) {
        Id mid;
        if (i == j && nat_is_identity(n)) {
          mid = identity_name(fc.cat.objects[i]);
          fc.cat.identity[fc.cat.objects[i]] = mid;
        } else {
          mid = "n" + std::to_string(mcount++);
        }
        fc.cat.morphisms.push_back({mid, fc.cat.objects[i],
                                    fc.cat.objects[j]});
        fc.mor_index[mid] = fc.mors.size();
        fc.mors.push_back(std::move(n));
        by_endpoints[{fc.cat.objects[i], fc.cat.objects[j]}].push_back(
            fc.mors.size() - 1);
      }
    }
  // composition table: vertical composition, found by lookup
  for (const auto& g : fc.cat.morphisms)
    for (const auto& f : fc.cat.morphisms) {
      if (f.tgt != g.src) continue;
      NatTransformation c =
          vcompose_nats(fc.mors[fc.mor_index.at(g.id)],
                        fc.mors[fc.mor_index.at(f.id)]);
      bool found = false;
      for (std::size_t k : by_endpoints[{f.src, g.tgt}]) {
        if (fc.mors[k].components == c.components) {
          fc.cat.compose_table[{g.id, f.id}] = fc.cat.morphisms[k].id;
          found = true;
          break;
        }
      }
      if (!found)
        throw CatError(ErrorKind::Validation,
                       "functor_category: composite not found");
    }
  fc.cat.reindex();
  return fc;
}

// ---------------------------------------------------------------------------
// (surjective-on-objects, full-embedding) factorization

inline bool is_surjective_on_objects(const Functor& f) {
  std::set<Id> image;
  for (const auto& [o, fo] : f.on_objects) image.insert(fo);
  for (const auto& o : f.target->objects)
    if (!image.count(o)) return false;
  return true;
}

inline bool is_full_embedding(const Functor& f) {
  // injective on objects
  std::map<Id, Id> seen;
  for (const auto& [o, fo] : f.on_objects) {
    auto [it, fresh] = seen.emplace(fo, o);
    if (!fresh) return false;
  }
  // fully faithful: hom(a,b) -> hom(Fa,Fb) bijective
  for (const auto& a : f.source->objects)
    for (const auto& b : f.source->objects) {
      auto dom = f.source->hom(a, b);
      auto cod = f.target->hom(f.ob(a), f.ob(b));
      if (dom.size() != cod.size()) return false;
      std::set<Id> image;
      for (const auto& m : dom) image.insert(f.mo(m));
      if (image.size() != dom.size()) return false;
    }
  return true;
}

// Factorizes f = m ∘ e with e surjective on objects and m a full embedding;
// the middle is the full subcategory of the target on the image objects.
inline std::pair<Functor, Functor> factorize_functor(const Functor& f) {
  std::set<Id> image;
  for (const auto& [o, fo] : f.on_objects) image.insert(fo);
  CatPtr mid = make_cat(full_subcategory(*f.target, image));
  Functor e;
  e.source = f.source;
  e.target = mid;
  e.on_objects = f.on_objects;
  e.on_morphisms = f.on_morphisms;
  Functor m;
  m.source = mid;
  m.target = f.target;
  for (const auto& o : mid->objects) m.on_objects[o] = o;
  for (const auto& mm : mid->morphisms) m.on_morphisms[mm.id] = mm.id;
  return {e, m};
}

// The unique diagonal d with d∘e = top and m∘d = bottom, for e
// surjective-on-objects and m a full embedding with bottom∘e = m∘top.
inline Functor unique_lift(const Functor& e, const Functor& m,
                           const Functor& top, const Functor& bottom) {
  Functor d;
  d.source = e.target;
  d.target = m.source;
  std::map<Id, Id> m_ob_inv, m_mo_inv;
  for (const auto& [o, mo_] : m.on_objects) m_ob_inv[mo_] = o;
  for (const auto& [mm, img] : m.on_morphisms) m_mo_inv[img] = mm;
  // objects: every object of e.target is e(a); d(e(a)) must be top(a)
  for (const auto& [a, ea] : e.on_objects) {
    Id want = top.ob(a);
    auto it = d.on_objects.find(ea);
    if (it != d.on_objects.end() && it->second != want)
      throw CatError(ErrorKind::NoLift, "lift not well-defined on objects");
    d.on_objects[ea] = want;
  }
  for (const auto& o : e.target->objects)
    if (!d.on_objects.count(o))
      throw CatError(ErrorKind::NoLift, "e is not surjective on objects");
  // morphisms: m is fully faithful, so d(u) is the unique preimage of
  // bottom(u) under m
  for (const auto& u : e.target->morphisms) {
    Id bu = bottom.mo(u.id);
    auto it = m_mo_inv.find(bu);
    if (it == m_mo_inv.end())
      throw CatError(ErrorKind::NoLift,
                     "bottom does not land in the image of m at " + u.id);
    const Morphism& cand = m.source->mor(it->second);
    if (cand.src != d.on_objects.at(u.src) ||
        cand.tgt != d.on_objects.at(u.tgt))
      throw CatError(ErrorKind::NoLift, "lift mistyped at " + u.id);
    d.on_morphisms[u.id] = it->second;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Isomorphism search

struct IsoWitness {
  Functor forward, backward;
};

namespace detail {

// Invariant profile used for pruning: for each object, the multiset of
// (hom-in sizes, hom-out sizes) against all objects.
inline std::multiset<std::pair<std::size_t, std::size_t>> degree_profile(
    const FinCategory& c, const Id& o) {
  std::multiset<std::pair<std::size_t, std::size_t>> prof;
  for (const auto& p : c.objects)
    prof.insert({c.hom(o, p).size(), c.hom(p, o).size()});
  return prof;
}

}  // namespace detail

inline std::optional<IsoWitness> find_isomorphism(CatPtr a, CatPtr b,
                                                  const Caps& caps = {}) {
  const FinCategory& A = *a;
  const FinCategory& B = *b;
  if (A.objects.size() != B.objects.size() ||
      A.morphisms.size() != B.morphisms.size())
    return std::nullopt;
  // degree profiles
  std::map<Id, std::multiset<std::pair<std::size_t, std::size_t>>> pa, pb;
  for (const auto& o : A.objects) pa[o] = detail::degree_profile(A, o);
  for (const auto& o : B.objects) pb[o] = detail::degree_profile(B, o);
  {
    std::multiset<std::multiset<std::pair<std::size_t, std::size_t>>> sa, sb;
    for (auto& [k, v] : pa) sa.insert(v);
    for (auto& [k, v] : pb) sb.insert(v);
    if (sa != sb) return std::nullopt;
  }
  std::map<Id, Id> ob_map;
  std::set<Id> used;
  std::size_t nodes = 0;
  std::optional<IsoWitness> result;

  // with a fixed object bijection, extend to an isomorphism on morphisms
  auto try_morphisms = [&](void) -> std::optional<Functor> {
    Functor f;
    f.source = a;
    f.target = b;
    f.on_objects = ob_map;
    // per hom-set bijective assignment via backtracking
    std::vector<std::pair<std::vector<Id>, std::vector<Id>>> blocks;
    for (const auto& x : A.objects)
      for (const auto& y : A.objects) {
        auto ha = A.hom(x, y);
        auto hb = B.hom(ob_map.at(x), ob_map.at(y));
        if (ha.size() != hb.size()) return std::nullopt;
        if (!ha.empty()) blocks.push_back({ha, hb});
      }
    std::map<Id, Id> mo_map;
    std::set<Id> used_m;
    std::function<bool(std::size_t, std::size_t)> rec =
        [&](std::size_t bi, std::size_t k) -> bool {
      if (++nodes > caps.max_search)
        throw CatError(ErrorKind::SizeOverflow, "iso search too large");
      if (bi == blocks.size()) {
        f.on_morphisms = mo_map;
        return validate_functor(f).ok();
      }
      auto& [ha, hb] = blocks[bi];
      if (k == ha.size()) return rec(bi + 1, 0);
      const Id& src_m = ha[k];
      for (const auto& cand : hb) {
        if (used_m.count(cand)) continue;
        // identities must map to identities
        if (A.is_identity(src_m) != B.is_identity(cand)) continue;
        mo_map[src_m] = cand;
        used_m.insert(cand);
        // partial composition check
        bool ok = true;
        for (const auto& [gf, h] : A.compose_table) {
          auto ig = mo_map.find(gf.first);
          auto iff = mo_map.find(gf.second);
          auto ih = mo_map.find(h);
          if (ig == mo_map.end() || iff == mo_map.end() || ih == mo_map.end())
            continue;
          if (B.compose(ig->second, iff->second) != ih->second) {
            ok = false;
            break;
          }
        }
        if (ok && rec(bi, k + 1)) return true;
        used_m.erase(cand);
        mo_map.erase(src_m);
      }
      return false;
    };
    if (rec(0, 0)) return f;
    return std::nullopt;
  };

  std::function<bool(std::size_t)> rec_ob = [&](std::size_t i) -> bool {
    if (++nodes > caps.max_search)
      throw CatError(ErrorKind::SizeOverflow, "iso search too large");
    if (i == A.objects.size()) {
      auto f = try_morphisms();
      if (!f) return false;
      // invert
      Functor g;
      g.source = b;
      g.target = a;
      for (const auto& [o, fo] : f->on_objects) g.on_objects[fo] = o;
      for (const auto& [m, fm] : f->on_morphisms) g.on_morphisms[fm] = m;
      result = IsoWitness{*f, g};
      return true;
    }
    const Id& o = A.objects[i];
    for (const auto& cand : B.objects) {
      if (used.count(cand) || pa[o] != pb[cand]) continue;
      ob_map[o] = cand;
      used.insert(cand);
      if (rec_ob(i + 1)) return true;
      used.erase(cand);
      ob_map.erase(o);
    }
    return false;
  };
  rec_ob(0);
  return result;
}

// Canonical serializations, used as dictionary keys during enumeration.
inline std::string ser(const std::map<Id, Id>& m) {
  std::ostringstream os;
  for (const auto& [k, v] : m) os << k << "~" << v << ";";
  return os.str();
}
inline std::string ser(const Functor& f) {
  return "F{" + ser(f.on_objects) + "|" + ser(f.on_morphisms) + "}";
}
inline std::string ser(const NatTransformation& n) {
  return "N{" + ser(n.components) + "}";
}

}  // namespace catlim
