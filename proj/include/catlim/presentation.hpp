#pragma once

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "catlim/core.hpp"
#include "catlim/fincat.hpp"

namespace catlim {

// A path in diagram order: gens.front() is applied first, so
// {src, tgt, {f, g}} denotes g∘f.  Empty gens is the identity at src.
struct Word {
  Id src, tgt;
  std::vector<Id> gens;
};

struct CatPresentation {
  std::vector<Id> objects;
  std::vector<Morphism> generators;
  std::vector<std::pair<Word, Word>> relations;
  std::size_t closure_bound = 10000;
};

inline ValidationReport validate_presentation(const CatPresentation& p) {
  ValidationReport rep;
  std::set<Id> objs(p.objects.begin(), p.objects.end());
  std::map<Id, Morphism> gens;
  for (const auto& g : p.generators) {
    if (!gens.emplace(g.id, g).second) rep.add("duplicate generator " + g.id);
    if (!objs.count(g.src) || !objs.count(g.tgt))
      rep.add("generator " + g.id + " has unknown endpoint");
  }
  auto check_word = [&](const Word& w, const std::string& where) {
    if (!objs.count(w.src) || !objs.count(w.tgt)) {
      rep.add(where + ": unknown endpoint");
      return;
    }
    Id at = w.src;
    for (const auto& g : w.gens) {
      auto it = gens.find(g);
      if (it == gens.end()) {
        rep.add(where + ": unknown generator " + g);
        return;
      }
      if (it->second.src != at) {
        rep.add(where + ": word not composable at " + g);
        return;
      }
      at = it->second.tgt;
    }
    if (at != w.tgt) rep.add(where + ": word does not end at " + w.tgt);
  };
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    const auto& [l, r] = p.relations[i];
    check_word(l, "relation " + std::to_string(i) + " lhs");
    check_word(r, "relation " + std::to_string(i) + " rhs");
    if (l.src != r.src || l.tgt != r.tgt)
      rep.add("relation " + std::to_string(i) + " is not parallel");
  }
  if (p.closure_bound < p.generators.size())
    rep.add("closureBound below generator count");
  return rep;
}

struct SaturationResult {
  FinCategory cat;
  std::map<Id, Id> identity_class;   // object -> morphism id of its identity
  std::map<Id, Id> generator_class;  // generator id -> morphism id
  std::map<Id, std::vector<Id>> rep_word;  // morphism -> diagram-order generators

  Id trace(const Word& w) const {
    std::vector<Id> applicative;
    for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it)
      applicative.push_back(generator_class.at(*it));
    return cat.compose_path(w.src, applicative);
  }
};

// Word saturation + congruence closure (a Todd–Coxeter style table method
// for categories).  Terminates iff the presented category stays below
// closure_bound distinct morphisms; otherwise throws ClosureOverflow.
inline SaturationResult saturate_presentation(const CatPresentation& p) {
  {
    auto rep = validate_presentation(p);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "invalid presentation: " + rep.violations.front());
  }
  std::map<Id, Morphism> gen;
  for (const auto& g : p.generators) gen[g.id] = g;

  struct Cls {
    Id src, tgt;
    std::map<Id, std::size_t> post;  // generator -> class of g∘this
  };
  std::vector<Cls> cls;
  std::vector<std::size_t> parent;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto live_count = [&] {
    std::size_t n = 0;
    for (std::size_t i = 0; i < parent.size(); ++i)
      if (find(i) == i) ++n;
    return n;
  };
  auto fresh = [&](const Id& src, const Id& tgt) {
    cls.push_back({src, tgt, {}});
    parent.push_back(parent.size());
    if (cls.size() > 4 * p.closure_bound + 64)
      throw CatError(ErrorKind::ClosureOverflow,
                     "saturation exceeded closure bound " +
                         std::to_string(p.closure_bound));
    return parent.size() - 1;
  };

  std::deque<std::pair<std::size_t, std::size_t>> pending;
  std::function<void()> drain = [&] {
    while (!pending.empty()) {
      auto [a, b] = pending.front();
      pending.pop_front();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      if (b < a) std::swap(a, b);  // keep the older class as representative
      parent[b] = a;
      // merge post rows; collisions queue further merges
      for (auto& [g, c] : cls[b].post) {
        auto it = cls[a].post.find(g);
        if (it == cls[a].post.end())
          cls[a].post[g] = c;
        else
          pending.push_back({it->second, c});
      }
      cls[b].post.clear();
    }
  };

  auto post = [&](std::size_t c, const Id& g) {
    c = find(c);
    auto it = cls[c].post.find(g);
    if (it != cls[c].post.end()) return find(it->second);
    std::size_t n = fresh(cls[c].src, gen.at(g).tgt);
    cls[find(c)].post[g] = n;
    return n;
  };
  auto trace_word = [&](std::size_t c, const std::vector<Id>& gens) {
    for (const auto& g : gens) c = post(c, g);
    return find(c);
  };

  std::map<Id, std::size_t> ident;
  for (const auto& o : p.objects) ident[o] = fresh(o, o);

  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t before_classes = cls.size();
    // totality: expand one frontier only, so relation merges can collapse
    // classes before the next expansion wave
    for (std::size_t c = 0; c < before_classes; ++c) {
      if (find(c) != c) continue;
      for (const auto& [gid, g] : gen)
        if (g.src == cls[c].tgt) post(c, gid);
    }
    // relations at every class
    for (std::size_t c = 0; c < cls.size(); ++c) {
      if (find(c) != c) continue;
      for (const auto& [l, r] : p.relations) {
        if (l.src != cls[c].tgt) continue;
        std::size_t x = trace_word(c, l.gens);
        std::size_t y = trace_word(c, r.gens);
        if (x != y) {
          pending.push_back({x, y});
          drain();
          changed = true;
        }
      }
    }
    if (cls.size() != before_classes) changed = true;
    if (live_count() > p.closure_bound)
      throw CatError(ErrorKind::ClosureOverflow,
                     "saturation exceeded closure bound " +
                         std::to_string(p.closure_bound));
  }

  // Canonical naming by BFS from the identities, shortest word first.
  std::vector<Id> gen_order;
  for (const auto& [gid, g] : gen) gen_order.push_back(gid);
  std::map<std::size_t, std::pair<Id, std::vector<Id>>> name;  // class -> (name, diagram word)
  std::deque<std::size_t> queue;
  SaturationResult out;
  std::vector<std::size_t> order;
  for (const auto& o : p.objects) {
    std::size_t c = find(ident[o]);
    if (!name.count(c)) {
      name[c] = {identity_name(o), {}};
      queue.push_back(c);
      order.push_back(c);
    }
    out.identity_class[o] = name[c].first;
  }
  while (!queue.empty()) {
    std::size_t c = queue.front();
    queue.pop_front();
    for (const auto& gid : gen_order) {
      auto it = cls[c].post.find(gid);
      if (it == cls[c].post.end()) continue;
      std::size_t n = find(it->second);
      if (name.count(n)) continue;
      std::vector<Id> w = name[c].second;
      w.push_back(gid);
      // applicative name: last applied first
      std::string nm;
      for (auto rit = w.rbegin(); rit != w.rend(); ++rit) {
        if (!nm.empty()) nm += ".";
        nm += *rit;
      }
      name[n] = {nm, w};
      queue.push_back(n);
      order.push_back(n);
    }
  }

  FinCategory& c = out.cat;
  c.objects = p.objects;
  for (std::size_t i : order) {
    c.morphisms.push_back({name[i].first, cls[i].src, cls[i].tgt});
    out.rep_word[name[i].first] = name[i].second;
  }
  for (const auto& o : p.objects) c.identity[o] = out.identity_class[o];
  c.reindex();
  for (const auto& [gid, g] : gen) {
    std::size_t cl = find(cls[find(ident[g.src])].post.at(gid));
    out.generator_class[gid] = name.at(cl).first;
  }
  // composition: g2∘g1 traced along g2's representative word from g1's class
  for (std::size_t i : order)
    for (std::size_t j : order) {
      if (cls[i].tgt != cls[j].src) continue;  // j∘i
      std::size_t r = trace_word(i, name[j].second);
      c.compose_table[{name[j].first, name[i].first}] = name.at(find(r)).first;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Quotient of a category by identifying objects and (then-parallel)
// morphisms; used for coequalizers in Cat.  Realized through
// saturate_presentation so there is exactly one congruence engine.

struct QuotientResult {
  SaturationResult sat;
  std::map<Id, Id> object_map;    // base object -> quotient object
  std::map<Id, Id> morphism_map;  // base morphism -> quotient morphism id
};

// Presentation skeleton for a quotient of a category: objects merged by
// union-find, non-identity morphisms as generators, the composition table as
// relations.  Callers may add further generators and relations before
// saturating (the classifier does).
struct QuotientBuilder {
  CatPresentation pres;
  std::map<Id, Id> object_map;
  std::map<Id, std::pair<bool, Morphism>> base_info;  // id -> (is_identity, m)

  Word word_of(const Id& base_morphism) const {
    const auto& [is_id, mm] = base_info.at(base_morphism);
    Id s = object_map.at(mm.src), t = object_map.at(mm.tgt);
    if (is_id) return {s, t, {}};
    return {s, t, {base_morphism}};
  }
};

inline QuotientBuilder make_quotient_builder(
    const FinCategory& base, const std::vector<IdPair>& object_pairs,
    std::size_t bound = 10000) {
  QuotientBuilder b;
  std::map<Id, Id> up;
  for (const auto& o : base.objects) up[o] = o;
  std::function<Id(Id)> find = [&](Id x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  };
  for (const auto& [x, y] : object_pairs) {
    Id rx = find(x), ry = find(y);
    if (rx == ry) continue;
    if (ry < rx) std::swap(rx, ry);
    up[ry] = rx;
  }
  std::set<Id> reps;
  for (const auto& o : base.objects) {
    b.object_map[o] = find(o);
    reps.insert(find(o));
  }
  b.pres.objects.assign(reps.begin(), reps.end());
  b.pres.closure_bound = bound;
  for (const auto& m : base.morphisms) {
    b.base_info[m.id] = {base.is_identity(m.id), m};
    if (!base.is_identity(m.id))
      b.pres.generators.push_back({m.id, find(m.src), find(m.tgt)});
  }
  for (const auto& [gf, h] : base.compose_table) {
    Word wf = b.word_of(gf.second), wg = b.word_of(gf.first),
         wh = b.word_of(h);
    Word lhs{wf.src, wg.tgt, {}};
    lhs.gens = wf.gens;
    lhs.gens.insert(lhs.gens.end(), wg.gens.begin(), wg.gens.end());
    b.pres.relations.push_back({lhs, wh});
  }
  return b;
}

inline QuotientResult quotient_category(
    const FinCategory& base, const std::vector<IdPair>& object_pairs,
    const std::vector<IdPair>& morphism_pairs, std::size_t bound = 10000) {
  QuotientBuilder b = make_quotient_builder(base, object_pairs, bound);
  for (const auto& [x, y] : morphism_pairs)
    b.pres.relations.push_back({b.word_of(x), b.word_of(y)});
  QuotientResult out;
  out.object_map = b.object_map;
  out.sat = saturate_presentation(b.pres);
  for (const auto& m : base.morphisms)
    out.morphism_map[m.id] = out.sat.trace(b.word_of(m.id));
  return out;
}

}  // namespace catlim
