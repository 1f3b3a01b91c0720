#pragma once

// Shared test helpers: small-category builders and independent oracles.
// The oracles deliberately avoid the library's search/propagation paths:
// they filter full cartesian products of raw assignments, or close words
// by rewriting, so they can confirm the clever implementations.

#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "catlim/fincat.hpp"
#include "catlim/presentation.hpp"
#include "catlim/random.hpp"
#include "catlim/two_cat.hpp"

namespace catlim::testutil {

struct ComposeSpec {
  Id g, f, gf;
};

// Builds a category from non-identity data; identities and identity
// compositions are filled in.
inline FinCategory make_category(const std::vector<Id>& objects,
                                 const std::vector<Morphism>& mors,
                                 const std::vector<ComposeSpec>& comps = {}) {
  FinCategory c;
  c.objects = objects;
  for (const auto& o : objects) {
    Id i = identity_name(o);
    c.morphisms.push_back({i, o, o});
    c.identity[o] = i;
  }
  for (const auto& m : mors) c.morphisms.push_back(m);
  c.reindex();
  for (const auto& m : c.morphisms) {
    c.compose_table[{c.identity[m.tgt], m.id}] = m.id;
    c.compose_table[{m.id, c.identity[m.src]}] = m.id;
  }
  for (const auto& s : comps) c.compose_table[{s.g, s.f}] = s.gf;
  c.reindex();
  return c;
}

// ---------------------------------------------------------------------------
// Brute-force functor/nat oracles: full product, full filter.

inline std::vector<Functor> brute_force_functors(CatPtr a, CatPtr b) {
  std::vector<Functor> out;
  const FinCategory& A = *a;
  const FinCategory& B = *b;
  std::vector<std::size_t> ob_choice(A.objects.size(), 0);
  auto next = [](std::vector<std::size_t>& v, std::size_t base) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (++v[i] < base) return true;
      v[i] = 0;
    }
    return v.empty() ? false : false;
  };
  if (B.objects.empty() && !A.objects.empty()) return out;
  do {
    std::map<Id, Id> om;
    for (std::size_t i = 0; i < A.objects.size(); ++i)
      om[A.objects[i]] = B.objects[ob_choice[i]];
    // all morphism assignments
    std::vector<std::vector<Id>> choices;
    bool feasible = true;
    for (const auto& m : A.morphisms) {
      auto h = B.hom(om[m.src], om[m.tgt]);
      if (h.empty()) { feasible = false; break; }
      choices.push_back(h);
    }
    if (feasible) {
      std::vector<std::size_t> mi(choices.size(), 0);
      bool more = true;
      while (more) {
        Functor f;
        f.source = a;
        f.target = b;
        f.on_objects = om;
        for (std::size_t i = 0; i < A.morphisms.size(); ++i)
          f.on_morphisms[A.morphisms[i].id] = choices[i][mi[i]];
        if (validate_functor(f).ok()) out.push_back(f);
        more = false;
        for (std::size_t i = 0; i < mi.size(); ++i) {
          if (++mi[i] < choices[i].size()) { more = true; break; }
          mi[i] = 0;
        }
      }
    }
  } while (next(ob_choice, B.objects.size()));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<NatTransformation> brute_force_nats(const Functor& f,
                                                       const Functor& g) {
  std::vector<NatTransformation> out;
  const FinCategory& A = *f.source;
  const FinCategory& B = *f.target;
  std::vector<std::vector<Id>> choices;
  for (const auto& o : A.objects) {
    auto h = B.hom(f.ob(o), g.ob(o));
    if (h.empty()) return out;
    choices.push_back(h);
  }
  std::vector<std::size_t> ci(choices.size(), 0);
  bool more = !choices.empty() || true;
  while (more) {
    NatTransformation n;
    n.source = f;
    n.target = g;
    for (std::size_t i = 0; i < A.objects.size(); ++i)
      n.components[A.objects[i]] = choices[i][ci[i]];
    if (validate_nat(n).ok()) out.push_back(n);
    more = false;
    for (std::size_t i = 0; i < ci.size(); ++i) {
      if (++ci[i] < choices[i].size()) { more = true; break; }
      ci[i] = 0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Word-closure oracle: equivalence classes of composable words of bounded
// length under two-sided rewriting with the relations.

struct WordClosure {
  // class index for each word (words serialized src + "|" + joined gens)
  std::map<std::string, std::size_t> cls;
  std::map<std::pair<Id, Id>, std::set<std::size_t>> hom_classes;

  static std::string key(const Id& src, const std::vector<Id>& gens) {
    std::string k = src + "|";
    for (const auto& g : gens) k += g + ".";
    return k;
  }
  std::size_t class_of(const Id& src, const std::vector<Id>& gens) const {
    return cls.at(key(src, gens));
  }
};

inline WordClosure word_closure_oracle(const CatPresentation& p,
                                       std::size_t max_len) {
  std::map<Id, Morphism> gen;
  for (const auto& g : p.generators) gen[g.id] = g;
  // enumerate words
  struct W {
    Id src, tgt;
    std::vector<Id> gens;
  };
  std::vector<W> words;
  std::map<std::string, std::size_t> index;
  auto add_word = [&](const W& w) {
    std::string k = WordClosure::key(w.src, w.gens);
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    index[k] = words.size();
    words.push_back(w);
    return words.size() - 1;
  };
  for (const auto& o : p.objects) add_word({o, o, {}});
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t before = words.size();
    for (std::size_t i = 0; i < before; ++i) {
      if (words[i].gens.size() != len - 1) continue;
      W w = words[i];
      for (const auto& [gid, g] : gen) {
        if (g.src != w.tgt) continue;
        W e = w;
        e.gens.push_back(gid);
        e.tgt = g.tgt;
        add_word(e);
      }
    }
  }
  // union-find
  std::vector<std::size_t> up(words.size());
  for (std::size_t i = 0; i < up.size(); ++i) up[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  };
  auto join = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) up[b] = a;
  };
  // rewriting: replace any occurrence of one side by the other
  auto object_at = [&](const W& w, std::size_t pos) {
    // object reached after pos generators
    Id at = w.src;
    for (std::size_t i = 0; i < pos; ++i) at = gen.at(w.gens[i]).tgt;
    return at;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < words.size(); ++i) {
      const W w = words[i];
      for (const auto& [l, r] : p.relations) {
        for (int side = 0; side < 2; ++side) {
          const auto& from = side == 0 ? l : r;
          const auto& to = side == 0 ? r : l;
          for (std::size_t pos = 0; pos + from.gens.size() <= w.gens.size() + 1;
               ++pos) {
            if (pos + from.gens.size() > w.gens.size()) break;
            if (!std::equal(from.gens.begin(), from.gens.end(),
                            w.gens.begin() + pos))
              continue;
            if (object_at(w, pos) != from.src) continue;
            W rep = w;
            rep.gens.erase(rep.gens.begin() + pos,
                           rep.gens.begin() + pos + from.gens.size());
            rep.gens.insert(rep.gens.begin() + pos, to.gens.begin(),
                            to.gens.end());
            if (rep.gens.size() > max_len) continue;
            std::string k = WordClosure::key(rep.src, rep.gens);
            auto it = index.find(k);
            std::size_t j;
            if (it == index.end())
              j = add_word(rep), up.push_back(up.size());
            else
              j = it->second;
            if (find(i) != find(j)) {
              join(i, j);
              changed = true;
            }
          }
        }
      }
    }
  }
  WordClosure out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    out.cls[WordClosure::key(words[i].src, words[i].gens)] = find(i);
    out.hom_classes[{words[i].src, words[i].tgt}].insert(find(i));
  }
  return out;
}

using catlim::random_category;
using catlim::sample_diagram;

}  // namespace catlim::testutil
