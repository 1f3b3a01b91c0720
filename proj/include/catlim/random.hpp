#pragma once

// Seeded generators for small random instances, used by the randomized
// verification harness and the test corpora.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "catlim/fincat.hpp"
#include "catlim/presentation.hpp"
#include "catlim/two_cat.hpp"

namespace catlim {

// A random valid category via a random presentation, retrying on overflow.
inline FinCategory random_category(std::mt19937& rng, std::size_t max_objects,
                                   std::size_t max_morphisms) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::uniform_int_distribution<std::size_t> nobj(1, max_objects);
    std::size_t n = nobj(rng);
    CatPresentation p;
    for (std::size_t i = 0; i < n; ++i)
      p.objects.push_back("o" + std::to_string(i));
    std::uniform_int_distribution<std::size_t> ngen(0, n + 2);
    std::size_t g = ngen(rng);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t i = 0; i < g; ++i)
      p.generators.push_back(
          {"g" + std::to_string(i), p.objects[pick(rng)], p.objects[pick(rng)]});
    p.closure_bound = max_morphisms;
    // collapse endo-generators to idempotents half the time to stop free
    // growth
    for (const auto& gen : p.generators) {
      if (gen.src == gen.tgt && rng() % 2 == 0)
        p.relations.push_back({{gen.src, gen.tgt, {gen.id, gen.id}},
                               {gen.src, gen.tgt, {gen.id}}});
    }
    try {
      auto sat = saturate_presentation(p);
      if (sat.cat.morphisms.size() <= max_morphisms) return sat.cat;
    } catch (const CatError&) {
      continue;
    }
  }
  return terminal_category();
}

// A random Cat-valued 2-functor: random small values per object, then a
// functorial action sampled by seeded backtracking (first solution wins).
inline std::optional<CatValued2Functor> sample_diagram(
    std::mt19937& rng, TwoCatPtr base, std::size_t max_value_objects,
    std::size_t max_value_morphisms) {
  const Fin2Category& C = *base;
  for (int attempt = 0; attempt < 24; ++attempt) {
    CatValued2Functor F;
    F.source = base;
    for (const auto& o : C.objects)
      F.on_objects[o] =
          make_cat(random_category(rng, max_value_objects, max_value_morphisms));
    std::set<Id> identities;
    for (const auto& [o, i] : C.id1) {
      F.on_one_cells[i] = identity_functor(F.at(o));
      identities.insert(i);
    }
    std::vector<Id> cells;
    for (const auto& u : C.one_cells())
      if (!identities.count(u)) cells.push_back(u);
    std::map<Id, std::vector<Functor>> cand;
    bool feasible = true;
    for (const auto& u : cells) {
      auto [a, b] = C.cell1_ends(u);
      cand[u] = enumerate_functors(F.at(a), F.at(b));
      if (cand[u].empty()) feasible = false;
      std::shuffle(cand[u].begin(), cand[u].end(), rng);
    }
    if (!feasible) continue;
    bool done = false;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (done) return;
      while (i < cells.size() && F.on_one_cells.count(cells[i])) ++i;
      if (i == cells.size()) {
        done = true;
        return;
      }
      const Id& u = cells[i];
      for (const auto& f : cand[u]) {
        F.on_one_cells[u] = f;
        std::vector<Id> forced;
        bool ok = true;
        bool changed = true;
        while (changed && ok) {
          changed = false;
          for (const auto& [vu, w] : C.compose1) {
            auto iv = F.on_one_cells.find(vu.first);
            auto iu = F.on_one_cells.find(vu.second);
            if (iv == F.on_one_cells.end() || iu == F.on_one_cells.end())
              continue;
            Functor want = compose_functors(iv->second, iu->second);
            auto iw = F.on_one_cells.find(w);
            if (iw == F.on_one_cells.end()) {
              F.on_one_cells[w] = want;
              forced.push_back(w);
              changed = true;
            } else if (!(iw->second == want)) {
              ok = false;
              break;
            }
          }
        }
        if (ok) rec(i + 1);
        if (done) return;
        for (const auto& fid : forced) F.on_one_cells.erase(fid);
        F.on_one_cells.erase(u);
      }
    };
    rec(0);
    if (!done) continue;
    bool ok2 = true;
    for (const auto& u : C.one_cells())
      F.on_two_cells[C.id2(u)] = identity_nat(F.f1(u));
    for (const auto& m : C.two_cells()) {
      if (F.on_two_cells.count(m)) continue;
      auto ab = C.cell2_hom(m);
      const auto& mm = C.hom_at(ab.first, ab.second).mor(m);
      auto nats = enumerate_nats(F.f1(mm.src), F.f1(mm.tgt));
      if (nats.empty()) {
        ok2 = false;
        break;
      }
      F.on_two_cells[m] = nats[rng() % nats.size()];
    }
    if (!ok2) continue;
    if (validate_diagram(F).ok()) return F;
  }
  return std::nullopt;
}

}  // namespace catlim
