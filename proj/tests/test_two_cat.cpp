#include <catch2/catch_amalgamated.hpp>

#include "catlim/two_cat.hpp"
#include "catlim/two_cat_ops.hpp"
#include "test_util.hpp"

using namespace catlim;
using namespace catlim::testutil;

namespace {

TwoCatPtr arrow_two_cat() {
  return make_two_cat(locally_discrete(chain_category(1)));
}

// diagram on the arrow 2-category picking u : A -> B
CatValued2Functor arrow_diagram(TwoCatPtr base, CatPtr A, CatPtr B,
                                const Functor& u) {
  CatValued2Functor F;
  F.source = base;
  F.on_objects["0"] = A;
  F.on_objects["1"] = B;
  F.on_one_cells["1_0"] = identity_functor(A);
  F.on_one_cells["1_1"] = identity_functor(B);
  F.on_one_cells["r_0_1"] = u;
  F.on_two_cells["i2_1_0"] = identity_nat(identity_functor(A));
  F.on_two_cells["i2_1_1"] = identity_nat(identity_functor(B));
  F.on_two_cells["i2_r_0_1"] = identity_nat(u);
  return F;
}

// the free-living 2-cell: objects a, b; f, g : a -> b; al : f => g
Fin2Category free_two_cell() {
  Fin2Category c;
  c.objects = {"a", "b"};
  c.hom[{"a", "a"}] = make_category({"1_a"}, {});
  c.hom[{"b", "b"}] = make_category({"1_b"}, {});
  c.hom[{"b", "a"}] = make_category({}, {});
  c.hom[{"a", "b"}] = make_category({"f", "g"}, {{"al", "f", "g"}});
  c.id1 = {{"a", "1_a"}, {"b", "1_b"}};
  c.compose1[{"1_a", "1_a"}] = "1_a";
  c.compose1[{"1_b", "1_b"}] = "1_b";
  c.compose1[{"f", "1_a"}] = "f";
  c.compose1[{"g", "1_a"}] = "g";
  c.compose1[{"1_b", "f"}] = "f";
  c.compose1[{"1_b", "g"}] = "g";
  c.reindex();
  fill_forced_hcompose(c);
  c.reindex();
  return c;
}

}  // namespace

TEST_CASE("locally discrete 2-categories validate, including interchange") {
  auto c = locally_discrete(chain_category(2));
  REQUIRE(validate_two_category(c).ok());
  REQUIRE(validate_two_category(terminal_two_category()).ok());
  REQUIRE(validate_two_category(free_two_cell()).ok());
  REQUIRE(validate_two_category(co_dual(free_two_cell())).ok());
}

TEST_CASE("validate_two_category catches a broken interchange table") {
  // two horizontally composable nonidentity 2-cells: a 3-object shape
  Fin2Category c;
  c.objects = {"a", "b", "c"};
  c.hom[{"a", "a"}] = make_category({"1_a"}, {});
  c.hom[{"b", "b"}] = make_category({"1_b"}, {});
  c.hom[{"c", "c"}] = make_category({"1_c"}, {});
  c.hom[{"a", "b"}] = make_category({"f", "g"}, {{"al", "f", "g"}});
  c.hom[{"b", "c"}] = make_category({"h", "k"}, {{"be", "h", "k"}});
  c.hom[{"a", "c"}] = make_category(
      {"hf", "kg", "hg", "kf"},
      {{"ba1", "hf", "kg"}, {"w1", "hf", "hg"}, {"w2", "hg", "kg"},
       {"w3", "hf", "kf"}, {"w4", "kf", "kg"}},
      {{"w2", "w1", "ba1"}, {"w4", "w3", "ba1"}});
  c.hom[{"b", "a"}] = make_category({}, {});
  c.hom[{"c", "a"}] = make_category({}, {});
  c.hom[{"c", "b"}] = make_category({}, {});
  c.id1 = {{"a", "1_a"}, {"b", "1_b"}, {"c", "1_c"}};
  for (const auto& o : c.objects) c.compose1[{c.id1[o], c.id1[o]}] = c.id1[o];
  for (const Id x : {"f", "g"}) {
    c.compose1[{x, "1_a"}] = x;
    c.compose1[{"1_b", x}] = x;
  }
  for (const Id x : {"h", "k"}) {
    c.compose1[{x, "1_b"}] = x;
    c.compose1[{"1_c", x}] = x;
  }
  for (const Id x : {"hf", "kg", "hg", "kf"}) {
    c.compose1[{x, "1_a"}] = x;
    c.compose1[{"1_c", x}] = x;
  }
  c.compose1[{"h", "f"}] = "hf";
  c.compose1[{"h", "g"}] = "hg";
  c.compose1[{"k", "f"}] = "kf";
  c.compose1[{"k", "g"}] = "kg";
  c.reindex();
  fill_forced_hcompose(c);
  c.hcompose2[{"be", "1_f"}] = "w3";
  c.hcompose2[{"be", "1_g"}] = "w2";
  c.hcompose2[{"1_h", "al"}] = "w1";
  c.hcompose2[{"1_k", "al"}] = "w4";
  c.hcompose2[{"be", "al"}] = "ba1";
  c.reindex();
  REQUIRE(validate_two_category(c).ok());
  // break interchange: retarget be*al into a fresh parallel 2-cell
  Fin2Category broken = c;
  auto& hb = broken.hom[{"a", "c"}];
  hb.morphisms.push_back({"ba2", "hf", "kg"});
  hb.reindex();
  hb.compose_table[{"1_kg", "ba2"}] = "ba2";
  hb.compose_table[{"ba2", "1_hf"}] = "ba2";
  broken.reindex();
  fill_forced_hcompose(broken);
  broken.hcompose2[{"be", "al"}] = "ba2";
  broken.reindex();
  auto rep = validate_two_category(broken);
  REQUIRE_FALSE(rep.ok());
  bool inter = false;
  for (const auto& v : rep.violations)
    if (v.find("interchange") != std::string::npos) inter = true;
  REQUIRE(inter);
}

TEST_CASE("lax transformations between constant terminal diagrams form the terminal category") {
  auto base = arrow_two_cat();
  auto d1 = make_diag(delta_one(base));
  auto tc = enumerate_lax_transformations(d1, d1, false);
  REQUIRE(tc.cat.objects.size() == 1);
  REQUIRE(tc.cat.morphisms.size() == 1);
  REQUIRE(validate_category(tc.cat).ok());
}

TEST_CASE("over the terminal 2-category, transformation categories are the functor category") {
  auto base = make_two_cat(terminal_two_category());
  auto X = make_cat(chain_category(1));
  auto Y = make_cat(chain_category(2));
  CatValued2Functor fx = constant_diagram(base, X);
  CatValued2Functor fy = constant_diagram(base, Y);
  auto lax = enumerate_lax_transformations(make_diag(fx), make_diag(fy), false);
  auto strict = enumerate_lax_transformations(make_diag(fx), make_diag(fy), true);
  auto fc = functor_category(X, Y);
  REQUIRE(lax.cat.objects.size() == fc.cat.objects.size());
  REQUIRE(lax.cat.morphisms.size() == fc.cat.morphisms.size());
  REQUIRE(strict.cat.objects.size() == fc.cat.objects.size());
  REQUIRE(find_isomorphism(make_cat(lax.cat), make_cat(fc.cat)).has_value());
}

TEST_CASE("lax cones over an arrow diagram are comma-category data, counted by brute force") {
  auto base = arrow_two_cat();
  auto A = make_cat(chain_category(1));
  auto B = make_cat(chain_category(2));
  auto us = enumerate_functors(A, B);
  const Functor& u = us[2 % us.size()];
  auto G = make_diag(arrow_diagram(base, A, B, u));
  auto d1 = make_diag(delta_one(base));
  auto tc = enumerate_lax_transformations(d1, G, false);
  REQUIRE(validate_category(tc.cat).ok());
  // objects are triples (a, b, B(u(a) -> b))
  std::size_t expect = 0;
  for (const auto& a : A->objects)
    for (const auto& b : B->objects) expect += B->hom(u.ob(a), b).size();
  REQUIRE(tc.cat.objects.size() == expect);
  for (const auto& t : tc.objs) REQUIRE(validate_lax(t).ok());
  // strict cones: pairs strictly matched by u — isomorphic to A
  auto sc = enumerate_lax_transformations(d1, G, true);
  REQUIRE(find_isomorphism(make_cat(sc.cat), A).has_value());
}

TEST_CASE("weighted limit with weight Δ1 over the terminal base is the value itself") {
  auto base = make_two_cat(terminal_two_category());
  auto X = make_cat(chain_category(2));
  auto w = make_diag(delta_one(base));
  auto f = make_diag(constant_diagram(base, X));
  auto lim = weighted_limit_in_cat(w, f);
  REQUIRE(find_isomorphism(make_cat(lim.cat), X).has_value());
  auto ev = weighted_limit_counit(lim, "*");
  REQUIRE(validate_functor(ev).ok());
}

TEST_CASE("lan_along_objects over the terminal 2-category reproduces the input") {
  auto C = make_two_cat(terminal_two_category());
  auto X0 = make_cat(chain_category(1));
  auto lan = lan_along_objects(C, {{"*", X0}});
  REQUIRE(validate_diagram(lan.lan).ok());
  REQUIRE(find_isomorphism(lan.lan.at("*"), X0).has_value());
  REQUIRE(validate_functor(lan.unit.at("*")).ok());
}

TEST_CASE("lan_along_objects over the arrow: value at 1 has the two expected summands") {
  auto C = arrow_two_cat();
  auto pt = make_cat(terminal_category());
  auto lan = lan_along_objects(C, {{"0", pt}, {"1", pt}});
  REQUIRE(validate_diagram(lan.lan).ok());
  REQUIRE(lan.lan.at("1")->objects.size() == 2);
  REQUIRE(lan.lan.at("0")->objects.size() == 1);
}

TEST_CASE("multiplication of T = E*Lan_E acts by composition on the first coordinate") {
  auto C = arrow_two_cat();
  auto A = make_cat(chain_category(1));
  std::map<Id, CatPtr> X{{"0", A}, {"1", A}};
  auto TX = lan_along_objects(C, X);
  std::map<Id, CatPtr> TXvals{{"0", TX.lan.at("0")}, {"1", TX.lan.at("1")}};
  auto TTX = lan_along_objects(C, TXvals);
  // mu_c : TTX(c) -> TX(c), (f: d1->c, (g: d->d1, x)) ↦ (fg, x)
  for (const auto& c : C->objects) {
    Functor mu;
    mu.source = TTX.lan.at(c);
    mu.target = TX.lan.at(c);
    for (const auto& o : TTX.lan.at(c)->objects) {
      auto colon = o.find(':');
      Id rest = o.substr(colon + 1);
      auto bar = rest.find('|');
      Id f = rest.substr(1, bar - 1);
      Id inner = rest.substr(bar + 1, rest.size() - bar - 2);  // d:(g|x)
      auto colon2 = inner.find(':');
      Id d = inner.substr(0, colon2);
      Id rest2 = inner.substr(colon2 + 1);
      auto bar2 = rest2.find('|');
      Id g = rest2.substr(1, bar2 - 1);
      Id x = rest2.substr(bar2 + 1, rest2.size() - bar2 - 2);
      mu.on_objects[o] = tag_id(d, pair_id(C->compose_cells(f, g), x));
    }
    for (const auto& m : TTX.lan.at(c)->morphisms) {
      auto colon = m.id.find(':');
      Id rest = m.id.substr(colon + 1);
      auto bar = rest.find('|');
      Id ga = rest.substr(1, bar - 1);
      Id inner = rest.substr(bar + 1, rest.size() - bar - 2);
      auto colon2 = inner.find(':');
      Id d = inner.substr(0, colon2);
      Id rest2 = inner.substr(colon2 + 1);
      auto bar2 = rest2.find('|');
      Id gb = rest2.substr(1, bar2 - 1);
      Id xi = rest2.substr(bar2 + 1, rest2.size() - bar2 - 2);
      mu.on_morphisms[m.id] = tag_id(d, pair_id(C->hcompose(ga, gb), xi));
    }
    REQUIRE(validate_functor(mu).ok());
  }
}

TEST_CASE("Lan_E is left 2-adjoint to precomposition with E (transpose bijection)") {
  auto C = arrow_two_cat();
  auto A0 = make_cat(chain_category(1));
  auto A1 = make_cat(terminal_category());
  std::map<Id, CatPtr> X{{"0", A0}, {"1", A1}};
  auto lanX = lan_along_objects(C, X);
  auto B = make_cat(chain_category(1));
  auto us = enumerate_functors(B, B);
  CatValued2Functor Y = arrow_diagram(C, B, B, us.front());
  auto YD = make_diag(Y);
  auto lanD = make_diag(lanX.lan);
  auto strict = enumerate_lax_transformations(lanD, YD, true);
  auto fams0 = enumerate_functors(A0, B);
  auto fams1 = enumerate_functors(A1, B);
  REQUIRE(strict.cat.objects.size() == fams0.size() * fams1.size());
  // explicit transposes: beta ↦ beta ∘ unit, back by (f, x) ↦ Y(f)(fam_d(x))
  for (const auto& t : strict.objs) {
    std::map<Id, Functor> fam;
    for (const auto& d : C->objects)
      fam[d] = compose_functors(t.at(d), lanX.unit.at(d));
    LaxTransformation back;
    back.from = lanD;
    back.to = YD;
    for (const auto& c : C->objects) {
      Functor g;
      g.source = lanX.lan.at(c);
      g.target = Y.at(c);
      for (const auto& d : C->objects) {
        const FinCategory& homdc = C->hom_at(d, c);
        for (const auto& f : homdc.objects)
          for (const auto& x : X.at(d)->objects)
            g.on_objects[tag_id(d, pair_id(f, x))] =
                Y.f1(f).ob(fam.at(d).ob(x));
        for (const auto& ga : homdc.morphisms)
          for (const auto& xi : X.at(d)->morphisms) {
            const Morphism& xim = X.at(d)->mor(xi.id);
            Id first = Y.f1(ga.src).mo(fam.at(d).mo(xi.id));
            Id second = Y.f2(ga.id).at(fam.at(d).ob(xim.tgt));
            g.on_morphisms[tag_id(d, pair_id(ga.id, xi.id))] =
                Y.at(c)->compose(second, first);
          }
      }
      back.comp1[c] = std::move(g);
    }
    for (const auto& u : C->one_cells()) {
      auto [d, cc] = C->cell1_ends(u);
      back.comp2[u] =
          identity_nat(compose_functors(Y.f1(u), back.comp1.at(d)));
    }
    REQUIRE(ser(back) == ser(t));
  }
}

TEST_CASE("presheaf data and T-algebra laws determine each other") {
  auto C = arrow_two_cat();
  auto A0 = make_cat(chain_category(1));
  auto A1 = make_cat(chain_category(1));
  auto us = enumerate_functors(A0, A1);
  CatValued2Functor A = arrow_diagram(C, A0, A1, us.back());
  REQUIRE(validate_diagram(A).ok());
  std::map<Id, CatPtr> X{{"0", A.at("0")}, {"1", A.at("1")}};
  auto TA = lan_along_objects(C, X);
  std::map<Id, Functor> a;
  for (const auto& c : C->objects) {
    Functor ac;
    ac.source = TA.lan.at(c);
    ac.target = A.at(c);
    for (const auto& d : C->objects) {
      const FinCategory& homdc = C->hom_at(d, c);
      for (const auto& f : homdc.objects)
        for (const auto& x : X.at(d)->objects)
          ac.on_objects[tag_id(d, pair_id(f, x))] = A.f1(f).ob(x);
      for (const auto& ga : homdc.morphisms)
        for (const auto& xi : X.at(d)->morphisms) {
          const Morphism& xim = X.at(d)->mor(xi.id);
          Id first = A.f1(ga.src).mo(xi.id);
          Id second = A.f2(ga.id).at(xim.tgt);
          ac.on_morphisms[tag_id(d, pair_id(ga.id, xi.id))] =
              A.at(c)->compose(second, first);
        }
    }
    REQUIRE(validate_functor(ac).ok());
    a[c] = std::move(ac);
  }
  for (const auto& c : C->objects)
    REQUIRE(compose_functors(a.at(c), TA.unit.at(c)) ==
            identity_functor(A.at(c)));
  // associativity of the action on objects of T²A
  std::map<Id, CatPtr> TXv{{"0", TA.lan.at("0")}, {"1", TA.lan.at("1")}};
  auto TTA = lan_along_objects(C, TXv);
  for (const auto& c : C->objects) {
    for (const auto& o : TTA.lan.at(c)->objects) {
      auto colon = o.find(':');
      Id rest = o.substr(colon + 1);
      auto bar = rest.find('|');
      Id f = rest.substr(1, bar - 1);
      Id inner = rest.substr(bar + 1, rest.size() - bar - 2);
      auto colon2 = inner.find(':');
      Id rest2 = inner.substr(colon2 + 1);
      auto bar2 = rest2.find('|');
      Id g = rest2.substr(1, bar2 - 1);
      Id x = rest2.substr(bar2 + 1, rest2.size() - bar2 - 2);
      Id via_mu = A.f1(C->compose_cells(f, g)).ob(x);
      Id via_Ta = A.f1(f).ob(A.f1(g).ob(x));
      REQUIRE(via_mu == via_Ta);
    }
  }
}

TEST_CASE("pointwise_lan along the identity inclusion reproduces the diagram") {
  auto C = arrow_two_cat();
  auto A = make_cat(chain_category(1));
  auto us = enumerate_functors(A, A);
  CatValued2Functor f = arrow_diagram(C, A, A, us.front());
  TwoFunctor j;
  j.source = C;
  j.target = C;
  for (const auto& o : C->objects) j.on_objects[o] = o;
  for (const auto& u : C->one_cells()) j.on_one_cells[u] = u;
  for (const auto& m : C->two_cells()) j.on_two_cells[m] = m;
  REQUIRE(validate_two_functor(j).ok());
  auto L = pointwise_lan(j, f);
  REQUIRE(validate_diagram(L.lan).ok());
  for (const auto& o : C->objects) {
    REQUIRE(find_isomorphism(L.lan.at(o), f.at(o)).has_value());
    const Functor& pi = L.unit.at(o);
    REQUIRE(validate_functor(pi).ok());
    REQUIRE(is_surjective_on_objects(pi));
    REQUIRE(is_full_embedding(pi));
  }
}

TEST_CASE("pointwise_lan from the empty 2-category is constant at the empty category") {
  auto C = arrow_two_cat();
  Fin2Category empty;
  empty.reindex();
  auto T = make_two_cat(empty);
  TwoFunctor j;
  j.source = T;
  j.target = C;
  CatValued2Functor f;
  f.source = T;
  auto L = pointwise_lan(j, f);
  REQUIRE(validate_diagram(L.lan).ok());
  for (const auto& o : C->objects) REQUIRE(L.lan.at(o)->objects.empty());
}

TEST_CASE("pointwise_lan along the source inclusion of the arrow") {
  auto C = arrow_two_cat();
  auto T = make_two_cat(terminal_two_category());
  TwoFunctor j;
  j.source = T;
  j.target = C;
  j.on_objects["*"] = "0";
  j.on_one_cells["1_*"] = "1_0";
  j.on_two_cells["i2_1_*"] = "i2_1_0";
  REQUIRE(validate_two_functor(j).ok());
  CatValued2Functor f = constant_diagram(T, make_cat(terminal_category()));
  auto L = pointwise_lan(j, f);
  REQUIRE(validate_diagram(L.lan).ok());
  REQUIRE(L.lan.at("0")->objects.size() == 1);
  REQUIRE(L.lan.at("1")->objects.size() == 1);
  // universal property: the transpose satisfies (l · j) ∘ pi = tau
  auto B = make_cat(chain_category(1));
  auto vs = enumerate_functors(make_cat(terminal_category()), B);
  for (const auto& v : vs) {
    CatValued2Functor M = arrow_diagram(C, B, B, identity_functor(B));
    std::map<Id, Functor> tau{{"*", v}};
    auto l = lan_transpose(L, j, f, M, tau);
    REQUIRE(compose_functors(l.at("0"), L.unit.at("*")) == tau.at("*"));
  }
}

TEST_CASE("co_dual diagrams validate") {
  auto c = make_two_cat(free_two_cell());
  auto cd = make_two_cat(co_dual(*c));
  REQUIRE(validate_two_category(*cd).ok());
  auto X = make_cat(chain_category(1));
  CatValued2Functor F;
  F.source = c;
  F.on_objects["a"] = X;
  F.on_objects["b"] = X;
  auto endos = enumerate_functors(X, X);
  F.on_one_cells["1_a"] = identity_functor(X);
  F.on_one_cells["1_b"] = identity_functor(X);
  F.on_one_cells["f"] = endos.front();
  F.on_one_cells["g"] = endos.front();
  F.on_two_cells["1_1_a"] = identity_nat(identity_functor(X));
  F.on_two_cells["1_1_b"] = identity_nat(identity_functor(X));
  F.on_two_cells["1_f"] = identity_nat(endos.front());
  F.on_two_cells["1_g"] = identity_nat(endos.front());
  F.on_two_cells["al"] = identity_nat(endos.front());
  REQUIRE(validate_diagram(F).ok());
  auto Fd = co_diagram(F, cd);
  REQUIRE(validate_diagram(Fd).ok());
}

TEST_CASE("pointwise_lan satisfies the universal property by enumeration") {
  auto C = arrow_two_cat();
  auto T = make_two_cat(terminal_two_category());
  TwoFunctor j;
  j.source = T;
  j.target = C;
  j.on_objects["*"] = "0";
  j.on_one_cells["1_*"] = "1_0";
  j.on_two_cells["i2_1_*"] = "i2_1_0";
  CatValued2Functor f = constant_diagram(T, make_cat(chain_category(1)));
  auto L = pointwise_lan(j, f);
  auto B = make_cat(chain_category(1));
  auto us = enumerate_functors(B, B);
  CatValued2Functor M = arrow_diagram(C, B, B, us[1]);
  REQUIRE(verify_lan_universal(L, j, f, M));
}
