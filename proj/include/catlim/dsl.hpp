#pragma once

// Text DSL for workspaces of categories, 2-categories, diagrams, weights and
// dotted F-categories, plus a deterministic emitter (parse ∘ emit ∘ parse is
// the identity on workspaces).

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "catlim/core.hpp"
#include "catlim/dotted.hpp"
#include "catlim/enhanced.hpp"
#include "catlim/fincat.hpp"
#include "catlim/marked.hpp"
#include "catlim/presentation.hpp"
#include "catlim/two_cat.hpp"

namespace catlim {

struct Span {
  std::size_t line = 1, col = 1;
  std::string to_string() const {
    return std::to_string(line) + ":" + std::to_string(col);
  }
};

namespace dsl {

enum class Tok {
  Ident, LBrace, RBrace, Colon, Semi, Comma, Dot, Eq, Star,
  Arrow, DoubleArrow, MapsTo, End
};

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  Token next() {
    skip_ws();
    Span sp{line_, col_};
    if (pos_ >= src_.size()) return {Tok::End, "", sp};
    char c = src_[pos_];
    auto two = src_.substr(pos_, 2);
    auto three = src_.substr(pos_, 3);
    if (three == "|->") return take(Tok::MapsTo, 3, sp);
    if (two == "->") return take(Tok::Arrow, 2, sp);
    if (two == "=>") return take(Tok::DoubleArrow, 2, sp);
    switch (c) {
      case '{': return take(Tok::LBrace, 1, sp);
      case '}': return take(Tok::RBrace, 1, sp);
      case ':': return take(Tok::Colon, 1, sp);
      case ';': return take(Tok::Semi, 1, sp);
      case ',': return take(Tok::Comma, 1, sp);
      case '.': return take(Tok::Dot, 1, sp);
      case '=': return take(Tok::Eq, 1, sp);
      case '*': return take(Tok::Star, 1, sp);
      default: break;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        ++pos_;
        ++col_;
      }
      return {Tok::Ident, src_.substr(start, pos_ - start), sp};
    }
    throw CatError(ErrorKind::Syntax, "unexpected character '" +
                                          std::string(1, c) + "' at " +
                                          sp.to_string());
  }

 private:
  Token take(Tok k, std::size_t n, Span sp) {
    Token t{k, src_.substr(pos_, n), sp};
    pos_ += n;
    col_ += n;
    return t;
  }
  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
        continue;
      }
      if (c == '\n') {
        ++pos_;
        ++line_;
        col_ = 1;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        ++col_;
        continue;
      }
      break;
    }
  }
  const std::string& src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

}  // namespace dsl

// ---------------------------------------------------------------------------
// Workspace

struct Workspace {
  std::map<Id, FinCategory> categories;
  std::map<Id, CatPresentation> presentation_sources;
  std::map<Id, SaturationResult> presentations;
  std::map<Id, TwoCatPtr> two_categories;
  std::map<Id, CatValued2Functor> diagrams;
  std::map<Id, Id> diagram_base;
  std::map<Id, MarkedTwoCategory> markeds;
  std::map<Id, Id> marked_base;
  std::map<Id, FCatPtr> f_categories;
  std::map<Id, Id> f_category_base;
  std::map<Id, FObject> f_objects;
  std::map<Id, Id> f_object_loose;
  std::map<Id, std::set<Id>> f_object_tights;
  std::map<Id, FWeight> f_weights;
  std::map<Id, std::pair<Id, Id>> f_weight_names;  // (base, lambda)
  std::map<Id, FDiagram> f_diagrams;
  std::map<Id, Id> f_diagram_base;
  std::map<Id, std::map<Id, Id>> f_diagram_value_names;
  std::map<Id, DottedFCategory> dotteds;
  std::map<Id, Id> dotted_base;

  std::map<Id, std::string> kind;  // name -> entity kind
  std::map<Id, Span> spans;
  std::vector<Id> order;  // declaration order

  bool has(const Id& name) const { return kind.count(name) > 0; }

  // Base resolution: a 2-category by name, viewing plain categories and
  // presentations as locally discrete.  Cached so every entity referencing
  // the same base shares one instance.
  TwoCatPtr resolve_two_cat(const Id& name) const {
    auto it = resolved_.find(name);
    if (it != resolved_.end()) return it->second;
    TwoCatPtr out;
    if (two_categories.count(name))
      out = two_categories.at(name);
    else if (categories.count(name))
      out = make_two_cat(locally_discrete(categories.at(name)));
    else if (presentations.count(name))
      out = make_two_cat(locally_discrete(presentations.at(name).cat));
    else
      throw CatError(ErrorKind::UnresolvedReference,
                     "no 2-category, category, or presentation named " + name);
    resolved_[name] = out;
    return out;
  }

 private:
  mutable std::map<Id, TwoCatPtr> resolved_;

 public:
};

namespace dsl {

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) { advance(); }

  Workspace parse() {
    Workspace ws;
    while (cur_.kind != Tok::End) {
      Span sp = cur_.span;
      std::string k = expect_ident("definition keyword");
      Id name = expect_ident("name");
      declare(ws, name, k, sp);
      if (k == "category") parse_category(ws, name);
      else if (k == "presentation") parse_presentation(ws, name);
      else if (k == "two_category") parse_two_category(ws, name);
      else if (k == "diagram") parse_diagram(ws, name);
      else if (k == "marked") parse_marked(ws, name);
      else if (k == "f_category") parse_f_category(ws, name);
      else if (k == "f_object") parse_f_object(ws, name);
      else if (k == "f_weight") parse_f_weight(ws, name);
      else if (k == "f_diagram") parse_f_diagram(ws, name);
      else if (k == "dotted") parse_dotted(ws, name);
      else
        throw CatError(ErrorKind::Syntax,
                       "unknown definition keyword '" + k + "' at " +
                           sp.to_string());
    }
    return ws;
  }

 private:
  dsl::Lexer lex_;
  Token cur_;

  void advance() { cur_ = lex_.next(); }
  bool accept(Tok k) {
    if (cur_.kind != k) return false;
    advance();
    return true;
  }
  void expect(Tok k, const char* what) {
    if (cur_.kind != k)
      throw CatError(ErrorKind::Syntax, std::string("expected ") + what +
                                            " at " + cur_.span.to_string() +
                                            ", got '" + cur_.text + "'");
    advance();
  }
  std::string expect_ident(const char* what) {
    if (cur_.kind != Tok::Ident)
      throw CatError(ErrorKind::Syntax, std::string("expected ") + what +
                                            " at " + cur_.span.to_string());
    std::string t = cur_.text;
    advance();
    return t;
  }
  bool peek_ident(const char* word) const {
    return cur_.kind == Tok::Ident && cur_.text == word;
  }

  void declare(Workspace& ws, const Id& name, const std::string& k, Span sp) {
    if (ws.has(name))
      throw CatError(ErrorKind::Validation,
                     "duplicate name " + name + " at " + sp.to_string() +
                         " (already declared at " +
                         ws.spans.at(name).to_string() + ")");
    ws.kind[name] = k;
    ws.spans[name] = sp;
    ws.order.push_back(name);
  }

  // one name; canonical saturated morphism names may contain dots
  Id dotted_ident() {
    Id name = expect_ident("identifier");
    while (accept(Tok::Dot)) name += "." + expect_ident("identifier");
    return name;
  }

  std::vector<Id> ident_list() {
    std::vector<Id> out;
    if (cur_.kind == Tok::Semi) return out;
    out.push_back(dotted_ident());
    while (accept(Tok::Comma)) out.push_back(dotted_ident());
    return out;
  }

  std::vector<Morphism> arrow_list(Tok arrow) {
    std::vector<Morphism> out;
    if (cur_.kind == Tok::Semi) return out;
    do {
      Id id = expect_ident("morphism id");
      expect(Tok::Colon, "':'");
      Id src = expect_ident("source");
      expect(arrow, arrow == Tok::Arrow ? "'->'" : "'=>'");
      Id tgt = expect_ident("target");
      out.push_back({id, src, tgt});
    } while (accept(Tok::Comma));
    return out;
  }

  // g.f = h entries
  std::vector<std::array<Id, 3>> compose_list() {
    std::vector<std::array<Id, 3>> out;
    if (cur_.kind == Tok::Semi) return out;
    do {
      Id g = expect_ident("morphism");
      expect(Tok::Dot, "'.'");
      Id f = expect_ident("morphism");
      expect(Tok::Eq, "'='");
      Id h = expect_ident("morphism");
      out.push_back({g, f, h});
    } while (accept(Tok::Comma));
    return out;
  }

  void parse_category(Workspace& ws, const Id& name) {
    expect(Tok::LBrace, "'{'");
    FinCategory c;
    std::vector<std::array<Id, 3>> comps;
    while (!accept(Tok::RBrace)) {
      std::string field = expect_ident("field");
      expect(Tok::Colon, "':'");
      if (field == "objects") {
        for (auto& o : ident_list()) c.objects.push_back(o);
      } else if (field == "morphisms") {
        for (auto& m : arrow_list(Tok::Arrow)) c.morphisms.push_back(m);
      } else if (field == "compose") {
        for (auto& e : compose_list()) comps.push_back(e);
      } else {
        throw CatError(ErrorKind::Syntax, "unknown category field " + field);
      }
      expect(Tok::Semi, "';'");
    }
    // implicit identities and identity compositions
    for (const auto& o : c.objects) {
      Id i = identity_name(o);
      c.morphisms.push_back({i, o, o});
      c.identity[o] = i;
    }
    c.reindex();
    for (const auto& m : c.morphisms) {
      if (!c.identity.count(m.src) || !c.identity.count(m.tgt))
        throw CatError(ErrorKind::Validation,
                       "morphism " + m.id + " of " + name +
                           " has an unknown endpoint");
      c.compose_table[{c.identity.at(m.tgt), m.id}] = m.id;
      c.compose_table[{m.id, c.identity.at(m.src)}] = m.id;
    }
    for (const auto& [g, f, h] : comps) c.compose_table[{g, f}] = h;
    c.reindex();
    auto rep = validate_category(c);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "category " + name + " at " +
                         ws.spans.at(name).to_string() + ": " +
                         rep.violations.front());
    ws.categories[name] = std::move(c);
  }

  void parse_presentation(Workspace& ws, const Id& name) {
    expect(Tok::LBrace, "'{'");
    CatPresentation p;
    std::map<Id, Morphism> gens;
    while (!accept(Tok::RBrace)) {
      std::string field = expect_ident("field");
      expect(Tok::Colon, "':'");
      if (field == "objects") {
        p.objects = ident_list();
      } else if (field == "generators") {
        p.generators = arrow_list(Tok::Arrow);
        for (const auto& g : p.generators) gens[g.id] = g;
      } else if (field == "relations") {
        do {
          auto lhs = word();
          expect(Tok::Eq, "'='");
          auto rhs = word();
          p.relations.push_back(resolve_relation(gens, lhs, rhs));
        } while (accept(Tok::Comma));
      } else if (field == "bound") {
        p.closure_bound = std::stoul(expect_ident("number"));
      } else {
        throw CatError(ErrorKind::Syntax,
                       "unknown presentation field " + field);
      }
      expect(Tok::Semi, "';'");
    }
    auto rep = validate_presentation(p);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "presentation " + name + ": " + rep.violations.front());
    ws.presentation_sources[name] = p;
    ws.presentations[name] = saturate_presentation(p);
  }

  // applicative word: "i.s" (i after s) or "1" for an identity
  std::vector<Id> word() {
    std::vector<Id> out;
    out.push_back(expect_ident("generator"));
    while (accept(Tok::Dot)) out.push_back(expect_ident("generator"));
    return out;
  }

  std::pair<Word, Word> resolve_relation(const std::map<Id, Morphism>& gens,
                                         std::vector<Id> lhs,
                                         std::vector<Id> rhs) {
    auto is_one = [](const std::vector<Id>& w) {
      return w.size() == 1 && w[0] == "1";
    };
    if (is_one(lhs) && is_one(rhs))
      throw CatError(ErrorKind::Syntax, "relation 1 = 1 is not anchored");
    auto mk = [&](const std::vector<Id>& applicative) -> Word {
      std::vector<Id> diagram(applicative.rbegin(), applicative.rend());
      auto it = gens.find(diagram.front());
      auto it2 = gens.find(diagram.back());
      if (it == gens.end() || it2 == gens.end())
        throw CatError(ErrorKind::UnresolvedReference,
                       "unknown generator in relation word");
      return {it->second.src, it2->second.tgt, diagram};
    };
    // an identity side is anchored at the other side's source
    if (is_one(lhs)) {
      Word r = mk(rhs);
      return {Word{r.src, r.src, {}}, r};
    }
    if (is_one(rhs)) {
      Word l = mk(lhs);
      return {l, Word{l.src, l.src, {}}};
    }
    return {mk(lhs), mk(rhs)};
  }

  void parse_two_category(Workspace& ws, const Id& name) {
    expect(Tok::LBrace, "'{'");
    Fin2Category c;
    std::vector<Morphism> ones, twos;
    std::vector<std::array<Id, 3>> comp1, vcomp, hcomp;
    while (!accept(Tok::RBrace)) {
      std::string field = expect_ident("field");
      expect(Tok::Colon, "':'");
      if (field == "objects") {
        c.objects = ident_list();
      } else if (field == "onecells") {
        ones = arrow_list(Tok::Arrow);
      } else if (field == "twocells") {
        twos = arrow_list(Tok::DoubleArrow);
      } else if (field == "compose1") {
        comp1 = compose_list();
      } else if (field == "vcompose") {
        vcomp = compose_list();
      } else if (field == "hcompose") {
        if (cur_.kind != Tok::Semi) do {
            Id b = expect_ident("2-cell");
            expect(Tok::Star, "'*'");
            Id a = expect_ident("2-cell");
            expect(Tok::Eq, "'='");
            Id r = expect_ident("2-cell");
            hcomp.push_back({b, a, r});
          } while (accept(Tok::Comma));
      } else {
        throw CatError(ErrorKind::Syntax,
                       "unknown two_category field " + field);
      }
      expect(Tok::Semi, "';'");
    }
    // assemble hom categories: objects = 1-cells (incl. implicit identities),
    // morphisms = 2-cells (incl. implicit identity 2-cells)
    std::map<Id, IdPair> ends;
    for (const auto& o : c.objects) {
      Id i = identity_name(o);
      ends[i] = {o, o};
      c.id1[o] = i;
    }
    for (const auto& u : ones) {
      if (ends.count(u.id))
        throw CatError(ErrorKind::Validation, "duplicate 1-cell " + u.id);
      ends[u.id] = {u.src, u.tgt};
    }
    std::map<IdPair, FinCategory> homs;
    for (const auto& a : c.objects)
      for (const auto& b : c.objects) homs[{a, b}] = FinCategory{};
    for (const auto& [u, ab] : ends) {
      FinCategory& h = homs[ab];
      h.objects.push_back(u);
      Id i2 = identity_name(u);
      h.morphisms.push_back({i2, u, u});
      h.identity[u] = i2;
    }
    for (const auto& t : twos) {
      auto it = ends.find(t.src);
      auto it2 = ends.find(t.tgt);
      if (it == ends.end() || it2 == ends.end() || it->second != it2->second)
        throw CatError(ErrorKind::Validation,
                       "2-cell " + t.id + " between non-parallel 1-cells");
      homs[it->second].morphisms.push_back(t);
    }
    for (auto& [ab, h] : homs) {
      h.reindex();
      for (const auto& m : h.morphisms) {
        h.compose_table[{h.identity.at(m.tgt), m.id}] = m.id;
        h.compose_table[{m.id, h.identity.at(m.src)}] = m.id;
      }
    }
    for (const auto& [g, f, h] : vcomp) {
      bool placed = false;
      for (auto& [ab, hm] : homs)
        if (hm.has_morphism(g) && hm.has_morphism(f)) {
          hm.compose_table[{g, f}] = h;
          placed = true;
        }
      if (!placed)
        throw CatError(ErrorKind::UnresolvedReference,
                       "vcompose entry references unknown 2-cells");
    }
    for (auto& [ab, h] : homs) {
      h.reindex();
      c.hom[ab] = std::move(h);
    }
    for (const auto& o : c.objects) {
      Id i = c.id1.at(o);
      c.compose1[{i, i}] = i;
    }
    for (const auto& [u, ab] : ends) {
      c.compose1[{c.id1.at(ab.second), u}] = u;
      c.compose1[{u, c.id1.at(ab.first)}] = u;
    }
    for (const auto& [g, f, h] : comp1) c.compose1[{g, f}] = h;
    c.reindex();
    fill_forced_hcompose(c);
    for (const auto& [b, a, r] : hcomp) c.hcompose2[{b, a}] = r;
    c.reindex();
    auto rep = validate_two_category(c);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "two_category " + name + ": " + rep.violations.front());
    ws.two_categories[name] = make_two_cat(std::move(c));
  }

  Functor functor_literal(CatPtr src, CatPtr tgt) {
    expect(Tok::LBrace, "'{'");
    Functor f;
    f.source = src;
    f.target = tgt;
    while (!accept(Tok::RBrace)) {
      std::string field = expect_ident("ob or mor");
      expect(Tok::Colon, "':'");
      bool obs = field == "ob";
      if (!obs && field != "mor")
        throw CatError(ErrorKind::Syntax, "expected 'ob' or 'mor'");
      if (cur_.kind != Tok::Semi) do {
          Id a = expect_ident("element");
          expect(Tok::MapsTo, "'|->'");
          Id b = expect_ident("element");
          if (obs)
            f.on_objects[a] = b;
          else
            f.on_morphisms[a] = b;
        } while (accept(Tok::Comma));
      expect(Tok::Semi, "';'");
    }
    // implicit identity images; forced composites
    for (const auto& [o, img] : f.on_objects)
      f.on_morphisms.insert({src->id_of(o), tgt->id_of(img)});
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [gf, h] : src->compose_table) {
        auto ig = f.on_morphisms.find(gf.first);
        auto iff = f.on_morphisms.find(gf.second);
        if (ig == f.on_morphisms.end() || iff == f.on_morphisms.end())
          continue;
        Id want = tgt->compose(ig->second, iff->second);
        if (!f.on_morphisms.count(h)) {
          f.on_morphisms[h] = want;
          changed = true;
        }
      }
    }
    return f;
  }

  NatTransformation nat_literal(const Functor& s, const Functor& t) {
    expect(Tok::LBrace, "'{'");
    NatTransformation n;
    n.source = s;
    n.target = t;
    while (!accept(Tok::RBrace)) {
      if (cur_.kind != Tok::Semi) do {
          Id a = expect_ident("object");
          expect(Tok::MapsTo, "'|->'");
          Id b = expect_ident("morphism");
          n.components[a] = b;
        } while (accept(Tok::Comma));
      expect(Tok::Semi, "';'");
    }
    return n;
  }

  // shared body for diagram-like blocks: "on <cell> = <value>;" entries
  CatValued2Functor diagram_body(Workspace& ws, TwoCatPtr base,
                                 const std::string& name,
                                 std::map<Id, Id>* value_names) {
    CatValued2Functor F;
    F.source = base;
    struct Pending {
      Id cell;
      bool two = false;
    };
    expect(Tok::LBrace, "'{'");
    std::vector<std::pair<Id, Id>> named_values;  // (object, category name)
    std::vector<std::pair<Id, Functor>> cell_values;
    std::vector<std::pair<Id, NatTransformation>> two_values;
    // first pass: need object values before parsing functor literals;
    // collect in order, but object entries must come first in the file
    while (!accept(Tok::RBrace)) {
      if (!peek_ident("on"))
        throw CatError(ErrorKind::Syntax,
                       "expected 'on' in diagram " + name + " at " +
                           cur_.span.to_string());
      advance();
      Id cell = dotted_ident();
      expect(Tok::Eq, "'='");
      if (cur_.kind == Tok::Ident && cur_.text == "functor") {
        advance();
        if (!base->has_cell1(cell))
          throw CatError(ErrorKind::UnresolvedReference,
                         "unknown 1-cell " + cell + " in diagram " + name);
        auto [a, b] = base->cell1_ends(cell);
        if (!F.on_objects.count(a) || !F.on_objects.count(b))
          throw CatError(ErrorKind::Validation,
                         "diagram " + name +
                             ": object values must precede cell values");
        F.on_one_cells[cell] =
            functor_literal(F.on_objects.at(a), F.on_objects.at(b));
      } else if (cur_.kind == Tok::Ident && cur_.text == "nat") {
        advance();
        auto ab = base->cell2_hom(cell);
        const auto& mm = base->hom_at(ab.first, ab.second).mor(cell);
        if (!F.on_one_cells.count(mm.src) || !F.on_one_cells.count(mm.tgt))
          throw CatError(ErrorKind::Validation,
                         "diagram " + name +
                             ": 1-cell values must precede 2-cell values");
        F.on_two_cells[cell] = nat_literal(F.on_one_cells.at(mm.src),
                                           F.on_one_cells.at(mm.tgt));
      } else {
        Id catname = expect_ident("category name");
        if (!ws.categories.count(catname))
          throw CatError(ErrorKind::UnresolvedReference,
                         "diagram " + name + " references unknown category " +
                             catname);
        F.on_objects[cell] = make_cat(ws.categories.at(catname));
        if (value_names) (*value_names)[cell] = catname;
      }
      expect(Tok::Semi, "';'");
    }
    // implicit identity cells and forced composites
    for (const auto& o : base->objects) {
      if (!F.on_objects.count(o))
        throw CatError(ErrorKind::Validation,
                       "diagram " + name + ": no value at object " + o);
      F.on_one_cells.insert({base->id1.at(o), identity_functor(F.at(o))});
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [vu, w] : base->compose1) {
        auto iv = F.on_one_cells.find(vu.first);
        auto iu = F.on_one_cells.find(vu.second);
        if (iv == F.on_one_cells.end() || iu == F.on_one_cells.end()) continue;
        if (!F.on_one_cells.count(w)) {
          F.on_one_cells[w] = compose_functors(iv->second, iu->second);
          changed = true;
        }
      }
    }
    for (const auto& u : base->one_cells())
      if (F.on_one_cells.count(u))
        F.on_two_cells.insert({base->id2(u), identity_nat(F.f1(u))});
    return F;
  }

  void parse_diagram(Workspace& ws, const Id& name) {
    expect(Tok::Colon, "':'");
    Id basename = expect_ident("base");
    expect(Tok::Arrow, "'->'");
    std::string target = expect_ident("Cat");
    if (target != "Cat")
      throw CatError(ErrorKind::Syntax, "diagram target must be Cat");
    TwoCatPtr base = ws.resolve_two_cat(basename);
    CatValued2Functor F = diagram_body(ws, base, name, nullptr);
    auto rep = validate_diagram(F);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "diagram " + name + ": " + rep.violations.front());
    ws.diagrams[name] = std::move(F);
    ws.diagram_base[name] = basename;
  }

  std::set<Id> sigma_with_identities(TwoCatPtr base,
                                     const std::vector<Id>& cells) {
    std::set<Id> s = identity_one_cells(*base);
    for (const auto& c : cells) s.insert(c);
    return s;
  }

  void parse_marked(Workspace& ws, const Id& name) {
    expect(Tok::LBrace, "'{'");
    Id basename;
    std::vector<Id> sigma;
    while (!accept(Tok::RBrace)) {
      std::string field = expect_ident("field");
      expect(Tok::Colon, "':'");
      if (field == "base") basename = expect_ident("base");
      else if (field == "sigma") sigma = ident_list();
      else throw CatError(ErrorKind::Syntax, "unknown marked field " + field);
      expect(Tok::Semi, "';'");
    }
    MarkedTwoCategory m;
    m.base = ws.resolve_two_cat(basename);
    m.sigma = sigma_with_identities(m.base, sigma);
    auto rep = validate_marked(m);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "marked " + name + ": " + rep.violations.front());
    ws.markeds[name] = std::move(m);
    ws.marked_base[name] = basename;
  }

  void parse_f_category(Workspace& ws, const Id& name) {
    expect(Tok::LBrace, "'{'");
    Id basename;
    std::vector<Id> tight;
    while (!accept(Tok::RBrace)) {
      std::string field = expect_ident("field");
      expect(Tok::Colon, "':'");
      if (field == "base") basename = expect_ident("base");
      else if (field == "tight") tight = ident_list();
      else
        throw CatError(ErrorKind::Syntax, "unknown f_category field " + field);
      expect(Tok::Semi, "';'");
    }
    FCategory f;
    f.loose = ws.resolve_two_cat(basename);
    f.tight = sigma_with_identities(f.loose, tight);
    auto rep = validate_fcategory(f);
    if (!rep.ok())
      throw CatError(ErrorKind::ClosureViolation,
                     "f_category " + name + ": " + rep.violations.front());
    ws.f_categories[name] = make_fcat(std::move(f));
    ws.f_category_base[name] = basename;
  }

  void parse_f_object(Workspace& ws, const Id& name) {
    expect(Tok::LBrace, "'{'");
    Id loosename;
    std::vector<Id> tight;
    while (!accept(Tok::RBrace)) {
      std::string field = expect_ident("field");
      expect(Tok::Colon, "':'");
      if (field == "loose") loosename = expect_ident("category");
      else if (field == "tight") tight = ident_list();
      else
        throw CatError(ErrorKind::Syntax, "unknown f_object field " + field);
      expect(Tok::Semi, "';'");
    }
    if (!ws.categories.count(loosename))
      throw CatError(ErrorKind::UnresolvedReference,
                     "f_object " + name + " references unknown category " +
                         loosename);
    std::set<Id> tights(tight.begin(), tight.end());
    FObject x = fobject_from_subset(make_cat(ws.categories.at(loosename)),
                                    tights);
    auto rep = validate_fobject(x);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "f_object " + name + ": " + rep.violations.front());
    ws.f_objects[name] = std::move(x);
    ws.f_object_loose[name] = loosename;
    ws.f_object_tights[name] = tights;
  }

  void parse_f_weight(Workspace& ws, const Id& name) {
    expect(Tok::LBrace, "'{'");
    Id basename, lambdaname;
    bool have_tau = false, have_phi = false;
    FWeight w;
    while (!accept(Tok::RBrace)) {
      std::string field = expect_ident("field");
      if (field == "base") {
        expect(Tok::Colon, "':'");
        basename = expect_ident("f_category");
        expect(Tok::Semi, "';'");
        if (!ws.f_categories.count(basename))
          throw CatError(ErrorKind::UnresolvedReference,
                         "f_weight " + name + " references unknown f_category " +
                             basename);
        w.base = ws.f_categories.at(basename);
        w.tight = tight_part(*w.base);
      } else if (field == "lambda") {
        expect(Tok::Colon, "':'");
        lambdaname = expect_ident("diagram");
        expect(Tok::Semi, "';'");
        if (!ws.diagrams.count(lambdaname))
          throw CatError(ErrorKind::UnresolvedReference,
                         "f_weight " + name + " references unknown diagram " +
                             lambdaname);
        w.lambda = ws.diagrams.at(lambdaname);
      } else if (field == "tau") {
        if (!w.base)
          throw CatError(ErrorKind::Validation,
                         "f_weight " + name + ": base must precede tau");
        w.tau = diagram_body(ws, w.tight.cat, name + ".tau", nullptr);
        have_tau = true;
      } else if (field == "phi") {
        if (!have_tau || !ws.diagrams.count(lambdaname))
          throw CatError(ErrorKind::Validation,
                         "f_weight " + name + ": tau and lambda must precede phi");
        expect(Tok::LBrace, "'{'");
        while (!accept(Tok::RBrace)) {
          if (!peek_ident("on"))
            throw CatError(ErrorKind::Syntax, "expected 'on' in phi");
          advance();
          Id obj = expect_ident("object");
          expect(Tok::Eq, "'='");
          if (!peek_ident("functor"))
            throw CatError(ErrorKind::Syntax, "expected functor literal");
          advance();
          w.phi[obj] = functor_literal(w.tau.at(obj), w.lambda.at(obj));
          expect(Tok::Semi, "';'");
        }
        expect(Tok::Semi, "';'");
        have_phi = true;
      } else {
        throw CatError(ErrorKind::Syntax, "unknown f_weight field " + field);
      }
    }
    if (!w.base || lambdaname.empty() || !have_tau || !have_phi)
      throw CatError(ErrorKind::Validation,
                     "f_weight " + name + " is missing a field");
    // the lambda diagram must live on the loose base of the f_category
    if (!(w.lambda.source->objects == w.base->loose->objects))
      throw CatError(ErrorKind::Validation,
                     "f_weight " + name +
                         ": lambda diagram base mismatch with f_category");
    w.lambda.source = w.base->loose;
    auto rep = validate_fweight(w);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "f_weight " + name + ": " + rep.violations.front());
    ws.f_weights[name] = std::move(w);
    ws.f_weight_names[name] = {basename, lambdaname};
  }

  void parse_f_diagram(Workspace& ws, const Id& name) {
    expect(Tok::Colon, "':'");
    Id basename = expect_ident("f_category");
    if (!ws.f_categories.count(basename))
      throw CatError(ErrorKind::UnresolvedReference,
                     "f_diagram " + name + " references unknown f_category " +
                         basename);
    FDiagram s;
    s.base = ws.f_categories.at(basename);
    TwoCatPtr base = s.base->loose;
    // like diagram_body, but object values are f_object names
    CatValued2Functor F;
    F.source = base;
    std::map<Id, Id> vnames;
    expect(Tok::LBrace, "'{'");
    while (!accept(Tok::RBrace)) {
      if (!peek_ident("on"))
        throw CatError(ErrorKind::Syntax, "expected 'on' in f_diagram");
      advance();
      Id cell = dotted_ident();
      expect(Tok::Eq, "'='");
      if (peek_ident("functor")) {
        advance();
        auto [a, b] = base->cell1_ends(cell);
        F.on_one_cells[cell] =
            functor_literal(F.on_objects.at(a), F.on_objects.at(b));
      } else if (peek_ident("nat")) {
        advance();
        auto ab = base->cell2_hom(cell);
        const auto& mm = base->hom_at(ab.first, ab.second).mor(cell);
        F.on_two_cells[cell] = nat_literal(F.on_one_cells.at(mm.src),
                                           F.on_one_cells.at(mm.tgt));
      } else {
        Id objname = expect_ident("f_object");
        if (!ws.f_objects.count(objname))
          throw CatError(ErrorKind::UnresolvedReference,
                         "f_diagram " + name + " references unknown f_object " +
                             objname);
        s.values[cell] = ws.f_objects.at(objname);
        F.on_objects[cell] = s.values[cell].loose_part;
        vnames[cell] = objname;
      }
      expect(Tok::Semi, "';'");
    }
    for (const auto& o : base->objects) {
      if (!F.on_objects.count(o))
        throw CatError(ErrorKind::Validation,
                       "f_diagram " + name + ": no value at object " + o);
      F.on_one_cells.insert({base->id1.at(o), identity_functor(F.at(o))});
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [vu, ww] : base->compose1) {
        auto iv = F.on_one_cells.find(vu.first);
        auto iu = F.on_one_cells.find(vu.second);
        if (iv == F.on_one_cells.end() || iu == F.on_one_cells.end()) continue;
        if (!F.on_one_cells.count(ww)) {
          F.on_one_cells[ww] = compose_functors(iv->second, iu->second);
          changed = true;
        }
      }
    }
    for (const auto& u : base->one_cells())
      if (F.on_one_cells.count(u))
        F.on_two_cells.insert({base->id2(u), identity_nat(F.f1(u))});
    s.loose = std::move(F);
    auto rep = validate_fdiagram(s);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "f_diagram " + name + ": " + rep.violations.front());
    ws.f_diagrams[name] = std::move(s);
    ws.f_diagram_base[name] = basename;
    ws.f_diagram_value_names[name] = std::move(vnames);
  }

  void parse_dotted(Workspace& ws, const Id& name) {
    expect(Tok::LBrace, "'{'");
    Id basename;
    std::vector<Id> sigma, dot;
    while (!accept(Tok::RBrace)) {
      std::string field = expect_ident("field");
      expect(Tok::Colon, "':'");
      if (field == "base") basename = expect_ident("f_category");
      else if (field == "sigma") sigma = ident_list();
      else if (field == "dotted") dot = ident_list();
      else throw CatError(ErrorKind::Syntax, "unknown dotted field " + field);
      expect(Tok::Semi, "';'");
    }
    if (!ws.f_categories.count(basename))
      throw CatError(ErrorKind::UnresolvedReference,
                     "dotted " + name + " references unknown f_category " +
                         basename);
    DottedFCategory d;
    d.base = ws.f_categories.at(basename);
    d.sigma = sigma_with_identities(d.base->loose, sigma);
    d.dotted = std::set<Id>(dot.begin(), dot.end());
    auto rep = validate_dotted(d);
    if (!rep.ok())
      throw CatError(ErrorKind::Validation,
                     "dotted " + name + ": " + rep.violations.front());
    ws.dotteds[name] = std::move(d);
    ws.dotted_base[name] = basename;
  }
};

}  // namespace dsl

inline Workspace parse_workspace(const std::string& source) {
  dsl::Parser p(source);
  return p.parse();
}

// ---------------------------------------------------------------------------
// Deterministic emission back to DSL text.

namespace dsl {

inline std::string join(const std::vector<Id>& xs) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += ", ";
    out += x;
  }
  return out;
}

inline void emit_category(std::ostringstream& os, const Id& name,
                          const FinCategory& c) {
  os << "category " << name << " {\n";
  os << "  objects: " << join(c.objects) << ";\n";
  std::vector<Id> mors;
  for (const auto& m : c.morphisms)
    if (!c.is_identity(m.id))
      mors.push_back(m.id + ": " + m.src + " -> " + m.tgt);
  if (!mors.empty()) os << "  morphisms: " << join(mors) << ";\n";
  std::vector<Id> comps;
  for (const auto& [gf, h] : c.compose_table)
    if (!c.is_identity(gf.first) && !c.is_identity(gf.second))
      comps.push_back(gf.first + "." + gf.second + " = " + h);
  if (!comps.empty()) os << "  compose: " << join(comps) << ";\n";
  os << "}\n";
}

inline void emit_presentation(std::ostringstream& os, const Id& name,
                              const CatPresentation& p) {
  os << "presentation " << name << " {\n";
  os << "  objects: " << join(p.objects) << ";\n";
  std::vector<Id> gens;
  for (const auto& g : p.generators)
    gens.push_back(g.id + ": " + g.src + " -> " + g.tgt);
  if (!gens.empty()) os << "  generators: " << join(gens) << ";\n";
  std::vector<Id> rels;
  auto word_str = [](const Word& w) {
    if (w.gens.empty()) return std::string("1");
    std::string s;
    for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it) {
      if (!s.empty()) s += ".";
      s += *it;
    }
    return s;
  };
  for (const auto& [l, r] : p.relations)
    rels.push_back(word_str(l) + " = " + word_str(r));
  if (!rels.empty()) os << "  relations: " << join(rels) << ";\n";
  os << "  bound: " << p.closure_bound << ";\n";
  os << "}\n";
}

inline void emit_two_category(std::ostringstream& os, const Id& name,
                              const Fin2Category& c) {
  os << "two_category " << name << " {\n";
  os << "  objects: " << join(c.objects) << ";\n";
  std::set<Id> id1s;
  for (const auto& [o, i] : c.id1) id1s.insert(i);
  std::vector<Id> ones, twos, comp1, vcomp, hcomp;
  for (const auto& u : c.one_cells())
    if (!id1s.count(u)) {
      auto [a, b] = c.cell1_ends(u);
      ones.push_back(u + ": " + a + " -> " + b);
    }
  for (const auto& [ab, h] : c.hom)
    for (const auto& m : h.morphisms)
      if (!h.is_identity(m.id))
        twos.push_back(m.id + ": " + m.src + " => " + m.tgt);
  for (const auto& [gf, h] : c.compose1)
    if (!id1s.count(gf.first) && !id1s.count(gf.second))
      comp1.push_back(gf.first + "." + gf.second + " = " + h);
  for (const auto& [ab, h] : c.hom)
    for (const auto& [vc, w] : h.compose_table)
      if (!h.is_identity(vc.first) && !h.is_identity(vc.second))
        vcomp.push_back(vc.first + "." + vc.second + " = " + w);
  auto is_id2 = [&](const Id& m) {
    auto ab = c.cell2_hom(m);
    return c.hom_at(ab.first, ab.second).is_identity(m);
  };
  auto is_id2_of_id1 = [&](const Id& m) {
    if (!is_id2(m)) return false;
    auto ab = c.cell2_hom(m);
    const auto& mm = c.hom_at(ab.first, ab.second).mor(m);
    return id1s.count(mm.src) > 0;
  };
  for (const auto& [ba, r] : c.hcompose2) {
    if (is_id2(ba.first) && is_id2(ba.second)) continue;  // forced
    if (is_id2_of_id1(ba.first) || is_id2_of_id1(ba.second)) continue;
    hcomp.push_back(ba.first + " * " + ba.second + " = " + r);
  }
  if (!ones.empty()) os << "  onecells: " << join(ones) << ";\n";
  if (!twos.empty()) os << "  twocells: " << join(twos) << ";\n";
  if (!comp1.empty()) os << "  compose1: " << join(comp1) << ";\n";
  if (!vcomp.empty()) os << "  vcompose: " << join(vcomp) << ";\n";
  if (!hcomp.empty()) os << "  hcompose: " << join(hcomp) << ";\n";
  os << "}\n";
}

inline void emit_functor_literal(std::ostringstream& os, const Functor& f,
                                 int indent) {
  std::string pad(indent, ' ');
  os << "functor {\n";
  std::vector<Id> obs, mors;
  for (const auto& [a, b] : f.on_objects) obs.push_back(a + " |-> " + b);
  for (const auto& [a, b] : f.on_morphisms)
    if (!f.source->is_identity(a)) mors.push_back(a + " |-> " + b);
  if (!obs.empty()) os << pad << "  ob: " << join(obs) << ";\n";
  if (!mors.empty()) os << pad << "  mor: " << join(mors) << ";\n";
  os << pad << "}";
}

inline void emit_diagram_body(std::ostringstream& os,
                              const CatValued2Functor& F,
                              const std::map<Id, Id>& value_names,
                              int indent) {
  std::string pad(indent, ' ');
  const Fin2Category& base = *F.source;
  for (const auto& o : base.objects)
    os << pad << "on " << o << " = " << value_names.at(o) << ";\n";
  std::set<Id> id1s;
  for (const auto& [o, i] : base.id1) id1s.insert(i);
  // derivable composites are omitted: emit a minimal generating set (all
  // non-identity cells that are not forced by already-emitted ones)
  std::map<Id, Functor> have;
  for (const auto& o : base.objects)
    have[base.id1.at(o)] = identity_functor(F.at(o));
  auto saturate = [&] {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [vu, w] : base.compose1) {
        auto iv = have.find(vu.first);
        auto iu = have.find(vu.second);
        if (iv == have.end() || iu == have.end() || have.count(w)) continue;
        have[w] = compose_functors(iv->second, iu->second);
        changed = true;
      }
    }
  };
  saturate();
  std::vector<Id> cells = base.one_cells();
  std::stable_sort(cells.begin(), cells.end(), [](const Id& a, const Id& b) {
    auto dots = [](const Id& x) { return std::count(x.begin(), x.end(), '.'); };
    return dots(a) < dots(b);
  });
  for (const auto& u : cells) {
    if (have.count(u)) {
      if (!(have.at(u) == F.f1(u)))
        throw CatError(ErrorKind::Validation,
                       "emit: derived cell value disagrees at " + u);
      continue;
    }
    os << pad << "on " << u << " = ";
    emit_functor_literal(os, F.f1(u), indent);
    os << ";\n";
    have[u] = F.f1(u);
    saturate();
  }
  for (const auto& m : base.two_cells()) {
    auto ab = base.cell2_hom(m);
    if (base.hom_at(ab.first, ab.second).is_identity(m)) continue;
    os << pad << "on " << m << " = nat {\n" << pad << "  ";
    std::vector<Id> comps;
    for (const auto& [a, b] : F.f2(m).components)
      comps.push_back(a + " |-> " + b);
    os << join(comps) << ";\n" << pad << "};\n";
  }
}

}  // namespace dsl

inline std::string emit_workspace(const Workspace& ws) {
  std::ostringstream os;
  for (const auto& name : ws.order) {
    const std::string& k = ws.kind.at(name);
    if (k == "category") {
      dsl::emit_category(os, name, ws.categories.at(name));
    } else if (k == "presentation") {
      dsl::emit_presentation(os, name, ws.presentation_sources.at(name));
    } else if (k == "two_category") {
      dsl::emit_two_category(os, name, *ws.two_categories.at(name));
    } else if (k == "diagram") {
      os << "diagram " << name << " : " << ws.diagram_base.at(name)
         << " -> Cat {\n";
      // value names: recover by structural comparison against the workspace
      std::map<Id, Id> vnames;
      const CatValued2Functor& F = ws.diagrams.at(name);
      for (const auto& o : F.source->objects) {
        bool found = false;
        for (const auto& [cn, cc] : ws.categories)
          if (cc == *F.at(o)) {
            vnames[o] = cn;
            found = true;
            break;
          }
        if (!found)
          throw CatError(ErrorKind::Validation,
                         "emit: diagram value at " + o +
                             " is not a named category");
      }
      dsl::emit_diagram_body(os, F, vnames, 2);
      os << "}\n";
    } else if (k == "marked") {
      const MarkedTwoCategory& m = ws.markeds.at(name);
      std::vector<Id> sig;
      auto ids = identity_one_cells(*m.base);
      for (const auto& u : m.sigma)
        if (!ids.count(u)) sig.push_back(u);
      os << "marked " << name << " {\n  base: " << ws.marked_base.at(name)
         << ";\n";
      if (!sig.empty()) os << "  sigma: " << dsl::join(sig) << ";\n";
      os << "}\n";
    } else if (k == "f_category") {
      const FCategory& f = *ws.f_categories.at(name);
      std::vector<Id> tight;
      auto ids = identity_one_cells(*f.loose);
      for (const auto& u : f.tight)
        if (!ids.count(u)) tight.push_back(u);
      os << "f_category " << name
         << " {\n  base: " << ws.f_category_base.at(name) << ";\n";
      if (!tight.empty()) os << "  tight: " << dsl::join(tight) << ";\n";
      os << "}\n";
    } else if (k == "f_object") {
      os << "f_object " << name
         << " {\n  loose: " << ws.f_object_loose.at(name) << ";\n";
      const auto& t = ws.f_object_tights.at(name);
      if (!t.empty())
        os << "  tight: " << dsl::join({t.begin(), t.end()}) << ";\n";
      os << "}\n";
    } else if (k == "f_weight") {
      const FWeight& w = ws.f_weights.at(name);
      const auto& [bn, ln] = ws.f_weight_names.at(name);
      os << "f_weight " << name << " {\n  base: " << bn << ";\n  lambda: "
         << ln << ";\n";
      os << "  tau {\n";
      std::map<Id, Id> vnames;
      for (const auto& o : w.tau.source->objects) {
        bool found = false;
        for (const auto& [cn, cc] : ws.categories)
          if (cc == *w.tau.at(o)) {
            vnames[o] = cn;
            found = true;
            break;
          }
        if (!found)
          throw CatError(ErrorKind::Validation,
                         "emit: tau value at " + o + " is not named");
      }
      dsl::emit_diagram_body(os, w.tau, vnames, 4);
      os << "  }\n";
      os << "  phi {\n";
      for (const auto& [o, f] : w.phi) {
        os << "    on " << o << " = ";
        dsl::emit_functor_literal(os, f, 4);
        os << ";\n";
      }
      os << "  };\n";
      os << "}\n";
    } else if (k == "f_diagram") {
      const FDiagram& s = ws.f_diagrams.at(name);
      os << "f_diagram " << name << " : " << ws.f_diagram_base.at(name)
         << " {\n";
      dsl::emit_diagram_body(os, s.loose, ws.f_diagram_value_names.at(name),
                             2);
      os << "}\n";
    } else if (k == "dotted") {
      const DottedFCategory& d = ws.dotteds.at(name);
      std::vector<Id> sig;
      auto ids = identity_one_cells(*d.base->loose);
      for (const auto& u : d.sigma)
        if (!ids.count(u)) sig.push_back(u);
      os << "dotted " << name << " {\n  base: " << ws.dotted_base.at(name)
         << ";\n";
      if (!sig.empty()) os << "  sigma: " << dsl::join(sig) << ";\n";
      if (!d.dotted.empty())
        os << "  dotted: " << dsl::join({d.dotted.begin(), d.dotted.end()})
           << ";\n";
      os << "}\n";
    }
    os << "\n";
  }
  return os.str();
}

// Structural equality of workspaces (for the round-trip law).
inline bool workspaces_equal(const Workspace& a, const Workspace& b) {
  if (a.order != b.order || a.kind != b.kind) return false;
  if (!(a.categories == b.categories)) return false;
  for (const auto& [n, s] : a.presentations) {
    auto it = b.presentations.find(n);
    if (it == b.presentations.end() || !(it->second.cat == s.cat))
      return false;
  }
  if (a.two_categories.size() != b.two_categories.size()) return false;
  for (const auto& [n, t] : a.two_categories) {
    auto it = b.two_categories.find(n);
    if (it == b.two_categories.end()) return false;
    const Fin2Category& x = *t;
    const Fin2Category& y = *it->second;
    if (x.objects != y.objects || !(x.hom == y.hom) ||
        x.compose1 != y.compose1 || x.hcompose2 != y.hcompose2)
      return false;
  }
  for (const auto& [n, d] : a.diagrams) {
    auto it = b.diagrams.find(n);
    if (it == b.diagrams.end()) return false;
    if (!(d.on_one_cells == it->second.on_one_cells)) return false;
    for (const auto& [o, v] : d.on_objects)
      if (!(*v == *it->second.at(o))) return false;
  }
  for (const auto& [n, m] : a.markeds) {
    auto it = b.markeds.find(n);
    if (it == b.markeds.end() || m.sigma != it->second.sigma) return false;
  }
  for (const auto& [n, f] : a.f_categories) {
    auto it = b.f_categories.find(n);
    if (it == b.f_categories.end() || f->tight != it->second->tight)
      return false;
  }
  for (const auto& [n, x] : a.f_objects) {
    auto it = b.f_objects.find(n);
    if (it == b.f_objects.end() ||
        !(x.embedding.on_objects == it->second.embedding.on_objects))
      return false;
  }
  for (const auto& [n, w] : a.f_weights) {
    auto it = b.f_weights.find(n);
    if (it == b.f_weights.end()) return false;
    if (!(w.phi == it->second.phi)) return false;
    if (!(w.tau.on_one_cells == it->second.tau.on_one_cells)) return false;
  }
  for (const auto& [n, s] : a.f_diagrams) {
    auto it = b.f_diagrams.find(n);
    if (it == b.f_diagrams.end()) return false;
    if (!(s.loose.on_one_cells == it->second.loose.on_one_cells)) return false;
  }
  for (const auto& [n, d] : a.dotteds) {
    auto it = b.dotteds.find(n);
    if (it == b.dotteds.end() || d.sigma != it->second.sigma ||
        d.dotted != it->second.dotted)
      return false;
  }
  return true;
}

}  // namespace catlim
