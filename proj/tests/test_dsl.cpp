#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "catlim/codescent.hpp"
#include "catlim/dsl.hpp"
#include "catlim/examples.hpp"
#include "catlim/jsonio.hpp"
#include "test_util.hpp"

using namespace catlim;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(CATLIM_SOURCE_DIR) + "/fixtures/" + name);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, std::string* out = nullptr) {
  std::string tmp = "cli_out.json";
  std::string cmd = std::string(CATLIM_BIN) + " " + args + " > " + tmp + " 2>cli_err.txt";
  int rc = std::system(cmd.c_str());
  if (out) {
    std::ifstream in(tmp);
    std::ostringstream ss;
    ss << in.rdbuf();
    *out = ss.str();
  }
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("an empty file parses to an empty workspace") {
  auto ws = parse_workspace("");
  REQUIRE(ws.order.empty());
  auto ws2 = parse_workspace("   # only a comment\n");
  REQUIRE(ws2.order.empty());
}

TEST_CASE("the shipped marked-simplex fixture saturates to the library's category") {
  auto ws = parse_workspace(fixture("delta_sigma.cat"));
  REQUIRE(ws.presentations.count("DeltaSigma"));
  auto ds = build_delta_sigma();
  REQUIRE(ws.presentations.at("DeltaSigma").cat == ds.sat.cat);
}

TEST_CASE("duplicate names are rejected, citing both spans") {
  std::string src = "category A { objects: a; }\ncategory A { objects: b; }\n";
  try {
    parse_workspace(src);
    FAIL("expected duplicate-name error");
  } catch (const CatError& e) {
    std::string msg = e.what();
    REQUIRE(msg.find("duplicate name A") != std::string::npos);
    REQUIRE(msg.find("2:") != std::string::npos);  // second declaration line
    REQUIRE(msg.find("1:") != std::string::npos);  // first declaration line
  }
}

TEST_CASE("load-time validation rejects a marked class missing a composite") {
  std::string src =
      "category P { objects: a, b, c;"
      " morphisms: f: a -> b, g: b -> c, h: a -> c; compose: g.f = h; }\n"
      "marked M { base: P; sigma: f, g; }\n";
  REQUIRE_THROWS_MATCHES(
      parse_workspace(src), CatError,
      Catch::Matchers::Predicate<CatError>([](const CatError& e) {
        return e.kind() == ErrorKind::Validation &&
               std::string(e.what()).find("h") != std::string::npos;
      }));
}

TEST_CASE("unresolved references are reported") {
  REQUIRE_THROWS_MATCHES(
      parse_workspace("marked M { base: Nowhere; }"), CatError,
      Catch::Matchers::Predicate<CatError>([](const CatError& e) {
        return e.kind() == ErrorKind::UnresolvedReference;
      }));
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_workspace("category A { objects a; }");
    FAIL("expected syntax error");
  } catch (const CatError& e) {
    REQUIRE(e.kind() == ErrorKind::Syntax);
    REQUIRE(std::string(e.what()).find("1:") != std::string::npos);
  }
}

TEST_CASE("parse ∘ emit ∘ parse is the identity on the shipped fixtures") {
  for (const std::string f : {"delta_sigma.cat", "arrow.cat", "rigged.cat"}) {
    auto ws1 = parse_workspace(fixture(f));
    std::string emitted = emit_workspace(ws1);
    auto ws2 = parse_workspace(emitted);
    INFO("fixture " << f);
    REQUIRE(workspaces_equal(ws1, ws2));
    // and emission is stable
    REQUIRE(emit_workspace(ws2) == emitted);
  }
}

TEST_CASE("round-trip covers diagrams with nonidentity 2-cells") {
  std::string src =
      "category K { objects: k0, k1; morphisms: km: k0 -> k1; }\n"
      "two_category E { objects: x, y; onecells: f: x -> y, g: x -> y;"
      " twocells: al: f => g; }\n"
      "diagram D : E -> Cat {\n"
      "  on x = K;\n"
      "  on y = K;\n"
      "  on f = functor { ob: k0 |-> k0, k1 |-> k0; mor: km |-> 1_k0; };\n"
      "  on g = functor { ob: k0 |-> k1, k1 |-> k1; mor: km |-> 1_k1; };\n"
      "  on al = nat { k0 |-> km, k1 |-> km; };\n"
      "}\n";
  auto ws1 = parse_workspace(src);
  REQUIRE(validate_diagram(ws1.diagrams.at("D")).ok());
  auto ws2 = parse_workspace(emit_workspace(ws1));
  REQUIRE(workspaces_equal(ws1, ws2));
}

TEST_CASE("cli: verify marked-limit-theorem on the arrow fixture exits 0 with a witness") {
  std::string out;
  int rc = run_cli("--workspace " CATLIM_SOURCE_DIR
                   "/fixtures/arrow.cat verify marked-limit-theorem "
                   "--marked MIds --diagram FArr",
                   &out);
  REQUIRE(rc == 0);
  REQUIRE(out.find("\"isomorphic\": true") != std::string::npos);
  REQUIRE(out.find("forward") != std::string::npos);
}

TEST_CASE("cli: verify marked-weighted on the arrow fixture") {
  std::string out;
  int rc = run_cli("--workspace " CATLIM_SOURCE_DIR
                   "/fixtures/arrow.cat verify marked-weighted "
                   "--weight WArr --diagram FArr",
                   &out);
  REQUIRE(rc == 0);
}

TEST_CASE("cli: classify exceeding the bound exits 3 with an overflow payload") {
  // a one-object category with a free endomorphism: the classifier quotient
  // is infinite, so a small bound trips ClosureOverflow
  std::string ws = "free.cat";
  {
    std::ofstream f(ws);
    f << "category FreeMono { objects: a; morphisms: t: a -> a, t2: a -> a,"
         " t3: a -> a; compose: t.t = t2, t.t2 = t3, t2.t = t3, t.t3 = t3,"
         " t3.t = t3, t2.t2 = t3, t2.t3 = t3, t3.t2 = t3, t3.t3 = t3; }\n"
         "marked MFree { base: FreeMono; }\n";
  }
  int rc = run_cli("--workspace free.cat --max-morphisms 13 classify "
                   "--marked MFree");
  REQUIRE(rc == 3);
}

TEST_CASE("cli: json output is byte-identical across runs") {
  std::string a, b;
  run_cli("--workspace " CATLIM_SOURCE_DIR
          "/fixtures/rigged.cat limit --kind dotted-lax --dotted InserterP "
          "--fdiagram SIns",
          &a);
  run_cli("--workspace " CATLIM_SOURCE_DIR
          "/fixtures/rigged.cat limit --kind dotted-lax --dotted InserterP "
          "--fdiagram SIns",
          &b);
  REQUIRE_FALSE(a.empty());
  REQUIRE(a == b);
}

TEST_CASE("cli: example and pie commands work") {
  std::string out;
  int rc = run_cli("example --kind inserter --rigging p", &out);
  REQUIRE(rc == 0);
  REQUIRE(out.find("\"verdict\": \"weak\"") != std::string::npos);
  rc = run_cli("--workspace " CATLIM_SOURCE_DIR
               "/fixtures/rigged.cat pie --dotted Alt4",
               &out);
  REQUIRE(rc == 0);
  REQUIRE(out.find("\"verdict\": \"none\"") != std::string::npos);
}

TEST_CASE("cli: randomized marked-weighted harness is seed-deterministic") {
  std::string a, b;
  int rc1 = run_cli("--seed 7 verify marked-weighted --random-trials 3", &a);
  int rc2 = run_cli("--seed 7 verify marked-weighted --random-trials 3", &b);
  REQUIRE(rc1 == 0);
  REQUIRE(rc2 == 0);
  REQUIRE(a == b);
}

TEST_CASE("cli: dotted-weighted verification and F-elements on the fixture weight") {
  std::string out;
  int rc = run_cli("--workspace " CATLIM_SOURCE_DIR
                   "/fixtures/rigged.cat verify dotted-weighted "
                   "--fweight WIns --fdiagram SInsC",
                   &out);
  REQUIRE(rc == 0);
  REQUIRE(out.find("\"isomorphic\": true") != std::string::npos);
  rc = run_cli("--workspace " CATLIM_SOURCE_DIR
               "/fixtures/rigged.cat elements --fweight WIns",
               &out);
  REQUIRE(rc == 0);
  REQUIRE(out.find("dotted") != std::string::npos);
}

TEST_CASE("json export uses the stable orderings") {
  FinCategory c = catlim::testutil::make_category(
      {"b", "a"}, {{"zz", "b", "a"}, {"aa", "b", "a"}});
  auto j = category_json(c);
  // objects sorted lexicographically
  REQUIRE(j["objects"][0] == "a");
  REQUIRE(j["objects"][1] == "b");
  // morphisms by (source, target, id): identities at (a,a), (b,b) around the
  // two (b,a) morphisms sorted by id
  std::vector<std::string> ids;
  for (const auto& m : j["morphisms"]) ids.push_back(m["id"]);
  REQUIRE(ids == std::vector<std::string>{"1_a", "aa", "zz", "1_b"});
}
