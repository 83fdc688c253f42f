#include <doctest.h>

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cfh/algebra.hpp"
#include "cfh/cli.hpp"
#include "cfh/cochain.hpp"
#include "cfh/dsl.hpp"
#include "helpers.hpp"

using namespace cfh;
using namespace cfh::testing;

namespace {

std::string defs_path(const char* file) {
  return std::string(CFH_DEFS_DIR) + "/" + file;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Runs the CLI in-process against string streams; returns the exit code.
int cli(std::initializer_list<const char*> args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  std::vector<const char*> argv{"cfh"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return rc;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("parsing a minimal algebra file") {
  DefinitionFile def = parse_definition(
      "# rank-one current algebra\n"
      "[algebra]\n"
      "rank = 1\n"
      "prod 0 0 = [\"1\"]\n");
  CHECK(def.algebra.rank == 1);
  REQUIRE(def.algebra.prod.size() == 1);
  CHECK(def.algebra.prod[0][0] == PolyVector::unit(1, 0));
  CHECK(!def.bimodule.has_value());
  CHECK(def.cochains.empty());
  CHECK(!def.extension.has_value());
}

TEST_CASE("parsing a full definition file") {
  DefinitionFile def = parse_definition(
      "[algebra]\n"
      "rank = 2\n"
      "prod 0 0 = [\"1\", \"0\"]\n"   // explicit zero entry is dropped
      "prod 1 1 = [\"0\", \"d\"]\n"
      "\n"
      "[bimodule]\n"
      "rank = 1\n"
      "left 0 0 = [\"1\"]\n"
      "right 0 1 = [\"l1\"]\n"
      "\n"
      "[cochain f]\n"
      "degree = 2\n"
      "coefficients = bimodule\n"
      "value 0 1 = [\"d*l1\"]\n"
      "\n"
      "[cochain g]\n"
      "degree = 0\n"
      "value = [\"3\", \"0\"]\n"
      "\n"
      "[extension]\n"
      "prod 0 0 = [\"2\"]\n");

  CHECK(def.algebra.rank == 2);
  CHECK(def.algebra.prod[0][0][0] == Poly(1));
  CHECK(def.algebra.prod[0][0][1].is_zero());
  CHECK(def.algebra.prod[1][1][1] == Poly::del());
  CHECK(def.algebra.prod[0][1][0].is_zero());  // undeclared entries default to 0

  REQUIRE(def.bimodule.has_value());
  CHECK(def.bimodule->rank == 1);
  CHECK(def.bimodule->left[0][0][0] == Poly(1));
  CHECK(def.bimodule->right[0][1][0] == Poly::lam(1));
  CHECK(def.bimodule->right[0][0][0].is_zero());

  REQUIRE(def.cochains.size() == 2);
  CHECK(def.cochains[0].name == "f");
  CHECK(def.cochains[0].degree == 2);
  CHECK(def.cochains[0].over_bimodule);
  REQUIRE(def.cochains[0].values.count({0, 1}) == 1);
  CHECK(def.cochains[0].values.at({0, 1})[0] == Poly::del() * Poly::lam(1));
  CHECK(def.cochains[1].name == "g");
  CHECK(def.cochains[1].degree == 0);
  CHECK(!def.cochains[1].over_bimodule);
  CHECK(def.cochains[1].values.at({})[0] == Poly(3));

  REQUIRE(def.extension.has_value());
  CHECK(def.extension->fiber_prod[0][0][0] == Poly(2));
}

TEST_CASE("degree is inferred from the first value line when omitted") {
  DefinitionFile def = parse_definition(
      "[algebra]\n"
      "rank = 1\n"
      "[cochain f]\n"
      "value 0 = [\"1\"]\n");
  REQUIRE(def.cochains.size() == 1);
  CHECK(def.cochains[0].degree == 1);
  CHECK(def.cochains[0].values.at({0})[0] == Poly(1));
}

TEST_CASE("printing produces the canonical form and round-trips") {
  // Non-canonical input: comments, blank lines, unquoted vectors, an explicit
  // zero entry, out-of-order entries.
  std::string messy =
      "# comment\n"
      "[algebra]\n"
      "rank = 2\n"
      "\n"
      "prod 1 0 = [0, d]   # trailing comment\n"
      "prod 0 0 = [1, 0]\n";
  DefinitionFile def = parse_definition(messy);
  std::string canon = print_definition(def);

  CHECK(canon ==
        "[algebra]\n"
        "rank = 2\n"
        "prod 0 0 = [\"1\", \"0\"]\n"
        "prod 1 0 = [\"0\", \"d\"]\n");

  // parse . print is the identity on definitions, and print . parse is
  // idempotent on text.
  CHECK(parse_definition(canon) == def);
  CHECK(print_definition(parse_definition(canon)) == canon);
}

TEST_CASE("golden canonical print of a full file") {
  DefinitionFile def = parse_definition(
      "[algebra]\nrank = 1\nprod 0 0 = [1]\n"
      "[bimodule]\nrank = 1\nleft 0 0 = [1]\nright 0 0 = [1]\n"
      "[cochain phi]\ndegree = 2\ncoefficients = bimodule\n"
      "value 0 0 = [2*l1]\n"
      "[extension]\n");
  CHECK(print_definition(def) ==
        "[algebra]\n"
        "rank = 1\n"
        "prod 0 0 = [\"1\"]\n"
        "\n"
        "[bimodule]\n"
        "rank = 1\n"
        "left 0 0 = [\"1\"]\n"
        "right 0 0 = [\"1\"]\n"
        "\n"
        "[cochain phi]\n"
        "degree = 2\n"
        "coefficients = bimodule\n"
        "value 0 0 = [\"2*l1\"]\n"
        "\n"
        "[extension]\n");
}

TEST_CASE("bundled definition files parse and round-trip") {
  for (const char* file : {"e1.def", "cur_qxq.def", "cur_dual.def",
                           "cur_m2.def", "e1_bad.def", "ext_e1.def"}) {
    CAPTURE(file);
    DefinitionFile def = parse_definition(slurp(defs_path(file)));
    std::string canon = print_definition(def);
    CHECK(parse_definition(canon) == def);
    CHECK(print_definition(parse_definition(canon)) == canon);
  }
}

TEST_CASE("parse_poly round-trips and canonicalizes") {
  for (const char* text :
       {"0", "1", "-1", "1/2", "d", "l1", "2 - d*l1^2", "-d - 2*l3",
        "5 + 1/3*d^2*l1", "2*d*l1 + d^2 + l1^2"}) {
    CAPTURE(text);
    CHECK(parse_poly(text).str() == text);
  }
  // Non-canonical spellings normalize.
  CHECK(parse_poly("3/6").str() == "1/2");
  CHECK(parse_poly("5/10*d").str() == "1/2*d");
  CHECK(parse_poly("d*d").str() == "d^2");
  CHECK(parse_poly("l1*d").str() == "d*l1");
  CHECK(parse_poly("2*3").str() == "6");
  CHECK(parse_poly("1 + 2").str() == "3");
  CHECK(parse_poly("d - d").str() == "0");
  CHECK(parse_poly("d^1").str() == "d");

  CHECK_THROWS_WITH(parse_poly(""),
                    "invalid polynomial (column 1): empty polynomial");
  CHECK_THROWS_WITH(parse_poly("1 +"),
                    "invalid polynomial (column 4): expected a number, 'd', "
                    "or 'l<k>'");
  CHECK_THROWS_WITH(parse_poly("d^"),
                    "invalid polynomial (column 3): expected exponent");
  CHECK_THROWS_WITH(parse_poly("1/0"),
                    "invalid polynomial (column 3): zero denominator");
}

TEST_CASE("parse errors carry line and column positions") {
  auto err = [](const std::string& text) -> std::string {
    try {
      parse_definition(text);
      return "(no error)";
    } catch (const Error& e) {
      return e.what();
    }
  };

  CHECK(err("[algebra]\nrank = 1\nprod 0 0 = [\"l2\"]\n") ==
        "3:12: only d and l1 may appear in product tables");
  CHECK(err("[algebra]\nrank = 1\n[bimodule]\nrank = 1\nleft 0 0 = [\"l2\"]\n") ==
        "5:12: only d and l1 may appear in action tables");
  CHECK(err("[cochain\n") == "1:9: expected an identifier");
  CHECK(err("[cochain f]\ndegree = 1\n") ==
        "1:1: cochain block requires the [algebra] block first");
  CHECK(err("[bimodule]\nrank = 1\n") ==
        "1:1: bimodule block requires the [algebra] block first");
  CHECK(err("[algebra]\nrank = 1\nprod 0 0 = [\"1\"]\n[extension]\n") ==
        "4:1: extension block requires a [bimodule] block earlier in the file");
  CHECK(err("[algebra]\nrank = 1\nprod 0 1 = [\"1\"]\n") ==
        "3:1: generator index out of range (rank 1)");
  CHECK(err("[algebra]\nrank = 2\nprod 0 0 = [\"1\"]\n") ==
        "3:12: expected 2 entries, found 1");
  CHECK(err("[algebra]\nrank = 1\nprod 0 0 = [\"1\"]\n[cochain f]\n"
            "degree = 2\nvalue 0 0 = [\"l2\"]\n") ==
        "6:13: lambda index l2 out of range for a degree-2 cochain");
  CHECK(err("[algebra]\nrank = 1\nprod 0 0 = [\"1\"]\n[cochain f]\n"
            "degree = 0\nvalue = [\"d\"]\n") ==
        "6:9: degree-0 values must be constant");
  CHECK(err("[algebra]\nrank = 1\nprod 0 0 = [\"1\"]\nprod 0 0 = [\"d\"]\n") ==
        "4:1: duplicate product entry 0 0");
  CHECK(err("[algebra]\nrank = 1\nprod 0 0 = [\"1 + x\"]\n") ==
        "3:18: expected a number, 'd', or 'l<k>'");
  CHECK(err("[algebra]\nprod 0 0 = [\"1\"]\n") ==
        "2:5: rank must be declared before table entries");
  CHECK(err("[algebra]\nrank = 1\nprod 0 0 = [\"1/0\"]\n") ==
        "3:16: zero denominator");
  CHECK(err("[algebra]\nrank = 1\nfoo = 3\n") == "3:4: unknown key 'foo'");
  CHECK(err("[algebra]\nrank = 1\n[algebra]\n") == "3:1: duplicate [algebra] block");
  CHECK(err("[algebra]\nrank = 1\n[cochain]\n") ==
        "3:1: cochain block requires a name");
  CHECK(err("[algebra x]\n") == "1:1: block '[algebra]' takes no name");
  CHECK(err("[algebra]\nrank = 1\n[cochain f]\ndegree = 1\n[cochain f]\n"
            "degree = 1\n") == "5:1: duplicate cochain name 'f'");
  CHECK(err("[algebra]\nrank = 1 stuff\n") == "2:10: unexpected trailing characters");
  CHECK(err("[frob]\n") == "1:1: unknown block type 'frob'");
  CHECK(err("rank = 1\n") == "1:1: expected a block header");
  CHECK(err("") == "1:1: missing [algebra] block");
  CHECK(err("[algebra]\nrank = 1\n[cochain f]\n") ==
        "3:1: cochain 'f' declares neither degree nor values");
  CHECK(err("[algebra]\nrank = 1\n[cochain f]\ndegree = 1\nvalue 0 = [\"1\"]\n"
            "coefficients = bimodule\n") ==
        "6:13: coefficients must be declared before value entries");
  CHECK(err("[algebra]\nrank = 1\n[cochain f]\ncoefficients = frob\n") ==
        "4:1: coefficients must be 'regular' or 'bimodule'");
  CHECK(err("[algebra]\nrank = 1\n[cochain f]\ncoefficients = bimodule\n"
            "degree = 1\nvalue 0 = [\"1\"]\n") ==
        "4:1: coefficients = bimodule requires a [bimodule] block earlier in "
        "the file");
  CHECK(err("[algebra]\nrank = 1\nprod 0 0 = [\"1\"]\n[cochain f]\n"
            "degree = 1\nvalue 0 = [\"1\"]\nvalue 0 = [\"d\"]\n") ==
        "7:1: duplicate value entry");
  CHECK(err("[algebra]\nrank = 1\nprod 0 0 = [\"d^65\"]\n") ==
        "3:16: exponent too large");
  CHECK(err("[algebra]\nrank = 257\n") == "2:1: rank too large (max 256)");
  CHECK(err("[algebra]\nrank = 1\n[cochain f]\ndegree = 9\n") ==
        "4:1: degree too large (max 8)");
  CHECK(err("[algebra]\nrank = 1\nprod 0 0 = []\n") ==
        "3:12: expected 1 entries, found 0");
  CHECK(err("[algebra]\nrank = 1\nprod 0 0 = [\"1]\n") ==
        "3:13: unterminated string");
  CHECK(err("[algebra]\nrank = 1\nprod 0 0\n") == "3:9: expected '='");
  CHECK(err("[algebra]\nrank = 1\nprod 0 0 = [\"dx\"]\n") ==
        "3:15: unexpected characters after a variable name");
  CHECK(err("[algebra]\nrank = 1\n[bimodule]\nleft 0 0 = [\"1\"]\n") ==
        "4:5: rank must be declared before table entries");
  CHECK(err("[algebra]\nrank = 1\n[bimodule]\nrank = 1\n[extension]\n"
            "prod 0 1 = [\"1\"]\n") == "6:1: fiber index out of range (rank 1)");
}

TEST_CASE("materialize builds engine objects from definitions") {
  // The bundled rank-one file: algebra is associative, and the `der`
  // cochain is the derivation e -> d e.
  Materialized m = materialize(parse_definition(slurp(defs_path("e1.def"))));
  CHECK(m.algebra->rank() == 1);
  CHECK(check_associativity(*m.algebra).pass);
  CHECK(m.bimodule == nullptr);
  REQUIRE(m.cochains.size() == 2);
  CHECK(m.cochains[0].first == "der");
  CHECK(m.cochains[1].first == "id");

  Cochain der(m.algebra, regular_bimodule(m.algebra), 1);
  int t0[1] = {0};
  der.set_value(t0, PolyVector::unit(1, 0) * Poly::del());
  CHECK(m.cochains[0].second == der);

  // The bundled matrix-unit table matches the built-in construction.
  Materialized mm = materialize(parse_definition(slurp(defs_path("cur_m2.def"))));
  AlgebraPtr m2 = make_m2();
  REQUIRE(mm.algebra->rank() == m2->rank());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(mm.algebra->prod(i, j) == m2->prod(i, j));

  // The extension sample file carries a bimodule and a bimodule-valued
  // 2-cochain.
  Materialized me = materialize(parse_definition(slurp(defs_path("ext_e1.def"))));
  REQUIRE(me.bimodule != nullptr);
  CHECK(check_bimodule(*me.bimodule).pass);
  REQUIRE(me.cochains.size() == 1);
  CHECK(me.cochains[0].first == "phi");
  CHECK(me.cochains[0].second.degree() == 2);
  CHECK(me.cochains[0].second.coefficients() == me.bimodule);

  // Guard rails: bimodule-valued cochains need a bimodule, and value tables
  // must stay addressable.
  DefinitionFile bad;
  bad.algebra.rank = 1;
  bad.algebra.prod.assign(1, std::vector<PolyVector>(1, PolyVector(1)));
  bad.cochains.push_back({"f", 1, true, {}});
  CHECK_THROWS_WITH(materialize(bad),
                    "materialize: cochain 'f' needs a [bimodule] block");

  DefinitionFile huge;
  huge.algebra.rank = 12;
  huge.algebra.prod.assign(12, std::vector<PolyVector>(12, PolyVector(12)));
  huge.cochains.push_back({"f", 6, false, {}});
  CHECK_THROWS_WITH(materialize(huge),
                    "materialize: cochain 'f' is too large");
}

TEST_CASE("render_cochain_block emits parseable blocks") {
  AlgebraPtr e1 = make_e1();
  BimodulePtr reg = regular_bimodule(e1);

  Cochain der(e1, reg, 1);
  int t0[1] = {0};
  der.set_value(t0, PolyVector::unit(1, 0) * Poly::del());
  CHECK(render_cochain_block(der, "der") ==
        "[cochain der]\n"
        "degree = 1\n"
        "coefficients = regular\n"
        "value 0 = [\"d\"]\n");

  Cochain c0(e1, reg, 0);
  c0.set_value({}, PolyVector::unit(1, 0) * Poly(Rational(-2, 3)));
  CHECK(render_cochain_block(c0, "c") ==
        "[cochain c]\n"
        "degree = 0\n"
        "coefficients = regular\n"
        "value = [\"-2/3\"]\n");

  // The rendered block parses back to the same cochain.
  std::string file = "[algebra]\nrank = 1\nprod 0 0 = [\"1\"]\n" +
                     render_cochain_block(der, "der");
  Materialized m = materialize(parse_definition(file));
  Cochain roundtrip(e1, reg, 1);
  roundtrip.set_value(t0, m.cochains[0].second.value(t0));
  CHECK(roundtrip == der);
}

TEST_CASE("cli check reports and exit codes") {
  std::string out, err;

  std::string pass_file = defs_path("e1.def");
  CHECK(cli({"check", pass_file.c_str()}, &out, &err) == 0);
  CHECK(contains(out, "pass  associativity"));
  CHECK(contains(out, "1 check: all passed"));
  CHECK(err.empty());

  std::string fail_file = defs_path("e1_bad.def");
  CHECK(cli({"check", fail_file.c_str()}, &out, &err) == 1);
  CHECK(contains(out, "FAIL  associativity"));
  CHECK(contains(out, "tuple: (0, 0, 0) 0-based / (1, 1, 1) 1-based"));
  CHECK(contains(out, "lambda assignment: l1, l2"));
  CHECK(contains(out, "difference: [\"-2*d*l1 - d*l2 - d^2\"]"));
  CHECK(contains(out, "1 check: 1 FAILED"));

  // Files with bimodule and extension blocks get those checks too.
  std::string ext_file = defs_path("ext_e1.def");
  CHECK(cli({"check", ext_file.c_str()}, &out, &err) == 0);
  CHECK(contains(out, "pass  bimodule"));
  CHECK(contains(out, "pass  extension-associativity"));
}

TEST_CASE("cli usage and input errors exit with code 2") {
  std::string out, err;
  CHECK(cli({"check", "/nonexistent.def"}, &out, &err) == 2);
  CHECK(err == "error: cannot open '/nonexistent.def'\n");

  std::string file = defs_path("e1.def");
  CHECK(cli({"d", file.c_str(), "--cochain", "nope"}, &out, &err) == 2);
  CHECK(err == "error: no cochain named 'nope' in the file\n");

  CHECK(cli({"frobnicate"}, &out, &err) == 2);
  CHECK(cli({}, &out, &err) == 2);

  CHECK(cli({"op", "circ", file.c_str(), "--lhs", "id", "--rhs", "der"},
            &out, &err) == 2);
  CHECK(err == "error: circ requires --slot\n");
  CHECK(cli({"op", "cup", file.c_str(), "--lhs", "id", "--rhs", "der",
             "--slot", "1"},
            &out, &err) == 2);
  CHECK(err == "error: --slot only applies to circ\n");

  // Parse errors surface with the file path prefixed.
  std::string bad = defs_path("e1.def") + "x";
  CHECK(cli({"check", bad.c_str()}, &out, &err) == 2);
}

TEST_CASE("cli d and op print cochain blocks") {
  std::string out;
  std::string file = defs_path("e1.def");

  CHECK(cli({"d", file.c_str(), "--cochain", "id"}, &out) == 0);
  CHECK(out ==
        "[cochain d_id]\n"
        "degree = 2\n"
        "coefficients = regular\n"
        "value 0 0 = [\"1\"]\n");

  CHECK(cli({"op", "cup", file.c_str(), "--lhs", "id", "--rhs", "id"}, &out) ==
        0);
  CHECK(out ==
        "[cochain cup_id_id]\n"
        "degree = 2\n"
        "coefficients = regular\n"
        "value 0 0 = [\"1\"]\n");

  CHECK(cli({"op", "circ", file.c_str(), "--lhs", "id", "--rhs", "der",
             "--slot", "1"},
            &out) == 0);
  CHECK(out ==
        "[cochain circ_id_der]\n"
        "degree = 1\n"
        "coefficients = regular\n"
        "value 0 = [\"d\"]\n");
}

TEST_CASE("cli cohomology json is the documented object") {
  std::string out;
  std::string file = defs_path("e1.def");
  CHECK(cli({"--json", "cohomology", file.c_str(), "--n", "1", "--cap-d", "2",
             "--slack", "2"},
            &out) == 0);
  CHECK(out == "{\"Z\":1,\"B\":0,\"HH_upper\":1}\n");

  CHECK(cli({"--json", "cohomology", file.c_str(), "--n", "0", "--cap-d", "2",
             "--slack", "2"},
            &out) == 0);
  CHECK(out == "{\"Z\":1,\"B\":0,\"HH_upper\":1}\n");
}

TEST_CASE("cli identities json is byte-stable and parallel-invariant") {
  std::string file = defs_path("e1.def");
  std::string first, second, parallel;
  CHECK(cli({"--json", "identities", file.c_str(), "--trials", "2", "--seed",
             "7"},
            &first) == 0);
  CHECK(cli({"--json", "identities", file.c_str(), "--trials", "2", "--seed",
             "7"},
            &second) == 0);
  CHECK(cli({"--json", "--parallel", "identities", file.c_str(), "--trials",
             "2", "--seed", "7"},
            &parallel) == 0);
  CHECK(first == second);
  CHECK(first == parallel);
  CHECK(contains(first, "{\"check\":\"maurer-cartan\",\"status\":\"pass\","
                        "\"seed\":7,\"witness\":null,\"millis\":0}"));
  CHECK(first.back() == '\n');
}

TEST_CASE("cli extension subcommand covers both extension kinds") {
  std::string out;
  std::string file = defs_path("ext_e1.def");

  // Plain mode uses the [extension] block (all-zero: the trivial, split
  // extension), so the section checks run alongside the projection check.
  CHECK(cli({"extension", file.c_str(), "--trials", "2", "--seed", "5"},
            &out) == 0);
  CHECK(contains(out, "pass  extension-associativity"));
  CHECK(contains(out, "pass  projection-is-morphism"));
  CHECK(contains(out, "pass  projection-intertwines-differential"));
  CHECK(contains(out, "pass  projection-respects-cup"));
  CHECK(contains(out, "4 checks: all passed"));

  // Cocycle mode assembles from the named 2-cochain; a nonzero cocycle is
  // not split, so only the unconditional checks run.
  CHECK(cli({"--json", "extension", file.c_str(), "--cocycle", "phi",
             "--trials", "3", "--seed", "5"},
            &out) == 0);
  CHECK(out ==
        "[{\"check\":\"extension-associativity\",\"status\":\"pass\","
        "\"seed\":0,\"witness\":null,\"millis\":0},"
        "{\"check\":\"projection-is-morphism\",\"status\":\"pass\","
        "\"seed\":5,\"witness\":null,\"millis\":0}]\n");
}
