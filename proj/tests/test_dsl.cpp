#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "fcif/aggregators.hpp"
#include "fcif/axioms.hpp"
#include "fcif/dsl.hpp"
#include "fcif/io.hpp"
#include "fcif/theorems.hpp"

using namespace fcif;

namespace fx = fcif::theorems::fixtures;

static Profile random_profile(int n, long long i) {
  // FC witnesses are bare profiles, so the random witness stream doubles as a
  // seeded profile generator
  Witness w = witness_at(AxiomId::FC, n, RandomSearch{1, 77}, kDefaultTheta, i);
  return std::get<SingleProfile>(w).p;
}

TEST_CASE("parsing and printing round-trip") {
  std::vector<std::string> sources = {
      "fcif lib { f(i) = self }",
      "fcif dem { f(i) = mean(col(i)) }",
      "fcif w { f(i) = if count_high(col(i)) >= count_low(col(i)) then max(col(i)) else min(col(i)) }",
      "fcif a { f(i) = if i = 1 and not (self < theta) then 1 else 0.25 * p(1, 2) }",
      "fcif b { f(i) = (1 - self) * 0.5 + self * 0.5 }",
      "fcif c { f(i) = if self = 1 or self = 0 then self else theta }",
  };
  for (const auto& src : sources) {
    dsl::FcifDef def = dsl::parse(src);
    std::string printed = dsl::format(def);
    dsl::FcifDef again = dsl::parse(printed);
    CHECK(dsl::format(again) == printed);
    // printed form evaluates identically
    Profile p = fx::example1();
    for (int i = 1; i <= p.n(); ++i) {
      CHECK(dsl::evaluate_entry(again, p, i, kDefaultTheta) ==
            dsl::evaluate_entry(def, p, i, kDefaultTheta));
    }
  }
}

TEST_CASE("comments and multiple definitions") {
  auto defs = dsl::parse_defs(
      "# two rules in one file\n"
      "fcif one { f(i) = self }  # trailing comment\n"
      "fcif two { f(i) = 1 - self }\n");
  REQUIRE(defs.size() == 2);
  CHECK(defs[0].name == "one");
  CHECK(defs[1].name == "two");
}

TEST_CASE("DSL encodings match the native evaluators") {
  struct Pair {
    std::string src;
    Fcif native;
  };
  std::vector<Pair> pairs = {
      {"fcif lib { f(i) = self }", make_fcif("liberal")},
      {"fcif una { f(i) = min(col(i)) }", make_fcif("unanimity")},
      {"fcif inc { f(i) = max(col(i)) }", make_fcif("inclusive")},
      {"fcif dem { f(i) = mean(col(i)) }", make_fcif("democratic")},
      {"fcif dict2 { f(i) = p(2, i) }", make_fcif_from_spec("dictatorial:2")},
  };
  for (const auto& [src, native] : pairs) {
    dsl::FcifDef def = dsl::parse(src);
    for (const Profile& p : {fx::example1(), fx::example2()}) {
      CHECK(dsl::evaluate(def, p, kDefaultTheta) == native.full(p));
    }
    for (long long i = 0; i < 200; ++i) {
      Profile p = random_profile(3, i);
      CHECK(dsl::evaluate(def, p, kDefaultTheta) == native.full(p));
    }
  }
}

TEST_CASE("aggregates agree with column statistics") {
  Profile p = fx::example5();
  auto eval1 = [&](const std::string& body) {
    return dsl::evaluate_entry(dsl::parse("fcif t { f(i) = " + body + " }"), p, 2, kDefaultTheta);
  };
  auto st = column_stats_of(p, 2, kDefaultTheta);
  CHECK(eval1("min(col(2))") == st.min);
  CHECK(eval1("max(col(2))") == st.max);
  CHECK(eval1("sum(col(2)) / n") == (parse_value("0.3") + parse_value("0.9") + Value(0)) / Value(3));
  CHECK(eval1("count_high(col(2)) / n") == Value(st.count_high, 3));
  CHECK(eval1("count_low(col(2)) / n") == Value(st.count_low, 3));
  CHECK(eval1("theta") == kDefaultTheta);
  CHECK(dsl::evaluate_entry(dsl::parse("fcif t { f(i) = theta }"), p, 1, parse_value("0.7")) ==
        parse_value("0.7"));
}

TEST_CASE("dependency analysis") {
  // target column only
  dsl::FcifDef dem = dsl::parse("fcif dem { f(i) = mean(col(i)) }");
  auto deps = dsl::dependencies(dem, 3, 2);
  CHECK(deps == dsl::CellSet{{1, 2}, {2, 2}, {3, 2}});
  CHECK(dsl::is_structurally_independent(dem, 3));

  dsl::FcifDef lib = dsl::parse("fcif lib { f(i) = self }");
  CHECK(dsl::dependencies(lib, 3, 2) == dsl::CellSet{{2, 2}});
  CHECK(dsl::is_structurally_independent(lib, 3));

  // the quarter-weight row-reading rule touches a cell outside column 1
  dsl::FcifDef ex2 = dsl::parse(
      "fcif ex2b { f(i) = if i = 1 then 0.25*p(1,1) + 0.25*p(1,2) "
      "else 0.25*p(2,1) + 0.25*p(2,2) }");
  CHECK(dsl::dependencies(ex2, 2, 1) == dsl::CellSet{{1, 1}, {1, 2}});
  CHECK_FALSE(dsl::is_structurally_independent(ex2, 2));

  // a dictator reads one cell per target, but that cell sits in column i
  dsl::FcifDef dict = dsl::parse("fcif dict2 { f(i) = p(2, i) }");
  CHECK(dsl::dependencies(dict, 3, 1) == dsl::CellSet{{2, 1}});
  CHECK(dsl::is_structurally_independent(dict, 3));

  // condition cells count as dependencies
  dsl::FcifDef cond = dsl::parse("fcif c { f(i) = if p(1, 2) >= theta then 0 else 1 }");
  CHECK(dsl::dependencies(cond, 2, 1) == dsl::CellSet{{1, 2}});
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(dsl::parse("fcif x { f(i) = }"), ParseError);
  CHECK_THROWS_AS(dsl::parse("fcif x { f(i) = 1 +"), ParseError);
  CHECK_THROWS_AS(dsl::parse("fcif x { g(i) = 1 }"), ParseError);
  CHECK_THROWS_AS(dsl::parse("fcif x { f(i) = 0.5 } trailing"), ParseError);
  CHECK_THROWS_AS(dsl::parse("fcif x { f(i) = @ }"), LexError);
  try {
    dsl::parse("fcif x { f(i) =\n  1 + }");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("evaluation errors") {
  Profile p = fx::example1();  // n = 2
  CHECK_THROWS_AS(
      dsl::evaluate_entry(dsl::parse("fcif x { f(i) = p(3, i) }"), p, 1, kDefaultTheta),
      AgentIndexOutOfRange);
  CHECK_THROWS_AS(
      dsl::evaluate_entry(dsl::parse("fcif x { f(i) = 0.5 / (n - n) }"), p, 1, kDefaultTheta),
      DivisionByZero);
  // out-of-range final results are errors, not clamped
  CHECK_THROWS_AS(dsl::evaluate_entry(dsl::parse("fcif x { f(i) = n }"), p, 1, kDefaultTheta),
                  ResultOutOfUnitInterval);
  CHECK_THROWS_AS(
      dsl::evaluate_entry(dsl::parse("fcif x { f(i) = 0 - self }"), p, 1, kDefaultTheta),
      ResultOutOfUnitInterval);
  // intermediate values may leave [0,1] as long as the result does not
  CHECK(dsl::evaluate_entry(dsl::parse("fcif x { f(i) = (n + n) / 4 }"), p, 1, kDefaultTheta) ==
        Value(1));
}

TEST_CASE("DSL rules participate in falsification searches") {
  Fcif ex3a = dsl::to_fcif(dsl::parse("fcif ex3a { f(i) = if self = 1 then 1 else 0 }"));
  CHECK(ex3a.name == "dsl-name:ex3a");
  CHECK(falsify(ex3a, AxiomId::L, 2, Exhaustive{4}).status == Status::NoViolationFound);
  CHECK(falsify(ex3a, AxiomId::FL, 2, Exhaustive{4}).status == Status::Falsified);

  // rule files shipped as fixtures parse and evaluate
  std::string dir = FCIF_FIXTURE_DIR;
  for (const char* name : {"lib", "dem", "una", "inc", "dict2", "ex1b", "ex2b", "ex3a", "ex3b",
                           "ex4b"}) {
    auto defs = dsl::parse_defs(read_file(dir + "/rules/" + std::string(name) + ".fcif"));
    REQUIRE(defs.size() == 1);
    CHECK(defs[0].name == name);
  }
}
