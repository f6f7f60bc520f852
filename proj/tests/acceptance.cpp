// Acceptance suite: one pass/fail line per criterion, exact expectations,
// plain main. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fcif/aggregators.hpp"
#include "fcif/axioms.hpp"
#include "fcif/dsl.hpp"
#include "fcif/io.hpp"
#include "fcif/report_json.hpp"
#include "fcif/theorems.hpp"

using namespace fcif;

namespace fx = fcif::theorems::fixtures;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::function<bool(std::string&)> run;
};

bool passes(const Fcif& F, AxiomId a, int n, long long step) {
  return falsify(F, a, n, Exhaustive{step}).status == Status::NoViolationFound;
}

bool fails(const Fcif& F, AxiomId a, int n, long long step) {
  return falsify(F, a, n, Exhaustive{step}).status == Status::Falsified;
}

MembershipFunction mf(const std::vector<std::string>& vals) {
  std::vector<Value> v;
  for (const auto& s : vals) v.push_back(parse_value(s));
  return MembershipFunction(v);
}

bool criterion1(std::string& note) {
  bool ok = eval_democratic(fx::example1()) == mf({"0.35", "0.65"});
  ok = ok && eval_democratic(fx::example2()).at(1) == parse_value("0.35");
  ok = ok && eval_democratic(fx::example2_prime()).at(1) == parse_value("0.7");
  Witness w = ColumnPair{fx::example2(), fx::example2_prime(), 1};
  ok = ok && !axiom_holds(make_fcif("democratic"), AxiomId::FI, w, kDefaultTheta);
  MembershipFunction u = eval_unanimity(fx::example6());
  ok = ok && u == mf({"0", "0", "0"});
  ok = ok && !in_range_class(u, RangeClass::FStarStarStar, kDefaultTheta);
  note = "mean fixtures exact; column-pair violation 0.35 vs 0.7; all-zero image outside F***";
  return ok;
}

bool criterion2(std::string& note) {
  MembershipFunction out = eval_witness(fx::example5(), kDefaultTheta);
  bool ok = out.at(1) == parse_value("0.75") && out.at(3) == parse_value("0.75") &&
            out.at(2) == parse_value("0.25");
  theorems::ScenarioReport rep = theorems::run_scenario("E5");
  ok = ok && rep.status == theorems::ScenarioStatus::KnownDiscrepancy;
  note = "f = (0.75, 0.25, 0.75); f(2) flagged as KnownDiscrepancy against the printed 0.35";
  return ok;
}

bool criterion3(std::string& note) {
  Fcif lib = make_fcif("liberal");
  std::vector<AxiomId> axioms = {AxiomId::FMON, AxiomId::FC, AxiomId::FI, AxiomId::FL,
                                 AxiomId::I,    AxiomId::L,  AxiomId::SYM, AxiomId::FSYM};
  bool ok = true;
  for (AxiomId a : axioms) ok = ok && passes(lib, a, 2, 4);
  for (AxiomId a : axioms) ok = ok && passes(lib, a, 3, 2);
  long long profiles2 = detail::GridSpec(4, kDefaultTheta).profiles(2);
  long long profiles3 = detail::GridSpec(2, kDefaultTheta).profiles(3);
  ok = ok && profiles2 == 625 && profiles3 == 19683;
  std::ostringstream os;
  os << "625 + 19683 profiles; perturbation witnesses n=2: "
     << witness_count(AxiomId::FMON, 2, Exhaustive{4}, kDefaultTheta)
     << ", symmetric-pair witnesses n=2: "
     << witness_count(AxiomId::SYM, 2, Exhaustive{4}, kDefaultTheta);
  note = os.str();
  return ok;
}

bool criterion4(std::string& note) {
  CheckVerdict v = falsify(make_fcif("liberal"), AxiomId::FSMON, 2, Exhaustive{2});
  bool ok = v.status == Status::Falsified && v.counterexample.has_value();
  ok = ok && !axiom_holds(make_fcif("liberal"), AxiomId::FSMON, v.counterexample->witness,
                          kDefaultTheta);
  note = "Falsified at witness index " +
         (v.counterexample ? std::to_string(v.counterexample->index) : std::string("-")) +
         "; counterexample self-certifies";
  return ok;
}

bool criterion5(std::string& note) {
  Fcif inc = make_fcif("inclusive");
  Fcif una = make_fcif("unanimity");
  bool ok = true;
  for (AxiomId a : {AxiomId::FMON, AxiomId::FC, AxiomId::FI, AxiomId::EL1, AxiomId::FEL1}) {
    ok = ok && passes(inc, a, 2, 2);
  }
  for (AxiomId a : {AxiomId::EL2, AxiomId::FEL2}) ok = ok && fails(inc, a, 2, 2);
  for (AxiomId a : {AxiomId::FMON, AxiomId::FC, AxiomId::FI, AxiomId::EL2, AxiomId::FEL2}) {
    ok = ok && passes(una, a, 2, 2);
  }
  for (AxiomId a : {AxiomId::EL1, AxiomId::FEL1}) ok = ok && fails(una, a, 2, 2);
  note = "max/min rules pass their halves and fail the others; joint impossibility implied, "
         "not searched";
  return ok;
}

bool criterion6(std::string& note) {
  Fcif wit = make_fcif("witness", FcifParams{std::nullopt, kDefaultTheta});
  bool ok = passes(wit, AxiomId::FC, 3, 2) && passes(wit, AxiomId::FI, 3, 2);
  ok = ok && classify(wit, DomainClass::PStarStarStar, RangeClass::FStarStarStar, 3,
                      Exhaustive{2})
                     .status == Status::NoViolationFound;
  MembershipFunction out = wit.full(fx::example5());
  for (int d = 1; d <= 3; ++d) ok = ok && !(out == eval_dictatorial(fx::example5(), d));
  note = "six-branch rule: FC and FI exhaustive at n=3 step 1/2; P*** -> F***; non-dictatorial "
         "on the fixture";
  return ok;
}

bool criterion7(std::string& note) {
  bool ok = true;
  for (int d = 1; d <= 3; ++d) {
    Fcif dict = make_fcif("dictatorial", FcifParams{d, std::nullopt});
    ok = ok && classify(dict, DomainClass::PStar, RangeClass::FStar, 3, Exhaustive{2}).status ==
                   Status::NoViolationFound;
    ok = ok && classify(dict, DomainClass::PStarStar, RangeClass::FStarStar, 3, Exhaustive{2})
                       .status == Status::NoViolationFound;
  }
  Fcif dem = make_fcif("democratic");
  ok = ok && passes(dem, AxiomId::FC, 2, 4) && passes(dem, AxiomId::I, 2, 4);
  CheckVerdict v =
      classify(dem, DomainClass::PStarStarStar, RangeClass::FStarStar, 2, Exhaustive{4});
  ok = ok && v.status == Status::Falsified && v.counterexample.has_value();
  if (ok) {
    const auto& sp = std::get<SingleProfile>(v.counterexample->witness);
    ok = in_domain_class(sp.p, DomainClass::PStarStarStar, kDefaultTheta) &&
         !in_range_class(v.counterexample->out_p, RangeClass::FStarStar, kDefaultTheta);
  }
  note = "dictators preserve P*->F* and P**->F**; the mean passes FC and I but leaves F** on a "
         "concrete P*** profile";
  return ok;
}

bool criterion8(std::string& note) {
  struct PairDef {
    std::string src;
    Fcif native;
  };
  std::vector<PairDef> pairs = {
      {"fcif lib { f(i) = self }", make_fcif("liberal")},
      {"fcif una { f(i) = min(col(i)) }", make_fcif("unanimity")},
      {"fcif inc { f(i) = max(col(i)) }", make_fcif("inclusive")},
      {"fcif dem { f(i) = mean(col(i)) }", make_fcif("democratic")},
      {"fcif dict2 { f(i) = p(2, i) }", make_fcif_from_spec("dictatorial:2")},
  };
  bool ok = true;
  // full n=2 grid at step 1/4
  detail::GridSpec grid(4, kDefaultTheta);
  for (const auto& [src, native] : pairs) {
    dsl::FcifDef def = dsl::parse(src);
    detail::ProfileOdometer odo(grid, 2);
    for (long long g = 0; g < grid.profiles(2); ++g) {
      ok = ok && dsl::evaluate(def, odo.p, kDefaultTheta) == native.full(odo.p);
      odo.advance();
    }
    // 1000 seeded random n=3 profiles
    for (long long i = 0; i < 1000; ++i) {
      Witness w = witness_at(AxiomId::FC, 3, RandomSearch{1000, 42}, kDefaultTheta, i);
      const Profile& p = std::get<SingleProfile>(w).p;
      ok = ok && dsl::evaluate(def, p, kDefaultTheta) == native.full(p);
    }
  }
  Fcif ex2b = fx::example2_rule();
  dsl::FcifDef ex2def = dsl::parse(
      "fcif ex2b { f(i) = if i = 1 then 0.2*p(1,1) + 0.2*p(1,2) "
      "else 0.2*p(2,1) + 0.2*p(2,2) }");
  ok = ok && !dsl::is_structurally_independent(ex2def, 2);
  ok = ok && falsify(ex2b, AxiomId::FI, 2, Exhaustive{2}).status == Status::NoViolationFound;
  note = "five encodings match on 625 grid + 1000 random profiles; row-reading rule dependent "
         "yet FI-clean at step 1/2";
  return ok;
}

bool criterion9(std::string& note) {
  theorems::RunConfig cfg;  // seed 42 default
  auto first = theorems::run_all(cfg);
  auto second = theorems::run_all(cfg);
  bool ok = scenario_reports_to_json(first, false) == scenario_reports_to_json(second, false);
  // worker count must not change verdicts or canonical-first counterexamples
  Fcif dem = make_fcif("democratic");
  for (AxiomId a : {AxiomId::FI, AxiomId::FSYM, AxiomId::FMON}) {
    CheckVerdict one = falsify(dem, a, 2, Exhaustive{4}, kDefaultTheta, 1);
    CheckVerdict many = falsify(dem, a, 2, Exhaustive{4}, kDefaultTheta, 8);
    ok = ok && one.status == many.status && one.checked == many.checked;
    if (one.counterexample) {
      ok = ok && many.counterexample &&
           one.counterexample->index == many.counterexample->index &&
           one.counterexample->witness == many.counterexample->witness;
    }
  }
  theorems::RunConfig jobs8 = cfg;
  jobs8.jobs = 8;
  ok = ok && scenario_reports_to_json(first, false) ==
                 scenario_reports_to_json(theorems::run_all(jobs8), false);
  note = "full harness twice + jobs 1 vs 8: identical reports modulo timing";
  return ok;
}

bool criterion10(std::string& note) {
  bool ok = true;
  long long checked = 0;
  std::vector<Fcif> rules = {make_fcif("liberal"), make_fcif("unanimity"),
                             make_fcif("inclusive"), make_fcif("democratic"),
                             make_fcif("witness", FcifParams{std::nullopt, kDefaultTheta})};
  for (int n : {1, 2, 3, 5}) {
    for (long long i = 0; i < 2500; ++i) {
      Witness w = witness_at(AxiomId::FC, n, RandomSearch{2500, static_cast<uint64_t>(42 + n)}, kDefaultTheta, i);
      const Profile& p = std::get<SingleProfile>(w).p;
      // class nesting
      if (in_domain_class(p, DomainClass::PStar, kDefaultTheta)) {
        ok = ok && in_domain_class(p, DomainClass::PStarStar, kDefaultTheta);
      }
      if (in_domain_class(p, DomainClass::PStarStar, kDefaultTheta)) {
        ok = ok && in_domain_class(p, DomainClass::PStarStarStar, kDefaultTheta);
      }
      // bucket totality per column
      for (int j = 1; j <= n; ++j) {
        auto st = column_stats_of(p, j, kDefaultTheta);
        ok = ok && st.count_high + st.count_low == n;
      }
      // sandwich
      MembershipFunction lo = eval_unanimity(p), mid = eval_democratic(p),
                         hi = eval_inclusive(p);
      for (int j = 1; j <= n; ++j) ok = ok && lo.at(j) <= mid.at(j) && mid.at(j) <= hi.at(j);
      // range nesting on the mean image
      if (in_range_class(mid, RangeClass::FStar, kDefaultTheta)) {
        ok = ok && in_range_class(mid, RangeClass::FStarStar, kDefaultTheta);
      }
      if (in_range_class(mid, RangeClass::FStarStar, kDefaultTheta)) {
        ok = ok && in_range_class(mid, RangeClass::FStarStarStar, kDefaultTheta);
      }
      ++checked;
    }
    // FSMON => FMON on random perturbation witnesses
    for (long long i = 0; i < 250; ++i) {
      Witness w = witness_at(AxiomId::FSMON, n, RandomSearch{250, static_cast<uint64_t>(7 + n)}, kDefaultTheta, i);
      for (const Fcif& F : rules) {
        if (axiom_holds(F, AxiomId::FSMON, w, kDefaultTheta)) {
          ok = ok && axiom_holds(F, AxiomId::FMON, w, kDefaultTheta);
        }
      }
    }
  }
  // verdict self-certification on known falsifications
  std::vector<CheckVerdict> verdicts = {
      falsify(make_fcif("democratic"), AxiomId::FI, 2, Exhaustive{4}),
      falsify(make_fcif("inclusive"), AxiomId::FEL2, 2, Exhaustive{2}),
      falsify(make_fcif("unanimity"), AxiomId::EL1, 2, Exhaustive{2}),
      falsify(make_fcif("liberal"), AxiomId::FSMON, 2, Exhaustive{2}),
      falsify(make_fcif("democratic"), AxiomId::FI, 2, RandomSearch{10000, 42}),
  };
  for (const auto& v : verdicts) {
    ok = ok && v.status == Status::Falsified && v.counterexample.has_value();
    auto F = make_fcif_from_spec(v.fcif);
    ok = ok && !axiom_holds(F, axiom_from_string(v.check), v.counterexample->witness,
                            kDefaultTheta);
  }
  note = std::to_string(checked) + " random profiles over n in {1,2,3,5}; all properties held";
  return ok;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "exact worked-example fixtures", criterion1},
      {2, "six-branch rule fixture with pre-registered discrepancy", criterion2},
      {3, "strong liberal rule passes its eight axioms on both grids", criterion3},
      {4, "strict monotonicity falsified with self-certifying witness", criterion4},
      {5, "max/min characterization halves", criterion5},
      {6, "non-dictatorial witness rule evidence", criterion6},
      {7, "dictatorial classification and mean counterexample", criterion7},
      {8, "DSL equivalence and structural independence", criterion8},
      {9, "determinism and parallelism", criterion9},
      {10, "property suite on seeded random profiles", criterion10},
  };
  int failures = 0;
  for (auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string note;
    bool ok = false;
    try {
      ok = c.run(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("criterion %2d: %s — %s (%s; %.0f ms)\n", c.id, ok ? "PASS" : "FAIL",
                c.title.c_str(), note.c_str(), ms);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
