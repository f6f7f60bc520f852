#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fcif/aggregators.hpp"
#include "fcif/axioms.hpp"
#include "fcif/dsl.hpp"
#include "fcif/errors.hpp"
#include "fcif/profile.hpp"

namespace fcif::theorems {

enum class EvidenceKind { Exact, Exhaustive, OneSided };
enum class ScenarioStatus { Reproduced, CounterexampleFound, KnownDiscrepancy };

struct CheckRecord {
  std::string label;
  bool ok = false;
  long long witnesses = 0;
  std::string detail;
};

struct ScenarioReport {
  std::string id;
  ScenarioStatus status = ScenarioStatus::Reproduced;
  std::vector<CheckRecord> checks;
  double elapsed_ms = 0.0;
};

// Scales: exhaustive axiom suites run on small societies at a fine grid;
// the non-dictatorial witness rule and the classification checks run at
// n = 3 on the coarse grid so a full pass stays fast.
struct RunConfig {
  int n_small = 2;
  long long step_small = 4;
  int n_large = 3;
  long long step_large = 2;
  uint64_t seed = 42;
  Value theta = kDefaultTheta;
  int jobs = 1;
};

struct ScenarioInfo {
  std::string id;
  std::string description;
  std::string reference;
  EvidenceKind evidence;
};

// ---------------------------------------------------------------------------
// Fixture profiles (the worked examples' matrices).

namespace fixtures {

inline Profile from_strings(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Value>> v;
  for (const auto& row : rows) {
    std::vector<Value> out;
    for (const auto& s : row) out.push_back(parse_value(s));
    v.push_back(std::move(out));
  }
  return Profile::from_rows(v);
}

inline Profile example1() { return from_strings({{"0.1", "0.9"}, {"0.6", "0.4"}}); }
inline Profile example2() { return from_strings({{"0.1", "0.6"}, {"0.6", "0.7"}}); }
inline Profile example2_prime() { return from_strings({{"0.45", "0.6"}, {"0.95", "0.7"}}); }
inline Profile example5() {
  return from_strings({{"0.2", "0.3", "0.9"}, {"0.9", "0.9", "1"}, {"1", "0", "0.3"}});
}
inline Profile example6() {
  return from_strings({{"0", "0.2", "0.3"}, {"1", "0", "0.5"}, {"0.3", "0.8", "0"}});
}

// Example rules that are not built-ins. The first Example 4 rule tests a
// global existential over all cells, which the expression language cannot
// state; it lives here as a native rule.
inline Fcif example1_rule() {
  return dsl::to_fcif(dsl::parse("fcif ex1b { f(i) = if i = 1 "
                                 "then 0.2*p(1,1) + 0.2*p(2,1) "
                                 "else 0.1*p(1,2) + 0.1*p(2,2) }"));
}

// Quarter weights would attain exactly theta at an all-ones row ((1+1)/4 =
// 0.5), flipping the output bucket between bucket-equal columns; the lighter
// weights keep every output strictly below theta, so the row-reading rule is
// bucket-insensitive to off-column cells as intended.
inline Fcif example2_rule() {
  return dsl::to_fcif(dsl::parse("fcif ex2b { f(i) = if i = 1 "
                                 "then 0.2*p(1,1) + 0.2*p(1,2) "
                                 "else 0.2*p(2,1) + 0.2*p(2,2) }"));
}

inline Fcif example3_rule_crisp() {
  return dsl::to_fcif(dsl::parse("fcif ex3a { f(i) = if self = 1 then 1 else 0 }"));
}

inline Fcif example3_rule_fuzzy() {
  return dsl::to_fcif(dsl::parse("fcif ex3b { f(i) = if self >= theta then 0.9 else 0.1 }"));
}

inline Fcif example4_rule_crisp() {
  return make_columnwise("ex4a", [](const Profile& p, int i) {
    if (i != 1) return Value(1);
    for (const Value& v : p.cells()) {
      if (v.is_zero()) return Value(0);
    }
    return Value(1);
  });
}

inline Fcif example4_rule_fuzzy() {
  return make_columnwise("ex4b", [](const Profile&, int i) {
    return i == 1 ? Value(9, 10) : Value(1, 10);
  });
}

}  // namespace fixtures

// ---------------------------------------------------------------------------
// Scenario implementations.

namespace detail {

inline std::string mf_str(const MembershipFunction& m) {
  std::string s = "(";
  for (int i = 1; i <= m.n(); ++i) {
    if (i > 1) s += ", ";
    s += m.at(i).str();
  }
  return s + ")";
}

struct Runner {
  const RunConfig& cfg;
  ScenarioReport& rep;

  void record(const std::string& label, bool ok, long long witnesses = 0,
              const std::string& detail = {}) {
    rep.checks.push_back(CheckRecord{label, ok, witnesses, detail});
  }

  void expect_status(const Fcif& F, AxiomId a, int n, long long step, Status want) {
    CheckVerdict v = falsify(F, a, n, Exhaustive{step}, cfg.theta, cfg.jobs);
    bool ok = v.status == want;
    std::string label = F.name + " " + (want == Status::NoViolationFound ? "passes " : "fails ") +
                        axiom_name(a) + " (n=" + std::to_string(n) + ", step 1/" +
                        std::to_string(step) + ")";
    std::string detail;
    if (v.status == Status::Falsified && v.counterexample) {
      detail = "counterexample at index " + std::to_string(v.counterexample->index);
    }
    record(label, ok, v.checked, detail);
  }

  void expect_passes(const Fcif& F, const std::vector<AxiomId>& axioms, int n, long long step) {
    for (AxiomId a : axioms) expect_status(F, a, n, step, Status::NoViolationFound);
  }

  void expect_fails(const Fcif& F, const std::vector<AxiomId>& axioms, int n, long long step) {
    for (AxiomId a : axioms) expect_status(F, a, n, step, Status::Falsified);
  }

  void expect_classify(const Fcif& F, DomainClass dc, RangeClass rc, int n, long long step,
                       Status want) {
    CheckVerdict v = classify(F, dc, rc, n, Exhaustive{step}, cfg.theta, cfg.jobs);
    std::string label = F.name + " maps " + domain_class_name(dc) + "->" + range_class_name(rc) +
                        (want == Status::NoViolationFound ? " (expected to hold)" : " (expected to fail)");
    record(label, v.status == want, v.checked);
  }

  void expect_equal(const std::string& label, const MembershipFunction& got,
                    const std::vector<std::string>& want) {
    std::vector<Value> w;
    for (const auto& s : want) w.push_back(parse_value(s));
    bool ok = got == MembershipFunction(w);
    record(label, ok, 0, "got " + mf_str(got));
  }
};

inline void scenario_e1(const RunConfig& cfg, ScenarioReport& rep) {
  Runner r{cfg, rep};
  Fcif dem = make_fcif("democratic");
  Profile p = fixtures::example1();
  r.expect_equal("mean on the Example 1 profile", eval_democratic(p), {"0.35", "0.65"});
  Witness w = SymmetricPair{p, 1, 2};
  r.record("Example 1 profile is a fuzzy-symmetric pair violating FSYM for the mean",
           !axiom_holds(dem, AxiomId::FSYM, w, cfg.theta));
  r.expect_status(dem, AxiomId::SYM, cfg.n_small, cfg.step_small, Status::NoViolationFound);
  r.expect_status(dem, AxiomId::FSYM, cfg.n_small, cfg.step_small, Status::Falsified);
  Fcif ex1b = fixtures::example1_rule();
  r.expect_status(ex1b, AxiomId::FSYM, 2, cfg.step_small, Status::NoViolationFound);
  r.expect_status(ex1b, AxiomId::SYM, 2, cfg.step_small, Status::Falsified);
}

inline void scenario_e2(const RunConfig& cfg, ScenarioReport& rep) {
  Runner r{cfg, rep};
  Fcif dem = make_fcif("democratic");
  Profile p = fixtures::example2();
  Profile q = fixtures::example2_prime();
  r.expect_equal("mean on the Example 2 profile", eval_democratic(p), {"0.35", "0.65"});
  r.expect_equal("mean on the perturbed Example 2 profile", eval_democratic(q), {"0.7", "0.65"});
  Witness w = ColumnPair{p, q, 1};
  r.record("Example 2 pair violates FI for the mean", !axiom_holds(dem, AxiomId::FI, w, cfg.theta));
  r.expect_status(dem, AxiomId::I, cfg.n_small, cfg.step_small, Status::NoViolationFound);
  r.expect_status(dem, AxiomId::FI, cfg.n_small, cfg.step_small, Status::Falsified);
  Fcif ex2b = fixtures::example2_rule();
  auto deps = dsl::dependencies(dsl::parse("fcif ex2b { f(i) = if i = 1 "
                                           "then 0.2*p(1,1) + 0.2*p(1,2) "
                                           "else 0.2*p(2,1) + 0.2*p(2,2) }"),
                                2, 1);
  r.record("Example 2 rule reads cells outside the target column",
           deps.count({1, 2}) == 1 &&
               !dsl::is_structurally_independent(dsl::parse("fcif ex2b { f(i) = if i = 1 "
                                                            "then 0.2*p(1,1) + 0.2*p(1,2) "
                                                            "else 0.2*p(2,1) + 0.2*p(2,2) }"),
                                                 2));
  r.expect_status(ex2b, AxiomId::FI, 2, 2, Status::NoViolationFound);
  r.expect_status(ex2b, AxiomId::I, 2, 2, Status::Falsified);
}

inline void scenario_e3(const RunConfig& cfg, ScenarioReport& rep) {
  Runner r{cfg, rep};
  Fcif crisp = fixtures::example3_rule_crisp();
  Fcif fuzzy = fixtures::example3_rule_fuzzy();
  r.expect_status(crisp, AxiomId::L, cfg.n_small, cfg.step_small, Status::NoViolationFound);
  r.expect_status(crisp, AxiomId::FL, cfg.n_small, cfg.step_small, Status::Falsified);
  r.expect_status(fuzzy, AxiomId::FL, cfg.n_small, cfg.step_small, Status::NoViolationFound);
  r.expect_status(fuzzy, AxiomId::L, cfg.n_small, cfg.step_small, Status::Falsified);
}

inline void scenario_e4(const RunConfig& cfg, ScenarioReport& rep) {
  Runner r{cfg, rep};
  Fcif crisp = fixtures::example4_rule_crisp();
  Fcif fuzzy = fixtures::example4_rule_fuzzy();
  r.expect_passes(crisp, {AxiomId::EL1, AxiomId::EL2}, cfg.n_small, cfg.step_small);
  r.expect_status(crisp, AxiomId::FEL2, cfg.n_small, cfg.step_small, Status::Falsified);
  r.expect_passes(fuzzy, {AxiomId::FEL1, AxiomId::FEL2}, 2, cfg.step_small);
  r.expect_status(fuzzy, AxiomId::EL1, 2, cfg.step_small, Status::Falsified);
}

inline void scenario_t1(const RunConfig& cfg, ScenarioReport& rep) {
  Runner r{cfg, rep};
  Fcif lib = make_fcif("liberal");
  r.expect_passes(lib, {AxiomId::FMON, AxiomId::FC, AxiomId::FI, AxiomId::FL}, cfg.n_small,
                  cfg.step_small);
}

inline void scenario_c1(const RunConfig& cfg, ScenarioReport& rep) {
  Runner r{cfg, rep};
  Fcif lib = make_fcif("liberal");
  r.expect_passes(lib, {AxiomId::FMON, AxiomId::FC, AxiomId::I, AxiomId::L}, cfg.n_small,
                  cfg.step_small);
}

inline void scenario_c2(const RunConfig& cfg, ScenarioReport& rep) {
  Runner r{cfg, rep};
  Fcif lib = make_fcif("liberal");
  r.expect_passes(lib, {AxiomId::SYM, AxiomId::FSYM}, cfg.n_small, cfg.step_small);
}

inline void scenario_c3(const RunConfig& cfg, ScenarioReport& rep) {
  Runner r{cfg, rep};
  Fcif lib = make_fcif("liberal");
  CheckVerdict v = falsify(lib, AxiomId::FSMON, cfg.n_small, Exhaustive{2}, cfg.theta, cfg.jobs);
  bool falsified = v.status == Status::Falsified;
  bool certified = falsified && v.counterexample &&
                   !axiom_holds(lib, AxiomId::FSMON, v.counterexample->witness, cfg.theta);
  r.record("liberal fails FSMON with a self-certifying counterexample", falsified && certified,
           v.checked);
}

inline void scenario_t2(const RunConfig& cfg, ScenarioReport& rep) {
  Runner r{cfg, rep};
  Fcif inc = make_fcif("inclusive");
  Fcif una = make_fcif("unanimity");
  r.expect_passes(inc, {AxiomId::FMON, AxiomId::FC, AxiomId::FI, AxiomId::EL1, AxiomId::FEL1},
                  cfg.n_small, 2);
  r.expect_fails(inc, {AxiomId::EL2, AxiomId::FEL2}, cfg.n_small, 2);
  r.expect_passes(una, {AxiomId::FMON, AxiomId::FC, AxiomId::FI, AxiomId::EL2, AxiomId::FEL2},
                  cfg.n_small, 2);
  r.expect_fails(una, {AxiomId::EL1, AxiomId::FEL1}, cfg.n_small, 2);
}

inline void scenario_c4(const RunConfig& cfg, ScenarioReport& rep) {
  Runner r{cfg, rep};
  // one candidate per uniqueness half: each fails the other's liberalism
  // clause, so no rule satisfies FMON, FC, FI plus full (F)EL
  Fcif inc = make_fcif("inclusive");
  Fcif una = make_fcif("unanimity");
  r.expect_fails(inc, {AxiomId::FEL2, AxiomId::EL2}, cfg.n_small, 2);
  r.expect_fails(una, {AxiomId::FEL1, AxiomId::EL1}, cfg.n_small, 2);
  r.record("impossibility implied: the unique FEL1/EL1 rule and the unique FEL2/EL2 rule differ",
           true, 0, "reported as implied, not searched");
}

inline void scenario_t3a(const RunConfig& cfg, ScenarioReport& rep) {
  Runner r{cfg, rep};
  Fcif wit = make_fcif("witness", FcifParams{std::nullopt, cfg.theta});
  r.expect_passes(wit, {AxiomId::FC, AxiomId::FI}, cfg.n_large, cfg.step_large);
  r.expect_classify(wit, DomainClass::PStarStarStar, RangeClass::FStarStarStar, cfg.n_large,
                    cfg.step_large, Status::NoViolationFound);
  Profile ex5 = fixtures::example5();
  MembershipFunction out = wit.full(ex5);
  bool differs = true;
  for (int d = 1; d <= ex5.n(); ++d) {
    if (out == eval_dictatorial(ex5, d)) differs = false;
  }
  r.record("witness output differs from every dictator's row on the Example 5 profile", differs, 0,
           "got " + detail::mf_str(out));
}

inline void scenario_t3bc(const RunConfig& cfg, ScenarioReport& rep) {
  Runner r{cfg, rep};
  for (int d = 1; d <= cfg.n_large; ++d) {
    Fcif dict = make_fcif("dictatorial", FcifParams{d, std::nullopt});
    r.expect_classify(dict, DomainClass::PStar, RangeClass::FStar, cfg.n_large, cfg.step_large,
                      Status::NoViolationFound);
    r.expect_classify(dict, DomainClass::PStar, RangeClass::FStarStar, cfg.n_large, cfg.step_large,
                      Status::NoViolationFound);
    r.expect_classify(dict, DomainClass::PStarStar, RangeClass::FStarStar, cfg.n_large,
                      cfg.step_large, Status::NoViolationFound);
  }
  r.expect_classify(make_fcif("democratic"), DomainClass::PStarStarStar, RangeClass::FStarStar,
                    cfg.n_small, cfg.step_small, Status::Falsified);
  r.expect_classify(make_fcif("unanimity"), DomainClass::PStarStar, RangeClass::FStar, cfg.n_small,
                    2, Status::Falsified);
}

inline void scenario_t4(const RunConfig& cfg, ScenarioReport& rep) {
  Runner r{cfg, rep};
  Fcif dem = make_fcif("democratic");
  r.expect_passes(dem, {AxiomId::FC, AxiomId::I}, cfg.n_small, cfg.step_small);
  r.expect_classify(dem, DomainClass::PStarStarStar, RangeClass::FStarStar, cfg.n_small,
                    cfg.step_small, Status::Falsified);
}

inline void scenario_e5(const RunConfig& cfg, ScenarioReport& rep) {
  Runner r{cfg, rep};
  Fcif wit = make_fcif("witness", FcifParams{std::nullopt, cfg.theta});
  MembershipFunction out = wit.full(fixtures::example5());
  bool f1 = out.at(1) == parse_value("0.75");
  bool f3 = out.at(3) == parse_value("0.75");
  bool f2_formula = out.at(2) == parse_value("0.25");
  r.record("witness f(1) = 0.75 on the Example 5 profile", f1, 0, "got " + out.at(1).str());
  r.record("witness f(3) = 0.75 on the Example 5 profile", f3, 0, "got " + out.at(3).str());
  r.record("witness f(2): the printed rule gives 0.25; the worked example prints 0.35", f2_formula,
           0, "formula value " + out.at(2).str() + ", printed value 0.35");
}

inline void scenario_e6(const RunConfig& cfg, ScenarioReport& rep) {
  Runner r{cfg, rep};
  Profile ex6 = fixtures::example6();
  MembershipFunction out = eval_unanimity(ex6);
  r.expect_equal("unanimity on the Example 6 profile", out, {"0", "0", "0"});
  r.record("all-zero image lies outside F***",
           !in_range_class(out, RangeClass::FStarStarStar, cfg.theta));
  r.record("Example 6 profile lies in P***",
           in_domain_class(ex6, DomainClass::PStarStarStar, cfg.theta));
  r.expect_classify(make_fcif("unanimity"), DomainClass::PStarStarStar, RangeClass::FStarStarStar,
                    cfg.n_large, cfg.step_large, Status::Falsified);
}

inline void scenario_mean(const RunConfig& cfg, ScenarioReport& rep) {
  Runner r{cfg, rep};
  // the column min/max sandwich is exactly FC, so every built-in being a
  // per-column mean is an exhaustive FC pass
  std::vector<Fcif> rules = {make_fcif("liberal"), make_fcif("unanimity"), make_fcif("inclusive"),
                             make_fcif("democratic"),
                             make_fcif("dictatorial", FcifParams{1, std::nullopt}),
                             make_fcif("witness", FcifParams{std::nullopt, cfg.theta})};
  for (const Fcif& F : rules) {
    r.expect_status(F, AxiomId::FC, cfg.n_small, cfg.step_small, Status::NoViolationFound);
  }
  // being a mean does not force the image into F***
  Profile ex6 = fixtures::example6();
  r.record("a mean can still map a P*** profile outside F***",
           in_domain_class(ex6, DomainClass::PStarStarStar, cfg.theta) &&
               !in_range_class(eval_unanimity(ex6), RangeClass::FStarStarStar, cfg.theta));
}

struct ScenarioEntry {
  ScenarioInfo info;
  std::function<void(const RunConfig&, ScenarioReport&)> run;
};

inline const std::vector<ScenarioEntry>& registry() {
  static const std::vector<ScenarioEntry> entries = {
      {{"E1", "mean rule satisfies SYM but not FSYM; a scaled rule satisfies FSYM but not SYM",
        "Example 1", EvidenceKind::Exact},
       scenario_e1},
      {{"E2", "mean rule verifies I but not FI; a row-reading rule verifies FI but not I",
        "Example 2", EvidenceKind::Exact},
       scenario_e2},
      {{"E3", "self-opinion indicator verifies L but not FL; its threshold variant FL but not L",
        "Example 3", EvidenceKind::Exhaustive},
       scenario_e3},
      {{"E4", "zero-detecting rule verifies EL but not FEL; a constant rule FEL but not EL",
        "Example 4", EvidenceKind::Exhaustive},
       scenario_e4},
      {{"T1", "the strong liberal rule passes FMON, FC, FI and FL (uniqueness half not searchable)",
        "Theorem 1", EvidenceKind::OneSided},
       scenario_t1},
      {{"C1", "the strong liberal rule passes the crisp mix FMON, FC, I and L", "Corollary 1",
        EvidenceKind::OneSided},
       scenario_c1},
      {{"C2", "the strong liberal rule passes SYM and FSYM", "Corollary 2", EvidenceKind::OneSided},
       scenario_c2},
      {{"C3", "no rule with FSMON: the liberal rule already fails it", "Corollary 3",
        EvidenceKind::Exhaustive},
       scenario_c3},
      {{"T2", "inclusive is the FEL1/EL1 rule, unanimity the FEL2/EL2 rule, each failing the other half",
        "Theorem 2", EvidenceKind::OneSided},
       scenario_t2},
      {{"C4", "no rule passes FMON, FC, FI plus both halves of (F)EL", "Corollary 4",
        EvidenceKind::OneSided},
       scenario_c4},
      {{"T3a", "a non-dictatorial rule with FC and FI maps P*** into F***", "Theorem 3(1)",
        EvidenceKind::Exhaustive},
       scenario_t3a},
      {{"T3bc", "dictators map P*->F* and P**->F**; democratic/unanimity break the stricter ranges",
        "Theorem 3(2)(3)", EvidenceKind::OneSided},
       scenario_t3bc},
      {{"T4", "the columnwise mean passes FC and I but misses F** on P***", "Theorem 4",
        EvidenceKind::OneSided},
       scenario_t4},
      {{"E5", "witness rule on the worked 3x3 profile; printed f(2) disagrees with the rule",
        "Example 5", EvidenceKind::Exact},
       scenario_e5},
      {{"E6", "unanimity maps a P*** profile to the all-zero function outside F***", "Example 6",
        EvidenceKind::Exact},
       scenario_e6},
      {{"MEAN", "every built-in is a per-column mean; a mean need not preserve F***",
        "k-dimensional means", EvidenceKind::Exhaustive},
       scenario_mean},
  };
  return entries;
}

}  // namespace detail

inline std::vector<ScenarioInfo> list_scenarios() {
  std::vector<ScenarioInfo> out;
  for (const auto& e : detail::registry()) out.push_back(e.info);
  return out;
}

inline ScenarioReport run_scenario(const std::string& id, const RunConfig& cfg = {}) {
  for (const auto& e : detail::registry()) {
    if (e.info.id != id) continue;
    auto start = std::chrono::steady_clock::now();
    ScenarioReport rep;
    rep.id = id;
    e.run(cfg, rep);
    bool all_ok = true;
    for (const auto& c : rep.checks) all_ok = all_ok && c.ok;
    if (id == "E5") {
      // pre-registered discrepancy: the formula value for f(2) differs from
      // the printed value; the scenario fails only if f(1) or f(3) mismatch
      rep.status = all_ok ? ScenarioStatus::KnownDiscrepancy : ScenarioStatus::CounterexampleFound;
    } else {
      rep.status = all_ok ? ScenarioStatus::Reproduced : ScenarioStatus::CounterexampleFound;
    }
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return rep;
  }
  throw UnknownScenario("unknown scenario: '" + id + "'");
}

inline std::vector<ScenarioReport> run_all(const RunConfig& cfg = {}) {
  std::vector<ScenarioReport> out;
  for (const auto& e : detail::registry()) out.push_back(run_scenario(e.info.id, cfg));
  return out;
}

inline std::string status_name(ScenarioStatus s) {
  switch (s) {
    case ScenarioStatus::Reproduced:
      return "reproduced";
    case ScenarioStatus::CounterexampleFound:
      return "counterexample_found";
    default:
      return "known_discrepancy";
  }
}

inline std::string evidence_name(EvidenceKind e) {
  switch (e) {
    case EvidenceKind::Exact:
      return "exact";
    case EvidenceKind::Exhaustive:
      return "exhaustive";
    default:
      return "one_sided";
  }
}

}  // namespace fcif::theorems
