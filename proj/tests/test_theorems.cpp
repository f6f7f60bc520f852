#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <map>
#include <string>

#include "fcif/report_json.hpp"
#include "fcif/theorems.hpp"

using namespace fcif;
using namespace fcif::theorems;

TEST_CASE("registry lists sixteen scenarios") {
  auto infos = list_scenarios();
  REQUIRE(infos.size() == 16);
  std::vector<std::string> ids;
  for (const auto& i : infos) ids.push_back(i.id);
  CHECK(ids == std::vector<std::string>{"E1", "E2", "E3", "E4", "T1", "C1", "C2", "C3", "T2", "C4",
                                        "T3a", "T3bc", "T4", "E5", "E6", "MEAN"});
}

TEST_CASE("unknown scenario is an error") {
  CHECK_THROWS_AS(run_scenario("T9"), UnknownScenario);
}

TEST_CASE("fixture-scale scenarios reproduce") {
  for (const char* id : {"E1", "E2", "E3", "E4", "C3", "E6"}) {
    ScenarioReport rep = run_scenario(id);
    INFO(scenario_report_to_json(rep).dump(2));
    CHECK(rep.status == ScenarioStatus::Reproduced);
  }
}

TEST_CASE("the witness-rule fixture is a pre-registered discrepancy") {
  ScenarioReport rep = run_scenario("E5");
  CHECK(rep.status == ScenarioStatus::KnownDiscrepancy);
  for (const auto& c : rep.checks) CHECK(c.ok);
}

TEST_CASE("reports are deterministic modulo timing") {
  ScenarioReport a = run_scenario("T2");
  ScenarioReport b = run_scenario("T2");
  CHECK(scenario_report_to_json(a, false) == scenario_report_to_json(b, false));
  RunConfig jobs8;
  jobs8.jobs = 8;
  ScenarioReport c = run_scenario("T2", jobs8);
  CHECK(scenario_report_to_json(a, false) == scenario_report_to_json(c, false));
}

#ifdef FCIF_CLI_PATH
static int run_cli(const std::string& args) {
  int rc = std::system((std::string(FCIF_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

TEST_CASE("CLI exit-code contract") {
  std::string fixtures = FCIF_FIXTURE_DIR;
  CHECK(run_cli("eval --fcif liberal --profile " + fixtures + "/example1.json") == 0);
  CHECK(run_cli("check --fcif liberal --axioms FMON,FC,FI,FL --n 2 --exhaustive 1/4") == 0);
  CHECK(run_cli("check --fcif democratic --axioms FI --n 2 --exhaustive 1/4") == 1);
  CHECK(run_cli("classify --fcif unanimity --domain 'P***' --range 'F***' --n 3 --exhaustive 1/2") ==
        1);
  CHECK(run_cli("theorems --run E6") == 0);
  CHECK(run_cli("theorems --run E5") == 0);  // known discrepancy still exits 0
  CHECK(run_cli("theorems --run T9") == 2);
  CHECK(run_cli("eval --fcif nonesuch --profile " + fixtures + "/example1.json") == 2);
  CHECK(run_cli("eval --fcif liberal --profile " + fixtures + "/no_such_file.json") == 2);
  CHECK(run_cli("eval --fcif liberal") == 2);  // missing required flag
  // a dictator index beyond the profile size is an evaluation error
  CHECK(run_cli("eval --fcif dictatorial:3 --profile " + fixtures + "/example1.json") == 3);
  CHECK(run_cli("eval --fcif dsl:" + fixtures + "/rules/dict2.fcif --profile " + fixtures +
                "/example1.json") == 0);
}

TEST_CASE("CLI resolves dsl-name rules via the rules directory") {
  std::string fixtures = FCIF_FIXTURE_DIR;
  int rc = std::system(("FCIF_RULES_DIR=" + fixtures + "/rules " + FCIF_CLI_PATH +
                        " eval --fcif dsl-name:ex4b --profile " + fixtures +
                        "/example1.json >/dev/null 2>&1")
                           .c_str());
  CHECK(WEXITSTATUS(rc) == 0);
}
#endif
