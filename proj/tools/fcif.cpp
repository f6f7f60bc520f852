// Command-line front end: evaluate rules on profile files, run axiom
// falsification searches and domain/range classification, replay the scenario
// registry, and list the registered names.
//
// Exit codes: 0 success / nothing falsified; 1 a search falsified its claim;
// 2 usage or input-parse errors; 3 evaluation errors.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fcif/aggregators.hpp"
#include "fcif/axioms.hpp"
#include "fcif/dsl.hpp"
#include "fcif/errors.hpp"
#include "fcif/io.hpp"
#include "fcif/report_json.hpp"
#include "fcif/theorems.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitUsage = 2;
constexpr int kExitEval = 3;

fcif::Value default_theta() {
  if (const char* env = std::getenv("FCIF_DEFAULT_THETA")) {
    return fcif::parse_value(env);
  }
  return fcif::kDefaultTheta;
}

fcif::Value resolve_theta(const std::string& flag, const std::optional<fcif::Value>& from_file) {
  if (!flag.empty()) return fcif::parse_value(flag);
  if (from_file) return *from_file;
  return default_theta();
}

// Grid step flag: a unit fraction like "1/4" (or "0.25"); returns the
// denominator m of the step 1/m.
long long parse_step(const std::string& s) {
  fcif::Value v = fcif::parse_value(s);
  if (v.num() != 1 || v.den() < 1) {
    throw fcif::BadInput("--exhaustive/--step expects a unit fraction like 1/4, got '" + s + "'");
  }
  return v.den();
}

// Directories searched for `dsl-name:<id>` definitions, in order.
std::vector<std::string> rules_dirs() {
  std::vector<std::string> dirs;
  if (const char* env = std::getenv("FCIF_RULES_DIR")) dirs.push_back(env);
  dirs.push_back("rules");
  dirs.push_back("fixtures/rules");
  return dirs;
}

fcif::Fcif resolve_fcif(const std::string& name, const fcif::Value& theta) {
  using namespace fcif;
  if (name.rfind("dsl:", 0) == 0) {
    std::string path = name.substr(4);
    auto defs = dsl::parse_defs(read_file(path));
    if (defs.size() != 1) {
      throw BadInput("'" + path + "' defines " + std::to_string(defs.size()) +
                     " rules; address one with dsl-name:<identifier>");
    }
    return dsl::to_fcif(defs.front(), theta);
  }
  if (name.rfind("dsl-name:", 0) == 0) {
    std::string id = name.substr(9);
    for (const auto& dir : rules_dirs()) {
      std::error_code ec;
      if (!std::filesystem::is_directory(dir, ec)) continue;
      for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".fcif") continue;
        for (const auto& def : dsl::parse_defs(read_file(entry.path().string()))) {
          if (def.name == id) return dsl::to_fcif(def, theta);
        }
      }
    }
    throw UnknownFcif("no rule named '" + id + "' found in the rules directories");
  }
  return make_fcif_from_spec(name, theta);
}

fcif::SearchStrategy make_strategy(const std::string& exhaustive, long long random_samples,
                                   uint64_t seed, int n) {
  if (!exhaustive.empty() && random_samples > 0) {
    throw fcif::BadInput("--exhaustive and --random are mutually exclusive");
  }
  if (random_samples > 0) return fcif::RandomSearch{random_samples, seed};
  if (!exhaustive.empty()) return fcif::Exhaustive{parse_step(exhaustive)};
  return fcif::Exhaustive{n >= 3 ? 2 : 4};  // default scale: step 1/2 at n>=3, 1/4 below
}

std::string status_str(fcif::Status s) {
  return s == fcif::Status::Falsified ? "Falsified" : "NoViolationFound";
}

void print_verdict_table(const std::vector<fcif::CheckVerdict>& verdicts) {
  for (const auto& v : verdicts) {
    std::ostringstream line;
    line << v.fcif << "  " << v.check << "  " << status_str(v.status) << "  checked=" << v.checked
         << "/" << v.space;
    if (v.step_den) line << "  step=1/" << *v.step_den;
    if (v.samples) line << "  samples=" << *v.samples << " seed=" << *v.seed;
    line << "  elapsed_ms=" << v.elapsed_ms;
    std::cout << line.str() << "\n";
    if (v.counterexample) {
      std::cout << "  counterexample: " << fcif::witness_to_json(v.counterexample->witness).dump()
                << "\n  output: " << fcif::membership_to_json(v.counterexample->out_p).dump();
      if (v.counterexample->out_q) {
        std::cout << "  output': " << fcif::membership_to_json(*v.counterexample->out_q).dump();
      }
      std::cout << "\n";
    }
  }
}

int report_verdicts(const std::vector<fcif::CheckVerdict>& verdicts, const std::string& format) {
  if (format == "json") {
    fcif::json arr = fcif::json::array();
    for (const auto& v : verdicts) arr.push_back(fcif::verdict_to_json(v));
    std::cout << arr.dump(2) << "\n";
  } else {
    print_verdict_table(verdicts);
  }
  for (const auto& v : verdicts) {
    if (v.status == fcif::Status::Falsified) return kExitFalsified;
  }
  return kExitOk;
}

struct CommonFlags {
  std::string fcif_name;
  std::string theta;
  std::string exhaustive;
  long long random_samples = 0;
  uint64_t seed = 42;
  int n = 3;
  int jobs = 1;
  std::string format = "table";
};

void add_search_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--fcif", f.fcif_name, "rule name (see `list`)")->required();
  cmd->add_option("--n", f.n, "society size")->check(CLI::PositiveNumber);
  cmd->add_option("--exhaustive", f.exhaustive, "exhaustive grid step (unit fraction, e.g. 1/4)");
  cmd->add_option("--random", f.random_samples, "random search with this many samples");
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--theta", f.theta, "membership threshold (default 1/2)");
  cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--format", f.format, "output format")
      ->check(CLI::IsMember({"json", "table"}));
}

int run(int argc, char** argv) {
  CLI::App app{"fuzzy group identification toolkit"};
  app.require_subcommand(1);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a rule on a profile file");
  std::string eval_fcif, eval_profile, eval_theta;
  eval_cmd->add_option("--fcif", eval_fcif, "rule name")->required();
  eval_cmd->add_option("--profile", eval_profile, "profile file (JSON or CSV)")->required();
  eval_cmd->add_option("--theta", eval_theta, "membership threshold (default 1/2)");

  // check
  auto* check_cmd = app.add_subcommand("check", "falsification search for axioms");
  CommonFlags chk;
  std::string axioms_flag = "all";
  add_search_flags(check_cmd, chk);
  check_cmd->add_option("--axioms", axioms_flag, "comma list of axioms, or 'all'");

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "domain/range classification search");
  CommonFlags cls;
  std::string domain_flag, range_flag;
  add_search_flags(classify_cmd, cls);
  classify_cmd->add_option("--domain", domain_flag, "P*|P**|P***|all")->required();
  classify_cmd->add_option("--range", range_flag, "F*|F**|F***|all")->required();

  // theorems
  auto* thm_cmd = app.add_subcommand("theorems", "replay the scenario registry");
  std::string run_flag = "all", thm_step, thm_theta, thm_format = "table";
  int thm_n = 0, thm_jobs = 1;
  uint64_t thm_seed = 42;
  thm_cmd->add_option("--run", run_flag, "scenario id, comma list, or 'all'");
  thm_cmd->add_option("--n", thm_n, "society size for the small-scale grid checks");
  thm_cmd->add_option("--step", thm_step, "grid step for the small-scale checks (unit fraction)");
  thm_cmd->add_option("--seed", thm_seed, "random seed");
  thm_cmd->add_option("--theta", thm_theta, "membership threshold (default 1/2)");
  thm_cmd->add_option("--jobs", thm_jobs, "worker threads")->check(CLI::PositiveNumber);
  thm_cmd->add_option("--format", thm_format, "output format")
      ->check(CLI::IsMember({"json", "table"}));

  // list
  auto* list_cmd = app.add_subcommand("list", "list rules, axioms, classes and scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (eval_cmd->parsed()) {
    fcif::LoadedProfile lp = fcif::load_profile(eval_profile);
    fcif::Value theta = resolve_theta(eval_theta, lp.theta);
    fcif::Fcif F = resolve_fcif(eval_fcif, theta);
    fcif::MembershipFunction out = F.full(lp.profile);
    if (F.name == "witness" && lp.profile == fcif::theorems::fixtures::example5()) {
      std::cerr << "warning: on this fixture the printed six-branch rule gives f(2)=0.25, "
                   "while the source example prints f(2)=0.35 (known discrepancy); "
                   "the rule's value is reported\n";
    }
    std::cout << fcif::membership_to_json(out).dump() << "\n";
    return kExitOk;
  }

  if (check_cmd->parsed()) {
    fcif::Value theta = resolve_theta(chk.theta, std::nullopt);
    fcif::Fcif F = resolve_fcif(chk.fcif_name, theta);
    std::vector<fcif::AxiomId> axioms;
    if (axioms_flag == "all") {
      axioms = fcif::all_axioms();
    } else {
      std::stringstream ss(axioms_flag);
      for (std::string tok; std::getline(ss, tok, ',');) {
        axioms.push_back(fcif::axiom_from_string(tok));
      }
    }
    auto strategy = make_strategy(chk.exhaustive, chk.random_samples, chk.seed, chk.n);
    auto verdicts = fcif::check_axiom_suite(F, axioms, chk.n, strategy, theta, chk.jobs);
    return report_verdicts(verdicts, chk.format);
  }

  if (classify_cmd->parsed()) {
    fcif::Value theta = resolve_theta(cls.theta, std::nullopt);
    fcif::Fcif F = resolve_fcif(cls.fcif_name, theta);
    std::vector<fcif::DomainClass> domains;
    std::vector<fcif::RangeClass> ranges;
    if (domain_flag == "all") {
      domains = {fcif::DomainClass::PStar, fcif::DomainClass::PStarStar,
                 fcif::DomainClass::PStarStarStar};
    } else {
      domains = {fcif::domain_class_from_string(domain_flag)};
    }
    if (range_flag == "all") {
      ranges = {fcif::RangeClass::FStar, fcif::RangeClass::FStarStar,
                fcif::RangeClass::FStarStarStar};
    } else {
      ranges = {fcif::range_class_from_string(range_flag)};
    }
    auto strategy = make_strategy(cls.exhaustive, cls.random_samples, cls.seed, cls.n);
    std::vector<fcif::CheckVerdict> verdicts;
    for (auto dc : domains) {
      for (auto rc : ranges) {
        verdicts.push_back(fcif::classify(F, dc, rc, cls.n, strategy, theta, cls.jobs));
      }
    }
    return report_verdicts(verdicts, cls.format);
  }

  if (thm_cmd->parsed()) {
    fcif::theorems::RunConfig cfg;
    cfg.theta = resolve_theta(thm_theta, std::nullopt);
    cfg.seed = thm_seed;
    cfg.jobs = thm_jobs;
    if (thm_n > 0) cfg.n_small = thm_n;
    if (!thm_step.empty()) cfg.step_small = parse_step(thm_step);
    std::vector<fcif::theorems::ScenarioReport> reports;
    if (run_flag == "all") {
      reports = fcif::theorems::run_all(cfg);
    } else {
      std::stringstream ss(run_flag);
      for (std::string tok; std::getline(ss, tok, ',');) {
        reports.push_back(fcif::theorems::run_scenario(tok, cfg));
      }
    }
    if (thm_format == "json") {
      std::cout << fcif::scenario_reports_to_json(reports).dump(2) << "\n";
    } else {
      for (const auto& rep : reports) {
        std::cout << rep.id << "  " << fcif::theorems::status_name(rep.status)
                  << "  checks=" << rep.checks.size() << "  elapsed_ms=" << rep.elapsed_ms << "\n";
        for (const auto& c : rep.checks) {
          std::cout << "  [" << (c.ok ? "ok" : "FAIL") << "] " << c.label;
          if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
          std::cout << "\n";
        }
      }
    }
    for (const auto& rep : reports) {
      if (rep.status == fcif::theorems::ScenarioStatus::CounterexampleFound) {
        return kExitFalsified;
      }
    }
    return kExitOk;
  }

  if (list_cmd->parsed()) {
    std::cout << "rules:\n";
    for (const auto& name : fcif::builtin_fcif_names()) std::cout << "  " << name << "\n";
    std::cout << "  dsl:<file-path>\n  dsl-name:<identifier>\n";
    std::cout << "axioms:\n ";
    for (auto a : fcif::all_axioms()) std::cout << " " << fcif::axiom_name(a);
    std::cout << "\nclasses:\n  P* P** P*** (domain)  F* F** F*** (range)\n";
    std::cout << "scenarios:\n";
    for (const auto& info : fcif::theorems::list_scenarios()) {
      std::cout << "  " << info.id << "  [" << fcif::theorems::evidence_name(info.evidence)
                << "]  " << info.description << "\n";
    }
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fcif::UnknownScenario& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fcif::DslError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fcif::MalformedNumber& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fcif::OutOfUnitInterval& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fcif::BadInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fcif::UnknownFcif& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fcif::MissingParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fcif::UnexpectedParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fcif::Error& e) {
    // evaluation-time failures (index out of range, division by zero,
    // out-of-unit results, overflow, oversized search spaces)
    std::cerr << "error: " << e.what() << "\n";
    return kExitEval;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEval;
  }
}
