#pragma once

#include "fcif/io.hpp"
#include "fcif/theorems.hpp"

namespace fcif {

inline json scenario_report_to_json(const theorems::ScenarioReport& rep,
                                    bool include_timing = true) {
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json jc = {{"label", c.label}, {"ok", c.ok}};
    if (c.witnesses > 0) jc["witnesses"] = c.witnesses;
    if (!c.detail.empty()) jc["detail"] = c.detail;
    checks.push_back(std::move(jc));
  }
  json out = {{"id", rep.id},
              {"status", theorems::status_name(rep.status)},
              {"checks", std::move(checks)}};
  if (include_timing) out["elapsed_ms"] = rep.elapsed_ms;
  return out;
}

inline json scenario_reports_to_json(const std::vector<theorems::ScenarioReport>& reps,
                                     bool include_timing = true) {
  json out = json::array();
  for (const auto& r : reps) out.push_back(scenario_report_to_json(r, include_timing));
  return out;
}

}  // namespace fcif
