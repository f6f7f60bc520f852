#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fcif/axioms.hpp"
#include "fcif/errors.hpp"
#include "fcif/profile.hpp"
#include "fcif/value.hpp"

namespace fcif {

using nlohmann::json;

struct LoadedProfile {
  Profile profile;
  std::optional<Value> theta;
};

inline json rows_to_json(const Profile& p) {
  json rows = json::array();
  for (int i = 1; i <= p.n(); ++i) {
    json row = json::array();
    for (int j = 1; j <= p.n(); ++j) row.push_back(p.at(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json profile_to_json(const Profile& p, const std::optional<Value>& theta = std::nullopt) {
  json out;
  out["n"] = p.n();
  if (theta) out["theta"] = theta->str();
  out["rows"] = rows_to_json(p);
  return out;
}

// {"n": 3, "theta": "0.5", "rows": [["0.2","0.3","0.9"], ...]} — entries are
// strings so values stay exact; "n" and "theta" are optional.
inline LoadedProfile profile_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array()) {
    throw BadInput("profile JSON needs a \"rows\" array");
  }
  std::vector<std::vector<Value>> rows;
  for (const auto& jrow : j["rows"]) {
    if (!jrow.is_array()) throw BadInput("profile rows must be arrays");
    std::vector<Value> row;
    for (const auto& cell : jrow) {
      if (!cell.is_string()) throw BadInput("profile entries must be value strings");
      row.push_back(parse_value(cell.get<std::string>()));
    }
    rows.push_back(std::move(row));
  }
  LoadedProfile out{Profile::from_rows(rows), std::nullopt};
  if (j.contains("n") && j["n"].get<int>() != out.profile.n()) {
    throw BadInput("profile \"n\" does not match the row count");
  }
  if (j.contains("theta")) out.theta = parse_value(j["theta"].get<std::string>());
  return out;
}

inline LoadedProfile profile_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw BadInput(std::string("bad profile JSON: ") + e.what());
  }
  return profile_from_json(j);
}

// CSV: n lines, n comma-separated value strings per line.
inline Profile profile_from_csv(const std::string& text) {
  std::vector<std::vector<Value>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<Value> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      size_t a = cell.find_first_not_of(" \t");
      size_t b = cell.find_last_not_of(" \t");
      if (a == std::string::npos) throw BadInput("empty CSV cell");
      row.push_back(parse_value(cell.substr(a, b - a + 1)));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw BadInput("empty CSV profile");
  return Profile::from_rows(rows);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BadInput("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Loads JSON or CSV by sniffing the first non-space character.
inline LoadedProfile load_profile(const std::string& path) {
  std::string text = read_file(path);
  size_t at = text.find_first_not_of(" \t\r\n");
  if (at != std::string::npos && text[at] == '{') return profile_from_json_text(text);
  return LoadedProfile{profile_from_csv(text), std::nullopt};
}

inline json membership_to_json(const MembershipFunction& m) {
  json values = json::array();
  for (const Value& v : m.values()) values.push_back(v.str());
  return json{{"values", values}};
}

inline MembershipFunction membership_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw BadInput(std::string("bad membership JSON: ") + e.what());
  }
  if (!j.contains("values") || !j["values"].is_array()) {
    throw BadInput("membership JSON needs a \"values\" array");
  }
  std::vector<Value> values;
  for (const auto& cell : j["values"]) values.push_back(parse_value(cell.get<std::string>()));
  return MembershipFunction(std::move(values));
}

inline json witness_to_json(const Witness& w) {
  json out;
  std::visit(
      [&](const auto& ww) {
        using T = std::decay_t<decltype(ww)>;
        if constexpr (std::is_same_v<T, Perturbation>) {
          out["kind"] = "perturbation";
          out["profile"] = rows_to_json(ww.before);
          out["profile_prime"] = rows_to_json(ww.after);
          out["cell"] = json::array({ww.row, ww.col});
        } else if constexpr (std::is_same_v<T, SingleProfile>) {
          out["kind"] = "profile";
          out["profile"] = rows_to_json(ww.p);
        } else if constexpr (std::is_same_v<T, SymmetricPair>) {
          out["kind"] = "symmetric_pair";
          out["profile"] = rows_to_json(ww.p);
          out["j"] = ww.j;
          out["k"] = ww.k;
        } else {
          out["kind"] = "column_pair";
          out["profile"] = rows_to_json(ww.p);
          out["profile_prime"] = rows_to_json(ww.q);
          out["j"] = ww.j;
        }
      },
      w);
  return out;
}

inline json verdict_to_json(const CheckVerdict& v) {
  json out;
  out["fcif"] = v.fcif;
  bool classification = v.check.find("->") != std::string::npos;
  out[classification ? "classification" : "axiom"] = v.check;
  out["status"] = v.status == Status::Falsified ? "falsified" : "no_violation_found";
  out["checked"] = v.checked;
  out["space"] = v.space;
  if (v.step_den) out["step"] = "1/" + std::to_string(*v.step_den);
  if (v.samples) out["samples"] = *v.samples;
  if (v.seed) out["seed"] = *v.seed;
  out["elapsed_ms"] = v.elapsed_ms;
  if (v.counterexample) {
    json ce;
    ce["index"] = v.counterexample->index;
    ce["witness"] = witness_to_json(v.counterexample->witness);
    ce["output"] = membership_to_json(v.counterexample->out_p)["values"];
    if (v.counterexample->out_q) {
      ce["output_prime"] = membership_to_json(*v.counterexample->out_q)["values"];
    }
    out["counterexample"] = std::move(ce);
  }
  return out;
}

}  // namespace fcif
