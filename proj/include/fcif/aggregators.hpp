#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fcif/errors.hpp"
#include "fcif/profile.hpp"
#include "fcif/value.hpp"

namespace fcif {

// A named aggregation rule. `entry` computes a single output degree and is
// the hot path of falsification search; `full` evaluates the whole
// membership function. Both are pure and total on valid profiles.
struct Fcif {
  std::string name;
  std::function<Value(const Profile&, int)> entry;
  std::function<MembershipFunction(const Profile&)> full;

  MembershipFunction operator()(const Profile& p) const { return full(p); }
};

inline Fcif make_columnwise(std::string name, std::function<Value(const Profile&, int)> entry) {
  Fcif f;
  f.name = std::move(name);
  f.entry = entry;
  f.full = [entry](const Profile& p) {
    std::vector<Value> out;
    out.reserve(p.n());
    for (int i = 1; i <= p.n(); ++i) out.push_back(entry(p, i));
    return MembershipFunction(std::move(out));
  };
  return f;
}

// Each agent self-classifies: f(i) = p_i(i).
inline Value eval_liberal_entry(const Profile& p, int i) { return p.at(i, i); }

inline MembershipFunction eval_liberal(const Profile& p) {
  std::vector<Value> out;
  out.reserve(p.n());
  for (int i = 1; i <= p.n(); ++i) out.push_back(p.at(i, i));
  return MembershipFunction(std::move(out));
}

// Column-wise minimum.
inline Value eval_unanimity_entry(const Profile& p, int i) {
  Value m = p.at(1, i);
  for (int j = 2; j <= p.n(); ++j) {
    if (p.at(j, i) < m) m = p.at(j, i);
  }
  return m;
}

inline MembershipFunction eval_unanimity(const Profile& p) {
  std::vector<Value> out;
  out.reserve(p.n());
  for (int i = 1; i <= p.n(); ++i) out.push_back(eval_unanimity_entry(p, i));
  return MembershipFunction(std::move(out));
}

// Column-wise maximum.
inline Value eval_inclusive_entry(const Profile& p, int i) {
  Value m = p.at(1, i);
  for (int j = 2; j <= p.n(); ++j) {
    if (p.at(j, i) > m) m = p.at(j, i);
  }
  return m;
}

inline MembershipFunction eval_inclusive(const Profile& p) {
  std::vector<Value> out;
  out.reserve(p.n());
  for (int i = 1; i <= p.n(); ++i) out.push_back(eval_inclusive_entry(p, i));
  return MembershipFunction(std::move(out));
}

// Output equals the dictator's row.
inline MembershipFunction eval_dictatorial(const Profile& p, int d) {
  if (d < 1 || d > p.n()) throw IndexOutOfRange("dictator index out of range");
  std::vector<Value> out;
  out.reserve(p.n());
  for (int i = 1; i <= p.n(); ++i) out.push_back(p.at(d, i));
  return MembershipFunction(std::move(out));
}

// Column-wise exact arithmetic mean.
inline Value eval_democratic_entry(const Profile& p, int i) {
  Value sum = p.at(1, i);
  for (int j = 2; j <= p.n(); ++j) sum = sum + p.at(j, i);
  return sum / Value(p.n());
}

inline MembershipFunction eval_democratic(const Profile& p) {
  std::vector<Value> out;
  out.reserve(p.n());
  for (int i = 1; i <= p.n(); ++i) out.push_back(eval_democratic_entry(p, i));
  return MembershipFunction(std::move(out));
}

// The six-branch non-dictatorial rule, evaluated first-match top to bottom.
// Branch order matters: the all-equal branch must precede the low-majority
// branch for all-equal columns below theta, and the printed final branch is
// shadowed by the low-majority one.
inline Value eval_witness_entry(const Profile& p, int i, const Value& theta) {
  ColumnStats s = column_stats_of(p, i, theta);
  int n = p.n();
  const Value half(1, 2);
  if (s.count_high == n) return (s.min + s.max) * half;
  if (s.count_high > s.count_low) return (theta + s.max) * half;
  if (s.min == s.max) return s.min;
  if (s.count_high == s.count_low) return theta;
  if (s.count_low > s.count_high) return (theta + s.min) * half;
  return (s.min + s.max) * half;  // count_low == n; unreachable after the branch above
}

inline MembershipFunction eval_witness(const Profile& p, const Value& theta = kDefaultTheta) {
  std::vector<Value> out;
  out.reserve(p.n());
  for (int i = 1; i <= p.n(); ++i) out.push_back(eval_witness_entry(p, i, theta));
  return MembershipFunction(std::move(out));
}

struct FcifParams {
  std::optional<int> dictator;
  std::optional<Value> theta;
};

// Registry of the built-in rules. `theta` applies to the threshold-based
// witness rule only; passing a parameter a rule does not take is an error.
inline Fcif make_fcif(const std::string& name, const FcifParams& params = {}) {
  auto no_dictator = [&] {
    if (params.dictator) throw UnexpectedParameter("'" + name + "' takes no dictator parameter");
  };
  auto no_theta = [&] {
    if (params.theta) throw UnexpectedParameter("'" + name + "' takes no theta parameter");
  };
  if (name == "liberal") {
    no_dictator();
    no_theta();
    Fcif f = make_columnwise("liberal", eval_liberal_entry);
    f.full = [](const Profile& p) { return eval_liberal(p); };
    return f;
  }
  if (name == "unanimity") {
    no_dictator();
    no_theta();
    return make_columnwise("unanimity", eval_unanimity_entry);
  }
  if (name == "inclusive") {
    no_dictator();
    no_theta();
    return make_columnwise("inclusive", eval_inclusive_entry);
  }
  if (name == "democratic") {
    no_dictator();
    no_theta();
    return make_columnwise("democratic", eval_democratic_entry);
  }
  if (name == "dictatorial") {
    no_theta();
    if (!params.dictator) throw MissingParameter("'dictatorial' needs a dictator index");
    int d = *params.dictator;
    if (d < 1) throw IndexOutOfRange("dictator index must be >= 1");
    return make_columnwise("dictatorial:" + std::to_string(d),
                           [d](const Profile& p, int i) { return p.at(d, i); });
  }
  if (name == "witness") {
    no_dictator();
    Value theta = params.theta.value_or(kDefaultTheta);
    return make_columnwise("witness", [theta](const Profile& p, int i) {
      return eval_witness_entry(p, i, theta);
    });
  }
  throw UnknownFcif("unknown FCIF: '" + name + "'");
}

// Parses registry strings such as "dictatorial:2". DSL-backed names
// ("dsl:<path>", "dsl-name:<id>") are resolved by the caller, which owns
// file access; this helper handles the built-ins only.
inline Fcif make_fcif_from_spec(const std::string& spec, const Value& theta = kDefaultTheta) {
  FcifParams params;
  std::string name = spec;
  if (auto colon = spec.find(':'); colon != std::string::npos && spec.rfind("dsl", 0) != 0) {
    name = spec.substr(0, colon);
    std::string arg = spec.substr(colon + 1);
    try {
      size_t pos = 0;
      int d = std::stoi(arg, &pos);
      if (pos != arg.size()) throw BadInput("");
      params.dictator = d;
    } catch (const std::exception&) {
      throw BadInput("bad parameter in FCIF name: '" + spec + "'");
    }
  }
  if (name == "witness") params.theta = theta;
  return make_fcif(name, params);
}

inline std::vector<std::string> builtin_fcif_names() {
  return {"liberal", "unanimity", "inclusive", "dictatorial:<d>", "democratic", "witness"};
}

}  // namespace fcif
