#pragma once

#include <string>
#include <vector>

#include "fcif/errors.hpp"
#include "fcif/value.hpp"

namespace fcif {

inline const Value kDefaultTheta = Value(1, 2);

enum class Bucket { Low, High };

// High iff v >= theta. The single dichotomy used by every threshold-based
// axiom and by the tie-handling of column statistics.
inline Bucket bucket_of(const Value& v, const Value& theta) {
  return v >= theta ? Bucket::High : Bucket::Low;
}

inline bool is_high(const Value& v, const Value& theta) { return v >= theta; }

// n x n opinion matrix, row-major; at(i,j) = agent i's opinion about agent j.
// All indices are 1-based, matching agent labels 1..n.
class Profile {
 public:
  Profile() : n_(0) {}
  explicit Profile(int n) : n_(n), cells_(static_cast<size_t>(n) * n) {
    if (n < 1) throw BadInput("profile needs n >= 1");
  }
  Profile(int n, std::vector<Value> cells) : n_(n), cells_(std::move(cells)) {
    if (n < 1) throw BadInput("profile needs n >= 1");
    if (cells_.size() != static_cast<size_t>(n) * n) {
      throw BadInput("profile requires exactly n*n entries");
    }
    for (const Value& v : cells_) {
      if (!v.in_unit_interval()) throw OutOfUnitInterval("profile entry out of [0,1]");
    }
  }
  static Profile from_rows(const std::vector<std::vector<Value>>& rows) {
    int n = static_cast<int>(rows.size());
    std::vector<Value> cells;
    cells.reserve(static_cast<size_t>(n) * n);
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != n) throw BadInput("profile rows must all have length n");
      for (const Value& v : row) cells.push_back(v);
    }
    return Profile(n, std::move(cells));
  }

  int n() const { return n_; }
  const Value& at(int i, int j) const { return cells_[idx(i, j)]; }
  void set(int i, int j, const Value& v) { cells_[idx(i, j)] = v; }
  const std::vector<Value>& cells() const { return cells_; }
  std::vector<Value>& mutable_cells() { return cells_; }

  friend bool operator==(const Profile& a, const Profile& b) {
    return a.n_ == b.n_ && a.cells_ == b.cells_;
  }

 private:
  size_t idx(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_) throw IndexOutOfRange("agent index out of range");
    return static_cast<size_t>(i - 1) * n_ + (j - 1);
  }
  int n_;
  std::vector<Value> cells_;
};

// Aggregate output: entry i is the degree of membership of agent i.
class MembershipFunction {
 public:
  MembershipFunction() = default;
  explicit MembershipFunction(std::vector<Value> values) : values_(std::move(values)) {
    for (const Value& v : values_) {
      if (!v.in_unit_interval()) throw ResultOutOfUnitInterval("membership degree out of [0,1]");
    }
  }
  int n() const { return static_cast<int>(values_.size()); }
  const Value& at(int i) const {
    if (i < 1 || i > n()) throw IndexOutOfRange("agent index out of range");
    return values_[static_cast<size_t>(i - 1)];
  }
  const std::vector<Value>& values() const { return values_; }

  friend bool operator==(const MembershipFunction& a, const MembershipFunction& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<Value> values_;
};

// Column i of the profile: every agent's opinion about agent i.
inline std::vector<Value> column(const Profile& p, int i) {
  if (i < 1 || i > p.n()) throw IndexOutOfRange("column index out of range");
  std::vector<Value> out;
  out.reserve(p.n());
  for (int j = 1; j <= p.n(); ++j) out.push_back(p.at(j, i));
  return out;
}

struct ColumnStats {
  Value min;
  Value max;
  int count_high = 0;
  int count_low = 0;
};

inline ColumnStats column_stats(const std::vector<Value>& values, const Value& theta) {
  if (values.empty()) throw EmptyVector("column_stats needs a non-empty vector");
  ColumnStats s;
  s.min = values.front();
  s.max = values.front();
  for (const Value& v : values) {
    if (v < s.min) s.min = v;
    if (v > s.max) s.max = v;
    if (is_high(v, theta)) {
      ++s.count_high;
    } else {
      ++s.count_low;
    }
  }
  return s;
}

// Stats of column i computed without materializing the column.
inline ColumnStats column_stats_of(const Profile& p, int i, const Value& theta) {
  ColumnStats s;
  s.min = p.at(1, i);
  s.max = s.min;
  for (int j = 1; j <= p.n(); ++j) {
    const Value& v = p.at(j, i);
    if (v < s.min) s.min = v;
    if (v > s.max) s.max = v;
    if (is_high(v, theta)) {
      ++s.count_high;
    } else {
      ++s.count_low;
    }
  }
  return s;
}

// Nested profile restrictions: Star requires each row to contain an exact 1
// and an exact 0; StarStar a value >= theta and one <= theta; StarStarStar
// only excludes all-ones and all-zeros rows.
enum class DomainClass { All, PStar, PStarStar, PStarStarStar };
enum class RangeClass { All, FStar, FStarStar, FStarStarStar };

namespace detail {

inline bool vector_in_star(const std::vector<Value>& v, int rank, const Value& theta) {
  bool has_hi = false, has_lo = false;
  bool all_one = true, all_zero = true;
  for (const Value& x : v) {
    switch (rank) {
      case 1:
        has_hi = has_hi || x.is_one();
        has_lo = has_lo || x.is_zero();
        break;
      case 2:
        has_hi = has_hi || x >= theta;
        has_lo = has_lo || x <= theta;
        break;
      default:
        all_one = all_one && x.is_one();
        all_zero = all_zero && x.is_zero();
        break;
    }
  }
  if (rank == 3) return !all_one && !all_zero;
  return has_hi && has_lo;
}

}  // namespace detail

inline bool in_domain_class(const Profile& p, DomainClass c, const Value& theta = kDefaultTheta) {
  if (c == DomainClass::All) return true;
  int rank = c == DomainClass::PStar ? 1 : c == DomainClass::PStarStar ? 2 : 3;
  for (int i = 1; i <= p.n(); ++i) {
    std::vector<Value> row;
    row.reserve(p.n());
    for (int j = 1; j <= p.n(); ++j) row.push_back(p.at(i, j));
    if (!detail::vector_in_star(row, rank, theta)) return false;
  }
  return true;
}

inline bool in_range_class(const MembershipFunction& m, RangeClass c,
                           const Value& theta = kDefaultTheta) {
  if (c == RangeClass::All) return true;
  int rank = c == RangeClass::FStar ? 1 : c == RangeClass::FStarStar ? 2 : 3;
  return detail::vector_in_star(m.values(), rank, theta);
}

inline std::string domain_class_name(DomainClass c) {
  switch (c) {
    case DomainClass::PStar:
      return "P*";
    case DomainClass::PStarStar:
      return "P**";
    case DomainClass::PStarStarStar:
      return "P***";
    default:
      return "all";
  }
}

inline std::string range_class_name(RangeClass c) {
  switch (c) {
    case RangeClass::FStar:
      return "F*";
    case RangeClass::FStarStar:
      return "F**";
    case RangeClass::FStarStarStar:
      return "F***";
    default:
      return "all";
  }
}

inline DomainClass domain_class_from_string(const std::string& s) {
  if (s == "P*" || s == "p*") return DomainClass::PStar;
  if (s == "P**" || s == "p**") return DomainClass::PStarStar;
  if (s == "P***" || s == "p***") return DomainClass::PStarStarStar;
  if (s == "all") return DomainClass::All;
  throw BadInput("unknown domain class: '" + s + "'");
}

inline RangeClass range_class_from_string(const std::string& s) {
  if (s == "F*" || s == "f*") return RangeClass::FStar;
  if (s == "F**" || s == "f**") return RangeClass::FStarStar;
  if (s == "F***" || s == "f***") return RangeClass::FStarStarStar;
  if (s == "all") return RangeClass::All;
  throw BadInput("unknown range class: '" + s + "'");
}

}  // namespace fcif
