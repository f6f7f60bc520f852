#pragma once

#include <atomic>
#include <chrono>
#include <climits>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "fcif/aggregators.hpp"
#include "fcif/errors.hpp"
#include "fcif/profile.hpp"
#include "fcif/value.hpp"

namespace fcif {

enum class AxiomId { FMON, FSMON, FC, SYM, FSYM, I, FI, L, FL, EL1, EL2, FEL1, FEL2 };

inline const std::vector<AxiomId>& all_axioms() {
  static const std::vector<AxiomId> k = {
      AxiomId::FMON, AxiomId::FSMON, AxiomId::FC,  AxiomId::SYM,  AxiomId::FSYM,
      AxiomId::I,    AxiomId::FI,    AxiomId::L,   AxiomId::FL,   AxiomId::EL1,
      AxiomId::EL2,  AxiomId::FEL1,  AxiomId::FEL2};
  return k;
}

inline std::string axiom_name(AxiomId a) {
  switch (a) {
    case AxiomId::FMON: return "FMON";
    case AxiomId::FSMON: return "FSMON";
    case AxiomId::FC: return "FC";
    case AxiomId::SYM: return "SYM";
    case AxiomId::FSYM: return "FSYM";
    case AxiomId::I: return "I";
    case AxiomId::FI: return "FI";
    case AxiomId::L: return "L";
    case AxiomId::FL: return "FL";
    case AxiomId::EL1: return "EL1";
    case AxiomId::EL2: return "EL2";
    case AxiomId::FEL1: return "FEL1";
    case AxiomId::FEL2: return "FEL2";
  }
  return "?";
}

inline AxiomId axiom_from_string(const std::string& s) {
  for (AxiomId a : all_axioms()) {
    if (axiom_name(a) == s) return a;
  }
  throw BadInput("unknown axiom: '" + s + "'");
}

// ---------------------------------------------------------------------------
// Witness structures. Each axiom is a predicate over one of these shapes.

// P and after differ in exactly one cell (row, col); the monitored agent is
// the cell's column.
struct Perturbation {
  Profile before;
  Profile after;
  int row = 0;
  int col = 0;
  bool operator==(const Perturbation&) const = default;
};

struct SingleProfile {
  Profile p;
  bool operator==(const SingleProfile&) const = default;
};

// p satisfies the (fuzzy-)symmetry conditions for agents j and k.
struct SymmetricPair {
  Profile p;
  int j = 0;
  int k = 0;
  bool operator==(const SymmetricPair&) const = default;
};

// For I: column j of p equals column j of q. For FI: bucket patterns agree.
struct ColumnPair {
  Profile p;
  Profile q;
  int j = 0;
  bool operator==(const ColumnPair&) const = default;
};

using Witness = std::variant<Perturbation, SingleProfile, SymmetricPair, ColumnPair>;

enum class WitnessKind { Perturbation, SingleProfile, SymmetricPair, ColumnPair };

inline WitnessKind witness_kind_for(AxiomId a) {
  switch (a) {
    case AxiomId::FMON:
    case AxiomId::FSMON:
      return WitnessKind::Perturbation;
    case AxiomId::SYM:
    case AxiomId::FSYM:
      return WitnessKind::SymmetricPair;
    case AxiomId::I:
    case AxiomId::FI:
      return WitnessKind::ColumnPair;
    default:
      return WitnessKind::SingleProfile;
  }
}

namespace detail {

template <class T>
const T& expect_witness(const Witness& w, const char* axiom) {
  const T* got = std::get_if<T>(&w);
  if (!got) throw WitnessShapeMismatch(std::string("wrong witness shape for ") + axiom);
  return *got;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Axiom predicates. True iff the axiom's consequent holds on the witness.

inline bool axiom_holds(const Fcif& F, AxiomId a, const Witness& w, const Value& theta) {
  switch (a) {
    case AxiomId::FMON:
    case AxiomId::FSMON: {
      const auto& pw = detail::expect_witness<Perturbation>(w, axiom_name(a).c_str());
      Value base = F.entry(pw.before, pw.col);
      Value moved = F.entry(pw.after, pw.col);
      bool increased = pw.after.at(pw.row, pw.col) > pw.before.at(pw.row, pw.col);
      if (a == AxiomId::FMON) return increased ? moved >= base : moved <= base;
      return increased ? moved > base : moved < base;
    }
    case AxiomId::FC: {
      const auto& sw = detail::expect_witness<SingleProfile>(w, "FC");
      MembershipFunction f = F.full(sw.p);
      for (int j = 1; j <= sw.p.n(); ++j) {
        ColumnStats s = column_stats_of(sw.p, j, theta);
        if (f.at(j) < s.min || f.at(j) > s.max) return false;
      }
      return true;
    }
    case AxiomId::SYM: {
      const auto& sw = detail::expect_witness<SymmetricPair>(w, "SYM");
      return F.entry(sw.p, sw.j) == F.entry(sw.p, sw.k);
    }
    case AxiomId::FSYM: {
      const auto& sw = detail::expect_witness<SymmetricPair>(w, "FSYM");
      return is_high(F.entry(sw.p, sw.j), theta) == is_high(F.entry(sw.p, sw.k), theta);
    }
    case AxiomId::I: {
      const auto& cw = detail::expect_witness<ColumnPair>(w, "I");
      return F.entry(cw.p, cw.j) == F.entry(cw.q, cw.j);
    }
    case AxiomId::FI: {
      const auto& cw = detail::expect_witness<ColumnPair>(w, "FI");
      return is_high(F.entry(cw.p, cw.j), theta) == is_high(F.entry(cw.q, cw.j), theta);
    }
    case AxiomId::L: {
      const auto& sw = detail::expect_witness<SingleProfile>(w, "L");
      bool some_one = false, some_zero = false;
      for (int i = 1; i <= sw.p.n(); ++i) {
        some_one = some_one || sw.p.at(i, i).is_one();
        some_zero = some_zero || sw.p.at(i, i).is_zero();
      }
      if (!some_one && !some_zero) return true;
      MembershipFunction f = F.full(sw.p);
      bool f_one = false, f_zero = false;
      for (const Value& v : f.values()) {
        f_one = f_one || v.is_one();
        f_zero = f_zero || v.is_zero();
      }
      return (!some_one || f_one) && (!some_zero || f_zero);
    }
    case AxiomId::FL: {
      const auto& sw = detail::expect_witness<SingleProfile>(w, "FL");
      bool some_hi = false, some_lo = false;
      for (int i = 1; i <= sw.p.n(); ++i) {
        if (is_high(sw.p.at(i, i), theta)) {
          some_hi = true;
        } else {
          some_lo = true;
        }
      }
      MembershipFunction f = F.full(sw.p);
      bool f_hi = false, f_lo = false;
      for (const Value& v : f.values()) {
        if (is_high(v, theta)) {
          f_hi = true;
        } else {
          f_lo = true;
        }
      }
      return (!some_hi || f_hi) && (!some_lo || f_lo);
    }
    case AxiomId::EL1:
    case AxiomId::EL2:
    case AxiomId::FEL1:
    case AxiomId::FEL2: {
      const auto& sw = detail::expect_witness<SingleProfile>(w, axiom_name(a).c_str());
      bool antecedent = false;
      for (const Value& v : sw.p.cells()) {
        switch (a) {
          case AxiomId::EL1: antecedent = antecedent || v.is_one(); break;
          case AxiomId::EL2: antecedent = antecedent || v.is_zero(); break;
          case AxiomId::FEL1: antecedent = antecedent || is_high(v, theta); break;
          default: antecedent = antecedent || !is_high(v, theta); break;
        }
        if (antecedent) break;
      }
      if (!antecedent) return true;
      MembershipFunction f = F.full(sw.p);
      for (const Value& v : f.values()) {
        switch (a) {
          case AxiomId::EL1:
            if (v.is_one()) return true;
            break;
          case AxiomId::EL2:
            if (v.is_zero()) return true;
            break;
          case AxiomId::FEL1:
            if (is_high(v, theta)) return true;
            break;
          default:
            if (!is_high(v, theta)) return true;
            break;
        }
      }
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Symmetric-pair construction: modify `base` minimally so that agents j and
// k satisfy the symmetry conditions. The k-side entries are overwritten.

inline Profile make_symmetric_pair(const Profile& base, int j, int k) {
  int n = base.n();
  if (j < 1 || j > n || k < 1 || k > n || j == k) throw IndexOutOfRange("bad symmetric pair");
  Profile p = base;
  for (int i = 1; i <= n; ++i) {
    if (i == j || i == k) continue;
    p.set(i, k, p.at(i, j));
    p.set(k, i, p.at(j, i));
  }
  p.set(k, j, p.at(j, k));
  p.set(k, k, p.at(j, j));
  return p;
}

namespace detail {

// Bucket repair: move `v` into the bucket of `target` by reflecting across
// theta; with step_den > 0 the result is snapped onto the 1/step_den grid.
inline Value repair_bucket(const Value& v, const Value& target, const Value& theta,
                           long long step_den) {
  if (is_high(v, theta) == is_high(target, theta)) return v;
  bool need_high = is_high(target, theta);
  Value two(2);
  Value r = two * theta - v;
  if (r < Value(0)) r = Value(0);
  if (r > Value(1)) r = Value(1);
  if (step_den > 0) {
    // nearest grid rank, ties up
    long long rank = (2 * r.num() * step_den + r.den()) / (2 * r.den());
    if (rank < 0) rank = 0;
    if (rank > step_den) rank = step_den;
    Value g(rank, step_den);
    while (need_high && !is_high(g, theta) && rank < step_den) g = Value(++rank, step_den);
    while (!need_high && is_high(g, theta) && rank > 0) g = Value(--rank, step_den);
    return g;
  }
  if (need_high && !is_high(r, theta)) return theta;
  if (!need_high && is_high(r, theta)) return theta * Value(1, 2);
  return r;
}

}  // namespace detail

inline Profile make_fuzzy_symmetric_pair(const Profile& base, int j, int k, const Value& theta,
                                         long long step_den = 0) {
  int n = base.n();
  if (j < 1 || j > n || k < 1 || k > n || j == k) throw IndexOutOfRange("bad symmetric pair");
  Profile p = base;
  for (int i = 1; i <= n; ++i) {
    if (i == j || i == k) continue;
    p.set(i, k, detail::repair_bucket(p.at(i, k), p.at(i, j), theta, step_den));
    p.set(k, i, detail::repair_bucket(p.at(k, i), p.at(j, i), theta, step_den));
  }
  p.set(k, j, detail::repair_bucket(p.at(k, j), p.at(j, k), theta, step_den));
  p.set(k, k, detail::repair_bucket(p.at(k, k), p.at(j, j), theta, step_den));
  return p;
}

// ---------------------------------------------------------------------------
// Search strategies and verdicts.

struct Exhaustive {
  long long step_den = 2;  // grid values k/step_den, k = 0..step_den
};

struct RandomSearch {
  long long samples = 10000;
  uint64_t seed = 42;
};

using SearchStrategy = std::variant<Exhaustive, RandomSearch>;

enum class Status { Falsified, NoViolationFound };

struct Counterexample {
  Witness witness;
  MembershipFunction out_p;                 // evaluation on the (first) profile
  std::optional<MembershipFunction> out_q;  // second profile, when the shape has one
  long long index = 0;                      // canonical position in the witness stream
};

struct CheckVerdict {
  std::string fcif;
  std::string check;
  Status status = Status::NoViolationFound;
  long long checked = 0;
  long long space = 0;
  std::optional<long long> step_den;
  std::optional<long long> samples;
  std::optional<uint64_t> seed;
  double elapsed_ms = 0.0;
  std::optional<Counterexample> counterexample;
};

// ---------------------------------------------------------------------------
// Exhaustive enumeration machinery. Profiles are ordered row-major with cell
// (1,1) most significant and values ascending; witness streams refine that
// order per shape. Everything is index-addressable, so search ranges can be
// partitioned across workers with a deterministic merge.

namespace detail {

inline long long checked_mul(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  if (a > LLONG_MAX / b) throw SearchSpaceTooLarge("witness space exceeds 2^63");
  return a * b;
}

inline long long checked_pow(long long base, long long exp) {
  long long r = 1;
  for (long long k = 0; k < exp; ++k) r = checked_mul(r, base);
  return r;
}

struct GridSpec {
  long long m = 2;  // step denominator
  Value theta;
  int first_high = 0;  // smallest rank with rank/m >= theta
  std::vector<Value> vals;

  GridSpec(long long step_den, const Value& th) : m(step_den), theta(th) {
    if (m < 1) throw BadInput("grid step denominator must be >= 1");
    vals.reserve(m + 1);
    for (long long k = 0; k <= m; ++k) vals.emplace_back(k, m);
    // ceil(theta * m / 1) over exact rationals
    long long t = (theta.num() * m + theta.den() - 1) / theta.den();
    if (t < 0) t = 0;
    if (t > m + 1) t = m + 1;
    first_high = static_cast<int>(t);
  }

  int levels() const { return static_cast<int>(m) + 1; }
  long long profiles(int n) const { return checked_pow(levels(), static_cast<long long>(n) * n); }
  long long bucket_size(int rank) const {
    return rank >= first_high ? m + 1 - first_high : first_high;
  }
};

// Odometer over the n*n cells; keeps digits and the materialized profile in
// sync so incrementing touches only the cells that change.
struct ProfileOdometer {
  const GridSpec* grid;
  int n;
  std::vector<int> digits;
  Profile p;

  ProfileOdometer(const GridSpec& g, int n_agents)
      : grid(&g), n(n_agents), digits(static_cast<size_t>(n_agents) * n_agents, 0), p(n_agents) {
    for (size_t c = 0; c < digits.size(); ++c) set_cell(c, 0);
  }

  void set_cell(size_t c, int rank) {
    digits[c] = rank;
    p.mutable_cells()[c] = grid->vals[rank];
  }

  void init_from(long long g) {
    int L = grid->levels();
    for (size_t c = digits.size(); c-- > 0;) {
      set_cell(c, static_cast<int>(g % L));
      g /= L;
    }
  }

  bool advance() {
    int L = grid->levels();
    for (size_t c = digits.size(); c-- > 0;) {
      if (digits[c] + 1 < L) {
        set_cell(c, digits[c] + 1);
        return true;
      }
      set_cell(c, 0);
    }
    return false;
  }
};

inline std::vector<std::pair<int, int>> agent_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int j = 1; j <= n; ++j) {
    for (int k = j + 1; k <= n; ++k) pairs.emplace_back(j, k);
  }
  return pairs;
}

// Witnesses per profile, by shape. ColumnPair/FI varies per profile, so it
// takes the profile's digit vector.
inline long long per_profile_count(WitnessKind kind, AxiomId a, int n, const GridSpec& grid,
                                   const std::vector<int>* digits = nullptr) {
  long long cells = static_cast<long long>(n) * n;
  switch (kind) {
    case WitnessKind::SingleProfile:
      return 1;
    case WitnessKind::Perturbation:
      return checked_mul(cells, grid.m);
    case WitnessKind::SymmetricPair:
      return static_cast<long long>(n) * (n - 1) / 2;
    case WitnessKind::ColumnPair: {
      long long free_cells = checked_pow(grid.levels(), cells - n);
      if (a == AxiomId::I) return checked_mul(static_cast<long long>(n), free_cells);
      long long total = 0;
      for (int j = 1; j <= n; ++j) {
        long long block = free_cells;
        for (int r = 0; r < n; ++r) {
          int rank = (*digits)[static_cast<size_t>(r) * n + (j - 1)];
          block = checked_mul(block, grid.bucket_size(rank));
        }
        total += block;
      }
      return total;
    }
  }
  return 0;
}

inline long long exhaustive_space(AxiomId a, int n, const GridSpec& grid) {
  WitnessKind kind = witness_kind_for(a);
  long long G = grid.profiles(n);
  switch (kind) {
    case WitnessKind::SingleProfile:
      return G;
    case WitnessKind::Perturbation:
      return checked_mul(G, per_profile_count(kind, a, n, grid));
    case WitnessKind::SymmetricPair:
      return checked_mul(G, per_profile_count(kind, a, n, grid));
    case WitnessKind::ColumnPair: {
      long long cells = static_cast<long long>(n) * n;
      long long free_cells = checked_pow(grid.levels(), cells - n);
      if (a == AxiomId::I) return checked_mul(G, checked_mul(static_cast<long long>(n), free_cells));
      // sum over profiles factorizes: per column, sum of bucket sizes over all
      // column assignments is (sum_rank bucket_size(rank))^n
      long long S = 0;
      for (int rank = 0; rank < grid.levels(); ++rank) S += grid.bucket_size(rank);
      long long per_col = checked_pow(S, n);
      return checked_mul(static_cast<long long>(n),
                         checked_mul(checked_mul(free_cells, free_cells), per_col));
    }
  }
  return 0;
}

// Number of witnesses attached to profiles with index < g0.
inline long long prefix_count(AxiomId a, int n, const GridSpec& grid, long long g0) {
  WitnessKind kind = witness_kind_for(a);
  if (kind != WitnessKind::ColumnPair || a == AxiomId::I) {
    return checked_mul(g0, per_profile_count(kind, a, n, grid));
  }
  long long total = 0;
  ProfileOdometer odo(grid, n);
  for (long long g = 0; g < g0; ++g) {
    total += per_profile_count(kind, a, n, grid, &odo.digits);
    odo.advance();
  }
  return total;
}

struct ScanHit {
  long long index = -1;  // global witness index
};

// Periodic poll interval for the shared early-exit bound.
constexpr long long kPollEvery = 8192;

template <class Body>
std::optional<ScanHit> scan_profiles(const GridSpec& grid, int n, long long g0, long long g1,
                                     Body&& body) {
  if (g0 >= g1) return std::nullopt;
  ProfileOdometer odo(grid, n);
  odo.init_from(g0);
  for (long long g = g0; g < g1; ++g) {
    if (auto hit = body(odo, g)) return hit;
    odo.advance();
  }
  return std::nullopt;
}

// One shape-specific scan over profiles [g0, g1). `base` is the witness index
// of the first witness of profile g0. `best` is the smallest violating index
// found by any worker so far; scanning past it is pointless.
inline std::optional<ScanHit> scan_exhaustive(const Fcif& F, AxiomId a, int n,
                                              const GridSpec& grid, long long g0, long long g1,
                                              long long base, std::atomic<long long>& best) {
  WitnessKind kind = witness_kind_for(a);
  const Value& theta = grid.theta;
  long long idx = base;
  long long since_poll = 0;
  auto bail = [&](long long at) {
    since_poll += kPollEvery;
    return best.load(std::memory_order_relaxed) < at;
  };

  switch (kind) {
    case WitnessKind::SingleProfile: {
      Witness w = SingleProfile{Profile(n)};
      auto& sp = std::get<SingleProfile>(w);
      return scan_profiles(grid, n, g0, g1, [&](ProfileOdometer& odo, long long g) -> std::optional<ScanHit> {
        if ((g - g0) % kPollEvery == 0 && best.load(std::memory_order_relaxed) < idx) {
          return ScanHit{LLONG_MAX};  // dominated; stop without a hit
        }
        sp.p = odo.p;
        if (!axiom_holds(F, a, w, theta)) return ScanHit{idx};
        ++idx;
        return std::nullopt;
      });
    }

    case WitnessKind::Perturbation: {
      Witness w = Perturbation{Profile(n), Profile(n), 1, 1};
      auto& pw = std::get<Perturbation>(w);
      return scan_profiles(grid, n, g0, g1, [&](ProfileOdometer& odo, long long) -> std::optional<ScanHit> {
        if (best.load(std::memory_order_relaxed) < idx) return ScanHit{LLONG_MAX};
        pw.before = odo.p;
        pw.after = odo.p;
        size_t cells = odo.digits.size();
        for (size_t c = 0; c < cells; ++c) {
          pw.row = static_cast<int>(c) / n + 1;
          pw.col = static_cast<int>(c) % n + 1;
          int cur = odo.digits[c];
          for (int alt = 0; alt < grid.levels(); ++alt) {
            if (alt == cur) continue;  // ascending ranks = decreases first, then increases
            pw.after.mutable_cells()[c] = grid.vals[alt];
            if (!axiom_holds(F, a, w, theta)) return ScanHit{idx};
            ++idx;
          }
          pw.after.mutable_cells()[c] = grid.vals[cur];
        }
        return std::nullopt;
      });
    }

    case WitnessKind::SymmetricPair: {
      auto pairs = agent_pairs(n);
      if (pairs.empty()) return std::nullopt;
      Witness w = SymmetricPair{Profile(n), 1, 2};
      auto& sw = std::get<SymmetricPair>(w);
      bool fuzzy = a == AxiomId::FSYM;
      return scan_profiles(grid, n, g0, g1, [&](ProfileOdometer& odo, long long) -> std::optional<ScanHit> {
        if (best.load(std::memory_order_relaxed) < idx) return ScanHit{LLONG_MAX};
        for (auto [j, k] : pairs) {
          sw.j = j;
          sw.k = k;
          sw.p = fuzzy ? make_fuzzy_symmetric_pair(odo.p, j, k, theta, grid.m)
                       : make_symmetric_pair(odo.p, j, k);
          if (!axiom_holds(F, a, w, theta)) return ScanHit{idx};
          ++idx;
        }
        return std::nullopt;
      });
    }

    case WitnessKind::ColumnPair: {
      // Inner odometer over q's cells: column-j cells are pinned (I) or range
      // over the matching bucket (FI); all other cells range over the grid.
      bool fuzzy = a == AxiomId::FI;
      Witness w = ColumnPair{Profile(n), Profile(n), 1};
      auto& cw = std::get<ColumnPair>(w);
      size_t cells = static_cast<size_t>(n) * n;
      std::vector<int> lo(cells), hi(cells), digit(cells);
      return scan_profiles(grid, n, g0, g1, [&](ProfileOdometer& odo, long long) -> std::optional<ScanHit> {
        if (best.load(std::memory_order_relaxed) < idx) return ScanHit{LLONG_MAX};
        cw.p = odo.p;
        for (int j = 1; j <= n; ++j) {
          cw.j = j;
          for (size_t c = 0; c < cells; ++c) {
            bool in_col_j = static_cast<int>(c % n) + 1 == j;
            if (!in_col_j) {
              lo[c] = 0;
              hi[c] = static_cast<int>(grid.m);
            } else if (!fuzzy) {
              lo[c] = hi[c] = odo.digits[c];
            } else if (odo.digits[c] >= grid.first_high) {
              lo[c] = grid.first_high;
              hi[c] = static_cast<int>(grid.m);
            } else {
              lo[c] = 0;
              hi[c] = grid.first_high - 1;
            }
            digit[c] = lo[c];
            cw.q.mutable_cells()[c] = grid.vals[lo[c]];
          }
          Value fp = F.entry(cw.p, j);
          bool bp = is_high(fp, theta);
          long long scanned = 0;
          while (true) {
            Value fq = F.entry(cw.q, j);
            bool bad = fuzzy ? is_high(fq, theta) != bp : !(fq == fp);
            if (bad) return ScanHit{idx};
            ++idx;
            if (++scanned % kPollEvery == 0 && best.load(std::memory_order_relaxed) < idx) {
              return ScanHit{LLONG_MAX};
            }
            size_t c = cells;
            bool carried = true;
            while (c-- > 0) {
              if (digit[c] + 1 <= hi[c]) {
                ++digit[c];
                cw.q.mutable_cells()[c] = grid.vals[digit[c]];
                carried = false;
                break;
              }
              digit[c] = lo[c];
              cw.q.mutable_cells()[c] = grid.vals[lo[c]];
            }
            if (carried) break;
          }
        }
        return std::nullopt;
      });
    }
  }
  return std::nullopt;
}

// Re-materializes the witness at a global stream index. Used once per
// verdict, so a linear walk over profile blocks is fine.
inline Witness exhaustive_witness_at(AxiomId a, int n, const GridSpec& grid, long long target) {
  WitnessKind kind = witness_kind_for(a);
  ProfileOdometer odo(grid, n);
  long long G = grid.profiles(n);
  long long base = 0;
  for (long long g = 0; g < G; ++g) {
    long long block =
        per_profile_count(kind, a, n, grid, kind == WitnessKind::ColumnPair ? &odo.digits : nullptr);
    if (target < base + block) {
      long long local = target - base;
      switch (kind) {
        case WitnessKind::SingleProfile:
          return SingleProfile{odo.p};
        case WitnessKind::Perturbation: {
          long long per_cell = grid.m;
          size_t c = static_cast<size_t>(local / per_cell);
          int slot = static_cast<int>(local % per_cell);
          int cur = odo.digits[c];
          int alt = slot >= cur ? slot + 1 : slot;
          Perturbation pw{odo.p, odo.p, static_cast<int>(c) / n + 1, static_cast<int>(c) % n + 1};
          pw.after.mutable_cells()[c] = grid.vals[alt];
          return pw;
        }
        case WitnessKind::SymmetricPair: {
          auto pairs = agent_pairs(n);
          auto [j, k] = pairs[static_cast<size_t>(local)];
          Profile sym = a == AxiomId::FSYM
                            ? make_fuzzy_symmetric_pair(odo.p, j, k, grid.theta, grid.m)
                            : make_symmetric_pair(odo.p, j, k);
          return SymmetricPair{sym, j, k};
        }
        case WitnessKind::ColumnPair: {
          bool fuzzy = a == AxiomId::FI;
          size_t cells = static_cast<size_t>(n) * n;
          for (int j = 1; j <= n; ++j) {
            std::vector<int> lo(cells), hi(cells);
            long long jblock = 1;
            for (size_t c = 0; c < cells; ++c) {
              bool in_col_j = static_cast<int>(c % n) + 1 == j;
              if (!in_col_j) {
                lo[c] = 0;
                hi[c] = static_cast<int>(grid.m);
              } else if (!fuzzy) {
                lo[c] = hi[c] = odo.digits[c];
              } else if (odo.digits[c] >= grid.first_high) {
                lo[c] = grid.first_high;
                hi[c] = static_cast<int>(grid.m);
              } else {
                lo[c] = 0;
                hi[c] = grid.first_high - 1;
              }
              jblock = checked_mul(jblock, hi[c] - lo[c] + 1);
            }
            if (local >= jblock) {
              local -= jblock;
              continue;
            }
            Profile q(n);
            for (size_t c = cells; c-- > 0;) {
              long long radix = hi[c] - lo[c] + 1;
              q.mutable_cells()[c] = grid.vals[lo[c] + static_cast<int>(local % radix)];
              local /= radix;
            }
            return ColumnPair{odo.p, q, j};
          }
          throw Error("witness index inconsistent with stream layout");
        }
      }
    }
    base += block;
    odo.advance();
  }
  throw IndexOutOfRange("witness index past end of stream");
}

// ---------------------------------------------------------------------------
// Seeded random witnesses: each stream index owns an independent generator
// state, so samples are reproducible and order/partitioning free.

struct SplitMix {
  uint64_t state;
  explicit SplitMix(uint64_t s) : state(s) {}
  uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t k) { return next() % k; }
};

constexpr long long kRandomGrid = 100;  // random cells are drawn from {k/100}

inline SplitMix rng_for(uint64_t seed, long long index) {
  SplitMix boot(seed ^ (0xD1B54A32D192ED03ULL * static_cast<uint64_t>(index + 1)));
  boot.next();
  return boot;
}

inline Profile random_profile(SplitMix& rng, int n) {
  Profile p(n);
  for (Value& v : p.mutable_cells()) v = Value(static_cast<long long>(rng.below(kRandomGrid + 1)), kRandomGrid);
  return p;
}

inline Witness random_witness_at(AxiomId a, int n, uint64_t seed, const Value& theta,
                                 long long index) {
  SplitMix rng = rng_for(seed, index);
  WitnessKind kind = witness_kind_for(a);
  switch (kind) {
    case WitnessKind::SingleProfile:
      return SingleProfile{random_profile(rng, n)};
    case WitnessKind::Perturbation: {
      Profile before = random_profile(rng, n);
      size_t c = static_cast<size_t>(rng.below(static_cast<uint64_t>(n) * n));
      Profile after = before;
      long long cur = before.cells()[c].num() * (kRandomGrid / before.cells()[c].den());
      long long alt = static_cast<long long>(rng.below(kRandomGrid + 1));
      if (alt == cur) alt = (alt + 1) % (kRandomGrid + 1);
      after.mutable_cells()[c] = Value(alt, kRandomGrid);
      return Perturbation{std::move(before), std::move(after), static_cast<int>(c) / n + 1,
                          static_cast<int>(c) % n + 1};
    }
    case WitnessKind::SymmetricPair: {
      Profile base = random_profile(rng, n);
      auto pairs = agent_pairs(n);
      auto [j, k] = pairs[static_cast<size_t>(rng.below(pairs.size()))];
      Profile sym = a == AxiomId::FSYM ? make_fuzzy_symmetric_pair(base, j, k, theta, kRandomGrid)
                                       : make_symmetric_pair(base, j, k);
      return SymmetricPair{std::move(sym), j, k};
    }
    case WitnessKind::ColumnPair: {
      Profile p = random_profile(rng, n);
      int j = static_cast<int>(rng.below(static_cast<uint64_t>(n))) + 1;
      Profile q = p;
      long long t = (theta.num() * kRandomGrid + theta.den() - 1) / theta.den();
      if (t < 0) t = 0;
      if (t > kRandomGrid + 1) t = kRandomGrid + 1;
      for (int r = 1; r <= n; ++r) {
        for (int c = 1; c <= n; ++c) {
          if (c == j) {
            if (a == AxiomId::I) continue;
            long long rank = p.at(r, c).num() * (kRandomGrid / p.at(r, c).den());
            long long fresh;
            if (rank >= t) {
              fresh = t + static_cast<long long>(rng.below(static_cast<uint64_t>(kRandomGrid + 1 - t)));
            } else {
              fresh = static_cast<long long>(rng.below(static_cast<uint64_t>(t)));
            }
            q.set(r, c, Value(fresh, kRandomGrid));
          } else {
            q.set(r, c, Value(static_cast<long long>(rng.below(kRandomGrid + 1)), kRandomGrid));
          }
        }
      }
      return ColumnPair{std::move(p), std::move(q), j};
    }
  }
  throw Error("unreachable witness kind");
}

template <class MakeWitness>
std::optional<ScanHit> scan_indexed(long long i0, long long i1, std::atomic<long long>& best,
                                    MakeWitness&& check_at) {
  for (long long i = i0; i < i1; ++i) {
    if ((i - i0) % kPollEvery == 0 && best.load(std::memory_order_relaxed) < i) {
      return ScanHit{LLONG_MAX};
    }
    if (!check_at(i)) return ScanHit{i};
  }
  return std::nullopt;
}

// Partitions [0, extent) into contiguous worker ranges; merge = min index.
template <class RunRange>
long long run_partitioned(long long extent, int jobs, RunRange&& run) {
  std::atomic<long long> best{LLONG_MAX};
  if (jobs < 1) jobs = 1;
  if (jobs == 1 || extent < 2) {
    run(0, extent, best);
  } else {
    long long chunk = (extent + jobs - 1) / jobs;
    std::vector<std::thread> workers;
    for (int t = 0; t < jobs; ++t) {
      long long lo = t * chunk;
      long long hi = std::min(extent, lo + chunk);
      if (lo >= hi) break;
      workers.emplace_back([&, lo, hi] { run(lo, hi, best); });
    }
    for (auto& th : workers) th.join();
  }
  long long found = best.load();
  return found == LLONG_MAX ? -1 : found;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public stream API.

inline long long witness_count(AxiomId a, int n, const SearchStrategy& s, const Value& theta) {
  if (witness_kind_for(a) == WitnessKind::SymmetricPair && n < 2) return 0;
  if (const auto* ex = std::get_if<Exhaustive>(&s)) {
    detail::GridSpec grid(ex->step_den, theta);
    return detail::exhaustive_space(a, n, grid);
  }
  return std::get<RandomSearch>(s).samples;
}

inline Witness witness_at(AxiomId a, int n, const SearchStrategy& s, const Value& theta,
                          long long index) {
  if (const auto* ex = std::get_if<Exhaustive>(&s)) {
    detail::GridSpec grid(ex->step_den, theta);
    return detail::exhaustive_witness_at(a, n, grid, index);
  }
  const auto& rs = std::get<RandomSearch>(s);
  return detail::random_witness_at(a, n, rs.seed, theta, index);
}

template <class Fn>
void for_each_witness(AxiomId a, int n, const SearchStrategy& s, const Value& theta, Fn&& fn) {
  long long count = witness_count(a, n, s, theta);
  for (long long i = 0; i < count; ++i) fn(witness_at(a, n, s, theta, i));
}

// ---------------------------------------------------------------------------
// Falsification driver: scan the witness stream for `a`, report the
// canonical-first violation or the exact number of witnesses checked.

inline CheckVerdict falsify(const Fcif& F, AxiomId a, int n, const SearchStrategy& s,
                            const Value& theta = kDefaultTheta, int jobs = 1) {
  auto start = std::chrono::steady_clock::now();
  CheckVerdict v;
  v.fcif = F.name;
  v.check = axiom_name(a);
  if (const auto* ex = std::get_if<Exhaustive>(&s)) {
    v.step_den = ex->step_den;
  } else {
    const auto& rs = std::get<RandomSearch>(s);
    v.samples = rs.samples;
    v.seed = rs.seed;
  }

  long long space = witness_count(a, n, s, theta);
  v.space = space;
  long long found = -1;

  if (space > 0) {
    if (const auto* ex = std::get_if<Exhaustive>(&s)) {
      detail::GridSpec grid(ex->step_den, theta);
      long long G = grid.profiles(n);
      found = detail::run_partitioned(G, jobs, [&](long long g0, long long g1,
                                                   std::atomic<long long>& best) {
        long long base = detail::prefix_count(a, n, grid, g0);
        auto hit = detail::scan_exhaustive(F, a, n, grid, g0, g1, base, best);
        if (hit && hit->index != LLONG_MAX) {
          long long prev = best.load();
          while (hit->index < prev && !best.compare_exchange_weak(prev, hit->index)) {
          }
        }
      });
    } else {
      const auto& rs = std::get<RandomSearch>(s);
      found = detail::run_partitioned(rs.samples, jobs, [&](long long i0, long long i1,
                                                            std::atomic<long long>& best) {
        auto hit = detail::scan_indexed(i0, i1, best, [&](long long i) {
          Witness w = detail::random_witness_at(a, n, rs.seed, theta, i);
          return axiom_holds(F, a, w, theta);
        });
        if (hit && hit->index != LLONG_MAX) {
          long long prev = best.load();
          while (hit->index < prev && !best.compare_exchange_weak(prev, hit->index)) {
          }
        }
      });
    }
  }

  if (found >= 0) {
    v.status = Status::Falsified;
    v.checked = found + 1;
    Counterexample ce;
    ce.index = found;
    ce.witness = witness_at(a, n, s, theta, found);
    std::visit(
        [&](const auto& w) {
          using T = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<T, Perturbation>) {
            ce.out_p = F.full(w.before);
            ce.out_q = F.full(w.after);
          } else if constexpr (std::is_same_v<T, ColumnPair>) {
            ce.out_p = F.full(w.p);
            ce.out_q = F.full(w.q);
          } else if constexpr (std::is_same_v<T, SymmetricPair>) {
            ce.out_p = F.full(w.p);
          } else {
            ce.out_p = F.full(w.p);
          }
        },
        ce.witness);
    v.counterexample = std::move(ce);
  } else {
    v.status = Status::NoViolationFound;
    v.checked = space;
  }
  v.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return v;
}

inline std::vector<CheckVerdict> check_axiom_suite(const Fcif& F, const std::vector<AxiomId>& axioms,
                                                   int n, const SearchStrategy& s,
                                                   const Value& theta = kDefaultTheta,
                                                   int jobs = 1) {
  std::vector<CheckVerdict> out;
  out.reserve(axioms.size());
  for (AxiomId a : axioms) out.push_back(falsify(F, a, n, s, theta, jobs));
  return out;
}

// ---------------------------------------------------------------------------
// Domain/range classification: does F map every profile of `dc` into `rc`?

inline CheckVerdict classify(const Fcif& F, DomainClass dc, RangeClass rc, int n,
                             const SearchStrategy& s, const Value& theta = kDefaultTheta,
                             int jobs = 1) {
  auto start = std::chrono::steady_clock::now();
  CheckVerdict v;
  v.fcif = F.name;
  v.check = domain_class_name(dc) + "->" + range_class_name(rc);

  auto test_profile = [&](const Profile& p) -> bool {
    // true = keep scanning; only in-domain profiles can violate
    if (!in_domain_class(p, dc, theta)) return true;
    return in_range_class(F.full(p), rc, theta);
  };

  long long found = -1;
  if (const auto* ex = std::get_if<Exhaustive>(&s)) {
    v.step_den = ex->step_den;
    detail::GridSpec grid(ex->step_den, theta);
    long long G = grid.profiles(n);
    v.space = G;
    found = detail::run_partitioned(G, jobs, [&](long long g0, long long g1,
                                                 std::atomic<long long>& best) {
      auto hit = detail::scan_profiles(grid, n, g0, g1,
                                       [&](detail::ProfileOdometer& odo, long long g) -> std::optional<detail::ScanHit> {
        if ((g - g0) % detail::kPollEvery == 0 && best.load(std::memory_order_relaxed) < g) {
          return detail::ScanHit{LLONG_MAX};
        }
        if (!test_profile(odo.p)) return detail::ScanHit{g};
        return std::nullopt;
      });
      if (hit && hit->index != LLONG_MAX) {
        long long prev = best.load();
        while (hit->index < prev && !best.compare_exchange_weak(prev, hit->index)) {
        }
      }
    });
    // checked = in-domain profiles actually evaluated (up to the violation)
    long long limit = found >= 0 ? found + 1 : G;
    long long in_domain = 0;
    detail::scan_profiles(grid, n, 0, limit,
                          [&](detail::ProfileOdometer& odo, long long) -> std::optional<detail::ScanHit> {
      if (in_domain_class(odo.p, dc, theta)) ++in_domain;
      return std::nullopt;
    });
    v.checked = in_domain;
    if (found >= 0) {
      detail::GridSpec g2(ex->step_den, theta);
      Counterexample ce;
      ce.index = found;
      Profile bad = detail::ProfileOdometer(g2, n).p;
      detail::ProfileOdometer odo(g2, n);
      odo.init_from(found);
      ce.witness = SingleProfile{odo.p};
      ce.out_p = F.full(odo.p);
      v.counterexample = std::move(ce);
      v.status = Status::Falsified;
    }
  } else {
    const auto& rs = std::get<RandomSearch>(s);
    v.samples = rs.samples;
    v.seed = rs.seed;
    v.space = rs.samples;
    found = detail::run_partitioned(rs.samples, jobs, [&](long long i0, long long i1,
                                                          std::atomic<long long>& best) {
      auto hit = detail::scan_indexed(i0, i1, best, [&](long long i) {
        detail::SplitMix rng = detail::rng_for(rs.seed, i);
        return test_profile(detail::random_profile(rng, n));
      });
      if (hit && hit->index != LLONG_MAX) {
        long long prev = best.load();
        while (hit->index < prev && !best.compare_exchange_weak(prev, hit->index)) {
        }
      }
    });
    long long limit = found >= 0 ? found + 1 : rs.samples;
    long long in_domain = 0;
    for (long long i = 0; i < limit; ++i) {
      detail::SplitMix rng = detail::rng_for(rs.seed, i);
      if (in_domain_class(detail::random_profile(rng, n), dc, theta)) ++in_domain;
    }
    v.checked = in_domain;
    if (found >= 0) {
      detail::SplitMix rng = detail::rng_for(rs.seed, found);
      Profile bad = detail::random_profile(rng, n);
      Counterexample ce;
      ce.index = found;
      ce.out_p = F.full(bad);
      ce.witness = SingleProfile{std::move(bad)};
      v.counterexample = std::move(ce);
      v.status = Status::Falsified;
    }
  }
  v.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return v;
}

}  // namespace fcif
