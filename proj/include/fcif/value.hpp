#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "fcif/errors.hpp"

namespace fcif {

// Exact rational with int64 numerator/denominator, always normalized
// (gcd 1, denominator positive). Opinions and membership degrees live in
// [0,1]; intermediate arithmetic (means, DSL expressions) may leave the
// unit interval, so range checks happen at the container/API boundaries.
class Value {
 public:
  constexpr Value() : num_(0), den_(1) {}
  constexpr Value(long long integer) : num_(integer), den_(1) {}  // NOLINT(google-explicit-constructor)
  Value(long long num, long long den) { assign(num, den); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool in_unit_interval() const { return num_ >= 0 && num_ <= den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == den_; }

  friend Value operator+(const Value& a, const Value& b) {
    __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
    __int128 d = i128(a.den_) * b.den_;
    return from128(n, d);
  }
  friend Value operator-(const Value& a, const Value& b) {
    __int128 n = i128(a.num_) * b.den_ - i128(b.num_) * a.den_;
    __int128 d = i128(a.den_) * b.den_;
    return from128(n, d);
  }
  friend Value operator*(const Value& a, const Value& b) {
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Value operator/(const Value& a, const Value& b) {
    if (b.num_ == 0) throw DivisionByZero("division by zero");
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  friend bool operator==(const Value& a, const Value& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
    __int128 lhs = i128(a.num_) * b.den_;
    __int128 rhs = i128(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // Decimal text when the denominator divides 10^9, otherwise "num/den".
  // parse() accepts both forms, so str() round-trips.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    long long d = den_;
    int twos = 0, fives = 0;
    while (d % 2 == 0) {
      d /= 2;
      ++twos;
    }
    while (d % 5 == 0) {
      d /= 5;
      ++fives;
    }
    int digits = twos > fives ? twos : fives;
    if (d == 1 && digits <= 9) {
      long long scale = 1;
      for (int k = 0; k < digits; ++k) scale *= 10;
      __int128 scaled = i128(num_) * scale / den_;
      bool neg = scaled < 0;
      if (neg) scaled = -scaled;
      long long ipart = static_cast<long long>(scaled / scale);
      long long fpart = static_cast<long long>(scaled % scale);
      std::string frac = std::to_string(fpart);
      frac.insert(frac.begin(), digits - static_cast<int>(frac.size()), '0');
      while (!frac.empty() && frac.back() == '0') frac.pop_back();
      std::string out = (neg ? "-" : "") + std::to_string(ipart);
      if (!frac.empty()) out += "." + frac;
      return out;
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Nearest double, for report timing/summary output only.
  double approx() const { return static_cast<double>(num_) / static_cast<double>(den_); }

 private:
  static constexpr __int128 i128(long long v) { return static_cast<__int128>(v); }

  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Value from128(__int128 n, __int128 d) {
    if (d == 0) throw DivisionByZero("division by zero");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr __int128 kMax = INT64_MAX;
    constexpr __int128 kMin = INT64_MIN;
    if (n > kMax || n < kMin || d > kMax) {
      throw ValueOverflow("rational does not fit in 64-bit numerator/denominator");
    }
    Value v;
    v.num_ = static_cast<long long>(n);
    v.den_ = static_cast<long long>(d);
    return v;
  }

  void assign(long long num, long long den) {
    Value v = from128(num, den);
    num_ = v.num_;
    den_ = v.den_;
  }

  long long num_;
  long long den_;
};

namespace detail {

inline bool parse_ll(std::string_view s, long long& out) {
  if (s.empty() || s.size() > 18) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace detail

// Accepts `digits(.digits{1..9})?` or `int/int`; value must lie in [0,1].
inline Value parse_value(std::string_view text) {
  auto malformed = [&] { throw MalformedNumber("malformed value: '" + std::string(text) + "'"); };
  if (text.empty()) malformed();

  Value v;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    long long num = 0, den = 0;
    if (!detail::parse_ll(text.substr(0, slash), num)) malformed();
    if (!detail::parse_ll(text.substr(slash + 1), den)) malformed();
    if (den == 0) malformed();
    v = Value(num, den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view ip = text.substr(0, dot);
    std::string_view fp = text.substr(dot + 1);
    if (fp.empty() || fp.size() > 9) malformed();
    long long ipart = 0, fpart = 0;
    if (!detail::parse_ll(ip, ipart)) malformed();
    if (!detail::parse_ll(fp, fpart)) malformed();
    long long scale = 1;
    for (size_t k = 0; k < fp.size(); ++k) scale *= 10;
    v = Value(ipart) + Value(fpart, scale);
  } else {
    long long ipart = 0;
    if (!detail::parse_ll(text, ipart)) malformed();
    v = Value(ipart);
  }
  if (!v.in_unit_interval()) {
    throw OutOfUnitInterval("value out of [0,1]: '" + std::string(text) + "'");
  }
  return v;
}

inline std::string format_value(const Value& v) { return v.str(); }

}  // namespace fcif
