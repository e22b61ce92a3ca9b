#pragma once
// Copyright (c) 2026 The balansol authors.
// Distributed under the MIT license; see LICENSE for details.
//
// Exact rational arithmetic on a 64-bit numerator/denominator pair.
// Everything in this library that touches weights, loads, thresholds, or LP
// values goes through Rat, so results are exact or the computation fails
// loudly with OverflowError -- never silently rounded.

#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include "balansol/errors.hpp"

namespace balansol {

namespace detail {

using int128 = __int128;

inline int128 abs128(int128 x) { return x < 0 ? -x : x; }

inline int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

// A rational number kept in lowest terms with a positive denominator.
// Intermediate products run in 128 bits; a reduced value that does not fit
// back into 64 bits throws OverflowError.
class Rat {
 public:
  constexpr Rat() : num_(0), den_(1) {}
  constexpr Rat(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(runtime/explicit)
  Rat(std::int64_t n, std::int64_t d) { *this = make(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_positive() const { return num_ > 0; }

  Rat abs() const { return num_ < 0 ? Rat(raw_tag{}, -num_, den_) : *this; }

  // Always renders as "p/q", including a unit denominator ("3/1", "0/1").
  std::string to_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "p/q", plain integers ("3", "-7"), and decimal literals
  // ("0.85" -> 17/20).  Anything else raises ParseError.
  static Rat parse(const std::string& text);

  friend Rat operator+(const Rat& a, const Rat& b) {
    return make128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return make128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return make128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw Error("rational division by zero");
    return make128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rat operator-() const { return Rat(raw_tag{}, -num_, den_); }

  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

 private:
  struct raw_tag {};
  // Bypasses normalization; callers guarantee lowest terms and den > 0.
  constexpr Rat(raw_tag, std::int64_t n, std::int64_t d) : num_(n), den_(d) {}

  static detail::int128 i128(std::int64_t v) { return detail::int128(v); }

  static Rat make(std::int64_t n, std::int64_t d) {
    return make128(detail::int128(n), detail::int128(d));
  }

  static Rat make128(detail::int128 n, detail::int128 d) {
    if (d == 0) throw Error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    // gcd(0, d) = d, so a zero numerator normalizes to 0/1 with no special
    // case; g > 0 because d > 0 here.
    detail::int128 g = detail::gcd128(n, d);
    n /= g;
    d /= g;
    constexpr detail::int128 kMax = std::numeric_limits<std::int64_t>::max();
    constexpr detail::int128 kMin = std::numeric_limits<std::int64_t>::min();
    if (n > kMax || n < kMin || d > kMax) {
      throw OverflowError("rational value exceeds the 64-bit exact range");
    }
    return Rat(raw_tag{}, static_cast<std::int64_t>(n),
               static_cast<std::int64_t>(d));
  }

  std::int64_t num_;
  std::int64_t den_;
};

inline Rat Rat::parse(const std::string& text) {
  const char* p = text.c_str();
  const char* end = p + text.size();
  bool negative = false;
  if (p < end && (*p == '-' || *p == '+')) {
    negative = (*p == '-');
    ++p;
  }
  auto read_digits = [&](detail::int128* out) -> int {
    int count = 0;
    detail::int128 value = 0;
    while (p < end && *p >= '0' && *p <= '9') {
      value = value * 10 + (*p - '0');
      ++p;
      if (++count > 38) throw ParseError("number too long: '" + text + "'");
    }
    *out = value;
    return count;
  };

  detail::int128 whole = 0;
  if (read_digits(&whole) == 0) {
    throw ParseError("expected a number, got '" + text + "'");
  }
  detail::int128 num = whole;
  detail::int128 den = 1;
  if (p < end && *p == '/') {
    ++p;
    if (read_digits(&den) == 0 || p != end) {
      throw ParseError("malformed fraction '" + text + "'");
    }
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
  } else if (p < end && *p == '.') {
    ++p;
    detail::int128 frac = 0;
    const char* frac_start = p;
    if (read_digits(&frac) == 0 || p != end) {
      throw ParseError("malformed decimal '" + text + "'");
    }
    for (const char* q = frac_start; q < p; ++q) den *= 10;
    num = whole * den + frac;
  } else if (p != end) {
    throw ParseError("trailing characters in number '" + text + "'");
  }
  if (negative) num = -num;
  return make128(num, den);
}

// Exact least common multiple of two positive 64-bit values; throws
// OverflowError when the result does not fit.
inline std::int64_t lcm64_checked(std::int64_t a, std::int64_t b) {
  if (a <= 0 || b <= 0) throw Error("lcm arguments must be positive");
  detail::int128 g = detail::gcd128(a, b);
  detail::int128 result = detail::int128(a) / g * b;
  if (result > std::numeric_limits<std::int64_t>::max()) {
    throw OverflowError("lcm exceeds the 64-bit exact range");
  }
  return static_cast<std::int64_t>(result);
}

}  // namespace balansol
