// Copyright 2026 The paexp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace paexp {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always normalized: gcd(num, den) == 1 and den > 0. Intermediate products
/// are formed in 128 bits; a result that does not fit back into 64 bits
/// throws std::overflow_error rather than wrapping.
class Rational {
 public:
  using int_type = std::int64_t;

  constexpr Rational() = default;
  constexpr Rational(int_type value) : num_(value) {}  // NOLINT: implicit
  Rational(int_type num, int_type den) { assign(num, den); }

  [[nodiscard]] constexpr int_type num() const { return num_; }
  [[nodiscard]] constexpr int_type den() const { return den_; }

  [[nodiscard]] double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// "p/q", or "p" when the denominator is 1.
  [[nodiscard]] std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "p/q", an integer, or a finite decimal such as "0.0142".
  static Rational parse(std::string_view text) {
    auto fail = [&] {
      throw std::invalid_argument("not a rational number: '" +
                                  std::string(text) + "'");
    };
    if (text.empty()) fail();
    auto parse_int = [&](std::string_view s) -> int_type {
      if (s.empty()) fail();
      std::size_t pos = 0;
      long long v = 0;
      try {
        v = std::stoll(std::string(s), &pos);
      } catch (const std::exception&) {
        fail();
      }
      if (pos != s.size()) fail();
      return v;
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      int_type d = parse_int(text.substr(slash + 1));
      if (d == 0) fail();
      return {parse_int(text.substr(0, slash)), d};
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      std::string_view whole = text.substr(0, dot);
      std::string_view frac = text.substr(dot + 1);
      if (frac.empty() || frac.size() > 18) fail();
      for (char c : frac)
        if (c < '0' || c > '9') fail();
      bool negative = !whole.empty() && whole.front() == '-';
      if (negative) whole.remove_prefix(1);
      int_type scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      int_type w = whole.empty() ? 0 : parse_int(whole);
      Rational r = Rational(w) + Rational(parse_int(frac), scale);
      return negative ? -r : r;
    }
    return {parse_int(text)};
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = static_cast<__int128>(a.num_) * b.den_ +
                 static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return from_wide(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + (-b);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.num_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from_wide(static_cast<__int128>(a.num_) * b.den_,
                     static_cast<__int128>(a.den_) * b.num_);
  }
  Rational operator-() const {
    if (num_ == std::numeric_limits<int_type>::min())
      throw std::overflow_error("rational negation overflow");
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  static __int128 gcd_wide(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from_wide(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd_wide(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr auto lo = std::numeric_limits<int_type>::min();
    constexpr auto hi = std::numeric_limits<int_type>::max();
    if (n < lo || n > hi || d > hi)
      throw std::overflow_error("rational result exceeds 64 bits");
    Rational r;
    r.num_ = static_cast<int_type>(n);
    r.den_ = static_cast<int_type>(d);
    return r;
  }

  void assign(int_type num, int_type den) { *this = from_wide(num, den); }

  int_type num_ = 0;
  int_type den_ = 1;
};

inline Rational min(const Rational& a, const Rational& b) {
  return b < a ? b : a;
}

}  // namespace paexp
