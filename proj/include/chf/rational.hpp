#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "chf/types.hpp"

// Small exact rational over long long.  The lattice layer only ever needs
// denominators 1 and 2 (integer and half-integer coordinates); arithmetic is
// exact for anything that fits, and parse() accepts "p", "-p/q" forms only
// (decimals are rejected deliberately: lattice membership is an exact
// predicate).

namespace chf {

struct Rational {
  long long num = 0;
  long long den = 1;  // invariant: den > 0, gcd(|num|, den) == 1

  static Rational of(long long n, long long d = 1);
  static std::optional<Rational> parse(std::string_view s);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator-() const;
  bool operator==(const Rational& o) const = default;
  bool operator<(const Rational& o) const;

  bool is_integer() const { return den == 1; }
  double to_double() const { return static_cast<double>(num) / den; }
  std::string str() const;
};

inline Rational rat(long long n, long long d = 1) { return Rational::of(n, d); }

}  // namespace chf
