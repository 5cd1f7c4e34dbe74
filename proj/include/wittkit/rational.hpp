#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>

#include "wittkit/errors.hpp"

namespace wittkit {

/// Exact rational scalar.  boost::multiprecision::cpp_rational keeps the
/// invariants this library relies on: lowest terms, positive denominator,
/// canonical zero 0/1.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Canonical rendering: "n" when the denominator is 1, "n/d" otherwise.
inline std::string to_string(const Rational& r) { return r.str(); }

/// n! as an exact integer; n must be >= 0.
inline Integer factorial(int n) {
  Integer f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

/// Generalized binomial coefficient C(n, k) for integer n (possibly negative)
/// and k >= 0: n(n-1)...(n-k+1)/k!.
inline Rational binomial(int n, int k) {
  Rational num = 1;
  for (int j = 0; j < k; ++j) num *= Rational(n - j);
  return num / Rational(factorial(k));
}

namespace detail {

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

/// Reads an optionally signed integer starting at `pos`; advances `pos`.
inline Integer read_integer(const std::string& s, std::size_t& pos) {
  std::size_t start = pos;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
    neg = (s[pos] == '-');
    ++pos;
  }
  if (pos >= s.size() || !is_digit(s[pos])) throw ParseError(start, "integer");
  Integer v = 0;
  while (pos < s.size() && is_digit(s[pos])) {
    v = v * 10 + (s[pos] - '0');
    ++pos;
  }
  return neg ? Integer(-v) : v;
}

}  // namespace detail

/// Parses "n" or "n/d" (optional leading sign on n) starting at `pos`;
/// advances `pos` past the token.  Throws ParseError / DomainError.
inline Rational parse_rational_at(const std::string& s, std::size_t& pos) {
  Integer num = detail::read_integer(s, pos);
  if (pos < s.size() && s[pos] == '/') {
    std::size_t slash = pos;
    ++pos;
    Integer den = detail::read_integer(s, pos);
    if (den == 0) throw DomainError("zero denominator at offset " + std::to_string(slash));
    return Rational(num, den);
  }
  return Rational(num);
}

/// Parses a complete string as a rational; rejects trailing garbage.
inline Rational parse_rational(const std::string& s) {
  std::size_t pos = 0;
  while (pos < s.size() && s[pos] == ' ') ++pos;
  Rational r = parse_rational_at(s, pos);
  while (pos < s.size() && s[pos] == ' ') ++pos;
  if (pos != s.size()) throw ParseError(pos, "end of rational");
  return r;
}

}  // namespace wittkit
