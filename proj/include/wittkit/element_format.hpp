#pragma once

#include <map>
#include <string>

#include "wittkit/errors.hpp"
#include "wittkit/rational.hpp"
#include "wittkit/vector_field.hpp"

namespace wittkit {

/// Canonical text form:
///   element := "0" "@prec" int
///            | ["-"] term ((" + " | " - ") term)* " @prec" int
///   term    := "L[" int "]" | rational "*" "L[" int "]"
/// The printer emits terms in ascending index order, omits zero coefficients
/// and unit magnitudes, and glues the sign of a leading negative term.
inline std::string print_element(const VectorField& x) {
  std::string out;
  bool first = true;
  for (int i = x.low(); i <= x.prec(); ++i) {
    Rational c = x.coeff(i);
    if (c == 0) continue;
    bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (mag != 1) out += to_string(mag) + "*";
    out += "L[" + std::to_string(i) + "]";
    first = false;
  }
  if (first) out = "0";
  out += " @prec " + std::to_string(x.prec());
  return out;
}

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
}

inline void expect_char(const std::string& s, std::size_t& pos, char c,
                        const char* what) {
  if (pos >= s.size() || s[pos] != c) throw ParseError(pos, what);
  ++pos;
}

inline int read_small_int(const std::string& s, std::size_t& pos, const char* what) {
  Integer v = read_integer(s, pos);
  if (v > 1000000 || v < -1000000) throw ParseError(pos, what);
  return static_cast<int>(v);
}

}  // namespace detail

/// Parses the canonical element form (whitespace-insensitive around tokens).
/// Repeated indices accumulate.  A term index above the declared precision is
/// rejected: the text would claim knowledge the precision disavows.
inline VectorField parse_element(const std::string& s) {
  std::size_t pos = 0;
  std::map<int, Rational> terms;
  std::map<int, std::size_t> term_pos;

  detail::skip_ws(s, pos);
  if (pos >= s.size()) throw ParseError(pos, "an element");

  bool zero_literal = false;
  if (s[pos] == '0') {
    std::size_t save = pos;
    ++pos;
    detail::skip_ws(s, pos);
    if (pos < s.size() && s[pos] == '@')
      zero_literal = true;
    else
      pos = save;
  }

  if (!zero_literal) {
    int sign = 1;
    if (s[pos] == '-') {
      sign = -1;
      ++pos;
      detail::skip_ws(s, pos);
    }
    while (true) {
      Rational coeff(1);
      if (pos >= s.size()) throw ParseError(pos, "a term");
      if (s[pos] != 'L') {
        coeff = parse_rational_at(s, pos);
        detail::skip_ws(s, pos);
        if (pos >= s.size() || s[pos] != '*')
          throw ParseError(pos, "'*' between coefficient and L[...]");
        ++pos;
        detail::skip_ws(s, pos);
      }
      detail::expect_char(s, pos, 'L', "'L'");
      detail::expect_char(s, pos, '[', "'['");
      detail::skip_ws(s, pos);
      std::size_t idx_pos = pos;
      int idx = detail::read_small_int(s, pos, "a basis index of reasonable size");
      detail::skip_ws(s, pos);
      detail::expect_char(s, pos, ']', "']'");
      terms[idx] += Rational(sign) * coeff;
      term_pos.emplace(idx, idx_pos);

      detail::skip_ws(s, pos);
      if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        sign = s[pos] == '+' ? 1 : -1;
        ++pos;
        detail::skip_ws(s, pos);
        continue;
      }
      break;
    }
  }

  detail::skip_ws(s, pos);
  for (const char* c = "@prec"; *c; ++c) detail::expect_char(s, pos, *c, "'@prec'");
  detail::skip_ws(s, pos);
  int prec = detail::read_small_int(s, pos, "a precision of reasonable size");
  detail::skip_ws(s, pos);
  if (pos != s.size()) throw ParseError(pos, "end of input");

  int low = prec + 1;
  for (const auto& [i, c] : terms) {
    if (i > prec)
      throw ParseError(term_pos.at(i), "term index not exceeding the precision");
    low = std::min(low, i);
  }
  return VectorField(detail::build_series(low, prec, [&](int i) {
    auto it = terms.find(i);
    return it == terms.end() ? Rational(0) : it->second;
  }));
}

}  // namespace wittkit
