#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wittkit/automorphism.hpp"
#include "wittkit/derivation.hpp"
#include "wittkit/element_format.hpp"
#include "wittkit/errors.hpp"
#include "wittkit/structure.hpp"

namespace wittkit {

/// Canonical one-line forms:
///   aut{ b = <rational>; x = <element> }
///   recipe{ m = <int>; c = <rational>; z = <element> }
///   report{ valuation = <int>; leading = <rational>; status = Solved;
///           conjugator = <element> }
///   status Obstructed(<index>, <residual>) when the solve left a residual.
inline std::string print_aut(const Automorphism& a) {
  return "aut{ b = " + to_string(a.b) + "; x = " + print_element(a.x) + " }";
}

inline std::string print_recipe(const IdealRecipe& r) {
  return "recipe{ m = " + std::to_string(r.steps) + "; c = " + to_string(r.scale) +
         "; z = " + print_element(r.transporter) + " }";
}

inline std::string print_status(const NormalFormReport& r) {
  if (r.solved()) return "Solved";
  return "Obstructed(" + std::to_string(r.obstruction->first) + ", " +
         to_string(r.obstruction->second) + ")";
}

inline std::string print_report(const NormalFormReport& r) {
  return "report{ valuation = " + std::to_string(r.valuation) +
         "; leading = " + to_string(r.leading) + "; status = " + print_status(r) +
         "; conjugator = " + print_element(r.conjugator) + " }";
}

/// Key-value forms: one "key = value" line per field.
inline std::string keyvalue_element(const VectorField& x) {
  return "element = " + print_element(x);
}

inline std::string keyvalue_aut(const Automorphism& a) {
  return "b = " + to_string(a.b) + "\nx = " + print_element(a.x);
}

inline std::string keyvalue_recipe(const IdealRecipe& r) {
  return "m = " + std::to_string(r.steps) + "\nc = " + to_string(r.scale) +
         "\nz = " + print_element(r.transporter);
}

inline std::string keyvalue_report(const NormalFormReport& r) {
  return "valuation = " + std::to_string(r.valuation) + "\nleading = " + to_string(r.leading) +
         "\nstatus = " + print_status(r) + "\nconjugator = " + print_element(r.conjugator);
}

namespace detail {

inline void expect_token(const std::string& s, std::size_t& pos, const char* token) {
  skip_ws(s, pos);
  for (const char* c = token; *c; ++c) expect_char(s, pos, *c, token);
}

/// Consumes text up to (not including) the stop character, trimmed.
inline std::string take_until(const std::string& s, std::size_t& pos, char stop) {
  std::size_t start = pos;
  while (pos < s.size() && s[pos] != stop) ++pos;
  if (pos >= s.size()) throw ParseError(pos, std::string("'") + stop + "'");
  std::size_t end = pos;
  while (end > start && (s[end - 1] == ' ' || s[end - 1] == '\t')) --end;
  return s.substr(start, end - start);
}

}  // namespace detail

inline Automorphism parse_aut(const std::string& s) {
  std::size_t pos = 0;
  detail::expect_token(s, pos, "aut");
  detail::expect_token(s, pos, "{");
  detail::expect_token(s, pos, "b");
  detail::expect_token(s, pos, "=");
  detail::skip_ws(s, pos);
  Rational b = parse_rational_at(s, pos);
  detail::expect_token(s, pos, ";");
  detail::expect_token(s, pos, "x");
  detail::expect_token(s, pos, "=");
  VectorField x = parse_element(detail::take_until(s, pos, '}'));
  ++pos;
  detail::skip_ws(s, pos);
  if (pos != s.size()) throw ParseError(pos, "end of input");
  return Automorphism(std::move(x), std::move(b));
}

inline IdealRecipe parse_recipe(const std::string& s) {
  std::size_t pos = 0;
  detail::expect_token(s, pos, "recipe");
  detail::expect_token(s, pos, "{");
  detail::expect_token(s, pos, "m");
  detail::expect_token(s, pos, "=");
  detail::skip_ws(s, pos);
  int m = detail::read_small_int(s, pos, "a step count of reasonable size");
  detail::expect_token(s, pos, ";");
  detail::expect_token(s, pos, "c");
  detail::expect_token(s, pos, "=");
  detail::skip_ws(s, pos);
  Rational c = parse_rational_at(s, pos);
  detail::expect_token(s, pos, ";");
  detail::expect_token(s, pos, "z");
  detail::expect_token(s, pos, "=");
  VectorField z = parse_element(detail::take_until(s, pos, '}'));
  ++pos;
  detail::skip_ws(s, pos);
  if (pos != s.size()) throw ParseError(pos, "end of input");
  return {m, std::move(c), std::move(z)};
}

namespace detail {

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

inline bool blank_or_comment(const std::string& line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (ch != ' ' && ch != '\t') return false;
  }
  return true;
}

/// Header line "@prec N" shared by the table file formats.
inline int parse_table_header(const std::string& line) {
  std::size_t pos = 0;
  expect_token(line, pos, "@prec");
  skip_ws(line, pos);
  int prec = read_small_int(line, pos, "a precision of reasonable size");
  skip_ws(line, pos);
  if (pos != line.size()) throw ParseError(pos, "end of header line");
  return prec;
}

/// "[prefix] L[<i>] = <element>"; returns the index and parsed element.
inline std::pair<int, VectorField> parse_table_line(const std::string& line,
                                                    const char* prefix) {
  std::size_t pos = 0;
  if (*prefix) expect_token(line, pos, prefix);
  expect_token(line, pos, "L");
  expect_token(line, pos, "[");
  skip_ws(line, pos);
  int i = read_small_int(line, pos, "a basis index of reasonable size");
  expect_token(line, pos, "]");
  expect_token(line, pos, "=");
  skip_ws(line, pos);
  return {i, parse_element(line.substr(pos))};
}

}  // namespace detail

/// Derivation table file:
///   @prec N
///   D L[<i>] = <element>
/// one line per entry; blank lines and '#' comments allowed.  Entries are
/// truncated to the header precision.
inline std::string print_derivation_table(const DerivationTable& t) {
  std::string out = "@prec " + std::to_string(t.prec) + "\n";
  for (const auto& [i, d] : t.entries)
    out += "D L[" + std::to_string(i) + "] = " + print_element(d) + "\n";
  return out;
}

inline DerivationTable parse_derivation_table(const std::string& text) {
  std::vector<std::pair<int, VectorField>> entries;
  bool have_header = false;
  int prec = 0;
  for (const std::string& line : detail::split_lines(text)) {
    if (detail::blank_or_comment(line)) continue;
    if (!have_header) {
      prec = detail::parse_table_header(line);
      have_header = true;
      continue;
    }
    auto [i, d] = detail::parse_table_line(line, "D");
    entries.emplace_back(i, truncate(d, prec));
  }
  if (!have_header) throw DomainError("table file lacks the @prec header");
  return DerivationTable(std::move(entries));
}

/// Image table file: as above with lines "L[<i>] = <element>".
inline std::string print_image_table(const ImageTable& t) {
  std::string out = "@prec " + std::to_string(t.prec) + "\n";
  for (const auto& [i, img] : t.entries)
    out += "L[" + std::to_string(i) + "] = " + print_element(img) + "\n";
  return out;
}

inline ImageTable parse_image_table(const std::string& text) {
  std::vector<std::pair<int, VectorField>> entries;
  bool have_header = false;
  int prec = 0;
  for (const std::string& line : detail::split_lines(text)) {
    if (detail::blank_or_comment(line)) continue;
    if (!have_header) {
      prec = detail::parse_table_header(line);
      have_header = true;
      continue;
    }
    auto [i, img] = detail::parse_table_line(line, "");
    entries.emplace_back(i, truncate(img, prec));
  }
  if (!have_header) throw DomainError("table file lacks the @prec header");
  return ImageTable(std::move(entries));
}

}  // namespace wittkit
