#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wittkit/errors.hpp"
#include "wittkit/rational.hpp"
#include "wittkit/series.hpp"

namespace wittkit {

// Expression grammar for generator specifications (whitespace-insensitive):
//   expr   := factor ( "*" factor )*
//   factor := atom [ "^" int ]
//   atom   := "t" | "(" "t" ("+"|"-") rat ")" | fun "(" [rat ["*"]] "t" ")"
//           | rat | "(" expr ")"
//   fun    := "exp" | "sin" | "cos"
//   rat    := ["-"] int [ "/" posint ]
// The "*" between a function's scalar and t may be omitted ("exp(3t)").

namespace detail {

// Valuations are tracked symbolically so each subexpression can be evaluated
// at exactly the precision the requested output needs (inversion costs
// 2*val, a product factor needs prec minus the sibling valuations).
constexpr long long kValUnknownZero = 1LL << 40;  // all-zero-to-precision sentinel

struct SeriesNode {
  enum class Kind { Product, Power, Var, BasePoint, Fun, Const };
  Kind kind;
  std::vector<SeriesNode> children;  // Product factors; Power base
  int exponent = 0;                  // Power
  Rational scalar;                   // BasePoint offset / Fun coefficient / Const value
  ElementaryKind fun = ElementaryKind::Exp;
  long long val = 0;                 // exact valuation, kValUnknownZero for the zero series
};

class SeriesExprParser {
 public:
  explicit SeriesExprParser(const std::string& text) : m_s(text) {}

  SeriesNode parse() {
    SeriesNode n = parse_expr();
    skip_ws();
    if (m_pos != m_s.size()) throw ParseError(m_pos, "end of input");
    return n;
  }

 private:
  SeriesNode parse_expr() {
    SeriesNode prod;
    prod.kind = SeriesNode::Kind::Product;
    prod.children.push_back(parse_factor());
    while (true) {
      skip_ws();
      if (!peek_is('*')) break;
      ++m_pos;
      prod.children.push_back(parse_factor());
    }
    set_product_val(prod);
    return prod;
  }

  SeriesNode parse_factor() {
    SeriesNode base = parse_atom();
    skip_ws();
    if (!peek_is('^')) return base;
    ++m_pos;
    skip_ws();
    Integer e = detail_read_int();
    if (e > 1000 || e < -1000) throw DomainError("exponent out of supported range");
    SeriesNode pw;
    pw.kind = SeriesNode::Kind::Power;
    pw.exponent = static_cast<int>(e);
    pw.children.push_back(std::move(base));
    const SeriesNode& c = pw.children[0];
    if (pw.exponent == 0)
      pw.val = 0;
    else if (c.val == kValUnknownZero)
      pw.val = kValUnknownZero;
    else
      pw.val = c.val * pw.exponent;
    return pw;
  }

  SeriesNode parse_atom() {
    skip_ws();
    if (m_pos >= m_s.size()) throw ParseError(m_pos, "atom");
    char c = m_s[m_pos];
    if (c == 't') {
      ++m_pos;
      SeriesNode n;
      n.kind = SeriesNode::Kind::Var;
      n.val = 1;
      return n;
    }
    if (c == '(') return parse_paren();
    if (is_alpha(c)) return parse_fun();
    if (c == '-' || detail::is_digit(c)) {
      SeriesNode n;
      n.kind = SeriesNode::Kind::Const;
      n.scalar = parse_rational_at(m_s, m_pos);
      n.val = n.scalar == 0 ? kValUnknownZero : 0;
      return n;
    }
    throw ParseError(m_pos, "atom");
  }

  // "(t + rat)" / "(t - rat)" or a parenthesized expression; "(t" followed by
  // a sign selects the base-point form (expressions have no "+").
  SeriesNode parse_paren() {
    ++m_pos;  // '('
    skip_ws();
    std::size_t after_open = m_pos;
    if (peek_is('t')) {
      ++m_pos;
      skip_ws();
      if (peek_is('+') || peek_is('-')) {
        bool neg = m_s[m_pos] == '-';
        ++m_pos;
        skip_ws();
        Rational a = parse_rational_at(m_s, m_pos);
        if (neg) a = -a;
        expect(')');
        SeriesNode n;
        n.kind = SeriesNode::Kind::BasePoint;
        n.scalar = a;
        n.val = a == 0 ? 1 : 0;
        return n;
      }
      m_pos = after_open;  // plain expression starting with t
    }
    SeriesNode n = parse_expr();
    expect(')');
    return n;
  }

  SeriesNode parse_fun() {
    std::size_t start = m_pos;
    std::string word;
    while (m_pos < m_s.size() && is_alpha(m_s[m_pos])) word += m_s[m_pos++];
    ElementaryKind kind;
    if (word == "exp")
      kind = ElementaryKind::Exp;
    else if (word == "sin")
      kind = ElementaryKind::Sin;
    else if (word == "cos")
      kind = ElementaryKind::Cos;
    else
      throw ParseError(start, "exp, sin, or cos");
    skip_ws();
    expect('(');
    skip_ws();
    Rational c = 1;
    if (!peek_is('t')) {
      c = parse_rational_at(m_s, m_pos);
      skip_ws();
      if (peek_is('*')) ++m_pos;
      skip_ws();
    }
    expect('t');
    skip_ws();
    expect(')');
    SeriesNode n;
    n.kind = SeriesNode::Kind::Fun;
    n.fun = kind;
    n.scalar = c;
    if (kind == ElementaryKind::Sin)
      n.val = c == 0 ? kValUnknownZero : 1;
    else
      n.val = 0;
    return n;
  }

  static void set_product_val(SeriesNode& prod) {
    long long v = 0;
    for (const SeriesNode& c : prod.children) {
      if (c.val == kValUnknownZero) {
        v = kValUnknownZero;
        break;
      }
      v += c.val;
    }
    prod.val = v;
  }

  Integer detail_read_int() { return detail::read_integer(m_s, m_pos); }

  static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

  bool peek_is(char c) const { return m_pos < m_s.size() && m_s[m_pos] == c; }

  void expect(char c) {
    skip_ws();
    if (!peek_is(c)) throw ParseError(m_pos, std::string("'") + c + "'");
    ++m_pos;
  }

  void skip_ws() {
    while (m_pos < m_s.size() &&
           (m_s[m_pos] == ' ' || m_s[m_pos] == '\t' || m_s[m_pos] == '\n' || m_s[m_pos] == '\r'))
      ++m_pos;
  }

  const std::string& m_s;
  std::size_t m_pos = 0;
};

/// A negative power of an exactly-zero subexpression is a domain error even
/// when an enclosing product short-circuits to zero; checked up front so the
/// evaluator's short-circuits cannot mask it.
inline void validate_no_zero_inversion(const SeriesNode& n) {
  if (n.kind == SeriesNode::Kind::Power && n.exponent < 0 &&
      n.children[0].val == kValUnknownZero)
    throw DomainError("negative power of a series that is zero to precision");
  for (const SeriesNode& c : n.children) validate_no_zero_inversion(c);
}

/// Evaluates a node to precision exactly `prec`.  Short-circuits when the
/// node's valuation already exceeds prec, so sibling precisions never go
/// negative without need.
inline TruncatedSeries eval_series_node(const SeriesNode& n, int prec) {
  using K = SeriesNode::Kind;
  switch (n.kind) {
    case K::Var:
      return TruncatedSeries::monomial(1, 1, prec);
    case K::Const:
      return TruncatedSeries::monomial(n.scalar, 0, prec);
    case K::BasePoint:
      return binomial_power(n.scalar, 1, prec);
    case K::Fun:
      return elementary(n.fun, n.scalar, prec);
    case K::Product: {
      if (n.val == kValUnknownZero || n.val > prec) return TruncatedSeries::zero(prec);
      long long sum = n.val;
      TruncatedSeries acc = TruncatedSeries::constant(1, static_cast<int>(prec - sum));
      for (const SeriesNode& c : n.children)
        acc = acc * eval_series_node(c, static_cast<int>(prec - (sum - c.val)));
      return acc;
    }
    case K::Power: {
      const SeriesNode& base = n.children[0];
      if (n.exponent == 0) return TruncatedSeries::constant(1, prec);
      if (n.val != kValUnknownZero && n.val > prec) return TruncatedSeries::zero(prec);
      if (n.exponent > 0) {
        if (n.val == kValUnknownZero) return TruncatedSeries::zero(prec);
        long long v = base.val;
        TruncatedSeries b =
            eval_series_node(base, static_cast<int>(prec - (n.exponent - 1) * v));
        TruncatedSeries acc = b;
        for (int k = 1; k < n.exponent; ++k) acc = acc * b;
        return acc;
      }
      if (n.val == kValUnknownZero)
        throw DomainError("negative power of a series that is zero to precision");
      int m = -n.exponent;
      long long inner_val = static_cast<long long>(m) * base.val;
      SeriesNode pos = n;
      pos.exponent = m;
      pos.val = inner_val;
      TruncatedSeries inner = eval_series_node(pos, static_cast<int>(prec + 2 * inner_val));
      return invert(inner);
    }
  }
  throw std::logic_error("eval_series_node: bad kind");
}

}  // namespace detail

/// Parses a generator expression and evaluates it to exactly `prec`.
inline TruncatedSeries parse_series_expr(const std::string& text, int prec) {
  detail::SeriesExprParser p(text);
  detail::SeriesNode root = p.parse();
  detail::validate_no_zero_inversion(root);
  return detail::eval_series_node(root, prec);
}

}  // namespace wittkit
