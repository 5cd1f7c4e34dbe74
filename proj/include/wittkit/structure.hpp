#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "wittkit/errors.hpp"
#include "wittkit/vector_field.hpp"

namespace wittkit {

/// Result of driving an element down to valuation -1 by repeated bracketing
/// with L_-1: after `steps` applications of ad L_-1 the element becomes
/// scale * element with val(element) = -1 and leading coefficient 1.
struct ValuationReduction {
  int steps;
  Rational scale;
  VectorField element;
};

/// Repeatedly applies ad L_-1, which shifts indices down by one
/// ([L_-1, L_i] = (i + 1) L_{i-1}), until the valuation reaches -1.  Starting
/// from val(x) = i0 this takes i0 + 1 steps and multiplies the leading
/// coefficient by (i0 + 1)!; each step costs one unit of precision.
inline ValuationReduction reduce_valuation(const VectorField& x) {
  if (x.known_zero()) throw ZeroElement("cannot reduce the valuation of zero");
  if (x.val() < -1) throw DomainError("valuation reduction needs val >= -1");
  const int steps = x.val() + 1;
  VectorField y = x;
  for (int k = 0; k < steps; ++k) y = bracket_basis(-1, y);
  Rational scale = y.coeff(y.val());
  return {steps, scale, (1 / scale) * y};
}

/// Solves [x, z] = y for z, where val(x) = -1.  The equation at index i reads
///   sum over n of (2n - i) x_{i-n} z_n = y_i,
/// and the new unknown z_{i+1} enters with pivot (i + 2) x_{-1}, which never
/// vanishes for i >= -1.  The centralizer direction z_{-1} is pinned to 0.
/// Equations run while both sides are known: i <= min(prec(x) - 1, prec(y)).
inline VectorField solve_transporter(const VectorField& x, const VectorField& y) {
  if (x.known_zero() || x.val() != -1)
    throw DomainError("transporter solve needs val(x) = -1");
  if (!y.known_zero() && y.val() < -1)
    throw DomainError("transporter solve needs val(y) >= -1");
  const int imax = std::min(x.prec() - 1, y.prec());
  if (imax < -1) throw PrecisionExhausted("no transporter equation is decidable");

  std::vector<Rational> z(static_cast<std::size_t>(imax + 3), Rational(0));  // z[-1..imax+1]
  auto zc = [&](int n) -> Rational& { return z[static_cast<std::size_t>(n + 1)]; };
  for (int i = -1; i <= imax; ++i) {
    Rational acc = 0;
    for (int n = -1; n <= i; ++n) {
      int xm = i - n;
      if (xm < x.low() || xm > x.prec()) continue;
      acc += Rational(2 * n - i) * x.coeff(xm) * zc(n);
    }
    zc(i + 1) = (y.coeff(i) - acc) / (Rational(i + 2) * x.coeff(-1));
  }
  return VectorField(-1, imax + 1, std::move(z));
}

/// Certificate that y lies in the ideal generated by x: with
/// r = reduce_valuation(x), the element (1/scale) (ad L_-1)^steps (x) has a
/// transporter z with [(1/scale) (ad L_-1)^steps (x), z] = y.
struct IdealRecipe {
  int steps;
  Rational scale;
  VectorField transporter;
};

inline IdealRecipe express_in_ideal(const VectorField& x, const VectorField& y) {
  ValuationReduction r = reduce_valuation(x);
  VectorField z = solve_transporter(r.element, y);
  return {r.steps, r.scale, std::move(z)};
}

namespace detail {

/// Rank of an integer matrix by fraction-free (Bareiss) elimination; all
/// divisions below are exact.
inline int integer_matrix_rank(std::vector<std::vector<Integer>> m) {
  if (m.empty() || m.front().empty()) return 0;
  const std::size_t rows = m.size(), cols = m.front().size();
  Integer prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[row]);
    for (std::size_t i = row + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j)
        m[i][j] = (m[i][j] * m[row][col] - m[i][col] * m[row][j]) / prev;
      m[i][col] = 0;
    }
    prev = m[row][col];
    ++row;
  }
  return static_cast<int>(row);
}

}  // namespace detail

/// Dimension of the span of v, (ad s)(v), ..., (ad s)^K (v), read off the
/// shared known coefficient window.  The window must offer at least K + 1
/// columns so a full-rank answer is representable; a v that is zero at every
/// known index short-circuits to rank 0 before the window check.
inline int locfin_rank(const VectorField& s, const VectorField& v, int K) {
  if (K < 0) throw DomainError("iterate count must be nonnegative");
  if (s.known_zero()) throw ZeroElement("iteration direction is zero at every known index");
  if (v.known_zero()) return 0;

  std::vector<VectorField> rows;
  rows.reserve(static_cast<std::size_t>(K) + 1);
  rows.push_back(v);
  for (int k = 1; k <= K; ++k) rows.push_back(bracket(s, rows.back()));

  int H = rows.front().prec();
  int L = rows.front().prec();
  bool any = false;
  for (const VectorField& r : rows) {
    H = std::min(H, r.prec());
    if (!r.known_zero()) {
      L = any ? std::min(L, r.val()) : r.val();
      any = true;
    }
  }
  if (!any) return 0;
  if (H - L + 1 < K + 1)
    throw WindowTooSmall("shared window has " + std::to_string(std::max(0, H - L + 1)) +
                         " columns, need " + std::to_string(K + 1));

  std::vector<std::vector<Integer>> m;
  for (const VectorField& r : rows) {
    Integer den = 1;
    for (int i = L; i <= H; ++i) den = lcm(den, denominator(r.coeff(i)));
    std::vector<Integer> row;
    for (int i = L; i <= H; ++i) {
      Rational c = Rational(den) * r.coeff(i);
      row.push_back(numerator(c));
    }
    m.push_back(std::move(row));
  }
  return detail::integer_matrix_rank(std::move(m));
}

}  // namespace wittkit
