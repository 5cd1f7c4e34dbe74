#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "wittkit/rational.hpp"
#include "wittkit/series.hpp"

namespace wittkit {

/// Element of the (Laurent-extended) completed Witt algebra in the L-basis:
/// coefficients a_i of L_i = t^{i+1} d/dt on the known window [low, prec];
/// indices above prec are unknown, below low known zero.  Strict elements of
/// the algebra have low >= -1; smaller indices are the Laurent extension.
/// Storage and window semantics are exactly those of TruncatedSeries with
/// "exponent" read as "L-index".
class VectorField {
 public:
  VectorField(int low, int prec, std::vector<Rational> coeffs)
      : m_w(low, prec, std::move(coeffs)) {}

  explicit VectorField(TruncatedSeries window) : m_w(std::move(window)) {}

  static VectorField zero(int prec) { return VectorField(TruncatedSeries::zero(prec)); }

  /// c * L_i known through prec.
  static VectorField term(const Rational& c, int i, int prec) {
    return VectorField(TruncatedSeries::monomial(c, i, prec));
  }

  static VectorField basis(int i, int prec) { return term(1, i, prec); }

  int low() const { return m_w.low(); }
  int prec() const { return m_w.prec(); }
  Rational coeff(int i) const { return m_w.coeff(i); }
  int val() const { return m_w.val(); }
  bool known_zero() const { return m_w.known_zero(); }

  /// The index window as a knowledge-equivalent coefficient series (a_i at
  /// exponent i) — not the realizing function; see to_series for that.
  const TruncatedSeries& window() const { return m_w; }

  friend bool operator==(const VectorField&, const VectorField&) = default;

 private:
  TruncatedSeries m_w;
};

/// f(t) d/dt as an element: a_i = coefficient of t^{i+1} in f.
inline VectorField vf_from_series(const TruncatedSeries& f) {
  return VectorField(shift(f, -1));
}

/// The realizing coefficient function f with x = f(t) d/dt.
inline TruncatedSeries to_series(const VectorField& x) { return shift(x.window(), 1); }

inline VectorField operator+(const VectorField& a, const VectorField& b) {
  return VectorField(a.window() + b.window());
}

inline VectorField operator-(const VectorField& a) { return VectorField(-a.window()); }

inline VectorField operator-(const VectorField& a, const VectorField& b) {
  return VectorField(a.window() - b.window());
}

inline VectorField operator*(const Rational& c, const VectorField& a) {
  return VectorField(c * a.window());
}

/// Reduces the precision bound to at most prec.
inline VectorField truncate(const VectorField& a, int prec) {
  return VectorField(truncate(a.window(), prec));
}

/// Lie bracket: [L_m, L_n] = (n-m) L_{m+n}, extended by the full convolution
/// (coefficient of L_i is the sum of (n-m) x_m y_n over m+n = i, equivalently
/// f g' - g f' at series level).  Precision follows the product rule
/// min(prec_x + val(y), prec_y + val(x)).
inline VectorField bracket(const VectorField& x, const VectorField& y) {
  int prec = std::min(x.prec() + y.val(), y.prec() + x.val());
  int low = x.low() + y.low();
  return VectorField(detail::build_series(std::min(low, prec + 1), prec, [&](int i) {
    Rational s = 0;
    int m_lo = std::max(x.low(), i - y.prec());
    int m_hi = std::min(x.prec(), i - y.low());
    for (int m = m_lo; m <= m_hi; ++m) s += Rational(i - 2 * m) * x.coeff(m) * y.coeff(i - m);
    return s;
  }));
}

/// [L_i, y] with L_i exact: sum of y_n (n - i) L_{i+n}.  The basis element
/// carries no precision bound of its own, so the result window is the shifted
/// window of y — nothing is lost to an artificial truncation of L_i.
inline VectorField bracket_basis(int i, const VectorField& y) {
  return VectorField(detail::build_series(y.low() + i, y.prec() + i, [&](int j) {
    return Rational(j - 2 * i) * y.coeff(j - i);
  }));
}

/// [x, L_j] with L_j exact: sum of x_m (j - m) L_{m+j}.
inline VectorField bracket_basis(const VectorField& x, int j) {
  return VectorField(detail::build_series(x.low() + j, x.prec() + j, [&](int i) {
    return Rational(2 * j - i) * x.coeff(i - j);
  }));
}

/// (ad s)^k (y).
inline VectorField ad_power(const VectorField& s, const VectorField& y, int k) {
  VectorField acc = y;
  for (int j = 0; j < k; ++j) acc = bracket(s, acc);
  return acc;
}

/// Projection onto the filtration level: zeroes coefficients below index
/// `level`, keeping the precision bound.
inline VectorField project(const VectorField& x, int level) {
  if (level <= x.low()) return x;
  return VectorField(detail::build_series(std::min(level, x.prec() + 1), x.prec(),
                                          [&](int i) { return x.coeff(i); }));
}

/// First index (within the shared known window) where x and y disagree.
inline std::optional<int> first_difference(const VectorField& x, const VectorField& y) {
  int w;
  if (agree_to_precision(x.window(), y.window(), &w)) return std::nullopt;
  return w;
}

/// True iff x and y agree wherever both are known.
inline bool eq_to_precision(const VectorField& x, const VectorField& y) {
  return !first_difference(x, y).has_value();
}

}  // namespace wittkit
