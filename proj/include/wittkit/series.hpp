#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wittkit/errors.hpp"
#include "wittkit/rational.hpp"

namespace wittkit {

/// r^n for any integer n; n < 0 requires r != 0.
inline Rational rational_pow(const Rational& r, int n) {
  if (n < 0) {
    if (r == 0) throw DomainError("0 raised to a negative power");
    return 1 / rational_pow(r, -n);
  }
  Rational acc = 1;
  Rational base = r;
  for (unsigned e = static_cast<unsigned>(n); e != 0; e >>= 1) {
    if (e & 1u) acc *= base;
    base *= base;
  }
  return acc;
}

/// Truncated Laurent series with explicit knowledge semantics: coefficients at
/// exponents <= prec() are known (zero below low(), stored on [low(), prec()]);
/// everything above prec() is UNKNOWN, not zero.  prec() = low() - 1 encodes
/// "zero at every known exponent".  Values are immutable after construction.
class TruncatedSeries {
 public:
  TruncatedSeries(int low, int prec, std::vector<Rational> coeffs)
      : m_low(low), m_prec(prec), m_coeffs(std::move(coeffs)) {
    if (m_prec < m_low - 1 ||
        m_coeffs.size() != static_cast<std::size_t>(m_prec - m_low + 1))
      throw std::logic_error("TruncatedSeries: window/coefficient mismatch");
  }

  /// The series known to be 0 at every exponent <= prec.
  static TruncatedSeries zero(int prec) { return {prec + 1, prec, {}}; }

  /// c * t^exponent, known through prec (exponents above prec are dropped).
  static TruncatedSeries monomial(const Rational& c, int exponent, int prec) {
    if (exponent > prec) return zero(prec);
    std::vector<Rational> v(static_cast<std::size_t>(prec - exponent + 1));
    v[0] = c;
    return {exponent, prec, std::move(v)};
  }

  static TruncatedSeries constant(const Rational& c, int prec) {
    return monomial(c, 0, prec);
  }

  int low() const { return m_low; }
  int prec() const { return m_prec; }

  /// Coefficient at exponent e; requires e <= prec().
  Rational coeff(int e) const {
    if (e > m_prec) throw std::logic_error("TruncatedSeries::coeff above precision");
    if (e < m_low) return Rational(0);
    return m_coeffs[static_cast<std::size_t>(e - m_low)];
  }

  /// Least exponent with a nonzero known coefficient; prec()+1 if all known
  /// coefficients vanish (the conservative tie-break used by precision rules).
  int val() const {
    for (std::size_t k = 0; k < m_coeffs.size(); ++k)
      if (m_coeffs[k] != 0) return m_low + static_cast<int>(k);
    return m_prec + 1;
  }

  bool known_zero() const { return val() > m_prec; }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  int m_low;
  int m_prec;
  std::vector<Rational> m_coeffs;
};

namespace detail {

/// Builds a window [low, prec] (clamping low to prec+1 when empty) and fills
/// coefficients via `get(exponent)`.
template <typename F>
TruncatedSeries build_series(int low, int prec, F&& get) {
  if (low > prec) return TruncatedSeries::zero(prec);
  std::vector<Rational> v(static_cast<std::size_t>(prec - low + 1));
  for (int e = low; e <= prec; ++e) v[static_cast<std::size_t>(e - low)] = get(e);
  return {low, prec, std::move(v)};
}

}  // namespace detail

/// Reduces the precision bound to at most prec (window clipped accordingly).
inline TruncatedSeries truncate(const TruncatedSeries& a, int prec) {
  if (prec >= a.prec()) return a;
  return detail::build_series(std::min(a.low(), prec + 1), prec,
                              [&](int e) { return a.coeff(e); });
}

/// Multiplies by t^d: exact monomial factor, so both window ends shift by d.
inline TruncatedSeries shift(const TruncatedSeries& a, int d) {
  return detail::build_series(a.low() + d, a.prec() + d,
                              [&](int e) { return a.coeff(e - d); });
}

inline TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  int prec = std::min(a.prec(), b.prec());
  int low = std::min(a.low(), b.low());
  return detail::build_series(std::min(low, prec + 1), prec, [&](int e) {
    Rational s = (e >= a.low() && e <= a.prec()) ? a.coeff(e) : Rational(0);
    if (e >= b.low() && e <= b.prec()) s += b.coeff(e);
    return s;
  });
}

inline TruncatedSeries operator-(const TruncatedSeries& a) {
  return detail::build_series(a.low(), a.prec(), [&](int e) { return Rational(-a.coeff(e)); });
}

inline TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a + (-b);
}

inline TruncatedSeries operator*(const Rational& c, const TruncatedSeries& a) {
  return detail::build_series(a.low(), a.prec(), [&](int e) { return Rational(c * a.coeff(e)); });
}

/// Cauchy product.  A coefficient is known only when every contributing pair
/// is, giving prec = min(a.prec + val(b), b.prec + val(a)).
/// Naive O(W^2) convolution: window widths stay desk-scale here; swap in a
/// faster convolution if precision demands ever grow.
inline TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  int prec = std::min(a.prec() + b.val(), b.prec() + a.val());
  int low = a.low() + b.low();
  return detail::build_series(std::min(low, prec + 1), prec, [&](int e) {
    Rational s = 0;
    int m_lo = std::max(a.low(), e - b.prec());
    int m_hi = std::min(a.prec(), e - b.low());
    for (int m = m_lo; m <= m_hi; ++m) s += a.coeff(m) * b.coeff(e - m);
    return s;
  });
}

/// d/dt, termwise; the unknown coefficient at prec+1 makes the result unknown
/// from prec on, so precision drops by one.
inline TruncatedSeries derive(const TruncatedSeries& a) {
  return detail::build_series(a.low() - 1, a.prec() - 1,
                              [&](int e) { return Rational(Rational(e + 1) * a.coeff(e + 1)); });
}

/// Multiplicative inverse, to the maximal provable precision: for val(a) = v
/// the result lives on [-v, a.prec() - 2v] (coefficient k of the inverse
/// depends on a's coefficients through k + 2v).
inline TruncatedSeries invert(const TruncatedSeries& a) {
  int v = a.val();
  if (v > a.prec()) throw AllZeroToPrecision("cannot invert a series with no known nonzero coefficient");
  int n = a.prec() - v;  // unit part u known on t^0..t^n
  const Rational lead = a.coeff(v);
  std::vector<Rational> w(static_cast<std::size_t>(n + 1));
  w[0] = 1 / lead;
  for (int e = 1; e <= n; ++e) {
    Rational s = 0;
    for (int k = 1; k <= e; ++k) s += a.coeff(v + k) * w[static_cast<std::size_t>(e - k)];
    w[static_cast<std::size_t>(e)] = -s / lead;
  }
  return detail::build_series(-v, a.prec() - 2 * v,
                              [&](int e) { return w[static_cast<std::size_t>(e + v)]; });
}

enum class ElementaryKind { Exp, Sin, Cos };

/// Taylor series of exp(ct), sin(ct), cos(ct) through t^prec, exact rationals.
inline TruncatedSeries elementary(ElementaryKind kind, const Rational& c, int prec) {
  return detail::build_series(0, prec, [&](int e) -> Rational {
    switch (kind) {
      case ElementaryKind::Exp:
        return rational_pow(c, e) / Rational(factorial(e));
      case ElementaryKind::Sin:
        if (e % 2 == 0) return 0;
        return (e % 4 == 1 ? 1 : -1) * rational_pow(c, e) / Rational(factorial(e));
      case ElementaryKind::Cos:
        if (e % 2 != 0) return 0;
        return (e % 4 == 0 ? 1 : -1) * rational_pow(c, e) / Rational(factorial(e));
    }
    throw std::logic_error("elementary: bad kind");
  });
}

/// (t + a)^n for any integer n, known through t^prec.  For n < 0 this needs
/// a != 0 (otherwise the expansion has an infinite principal part).
inline TruncatedSeries binomial_power(const Rational& a, int n, int prec) {
  if (a == 0) {
    if (n < 0) throw ZeroBasePoint("(t+0)^n with n < 0");
    return TruncatedSeries::monomial(1, n, prec);
  }
  int hi = n >= 0 ? std::min(n, prec) : prec;
  return detail::build_series(0, prec, [&](int e) -> Rational {
    if (e > hi) return 0;
    return binomial(n, e) * rational_pow(a, n - e);
  });
}

/// First exponent (on the shared known window) where a and b disagree, if any.
inline bool agree_to_precision(const TruncatedSeries& a, const TruncatedSeries& b,
                               int* witness = nullptr) {
  int prec = std::min(a.prec(), b.prec());
  int low = std::min(a.low(), b.low());
  for (int e = low; e <= prec; ++e) {
    Rational ca = e >= a.low() ? a.coeff(e) : Rational(0);
    Rational cb = e >= b.low() ? b.coeff(e) : Rational(0);
    if (ca != cb) {
      if (witness) *witness = e;
      return false;
    }
  }
  return true;
}

}  // namespace wittkit
