#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wittkit/errors.hpp"
#include "wittkit/vector_field.hpp"

namespace wittkit {

/// Automorphism in normal form exp(ad x) . scale_b with x in filtration
/// level 1 and scale_b(L_i) = b^i L_i.  The scale parameter stays in the
/// rational model (it plays the role of exp(a0) in the one-parameter group
/// generated by ad L_0, which has no rational logarithm in general).
struct Automorphism {
  VectorField x;
  Rational b;

  Automorphism(VectorField x_, Rational b_) : x(std::move(x_)), b(std::move(b_)) {
    if (b == 0) throw ZeroScale("automorphism scale must be nonzero");
    if (!x.known_zero() && x.val() < 1)
      throw NotInFiltrationOne("automorphism direction has valuation " +
                               std::to_string(x.val()));
  }

  static Automorphism identity(int prec) { return {VectorField::zero(prec), Rational(1)}; }
};

/// exp(ad x)(y) = sum over k of (1/k!) (ad x)^k (y), summed while the k-th
/// term's valuation lower bound val(y) + k*val(x) stays within the running
/// output precision.  A direction that is zero at every known index is taken
/// as the exact zero, so the map is the identity.
inline VectorField exp_ad(const VectorField& x, const VectorField& y) {
  if (x.known_zero()) return y;
  const int vx = x.val();
  if (vx < 1)
    throw NotInFiltrationOne("exp direction has valuation " + std::to_string(vx));

  int out_prec = y.prec();
  int out_low = y.low();
  std::map<int, Rational> acc;
  for (int i = y.low(); i <= y.prec(); ++i) acc[i] = y.coeff(i);

  VectorField term = y;
  int lb = y.val();  // lower bound for val of the current term
  for (int k = 1;; ++k) {
    if (lb > out_prec - vx) break;  // all further terms known zero through out_prec
    lb += vx;
    term = Rational(1, k) * bracket(x, term);
    // Below its filtration bound the term is known zero even where its stored
    // window has already ended, so the bound caps the precision loss.
    out_prec = std::min(out_prec, std::max(term.prec(), lb - 1));
    out_low = std::min(out_low, term.low());
    for (int i = term.low(); i <= term.prec(); ++i) {
      if (i > out_prec) break;
      acc[i] += term.coeff(i);
    }
  }
  return VectorField(detail::build_series(std::min(out_low, out_prec + 1), out_prec,
                                          [&](int i) {
                                            auto it = acc.find(i);
                                            return it == acc.end() ? Rational(0) : it->second;
                                          }));
}

/// scale_b: a_i L_i -> b^i a_i L_i.
inline VectorField scale_apply(const Rational& b, const VectorField& y) {
  if (b == 0) throw ZeroScale("scale parameter must be nonzero");
  if (b == 1) return y;
  return VectorField(detail::build_series(y.low(), y.prec(), [&](int i) {
    return Rational(rational_pow(b, i) * y.coeff(i));
  }));
}

inline VectorField aut_apply(const Automorphism& a, const VectorField& y) {
  return exp_ad(a.x, scale_apply(a.b, y));
}

namespace detail {

/// Windowed expansion of exp(ad x)(h) with x and h read as exact polynomials
/// on their stored windows; keeps indices <= hi only.  x must satisfy
/// val >= 1 so the sum is finite below hi.
inline std::map<int, Rational> exp_ad_exact(const VectorField& x, const VectorField& h,
                                            int hi) {
  std::map<int, Rational> term;
  for (int i = h.low(); i <= h.prec(); ++i)
    if (h.coeff(i) != 0) term[i] = h.coeff(i);
  std::map<int, Rational> acc = term;
  for (int k = 1; !term.empty(); ++k) {
    std::map<int, Rational> next;
    for (int m = x.low(); m <= x.prec(); ++m) {
      if (x.coeff(m) == 0) continue;
      for (const auto& [n, c] : term) {
        int i = m + n;
        if (i <= hi) next[i] += Rational(n - m) * x.coeff(m) * c;
      }
    }
    for (auto& [i, c] : next) c /= k;
    for (const auto& [i, c] : next) acc[i] += c;
    term = std::move(next);
  }
  return acc;
}

inline Rational map_coeff(const std::map<int, Rational>& m, int i) {
  auto it = m.find(i);
  return it == m.end() ? Rational(0) : it->second;
}

}  // namespace detail

/// Result of the triangular head solve: the conjugator direction and, when the
/// pivot at equation index 2*val(head) vanished, that equation's residual.
struct HeadSolve {
  VectorField x;
  std::optional<std::pair<int, Rational>> obstruction;
};

/// Solves exp(ad x)(head) = target for x in filtration level 1, index by
/// index.  head is exact on its stored window with val(head) = v and leading
/// coefficient h_v; the equation at index i is linear in the new unknown
/// x_{i-v} with pivot h_v*(2v - i), which vanishes only at i = 2v (possible
/// only for v >= 1) — there the free unknown x_v is pinned to 0 (gauge
/// choice) and the residual is recorded; solving continues above it.
inline HeadSolve solve_exp_head(const VectorField& target, const VectorField& head) {
  const int v = head.val();
  const Rational hv = head.coeff(v);
  const int P = target.prec();

  for (int i = std::min(target.low(), head.low()); i <= std::min(v, P); ++i) {
    Rational want = i >= head.low() ? head.coeff(i) : Rational(0);
    if (target.coeff(i) != want)
      throw InconsistentHead("target coefficient at L[" + std::to_string(i) +
                             "] differs from the declared head");
  }

  std::map<int, Rational> unknowns;
  std::optional<std::pair<int, Rational>> obstruction;
  for (int i = v + 1; i <= P; ++i) {
    VectorField xcur = VectorField(detail::build_series(
        1, std::max(0, i - v - 1), [&](int j) { return detail::map_coeff(unknowns, j); }));
    Rational expanded = detail::map_coeff(detail::exp_ad_exact(xcur, head, i), i);
    Rational d = target.coeff(i) - expanded;
    int pivot = 2 * v - i;
    if (pivot == 0)
      obstruction = {{i, d}};
    else
      unknowns[i - v] = d / (hv * Rational(pivot));
  }

  VectorField x = VectorField(detail::build_series(
      std::min(1, P - v + 1), P - v, [&](int j) { return detail::map_coeff(unknowns, j); }));
  return {std::move(x), std::move(obstruction)};
}

/// Solves exp(ad x)(a_m1 L_-1 + a_0 L_0) = target for x in filtration level 1.
/// The target must match the head at indices <= val(head) — above that the
/// action of x genuinely moves coefficients (at index 0 already when
/// a_m1 != 0: [x_1 L_1, a_m1 L_-1] lands on L_0), so only those indices are
/// consistency constraints; solve_exp_head enforces exactly them.
inline VectorField solve_exp_conjugator(const VectorField& target, const Rational& a_m1,
                                        const Rational& a_0) {
  if (a_m1 == 0 && a_0 == 0) throw InconsistentHead("declared head is zero");
  VectorField head = a_m1 != 0
                         ? VectorField(-1, 0, {a_m1, a_0})
                         : VectorField::term(a_0, 0, 0);
  return solve_exp_head(target, head).x;
}

/// Claimed images sigma(L_i), distinct ascending indices; prec is the least
/// entry precision (every coefficient used by the factorizer is known at it).
struct ImageTable {
  std::vector<std::pair<int, VectorField>> entries;
  int prec;

  explicit ImageTable(std::vector<std::pair<int, VectorField>> entries_)
      : entries(std::move(entries_)), prec(0) {
    if (entries.empty()) throw DomainError("image table is empty");
    prec = entries.front().second.prec();
    for (std::size_t k = 0; k < entries.size(); ++k) {
      if (entries[k].first < -1)
        throw DomainError("image table index below -1");
      if (k > 0 && entries[k].first <= entries[k - 1].first)
        throw DomainError("image table indices must be distinct and ascending");
      prec = std::min(prec, entries[k].second.prec());
    }
  }

  const VectorField* find(int i) const {
    for (const auto& [j, img] : entries)
      if (j == i) return &img;
    return nullptr;
  }
};

/// Factorizes an image table into the canonical (x, b): checks the image of
/// L_0 lies in L_0 + (filtration level 1), solves for x, reads b off
/// exp(-ad x)(sigma(L_1)), and validates every supplied image against
/// b^i L_i.  Any violation rejects the table.
inline Automorphism aut_factorize(const ImageTable& images) {
  const VectorField* s0 = images.find(0);
  const VectorField* s1 = images.find(1);
  if (!s0 || !s1)
    throw NotAutomorphism("table must contain the images of L[0] and L[1]");
  const int P = images.prec;
  if (P < 1) throw NotAutomorphism("common precision too low to read the scale");
  if (s0->coeff(-1) != 0 || s0->coeff(0) != 1)
    throw NotAutomorphism("image of L[0] must lie in L[0] + (filtration level 1)");

  VectorField x = solve_exp_head(truncate(*s0, P), VectorField::basis(0, 0)).x;

  VectorField t1 = exp_ad(-x, truncate(*s1, P));
  if (t1.prec() < 1) throw NotAutomorphism("precision exhausted while reading the scale");
  const Rational b = t1.coeff(1);
  if (b == 0) throw NotAutomorphism("scale parameter reads as zero");

  for (const auto& [i, img] : images.entries) {
    VectorField ti = exp_ad(-x, truncate(img, P));
    VectorField want = VectorField::term(rational_pow(b, i), i, ti.prec());
    if (auto w = first_difference(ti, want))
      throw NotAutomorphism("image of L[" + std::to_string(i) +
                            "] is not diagonal with b^i: deviation at index " +
                            std::to_string(*w));
  }
  return Automorphism(std::move(x), b);
}

/// Images of L_lo..L_hi under the automorphism, each from a basis element
/// carried at precision prec.
inline ImageTable tabulate(const Automorphism& a, int lo, int hi, int prec) {
  std::vector<std::pair<int, VectorField>> entries;
  for (int i = lo; i <= hi; ++i)
    entries.emplace_back(i, aut_apply(a, VectorField::basis(i, prec)));
  return ImageTable(std::move(entries));
}

/// Composition via evaluate-then-factorize on the window L_-1..L_prec: the
/// verified factorizer owns all precision bookkeeping.
inline Automorphism aut_compose(const Automorphism& s, const Automorphism& t, int prec) {
  if (prec < 1) throw DomainError("composition needs prec >= 1 to read the scale");
  std::vector<std::pair<int, VectorField>> entries;
  for (int i = -1; i <= prec; ++i)
    entries.emplace_back(i, aut_apply(s, aut_apply(t, VectorField::basis(i, prec))));
  return aut_factorize(ImageTable(std::move(entries)));
}

/// Exact inverse: with s = exp(ad x) . scale_b, conjugating the exp factor
/// across the scale (scale_c . exp(ad y) . scale_{1/c} = exp(ad scale_c(y)))
/// gives s^{-1} = exp(ad(-scale_{1/b}(x))) . scale_{1/b}.
inline Automorphism aut_invert(const Automorphism& s) {
  Rational binv = 1 / s.b;
  return Automorphism(scale_apply(binv, -s.x), binv);
}

/// As above with the direction's stored precision clamped to prec.
inline Automorphism aut_invert(const Automorphism& s, int prec) {
  Automorphism inv = aut_invert(s);
  return Automorphism(truncate(inv.x, prec), inv.b);
}

/// Conjugacy normal form of y with val(y) = i0: the solve for
/// exp(ad x)(leading * L_{i0}) = y succeeds unconditionally for i0 <= 0; for
/// i0 >= 1 the pivot at index 2*i0 vanishes and a nonzero residual there is
/// reported as the obstruction (the certificate that y is not conjugate to
/// its head by this group action).
struct NormalFormReport {
  int valuation;
  Rational leading;
  VectorField conjugator;
  std::optional<std::pair<int, Rational>> obstruction;  // (index 2*valuation, residual)

  bool solved() const { return !obstruction.has_value(); }
};

inline NormalFormReport normal_form(const VectorField& y) {
  if (y.known_zero()) throw ZeroElement("normal form needs a nonzero element");
  if (y.val() < -1) throw DomainError("normal form requires valuation >= -1");
  const int i0 = y.val();
  const Rational lead = y.coeff(i0);
  HeadSolve hs = solve_exp_head(y, VectorField::term(lead, i0, i0));
  std::optional<std::pair<int, Rational>> obstruction;
  if (hs.obstruction && hs.obstruction->second != 0) obstruction = hs.obstruction;
  return {i0, lead, std::move(hs.x), std::move(obstruction)};
}

/// Largest integer r with r^n <= v (v >= 0, n >= 1), exact.
inline std::optional<Integer> integer_nth_root(const Integer& v, int n) {
  if (v < 0) return std::nullopt;
  if (v == 0 || v == 1 || n == 1) return v;
  Integer lo = 0, hi = v;
  while (lo < hi) {
    Integer mid = (lo + hi + 1) / 2;
    Integer p = 1;
    bool over = false;
    for (int k = 0; k < n && !over; ++k) {
      p *= mid;
      if (p > v) over = true;
    }
    if (over)
      hi = mid - 1;
    else
      lo = mid;
  }
  Integer p = 1;
  for (int k = 0; k < n; ++k) p *= lo;
  return p == v ? std::optional<Integer>(lo) : std::nullopt;
}

/// Rational b with b^n = r, if one exists.
inline std::optional<Rational> rational_root(const Rational& r, int n) {
  if (n == 0) return r == 1 ? std::optional<Rational>(Rational(1)) : std::nullopt;
  if (n < 0) {
    if (r == 0) return std::nullopt;
    return rational_root(1 / r, -n);
  }
  if (r == 0) return Rational(0);
  bool neg = r < 0;
  if (neg && n % 2 == 0) return std::nullopt;
  Rational a = neg ? -r : r;
  auto num = integer_nth_root(numerator(a), n);
  auto den = integer_nth_root(denominator(a), n);
  if (!num || !den) return std::nullopt;
  Rational root(*num, *den);
  return neg ? -root : root;
}

/// Scale parameter b with from * b^{i0} = to: decides whether two normal-form
/// heads of the same valuation are conjugate under the rational scale group.
inline std::optional<Rational> conjugating_scale(const Rational& from, const Rational& to,
                                                 int i0) {
  if (from == 0 || to == 0) throw ZeroElement("leading coefficients must be nonzero");
  if (i0 == 0) return from == to ? std::optional<Rational>(Rational(1)) : std::nullopt;
  auto b = rational_root(to / from, i0);
  if (b && *b == 0) return std::nullopt;
  return b;
}

}  // namespace wittkit
