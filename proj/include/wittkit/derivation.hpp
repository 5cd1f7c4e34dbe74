#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wittkit/element_format.hpp"
#include "wittkit/errors.hpp"
#include "wittkit/vector_field.hpp"

namespace wittkit {

/// A derivation presented by its values on basis elements: entries (i, D(L_i))
/// with distinct ascending indices >= -1.  prec is the least entry precision.
struct DerivationTable {
  std::vector<std::pair<int, VectorField>> entries;
  int prec;

  explicit DerivationTable(std::vector<std::pair<int, VectorField>> entries_)
      : entries(std::move(entries_)), prec(0) {
    if (entries.empty()) throw DomainError("derivation table is empty");
    prec = entries.front().second.prec();
    for (std::size_t k = 0; k < entries.size(); ++k) {
      if (entries[k].first < -1) throw DomainError("derivation table index below -1");
      if (k > 0 && entries[k].first <= entries[k - 1].first)
        throw DomainError("derivation table indices must be distinct and ascending");
      prec = std::min(prec, entries[k].second.prec());
    }
  }

  const VectorField* find(int i) const {
    for (const auto& [j, d] : entries)
      if (j == i) return &d;
    return nullptr;
  }

  int max_index() const { return entries.back().first; }
};

/// Values of ad w on L_-1..L_M, each truncated to prec.  Needs
/// w.prec >= prec + 1 so the entry at index -1 is still known through prec.
inline DerivationTable tabulate_ad(const VectorField& w, int M, int prec) {
  if (M < -1) throw DomainError("tabulation range must reach index -1");
  if (w.prec() < prec + 1)
    throw DomainError("need the derivation direction known through prec + 1");
  std::vector<std::pair<int, VectorField>> entries;
  for (int i = -1; i <= M; ++i)
    entries.emplace_back(i, truncate(bracket_basis(w, i), prec));
  return DerivationTable(std::move(entries));
}

/// Checks the derivation property on every entry pair: with [L_i, L_j] =
/// (j - i) L_{i+j}, the table must satisfy
///   (j - i) D(L_{i+j}) = [D(L_i), L_j] + [L_i, D(L_j)]
/// wherever all three entries exist, compared on the shared known window.
/// Returns the first violating pair (i, j), or nothing if all pairs pass.
inline std::optional<std::pair<int, int>> check_derivation(const DerivationTable& table) {
  for (std::size_t a = 0; a < table.entries.size(); ++a) {
    for (std::size_t b = a + 1; b < table.entries.size(); ++b) {
      const auto& [i, Di] = table.entries[a];
      const auto& [j, Dj] = table.entries[b];
      const VectorField* Dij = table.find(i + j);
      if (!Dij) continue;
      VectorField lhs = Rational(j - i) * *Dij;
      VectorField rhs = bracket_basis(Di, j) + bracket_basis(i, Dj);
      if (!eq_to_precision(lhs, rhs)) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

/// Reconstructs w with D = ad w from the table, to the table's precision.
///
/// From D(L_0) = [w, L_0] = -sum_m m w_m L_m the coefficients w_m for m != 0
/// are read off directly; the L_0 component is invisible there (ad L_0 kills
/// L_0) and is recovered as the L_1 coefficient of (D - ad v)(L_1).  Every
/// entry is then checked against ad w; the first residual that is nonzero on
/// the shared window rejects the table with that entry's index and residual.
inline VectorField recover_inner(const DerivationTable& table) {
  const VectorField* D0 = table.find(0);
  const VectorField* D1 = table.find(1);
  if (!D0 || !D1)
    throw DomainError("inner reconstruction needs the entries D(L[0]) and D(L[1])");
  const int P = table.prec;

  VectorField v = VectorField(detail::build_series(D0->low(), P, [&](int m) {
    return m == 0 ? Rational(0) : Rational(-D0->coeff(m) / m);
  }));
  VectorField r1 = *D1 - bracket_basis(v, 1);
  Rational c0 = r1.prec() >= 1 ? r1.coeff(1) : Rational(0);
  VectorField w = v + VectorField::term(c0, 0, P);

  for (const auto& [i, Di] : table.entries) {
    VectorField residual = Di - bracket_basis(w, i);
    if (!residual.known_zero())
      throw NotInnerAtPrecision(i, print_element(residual));
  }
  return w;
}

}  // namespace wittkit
