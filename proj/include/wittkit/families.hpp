#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wittkit/errors.hpp"
#include "wittkit/series_parser.hpp"
#include "wittkit/vector_field.hpp"

namespace wittkit {

/// The seven classical realizations shipped with the library.  B1-B3 are
/// one-index families, B4-B7 two-index; B2 and B4 carry a second generator
/// role M alongside L, and B6 depends on a nonzero base point a.
enum class Family { B1, B2, B3, B4, B5, B6, B7 };
enum class Role { L, M };
enum class Relation { LL, LM, MM };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::B1: return "B1";
    case Family::B2: return "B2";
    case Family::B3: return "B3";
    case Family::B4: return "B4";
    case Family::B5: return "B5";
    case Family::B6: return "B6";
    case Family::B7: return "B7";
  }
  throw DomainError("unknown family");
}

inline Family family_from_name(const std::string& s) {
  for (Family f : {Family::B1, Family::B2, Family::B3, Family::B4, Family::B5, Family::B6,
                   Family::B7})
    if (family_name(f) == s) return f;
  throw DomainError("unknown family name: " + s);
}

inline std::string relation_name(Relation r) {
  switch (r) {
    case Relation::LL: return "LL";
    case Relation::LM: return "LM";
    case Relation::MM: return "MM";
  }
  throw DomainError("unknown relation");
}

inline int family_arity(Family f) {
  return (f == Family::B1 || f == Family::B2 || f == Family::B3) ? 1 : 2;
}

inline bool family_has_m_role(Family f) { return f == Family::B2 || f == Family::B4; }

/// Coefficient function of the generator as a series-grammar expression; the
/// grammar front end is the single entry point for building realizations.
inline std::string generator_expression(Family f, Role r, int m, int n, const Rational& a) {
  std::ostringstream e;
  switch (f) {
    case Family::B1:
      e << "2*sin(" << m << "*t)";
      break;
    case Family::B2:
      e << "2*" << (r == Role::L ? "sin" : "cos") << "(" << m << "*t)";
      break;
    case Family::B3:
      e << "exp(" << m << "*t)";
      break;
    case Family::B4:
      e << (r == Role::L ? "sin" : "cos") << "(" << m << "*t)*exp(" << n << "*t)";
      break;
    case Family::B5:
      e << "t^" << n << "*exp(" << m << "*t)";
      break;
    case Family::B6:
      e << "t^" << m << "*(t" << (a < 0 ? "-" : "+") << to_string(a < 0 ? Rational(-a) : a)
        << ")^" << n;
      break;
    case Family::B7:
      e << "sin(t)^" << m << "*cos(t)^" << n;
      break;
  }
  return e.str();
}

/// Builds the generator as an element known through prec.  Two-index families
/// read (m, n); one-index families read m only and require n = 0.
inline VectorField instantiate(Family f, Role r, int m, int n, const Rational& a, int prec) {
  if (r == Role::M && !family_has_m_role(f))
    throw DomainError(family_name(f) + " has no M generators");
  if (family_arity(f) == 1 && n != 0)
    throw DomainError(family_name(f) + " generators carry a single index");
  if (f == Family::B6 && a == 0) throw DomainError("base point must be nonzero");
  return vf_from_series(parse_series_expr(generator_expression(f, r, m, n, a), prec + 1));
}

/// One term of a structure-constant right-hand side: coef * (role)_{m[,n]}.
struct BracketTerm {
  Rational coef;
  Role role;
  int m, n;
};

/// The claimed expansion of [role1_{(m,n)}, role2_{(k,l)}] for the family.
/// One-index families use m and k as the two generator indices (n = l = 0).
inline std::vector<BracketTerm> relation_rhs(Family f, Relation rel, int m, int n, int k,
                                             int l) {
  const Rational half(1, 2);
  switch (f) {
    case Family::B1:
      if (rel == Relation::LL)
        return {{Rational(k - m), Role::L, m + k, 0}, {Rational(m + k), Role::L, m - k, 0}};
      break;
    case Family::B2:
      switch (rel) {
        case Relation::LL:
          return {{Rational(k - m), Role::L, m + k, 0}, {Rational(m + k), Role::L, m - k, 0}};
        case Relation::LM:
          return {{Rational(k - m), Role::M, m + k, 0}, {Rational(-(m + k)), Role::M, m - k, 0}};
        case Relation::MM:
          return {{Rational(m - k), Role::L, m + k, 0}, {Rational(m + k), Role::L, m - k, 0}};
      }
      break;
    case Family::B3:
      if (rel == Relation::LL) return {{Rational(k - m), Role::L, m + k, 0}};
      break;
    case Family::B4:
      switch (rel) {
        case Relation::LL:
          return {{Rational(k - m) * half, Role::L, m + k, n + l},
                  {Rational(k + m) * half, Role::L, m - k, n + l},
                  {Rational(n - l) * half, Role::M, m + k, n + l},
                  {Rational(l - n) * half, Role::M, m - k, n + l}};
        case Relation::LM:
          return {{Rational(k - m) * half, Role::M, m + k, n + l},
                  {Rational(-(k + m)) * half, Role::M, m - k, n + l},
                  {Rational(l - n) * half, Role::L, m + k, n + l},
                  {Rational(l - n) * half, Role::L, m - k, n + l}};
        case Relation::MM:
          return {{Rational(m - k) * half, Role::L, m + k, n + l},
                  {Rational(k + m) * half, Role::L, m - k, n + l},
                  {Rational(l - n) * half, Role::M, m + k, n + l},
                  {Rational(l - n) * half, Role::M, m - k, n + l}};
      }
      break;
    case Family::B5:
      if (rel == Relation::LL)
        return {{Rational(k - m), Role::L, m + k, n + l},
                {Rational(l - n), Role::L, m + k, n + l - 1}};
      break;
    case Family::B6:
      if (rel == Relation::LL)
        return {{Rational(k - m), Role::L, m + k - 1, n + l},
                {Rational(l - n), Role::L, m + k, n + l - 1}};
      break;
    case Family::B7:
      if (rel == Relation::LL)
        return {{Rational(k - m), Role::L, m + k - 1, n + l + 1},
                {Rational(-(l - n)), Role::L, m + k + 1, n + l - 1}};
      break;
  }
  throw DomainError(family_name(f) + " has no " + relation_name(rel) + " relation");
}

/// Outcome of checking one relation instance.
struct RelationOutcome {
  enum class Status { Pass, Fail, Skipped } status;
  int first = 0;        // Fail: first index where the sides disagree
  Rational lhs, rhs;    // Fail: the two coefficients there
  std::string reason;   // Skipped: why no index could be compared

  static RelationOutcome pass() { return {Status::Pass, 0, 0, 0, ""}; }
};

/// Checks relation instances of one family at one precision, caching the
/// instantiated generators (sweeps revisit the same indices constantly).
class FamilyVerifier {
 public:
  explicit FamilyVerifier(int prec) : m_prec(prec) {
    if (prec < 0) throw DomainError("verification precision must be nonnegative");
  }

  int prec() const { return m_prec; }

  const VectorField& generator(Family f, Role r, int m, int n, const Rational& a) {
    auto key = std::make_tuple(static_cast<int>(f), static_cast<int>(r), m, n, to_string(a));
    auto it = m_cache.find(key);
    if (it == m_cache.end())
      it = m_cache.emplace(key, instantiate(f, r, m, n, a, m_prec)).first;
    return it->second;
  }

  /// [first_{(m,n)}, second_{(k,l)}] against the family's claimed expansion,
  /// compared on the window where both sides are known.
  RelationOutcome check(Family f, Relation rel, int m, int n, int k, int l,
                        const Rational& a) {
    Role r1 = rel == Relation::MM ? Role::M : Role::L;
    Role r2 = rel == Relation::LL ? Role::L : Role::M;
    VectorField lhs = bracket(generator(f, r1, m, n, a), generator(f, r2, k, l, a));
    VectorField rhs = VectorField::zero(m_prec);
    for (const BracketTerm& t : relation_rhs(f, rel, m, n, k, l))
      rhs = rhs + t.coef * generator(f, t.role, t.m, t.n, a);

    // Below the shared precision both sides are fully known (stored or known
    // zero), so the comparison is decided there.  It is vacuous only when one
    // side claims content that sits entirely above the shared window; two
    // known-zero sides verify the (trivially true) instance.
    int hi = std::min(lhs.prec(), rhs.prec());
    bool lhs_zero = lhs.known_zero(), rhs_zero = rhs.known_zero();
    if (!(lhs_zero && rhs_zero)) {
      int content = lhs_zero ? rhs.val() : rhs_zero ? lhs.val() : std::min(lhs.val(), rhs.val());
      if (hi < content)
        return {RelationOutcome::Status::Skipped, 0, 0, 0, "content-above-shared-window"};
    }
    if (auto w = first_difference(lhs, rhs))
      return {RelationOutcome::Status::Fail, *w, lhs.coeff(*w), rhs.coeff(*w), ""};
    return RelationOutcome::pass();
  }

 private:
  int m_prec;
  std::map<std::tuple<int, int, int, int, std::string>, VectorField> m_cache;
};

/// One line of a verification report.
struct SuiteLine {
  Family family;
  Relation rel;
  std::optional<Rational> base_point;
  std::vector<int> params;  // (i, j) or (m, n, k, l)
  RelationOutcome outcome;
};

inline std::string format_suite_line(const SuiteLine& line) {
  std::ostringstream o;
  o << family_name(line.family) << " " << relation_name(line.rel);
  if (line.base_point) o << " a=" << to_string(*line.base_point);
  o << " (";
  for (std::size_t i = 0; i < line.params.size(); ++i)
    o << (i ? "," : "") << line.params[i];
  o << ")";
  switch (line.outcome.status) {
    case RelationOutcome::Status::Pass:
      o << " Pass";
      break;
    case RelationOutcome::Status::Fail:
      o << " Fail first=" << line.outcome.first << " lhs=" << to_string(line.outcome.lhs)
        << " rhs=" << to_string(line.outcome.rhs);
      break;
    case RelationOutcome::Status::Skipped:
      o << " Skipped reason=" << line.outcome.reason;
      break;
  }
  return o.str();
}

struct SuiteReport {
  std::vector<SuiteLine> lines;
  int passed = 0, failed = 0, skipped = 0;

  void add(SuiteLine line) {
    switch (line.outcome.status) {
      case RelationOutcome::Status::Pass: ++passed; break;
      case RelationOutcome::Status::Fail: ++failed; break;
      case RelationOutcome::Status::Skipped: ++skipped; break;
    }
    lines.push_back(std::move(line));
  }

  std::string summary() const {
    std::ostringstream o;
    o << "summary pass=" << passed << " fail=" << failed << " skipped=" << skipped;
    return o.str();
  }
};

inline std::vector<Relation> family_relations(Family f) {
  if (family_has_m_role(f)) return {Relation::LL, Relation::LM, Relation::MM};
  return {Relation::LL};
}

inline const std::vector<Rational>& default_base_points() {
  static const std::vector<Rational> pts = {Rational(1), Rational(2), Rational(-1, 2)};
  return pts;
}

/// Sweeps every relation of the selected families over all index tuples with
/// entries in [-bound, bound], in deterministic ascending order.  B6 runs once
/// per base point.  Families without a base point ignore base_points.
inline SuiteReport run_suite(int prec, int bound, const std::vector<Family>& families,
                             const std::vector<Rational>& base_points) {
  if (bound < 0) throw DomainError("index bound must be nonnegative");
  SuiteReport report;
  for (Family f : families) {
    const std::vector<Rational> as =
        f == Family::B6 ? base_points : std::vector<Rational>{Rational(0)};
    for (const Rational& a : as) {
      FamilyVerifier verifier(prec);
      for (Relation rel : family_relations(f)) {
        if (family_arity(f) == 1) {
          for (int i = -bound; i <= bound; ++i)
            for (int j = -bound; j <= bound; ++j) {
              SuiteLine line{f, rel, std::nullopt, {i, j},
                             verifier.check(f, rel, i, 0, j, 0, a)};
              report.add(std::move(line));
            }
        } else {
          for (int m = -bound; m <= bound; ++m)
            for (int n = -bound; n <= bound; ++n)
              for (int k = -bound; k <= bound; ++k)
                for (int l = -bound; l <= bound; ++l) {
                  SuiteLine line{f, rel,
                                 f == Family::B6 ? std::optional<Rational>(a) : std::nullopt,
                                 {m, n, k, l}, verifier.check(f, rel, m, n, k, l, a)};
                  report.add(std::move(line));
                }
        }
      }
    }
  }
  return report;
}

inline std::vector<Family> all_families() {
  return {Family::B1, Family::B2, Family::B3, Family::B4, Family::B5, Family::B6, Family::B7};
}

inline SuiteReport run_suite(int prec, int bound) {
  return run_suite(prec, bound, all_families(), default_base_points());
}

}  // namespace wittkit
