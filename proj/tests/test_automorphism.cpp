#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support/test_support.hpp"
#include "wittkit/automorphism.hpp"
#include "wittkit/element_format.hpp"

using namespace wittkit;
using wktest::Poly;
using wktest::poly_add;
using wktest::poly_coeff;
using wktest::poly_derive;
using wktest::poly_field_bracket;
using wktest::poly_mul;
using wktest::poly_of;
using wktest::poly_scale;
using wktest::random_field;
using wktest::random_field_with_val;
using wktest::random_nonzero_rational;
using wktest::random_rational;
using wktest::show;

namespace {

/// Index-space poly from a field window (exact, unbounded oracle).
Poly lpoly(const VectorField& x) { return poly_of(x.window()); }

/// Exact index-space bracket via the series derivative identity: shift indices
/// to t-exponents (+1), apply f g' - g f', shift back.
Poly lpoly_bracket(const Poly& a, const Poly& b) {
  Poly fa, fb;
  for (const auto& [i, c] : a) fa[i + 1] = c;
  for (const auto& [i, c] : b) fb[i + 1] = c;
  Poly r;
  for (const auto& [e, c] : poly_field_bracket(fa, fb))
    if (c != 0) r[e - 1] = c;
  return r;
}

/// Exact exp(ad x)(y) on polynomials, keeping indices <= cap.  Requires every
/// index of x to be >= 1 so the expansion is finite below cap.
Poly poly_exp_ad(const Poly& x, const Poly& y, int cap) {
  Poly acc = y, term = y;
  for (int k = 1; !term.empty(); ++k) {
    term = poly_scale(Rational(1, k), lpoly_bracket(x, term));
    while (!term.empty() && term.begin()->second == 0) term.erase(term.begin());
    if (!term.empty() && term.begin()->first > cap) break;
    acc = poly_add(acc, term);
  }
  return acc;
}

VectorField random_direction(std::mt19937& rng, int prec) {
  return random_field_with_val(rng, 1 + static_cast<int>(rng() % 3), prec);
}

}  // namespace

TEST_CASE("exponential action on basis examples") {
  // exp(ad L_1)(L_-1): the chain L_-1 -> -2 L_0 -> L_1 -> 0 terminates.
  VectorField r = exp_ad(VectorField::basis(1, 16), VectorField::basis(-1, 16));
  REQUIRE(print_element(r) == "L[-1] - 2*L[0] + L[1] @prec 15");

  // A direction that is zero at every known index acts as the identity.
  VectorField y = VectorField::basis(-1, 16) + VectorField::basis(4, 16);
  REQUIRE(exp_ad(VectorField::zero(9), y) == y);

  // exp(ad L_2)(L_0) = L_0 - 2 L_2 + 2 L_4 - ... (weights -2, then +... check
  // against the exact poly expansion instead of hand arithmetic).
  VectorField r2 = exp_ad(VectorField::basis(2, 16), VectorField::basis(0, 16));
  Poly want = poly_exp_ad(lpoly(VectorField::basis(2, 16)), lpoly(VectorField::basis(0, 16)),
                          r2.prec());
  for (int i = r2.low(); i <= r2.prec(); ++i) REQUIRE(r2.coeff(i) == poly_coeff(want, i));
  REQUIRE(r2.coeff(2) == -2);
}

TEST_CASE("exponential action matches the exact polynomial expansion") {
  std::mt19937 rng(4401);
  for (int iter = 0; iter < 40; ++iter) {
    VectorField x = random_field_with_val(rng, 1 + static_cast<int>(rng() % 2), 6);
    VectorField y = random_field(rng, -1, 5);
    VectorField r = exp_ad(x, y);
    Poly want = poly_exp_ad(lpoly(x), lpoly(y), r.prec());
    for (int i = r.low(); i <= r.prec(); ++i) {
      INFO("x=" << show(x) << " y=" << show(y) << " r=" << show(r) << " at " << i);
      REQUIRE(r.coeff(i) == poly_coeff(want, i));
    }
  }
}

TEST_CASE("exponential action never claims a coefficient truncation could change") {
  // Evaluate on full polynomials, then on truncations of the same inputs: every
  // coefficient the truncated run claims must equal the exact full value.
  std::mt19937 rng(4402);
  for (int iter = 0; iter < 30; ++iter) {
    VectorField xf = random_field_with_val(rng, 1, 9);
    VectorField yf = random_field(rng, -1, 9);
    Poly exact_dir = lpoly(xf), exact_arg = lpoly(yf);
    int P = 4 + static_cast<int>(rng() % 4);
    VectorField r = exp_ad(truncate(xf, P), truncate(yf, P));
    Poly want = poly_exp_ad(exact_dir, exact_arg, r.prec());
    for (int i = r.low(); i <= r.prec(); ++i) {
      INFO("x=" << show(xf) << " y=" << show(yf) << " P=" << P << " r=" << show(r));
      REQUIRE(r.coeff(i) == poly_coeff(want, i));
    }
  }
}

TEST_CASE("exponential action is a Lie homomorphism") {
  std::mt19937 rng(4403);
  for (int iter = 0; iter < 25; ++iter) {
    VectorField x = random_direction(rng, 12);
    VectorField y = random_field(rng, -1, 12);
    VectorField z = random_field(rng, -1, 12);
    VectorField lhs = exp_ad(x, bracket(y, z));
    VectorField rhs = bracket(exp_ad(x, y), exp_ad(x, z));
    INFO("x=" << show(x) << "\ny=" << show(y) << "\nz=" << show(z));
    REQUIRE(eq_to_precision(lhs, rhs));
  }
}

TEST_CASE("exponential action inverts by negating the direction") {
  std::mt19937 rng(4404);
  for (int iter = 0; iter < 25; ++iter) {
    VectorField x = random_direction(rng, 12);
    VectorField y = random_field(rng, -1, 12);
    VectorField back = exp_ad(-x, exp_ad(x, y));
    INFO("x=" << show(x) << "\ny=" << show(y) << "\nback=" << show(back));
    REQUIRE(eq_to_precision(back, y));
  }
}

TEST_CASE("scale action on the basis and the conjugation identity") {
  std::mt19937 rng(4405);
  Rational b(3, 2);
  for (int i = -2; i <= 5; ++i) {
    VectorField s = scale_apply(b, VectorField::basis(i, 8));
    REQUIRE(s.coeff(i) == rational_pow(b, i));
  }
  for (int iter = 0; iter < 20; ++iter) {
    Rational c = random_nonzero_rational(rng);
    VectorField y = random_field(rng, -1, 10);
    VectorField z = random_field(rng, -1, 10);
    REQUIRE(scale_apply(c, bracket(y, z)) == bracket(scale_apply(c, y), scale_apply(c, z)));

    // scale_c . exp(ad x) . scale_{1/c} = exp(ad scale_c(x))
    VectorField x = random_direction(rng, 10);
    VectorField lhs = scale_apply(c, exp_ad(x, scale_apply(1 / c, y)));
    VectorField rhs = exp_ad(scale_apply(c, x), y);
    REQUIRE(eq_to_precision(lhs, rhs));
  }
}

TEST_CASE("conjugator solve recovers the direction for level <= 0 heads") {
  std::mt19937 rng(4406);
  for (int iter = 0; iter < 30; ++iter) {
    bool laurent_head = iter % 2 == 0;
    Rational am1 = laurent_head ? random_nonzero_rational(rng) : Rational(0);
    Rational a0 = laurent_head ? random_rational(rng) : random_nonzero_rational(rng);
    VectorField head(-1, 14, [&] {
      std::vector<Rational> c(16);
      c[0] = am1;
      c[1] = a0;
      return c;
    }());
    VectorField x = random_direction(rng, 12);
    VectorField y = exp_ad(x, head);
    VectorField solved = solve_exp_conjugator(y, am1, a0);
    INFO("head=" << show(head) << "\nx=" << show(x) << "\nsolved=" << show(solved));
    REQUIRE(eq_to_precision(solved, x));
    REQUIRE(eq_to_precision(exp_ad(solved, head), y));
  }
}

TEST_CASE("conjugator solve rejects heads the target cannot match") {
  VectorField y = VectorField::basis(-1, 10) + VectorField::basis(2, 10);
  REQUIRE_THROWS_AS(solve_exp_conjugator(y, Rational(0), Rational(0)), InconsistentHead);
  REQUIRE_THROWS_AS(solve_exp_conjugator(y, Rational(2), Rational(0)), InconsistentHead);
  // Level-0 head against a target with a visible L_-1 component.
  REQUIRE_THROWS_AS(solve_exp_conjugator(y, Rational(0), Rational(1)), InconsistentHead);
  // For a val -1 head the L_0 coefficient is an equation, not a constraint:
  // any declared a_0 is reachable by adjusting x_1.
  VectorField x15 = solve_exp_conjugator(y, Rational(1), Rational(5));
  VectorField head(-1, 10, [] {
    std::vector<Rational> c(12);
    c[0] = 1;
    c[1] = 5;
    return c;
  }());
  REQUIRE(eq_to_precision(exp_ad(x15, head), y));
  // A val-0 head does pin the L_0 coefficient.
  VectorField y0 = Rational(2) * VectorField::basis(0, 10) + VectorField::basis(3, 10);
  REQUIRE_THROWS_AS(solve_exp_conjugator(y0, Rational(0), Rational(1)), InconsistentHead);
}

TEST_CASE("normal form solves conjugates of pure heads") {
  std::mt19937 rng(4407);
  for (int iter = 0; iter < 30; ++iter) {
    int i0 = -1 + static_cast<int>(rng() % 4);
    Rational lead = random_nonzero_rational(rng);
    VectorField x = random_direction(rng, 14);
    VectorField y = exp_ad(x, VectorField::term(lead, i0, 14));
    NormalFormReport rep = normal_form(y);
    INFO("i0=" << i0 << " lead=" << lead << " x=" << show(x) << "\ny=" << show(y));
    REQUIRE(rep.valuation == i0);
    REQUIRE(rep.leading == lead);
    REQUIRE(rep.solved());
    VectorField redo = exp_ad(rep.conjugator, VectorField::term(lead, i0, 14));
    REQUIRE(eq_to_precision(redo, y));
  }
  // Conjugator precision accounting: val -1 target at prec 16 leaves prec 17.
  VectorField y = VectorField::basis(-1, 16) + VectorField::basis(3, 16);
  NormalFormReport rep = normal_form(y);
  REQUIRE(rep.conjugator.prec() == 17);
  REQUIRE(rep.solved());
}

TEST_CASE("normal form reports the obstruction residual at twice the valuation") {
  std::mt19937 rng(4408);
  for (int iter = 0; iter < 25; ++iter) {
    Rational c = random_nonzero_rational(rng);
    Rational lead = random_nonzero_rational(rng);
    VectorField x = random_direction(rng, 14);
    VectorField y = exp_ad(x, VectorField::term(lead, 1, 14) + VectorField::term(c, 2, 14));
    NormalFormReport rep = normal_form(y);
    INFO("lead=" << lead << " c=" << c << " x=" << show(x));
    REQUIRE(rep.valuation == 1);
    REQUIRE(rep.leading == lead);
    REQUIRE_FALSE(rep.solved());
    REQUIRE(rep.obstruction->first == 2);
    REQUIRE(rep.obstruction->second == c);
  }
  // Deeper valuation: an additive bump at index 2*v surfaces as the residual.
  std::mt19937 rng2(4409);
  for (int iter = 0; iter < 10; ++iter) {
    Rational eps = random_nonzero_rational(rng2);
    VectorField x = random_direction(rng2, 14);
    VectorField y =
        exp_ad(x, VectorField::basis(2, 14)) + VectorField::term(eps, 4, 14);
    NormalFormReport rep = normal_form(y);
    REQUIRE(rep.valuation == 2);
    REQUIRE_FALSE(rep.solved());
    REQUIRE(rep.obstruction->first == 4);
    REQUIRE(rep.obstruction->second == eps);
  }
  REQUIRE_THROWS_AS(normal_form(VectorField::zero(8)), ZeroElement);
  REQUIRE_THROWS_AS(normal_form(VectorField::basis(-3, 8)), DomainError);
}

TEST_CASE("factorization inverts tabulation") {
  std::mt19937 rng(4410);
  for (int iter = 0; iter < 30; ++iter) {
    Automorphism a(random_direction(rng, 12), random_nonzero_rational(rng));
    Automorphism f = aut_factorize(tabulate(a, -1, 10, 12));
    INFO("x=" << show(a.x) << " b=" << a.b << "\nrec=" << show(f.x) << " b=" << f.b);
    REQUIRE(f.b == a.b);
    REQUIRE(eq_to_precision(f.x, a.x));
  }
}

TEST_CASE("factorization rejects corrupted tables") {
  std::mt19937 rng(4411);
  Automorphism a(VectorField::term(Rational(1, 2), 1, 12) + VectorField::basis(3, 12),
                 Rational(-2));
  ImageTable table = tabulate(a, -1, 8, 12);

  // Any single-coefficient corruption inside the checked window must be caught.
  for (int victim = 0; victim < 6; ++victim) {
    auto entries = table.entries;
    auto& [i, img] = entries[static_cast<std::size_t>(rng() % entries.size())];
    int slot = img.low() + static_cast<int>(rng() % (table.prec - img.low()));
    img = img + VectorField::term(random_nonzero_rational(rng), slot, img.prec());
    INFO("entry " << i << " bumped at " << slot);
    REQUIRE_THROWS_AS(aut_factorize(ImageTable(entries)), NotAutomorphism);
  }

  // Tables must contain the images of L_0 and L_1.
  std::vector<std::pair<int, VectorField>> no0, no1;
  for (const auto& e : table.entries) {
    if (e.first != 0) no0.push_back(e);
    if (e.first != 1) no1.push_back(e);
  }
  REQUIRE_THROWS_AS(aut_factorize(ImageTable(no0)), NotAutomorphism);
  REQUIRE_THROWS_AS(aut_factorize(ImageTable(no1)), NotAutomorphism);

  // The image of L_0 must be L_0 modulo filtration level 1.
  auto bad = table.entries;
  for (auto& [i, img] : bad)
    if (i == 0) img = Rational(2) * img;
  REQUIRE_THROWS_AS(aut_factorize(ImageTable(bad)), NotAutomorphism);
}

TEST_CASE("composition agrees with applying the factors in order") {
  std::mt19937 rng(4412);
  for (int iter = 0; iter < 15; ++iter) {
    Automorphism s(random_direction(rng, 12), random_nonzero_rational(rng));
    Automorphism t(random_direction(rng, 12), random_nonzero_rational(rng));
    Automorphism c = aut_compose(s, t, 10);
    for (int probe = 0; probe < 3; ++probe) {
      VectorField y = random_field(rng, -1, 10);
      VectorField via_c = aut_apply(c, y);
      VectorField via_st = aut_apply(s, aut_apply(t, y));
      INFO("s.b=" << s.b << " t.b=" << t.b << " y=" << show(y));
      REQUIRE(eq_to_precision(via_c, via_st));
    }
    REQUIRE(c.b == s.b * t.b);
  }
}

TEST_CASE("inversion composes to the identity and is involutive") {
  std::mt19937 rng(4413);
  for (int iter = 0; iter < 15; ++iter) {
    Automorphism s(random_direction(rng, 12), random_nonzero_rational(rng));
    Automorphism inv = aut_invert(s);
    Automorphism round = aut_invert(inv);
    REQUIRE(round.b == s.b);
    REQUIRE(round.x == s.x);

    Automorphism id = aut_compose(s, inv, 9);
    REQUIRE(id.b == 1);
    REQUIRE(id.x.known_zero());

    VectorField y = random_field(rng, -1, 12);
    REQUIRE(eq_to_precision(aut_apply(inv, aut_apply(s, y)), y));
  }
  Automorphism s(VectorField::basis(2, 12), Rational(3));
  REQUIRE(aut_invert(s, 5).x.prec() == 5);
}

TEST_CASE("rational roots and conjugating scales") {
  REQUIRE(rational_root(Rational(8), 3) == Rational(2));
  REQUIRE(rational_root(Rational(-27, 64), 3) == Rational(-3, 4));
  REQUIRE(rational_root(Rational(4), 2) == Rational(2));
  REQUIRE(rational_root(Rational(1, 8), -3) == Rational(2));
  REQUIRE_FALSE(rational_root(Rational(2), 2).has_value());
  REQUIRE_FALSE(rational_root(Rational(-4), 2).has_value());
  REQUIRE(rational_root(Rational(0), 3) == Rational(0));
  REQUIRE_FALSE(rational_root(Rational(0), -2).has_value());

  std::mt19937 rng(4414);
  for (int iter = 0; iter < 20; ++iter) {
    Rational b = random_nonzero_rational(rng);
    int i0 = -3 + static_cast<int>(rng() % 7);
    Rational from = random_nonzero_rational(rng);
    Rational to = from * rational_pow(b, i0);
    auto found = conjugating_scale(from, to, i0);
    INFO("b=" << b << " i0=" << i0 << " from=" << from);
    if (i0 == 0) {
      REQUIRE(found == Rational(1));
    } else {
      REQUIRE(found.has_value());
      REQUIRE(from * rational_pow(*found, i0) == to);
    }
  }
  REQUIRE_FALSE(conjugating_scale(Rational(3), Rational(5), 0).has_value());
  REQUIRE_FALSE(conjugating_scale(Rational(1), Rational(2), 2).has_value());
  REQUIRE_THROWS_AS(conjugating_scale(Rational(0), Rational(1), 1), ZeroElement);
}

TEST_CASE("filtration and scale preconditions") {
  REQUIRE_THROWS_AS(exp_ad(VectorField::basis(0, 8), VectorField::basis(1, 8)),
                    NotInFiltrationOne);
  REQUIRE_THROWS_AS(Automorphism(VectorField::basis(1, 8), Rational(0)), ZeroScale);
  REQUIRE_THROWS_AS(Automorphism(VectorField::basis(-1, 8), Rational(1)),
                    NotInFiltrationOne);
  REQUIRE_THROWS_AS(scale_apply(Rational(0), VectorField::basis(1, 8)), ZeroScale);
}
