#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support/test_support.hpp"
#include "wittkit/text.hpp"

using namespace wittkit;
using wktest::random_field;
using wktest::random_field_with_val;
using wktest::random_nonzero_rational;
using wktest::show;

TEST_CASE("element printing canonical forms") {
  REQUIRE(print_element(VectorField::zero(16)) == "0 @prec 16");
  REQUIRE(print_element(VectorField::basis(3, 8)) == "L[3] @prec 8");
  REQUIRE(print_element(Rational(3) * VectorField::basis(1, 15)) == "3*L[1] @prec 15");
  VectorField x = VectorField::basis(-1, 15) - Rational(2) * VectorField::basis(0, 15) +
                  VectorField::basis(1, 15);
  REQUIRE(print_element(x) == "L[-1] - 2*L[0] + L[1] @prec 15");
  VectorField y = Rational(-1) * VectorField::basis(-1, 8) +
                  Rational(3, 2) * VectorField::basis(4, 8);
  REQUIRE(print_element(y) == "-L[-1] + 3/2*L[4] @prec 8");
  REQUIRE(print_element(Rational(-5, 3) * VectorField::basis(2, 4)) == "-5/3*L[2] @prec 4");
}

TEST_CASE("element parsing accepts the grammar and roundtrips") {
  REQUIRE(parse_element("0 @prec 16") == VectorField::zero(16));
  REQUIRE(parse_element("  L[2]@prec 5 ") == VectorField::basis(2, 5));
  REQUIRE(parse_element("1*L[2] @prec 5") == VectorField::basis(2, 5));
  REQUIRE(parse_element("-L[0] @prec 3") == Rational(-1) * VectorField::basis(0, 3));

  // Repeated indices accumulate.
  VectorField acc = parse_element("L[1] + L[1] - 3*L[1] @prec 4");
  REQUIRE(acc.coeff(1) == -1);

  std::mt19937 rng(8801);
  for (int iter = 0; iter < 40; ++iter) {
    int low = -3 + static_cast<int>(rng() % 4);
    VectorField x = random_field(rng, low, low + 2 + static_cast<int>(rng() % 10));
    VectorField back = parse_element(print_element(x));
    INFO("x=" << show(x) << " printed=" << print_element(x));
    REQUIRE(back.prec() == x.prec());
    REQUIRE(eq_to_precision(back, x));
    REQUIRE(print_element(back) == print_element(x));
  }
}

TEST_CASE("element parse errors carry positions") {
  auto expect_error_at = [](const std::string& text, std::size_t offset) {
    try {
      parse_element(text);
      FAIL("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      INFO("text=" << text << " message=" << e.what());
      REQUIRE(e.position() == offset);
    }
  };
  expect_error_at("", 0);
  expect_error_at("L[2 @prec 5", 4);     // missing ']'
  expect_error_at("L(2) @prec 5", 1);    // wrong bracket
  expect_error_at("3 L[1] @prec 5", 2);  // missing '*'
  expect_error_at("L[1] @prec", 10);     // missing precision value
  expect_error_at("L[1] @prec 5 junk", 13);
  expect_error_at("L[7] @prec 5", 2);    // index above the precision
  expect_error_at("L[1] + @prec 5", 7);  // dangling separator
  REQUIRE_THROWS_AS(parse_element("5 @prec 3"), ParseError);  // bare nonzero rational
}

TEST_CASE("automorphism text roundtrip") {
  Automorphism a(VectorField::term(Rational(1, 2), 1, 14) + VectorField::basis(3, 14),
                 Rational(-2, 7));
  REQUIRE(print_aut(a) == "aut{ b = -2/7; x = 1/2*L[1] + L[3] @prec 14 }");
  Automorphism back = parse_aut(print_aut(a));
  REQUIRE(back.b == a.b);
  REQUIRE(back.x == a.x);

  Automorphism id = Automorphism::identity(6);
  REQUIRE(print_aut(id) == "aut{ b = 1; x = 0 @prec 6 }");
  REQUIRE(parse_aut(print_aut(id)).x.known_zero());

  REQUIRE_THROWS_AS(parse_aut("aut{ b = 0; x = 0 @prec 3 }"), ZeroScale);
  REQUIRE_THROWS_AS(parse_aut("aut{ b = 2; x = L[0] @prec 3 }"), NotInFiltrationOne);
  REQUIRE_THROWS_AS(parse_aut("aut{ b = 2; x = 0 @prec 3"), ParseError);
  REQUIRE_THROWS_AS(parse_aut("aut{ b = 2; x = 0 @prec 3 } tail"), ParseError);
}

TEST_CASE("recipe and report text forms") {
  IdealRecipe rec{3, Rational(6), VectorField::term(Rational(1, 2), 1, 13)};
  REQUIRE(print_recipe(rec) == "recipe{ m = 3; c = 6; z = 1/2*L[1] @prec 13 }");
  IdealRecipe back = parse_recipe(print_recipe(rec));
  REQUIRE(back.steps == rec.steps);
  REQUIRE(back.scale == rec.scale);
  REQUIRE(back.transporter == rec.transporter);

  NormalFormReport solved{-1, Rational(2), VectorField::term(Rational(1, 3), 2, 17),
                          std::nullopt};
  REQUIRE(print_report(solved) ==
          "report{ valuation = -1; leading = 2; status = Solved; conjugator = 1/3*L[2] "
          "@prec 17 }");
  NormalFormReport stuck{1, Rational(1), VectorField::zero(15),
                         std::make_pair(2, Rational(1))};
  REQUIRE(print_report(stuck) ==
          "report{ valuation = 1; leading = 1; status = Obstructed(2, 1); conjugator = 0 "
          "@prec 15 }");

  REQUIRE(keyvalue_report(stuck) ==
          "valuation = 1\nleading = 1\nstatus = Obstructed(2, 1)\nconjugator = 0 @prec 15");
  REQUIRE(keyvalue_recipe(rec) == "m = 3\nc = 6\nz = 1/2*L[1] @prec 13");
  Automorphism a(VectorField::basis(2, 9), Rational(4));
  REQUIRE(keyvalue_aut(a) == "b = 4\nx = L[2] @prec 9");
  REQUIRE(keyvalue_element(VectorField::basis(0, 3)) == "element = L[0] @prec 3");
}

TEST_CASE("derivation table file roundtrip") {
  std::mt19937 rng(8802);
  VectorField w = random_field(rng, -1, 11);
  DerivationTable t = tabulate_ad(w, 5, 10);
  std::string text = print_derivation_table(t);
  DerivationTable back = parse_derivation_table(text);
  REQUIRE(back.prec == t.prec);
  REQUIRE(back.entries.size() == t.entries.size());
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    REQUIRE(back.entries[i].first == t.entries[i].first);
    REQUIRE(eq_to_precision(back.entries[i].second, t.entries[i].second));
  }

  // Comments, blank lines, and header clipping.
  std::string manual =
      "# a handwritten table\n"
      "@prec 4\n"
      "\n"
      "D L[0] = 2*L[1] @prec 9\n"
      "D L[1] = -L[2] + L[7] @prec 9\n";
  DerivationTable m = parse_derivation_table(manual);
  REQUIRE(m.prec == 4);
  REQUIRE(m.entries[0].second.prec() == 4);
  REQUIRE(m.entries[1].second.coeff(2) == -1);

  REQUIRE_THROWS_AS(parse_derivation_table("D L[0] = L[1] @prec 3\n"), ParseError);
  REQUIRE_THROWS_AS(parse_derivation_table("# nothing\n"), DomainError);
}

TEST_CASE("image table file roundtrip") {
  Automorphism a(VectorField::term(Rational(2, 3), 2, 12), Rational(1, 2));
  ImageTable t = tabulate(a, -1, 4, 12);
  ImageTable back = parse_image_table(print_image_table(t));
  REQUIRE(back.prec == t.prec);
  REQUIRE(back.entries.size() == t.entries.size());
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    REQUIRE(back.entries[i].first == t.entries[i].first);
    REQUIRE(eq_to_precision(back.entries[i].second, t.entries[i].second));
  }
  // Factorization agrees across the serialization.
  Automorphism f = aut_factorize(back);
  REQUIRE(f.b == a.b);
  REQUIRE(eq_to_precision(f.x, a.x));
}
