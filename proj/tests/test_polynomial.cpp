#include "doctest.h"
#include "oracles.hpp"
#include "recurbound/polynomial.hpp"

using namespace recurbound;

TEST_SUITE("polynomial") {

TEST_CASE("basic arithmetic") {
  const Poly p{1, -1};         // 1 - z
  const Poly q{2, 0, 1};       // 2 + z^2
  CHECK(poly_mul(p, q) == Poly{2, -2, 1, -1});
  CHECK(poly_add(p, Poly{-1, 1}).empty());
  CHECK(poly_degree(Poly{}) == -1);
  CHECK(poly_degree(poly_trim(Poly{3, 0, 0})) == 0);
  CHECK(poly_eval(q, ComplexRational(0, 1)) == ComplexRational(1));
  CHECK(poly_is_zero(Poly{0, 0}));
}

TEST_CASE("shifted falling factorial") {
  const Poly f = shifted_falling_factorial(3, 1);  // (X-1)(X-2)(X-3)
  CHECK(poly_eval(f, ComplexRational(5)) == ComplexRational(24));
  CHECK(poly_eval(f, ComplexRational(2)) == ComplexRational(0));
  CHECK(shifted_falling_factorial(0, 4) == Poly{1});
}

TEST_CASE("graeffe squares the roots") {
  const Poly p = poly_mul(Poly{-2, 1}, Poly{-3, 1});
  const Poly g = graeffe_step(p);
  CHECK(poly_eval(g, ComplexRational(4)).is_zero());
  CHECK(poly_eval(g, ComplexRational(9)).is_zero());
  const Poly c = poly_mul(Poly{ComplexRational(0, -1), 1}, Poly{1, 1});  // roots i, -1
  const Poly gc = graeffe_step(c);
  CHECK(poly_eval(gc, ComplexRational(-1)).is_zero());
  CHECK(poly_eval(gc, ComplexRational(1)).is_zero());
}

TEST_CASE("root modulus lower bounds on known roots") {
  const auto one_minus_z = root_modulus_lower_bound(Poly{1, -1}, Rational(1, 2));
  REQUIRE(one_minus_z);
  CHECK(*one_minus_z <= 1);
  CHECK(*one_minus_z > Rational(1, 2));

  CHECK_FALSE(root_modulus_lower_bound(Poly{7}, Rational(100)).has_value());

  const auto circle = root_modulus_lower_bound(Poly{1, 0, 1}, Rational(1, 4));
  REQUIRE(circle);
  CHECK(*circle <= 1);

  CHECK_THROWS_AS(root_modulus_lower_bound(Poly{1, -1}, Rational(1)), CertificationFailure);
}

TEST_CASE("root modulus lower bound never exceeds the smallest root") {
  oracle::Gen gen(41);
  for (int i = 0; i < 200; ++i) {
    const int deg = static_cast<int>(gen.integer(1, 4));
    Poly p{1};
    Rational min_mod = -1;
    for (int k = 0; k < deg; ++k) {
      ComplexRational root(Rational(gen.integer(1, 40), gen.integer(1, 9)));
      if (gen.coin()) root = -root;
      if (gen.integer(0, 2) == 0) root = root * ComplexRational(Rational(3, 5), Rational(4, 5));
      const Rational mod = abs_upper(root);
      if (min_mod < 0 || mod < min_mod) min_mod = mod;
      p = poly_mul(p, Poly{-root, 1});
    }
    const Rational need = min_mod * Rational(gen.integer(1, 15), 16);
    try {
      const auto L = root_modulus_lower_bound(p, need);
      REQUIRE(L);
      CHECK(*L <= min_mod);
      CHECK(*L > need);
    } catch (const CertificationFailure&) {
      // allowed: only means the bound could not be pushed above need
    }
  }
}

}  // TEST_SUITE
