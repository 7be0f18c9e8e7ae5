#include <doctest.h>

#include <random>

#include "tvlab/finite_field.hpp"

using namespace tvlab;

TEST_CASE("deterministic irreducible moduli") {
  CHECK(find_irreducible(5, 1) == IntPolynomial({0, 1}));  // y itself
  // First irreducible quadratic over F_2 in encoding order is y^2 + y + 1.
  CHECK(find_irreducible(2, 2) == IntPolynomial({1, 1, 1}));
  // Over F_3 it is y^2 + 1.
  CHECK(find_irreducible(3, 2) == IntPolynomial({1, 0, 1}));
  // Degree-4 modulus over F_2 must be irreducible, hence have no roots.
  IntPolynomial u = find_irreducible(2, 4);
  CHECK(u.degree() == 4);
  CHECK(u.evaluate(0) % 2 != 0);
  CHECK(u.evaluate(1) % 2 != 0);
}

TEST_CASE("field arithmetic") {
  FieldHandle f9 = FiniteFieldSpec::make(3, 2);
  CHECK(f9->q == 9);
  std::mt19937_64 rng(5);
  for (int it = 0; it < 100; ++it) {
    FqElem a = FqElem::decode(f9, 1 + static_cast<long>(rng() % 8));
    CHECK(a * a.inverse() == FqElem::one(f9));
    CHECK(a.pow(8) == FqElem::one(f9));
    CHECK((a + (-a)).is_zero());
  }
  // Encoding round trip.
  for (long enc = 0; enc < 9; ++enc) CHECK(FqElem::decode(f9, enc).encode() == enc);
}

TEST_CASE("multiplicative orders and deterministic generators") {
  FieldHandle f7 = FiniteFieldSpec::make(7, 1);
  CHECK(FqElem::from_int(f7, 3).order() == 6);
  CHECK(FqElem::from_int(f7, 2).order() == 3);
  CHECK(FqElem::from_int(f7, 6).order() == 2);
  // The chosen order-6 generator mod 7 is 3 (the smallest).
  CHECK(element_of_order(f7, 6).encode() == 3);
  CHECK(element_of_order(f7, 1) == FqElem::one(f7));

  FieldHandle f25 = FiniteFieldSpec::make(5, 2);
  FqElem g = element_of_order(f25, 6);
  CHECK(g.order() == 6);
  CHECK(element_of_order(f25, 6) == g);  // deterministic
  CHECK_THROWS_AS(element_of_order(f25, 7), std::invalid_argument);
}

TEST_CASE("subfield embedding") {
  FieldHandle f4 = FiniteFieldSpec::make(2, 2);
  FieldHandle f16 = FiniteFieldSpec::make(2, 4);
  FqElem g = embed_subfield_generator(f4, f16);
  // g satisfies the F_4 modulus y^2 + y + 1.
  CHECK((g * g + g + FqElem::one(f16)).is_zero());
}
