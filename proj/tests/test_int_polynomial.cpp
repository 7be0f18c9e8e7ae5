#include <doctest.h>

#include "tvlab/int_polynomial.hpp"

using namespace tvlab;

TEST_CASE("arithmetic and normal forms") {
  IntPolynomial f{1, 2, 3};  // 3T^2 + 2T + 1
  IntPolynomial g{-1, 1};    // T - 1
  CHECK((f + g).coeff(0) == 0);
  CHECK((f * g) == IntPolynomial({-1, -1, -1, 3}));
  CHECK(IntPolynomial({0, 0, 0}).is_zero());
  CHECK(IntPolynomial({0, 0, 0}).degree() == -1);
  CHECK(f.evaluate(2) == 17);
  CHECK(IntPolynomial::power_minus_one(3) == IntPolynomial({-1, 0, 0, 1}));
  CHECK(f.to_string() == "3T^2 + 2T + 1");
}

TEST_CASE("monic division is exact") {
  IntPolynomial num{-1, 0, 0, 1};  // T^3 - 1
  IntPolynomial den{-1, 1};        // T - 1
  PolyDivision d = divide_monic(num, den);
  CHECK(d.remainder.is_zero());
  CHECK(d.quotient == IntPolynomial({1, 1, 1}));
  CHECK_THROWS(exact_quotient(IntPolynomial{1, 1}, IntPolynomial{0, 1}));
  CHECK_THROWS_AS(divide_monic(num, IntPolynomial{1, 2}), std::invalid_argument);
}

TEST_CASE("cyclotomic polynomials by recursive quotient") {
  CHECK(cyclotomic_polynomial(1) == IntPolynomial({-1, 1}));
  CHECK(cyclotomic_polynomial(2) == IntPolynomial({1, 1}));
  CHECK(cyclotomic_polynomial(3) == IntPolynomial({1, 1, 1}));
  CHECK(cyclotomic_polynomial(4) == IntPolynomial({1, 0, 1}));
  CHECK(cyclotomic_polynomial(6) == IntPolynomial({1, -1, 1}));
  CHECK(cyclotomic_polynomial(12) == IntPolynomial({1, 0, -1, 0, 1}));
  // Product over divisors recovers T^m - 1.
  for (long m : {6L, 8L, 12L, 15L}) {
    IntPolynomial prod{1};
    for (long d = 1; d <= m; ++d)
      if (m % d == 0) prod = prod * cyclotomic_polynomial(d);
    CHECK(prod == IntPolynomial::power_minus_one(m));
  }
}

TEST_CASE("rational gcd and divisibility") {
  IntPolynomial a = IntPolynomial{-1, 1} * IntPolynomial{1, 1, 1};  // (T-1)Phi_3
  IntPolynomial b = IntPolynomial::power_minus_one(3);
  CHECK(rational_gcd(a, b) == IntPolynomial::power_minus_one(3));
  CHECK(rational_gcd(IntPolynomial{-5, 1}, IntPolynomial{-1, 1}).degree() == 0);
  CHECK(divides_over_rationals(IntPolynomial{-1, 1}, b));
  CHECK(!divides_over_rationals(IntPolynomial{1, 1, 1}, IntPolynomial{1}));
  // Non-monic content is handled.
  CHECK(rational_gcd(IntPolynomial{-2, 2}, IntPolynomial{-4, 4}) == IntPolynomial({-1, 1}));
}

TEST_CASE("resultant via Sylvester determinant") {
  CHECK(resultant(IntPolynomial{-5, 1}, IntPolynomial{-1, 1}) == 4);
  CHECK(resultant(IntPolynomial{-1, 1}, IntPolynomial{-5, 1}) == -4);
  // res(T^2+1, T-2) = 2^2 + 1 = 5.
  CHECK(abs(resultant(IntPolynomial{1, 0, 1}, IntPolynomial{-2, 1})) == 5);
  // Common factor forces zero.
  CHECK(resultant(IntPolynomial{-1, 1}, IntPolynomial::power_minus_one(4)) == 0);
}
