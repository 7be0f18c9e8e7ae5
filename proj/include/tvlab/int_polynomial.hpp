#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "tvlab/integers.hpp"

namespace tvlab {

/// Dense polynomial over Z, constant term first, no trailing zeros.
/// The zero polynomial has an empty coefficient list and degree() == -1.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  IntPolynomial(std::initializer_list<Int> coeffs) : c_(coeffs) { trim(); }
  explicit IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

  static IntPolynomial zero() { return IntPolynomial(); }
  static IntPolynomial constant(const Int& a) { return IntPolynomial({a}); }
  // c * T^k
  static IntPolynomial monomial(const Int& c, long k);
  // T^m - 1
  static IntPolynomial power_minus_one(long m);

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  const Int& coeff(long i) const;
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& leading() const;

  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator-() const;
  IntPolynomial operator*(const IntPolynomial& o) const;
  IntPolynomial operator*(const Int& k) const;
  bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

  Int evaluate(const Int& x) const;

  std::string to_string(const std::string& var = "T") const;

  void trim();

 private:
  std::vector<Int> c_;
};

/// Quotient and remainder; divisor must be monic.
struct PolyDivision {
  IntPolynomial quotient;
  IntPolynomial remainder;
};
PolyDivision divide_monic(const IntPolynomial& num, const IntPolynomial& den);

/// Exact quotient, throws if the division leaves a remainder.
IntPolynomial exact_quotient(const IntPolynomial& num, const IntPolynomial& den);

/// Gcd over Q returned as a primitive integer polynomial with positive
/// leading coefficient (zero polynomial if both inputs are zero).
IntPolynomial rational_gcd(const IntPolynomial& a, const IntPolynomial& b);

/// True iff d divides g in Q[T].
bool divides_over_rationals(const IntPolynomial& d, const IntPolynomial& g);

/// Resultant via the Sylvester matrix.
Int resultant(const IntPolynomial& a, const IntPolynomial& b);

/// The m-th cyclotomic polynomial, computed as the quotient of T^m - 1 by the
/// lower-level cyclotomic polynomials. Results are cached.
const IntPolynomial& cyclotomic_polynomial(long m);

}  // namespace tvlab
