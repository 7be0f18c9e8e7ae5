#pragma once

#include <string>
#include <vector>

#include "tvlab/int_polynomial.hpp"
#include "tvlab/root_of_unity.hpp"

namespace tvlab {

/// Element of Z[zeta_m], stored on the power basis 1, zeta, ..., zeta^(phi(m)-1)
/// after reduction modulo the m-th cyclotomic polynomial. All arithmetic is
/// exact; the zero test decides membership questions symbolically.
class CyclotomicInt {
 public:
  explicit CyclotomicInt(long level);
  CyclotomicInt(long level, const IntPolynomial& value);

  static CyclotomicInt from_int(long level, const Int& value);
  /// Canonical image of the root of unity zeta^s, requires den(s) | level.
  static CyclotomicInt from_root(long level, const RootOfUnity& s);

  long level() const { return level_; }
  const std::vector<Int>& coeffs() const { return c_; }
  bool is_zero() const;

  CyclotomicInt operator+(const CyclotomicInt& o) const;
  CyclotomicInt operator-(const CyclotomicInt& o) const;
  CyclotomicInt operator-() const;
  CyclotomicInt operator*(const CyclotomicInt& o) const;
  CyclotomicInt operator*(const Int& k) const;
  bool operator==(const CyclotomicInt& o) const;

  /// Image under Z[zeta_level] -> Z[zeta_target], zeta_level -> zeta_target^(target/level).
  CyclotomicInt lift_to_level(long target) const;

  IntPolynomial to_polynomial() const;
  std::string to_string() const;

 private:
  long level_;
  std::vector<Int> c_;  // length phi(level)

  static CyclotomicInt reduce(long level, const IntPolynomial& p);
};

/// Common level (lcm) coercion for mixed arithmetic.
std::pair<CyclotomicInt, CyclotomicInt> to_common_level(const CyclotomicInt& a,
                                                        const CyclotomicInt& b);

long euler_phi_long(long m);

}  // namespace tvlab
