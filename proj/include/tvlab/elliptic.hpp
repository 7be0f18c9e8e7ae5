#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tvlab/finite_field.hpp"
#include "tvlab/int_polynomial.hpp"

namespace tvlab {

/// Short Weierstrass curve y^2 = x^3 + a4 x + a6 over F_q, p > 3.
struct EllipticCurveFq {
  FieldHandle field;
  FqElem a4, a6;

  static EllipticCurveFq make(const FieldHandle& field, const FqElem& a4, const FqElem& a6);
  static EllipticCurveFq parse(const FieldHandle& field, const std::string& spec);  // "a4=..,a6=.."

  FqElem discriminant() const;  // -16(4 a4^3 + 27 a6^2)
  bool contains(const FqElem& x, const FqElem& y) const;
};

/// Affine point or the point at infinity.
struct EcPoint {
  bool infinity = true;
  FqElem x, y;

  static EcPoint at_infinity() { return EcPoint{}; }
  static EcPoint affine(const FqElem& x, const FqElem& y) { return EcPoint{false, x, y}; }
  bool operator==(const EcPoint& o) const;
};

EcPoint ec_add(const EllipticCurveFq& e, const EcPoint& p, const EcPoint& q);
EcPoint ec_neg(const EllipticCurveFq& e, const EcPoint& p);
EcPoint ec_scalar(const EllipticCurveFq& e, const Int& n, const EcPoint& p);
/// Coordinatewise q0-power map (the Frobenius of the base field F_q0).
EcPoint ec_frobenius(const EcPoint& p, const Int& q0);

std::vector<EcPoint> ec_points(const EllipticCurveFq& e);

/// Point count and Weil data over the base field.
struct WeilPolynomial {
  Int q;
  Int count;  // #E(F_q)
  Int a;      // q + 1 - count
  IntPolynomial f0;  // T^2 - a T + q

  /// #E(F_{q^r}) forced by the characteristic polynomial (Newton sums
  /// a_r = a * a_{r-1} - q * a_{r-2}).
  Int count_over_extension(int r) const;
};
WeilPolynomial ec_point_count(const EllipticCurveFq& e);

/// Verifies Frob^2 - [a] Frob + [q] = O on every point of E(F_{q^r}), where
/// the curve is base-changed along the deterministic subfield embedding.
struct AnnihilationReport {
  Int q;
  int r;
  size_t points_checked = 0;
  Int extension_count;  // #E(F_{q^r}) by direct count
  bool newton_consistent = false;
};
AnnihilationReport ec_frobenius_annihilate(const EllipticCurveFq& e, int r);

/// Exhaustive check of Frob = [q] on the units of F_{q^r} (q^r <= 10^4).
struct GmFrobeniusReport {
  Int q;
  int r;
  size_t units_checked = 0;
};
GmFrobeniusReport gm_frobenius_identity(const FieldHandle& field, int r);

}  // namespace tvlab
