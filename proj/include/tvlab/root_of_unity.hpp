#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tvlab/integers.hpp"

namespace tvlab {

/// A root of unity zeta_m^c stored as the exponent c/m in Q/Z, always
/// reduced with 0 <= c < m. The group law of the roots of unity under
/// multiplication is written additively on exponents.
class RootOfUnity {
 public:
  RootOfUnity() : num_(0), den_(1) {}
  RootOfUnity(const Int& num, const Int& den);

  static RootOfUnity one() { return RootOfUnity(); }
  static RootOfUnity parse(const std::string& text);

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }
  /// Order as a group element (= reduced denominator).
  const Int& order() const { return den_; }
  bool is_one() const { return num_ == 0; }

  RootOfUnity operator+(const RootOfUnity& o) const;
  RootOfUnity operator-(const RootOfUnity& o) const;
  RootOfUnity operator-() const;
  /// Exponent multiplied by an integer (the [n] map).
  RootOfUnity times(const Int& n) const;

  bool operator==(const RootOfUnity& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RootOfUnity& o) const { return !(*this == o); }
  bool operator<(const RootOfUnity& o) const;

  std::string to_string() const;

 private:
  Int num_, den_;
};

/// Torsion point of the split torus: one root of unity per coordinate.
class TorusPoint {
 public:
  TorusPoint() = default;
  explicit TorusPoint(std::vector<RootOfUnity> coords) : c_(std::move(coords)) {}
  static TorusPoint identity(int n) { return TorusPoint(std::vector<RootOfUnity>(n)); }
  static TorusPoint parse(const std::string& text);

  int dim() const { return static_cast<int>(c_.size()); }
  const RootOfUnity& operator[](int i) const { return c_[static_cast<size_t>(i)]; }
  RootOfUnity& operator[](int i) { return c_[static_cast<size_t>(i)]; }
  const std::vector<RootOfUnity>& coords() const { return c_; }

  Int order() const;
  bool is_identity() const;

  TorusPoint operator+(const TorusPoint& o) const;
  TorusPoint operator-(const TorusPoint& o) const;
  TorusPoint operator-() const;
  TorusPoint times(const Int& n) const;
  bool operator==(const TorusPoint& o) const { return c_ == o.c_; }
  bool operator!=(const TorusPoint& o) const { return !(*this == o); }
  bool operator<(const TorusPoint& o) const;

  /// Monomial map given by an integer matrix: coordinate i of the image is
  /// the B(i,:)-weighted sum of exponents.
  TorusPoint apply_matrix(const IntMat& b) const;

  std::string to_string() const;

 private:
  std::vector<RootOfUnity> c_;
};

/// Element of the local cyclotomic Galois group at level p^k * m'. It acts
/// on a root of unity by raising the prime-to-p part to the power p^j and
/// the p-primary part to the power b.
class GaloisElement {
 public:
  GaloisElement(const Int& p, int k, const Int& m_prime, const Int& frob_exponent,
                const Int& ramified_exponent);

  /// The chosen Frobenius lift (j = 1, b = 1).
  static GaloisElement frobenius(const Int& p, int k, const Int& m_prime);
  static GaloisElement identity(const Int& p, int k, const Int& m_prime);

  const Int& p() const { return p_; }
  int k() const { return k_; }
  const Int& m_prime() const { return m_prime_; }
  const Int& frob_exponent() const { return j_; }
  const Int& ramified_exponent() const { return b_; }
  Int level() const { return int_pow(p_, static_cast<unsigned long>(k_)) * m_prime_; }
  const Int& residue_degree() const { return f_; }

  RootOfUnity act(const RootOfUnity& s) const;
  TorusPoint act(const TorusPoint& pt) const;

  /// Composition g.compose(h) acts as "first h, then g" (the group is
  /// abelian, so the order is immaterial).
  GaloisElement compose(const GaloisElement& o) const;

  bool operator==(const GaloisElement& o) const;

 private:
  Int p_;
  int k_;
  Int m_prime_;
  Int f_;  // multiplicative order of p mod m'
  Int j_;  // Frobenius exponent mod f
  Int b_;  // unit mod p^k
};

/// All elements of the local Galois group at level p^k * m'.
std::vector<GaloisElement> local_galois_group(const Int& p, int k, const Int& m_prime);

/// Splits s = x + y with order(x) a power of p and order(y) prime to p.
std::pair<RootOfUnity, RootOfUnity> torsion_split(const RootOfUnity& s, const Int& p);
std::pair<TorusPoint, TorusPoint> torsion_split(const TorusPoint& pt, const Int& p);

}  // namespace tvlab
