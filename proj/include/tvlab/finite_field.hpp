#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tvlab/int_polynomial.hpp"

namespace tvlab {

/// F_q = F_p[y] / (modulus), q = p^f. The modulus is the monic irreducible
/// polynomial of degree f with the smallest base-p coefficient encoding, so
/// two spec instances with equal (p, f) are interchangeable.
struct FiniteFieldSpec {
  Int p;
  int f;
  IntPolynomial modulus;
  Int q;

  static std::shared_ptr<const FiniteFieldSpec> make(const Int& p, int f);
};

using FieldHandle = std::shared_ptr<const FiniteFieldSpec>;

/// Element of F_q on the power basis of y; coefficients reduced mod p.
class FqElem {
 public:
  FqElem() = default;
  FqElem(FieldHandle field, std::vector<Int> coeffs);
  static FqElem zero(const FieldHandle& field);
  static FqElem one(const FieldHandle& field);
  static FqElem from_int(const FieldHandle& field, const Int& value);
  /// Decodes an index written in base p: sum c_i p^i -> sum c_i y^i.
  static FqElem decode(const FieldHandle& field, const Int& index);

  const FieldHandle& field() const { return field_; }
  const std::vector<Int>& coeffs() const { return c_; }
  Int encode() const;
  bool is_zero() const;

  FqElem operator+(const FqElem& o) const;
  FqElem operator-(const FqElem& o) const;
  FqElem operator-() const;
  FqElem operator*(const FqElem& o) const;
  FqElem pow(const Int& e) const;
  FqElem inverse() const;
  bool operator==(const FqElem& o) const;
  bool operator!=(const FqElem& o) const { return !(*this == o); }

  /// Multiplicative order (element must be nonzero).
  Int order() const;

  std::string to_string() const;

 private:
  FieldHandle field_;
  std::vector<Int> c_;
};

/// Monic irreducible of degree f over F_p with the smallest coefficient
/// encoding sum c_i p^i (deterministic across the whole artifact).
IntPolynomial find_irreducible(const Int& p, int f);

/// Smallest element of exact multiplicative order m in F_q^*, by encoding.
/// For fields too large to scan, falls back to the smallest h whose
/// (q-1)/m power has exact order m. Requires m | q - 1.
FqElem element_of_order(const FieldHandle& field, const Int& m);

/// Embedding of the subfield F_q into F_{q^r}: the image of the subfield
/// generator is the root of its modulus with the smallest encoding.
FqElem embed_subfield_generator(const FieldHandle& sub, const FieldHandle& big);

}  // namespace tvlab
