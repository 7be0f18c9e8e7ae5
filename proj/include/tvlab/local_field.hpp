#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "tvlab/cyclotomic.hpp"
#include "tvlab/finite_field.hpp"
#include "tvlab/root_of_unity.hpp"

namespace tvlab {

/// Valuation of a finite-precision element, in units of v_p (v_p(p) = 1).
/// Finite values are exact rationals with denominator dividing e; an element
/// whose coordinates all vanish at working precision yields BelowPrecision,
/// which is never conflated with a proven zero.
class ValuationResult {
 public:
  static ValuationResult finite(const Rat& r) { return ValuationResult(true, r); }
  static ValuationResult below_precision() { return ValuationResult(false, Rat(0)); }

  bool is_finite() const { return finite_; }
  const Rat& value() const;

  /// BelowPrecision compares above every finite value (it means ">= N").
  bool operator<(const ValuationResult& o) const;
  bool operator==(const ValuationResult& o) const;
  std::string to_string() const;

 private:
  ValuationResult(bool f, const Rat& r) : finite_(f), value_(r) {}
  bool finite_;
  Rat value_;
};

/// The tower K = Q_p(zeta_m', zeta_p^k): unramified part of degree
/// f = ord(p mod m') cut out by the deterministic irreducible u(y), totally
/// ramified part of degree e = phi(p^k) cut out by E(x) = Phi_{p^k}(x+1),
/// so zeta_{p^k} = x + 1 exactly. Elements live in O_K / p^N on the basis
/// y^i x^j. All caches are precomputed, so a spec is immutable and can be
/// shared freely across threads.
struct TowerSpec {
  Int p;
  Int m_prime;
  int k = 0;
  int precision = 0;

  int f = 1;
  long e = 1;
  Int q;   // p^f
  Int pN;  // p^precision
  IntPolynomial unramified_poly;
  IntPolynomial eisenstein_poly;
  FieldHandle residue;
  FqElem residue_generator;  // order m' in F_q^*, fixes the embedding

  // teich_pow[t] = omega(g)^t as a y-polynomial, t in [0, m').
  std::vector<std::vector<Int>> teich_pow;
  // zeta_pow[c] = (x+1)^c reduced mod E, c in [0, p^k).
  std::vector<std::vector<Int>> zeta_pow;
  // Frobenius images phi(y)^i (k == 0 only), built on first use.
  mutable std::once_flag frob_once;
  mutable std::vector<std::vector<Int>> frob_y_pow;

  Int level() const { return int_pow(p, static_cast<unsigned long>(k)) * m_prime; }
  /// v_p of the uniformizer; eps_K = p^(-1/e).
  Rat uniformizer_valuation() const { return Rat(1, e); }
};

using TowerHandle = std::shared_ptr<const TowerSpec>;

TowerHandle tower_make(const Int& p, const Int& m_prime, int k, int precision);

/// Element of O_K at working precision: f*e coordinates over Z/p^N in the
/// basis y^i x^j, coordinate (i, j) stored at index i + f*j.
class TowerElement {
 public:
  TowerElement(TowerHandle spec, std::vector<Int> coords);

  static TowerElement zero(const TowerHandle& spec);
  static TowerElement one(const TowerHandle& spec);
  static TowerElement from_integer(const TowerHandle& spec, const Int& v);

  const TowerHandle& spec() const { return spec_; }
  const std::vector<Int>& coords() const { return c_; }
  const Int& coord(int i, long j) const { return c_[static_cast<size_t>(i + spec_->f * j)]; }

  bool is_zero_at_precision() const;

  TowerElement operator+(const TowerElement& o) const;
  TowerElement operator-(const TowerElement& o) const;
  TowerElement operator-() const;
  TowerElement operator*(const TowerElement& o) const;
  TowerElement pow(const Int& n) const;
  bool operator==(const TowerElement& o) const;

  std::string to_string() const;

 private:
  TowerHandle spec_;
  std::vector<Int> c_;
};

/// Minimum over coordinates (i, j) of v_p(c_ij) + j/e; exact whenever some
/// coordinate survives at precision.
ValuationResult valuation(const TowerElement& z);

/// Unique (q-1)-th root of unity congruent to the given residue, computed by
/// iterating the q-power map to its fixed point.
TowerElement teichmuller(const TowerHandle& spec, const FqElem& residue);
TowerElement teichmuller(const TowerHandle& spec, const Int& residue);

/// Embedding of the abstract root of unity zeta^s: the prime-to-p part goes
/// to the matching power of the Teichmueller lift of the chosen generator,
/// the p-part to the matching power of x+1. Multiplicative in s.
TowerElement embed_root(const TowerHandle& spec, const RootOfUnity& s);

/// Ring embedding of Z[zeta_m] for m dividing the tower level.
TowerElement embed_cyclotomic(const TowerHandle& spec, const CyclotomicInt& z);

/// Coordinates modulo m^(n+1) (the reduction to S_n). Two elements agree at
/// level n iff their reductions are identical.
struct ReducedElement {
  long level;
  std::vector<Int> coords;
  bool operator==(const ReducedElement& o) const {
    return level == o.level && coords == o.coords;
  }
  std::string to_string() const;
};
ReducedElement reduce_level(const TowerElement& z, long n);

/// The lift of the q-power residue Frobenius along j = 1 (so omega(a) maps
/// to omega(a^p)); only defined on unramified towers (k = 0).
TowerElement frobenius_apply(const TowerElement& z);

}  // namespace tvlab
