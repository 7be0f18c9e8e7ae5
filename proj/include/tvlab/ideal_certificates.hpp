#pragma once

#include <stdexcept>
#include <vector>

#include "tvlab/int_polynomial.hpp"

namespace tvlab {

/// Exact witness for c * g = sum_i cofactor_i * generator_i in Z[T].
struct MultiplierCertificate {
  IntPolynomial target;
  std::vector<IntPolynomial> generators;
  Int multiplier;
  std::vector<IntPolynomial> cofactors;

  /// Re-expands the identity and checks it coefficient by coefficient.
  bool verify() const;
};

struct MultiplierObstruction : std::domain_error {
  using std::domain_error::domain_error;
};

/// Smallest positive c with c * g in the ideal (h_1, ..., h_r), together with
/// cofactors. The set of valid c is an ideal of Z; its generator is read off
/// the Smith normal form of the coefficient-vector system, with cofactor
/// degrees limited to the Bezout window deg A_i <= sum_{j != i} deg h_j + deg g
/// (doubled once if the first window admits no solution).
/// Throws MultiplierObstruction when no positive c exists.
MultiplierCertificate minimal_multiplier(const IntPolynomial& g,
                                         const std::vector<IntPolynomial>& gens);

/// T^m - 1 - m(T-1) - (m(m-1)/2)(T-1)^2 is divisible by (T-1)^3; returns the
/// exact quotient (an identity, so failure throws logic_error).
struct CongruenceWitness {
  Int m;
  IntPolynomial quotient;  // (T^m - 1 - m(T-1) - binom(m,2)(T-1)^2) / (T-1)^3
};
CongruenceWitness boxall_congruence(long m);

/// Tame-descent certificate: for q odd, q(T-1) lies in ((T-1)^3, T^q - 1);
/// for q even the guaranteed member is 4q(T-1). Both are certified through
/// the minimal multiplier of T-1 in that ideal.
struct TameDescent {
  Int q;
  Int guaranteed_multiplier;        // q for odd q, 4q for even q
  MultiplierCertificate minimal;    // minimal c with c(T-1) in the ideal
  MultiplierCertificate certified;  // certificate for guaranteed_multiplier * (T-1)
};
TameDescent tame_membership(long q);

/// True iff gcd(F, T^m - 1) is constant for every m with phi(m) <= deg F
/// (m is enumerated up to 2 deg(F)^2, which covers all such m).
bool cyclotomic_factor_free(const IntPolynomial& f);

/// Frobenius annihilator data for the split torus over the unramified tower:
/// F = T - q with trivial p-power factor.
struct TorusFrobeniusPoly {
  Int n_factor;  // always 1 for the torus
  IntPolynomial f;
};
TorusFrobeniusPoly frobenius_poly_torus(const Int& q);

}  // namespace tvlab
