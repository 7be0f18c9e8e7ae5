#pragma once

#include <string>
#include <vector>

#include "tvlab/integers.hpp"

namespace tvlab {

/// A = direct sum of Z/p^{n_i}, presented by the exponent list n_i.
struct FiniteModule {
  Int p;
  std::vector<int> exponents;

  static FiniteModule make(const Int& p, std::vector<int> exponents);
  /// Parses "p^a,p^b,..." (for example "3^2,3^1").
  static FiniteModule parse(const std::string& text);

  int rank() const { return static_cast<int>(exponents.size()); }
  Int order(int i) const { return int_pow(p, static_cast<unsigned long>(exponents[i])); }
  Int module_order() const;

  IntVec reduce(IntVec v) const;
  bool is_zero(const IntVec& v) const;
  IntVec scalar(const Int& k, const IntVec& v) const;
  IntVec add(const IntVec& a, const IntVec& b) const;
  /// Generators of A[p^j] (the p^j-torsion): p^{max(0, n_i - j)} e_i.
  std::vector<IntVec> torsion_generators(int j) const;
  bool in_torsion(const IntVec& v, int j) const;
  std::string element_to_string(const IntVec& v) const;
};

/// Action given by integer matrices; each must be a well-defined
/// automorphism (congruence conditions between components of different
/// orders, invertible modulo p).
struct ModuleAction {
  std::vector<IntMat> generators;

  static ModuleAction from_json_text(const FiniteModule& a, const std::string& text);
  void validate(const FiniteModule& a) const;
};

IntVec apply_matrix_mod(const FiniteModule& a, const IntMat& m, const IntVec& v);

/// True iff every generator fixes A[p] pointwise (and A[4] as well if p = 2).
bool check_hypotheses(const FiniteModule& a, const ModuleAction& action);

/// Output of the constructive lemma: a group word sigma (as a matrix plus
/// its breadth-first derivation) with (sigma - 1) Q = x in A[p] \ {0}.
struct BoxallWitness {
  IntMat sigma;                 // the acting matrix
  std::vector<int> base_word;   // generator indices composing sigma_1
  Int power;                    // sigma = sigma_1^(power), power = p^(n-1)
  int n = 0;                    // minimal n with [p^n] Q fixed by the group
  IntVec x;                     // (sigma - 1) Q
};

/// Constructive search: minimal n with [p^n]Q fixed, first breadth-first
/// word sigma_1 moving [p^(n-1)]Q, sigma = sigma_1^(p^(n-1)). The internal
/// chain x_i = (sigma_i - 1)[p^(n-i)]Q is asserted constant along the way.
/// Throws when hypotheses fail or Q is fixed by the whole group.
BoxallWitness boxall_construct(const FiniteModule& a, const ModuleAction& action,
                               const IntVec& q);

/// Brute force over the full generated group (order capped): every sigma
/// with (sigma - 1) Q in A[p] \ {0}.
struct BoxallOracleEntry {
  IntMat sigma;
  IntVec x;
};
std::vector<BoxallOracleEntry> boxall_oracle(const FiniteModule& a, const ModuleAction& action,
                                             const IntVec& q, size_t group_cap = 100000);

/// Full group enumeration by breadth-first closure (matrices reduced to a
/// canonical form modulo the component orders).
std::vector<IntMat> enumerate_group(const FiniteModule& a, const ModuleAction& action,
                                    size_t cap);

}  // namespace tvlab
