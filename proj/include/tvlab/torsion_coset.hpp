#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tvlab/int_polynomial.hpp"
#include "tvlab/lattice.hpp"
#include "tvlab/root_of_unity.hpp"

namespace tvlab {

/// Coset a * T_L of the torsion of a subtorus, where T_L is cut out by the
/// characters in the row lattice L: T_L = {x : x^lambda = 1 for lambda in L}.
/// The lattice is kept in Hermite normal form; the coset itself only depends
/// on the shift through the character values <lambda, a> in Q/Z.
struct TorsionCoset {
  int n = 0;
  IntMat lattice;  // HNF rows spanning L (rank many rows)
  TorusPoint shift;

  static TorsionCoset make(int n, const IntMat& lattice_rows, const TorusPoint& shift);
  /// Full torsion of the subtorus killed by the rows (shift = identity).
  static TorsionCoset subtorus(int n, const IntMat& lattice_rows);
  /// Single point as a coset (lattice = Z^n).
  static TorsionCoset point(const TorusPoint& p);

  bool contains(const TorusPoint& p) const;
  /// Character values <row, shift> defining the coset canonically.
  std::vector<RootOfUnity> character_values() const;
  bool same_coset(const TorsionCoset& o) const;
  /// True iff o is a subset of this coset (lattice containment plus
  /// matching character values on this lattice).
  bool contains_coset(const TorsionCoset& o) const;
  /// True iff T_L is finite (lattice of full rank); then the number of
  /// points is |det| of the HNF.
  bool is_finite() const;
  Int point_count() const;
  std::vector<TorusPoint> points(const Int& budget = Int(1000000)) const;

  TorsionCoset translated(const TorusPoint& t) const;
  std::string to_string() const;

  static TorsionCoset from_json_text(const std::string& text);
  std::string to_json_text() const;
};

/// Finite union of torsion cosets, canonicalized: duplicate and contained
/// cosets removed, unions of parallel cosets merged into a single coset of
/// the larger subtorus whenever they form one, components sorted.
class TorsionSubscheme {
 public:
  TorsionSubscheme() = default;
  explicit TorsionSubscheme(std::vector<TorsionCoset> cosets);
  static TorsionSubscheme empty(int n);
  static TorsionSubscheme single(const TorsionCoset& c);

  const std::vector<TorsionCoset>& cosets() const { return c_; }
  bool is_empty() const { return c_.empty(); }
  int ambient() const { return n_; }

  bool contains(const TorusPoint& p) const;
  /// Exact set containment of a coset (single-component cover, or point
  /// enumeration for finite cosets).
  bool contains_coset(const TorsionCoset& c) const;
  bool contains_subscheme(const TorsionSubscheme& o) const;
  bool set_equal(const TorsionSubscheme& o) const;

  TorsionSubscheme translated(const TorusPoint& t) const;
  std::string to_string() const;

  static TorsionSubscheme from_json_text(const std::string& text);
  std::string to_json_text() const;

 private:
  int n_ = 0;
  std::vector<TorsionCoset> c_;
  void canonicalize();
};

/// Intersection of two cosets: a coset of T_{L1+L2} or empty, by solving the
/// character congruences through the Smith normal form.
std::optional<TorsionCoset> coset_intersect(const TorsionCoset& a, const TorsionCoset& b);

TorsionSubscheme subscheme_intersect(const TorsionSubscheme& a, const TorsionSubscheme& b);
TorsionSubscheme subscheme_union(const TorsionSubscheme& a, const TorsionSubscheme& b);

/// Image of a coset under the monomial map x -> (x^{B(i,:)})_i from G_m^n to
/// G_m^m: image lattice {mu : mu B in L}, image shift B * a.
TorsionCoset monomial_image(const IntMat& b, const TorsionCoset& c);
TorsionSubscheme monomial_image(const IntMat& b, const TorsionSubscheme& z);

/// Preimage under an isogeny (square B, det != 0): the single coset with
/// lattice L * B (which already absorbs the |det B| kernel translates) and
/// any particular solution of B x = a as shift.
TorsionCoset monomial_preimage(const IntMat& b, const TorsionCoset& c);
TorsionSubscheme monomial_preimage(const IntMat& b, const TorsionSubscheme& z);

/// [N] image.
TorsionSubscheme multiple_image(const Int& n_mult, const TorsionSubscheme& z);

/// Matrix of the quotient monomial map A -> A / T_L: the HNF basis rows
/// themselves (its kernel on torsion is exactly T_L).
IntMat quotient_map(const IntMat& lattice_rows);

/// Translations t with Z + t = Z: computed per lattice class from candidate
/// shift differences filtered by the permutation condition, intersected
/// across classes, and verified to be a group.
TorsionSubscheme stabilizer(const TorsionSubscheme& z);

/// Companion matrix action data for a monic F of degree d on G_m^(n*d).
struct CompanionData {
  IntPolynomial f;
  IntMat companion;  // d x d
  IntMat ambient;    // companion tensor I_n
  static CompanionData make(const IntPolynomial& f, int n);
};

/// Chain construction inside a fixed ambient torus: Y = intersection of
/// M^{-r}(S) over r >= 0, then the stabilized image M^l(Y). Requires a
/// nonsingular integer matrix.
TorsionSubscheme invariant_core(const TorsionSubscheme& s, const IntMat& m,
                                int* preimage_steps = nullptr, int* image_steps = nullptr);

/// The invariant core: Y = intersection of M^{-r}(X^d) over r >= 0 computed
/// by descending-chain iteration, then Z = the stabilized image M^l(Y).
/// Postconditions M(Z) = Z and Z subset of X^d are verified internally.
struct TorsionCoreResult {
  TorsionSubscheme z;
  TorsionSubscheme x_power;  // X^d in the ambient torus
  int preimage_chain_length = 0;
  int image_chain_length = 0;
};
TorsionCoreResult torsion_core(const TorsionSubscheme& x, const IntPolynomial& f);

/// Characteristic polynomial of an integer matrix (exact).
IntPolynomial characteristic_polynomial(const IntMat& m);

/// d-fold product X x ... x X inside G_m^(n*d).
TorsionSubscheme cartesian_power(const TorsionSubscheme& x, int d);

}  // namespace tvlab
