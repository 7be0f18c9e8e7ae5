#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tvlab/cyclotomic.hpp"
#include "tvlab/local_field.hpp"
#include "tvlab/root_of_unity.hpp"

namespace tvlab {

/// One Laurent term: scale * zeta^root * x^exps. Coefficients are scaled
/// roots of unity, which keeps every evaluation inside Z[zeta] and is the
/// shape the JSON interchange format uses.
struct LaurentTerm {
  IntVec exps;
  Int scale = 1;
  RootOfUnity root;
};

using LaurentGenerator = std::vector<LaurentTerm>;

/// Closed subscheme of G_m^n presented by a finite list of Laurent
/// generators with algebraic-integer coefficients.
struct Subvariety {
  int n = 0;
  std::vector<LaurentGenerator> generators;

  static Subvariety from_json_text(const std::string& text);
  std::string to_json_text() const;
  void validate() const;
};

/// Distance from a point to a subvariety: Member is an exact symbolic zero
/// certificate on every generator; Valuation(r) means distance p^(-r); a
/// BelowPrecision result is reported, never silently treated as zero.
class DistanceValue {
 public:
  enum class Kind { Member, Valuation, BelowPrecision };

  static DistanceValue member() { return DistanceValue(Kind::Member, Rat(0)); }
  static DistanceValue from_valuation(const Rat& r) {
    return DistanceValue(Kind::Valuation, r);
  }
  static DistanceValue below_precision() {
    return DistanceValue(Kind::BelowPrecision, Rat(0));
  }

  Kind kind() const { return kind_; }
  bool is_member() const { return kind_ == Kind::Member; }
  const Rat& valuation() const;

  bool operator==(const DistanceValue& o) const;
  bool operator!=(const DistanceValue& o) const { return !(*this == o); }
  std::string to_string() const;

  /// Distance to the intersection: max of distances = min of valuations,
  /// with Member acting as valuation +infinity.
  static DistanceValue combine_intersection(const DistanceValue& a, const DistanceValue& b);

 private:
  DistanceValue(Kind k, const Rat& v) : kind_(k), val_(v) {}
  Kind kind_;
  Rat val_;
};

/// Exact evaluation of a generator at a torsion point (a cyclotomic integer).
CyclotomicInt evaluate_exact(const LaurentGenerator& g, const TorusPoint& p);

/// max_g |g(P)|_p over the supplied generating set, i.e. the minimum of the
/// generator valuations; membership is decided symbolically first.
DistanceValue distance(const TorusPoint& p, const Subvariety& x, const TowerHandle& tower);

/// Generator-union presentation of the schematic intersection.
Subvariety intersect(const Subvariety& x, const Subvariety& y);

/// X^{+Q}: substitute x_i -> x_i * Q_i^(-1) in every generator, which twists
/// each term coefficient by Q^(-exps).
Subvariety translate(const Subvariety& x, const TorusPoint& q);

/// Pullback along the monomial map given by B (generators of Y composed with
/// the map, i.e. term exponents lambda become lambda^T B).
Subvariety pullback(const IntMat& b, const Subvariety& y);

/// Coordinate twist of a subvariety by a Galois element (acts on the root
/// part of every coefficient); X with integer coefficients is fixed.
Subvariety galois_twist(const GaloisElement& g, const Subvariety& x);

struct LawCheck {
  DistanceValue lhs;
  DistanceValue rhs;
  bool holds() const { return lhs == rhs; }
};

/// d(P, X cap Y) = max(d(P,X), d(P,Y)).
LawCheck distance_intersection_law(const TorusPoint& p, const Subvariety& x,
                                   const Subvariety& y, const TowerHandle& tower);
/// d(P, B^*Y) = d(B(P), Y).
LawCheck pullback_distance(const IntMat& b, const Subvariety& y, const TorusPoint& p,
                           const TowerHandle& tower);
/// d(sigma(P), X) = d(P, X) for X with rational coefficients.
LawCheck galois_distance_invariance(const GaloisElement& sigma, const TorusPoint& p,
                                    const Subvariety& x, const TowerHandle& tower);
/// d(P - Q, X) = d(P, X^{+Q}).
LawCheck translation_law(const TorusPoint& p, const TorusPoint& q, const Subvariety& x,
                         const TowerHandle& tower);

/// v(zeta^s - 1): nullopt for s = 0 (exact zero); 0 when the prime-to-p part
/// is nontrivial (distinct Teichmueller residues); 1/phi(p^j) for a point of
/// exact order p^j. This is the closed form the towers must reproduce.
std::optional<Rat> root_unity_valuation(const RootOfUnity& s, const Int& p);

/// Distance from a torsion point to the identity, via the per-coordinate rule.
DistanceValue distance_to_identity(const TorusPoint& p, const Int& prime);

/// Pairwise minimal nonzero distance over the torsion points of order <= B,
/// with the reduction-kernel tally (difference in the kernel iff its
/// valuation is positive).
struct MattuckGapReport {
  Int p;
  int n = 1;
  Int bound;
  size_t points = 0;
  size_t pairs = 0;
  size_t kernel_pairs = 0;
  DistanceValue min_distance = DistanceValue::from_valuation(Rat(0));
  TorusPoint witness_a, witness_b;
  std::vector<std::pair<Rat, size_t>> valuation_histogram;
};
MattuckGapReport mattuck_gap(const Int& p, int n, const Int& bound);

}  // namespace tvlab
