#include <doctest.h>

#include <random>

#include "tvlab/scan.hpp"
#include "tvlab/subvariety.hpp"
#include "tvlab/valuation_oracle.hpp"

using namespace tvlab;

namespace {

const char* kLine =
    R"({"n":2,"generators":[[{"exps":[1,0],"coeff":{"scale":1}},{"exps":[0,1],"coeff":{"scale":1}},{"exps":[0,0],"coeff":{"scale":-1}}]]})";

Subvariety line() { return Subvariety::from_json_text(kLine); }

Subvariety coordinate_hyperplane(int n, int which) {
  // x_which - 1.
  Subvariety s;
  s.n = n;
  LaurentGenerator g;
  LaurentTerm t1;
  t1.exps = IntVec(n);
  for (int i = 0; i < n; ++i) t1.exps(i) = i == which ? 1 : 0;
  LaurentTerm t2;
  t2.exps = IntVec(n);
  for (int i = 0; i < n; ++i) t2.exps(i) = 0;
  t2.scale = -1;
  g.push_back(t1);
  g.push_back(t2);
  s.generators.push_back(g);
  return s;
}

Rat rat(long n, long d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("json round trip and validation") {
  Subvariety x = line();
  CHECK(x.n == 2);
  CHECK(x.generators.size() == 1);
  Subvariety again = Subvariety::from_json_text(x.to_json_text());
  CHECK(again.generators[0].size() == 3);
  CHECK_THROWS(Subvariety::from_json_text(R"({"n":2,"generators":[]})"));
  CHECK_THROWS(Subvariety::from_json_text(R"({"n":2,"generators":[[]]})"));
  // Coefficients with explicit roots survive the round trip.
  Subvariety t;
  t.n = 1;
  LaurentTerm term;
  term.exps = IntVec(1);
  term.exps(0) = 2;
  term.scale = 3;
  term.root = RootOfUnity(1, 4);
  t.generators.push_back({term});
  Subvariety t2 = Subvariety::from_json_text(t.to_json_text());
  CHECK(t2.generators[0][0].root == RootOfUnity(1, 4));
  CHECK(t2.generators[0][0].scale == 3);
}

TEST_CASE("membership and distances on the line x+y=1") {
  TowerCache cache(40);
  Subvariety x = line();

  TowerHandle t6 = tower_for_level(cache, 7, 6);
  CHECK(distance(TorusPoint::parse("1/6,5/6"), x, t6).is_member());
  CHECK(distance(TorusPoint::parse("5/6,1/6"), x, t6).is_member());

  DistanceValue d = distance(TorusPoint::parse("1/3,1/2"), x, t6);
  CHECK(d.kind() == DistanceValue::Kind::Valuation);
  CHECK(d.valuation() == 1);

  TowerHandle t5 = tower_for_level(cache, 5, 10);
  DistanceValue d5 = distance(TorusPoint::parse("1/5,4/5"), x, t5);
  CHECK(d5.kind() == DistanceValue::Kind::Valuation);
  CHECK(d5.valuation() == 0);
}

TEST_CASE("intersection law") {
  TowerCache cache(40);
  Subvariety x = coordinate_hyperplane(2, 0);
  Subvariety y = coordinate_hyperplane(2, 1);
  TowerHandle t = tower_for_level(cache, 5, 5);
  TorusPoint p = TorusPoint::parse("1/5,0/1");
  LawCheck law = distance_intersection_law(p, x, y, t);
  CHECK(law.holds());
  CHECK(law.lhs.kind() == DistanceValue::Kind::Valuation);
  CHECK(law.lhs.valuation() == rat(1, 4));
  // Members on both sides.
  LawCheck member = distance_intersection_law(TorusPoint::parse("0/1,0/1"), x, y, t);
  CHECK(member.holds());
  CHECK(member.lhs.is_member());
  // X = Y is a tautology.
  CHECK(distance_intersection_law(p, x, x, t).holds());
}

TEST_CASE("pullback law") {
  TowerCache cache(40);
  Subvariety y = coordinate_hyperplane(1, 0);
  IntMat b = int_zero(1, 1);
  b(0, 0) = 2;
  TowerHandle t = tower_for_level(cache, 5, 4);
  LawCheck law = pullback_distance(b, y, TorusPoint::parse("1/4"), t);
  CHECK(law.holds());
  CHECK(law.lhs.kind() == DistanceValue::Kind::Valuation);
  CHECK(law.lhs.valuation() == 0);  // zeta_4^2 - 1 = -2, a unit at p=5

  IntMat b2 = int_zero(2, 2);
  b2(0, 1) = 1;
  b2(1, 0) = 1;
  b2(1, 1) = 1;
  TowerHandle t6 = tower_for_level(cache, 7, 6);
  CHECK(pullback_distance(b2, coordinate_hyperplane(2, 0), TorusPoint::parse("1/6,1/6"), t6)
            .holds());
}

TEST_CASE("galois invariance and translation") {
  TowerCache cache(40);
  Subvariety x = line();
  TowerHandle t6 = tower_for_level(cache, 7, 6);
  GaloisElement tau = GaloisElement::frobenius(7, 0, 6);
  CHECK(galois_distance_invariance(tau, TorusPoint::parse("1/6,5/6"), x, t6).holds());
  CHECK(galois_distance_invariance(tau, TorusPoint::parse("1/3,1/2"), x, t6).holds());
  LawCheck tr = translation_law(TorusPoint::parse("1/6,5/6"), TorusPoint::parse("1/2,1/3"), x, t6);
  CHECK(tr.holds());
  // Twisting a rational subvariety is the identity.
  CHECK(galois_twist(tau, x).to_json_text() == x.to_json_text());
}

TEST_CASE("closed-form valuation of zeta^s - 1 matches the towers") {
  TowerCache cache(40);
  for (long p : {2L, 3L, 5L, 7L}) {
    for (long den = 1; den <= 20; ++den) {
      for (long num = 0; num < den; ++num) {
        RootOfUnity s(num, den);
        std::optional<Rat> closed = root_unity_valuation(s, p);
        TowerHandle t = tower_for_level(cache, p, s.order());
        TowerElement diff = embed_root(t, s) - TowerElement::one(t);
        ValuationResult v = valuation(diff);
        if (!closed) {
          CHECK(!v.is_finite());
        } else {
          REQUIRE(v.is_finite());
          CHECK(v.value() == *closed);
        }
      }
    }
  }
}

TEST_CASE("closed-form valuation matches the ideal-power oracle") {
  TowerCache cache(40);
  for (long p : {3L, 5L}) {
    for (long den : {2L, 3L, 5L, 9L, 15L}) {
      for (long num = 1; num < den; ++num) {
        RootOfUnity s(num, den);
        if (s.order() == 1) continue;
        CyclotomicInt z = CyclotomicInt::from_root(to_long(s.order()), s) -
                          CyclotomicInt::from_int(to_long(s.order()), 1);
        TowerHandle t = tower_for_level(cache, p, s.order());
        Rat v = ideal_power_valuation(z, p, t->residue_generator);
        CHECK(v == *root_unity_valuation(s, p));
      }
    }
  }
}

TEST_CASE("distance to the identity and the mattuck gap") {
  CHECK(distance_to_identity(TorusPoint::parse("0/1,0/1"), 5).is_member());
  DistanceValue d = distance_to_identity(TorusPoint::parse("1/5,0/1"), 5);
  CHECK(d.valuation() == rat(1, 4));
  CHECK(distance_to_identity(TorusPoint::parse("1/3"), 5).valuation() == 0);
  CHECK(distance_to_identity(TorusPoint::parse("1/25"), 5).valuation() == rat(1, 20));

  MattuckGapReport rep3 = mattuck_gap(3, 1, 3);
  CHECK(rep3.min_distance == DistanceValue::from_valuation(rat(1, 2)));
  CHECK(rep3.witness_a == TorusPoint::parse("0/1"));
  CHECK(rep3.witness_b == TorusPoint::parse("1/3"));

  // No p-torsion under the bound: all pairwise distances are 1.
  MattuckGapReport rep7 = mattuck_gap(7, 1, 6);
  CHECK(rep7.min_distance == DistanceValue::from_valuation(Rat(0)));
  CHECK(rep7.kernel_pairs == 0);

  MattuckGapReport rep5 = mattuck_gap(5, 1, 30);
  CHECK(rep5.min_distance == DistanceValue::from_valuation(rat(1, 4)));
  CHECK(rep5.witness_b == TorusPoint::parse("1/5"));
  CHECK(rep5.kernel_pairs > 0);
}

TEST_CASE("distance respects below-precision reporting") {
  // x - 4 evaluated at the identity is -3: symbolically nonzero, but it
  // vanishes at precision 1 over p = 3 and must be reported as such.
  Subvariety x;
  x.n = 1;
  LaurentTerm t1;
  t1.exps = IntVec(1);
  t1.exps(0) = 1;
  LaurentTerm t2;
  t2.exps = IntVec(1);
  t2.exps(0) = 0;
  t2.scale = -4;
  x.generators.push_back({t1, t2});
  TowerHandle shallow = tower_make(3, 1, 0, 1);
  DistanceValue d = distance(TorusPoint::parse("0/1"), x, shallow);
  CHECK(d.kind() == DistanceValue::Kind::BelowPrecision);
  // With enough precision the same evaluation is v = 1 exactly.
  TowerHandle deep = tower_make(3, 1, 0, 10);
  DistanceValue d2 = distance(TorusPoint::parse("0/1"), x, deep);
  CHECK(d2.kind() == DistanceValue::Kind::Valuation);
  CHECK(d2.valuation() == 1);
  // A ramified coordinate below the identity stays visible at precision 1.
  TowerHandle shallow9 = tower_make(3, 1, 2, 1);
  TowerElement z = embed_root(shallow9, RootOfUnity(1, 9)) - TowerElement::one(shallow9);
  CHECK(valuation(z).is_finite());
}
