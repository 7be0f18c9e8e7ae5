#include <doctest.h>

#include <random>

#include "tvlab/elliptic.hpp"

using namespace tvlab;

TEST_CASE("point counts and Weil polynomials over F_5") {
  FieldHandle f5 = FiniteFieldSpec::make(5, 1);
  EllipticCurveFq e1 = EllipticCurveFq::parse(f5, "a4=1,a6=0");  // y^2 = x^3 + x
  WeilPolynomial w1 = ec_point_count(e1);
  CHECK(w1.count == 4);
  CHECK(w1.a == 2);
  CHECK(w1.f0 == IntPolynomial({5, -2, 1}));
  CHECK(w1.f0.evaluate(1) == w1.count);

  EllipticCurveFq e2 = EllipticCurveFq::parse(f5, "a4=0,a6=1");  // y^2 = x^3 + 1
  WeilPolynomial w2 = ec_point_count(e2);
  CHECK(w2.count == 6);
  CHECK(w2.a == 0);
  CHECK(w2.f0 == IntPolynomial({5, 0, 1}));

  CHECK_THROWS_AS(EllipticCurveFq::parse(f5, "a4=0,a6=0"), std::invalid_argument);
  CHECK_THROWS_AS(EllipticCurveFq::parse(f5, "a4=0"), std::invalid_argument);
}

TEST_CASE("group law sanity") {
  FieldHandle f7 = FiniteFieldSpec::make(7, 1);
  EllipticCurveFq e = EllipticCurveFq::parse(f7, "a4=1,a6=1");
  std::vector<EcPoint> pts = ec_points(e);
  WeilPolynomial w = ec_point_count(e);
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; ++it) {
    const EcPoint& a = pts[rng() % pts.size()];
    const EcPoint& b = pts[rng() % pts.size()];
    const EcPoint& c = pts[rng() % pts.size()];
    CHECK(ec_add(e, ec_add(e, a, b), c) == ec_add(e, a, ec_add(e, b, c)));
    CHECK(ec_add(e, a, ec_neg(e, a)).infinity);
    CHECK(ec_add(e, a, EcPoint::at_infinity()) == a);
  }
  // The group order annihilates every point.
  for (const auto& p : pts) CHECK(ec_scalar(e, w.count, p).infinity);
}

TEST_CASE("frobenius annihilation on extensions") {
  FieldHandle f5 = FiniteFieldSpec::make(5, 1);
  EllipticCurveFq e = EllipticCurveFq::parse(f5, "a4=1,a6=0");
  for (int r = 1; r <= 3; ++r) {
    AnnihilationReport rep = ec_frobenius_annihilate(e, r);
    CHECK(rep.newton_consistent);
    CHECK(rep.points_checked == static_cast<size_t>(to_long(rep.extension_count)));
  }
  // r = 1 annihilation is multiplication by the group order.
  AnnihilationReport r1 = ec_frobenius_annihilate(e, 1);
  CHECK(r1.extension_count == 4);

  EllipticCurveFq e2 = EllipticCurveFq::parse(f5, "a4=0,a6=1");
  CHECK(ec_frobenius_annihilate(e2, 2).newton_consistent);
}

TEST_CASE("hasse bound is exhaustive on small fields") {
  for (long q : {5L, 7L}) {
    FieldHandle f = FiniteFieldSpec::make(q, 1);
    for (long a4 = 0; a4 < q; ++a4)
      for (long a6 = 0; a6 < q; ++a6) {
        FqElem c4 = FqElem::from_int(f, a4), c6 = FqElem::from_int(f, a6);
        FqElem disc = FqElem::from_int(f, 4) * c4 * c4 * c4 +
                      FqElem::from_int(f, 27) * c6 * c6;
        if (disc.is_zero()) continue;
        WeilPolynomial w = ec_point_count(EllipticCurveFq::make(f, c4, c6));
        CHECK(w.a * w.a <= 4 * w.q);
      }
  }
}

TEST_CASE("multiplicative group frobenius identity") {
  FieldHandle f5 = FiniteFieldSpec::make(5, 1);
  CHECK(gm_frobenius_identity(f5, 1).units_checked == 4);
  CHECK(gm_frobenius_identity(f5, 2).units_checked == 24);
  FieldHandle f9 = FiniteFieldSpec::make(3, 2);
  CHECK(gm_frobenius_identity(f9, 1).units_checked == 8);
  CHECK_THROWS_AS(gm_frobenius_identity(FiniteFieldSpec::make(11, 1), 5), std::domain_error);
}
