#include <doctest.h>

#include <random>

#include "tvlab/local_field.hpp"

using namespace tvlab;

namespace {

Rat rat(long n, long d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("tower construction") {
  TowerHandle t511 = tower_make(5, 1, 1, 20);
  CHECK(t511->e == 4);
  CHECK(t511->f == 1);
  // Phi_5(x+1) = x^4 + 5x^3 + 10x^2 + 10x + 5.
  CHECK(t511->eisenstein_poly == IntPolynomial({5, 10, 10, 5, 1}));

  CHECK(tower_make(7, 6, 0, 20)->f == 1);
  CHECK(tower_make(5, 6, 0, 20)->f == 2);
  CHECK(tower_make(5, 6, 0, 20)->e == 1);
  CHECK(tower_make(3, 2, 2, 10)->e == 6);
  CHECK_THROWS_AS(tower_make(5, 10, 0, 20), std::invalid_argument);
  CHECK_THROWS_AS(tower_make(4, 1, 0, 20), std::invalid_argument);
  CHECK(t511->uniformizer_valuation() == rat(1, 4));
}

TEST_CASE("valuation of basic elements") {
  TowerHandle t = tower_make(5, 1, 1, 20);
  TowerElement zeta5 = embed_root(t, RootOfUnity(1, 5));
  ValuationResult v = valuation(zeta5 - TowerElement::one(t));
  CHECK(v.is_finite());
  CHECK(v.value() == rat(1, 4));

  CHECK(valuation(TowerElement::from_integer(t, 5)).value() == 1);
  CHECK(!valuation(TowerElement::zero(t)).is_finite());
  CHECK(valuation(TowerElement::zero(t)).to_string() == "below_precision");

  TowerHandle t76 = tower_make(7, 6, 0, 20);
  TowerElement z = teichmuller(t76, Int(2)) + teichmuller(t76, Int(6)) -
                   TowerElement::one(t76);
  CHECK(valuation(z).value() == 1);
}

TEST_CASE("teichmuller lifts") {
  TowerHandle t7 = tower_make(7, 6, 0, 20);
  // omega(2) = 30 mod 49, omega(6) = 48 mod 49.
  CHECK(reduce_level(teichmuller(t7, Int(2)), 1).coords == std::vector<Int>{30});
  CHECK(reduce_level(teichmuller(t7, Int(6)), 1).coords == std::vector<Int>{48});

  TowerHandle t5 = tower_make(5, 1, 0, 20);
  CHECK(reduce_level(teichmuller(t5, Int(2)), 1).coords == std::vector<Int>{7});
  // omega(2)^2 = omega(4) = omega(-1) = -1.
  TowerElement w2 = teichmuller(t5, Int(2));
  CHECK(w2 * w2 == teichmuller(t5, Int(4)));
  CHECK(w2 * w2 == -TowerElement::one(t5));

  // omega(a)^(q-1) = 1; distinct residues stay at valuation 0.
  TowerHandle t52 = tower_make(5, 6, 0, 15);
  for (long a = 1; a < 10; ++a) {
    TowerElement w = teichmuller(t52, FqElem::decode(t52->residue, a));
    CHECK(w.pow(t52->q - 1) == TowerElement::one(t52));
    for (long b = 1; b < a; ++b) {
      ValuationResult d =
          valuation(w - teichmuller(t52, FqElem::decode(t52->residue, b)));
      CHECK(d.is_finite());
      CHECK(d.value() == 0);
    }
  }
  CHECK_THROWS_AS(teichmuller(t5, Int(0)), std::invalid_argument);
}

TEST_CASE("embedding of symbolic roots") {
  TowerHandle t76 = tower_make(7, 6, 0, 20);
  TowerElement z = embed_root(t76, RootOfUnity(1, 6));
  // A primitive 6th root satisfies z^2 - z + 1 = 0.
  CHECK((z * z - z + TowerElement::one(t76)).is_zero_at_precision());
  // The chosen residue generator mod 7 is 3.
  CHECK(reduce_level(z, 0).coords == std::vector<Int>{3});

  TowerHandle t511 = tower_make(5, 1, 1, 20);
  TowerElement zeta5 = embed_root(t511, RootOfUnity(1, 5));
  // zeta_5 = x + 1 exactly.
  std::vector<Int> expect(4, Int(0));
  expect[0] = 1;
  CHECK(zeta5.coord(0, 0) == 1);
  CHECK(zeta5.coord(0, 1) == 1);
  CHECK(zeta5.coord(0, 2) == 0);
  CHECK(embed_root(t511, RootOfUnity(0, 1)) == TowerElement::one(t511));
  CHECK_THROWS_AS(embed_root(t511, RootOfUnity(1, 3)), std::invalid_argument);

  std::mt19937_64 rng(3);
  TowerHandle mixed = tower_make(3, 8, 2, 12);
  Int level = mixed->level();
  for (int it = 0; it < 60; ++it) {
    RootOfUnity s(static_cast<long>(rng() % to_long(level)), to_long(level));
    RootOfUnity u(static_cast<long>(rng() % to_long(level)), to_long(level));
    CHECK(embed_root(mixed, s) * embed_root(mixed, u) == embed_root(mixed, s + u));
  }
}

TEST_CASE("reduction to finite levels") {
  TowerHandle t511 = tower_make(5, 1, 1, 20);
  TowerElement zeta5 = embed_root(t511, RootOfUnity(1, 5));
  CHECK(reduce_level(zeta5, 0) == reduce_level(TowerElement::one(t511), 0));
  CHECK(!(reduce_level(zeta5, 1) == reduce_level(TowerElement::one(t511), 1)));

  TowerHandle t76 = tower_make(7, 6, 0, 20);
  CHECK(!(reduce_level(teichmuller(t76, Int(2)), 0) ==
          reduce_level(TowerElement::one(t76), 0)));
  CHECK(reduce_level(TowerElement::from_integer(t76, 49), 1) ==
        reduce_level(TowerElement::zero(t76), 1));
  CHECK_THROWS_AS(reduce_level(zeta5, 20), std::invalid_argument);
}

TEST_CASE("frobenius lift on unramified towers") {
  TowerHandle t76 = tower_make(7, 6, 0, 20);
  TowerElement w2 = teichmuller(t76, Int(2));
  CHECK(frobenius_apply(w2) == w2);  // 2^7 = 2 mod 7 and f = 1

  TowerHandle t56 = tower_make(5, 6, 0, 15);
  for (long a = 1; a < 12; ++a) {
    TowerElement w = teichmuller(t56, FqElem::decode(t56->residue, a));
    CHECK((frobenius_apply(w) - w.pow(5)).is_zero_at_precision());
  }
  CHECK(frobenius_apply(TowerElement::one(t56)) == TowerElement::one(t56));
  // Ring homomorphism on sums.
  TowerElement a = teichmuller(t56, FqElem::decode(t56->residue, 7));
  TowerElement b = teichmuller(t56, FqElem::decode(t56->residue, 3));
  CHECK(frobenius_apply(a * b + a) == frobenius_apply(a) * frobenius_apply(b) + frobenius_apply(a));

  TowerHandle ram = tower_make(5, 1, 1, 10);
  CHECK_THROWS_AS(frobenius_apply(TowerElement::one(ram)), std::invalid_argument);
}

TEST_CASE("ultrametric and multiplicativity") {
  std::mt19937_64 rng(17);
  TowerHandle t = tower_make(3, 4, 1, 16);
  for (int it = 0; it < 120; ++it) {
    RootOfUnity s(static_cast<long>(rng() % 12), 12);
    RootOfUnity u(static_cast<long>(rng() % 12), 12);
    TowerElement a = embed_root(t, s) - TowerElement::one(t);
    TowerElement b = embed_root(t, u) + TowerElement::from_integer(t, 2);
    ValuationResult va = valuation(a), vb = valuation(b);
    if (!va.is_finite() || !vb.is_finite()) continue;
    ValuationResult vsum = valuation(a + b);
    ValuationResult vmin = va < vb ? va : vb;
    CHECK(!(vsum < vmin));
    if (!(va == vb)) CHECK(vsum == vmin);
    if (va.value() + vb.value() < t->precision) {
      ValuationResult vprod = valuation(a * b);
      CHECK(vprod.is_finite());
      CHECK(vprod.value() == va.value() + vb.value());
    }
  }
}

TEST_CASE("consistency with the symbolic zero test") {
  // Symbolically nonzero cyclotomic integers keep a finite valuation at the
  // default precision.
  TowerHandle t = tower_make(7, 6, 0, 40);
  std::mt19937_64 rng(23);
  for (int it = 0; it < 80; ++it) {
    CyclotomicInt z = CyclotomicInt::from_root(6, RootOfUnity(static_cast<long>(rng() % 6), 6)) +
                      CyclotomicInt::from_root(6, RootOfUnity(static_cast<long>(rng() % 6), 6)) -
                      CyclotomicInt::from_int(6, static_cast<long>(rng() % 5));
    TowerElement e = embed_cyclotomic(t, z);
    if (z.is_zero())
      CHECK(e.is_zero_at_precision());
    else
      CHECK(valuation(e).is_finite());
  }
}

TEST_CASE("remark-2 growth of p-adic valuations") {
  // v_3(2^(2*3^(n-1)) - 1) >= n, checked in exact integers.
  for (int n = 1; n <= 6; ++n) {
    Int value = int_pow(Int(2), 2 * static_cast<unsigned long>(to_long(int_pow(3, n - 1)))) - 1;
    CHECK(Int(p_valuation(value, 3)) >= n);
  }
}
