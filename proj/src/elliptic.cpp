#include "tvlab/elliptic.hpp"

#include <map>
#include <stdexcept>

namespace tvlab {

EllipticCurveFq EllipticCurveFq::make(const FieldHandle& field, const FqElem& a4,
                                      const FqElem& a6) {
  if (field->p <= 3)
    throw std::invalid_argument("EllipticCurveFq: short Weierstrass form needs p > 3");
  EllipticCurveFq e{field, a4, a6};
  if (e.discriminant().is_zero()) throw std::invalid_argument("EllipticCurveFq: singular curve");
  return e;
}

EllipticCurveFq EllipticCurveFq::parse(const FieldHandle& field, const std::string& spec) {
  Int a4 = 0, a6 = 0;
  bool saw4 = false, saw6 = false;
  std::string s = spec;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    size_t eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("curve spec: expected key=value");
    std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "a4") {
      a4 = Int(value);
      saw4 = true;
    } else if (key == "a6") {
      a6 = Int(value);
      saw6 = true;
    } else {
      throw std::invalid_argument("curve spec: unknown key " + key);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (!saw4 || !saw6) throw std::invalid_argument("curve spec: need a4 and a6");
  return make(field, FqElem::from_int(field, a4), FqElem::from_int(field, a6));
}

FqElem EllipticCurveFq::discriminant() const {
  FqElem four = FqElem::from_int(field, 4);
  FqElem twenty_seven = FqElem::from_int(field, 27);
  FqElem d = four * a4 * a4 * a4 + twenty_seven * a6 * a6;
  return -(FqElem::from_int(field, 16) * d);
}

bool EllipticCurveFq::contains(const FqElem& x, const FqElem& y) const {
  return y * y == x * x * x + a4 * x + a6;
}

bool EcPoint::operator==(const EcPoint& o) const {
  if (infinity != o.infinity) return false;
  return infinity || (x == o.x && y == o.y);
}

EcPoint ec_neg(const EllipticCurveFq&, const EcPoint& p) {
  if (p.infinity) return p;
  return EcPoint::affine(p.x, -p.y);
}

EcPoint ec_add(const EllipticCurveFq& e, const EcPoint& p, const EcPoint& q) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  const FieldHandle& f = e.field;
  if (p.x == q.x) {
    if (!(p.y == q.y) || p.y.is_zero()) return EcPoint::at_infinity();
    // Doubling.
    FqElem three = FqElem::from_int(f, 3);
    FqElem two = FqElem::from_int(f, 2);
    FqElem lambda = (three * p.x * p.x + e.a4) * (two * p.y).inverse();
    FqElem x3 = lambda * lambda - p.x - q.x;
    FqElem y3 = lambda * (p.x - x3) - p.y;
    return EcPoint::affine(x3, y3);
  }
  FqElem lambda = (q.y - p.y) * (q.x - p.x).inverse();
  FqElem x3 = lambda * lambda - p.x - q.x;
  FqElem y3 = lambda * (p.x - x3) - p.y;
  return EcPoint::affine(x3, y3);
}

EcPoint ec_scalar(const EllipticCurveFq& e, const Int& n, const EcPoint& p) {
  if (n < 0) return ec_scalar(e, -n, ec_neg(e, p));
  EcPoint acc = EcPoint::at_infinity();
  EcPoint base = p;
  Int k = n;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = ec_add(e, acc, base);
    base = ec_add(e, base, base);
    k >>= 1;
  }
  return acc;
}

EcPoint ec_frobenius(const EcPoint& p, const Int& q0) {
  if (p.infinity) return p;
  return EcPoint::affine(p.x.pow(q0), p.y.pow(q0));
}

std::vector<EcPoint> ec_points(const EllipticCurveFq& e) {
  const FieldHandle& f = e.field;
  if (f->q > 20000) throw std::domain_error("ec_points: field too large for enumeration");
  // Square table: value encoding -> the y with y^2 = value.
  std::multimap<std::string, FqElem> sqrts;
  for (Int enc = 0; enc < f->q; ++enc) {
    FqElem y = FqElem::decode(f, enc);
    sqrts.emplace((y * y).encode().get_str(), y);
  }
  std::vector<EcPoint> pts;
  pts.push_back(EcPoint::at_infinity());
  for (Int enc = 0; enc < f->q; ++enc) {
    FqElem x = FqElem::decode(f, enc);
    FqElem rhs = x * x * x + e.a4 * x + e.a6;
    auto range = sqrts.equal_range(rhs.encode().get_str());
    for (auto it = range.first; it != range.second; ++it)
      pts.push_back(EcPoint::affine(x, it->second));
  }
  return pts;
}

WeilPolynomial ec_point_count(const EllipticCurveFq& e) {
  WeilPolynomial w;
  w.q = e.field->q;
  w.count = Int(static_cast<long>(ec_points(e).size()));
  w.a = w.q + 1 - w.count;
  if (w.a * w.a > 4 * w.q) throw std::logic_error("ec_point_count: Hasse bound violated");
  w.f0 = IntPolynomial{w.q, -w.a, 1};
  return w;
}

Int WeilPolynomial::count_over_extension(int r) const {
  // a_r = alpha^r + beta^r with alpha beta = q, alpha + beta = a.
  Int am2 = 2, am1 = a;
  if (r == 0) return Int(0);
  for (int i = 2; i <= r; ++i) {
    Int cur = a * am1 - q * am2;
    am2 = am1;
    am1 = cur;
  }
  Int ar = (r == 1) ? a : am1;
  return int_pow(q, static_cast<unsigned long>(r)) + 1 - ar;
}

AnnihilationReport ec_frobenius_annihilate(const EllipticCurveFq& e, int r) {
  WeilPolynomial w = ec_point_count(e);
  FieldHandle big = (r == 1) ? e.field : FiniteFieldSpec::make(e.field->p, e.field->f * r);
  EllipticCurveFq ext = e;
  if (r > 1) {
    // Base-change coefficients along the deterministic embedding.
    FqElem gen = embed_subfield_generator(e.field, big);
    auto lift = [&](const FqElem& c) {
      FqElem acc = FqElem::zero(big);
      const auto& cs = c.coeffs();
      for (auto it = cs.rbegin(); it != cs.rend(); ++it)
        acc = acc * gen + FqElem::from_int(big, *it);
      return acc;
    };
    ext = EllipticCurveFq::make(big, lift(e.a4), lift(e.a6));
  }
  AnnihilationReport rep;
  rep.q = w.q;
  rep.r = r;
  std::vector<EcPoint> pts = ec_points(ext);
  rep.extension_count = Int(static_cast<long>(pts.size()));
  rep.newton_consistent = (rep.extension_count == w.count_over_extension(r));
  for (const auto& p : pts) {
    EcPoint f1 = ec_frobenius(p, w.q);
    EcPoint f2 = ec_frobenius(f1, w.q);
    EcPoint lhs = ec_add(ext, f2, ec_neg(ext, ec_scalar(ext, w.a, f1)));
    lhs = ec_add(ext, lhs, ec_scalar(ext, w.q, p));
    if (!lhs.infinity)
      throw std::logic_error("ec_frobenius_annihilate: Weil polynomial failed to annihilate");
    ++rep.points_checked;
  }
  return rep;
}

GmFrobeniusReport gm_frobenius_identity(const FieldHandle& field, int r) {
  if (r < 1) throw std::invalid_argument("gm_frobenius_identity: r must be >= 1");
  FieldHandle big = (r == 1) ? field : FiniteFieldSpec::make(field->p, field->f * r);
  if (big->q > 10000) throw std::domain_error("gm_frobenius_identity: field too large");
  GmFrobeniusReport rep;
  rep.q = field->q;
  rep.r = r;
  for (Int enc = 1; enc < big->q; ++enc) {
    FqElem x = FqElem::decode(big, enc);
    // Frobenius computed as f-fold p-power vs the [q] monomial map.
    FqElem frob = x;
    for (int i = 0; i < field->f; ++i) frob = frob.pow(field->p);
    if (!(frob == x.pow(field->q)))
      throw std::logic_error("gm_frobenius_identity: Frobenius differs from [q]");
    ++rep.units_checked;
  }
  return rep;
}

}  // namespace tvlab
