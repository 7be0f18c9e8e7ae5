#include "tvlab/root_of_unity.hpp"

#include <sstream>
#include <stdexcept>

namespace tvlab {

RootOfUnity::RootOfUnity(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("RootOfUnity: zero denominator");
  Int d = abs(den);
  Int n = int_mod(num, d);
  Int g = int_gcd(n, d);
  num_ = n / g;
  den_ = d / g;
}

RootOfUnity RootOfUnity::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return RootOfUnity(Int(text), 1);
  return RootOfUnity(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
}

RootOfUnity RootOfUnity::operator+(const RootOfUnity& o) const {
  return RootOfUnity(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RootOfUnity RootOfUnity::operator-(const RootOfUnity& o) const {
  return RootOfUnity(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RootOfUnity RootOfUnity::operator-() const { return RootOfUnity(-num_, den_); }

RootOfUnity RootOfUnity::times(const Int& n) const { return RootOfUnity(num_ * n, den_); }

bool RootOfUnity::operator<(const RootOfUnity& o) const {
  if (den_ != o.den_) return den_ < o.den_;
  return num_ < o.num_;
}

std::string RootOfUnity::to_string() const {
  return num_.get_str() + "/" + den_.get_str();
}

TorusPoint TorusPoint::parse(const std::string& text) {
  std::vector<RootOfUnity> coords;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) coords.push_back(RootOfUnity::parse(part));
  if (coords.empty()) throw std::invalid_argument("TorusPoint: empty coordinate list");
  return TorusPoint(std::move(coords));
}

Int TorusPoint::order() const {
  Int l = 1;
  for (const auto& s : c_) l = int_lcm(l, s.order());
  return l;
}

bool TorusPoint::is_identity() const {
  for (const auto& s : c_)
    if (!s.is_one()) return false;
  return true;
}

TorusPoint TorusPoint::operator+(const TorusPoint& o) const {
  if (dim() != o.dim()) throw std::invalid_argument("TorusPoint: dimension mismatch");
  std::vector<RootOfUnity> v(c_);
  for (size_t i = 0; i < v.size(); ++i) v[i] = v[i] + o.c_[i];
  return TorusPoint(std::move(v));
}

TorusPoint TorusPoint::operator-(const TorusPoint& o) const { return *this + (-o); }

TorusPoint TorusPoint::operator-() const {
  std::vector<RootOfUnity> v(c_);
  for (auto& s : v) s = -s;
  return TorusPoint(std::move(v));
}

TorusPoint TorusPoint::times(const Int& n) const {
  std::vector<RootOfUnity> v(c_);
  for (auto& s : v) s = s.times(n);
  return TorusPoint(std::move(v));
}

bool TorusPoint::operator<(const TorusPoint& o) const {
  if (dim() != o.dim()) return dim() < o.dim();
  for (int i = 0; i < dim(); ++i) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

TorusPoint TorusPoint::apply_matrix(const IntMat& b) const {
  if (b.cols() != dim()) throw std::invalid_argument("apply_matrix: shape mismatch");
  std::vector<RootOfUnity> v;
  v.reserve(static_cast<size_t>(b.rows()));
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    RootOfUnity s;
    for (Eigen::Index j = 0; j < b.cols(); ++j) s = s + c_[j].times(b(i, j));
    v.push_back(s);
  }
  return TorusPoint(std::move(v));
}

std::string TorusPoint::to_string() const {
  std::string out;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ",";
    out += c_[i].to_string();
  }
  return out;
}

GaloisElement::GaloisElement(const Int& p, int k, const Int& m_prime,
                             const Int& frob_exponent, const Int& ramified_exponent)
    : p_(p), k_(k), m_prime_(m_prime) {
  if (!is_prime(p)) throw std::invalid_argument("GaloisElement: p must be prime");
  if (k < 0 || m_prime < 1 || m_prime % p == 0)
    throw std::invalid_argument("GaloisElement: bad level");
  f_ = multiplicative_order(p, m_prime);
  j_ = int_mod(frob_exponent, f_);
  Int pk = int_pow(p, static_cast<unsigned long>(k));
  b_ = int_mod(ramified_exponent, pk);
  if (int_gcd(b_, pk) != 1) throw std::invalid_argument("GaloisElement: b not a unit");
}

GaloisElement GaloisElement::frobenius(const Int& p, int k, const Int& m_prime) {
  return GaloisElement(p, k, m_prime, 1, 1);
}

GaloisElement GaloisElement::identity(const Int& p, int k, const Int& m_prime) {
  return GaloisElement(p, k, m_prime, 0, 1);
}

RootOfUnity GaloisElement::act(const RootOfUnity& s) const {
  if (level() % s.order() != 0)
    throw std::invalid_argument("GaloisElement: level does not cover point order");
  auto [ppart, tame] = torsion_split(s, p_);
  RootOfUnity tame_img = tame.times(mod_pow(p_, j_, tame.order() == 1 ? Int(2) : tame.order()));
  RootOfUnity p_img = ppart.times(b_);
  return tame_img + p_img;
}

TorusPoint GaloisElement::act(const TorusPoint& pt) const {
  std::vector<RootOfUnity> v;
  v.reserve(pt.coords().size());
  for (const auto& s : pt.coords()) v.push_back(act(s));
  return TorusPoint(std::move(v));
}

GaloisElement GaloisElement::compose(const GaloisElement& o) const {
  if (p_ != o.p_ || k_ != o.k_ || m_prime_ != o.m_prime_)
    throw std::invalid_argument("GaloisElement: level mismatch in composition");
  Int pk = int_pow(p_, static_cast<unsigned long>(k_));
  return GaloisElement(p_, k_, m_prime_, j_ + o.j_, int_mod(b_ * o.b_, pk));
}

bool GaloisElement::operator==(const GaloisElement& o) const {
  return p_ == o.p_ && k_ == o.k_ && m_prime_ == o.m_prime_ && j_ == o.j_ && b_ == o.b_;
}

std::vector<GaloisElement> local_galois_group(const Int& p, int k, const Int& m_prime) {
  std::vector<GaloisElement> out;
  Int f = multiplicative_order(p, m_prime);
  Int pk = int_pow(p, static_cast<unsigned long>(k));
  for (Int j = 0; j < f; ++j)
    for (Int b = 1; b <= pk; ++b)
      if (int_gcd(b, pk) == 1) out.emplace_back(p, k, m_prime, j, b);
  return out;
}

std::pair<RootOfUnity, RootOfUnity> torsion_split(const RootOfUnity& s, const Int& p) {
  Int m = s.order();
  Int m_tame;
  unsigned long k = p_valuation(m, p, &m_tame);
  Int pk = int_pow(p, k);
  if (pk == 1) return {RootOfUnity::one(), s};
  if (m_tame == 1) return {s, RootOfUnity::one()};
  // c/m = a/p^k + b/m' with a = c * inv(m') mod p^k, b = c * inv(p^k) mod m'.
  Int a = int_mod(s.num() * mod_inverse(m_tame, pk), pk);
  Int b = int_mod(s.num() * mod_inverse(pk, m_tame), m_tame);
  return {RootOfUnity(a, pk), RootOfUnity(b, m_tame)};
}

std::pair<TorusPoint, TorusPoint> torsion_split(const TorusPoint& pt, const Int& p) {
  std::vector<RootOfUnity> xs, ys;
  xs.reserve(pt.coords().size());
  ys.reserve(pt.coords().size());
  for (const auto& s : pt.coords()) {
    auto [x, y] = torsion_split(s, p);
    xs.push_back(x);
    ys.push_back(y);
  }
  return {TorusPoint(std::move(xs)), TorusPoint(std::move(ys))};
}

}  // namespace tvlab
