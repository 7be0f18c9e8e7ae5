#include "tvlab/cyclotomic.hpp"

#include <sstream>
#include <stdexcept>

namespace tvlab {

long euler_phi_long(long m) { return to_long(euler_phi(Int(m))); }

CyclotomicInt::CyclotomicInt(long level) : level_(level) {
  if (level < 1) throw std::invalid_argument("CyclotomicInt: level must be >= 1");
  c_.assign(static_cast<size_t>(euler_phi_long(level)), Int(0));
}

CyclotomicInt CyclotomicInt::reduce(long level, const IntPolynomial& p) {
  CyclotomicInt z(level);
  IntPolynomial r = divide_monic(p, cyclotomic_polynomial(level)).remainder;
  for (long i = 0; i <= r.degree(); ++i) z.c_[static_cast<size_t>(i)] = r.coeff(i);
  return z;
}

CyclotomicInt::CyclotomicInt(long level, const IntPolynomial& value)
    : CyclotomicInt(reduce(level, value)) {}

CyclotomicInt CyclotomicInt::from_int(long level, const Int& value) {
  return reduce(level, IntPolynomial::constant(value));
}

CyclotomicInt CyclotomicInt::from_root(long level, const RootOfUnity& s) {
  if (Int(level) % s.order() != 0)
    throw std::invalid_argument("from_root: denominator does not divide level");
  Int exp = s.num() * (Int(level) / s.order());
  return reduce(level, IntPolynomial::monomial(1, to_long(exp)));
}

bool CyclotomicInt::is_zero() const {
  for (const Int& x : c_)
    if (x != 0) return false;
  return true;
}

CyclotomicInt CyclotomicInt::operator+(const CyclotomicInt& o) const {
  if (level_ != o.level_) {
    auto [a, b] = to_common_level(*this, o);
    return a + b;
  }
  CyclotomicInt z(level_);
  for (size_t i = 0; i < c_.size(); ++i) z.c_[i] = c_[i] + o.c_[i];
  return z;
}

CyclotomicInt CyclotomicInt::operator-(const CyclotomicInt& o) const { return *this + (-o); }

CyclotomicInt CyclotomicInt::operator-() const {
  CyclotomicInt z(level_);
  for (size_t i = 0; i < c_.size(); ++i) z.c_[i] = -c_[i];
  return z;
}

CyclotomicInt CyclotomicInt::operator*(const CyclotomicInt& o) const {
  if (level_ != o.level_) {
    auto [a, b] = to_common_level(*this, o);
    return a * b;
  }
  return reduce(level_, to_polynomial() * o.to_polynomial());
}

CyclotomicInt CyclotomicInt::operator*(const Int& k) const {
  CyclotomicInt z(level_);
  for (size_t i = 0; i < c_.size(); ++i) z.c_[i] = c_[i] * k;
  return z;
}

bool CyclotomicInt::operator==(const CyclotomicInt& o) const {
  if (level_ == o.level_) return c_ == o.c_;
  auto [a, b] = to_common_level(*this, o);
  return a.c_ == b.c_;
}

CyclotomicInt CyclotomicInt::lift_to_level(long target) const {
  if (target % level_ != 0)
    throw std::invalid_argument("lift_to_level: target not a multiple of level");
  if (target == level_) return *this;
  long stretch = target / level_;
  std::vector<Int> v(static_cast<size_t>(euler_phi_long(level_)) * stretch, Int(0));
  IntPolynomial p = to_polynomial();
  for (long i = 0; i <= p.degree(); ++i) v[static_cast<size_t>(i * stretch)] = p.coeff(i);
  return reduce(target, IntPolynomial(std::move(v)));
}

IntPolynomial CyclotomicInt::to_polynomial() const { return IntPolynomial(c_); }

std::string CyclotomicInt::to_string() const {
  std::ostringstream os;
  os << to_polynomial().to_string("z") << " (level " << level_ << ")";
  return os.str();
}

std::pair<CyclotomicInt, CyclotomicInt> to_common_level(const CyclotomicInt& a,
                                                        const CyclotomicInt& b) {
  long l = to_long(int_lcm(Int(a.level()), Int(b.level())));
  return {a.lift_to_level(l), b.lift_to_level(l)};
}

}  // namespace tvlab
