#include "tvlab/int_polynomial.hpp"

#include <map>
#include <mutex>

#include "tvlab/lattice.hpp"
#include <sstream>
#include <stdexcept>

namespace tvlab {

void IntPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPolynomial IntPolynomial::monomial(const Int& c, long k) {
  if (c == 0) return zero();
  std::vector<Int> v(static_cast<size_t>(k) + 1, Int(0));
  v.back() = c;
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::power_minus_one(long m) {
  if (m < 1) throw std::invalid_argument("power_minus_one: m must be >= 1");
  std::vector<Int> v(static_cast<size_t>(m) + 1, Int(0));
  v.front() = -1;
  v.back() = 1;
  return IntPolynomial(std::move(v));
}

const Int& IntPolynomial::coeff(long i) const {
  static const Int kZero(0);
  if (i < 0 || i >= static_cast<long>(c_.size())) return kZero;
  return c_[static_cast<size_t>(i)];
}

const Int& IntPolynomial::leading() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  std::vector<Int> v(std::max(c_.size(), o.c_.size()), Int(0));
  for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
  std::vector<Int> v(std::max(c_.size(), o.c_.size()), Int(0));
  for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) v[i] -= o.c_[i];
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-() const {
  std::vector<Int> v = c_;
  for (Int& x : v) x = -x;
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  if (is_zero() || o.is_zero()) return zero();
  std::vector<Int> v(c_.size() + o.c_.size() - 1, Int(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator*(const Int& k) const {
  if (k == 0) return zero();
  std::vector<Int> v = c_;
  for (Int& x : v) x *= k;
  return IntPolynomial(std::move(v));
}

Int IntPolynomial::evaluate(const Int& x) const {
  Int acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string IntPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = degree(); i >= 0; --i) {
    const Int& a = coeff(i);
    if (a == 0) continue;
    Int mag = abs(a);
    if (first) {
      if (a < 0) os << "-";
      first = false;
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i > 0) {
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

PolyDivision divide_monic(const IntPolynomial& num, const IntPolynomial& den) {
  if (!den.is_monic()) throw std::invalid_argument("divide_monic: divisor must be monic");
  std::vector<Int> rem(num.coeffs());
  const long dd = den.degree();
  const long dn = num.degree();
  if (dn < dd) return {IntPolynomial::zero(), num};
  std::vector<Int> quo(static_cast<size_t>(dn - dd) + 1, Int(0));
  for (long i = dn; i >= dd; --i) {
    Int q = rem[static_cast<size_t>(i)];
    if (q == 0) continue;
    quo[static_cast<size_t>(i - dd)] = q;
    for (long j = 0; j <= dd; ++j)
      rem[static_cast<size_t>(i - dd + j)] -= q * den.coeff(j);
  }
  return {IntPolynomial(std::move(quo)), IntPolynomial(std::move(rem))};
}

IntPolynomial exact_quotient(const IntPolynomial& num, const IntPolynomial& den) {
  PolyDivision d = divide_monic(num, den);
  if (!d.remainder.is_zero()) throw std::domain_error("exact_quotient: division not exact");
  return d.quotient;
}

namespace {

// Euclidean remainder sequence over Q, tracked with primitive integer
// representatives to keep coefficients small.
IntPolynomial primitive_part(const IntPolynomial& p) {
  if (p.is_zero()) return p;
  Int g = 0;
  for (const Int& c : p.coeffs()) g = int_gcd(g, c);
  if (p.leading() < 0) g = -g;
  std::vector<Int> v = p.coeffs();
  for (Int& c : v) c /= g;
  return IntPolynomial(std::move(v));
}

// Remainder of a by b over Q, scaled to an integer polynomial.
IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial r = a;
  const long db = b.degree();
  while (!r.is_zero() && r.degree() >= db) {
    long shift = r.degree() - db;
    Int lc_r = r.leading();
    r = r * b.leading() - (b * lc_r) * IntPolynomial::monomial(1, shift);
  }
  return r;
}

}  // namespace

IntPolynomial rational_gcd(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial x = primitive_part(a), y = primitive_part(b);
  while (!y.is_zero()) {
    IntPolynomial r = primitive_part(pseudo_remainder(x, y));
    x = y;
    y = r;
  }
  return x;
}

bool divides_over_rationals(const IntPolynomial& d, const IntPolynomial& g) {
  if (d.is_zero()) return g.is_zero();
  if (g.is_zero()) return true;
  return pseudo_remainder(g, d).is_zero();
}

Int resultant(const IntPolynomial& a, const IntPolynomial& b) {
  const long da = a.degree(), db = b.degree();
  if (da < 0 || db < 0) return 0;
  if (da == 0) return int_pow(a.coeff(0), static_cast<unsigned long>(db));
  if (db == 0) return int_pow(b.coeff(0), static_cast<unsigned long>(da));
  IntMat s = int_zero(da + db, da + db);
  for (long i = 0; i < db; ++i)
    for (long j = 0; j <= da; ++j) s(i, i + j) = a.coeff(da - j);
  for (long i = 0; i < da; ++i)
    for (long j = 0; j <= db; ++j) s(db + i, i + j) = b.coeff(db - j);
  return determinant(s);
}

const IntPolynomial& cyclotomic_polynomial(long m) {
  static std::map<long, IntPolynomial> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (m < 1) throw std::invalid_argument("cyclotomic_polynomial: m must be >= 1");
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  // Build bottom-up so the recursion never re-enters the lock.
  for (long d = 1; d <= m; ++d) {
    if (m % d != 0 || cache.count(d)) continue;
    IntPolynomial num = IntPolynomial::power_minus_one(d);
    for (long e = 1; e < d; ++e)
      if (d % e == 0) num = exact_quotient(num, cache.at(e));
    cache.emplace(d, std::move(num));
  }
  return cache.at(m);
}

}  // namespace tvlab
