#pragma once

#include <Eigen/Dense>
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace Eigen {
// Exact big-integer scalar for dense matrices.
template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpz_class;
  using Nested = mpz_class;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 30,
    MulCost = 60
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace tvlab {

using Int = mpz_class;
using Rat = mpq_class;

using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

inline Int int_gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Nonnegative remainder, 0 <= r < |m|.
inline Int int_mod(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Int mod_pow(const Int& base, const Int& exp, const Int& mod) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

inline Int mod_inverse(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::domain_error("mod_inverse: element not invertible");
  return r;
}

// v_p(n) for n != 0; also returns the prime-to-p cofactor.
inline unsigned long p_valuation(const Int& n, const Int& p, Int* cofactor = nullptr) {
  if (n == 0) throw std::domain_error("p_valuation of zero");
  Int cof;
  unsigned long v = mpz_remove(cof.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
  if (cofactor) *cofactor = cof;
  return v;
}

inline bool is_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0; }

inline std::vector<Int> prime_factors(Int n) {
  std::vector<Int> out;
  if (n < 0) n = -n;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline Int euler_phi(const Int& n) {
  Int result = n;
  for (const Int& p : prime_factors(n)) result = result / p * (p - 1);
  return result;
}

// Multiplicative order of a modulo m (gcd(a,m)=1 required).
inline Int multiplicative_order(const Int& a, const Int& m) {
  if (m == 1) return 1;
  if (int_gcd(int_mod(a, m), m) != 1)
    throw std::domain_error("multiplicative_order: not a unit");
  Int order = euler_phi(m);
  for (const Int& p : prime_factors(order)) {
    while (order % p == 0 && mod_pow(a, order / p, m) == 1) order /= p;
  }
  return order;
}

inline long to_long(const Int& n) {
  if (!n.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
  return n.get_si();
}

inline IntMat int_identity(Eigen::Index n) {
  IntMat m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = (i == j) ? 1 : 0;
  return m;
}

inline IntMat int_zero(Eigen::Index r, Eigen::Index c) {
  IntMat m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = 0;
  return m;
}

inline IntMat kronecker(const IntMat& a, const IntMat& b) {
  IntMat out = int_zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

}  // namespace tvlab
