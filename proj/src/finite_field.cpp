#include "tvlab/finite_field.hpp"

#include <sstream>
#include <stdexcept>

namespace tvlab {

namespace {

// F_p[y] arithmetic on machine words; p is desk-scale (p^2 * f must fit in
// int64, enforced at field construction).
using LPoly = std::vector<long>;

LPoly trim(LPoly v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

LPoly lp_mul(const LPoly& a, const LPoly& b, long p) {
  if (a.empty() || b.empty()) return {};
  LPoly v(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) v[i + j] = (v[i + j] + a[i] * b[j]) % p;
  }
  return trim(std::move(v));
}

LPoly lp_rem(LPoly a, const LPoly& m, long p) {
  // m monic up to a unit.
  long lead_inv = to_long(mod_inverse(m.back(), p));
  while (a.size() >= m.size()) {
    long q = a.back() * lead_inv % p;
    size_t shift = a.size() - m.size();
    if (q != 0)
      for (size_t j = 0; j < m.size(); ++j)
        a[shift + j] = ((a[shift + j] - q * m[j]) % p + p) % p;
    a.pop_back();
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

LPoly lp_powmod(LPoly base, Int e, const LPoly& m, long p) {
  LPoly acc{1};
  base = lp_rem(std::move(base), m, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = lp_rem(lp_mul(acc, base, p), m, p);
    base = lp_rem(lp_mul(base, base, p), m, p);
    e >>= 1;
  }
  return acc;
}

LPoly lp_gcd(LPoly a, LPoly b, long p) {
  while (!b.empty()) {
    LPoly r = lp_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

LPoly to_lpoly(const std::vector<Int>& v, long p) {
  LPoly out;
  out.reserve(v.size());
  for (const Int& x : v) out.push_back(to_long(int_mod(x, p)));
  return trim(std::move(out));
}

std::vector<Int> from_lpoly(const LPoly& v, size_t width) {
  std::vector<Int> out(width, Int(0));
  for (size_t i = 0; i < v.size() && i < width; ++i) out[i] = v[i];
  return out;
}

// Rabin test: u irreducible over F_p iff y^(p^f) = y (mod u) and
// gcd(y^(p^(f/l)) - y, u) = 1 for every prime l | f.
bool is_irreducible(const LPoly& u, long p, int f) {
  LPoly y{0, 1};
  if (f > 4) {
    // Cheap prescreens before the full-degree power: no roots, then no
    // irreducible factor of degree <= 4 (gcd with y^(p^d) - y).
    for (long a = 0; a < p; ++a) {
      long acc = 0;
      for (auto it = u.rbegin(); it != u.rend(); ++it) acc = (acc * a + *it) % p;
      if (acc == 0) return false;
    }
    LPoly yp = y;
    for (int d = 1; d <= 4 && d < f; ++d) {
      yp = lp_powmod(yp, p, u, p);
      LPoly diff = yp;
      diff.resize(std::max<size_t>(diff.size(), 2), 0);
      diff[1] = ((diff[1] - 1) % p + p) % p;
      if (lp_gcd(u, trim(std::move(diff)), p).size() != 1) return false;
    }
  }
  LPoly yq = lp_powmod(y, int_pow(p, f), u, p);
  LPoly diff = yq;
  diff.resize(std::max<size_t>(diff.size(), 2), 0);
  diff[1] = ((diff[1] - 1) % p + p) % p;
  if (!trim(std::move(diff)).empty()) return false;
  for (const Int& l : prime_factors(Int(f))) {
    LPoly ysub = lp_powmod(y, int_pow(p, f / to_long(l)), u, p);
    ysub.resize(std::max<size_t>(ysub.size(), 2), 0);
    ysub[1] = ((ysub[1] - 1) % p + p) % p;
    LPoly g = lp_gcd(u, trim(std::move(ysub)), p);
    if (g.size() != 1) return false;
  }
  return true;
}

long field_prime(const FieldHandle& f) { return to_long(f->p); }

}  // namespace

IntPolynomial find_irreducible(const Int& p, int f) {
  if (f < 1) throw std::invalid_argument("find_irreducible: degree must be >= 1");
  long pl = to_long(p);
  if (f == 1) return IntPolynomial{0, 1};  // y
  Int bound = int_pow(p, f);
  for (Int enc = 0; enc < bound; ++enc) {
    LPoly u(static_cast<size_t>(f) + 1, 0);
    Int rest = enc;
    for (int i = 0; i < f; ++i) {
      u[static_cast<size_t>(i)] = to_long(int_mod(rest, p));
      rest /= p;
    }
    u[static_cast<size_t>(f)] = 1;
    if (is_irreducible(u, pl, f)) {
      std::vector<Int> coeffs(u.begin(), u.end());
      return IntPolynomial(std::move(coeffs));
    }
  }
  throw std::logic_error("find_irreducible: exhausted search space");
}

std::shared_ptr<const FiniteFieldSpec> FiniteFieldSpec::make(const Int& p, int f) {
  if (!is_prime(p)) throw std::invalid_argument("FiniteFieldSpec: p must be prime");
  if (p > (1 << 20)) throw std::invalid_argument("FiniteFieldSpec: prime beyond desk scale");
  auto spec = std::make_shared<FiniteFieldSpec>();
  spec->p = p;
  spec->f = f;
  spec->modulus = find_irreducible(p, f);
  spec->q = int_pow(p, f);
  return spec;
}

FqElem::FqElem(FieldHandle field, std::vector<Int> coeffs) : field_(std::move(field)) {
  long p = field_prime(field_);
  LPoly v = lp_rem(to_lpoly(coeffs, p), to_lpoly(field_->modulus.coeffs(), p), p);
  c_ = from_lpoly(v, static_cast<size_t>(field_->f));
}

FqElem FqElem::zero(const FieldHandle& field) { return FqElem(field, {}); }

FqElem FqElem::one(const FieldHandle& field) { return FqElem(field, {Int(1)}); }

FqElem FqElem::from_int(const FieldHandle& field, const Int& value) {
  return FqElem(field, {value});
}

FqElem FqElem::decode(const FieldHandle& field, const Int& index) {
  std::vector<Int> v;
  Int rest = index;
  while (rest != 0) {
    v.push_back(int_mod(rest, field->p));
    rest /= field->p;
  }
  return FqElem(field, std::move(v));
}

Int FqElem::encode() const {
  Int acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * field_->p + *it;
  return acc;
}

bool FqElem::is_zero() const {
  for (const Int& x : c_)
    if (x != 0) return false;
  return true;
}

FqElem FqElem::operator+(const FqElem& o) const {
  std::vector<Int> v = c_;
  for (size_t i = 0; i < v.size(); ++i) v[i] += o.c_[i];
  return FqElem(field_, std::move(v));
}

FqElem FqElem::operator-(const FqElem& o) const {
  std::vector<Int> v = c_;
  for (size_t i = 0; i < v.size(); ++i) v[i] -= o.c_[i];
  return FqElem(field_, std::move(v));
}

FqElem FqElem::operator-() const {
  std::vector<Int> v = c_;
  for (Int& x : v) x = -x;
  return FqElem(field_, std::move(v));
}

FqElem FqElem::operator*(const FqElem& o) const {
  long p = field_prime(field_);
  LPoly prod = lp_rem(lp_mul(to_lpoly(c_, p), to_lpoly(o.c_, p), p),
                      to_lpoly(field_->modulus.coeffs(), p), p);
  FqElem out = zero(field_);
  out.c_ = from_lpoly(prod, static_cast<size_t>(field_->f));
  return out;
}

FqElem FqElem::pow(const Int& e) const {
  if (e < 0) return inverse().pow(-e);
  long p = field_prime(field_);
  LPoly r = lp_powmod(to_lpoly(c_, p), e, to_lpoly(field_->modulus.coeffs(), p), p);
  FqElem out = zero(field_);
  out.c_ = from_lpoly(r, static_cast<size_t>(field_->f));
  return out;
}

FqElem FqElem::inverse() const {
  if (is_zero()) throw std::domain_error("FqElem: inverse of zero");
  return pow(field_->q - 2);
}

bool FqElem::operator==(const FqElem& o) const { return c_ == o.c_; }

Int FqElem::order() const {
  if (is_zero()) throw std::domain_error("FqElem: order of zero");
  // Strip each prime of q-1 while the power stays 1.
  Int ord = field_->q - 1;
  for (const Int& l : prime_factors(ord)) {
    while (ord % l == 0 && pow(ord / l) == one(field_)) ord /= l;
  }
  return ord;
}

std::string FqElem::to_string() const { return IntPolynomial(c_).to_string("y"); }

FqElem element_of_order(const FieldHandle& field, const Int& m) {
  if ((field->q - 1) % m != 0)
    throw std::invalid_argument("element_of_order: m does not divide q-1");
  if (m == 1) return FqElem::one(field);
  std::vector<Int> m_primes = prime_factors(m);
  auto has_exact_order = [&](const FqElem& g) {
    if (g.is_zero() || !(g.pow(m) == FqElem::one(field))) return false;
    for (const Int& l : m_primes)
      if (g.pow(m / l) == FqElem::one(field)) return false;
    return true;
  };
  // Small fields: literally the smallest element of exact order m. Larger
  // fields: the smallest h whose (q-1)/m power works (still deterministic,
  // and a full scan would be prohibitive).
  if (field->q <= 50000) {
    for (Int enc = 1; enc < field->q; ++enc) {
      FqElem g = FqElem::decode(field, enc);
      if (has_exact_order(g)) return g;
    }
  }
  Int cofactor = (field->q - 1) / m;
  for (Int enc = 1; enc < Int(1000000); ++enc) {
    FqElem g = FqElem::decode(field, enc).pow(cofactor);
    if (has_exact_order(g)) return g;
  }
  throw std::logic_error("element_of_order: no generator found");
}

FqElem embed_subfield_generator(const FieldHandle& sub, const FieldHandle& big) {
  if (sub->p != big->p || big->f % sub->f != 0)
    throw std::invalid_argument("embed_subfield_generator: not a subfield");
  for (Int enc = 0; enc < big->q; ++enc) {
    FqElem cand = FqElem::decode(big, enc);
    // Evaluate the subfield modulus at cand.
    FqElem acc = FqElem::zero(big);
    for (long i = sub->modulus.degree(); i >= 0; --i)
      acc = acc * cand + FqElem::from_int(big, sub->modulus.coeff(i));
    if (acc.is_zero()) return cand;
  }
  throw std::logic_error("embed_subfield_generator: no root found");
}

}  // namespace tvlab
