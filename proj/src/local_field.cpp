#include "tvlab/local_field.hpp"

#include <sstream>
#include <stdexcept>

namespace tvlab {

const Rat& ValuationResult::value() const {
  if (!finite_) throw std::domain_error("ValuationResult: below precision");
  return value_;
}

bool ValuationResult::operator<(const ValuationResult& o) const {
  if (!finite_) return false;
  if (!o.finite_) return true;
  return value_ < o.value_;
}

bool ValuationResult::operator==(const ValuationResult& o) const {
  if (finite_ != o.finite_) return false;
  return !finite_ || value_ == o.value_;
}

std::string ValuationResult::to_string() const {
  if (!finite_) return "below_precision";
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

namespace {

// Arithmetic on y-polynomials (length f, mod u(y), mod p^N).
struct WContext {
  const std::vector<Int>& u;  // monic, degree f
  const Int& pN;
  int f;
};

std::vector<Int> w_mul(const WContext& w, const std::vector<Int>& a,
                       const std::vector<Int>& b) {
  std::vector<Int> t(2 * w.f - 1, Int(0));
  for (int i = 0; i < w.f; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < w.f; ++j) t[i + j] += a[i] * b[j];
  }
  for (int d = 2 * w.f - 2; d >= w.f; --d) {
    if (t[d] == 0) continue;
    Int v = t[d];
    t[d] = 0;
    for (int i = 0; i < w.f; ++i) t[d - w.f + i] -= v * w.u[i];
  }
  t.resize(w.f);
  for (Int& x : t) x = int_mod(x, w.pN);
  return t;
}

std::vector<Int> w_pow(const WContext& w, std::vector<Int> base, Int e) {
  std::vector<Int> acc(w.f, Int(0));
  acc[0] = 1;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = w_mul(w, acc, base);
    base = w_mul(w, base, base);
    e >>= 1;
  }
  return acc;
}

// Inverse of a unit, by Hensel lifting the residue-field inverse.
// Each round of x <- x(2 - a x) doubles the number of correct p-adic digits.
std::vector<Int> w_invert(const WContext& w, const std::vector<Int>& a,
                          const FieldHandle& residue) {
  FqElem r(residue, a);
  std::vector<Int> inv = r.inverse().coeffs();
  inv.resize(static_cast<size_t>(w.f), Int(0));
  for (int round = 0; round < 64; ++round) {
    std::vector<Int> prod = w_mul(w, a, inv);
    bool done = (prod[0] == 1);
    for (int i = 1; i < w.f; ++i) done = done && (prod[i] == 0);
    if (done) return inv;
    std::vector<Int> two_minus(static_cast<size_t>(w.f));
    for (int i = 0; i < w.f; ++i) two_minus[static_cast<size_t>(i)] = -prod[static_cast<size_t>(i)];
    two_minus[0] += 2;
    inv = w_mul(w, inv, two_minus);
  }
  throw std::logic_error("w_invert: lift failed");
}

std::vector<Int> w_eval_poly(const WContext& w, const IntPolynomial& p,
                             const std::vector<Int>& at) {
  std::vector<Int> acc(w.f, Int(0));
  for (long i = p.degree(); i >= 0; --i) {
    acc = w_mul(w, acc, at);
    acc[0] = int_mod(acc[0] + p.coeff(i), w.pN);
  }
  return acc;
}

// Hensel-Newton for z^M = 1 from a unit start with z0^M = 1 mod p and
// gcd(M, p) = 1; quadratic convergence, so ~log2(N) rounds suffice.
std::vector<Int> w_root_of_unity(const WContext& w, const FieldHandle& residue,
                                 std::vector<Int> z, const Int& m) {
  for (int round = 0; round < 64; ++round) {
    std::vector<Int> zm1 = w_pow(w, z, m - 1);
    std::vector<Int> zm = w_mul(w, zm1, z);
    bool done = (zm[0] == 1);
    for (int i = 1; i < w.f; ++i) done = done && (zm[i] == 0);
    if (done) return z;
    // z <- z - (z^M - 1) / (M z^(M-1))
    zm[0] = int_mod(zm[0] - 1, w.pN);
    std::vector<Int> der = zm1;
    for (Int& x : der) x = int_mod(x * m, w.pN);
    std::vector<Int> corr = w_mul(w, zm, w_invert(w, der, residue));
    for (int i = 0; i < w.f; ++i)
      z[static_cast<size_t>(i)] = int_mod(z[static_cast<size_t>(i)] - corr[static_cast<size_t>(i)], w.pN);
  }
  throw std::logic_error("w_root_of_unity: Newton iteration did not converge");
}

}  // namespace

TowerHandle tower_make(const Int& p, const Int& m_prime, int k, int precision) {
  if (!is_prime(p)) throw std::invalid_argument("tower_make: p must be prime");
  if (m_prime < 1 || m_prime % p == 0)
    throw std::invalid_argument("tower_make: p must not divide m'");
  if (k < 0 || precision < 1) throw std::invalid_argument("tower_make: bad parameters");

  auto spec = std::make_shared<TowerSpec>();
  spec->p = p;
  spec->m_prime = m_prime;
  spec->k = k;
  spec->precision = precision;
  spec->f = static_cast<int>(to_long(multiplicative_order(p, m_prime)));
  Int pk = int_pow(p, static_cast<unsigned long>(k));
  spec->e = (k == 0) ? 1 : to_long(euler_phi(pk));
  spec->q = int_pow(p, static_cast<unsigned long>(spec->f));
  spec->pN = int_pow(p, static_cast<unsigned long>(precision));
  spec->residue = FiniteFieldSpec::make(p, spec->f);
  spec->unramified_poly = spec->residue->modulus;
  spec->residue_generator = element_of_order(spec->residue, m_prime);

  if (k >= 1) {
    // E(x) = Phi_{p^k}(x+1): substitute and check the Eisenstein shape.
    const IntPolynomial& phi = cyclotomic_polynomial(to_long(pk));
    IntPolynomial x_plus_1{1, 1};
    IntPolynomial acc;
    for (long i = phi.degree(); i >= 0; --i)
      acc = acc * x_plus_1 + IntPolynomial::constant(phi.coeff(i));
    spec->eisenstein_poly = acc;
    if (spec->eisenstein_poly.degree() != spec->e ||
        spec->eisenstein_poly.coeff(0) != p || !spec->eisenstein_poly.is_monic())
      throw std::logic_error("tower_make: eisenstein polynomial malformed");
    for (long i = 1; i < spec->e; ++i)
      if (spec->eisenstein_poly.coeff(i) % p != 0)
        throw std::logic_error("tower_make: polynomial is not Eisenstein");
  } else {
    spec->eisenstein_poly = IntPolynomial{0, 1};  // x, i.e. zeta_1 - 1 = 0
  }

  WContext w{spec->unramified_poly.coeffs(), spec->pN, spec->f};

  // Teichmueller lift of the residue generator: the unique root of
  // z^m' = 1 over its residue, lifted by Newton.
  std::vector<Int> t = spec->residue_generator.coeffs();
  t.resize(static_cast<size_t>(spec->f), Int(0));
  if (m_prime > 1) t = w_root_of_unity(w, spec->residue, std::move(t), m_prime);
  if (w_pow(w, t, spec->q) != t)
    throw std::logic_error("tower_make: teichmueller lift is not Frobenius-stable");

  spec->teich_pow.reserve(static_cast<size_t>(to_long(m_prime)));
  std::vector<Int> acc(static_cast<size_t>(spec->f), Int(0));
  acc[0] = 1;
  for (Int i = 0; i < m_prime; ++i) {
    spec->teich_pow.push_back(acc);
    acc = w_mul(w, acc, t);
  }

  // Powers of zeta_{p^k} = x + 1, reduced mod E.
  long e = spec->e;
  const std::vector<Int>& E = spec->eisenstein_poly.coeffs();
  std::vector<Int> zp(static_cast<size_t>(e), Int(0));
  zp[0] = 1;
  spec->zeta_pow.reserve(static_cast<size_t>(to_long(pk)));
  for (Int c = 0; c < pk; ++c) {
    spec->zeta_pow.push_back(zp);
    // Multiply by (x + 1).
    std::vector<Int> nx(static_cast<size_t>(e) + 1, Int(0));
    for (long j = 0; j < e; ++j) {
      nx[static_cast<size_t>(j)] += zp[static_cast<size_t>(j)];
      nx[static_cast<size_t>(j) + 1] += zp[static_cast<size_t>(j)];
    }
    if (nx[static_cast<size_t>(e)] != 0) {
      Int v = nx[static_cast<size_t>(e)];
      for (long j = 0; j < e; ++j) nx[static_cast<size_t>(j)] -= v * E[static_cast<size_t>(j)];
    }
    nx.resize(static_cast<size_t>(e));
    for (Int& xv : nx) xv = int_mod(xv, spec->pN);
    zp = std::move(nx);
  }

  return spec;
}

namespace {

// Frobenius on the unramified tower: the root of u congruent to y^p,
// lifted by Newton. Built lazily, once per spec.
void ensure_frobenius_powers(const TowerSpec& spec) {
  std::call_once(spec.frob_once, [&spec] {
    WContext w{spec.unramified_poly.coeffs(), spec.pN, spec.f};
    if (spec.f == 1) {
      spec.frob_y_pow.push_back({Int(1)});
      return;
    }
    std::vector<Int> y(static_cast<size_t>(spec.f), Int(0));
    y[1] = 1;
    std::vector<Int> phi_y = w_pow(w, y, spec.p);
    IntPolynomial uprime;
    {
      std::vector<Int> d(static_cast<size_t>(spec.f), Int(0));
      for (int i = 1; i <= spec.f; ++i)
        d[static_cast<size_t>(i - 1)] = spec.unramified_poly.coeff(i) * i;
      uprime = IntPolynomial(std::move(d));
    }
    for (int it = 0; it < spec.precision + 2; ++it) {
      std::vector<Int> val = w_eval_poly(w, spec.unramified_poly, phi_y);
      bool zero = true;
      for (const Int& x : val) zero = zero && (x == 0);
      if (zero) break;
      std::vector<Int> der = w_eval_poly(w, uprime, phi_y);
      std::vector<Int> corr = w_mul(w, val, w_invert(w, der, spec.residue));
      for (int i = 0; i < spec.f; ++i)
        phi_y[static_cast<size_t>(i)] =
            int_mod(phi_y[static_cast<size_t>(i)] - corr[static_cast<size_t>(i)], spec.pN);
    }
    {
      std::vector<Int> val = w_eval_poly(w, spec.unramified_poly, phi_y);
      for (const Int& x : val)
        if (x != 0) throw std::logic_error("frobenius lift failed to converge");
    }
    spec.frob_y_pow.reserve(static_cast<size_t>(spec.f));
    std::vector<Int> facc(static_cast<size_t>(spec.f), Int(0));
    facc[0] = 1;
    for (int i = 0; i < spec.f; ++i) {
      spec.frob_y_pow.push_back(facc);
      facc = w_mul(w, facc, phi_y);
    }
  });
}

}  // namespace

TowerElement::TowerElement(TowerHandle spec, std::vector<Int> coords)
    : spec_(std::move(spec)), c_(std::move(coords)) {
  size_t want = static_cast<size_t>(spec_->f) * static_cast<size_t>(spec_->e);
  if (c_.size() != want) throw std::invalid_argument("TowerElement: bad coordinate count");
  for (Int& x : c_) x = int_mod(x, spec_->pN);
}

TowerElement TowerElement::zero(const TowerHandle& spec) {
  return TowerElement(spec, std::vector<Int>(
      static_cast<size_t>(spec->f) * static_cast<size_t>(spec->e), Int(0)));
}

TowerElement TowerElement::one(const TowerHandle& spec) {
  auto z = zero(spec);
  z.c_[0] = 1;
  return z;
}

TowerElement TowerElement::from_integer(const TowerHandle& spec, const Int& v) {
  auto z = zero(spec);
  z.c_[0] = int_mod(v, spec->pN);
  return z;
}

bool TowerElement::is_zero_at_precision() const {
  for (const Int& x : c_)
    if (x != 0) return false;
  return true;
}

TowerElement TowerElement::operator+(const TowerElement& o) const {
  if (spec_ != o.spec_) throw std::invalid_argument("TowerElement: mixed towers");
  std::vector<Int> v = c_;
  for (size_t i = 0; i < v.size(); ++i) v[i] = int_mod(v[i] + o.c_[i], spec_->pN);
  return TowerElement(spec_, std::move(v));
}

TowerElement TowerElement::operator-(const TowerElement& o) const { return *this + (-o); }

TowerElement TowerElement::operator-() const {
  std::vector<Int> v = c_;
  for (Int& x : v) x = int_mod(-x, spec_->pN);
  return TowerElement(spec_, std::move(v));
}

TowerElement TowerElement::operator*(const TowerElement& o) const {
  if (spec_ != o.spec_) throw std::invalid_argument("TowerElement: mixed towers");
  const int f = spec_->f;
  const long e = spec_->e;
  const long tf = 2 * f - 1, te = 2 * e - 1;
  std::vector<Int> t(static_cast<size_t>(tf) * static_cast<size_t>(te), Int(0));
  auto at = [&](long i, long j) -> Int& { return t[static_cast<size_t>(i + tf * j)]; };
  for (long j1 = 0; j1 < e; ++j1)
    for (int i1 = 0; i1 < f; ++i1) {
      const Int& a = c_[static_cast<size_t>(i1 + f * j1)];
      if (a == 0) continue;
      for (long j2 = 0; j2 < e; ++j2)
        for (int i2 = 0; i2 < f; ++i2) {
          const Int& b = o.c_[static_cast<size_t>(i2 + f * j2)];
          if (b == 0) continue;
          at(i1 + i2, j1 + j2) += a * b;
        }
    }
  // Reduce y-degree by the monic unramified polynomial.
  const std::vector<Int>& u = spec_->unramified_poly.coeffs();
  for (long j = 0; j < te; ++j)
    for (long i = tf - 1; i >= f; --i) {
      Int v = at(i, j);
      if (v == 0) continue;
      at(i, j) = 0;
      for (int l = 0; l < f; ++l) at(i - f + l, j) -= v * u[static_cast<size_t>(l)];
    }
  // Reduce x-degree by the monic Eisenstein polynomial.
  const std::vector<Int>& E = spec_->eisenstein_poly.coeffs();
  for (long j = te - 1; j >= e; --j)
    for (int i = 0; i < f; ++i) {
      Int v = at(i, j);
      if (v == 0) continue;
      at(i, j) = 0;
      for (long l = 0; l < e; ++l) at(i, j - e + l) -= v * E[static_cast<size_t>(l)];
    }
  std::vector<Int> out(static_cast<size_t>(f) * static_cast<size_t>(e));
  for (long j = 0; j < e; ++j)
    for (int i = 0; i < f; ++i)
      out[static_cast<size_t>(i + f * j)] = int_mod(at(i, j), spec_->pN);
  return TowerElement(spec_, std::move(out));
}

TowerElement TowerElement::pow(const Int& n) const {
  if (n < 0) throw std::invalid_argument("TowerElement::pow: negative exponent");
  TowerElement acc = one(spec_);
  TowerElement base = *this;
  Int e = n;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool TowerElement::operator==(const TowerElement& o) const {
  return spec_ == o.spec_ && c_ == o.c_;
}

std::string TowerElement::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ",";
    os << c_[i].get_str();
  }
  os << "]";
  return os.str();
}

ValuationResult valuation(const TowerElement& z) {
  const TowerSpec& s = *z.spec();
  bool any = false;
  Rat best;
  for (long j = 0; j < s.e; ++j) {
    Rat xpart(Int(j), Int(s.e));
    xpart.canonicalize();
    for (int i = 0; i < s.f; ++i) {
      const Int& c = z.coord(i, j);
      if (c == 0) continue;
      Rat v = Rat(Int(p_valuation(c, s.p))) + xpart;
      if (!any || v < best) {
        best = v;
        any = true;
      }
    }
  }
  if (!any) return ValuationResult::below_precision();
  return ValuationResult::finite(best);
}

TowerElement teichmuller(const TowerHandle& spec, const FqElem& residue) {
  if (residue.is_zero()) throw std::invalid_argument("teichmuller: residue must be a unit");
  if (residue.field()->p != spec->p || residue.field()->f != spec->f)
    throw std::invalid_argument("teichmuller: residue field mismatch");
  WContext w{spec->unramified_poly.coeffs(), spec->pN, spec->f};
  std::vector<Int> t = residue.coeffs();
  t.resize(static_cast<size_t>(spec->f), Int(0));
  t = w_root_of_unity(w, spec->residue, std::move(t), spec->q - 1);
  if (w_pow(w, t, spec->q) != t)
    throw std::logic_error("teichmuller: lift is not Frobenius-stable");
  std::vector<Int> coords(static_cast<size_t>(spec->f) * static_cast<size_t>(spec->e), Int(0));
  for (int i = 0; i < spec->f; ++i) coords[static_cast<size_t>(i)] = t[static_cast<size_t>(i)];
  return TowerElement(spec, std::move(coords));
}

TowerElement teichmuller(const TowerHandle& spec, const Int& residue) {
  return teichmuller(spec, FqElem::from_int(spec->residue, residue));
}

TowerElement embed_root(const TowerHandle& spec, const RootOfUnity& s) {
  if (spec->level() % s.order() != 0)
    throw std::invalid_argument("embed_root: root order does not divide tower level");
  auto [ppart, tame] = torsion_split(s, spec->p);
  // Tame exponent relative to the chosen generator zeta_{m'}.
  Int t_idx = int_mod(tame.num() * (spec->m_prime / tame.order()), spec->m_prime);
  Int pk = int_pow(spec->p, static_cast<unsigned long>(spec->k));
  Int z_idx = int_mod(ppart.num() * (pk / ppart.order()), pk);
  const std::vector<Int>& ty = spec->teich_pow[static_cast<size_t>(to_long(t_idx))];
  const std::vector<Int>& zx = spec->zeta_pow[static_cast<size_t>(to_long(z_idx))];
  std::vector<Int> coords(static_cast<size_t>(spec->f) * static_cast<size_t>(spec->e));
  for (long j = 0; j < spec->e; ++j)
    for (int i = 0; i < spec->f; ++i)
      coords[static_cast<size_t>(i + spec->f * j)] =
          int_mod(ty[static_cast<size_t>(i)] * zx[static_cast<size_t>(j)], spec->pN);
  return TowerElement(spec, std::move(coords));
}

TowerElement embed_cyclotomic(const TowerHandle& spec, const CyclotomicInt& z) {
  if (spec->level() % Int(z.level()) != 0)
    throw std::invalid_argument("embed_cyclotomic: level does not divide tower level");
  TowerElement zeta = embed_root(spec, RootOfUnity(1, z.level()));
  TowerElement acc = TowerElement::zero(spec);
  IntPolynomial p = z.to_polynomial();
  for (long i = p.degree(); i >= 0; --i)
    acc = acc * zeta + TowerElement::from_integer(spec, p.coeff(i));
  return acc;
}

ReducedElement reduce_level(const TowerElement& z, long n) {
  const TowerSpec& s = *z.spec();
  if (n < 0 || n >= s.precision)
    throw std::invalid_argument("reduce_level: level exceeds working precision");
  ReducedElement out;
  out.level = n;
  out.coords.resize(z.coords().size());
  for (long j = 0; j < s.e; ++j)
    for (int i = 0; i < s.f; ++i) {
      long needed = n + 1 - j;  // in pi-units; coordinate precision is ceil(./e)
      long digits = needed <= 0 ? 0 : (needed + s.e - 1) / s.e;
      out.coords[static_cast<size_t>(i + s.f * j)] =
          digits == 0 ? Int(0)
                      : int_mod(z.coord(i, j),
                                int_pow(s.p, static_cast<unsigned long>(digits)));
    }
  return out;
}

std::string ReducedElement::to_string() const {
  std::ostringstream os;
  os << "level " << level << ": [";
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ",";
    os << coords[i].get_str();
  }
  os << "]";
  return os.str();
}

TowerElement frobenius_apply(const TowerElement& z) {
  const TowerHandle& spec = z.spec();
  if (spec->k != 0)
    throw std::invalid_argument("frobenius_apply: only defined on unramified towers");
  ensure_frobenius_powers(*spec);
  std::vector<Int> acc(static_cast<size_t>(spec->f), Int(0));
  for (int i = 0; i < spec->f; ++i) {
    const Int& a = z.coord(i, 0);
    if (a == 0) continue;
    const std::vector<Int>& pw = spec->frob_y_pow[static_cast<size_t>(i)];
    for (int l = 0; l < spec->f; ++l) acc[static_cast<size_t>(l)] += a * pw[static_cast<size_t>(l)];
  }
  for (Int& x : acc) x = int_mod(x, spec->pN);
  return TowerElement(spec, std::move(acc));
}

}  // namespace tvlab
