#include "tvlab/ideal_certificates.hpp"

#include "tvlab/cyclotomic.hpp"
#include "tvlab/lattice.hpp"

namespace tvlab {

bool MultiplierCertificate::verify() const {
  if (multiplier <= 0 || cofactors.size() != generators.size()) return false;
  IntPolynomial acc;
  for (size_t i = 0; i < generators.size(); ++i)
    acc = acc + cofactors[i] * generators[i];
  return acc == target * multiplier;
}

namespace {

struct WindowSolution {
  bool obstructed = false;
  MultiplierCertificate cert;
};

// One attempt with fixed per-generator degree caps.
WindowSolution solve_window(const IntPolynomial& g, const std::vector<IntPolynomial>& gens,
                            const std::vector<long>& deg_caps) {
  long max_deg = g.degree();
  std::vector<long> offsets;
  long cols = 0;
  for (size_t i = 0; i < gens.size(); ++i) {
    offsets.push_back(cols);
    cols += deg_caps[i] + 1;
    max_deg = std::max(max_deg, gens[i].degree() + deg_caps[i]);
  }
  const long rows = max_deg + 1;
  IntMat m = int_zero(rows, cols);
  for (size_t i = 0; i < gens.size(); ++i)
    for (long s = 0; s <= deg_caps[i]; ++s)
      for (long d = 0; d <= gens[i].degree(); ++d)
        m(s + d, offsets[i] + s) = gens[i].coeff(d);

  // Solve M x = c * gvec; SNF turns this into d_i y_i = c * (U g)_i, so the
  // admissible c form the ideal lcm_i(d_i / gcd(d_i, (Ug)_i)) * Z.
  SmithForm snf = smith_normal_form(m);
  IntVec gvec(rows);
  for (long d = 0; d < rows; ++d) gvec(d) = g.coeff(d);
  IntVec ug = snf.u * gvec;
  const Eigen::Index rank = snf.rank();
  for (Eigen::Index i = rank; i < rows; ++i)
    if (ug(i) != 0) return {true, {}};
  Int c = 1;
  for (Eigen::Index i = 0; i < rank; ++i) {
    Int d = snf.d(i, i);
    c = int_lcm(c, d / int_gcd(d, ug(i)));
  }
  IntVec y(cols);
  for (Eigen::Index i = 0; i < cols; ++i)
    y(i) = (i < rank) ? Int(c * ug(i) / snf.d(i, i)) : Int(0);
  IntVec x = snf.v * y;

  MultiplierCertificate cert;
  cert.target = g;
  cert.generators = gens;
  cert.multiplier = c;
  for (size_t i = 0; i < gens.size(); ++i) {
    std::vector<Int> a(static_cast<size_t>(deg_caps[i]) + 1);
    for (long s = 0; s <= deg_caps[i]; ++s) a[static_cast<size_t>(s)] = x(offsets[i] + s);
    cert.cofactors.emplace_back(std::move(a));
  }
  return {false, cert};
}

}  // namespace

MultiplierCertificate minimal_multiplier(const IntPolynomial& g,
                                         const std::vector<IntPolynomial>& gens) {
  if (g.is_zero()) throw std::invalid_argument("minimal_multiplier: zero target");
  if (gens.empty()) throw std::invalid_argument("minimal_multiplier: no generators");
  for (const auto& h : gens)
    if (h.is_zero()) throw std::invalid_argument("minimal_multiplier: zero generator");

  IntPolynomial d = gens[0];
  for (size_t i = 1; i < gens.size(); ++i) d = rational_gcd(d, gens[i]);
  if (!divides_over_rationals(d, g))
    throw MultiplierObstruction(
        "no integer multiple of the target lies in the ideal: the rational gcd "
        "of the generators (" + d.to_string() + ") does not divide it");

  long total = g.degree();
  for (const auto& h : gens) total += h.degree();
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<long> caps;
    for (const auto& h : gens) caps.push_back((total - h.degree()) << attempt);
    WindowSolution w = solve_window(g, gens, caps);
    if (!w.obstructed) {
      if (!w.cert.verify())
        throw std::logic_error("minimal_multiplier: certificate failed to verify");
      return w.cert;
    }
  }
  throw MultiplierObstruction("no solution inside the doubled Bezout degree window");
}

CongruenceWitness boxall_congruence(long m) {
  if (m < 1) throw std::invalid_argument("boxall_congruence: m must be >= 1");
  IntPolynomial tm1 = IntPolynomial::power_minus_one(m);
  IntPolynomial t_minus_1{-1, 1};
  Int mm(m);
  IntPolynomial r = tm1 - t_minus_1 * mm - t_minus_1 * t_minus_1 * (mm * (mm - 1) / 2);
  IntPolynomial cube = t_minus_1 * t_minus_1 * t_minus_1;
  PolyDivision d = divide_monic(r, cube);
  if (!d.remainder.is_zero())
    throw std::logic_error("boxall_congruence: (T-1)^3 does not divide the residual");
  return {mm, d.quotient};
}

TameDescent tame_membership(long q) {
  Int qi(q);
  if (q < 2 || prime_factors(qi).size() != 1)
    throw std::invalid_argument("tame_membership: q must be a prime power >= 2");
  bool odd = (q % 2 != 0);
  TameDescent out;
  out.q = qi;
  out.guaranteed_multiplier = odd ? qi : Int(4 * qi);
  IntPolynomial t_minus_1{-1, 1};
  IntPolynomial cube = t_minus_1 * t_minus_1 * t_minus_1;
  out.minimal = minimal_multiplier(t_minus_1, {cube, IntPolynomial::power_minus_one(q)});
  if (out.guaranteed_multiplier % out.minimal.multiplier != 0)
    throw std::logic_error("tame_membership: minimal multiplier does not divide " +
                           out.guaranteed_multiplier.get_str());
  Int scale = out.guaranteed_multiplier / out.minimal.multiplier;
  out.certified = out.minimal;
  out.certified.multiplier = out.guaranteed_multiplier;
  for (auto& a : out.certified.cofactors) a = a * scale;
  if (!out.certified.verify())
    throw std::logic_error("tame_membership: scaled certificate failed to verify");
  return out;
}

bool cyclotomic_factor_free(const IntPolynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("cyclotomic_factor_free: zero polynomial");
  const long d = f.degree();
  if (d == 0) return true;
  // phi(m) >= sqrt(m/2), so phi(m) <= d forces m <= 2 d^2.
  for (long m = 1; m <= 2 * d * d; ++m) {
    if (euler_phi_long(m) > d) continue;
    if (rational_gcd(f, IntPolynomial::power_minus_one(m)).degree() > 0) return false;
  }
  return true;
}

TorusFrobeniusPoly frobenius_poly_torus(const Int& q) {
  if (q < 2 || prime_factors(q).size() != 1)
    throw std::invalid_argument("frobenius_poly_torus: q must be a prime power");
  TorusFrobeniusPoly out;
  out.n_factor = 1;
  out.f = IntPolynomial{-q, 1};
  if (!cyclotomic_factor_free(out.f))
    throw std::logic_error("frobenius_poly_torus: T - q acquired a cyclotomic factor");
  return out;
}

}  // namespace tvlab
