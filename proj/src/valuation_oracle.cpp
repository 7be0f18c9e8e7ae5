#include "tvlab/valuation_oracle.hpp"

#include <stdexcept>

#include "tvlab/lattice.hpp"

namespace tvlab {

namespace {

// Multiplication in Z[zeta_m] on the power basis, as integer row vectors.
IntVec cyc_mul(long m, const IntVec& a, const IntVec& b) {
  const long phi = euler_phi_long(m);
  std::vector<Int> coeffs(static_cast<size_t>(2 * phi - 1), Int(0));
  for (long i = 0; i < phi; ++i) {
    if (a(i) == 0) continue;
    for (long j = 0; j < phi; ++j) coeffs[static_cast<size_t>(i + j)] += a(i) * b(j);
  }
  IntPolynomial r = divide_monic(IntPolynomial(std::move(coeffs)), cyclotomic_polynomial(m)).remainder;
  IntVec out(phi);
  for (long i = 0; i < phi; ++i) out(i) = r.coeff(i);
  return out;
}

IntVec to_vec(const CyclotomicInt& z) {
  const long phi = euler_phi_long(z.level());
  IntVec v(phi);
  for (long i = 0; i < phi; ++i) v(i) = z.coeffs()[static_cast<size_t>(i)];
  return v;
}

}  // namespace

Rat ideal_power_valuation(const CyclotomicInt& z, const Int& p,
                          const FqElem& residue_generator, long max_pi_power) {
  if (z.is_zero()) throw std::invalid_argument("ideal_power_valuation: zero element");
  const long m = z.level();
  const long phi = euler_phi_long(m);
  Int m_tame;
  unsigned long k = p_valuation(Int(m), p, &m_tame);
  Int pk = int_pow(p, k);
  Int e = euler_phi(pk);
  const FieldHandle& fq = residue_generator.field();
  if (fq->p != p) throw std::invalid_argument("ideal_power_valuation: residue field mismatch");
  if (m_tame > 1 && !(residue_generator.pow(m_tame) == FqElem::one(fq)))
    throw std::invalid_argument("ideal_power_valuation: generator order mismatch");

  // Prime ideal generators on the power basis of Z[zeta_m].
  std::vector<IntVec> gens;
  {
    IntVec pc(phi);
    for (long i = 0; i < phi; ++i) pc(i) = 0;
    pc(0) = p;
    gens.push_back(pc);
  }
  if (k >= 1) {
    CyclotomicInt pi = CyclotomicInt::from_root(m, RootOfUnity(1, pk)) -
                       CyclotomicInt::from_int(m, 1);
    gens.push_back(to_vec(pi));
  }
  if (m_tame > 1) {
    // Minimal polynomial of the generator over F_p: product of Frobenius
    // conjugates, computed in F_q and lifted.
    std::vector<FqElem> minpoly{FqElem::one(fq)};  // constant 1, degree 0
    FqElem conj = residue_generator;
    for (int i = 0; i < fq->f; ++i) {
      std::vector<FqElem> next(minpoly.size() + 1, FqElem::zero(fq));
      for (size_t d = 0; d < minpoly.size(); ++d) {
        next[d + 1] = next[d + 1] + minpoly[d];
        next[d] = next[d] - conj * minpoly[d];
      }
      minpoly = std::move(next);
      conj = conj.pow(p);
    }
    CyclotomicInt h = CyclotomicInt(m);
    CyclotomicInt zeta_tame = CyclotomicInt::from_root(m, RootOfUnity(1, m_tame));
    for (long d = static_cast<long>(minpoly.size()) - 1; d >= 0; --d) {
      const auto& c = minpoly[static_cast<size_t>(d)].coeffs();
      if (c.size() > 1)
        for (size_t i = 1; i < c.size(); ++i)
          if (c[i] != 0)
            throw std::logic_error("ideal_power_valuation: minimal polynomial not over F_p");
      h = h * zeta_tame + CyclotomicInt::from_int(m, c.empty() ? Int(0) : c[0]);
    }
    gens.push_back(to_vec(h));
  }

  // Powers of the basis root, for closing the lattice under multiplication.
  auto ideal_lattice = [&](const std::vector<IntVec>& elements) {
    IntMat rows = int_zero(static_cast<Eigen::Index>(elements.size()) * phi, phi);
    Eigen::Index r = 0;
    for (const auto& el : elements) {
      IntVec cur = el;
      for (long i = 0; i < phi; ++i) {
        rows.row(r++) = cur.transpose();
        if (i + 1 < phi) {
          IntVec shifted(phi);
          for (long s = 0; s < phi; ++s) shifted(s) = 0;
          shifted(0) = 0;
          // multiply by zeta: shift and reduce.
          std::vector<Int> coeffs(static_cast<size_t>(phi) + 1, Int(0));
          for (long s = 0; s < phi; ++s) coeffs[static_cast<size_t>(s + 1)] = cur(s);
          IntPolynomial rem =
              divide_monic(IntPolynomial(std::move(coeffs)), cyclotomic_polynomial(m)).remainder;
          for (long s = 0; s < phi; ++s) shifted(s) = rem.coeff(s);
          cur = shifted;
        }
      }
    }
    return hermite_normal_form(rows);
  };

  IntMat prime_lattice = ideal_lattice(gens);
  // The prime above p selected by the embedding has residue field of size
  // p^f; the lattice index certifies that the generators cut it out exactly.
  {
    Int idx = 1;
    for (Eigen::Index i = 0; i < prime_lattice.rows(); ++i) idx *= prime_lattice(i, i);
    if (prime_lattice.rows() != phi || idx != int_pow(p, static_cast<unsigned long>(fq->f)))
      throw std::logic_error("ideal_power_valuation: prime ideal index mismatch");
  }

  IntVec target = to_vec(z);
  IntMat power = prime_lattice;
  long v = 0;
  while (v <= max_pi_power) {
    if (!hnf_contains(power, target)) break;
    ++v;
    // Next power: products of the current basis with the prime generators.
    std::vector<IntVec> prods;
    for (Eigen::Index i = 0; i < power.rows(); ++i) {
      IntVec row(phi);
      for (long s = 0; s < phi; ++s) row(s) = power(i, s);
      for (const auto& g : gens) prods.push_back(cyc_mul(m, row, g));
    }
    power = ideal_lattice(prods);
  }
  if (v > max_pi_power) throw std::logic_error("ideal_power_valuation: exceeded power budget");
  Rat out(Int(v), e);
  out.canonicalize();
  return out;
}

}  // namespace tvlab
