#include "tvlab/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace tvlab {

IntMat hermite_normal_form(const IntMat& rows) {
  IntMat m = rows;
  const Eigen::Index nr = m.rows(), nc = m.cols();
  Eigen::Index pivot_row = 0;
  for (Eigen::Index col = 0; col < nc && pivot_row < nr; ++col) {
    // Euclid on the entries of this column at rows >= pivot_row.
    while (true) {
      Eigen::Index best = -1;
      for (Eigen::Index i = pivot_row; i < nr; ++i) {
        if (m(i, col) != 0 && (best < 0 || abs(m(i, col)) < abs(m(best, col))))
          best = i;
      }
      if (best < 0) break;
      m.row(best).swap(m.row(pivot_row));
      if (m(pivot_row, col) < 0) m.row(pivot_row) = -m.row(pivot_row);
      bool cleared = true;
      for (Eigen::Index i = pivot_row + 1; i < nr; ++i) {
        if (m(i, col) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, col).get_mpz_t(), m(pivot_row, col).get_mpz_t());
        m.row(i) -= m.row(pivot_row) * q;
        if (m(i, col) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (pivot_row < nr && m(pivot_row, col) != 0) {
      // Reduce the entries above the pivot into [0, pivot).
      for (Eigen::Index i = 0; i < pivot_row; ++i) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, col).get_mpz_t(), m(pivot_row, col).get_mpz_t());
        if (q != 0) m.row(i) -= m.row(pivot_row) * q;
      }
      ++pivot_row;
    }
  }
  IntMat out = int_zero(pivot_row, nc);
  for (Eigen::Index i = 0; i < pivot_row; ++i) out.row(i) = m.row(i);
  return out;
}

Eigen::Index SmithForm::rank() const {
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < std::min(d.rows(), d.cols()); ++i)
    if (d(i, i) != 0) ++r;
  return r;
}

namespace {

bool find_min_nonzero(const IntMat& m, Eigen::Index t, Eigen::Index& bi, Eigen::Index& bj) {
  bool found = false;
  for (Eigen::Index i = t; i < m.rows(); ++i)
    for (Eigen::Index j = t; j < m.cols(); ++j)
      if (m(i, j) != 0 && (!found || abs(m(i, j)) < abs(m(bi, bj)))) {
        bi = i;
        bj = j;
        found = true;
      }
  return found;
}

}  // namespace

SmithForm smith_normal_form(const IntMat& a) {
  SmithForm s;
  s.d = a;
  s.u = int_identity(a.rows());
  s.v = int_identity(a.cols());
  IntMat& d = s.d;
  const Eigen::Index n = std::min(a.rows(), a.cols());
  for (Eigen::Index t = 0; t < n; ++t) {
    Eigen::Index bi, bj;
    if (!find_min_nonzero(d, t, bi, bj)) break;
    d.row(t).swap(d.row(bi));
    s.u.row(t).swap(s.u.row(bi));
    d.col(t).swap(d.col(bj));
    s.v.col(t).swap(s.v.col(bj));
    while (true) {
      bool dirty = false;
      for (Eigen::Index i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        Int q = d(i, t) / d(t, t);
        d.row(i) -= d.row(t) * q;
        s.u.row(i) -= s.u.row(t) * q;
        if (d(i, t) != 0) {
          d.row(t).swap(d.row(i));
          s.u.row(t).swap(s.u.row(i));
          dirty = true;
        }
      }
      for (Eigen::Index j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        Int q = d(t, j) / d(t, t);
        d.col(j) -= d.col(t) * q;
        s.v.col(j) -= s.v.col(t) * q;
        if (d(t, j) != 0) {
          d.col(t).swap(d.col(j));
          s.v.col(t).swap(s.v.col(j));
          dirty = true;
        }
      }
      if (!dirty) break;
    }
    // Pivot must divide everything in the remaining block.
    bool restart = false;
    for (Eigen::Index i = t + 1; i < d.rows() && !restart; ++i)
      for (Eigen::Index j = t + 1; j < d.cols() && !restart; ++j)
        if (d(i, j) % d(t, t) != 0) {
          d.row(t) += d.row(i);
          s.u.row(t) += s.u.row(i);
          restart = true;
        }
    if (restart) {
      --t;
      continue;
    }
    if (d(t, t) < 0) {
      d.row(t) = -d.row(t);
      s.u.row(t) = -s.u.row(t);
    }
  }
  return s;
}

IntMat kernel_basis(const IntMat& a) {
  SmithForm s = smith_normal_form(a);
  const Eigen::Index r = s.rank();
  IntMat out = int_zero(a.cols(), a.cols() - r);
  for (Eigen::Index j = r; j < a.cols(); ++j) out.col(j - r) = s.v.col(j);
  return out;
}

Int determinant(const IntMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: not square");
  const Eigen::Index n = a.rows();
  if (n == 0) return 1;
  IntMat m = a;
  Int prev = 1;
  int sign = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index piv = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      m.row(k).swap(m.row(piv));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

std::vector<Rat> solve_rational(const IntMat& a, const std::vector<Rat>& b) {
  if (a.rows() != a.cols() || a.rows() != static_cast<Eigen::Index>(b.size()))
    throw std::invalid_argument("solve_rational: shape mismatch");
  SmithForm s = smith_normal_form(a);
  const Eigen::Index n = a.rows();
  if (s.rank() != n) throw std::domain_error("solve_rational: singular matrix");
  std::vector<Rat> c(n, Rat(0));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) c[i] += Rat(s.u(i, j)) * b[j];
    c[i] /= Rat(s.d(i, i));
    c[i].canonicalize();
  }
  std::vector<Rat> x(n, Rat(0));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) x[i] += Rat(s.v(i, j)) * c[j];
    x[i].canonicalize();
  }
  return x;
}

bool hnf_contains(const IntMat& h, const IntVec& v) {
  if (h.cols() != v.size()) throw std::invalid_argument("hnf_contains: shape mismatch");
  IntVec w = v;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < h.cols(); ++col) {
    if (row < h.rows() && h(row, col) != 0) {
      if (w(col) % h(row, col) != 0) return false;
      Int q = w(col) / h(row, col);
      if (q != 0)
        for (Eigen::Index j = col; j < h.cols(); ++j) w(j) -= q * h(row, j);
      ++row;
    } else if (w(col) != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace tvlab
