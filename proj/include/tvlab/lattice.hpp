#pragma once

#include <vector>

#include "tvlab/integers.hpp"

namespace tvlab {

/// Canonical row-style Hermite normal form. Rows of the input span a lattice
/// in Z^n; the result has one row per lattice rank, positive pivots that move
/// strictly right going down, and entries above each pivot reduced to
/// [0, pivot). Two row-spans are equal iff their forms are identical.
IntMat hermite_normal_form(const IntMat& rows);

/// Smith normal form U*A*V = D with U, V unimodular and positive diagonal
/// entries satisfying d_1 | d_2 | ... (trailing zeros allowed).
struct SmithForm {
  IntMat d;
  IntMat u;
  IntMat v;
  Eigen::Index rank() const;
};
SmithForm smith_normal_form(const IntMat& a);

/// Basis (as columns) of the integer kernel {x : A x = 0}.
IntMat kernel_basis(const IntMat& a);

/// Determinant by fraction-free elimination.
Int determinant(const IntMat& a);

/// Exact solution of A x = b over Q for square nonsingular A.
std::vector<Rat> solve_rational(const IntMat& a, const std::vector<Rat>& b);

/// True iff v lies in the row span of the HNF basis `h`.
bool hnf_contains(const IntMat& h, const IntVec& v);

}  // namespace tvlab
