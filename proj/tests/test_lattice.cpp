#include <doctest.h>

#include <random>

#include "tvlab/lattice.hpp"

using namespace tvlab;

namespace {

IntMat from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  IntMat m = int_zero(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (long v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

bool mat_eq(const IntMat& a, const IntMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

}  // namespace

TEST_CASE("hermite normal form canonicalizes row spans") {
  // Same lattice, different generating rows.
  IntMat a = hermite_normal_form(from_rows({{2, 0}, {0, 3}, {2, 3}}));
  IntMat b = hermite_normal_form(from_rows({{2, 3}, {2, 0}, {4, 3}}));
  CHECK(mat_eq(a, b));
  CHECK(a.rows() == 2);
  CHECK(a(0, 0) == 2);
  CHECK(a(1, 1) == 3);

  IntMat single = hermite_normal_form(from_rows({{6}, {4}}));
  CHECK(single.rows() == 1);
  CHECK(single(0, 0) == 2);

  // Entries above a pivot are reduced into [0, pivot).
  IntMat c = hermite_normal_form(from_rows({{1, 7}, {0, 5}}));
  CHECK(c(0, 1) >= 0);
  CHECK(c(0, 1) < 5);
}

TEST_CASE("smith normal form reconstructs and orders invariants") {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 60; ++it) {
    Eigen::Index r = 1 + static_cast<Eigen::Index>(rng() % 4);
    Eigen::Index c = 1 + static_cast<Eigen::Index>(rng() % 4);
    IntMat a = int_zero(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j)
        a(i, j) = static_cast<long>(rng() % 11) - 5;
    SmithForm s = smith_normal_form(a);
    CHECK(mat_eq(s.u * a * s.v, s.d));
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    for (Eigen::Index i = 0; i + 1 < std::min(r, c); ++i) {
      if (s.d(i + 1, i + 1) != 0) {
        REQUIRE(s.d(i, i) != 0);
        CHECK(s.d(i + 1, i + 1) % s.d(i, i) == 0);
      }
      CHECK(s.d(i, i) >= 0);
    }
  }
}

TEST_CASE("kernel basis spans the integer kernel") {
  IntMat a = from_rows({{2, 4, 6}, {1, 2, 3}});
  IntMat k = kernel_basis(a);
  CHECK(k.cols() == 2);
  for (Eigen::Index col = 0; col < k.cols(); ++col) {
    IntVec x = k.col(col);
    IntVec y = a * x;
    for (Eigen::Index i = 0; i < y.size(); ++i) CHECK(y(i) == 0);
  }
  // (1, 1, -1) lies in the kernel and must be an integer combination of the
  // basis: check by Hermite containment of the stacked basis.
  IntMat rows = int_zero(k.cols(), 3);
  for (Eigen::Index col = 0; col < k.cols(); ++col)
    for (int i = 0; i < 3; ++i) rows(col, i) = k(i, col);
  IntVec v(3);
  v(0) = 1;
  v(1) = 1;
  v(2) = -1;
  CHECK(hnf_contains(hermite_normal_form(rows), v));
}

TEST_CASE("determinant matches cofactor expansion") {
  CHECK(determinant(from_rows({{3}})) == 3);
  CHECK(determinant(from_rows({{2, 1}, {7, 4}})) == 1);
  CHECK(determinant(from_rows({{0, 1}, {1, 1}})) == -1);
  CHECK(determinant(from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 0);
  CHECK(determinant(from_rows({{2, 0, 1}, {1, 3, -1}, {0, 5, 4}})) == 39);
}

TEST_CASE("rational solve inverts nonsingular systems") {
  IntMat a = from_rows({{2, 1}, {1, 1}});
  std::vector<Rat> b{Rat(1), Rat(1, 2)};
  b[1].canonicalize();
  std::vector<Rat> x = solve_rational(a, b);
  CHECK(Rat(2) * x[0] + x[1] == Rat(1));
  CHECK(x[0] + x[1] == b[1]);
  CHECK_THROWS_AS(solve_rational(from_rows({{1, 2}, {2, 4}}), b), std::domain_error);
}

TEST_CASE("hnf membership test") {
  IntMat h = hermite_normal_form(from_rows({{2, 0}, {0, 3}}));
  IntVec in(2), out(2);
  in(0) = 4;
  in(1) = -3;
  out(0) = 1;
  out(1) = 0;
  CHECK(hnf_contains(h, in));
  CHECK(!hnf_contains(h, out));
}
