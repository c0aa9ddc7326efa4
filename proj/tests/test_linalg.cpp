#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "prolim/budget.hpp"
#include "prolim/linalg.hpp"

using namespace prolim;

namespace {

bool unimodular(const IntMatrix& m) {
  Integer d = determinant(m);
  return d == 1 || d == -1;
}

void check_snf(const IntMatrix& a) {
  SnfDecomposition s = snf(a);
  CHECK(s.U * a * s.V == s.D);
  CHECK(s.U * s.U_inv == IntMatrix::identity(a.rows()));
  CHECK(s.V * s.V_inv == IntMatrix::identity(a.cols()));
  CHECK(unimodular(s.U));
  CHECK(unimodular(s.V));
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) CHECK(s.D(i, j) == 0);
  IntVector d = s.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d[i] >= 0);
    if (i + 1 < d.size() && d[i] != 0) CHECK(mpz_divisible_p(d[i + 1].get_mpz_t(), d[i].get_mpz_t()));
    if (i + 1 < d.size() && d[i] == 0) CHECK(d[i + 1] == 0);
  }
}

}  // namespace

TEST_CASE("snf small cases") {
  SnfDecomposition z = snf(IntMatrix{{0}});
  CHECK(z.D == IntMatrix{{0}});
  CHECK(z.U == IntMatrix{{1}});
  CHECK(z.V == IntMatrix{{1}});
  CHECK(snf(IntMatrix::identity(3)).D == IntMatrix::identity(3));

  IntMatrix a{{2, 0}, {0, 3}};
  auto expected = oracle::invariant_factors(a);
  REQUIRE(expected.size() == 2);
  CHECK(expected[0] == 1);
  CHECK(expected[1] == 6);
  CHECK(snf(a).D == IntMatrix{{1, 0}, {0, 6}});
}

TEST_CASE("snf random corpus agrees with minor gcds") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> dim(1, 8);
  for (int t = 0; t < 200; ++t) {
    IntMatrix a = oracle::random_matrix(rng, dim(rng), dim(rng), -9, 9);
    check_snf(a);
    if (a.rows() <= 5 && a.cols() <= 5) {
      auto want = oracle::invariant_factors(a);
      IntVector got = snf(a).diagonal();
      for (std::size_t i = 0; i < got.size(); ++i) {
        if (i < want.size())
          CHECK(got[i] == want[i]);
        else
          CHECK(got[i] == 0);
      }
    }
  }
}

TEST_CASE("snf handles degenerate shapes") {
  check_snf(IntMatrix(0, 3));
  check_snf(IntMatrix(3, 0));
  check_snf(IntMatrix(2, 2));
  check_snf(IntMatrix{{4, 6, 10}});
  check_snf(IntMatrix{{6}, {-4}, {10}});
}

TEST_CASE("hnf") {
  CHECK(hnf(IntMatrix::identity(3)) == IntMatrix::identity(3));
  CHECK(hnf(IntMatrix{{2, 4}}) == IntMatrix{{2, 0}});
  CHECK(hnf(IntMatrix(2, 2)) == IntMatrix(2, 2));
  IntMatrix h = hnf(IntMatrix{{3, 1}, {1, 5}});
  CHECK(h(0, 1) == 0);
  CHECK(h(0, 0) == 1);
  CHECK(h(1, 1) == 14);
  CHECK(h(1, 0) >= 0);
  CHECK(h(1, 0) < 14);
}

TEST_CASE("hnf spans the same lattice") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 60; ++t) {
    IntMatrix a = oracle::random_matrix(rng, 4, 5, -5, 5);
    IntMatrix b = lattice_basis(a);
    LatticeSolver sa(a), sb(b);
    for (std::size_t j = 0; j < a.cols(); ++j) CHECK(sb.in_lattice(a.column(j)));
    for (std::size_t j = 0; j < b.cols(); ++j) CHECK(sa.in_lattice(b.column(j)));
    CHECK(lattice_basis(b) == b);
  }
}

TEST_CASE("solve_integer") {
  auto x = solve_integer(IntMatrix{{2}}, {Integer(4)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK_FALSE(solve_integer(IntMatrix{{2}}, {Integer(3)}).has_value());
  IntMatrix a{{1, 1}, {0, 2}};
  auto y = solve_integer(a, {Integer(3), Integer(2)});
  REQUIRE(y.has_value());
  // back substitution: 2 x1 = 2, x0 + x1 = 3
  CHECK((*y)[1] == 1);
  CHECK((*y)[0] == 2);
  CHECK_THROWS_AS(solve_integer(a, {Integer(1)}), std::invalid_argument);
}

TEST_CASE("kernel basis") {
  IntMatrix a{{2, -2}};
  IntMatrix k = kernel_basis(a);
  REQUIRE(k.cols() == 1);
  CHECK((a * k).is_zero());
  CHECK(abs(k(0, 0)) == 1);
  CHECK(kernel_basis(IntMatrix::identity(3)).cols() == 0);
}

TEST_CASE("saturate") {
  IntMatrix s = saturate(IntMatrix{{2}, {4}});
  CHECK(s == IntMatrix{{1}, {2}});
  CHECK(saturate(IntMatrix{{2, 1}, {1, 1}}) == IntMatrix::identity(2));
  CHECK(saturate(IntMatrix(2, 2)).cols() == 0);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    IntMatrix a = oracle::random_matrix(rng, 4, 2, -6, 6);
    IntMatrix s1 = saturate(a);
    CHECK(saturate(s1) == s1);
    CHECK(s1.cols() == rank(a));
    LatticeSolver ls(s1);
    for (std::size_t j = 0; j < a.cols(); ++j) CHECK(ls.in_lattice(a.column(j)));
  }
}

TEST_CASE("determinant matches cofactor expansion") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    std::size_t n = 1 + t % 5;
    IntMatrix a = oracle::random_matrix(rng, n, n, -7, 7);
    std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
    CHECK(determinant(a) == oracle::cofactor_det(m));
  }
}

TEST_CASE("operation budget") {
  budget::reset();
  budget::set_limit(5);
  CHECK_THROWS_AS(snf(IntMatrix{{3, 5, 7}, {11, 13, 17}, {19, 23, 29}}), BudgetExceeded);
  budget::set_limit(0);
  budget::reset();
  CHECK_NOTHROW(snf(IntMatrix{{3, 5, 7}, {11, 13, 17}, {19, 23, 29}}));
}
