#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace prolim {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
///
/// Zero-sized shapes (r x 0, 0 x c) are valid and are used throughout for
/// trivial groups and empty relation sets.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols_if_empty = 0);
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows_if_empty);
  static IntMatrix diagonal(const IntVector& diag, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  void set_column(std::size_t c, const IntVector& v);

  IntMatrix transpose() const;
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  IntMatrix select_columns(const std::vector<std::size_t>& idx) const;
  IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
  bool is_zero() const;

  // Elementary operations. Each one counts against the operation budget.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);  // row dst += k * row src
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);  // col dst += k * col src
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntVector operator*(const IntMatrix& a, const IntVector& v);
IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);
IntMatrix vconcat(const IntMatrix& a, const IntMatrix& b);
/// Block-diagonal sum diag(a, b).
IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);

bool is_zero_vector(const IntVector& v);
IntVector vec_add(const IntVector& a, const IntVector& b);
IntVector vec_sub(const IntVector& a, const IntVector& b);
IntVector vec_scale(const IntVector& a, const Integer& k);
IntVector unit_vector(std::size_t n, std::size_t i);

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& a);

/// Result of Smith normal form: U * A * V = D.
///
/// U and V are unimodular. `U_inv` and `V_inv` are their exact inverses and
/// are kept because almost every consumer needs one of them (images, kernels,
/// saturations). `rank` counts the nonzero diagonal entries.
struct SnfDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix U_inv;
  IntMatrix V_inv;
  std::size_t rank = 0;

  IntVector diagonal() const;
};

/// Which transforms snf() tracks. Untracked ones are left empty.
enum SnfTransforms : unsigned {
  kSnfLeft = 1,
  kSnfLeftInverse = 2,
  kSnfRight = 4,
  kSnfRightInverse = 8,
  kSnfAll = 15,
};

/// Minimal-absolute-value pivoting with full row/column clearing; the
/// diagonal is nonnegative and each entry divides the next.
SnfDecomposition snf(const IntMatrix& a, unsigned transforms = kSnfAll);

/// Diagonal of the Smith form only (no transforms tracked).
IntVector smith_invariants(const IntMatrix& a);

/// Column-style Hermite normal form. Same shape as the input; the nonzero
/// columns come first, each has a positive pivot strictly below the previous
/// pivot row, and entries to the left of a pivot are reduced into [0, pivot).
IntMatrix hnf(const IntMatrix& a);

/// Canonical basis of the column lattice: the nonzero columns of hnf(a).
IntMatrix lattice_basis(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);

/// Basis (as columns) of the integer kernel {x : a x = 0}.
IntMatrix kernel_basis(const IntMatrix& a);

/// x with a x = b over the integers, or nullopt if none exists.
/// Throws std::invalid_argument when b.size() != a.rows().
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

/// Basis of the saturation {v : n v in L for some n != 0} of the column lattice L.
IntMatrix saturate(const IntMatrix& a);

/// Precomputed SNF for repeated solves against the same matrix.
class LatticeSolver {
 public:
  explicit LatticeSolver(const IntMatrix& a);

  std::optional<IntVector> solve(const IntVector& b) const;
  bool in_lattice(const IntVector& b) const { return solve(b).has_value(); }
  const SnfDecomposition& decomposition() const { return snf_; }

 private:
  IntMatrix a_;
  SnfDecomposition snf_;
};

}  // namespace prolim
