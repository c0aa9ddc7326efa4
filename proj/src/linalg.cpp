#include "prolim/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "prolim/budget.hpp"

namespace prolim {

namespace {
int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols_if_empty) {
  const std::size_t c = rows.empty() ? cols_if_empty : rows.front().size();
  IntMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("IntMatrix::from_rows: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows_if_empty) {
  const std::size_t r = cols.empty() ? rows_if_empty : cols.front().size();
  IntMatrix m(r, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != r) throw std::invalid_argument("IntMatrix::from_columns: ragged columns");
    for (std::size_t i = 0; i < r; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& diag, std::size_t rows, std::size_t cols) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < diag.size() && i < rows && i < cols; ++i) m(i, i) = diag[i];
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

void IntMatrix::set_column(std::size_t c, const IntVector& v) {
  if (v.size() != rows_) throw std::invalid_argument("IntMatrix::set_column: length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = v[i];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("IntMatrix::block");
  IntMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

IntMatrix IntMatrix::select_columns(const std::vector<std::size_t>& idx) const {
  IntMatrix b(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = (*this)(i, idx[j]);
  return b;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  IntMatrix b(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) b(i, j) = (*this)(idx[i], j);
  return b;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  budget::charge();
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  budget::charge();
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (sgn(k) == 0) return;
  budget::charge();
  Integer* d = &data_[dst * cols_];
  const Integer* s = &data_[src * cols_];
  for (std::size_t j = 0; j < cols_; ++j)
    if (sgn(s[j]) != 0) mpz_addmul(d[j].get_mpz_t(), k.get_mpz_t(), s[j].get_mpz_t());
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
  if (sgn(k) == 0) return;
  budget::charge();
  for (std::size_t i = 0; i < rows_; ++i) {
    const Integer& s = (*this)(i, src);
    if (sgn(s) != 0) mpz_addmul((*this)(i, dst).get_mpz_t(), k.get_mpz_t(), s.get_mpz_t());
  }
}

void IntMatrix::negate_row(std::size_t r) {
  budget::charge();
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
  budget::charge();
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: product dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Integer& y = b(k, j);
        if (sgn(y) != 0) mpz_addmul(c(i, j).get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      }
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix: sum shape mismatch");
  IntMatrix c(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = a.data_[i] + b.data_[i];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix: difference shape mismatch");
  IntMatrix c(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = a.data_[i] - b.data_[i];
  return c;
}

IntMatrix operator-(const IntMatrix& a) {
  IntMatrix c(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = -a.data_[i];
  return c;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("IntMatrix: matrix-vector dimension mismatch");
  IntVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (sgn(a(i, j)) != 0 && sgn(v[j]) != 0)
        mpz_addmul(out[i].get_mpz_t(), a(i, j).get_mpz_t(), v[j].get_mpz_t());
  return out;
}

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hconcat: row count mismatch");
  IntMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

IntMatrix vconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vconcat: column count mismatch");
  IntMatrix c(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) c(a.rows() + i, j) = b(i, j);
  }
  return c;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

bool is_zero_vector(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
}

IntVector vec_add(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_add: length mismatch");
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

IntVector vec_sub(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_sub: length mismatch");
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

IntVector vec_scale(const IntVector& a, const Integer& k) {
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * k;
  return c;
}

IntVector unit_vector(std::size_t n, std::size_t i) {
  IntVector v(n);
  v.at(i) = 1;
  return v;
}

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n || k < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m(p, k)) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    if (k + 1 == n) break;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntVector SnfDecomposition::diagonal() const {
  const std::size_t k = std::min(D.rows(), D.cols());
  IntVector d(k);
  for (std::size_t i = 0; i < k; ++i) d[i] = D(i, i);
  return d;
}

namespace {

// Applies each elementary operation to D and mirrors it onto whichever
// transforms are being tracked, so that U * A * V = D holds throughout.
class SmithReducer {
 public:
  SmithReducer(const IntMatrix& a, unsigned what) : D(a) {
    if (what & kSnfLeft) U = IntMatrix::identity(a.rows());
    if (what & kSnfLeftInverse) U_inv = IntMatrix::identity(a.rows());
    if (what & kSnfRight) V = IntMatrix::identity(a.cols());
    if (what & kSnfRightInverse) V_inv = IntMatrix::identity(a.cols());
    track_u = what & kSnfLeft;
    track_ui = what & kSnfLeftInverse;
    track_v = what & kSnfRight;
    track_vi = what & kSnfRightInverse;
  }

  void row_add(std::size_t dst, std::size_t src, const Integer& k) {
    D.add_row_multiple(dst, src, k);
    if (track_u) U.add_row_multiple(dst, src, k);
    if (track_ui) U_inv.add_col_multiple(src, dst, -k);
  }
  void col_add(std::size_t dst, std::size_t src, const Integer& k) {
    D.add_col_multiple(dst, src, k);
    if (track_v) V.add_col_multiple(dst, src, k);
    if (track_vi) V_inv.add_row_multiple(src, dst, -k);
  }
  void row_swap(std::size_t a, std::size_t b) {
    if (a == b) return;
    D.swap_rows(a, b);
    if (track_u) U.swap_rows(a, b);
    if (track_ui) U_inv.swap_cols(a, b);
  }
  void col_swap(std::size_t a, std::size_t b) {
    if (a == b) return;
    D.swap_cols(a, b);
    if (track_v) V.swap_cols(a, b);
    if (track_vi) V_inv.swap_rows(a, b);
  }
  void row_negate(std::size_t r) {
    D.negate_row(r);
    if (track_u) U.negate_row(r);
    if (track_ui) U_inv.negate_col(r);
  }

  std::size_t run() {
    const std::size_t r = D.rows();
    const std::size_t c = D.cols();
    std::size_t t = 0;
    while (t < r && t < c) {
      std::size_t pi = 0, pj = 0;
      if (!find_min(t, pi, pj)) break;
      row_swap(t, pi);
      col_swap(t, pj);
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < r; ++i) {
          if (sgn(D(i, t)) == 0) continue;
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
          row_add(i, t, -q);
          if (sgn(D(i, t)) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < c; ++j) {
          if (sgn(D(t, j)) == 0) continue;
          Integer q;
          mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
          col_add(j, t, -q);
          if (sgn(D(t, j)) != 0) clean = false;
        }
        if (!clean) {
          // A remainder smaller than the pivot survived; promote the smallest.
          std::size_t bi = t, bj = t;
          for (std::size_t i = t + 1; i < r; ++i)
            if (sgn(D(i, t)) != 0 && cmpabs(D(i, t), D(bi, bj)) < 0) bi = i, bj = t;
          for (std::size_t j = t + 1; j < c; ++j)
            if (sgn(D(t, j)) != 0 && cmpabs(D(t, j), D(bi, bj)) < 0) bi = t, bj = j;
          row_swap(t, bi);
          col_swap(t, bj);
          continue;
        }
        bool divisible = true;
        for (std::size_t i = t + 1; i < r && divisible; ++i)
          for (std::size_t j = t + 1; j < c; ++j)
            if (sgn(D(i, j)) != 0 && !mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
              row_add(t, i, 1);
              divisible = false;
              break;
            }
        if (divisible) break;
      }
      if (sgn(D(t, t)) < 0) row_negate(t);
      ++t;
    }
    return t;
  }

  IntMatrix D, U, U_inv, V, V_inv;

 private:
  bool find_min(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    for (std::size_t i = t; i < D.rows(); ++i)
      for (std::size_t j = t; j < D.cols(); ++j) {
        if (sgn(D(i, j)) == 0) continue;
        if (!found || cmpabs(D(i, j), D(pi, pj)) < 0) {
          pi = i;
          pj = j;
          found = true;
          if (D(i, j) == 1 || D(i, j) == -1) return true;
        }
      }
    return found;
  }

  bool track_u = false, track_ui = false, track_v = false, track_vi = false;
};

}  // namespace

SnfDecomposition snf(const IntMatrix& a, unsigned transforms) {
  SmithReducer red(a, transforms);
  const std::size_t rk = red.run();
  SnfDecomposition out;
  out.rank = rk;
  out.D = std::move(red.D);
  out.U = std::move(red.U);
  out.U_inv = std::move(red.U_inv);
  out.V = std::move(red.V);
  out.V_inv = std::move(red.V_inv);
  return out;
}

IntVector smith_invariants(const IntMatrix& a) { return snf(a, 0).diagonal(); }

std::size_t rank(const IntMatrix& a) { return snf(a, 0).rank; }

namespace {

IntMatrix hnf_impl(const IntMatrix& a) {
  IntMatrix h = a;
  const std::size_t r = h.rows();
  const std::size_t c = h.cols();
  std::size_t k = 0;
  for (std::size_t i = 0; i < r && k < c; ++i) {
    for (;;) {
      std::size_t best = c;
      for (std::size_t j = k; j < c; ++j)
        if (sgn(h(i, j)) != 0 && (best == c || cmpabs(h(i, j), h(i, best)) < 0)) best = j;
      if (best == c) break;
      h.swap_cols(k, best);
      bool clean = true;
      for (std::size_t j = k + 1; j < c; ++j) {
        if (sgn(h(i, j)) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, k).get_mpz_t());
        h.add_col_multiple(j, k, -q);
        if (sgn(h(i, j)) != 0) clean = false;
      }
      if (clean) break;
    }
    if (sgn(h(i, k)) == 0) continue;
    if (sgn(h(i, k)) < 0) h.negate_col(k);
    for (std::size_t j = 0; j < k; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, k).get_mpz_t());
      h.add_col_multiple(j, k, -q);
    }
    ++k;
  }
  return h;
}

}  // namespace

IntMatrix hnf(const IntMatrix& a) { return hnf_impl(a); }

IntMatrix lattice_basis(const IntMatrix& a) {
  IntMatrix h = hnf_impl(a);
  std::size_t k = 0;
  while (k < h.cols()) {
    bool nonzero = false;
    for (std::size_t i = 0; i < h.rows() && !nonzero; ++i) nonzero = sgn(h(i, k)) != 0;
    if (!nonzero) break;
    ++k;
  }
  return h.block(0, 0, h.rows(), k);
}

IntMatrix kernel_basis(const IntMatrix& a) {
  SnfDecomposition d = snf(a, kSnfRight);
  const std::size_t c = a.cols();
  std::vector<std::size_t> idx;
  for (std::size_t j = d.rank; j < c; ++j) idx.push_back(j);
  return lattice_basis(d.V.select_columns(idx));
}

IntMatrix saturate(const IntMatrix& a) {
  SnfDecomposition d = snf(a, kSnfLeftInverse);
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < d.rank; ++j) idx.push_back(j);
  return lattice_basis(d.U_inv.select_columns(idx));
}

LatticeSolver::LatticeSolver(const IntMatrix& a) : a_(a), snf_(snf(a, kSnfLeft | kSnfRight)) {}

std::optional<IntVector> LatticeSolver::solve(const IntVector& b) const {
  if (b.size() != a_.rows())
    throw std::invalid_argument("solve_integer: right-hand side has " + std::to_string(b.size()) +
                                " entries, matrix has " + std::to_string(a_.rows()) + " rows");
  const IntVector c = snf_.U * b;
  IntVector y(a_.cols());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < snf_.rank) {
      const Integer& d = snf_.D(i, i);
      if (!mpz_divisible_p(c[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), d.get_mpz_t());
    } else if (sgn(c[i]) != 0) {
      return std::nullopt;
    }
  }
  return snf_.V * y;
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows())
    throw std::invalid_argument("solve_integer: right-hand side has " + std::to_string(b.size()) +
                                " entries, matrix has " + std::to_string(a.rows()) + " rows");
  return LatticeSolver(a).solve(b);
}

}  // namespace prolim
