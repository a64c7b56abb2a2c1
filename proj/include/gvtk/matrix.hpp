#pragma once

// Dense matrices over a coefficient field with exact Gaussian elimination.

#include <cstddef>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "gvtk/error.hpp"
#include "gvtk/field.hpp"

namespace gvtk {

template <class E>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const E& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  E& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const E& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<E> data_;
};

template <Field F>
using MatrixOver = Matrix<typename F::Elem>;

template <Field F>
MatrixOver<F> zero_matrix(const F& k, std::size_t r, std::size_t c) {
  return MatrixOver<F>(r, c, k.zero());
}

template <Field F>
MatrixOver<F> identity_matrix(const F& k, std::size_t n) {
  auto m = zero_matrix(k, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = k.one();
  return m;
}

template <Field F>
MatrixOver<F> from_ints(const F& k, const std::vector<std::vector<long long>>& rows) {
  std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  auto m = zero_matrix(k, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw InputError("ragged integer matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = k(rows[i][j]);
  }
  return m;
}

template <Field F>
MatrixOver<F> transpose(const F& k, const MatrixOver<F>& a) {
  auto t = zero_matrix(k, a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

template <Field F>
MatrixOver<F> multiply(const F& k, const MatrixOver<F>& a, const MatrixOver<F>& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product shape mismatch");
  auto c = zero_matrix(k, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      if (F::is_zero(a(i, l))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, l) * b(l, j);
    }
  return c;
}

template <Field F>
MatrixOver<F> add(const F& k, const MatrixOver<F>& a, const MatrixOver<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("matrix sum shape mismatch");
  auto c = zero_matrix(k, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

template <Field F>
MatrixOver<F> scale(const F& k, const typename F::Elem& s, const MatrixOver<F>& a) {
  auto c = zero_matrix(k, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

template <Field F>
bool is_zero_matrix(const MatrixOver<F>& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!F::is_zero(a(i, j))) return false;
  return true;
}

// Reduced row echelon form in place; returns pivot columns.
template <Field F>
std::vector<std::size_t> rref_in_place(const F& k, MatrixOver<F>& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && F::is_zero(a(piv, col))) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
    typename F::Elem inv = k.inv(a(row, col));
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) = a(row, j) * inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || F::is_zero(a(i, col))) continue;
      typename F::Elem f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (!F::is_zero(a(row, j))) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Rank by forward elimination only; rows are eliminated below the pivot and
// zero multipliers are skipped, which keeps sparse Koszul-type matrices cheap.
template <Field F>
std::size_t rank(const F& k, MatrixOver<F> a) {
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && F::is_zero(a(piv, col))) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t j = col; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
    typename F::Elem inv = k.inv(a(row, col));
    std::vector<std::size_t> support;
    for (std::size_t j = col + 1; j < a.cols(); ++j)
      if (!F::is_zero(a(row, j))) support.push_back(j);
    for (std::size_t i = row + 1; i < a.rows(); ++i) {
      if (F::is_zero(a(i, col))) continue;
      typename F::Elem f = a(i, col) * inv;
      a(i, col) = k.zero();
      for (std::size_t j : support) a(i, j) -= f * a(row, j);
    }
    ++row;
  }
  return row;
}

// Basis of the right kernel {x : a x = 0}, as the columns of the result.
template <Field F>
MatrixOver<F> kernel_basis(const F& k, const MatrixOver<F>& a) {
  MatrixOver<F> r = a;
  auto pivots = rref_in_place(k, r);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  auto ker = zero_matrix(k, a.cols(), free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    ker(free_cols[f], f) = k.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) ker(pivots[i], f) = -r(i, free_cols[f]);
  }
  return ker;
}

// Columns of `a` form a basis of its column space (a subset of the columns).
template <Field F>
MatrixOver<F> column_space_basis(const F& k, const MatrixOver<F>& a) {
  MatrixOver<F> r = a;
  auto pivots = rref_in_place(k, r);
  auto out = zero_matrix(k, a.rows(), pivots.size());
  for (std::size_t c = 0; c < pivots.size(); ++c)
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, c) = a(i, pivots[c]);
  return out;
}

// Horizontal concatenation [a | b].
template <Field F>
MatrixOver<F> hconcat(const F& k, const MatrixOver<F>& a, const MatrixOver<F>& b) {
  std::size_t rows = a.cols() ? a.rows() : b.rows();
  if (a.cols() && b.cols() && a.rows() != b.rows()) throw InputError("hconcat row mismatch");
  auto out = zero_matrix(k, rows, a.cols() + b.cols());
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

// Solve a x = b for a square invertible a. Throws if singular.
template <Field F>
MatrixOver<F> solve(const F& k, const MatrixOver<F>& a, const MatrixOver<F>& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows()) throw InputError("solve shape mismatch");
  auto aug = hconcat(k, a, b);
  auto pivots = rref_in_place(k, aug);
  if (pivots.size() < a.cols() || (!pivots.empty() && pivots.back() >= a.cols()))
    throw InputError("singular system");
  auto x = zero_matrix(k, a.cols(), b.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = aug(i, a.cols() + j);
  return x;
}

// Coordinates x with basis * x = b, for a basis of full column rank;
// nullopt if some column of b lies outside the span.
template <Field F>
std::optional<MatrixOver<F>> coordinates(const F& k, const MatrixOver<F>& basis, const MatrixOver<F>& b) {
  if (basis.rows() != b.rows()) throw InputError("coordinates shape mismatch");
  const std::size_t n = basis.cols();
  auto aug = hconcat(k, basis, b);
  auto pivots = rref_in_place(k, aug);
  std::size_t used = 0;
  for (auto p : pivots) {
    if (p >= n) return std::nullopt;
    ++used;
  }
  if (used < n) throw InputError("coordinates: basis columns are dependent");
  auto x = zero_matrix(k, n, b.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = aug(i, n + j);
  return x;
}

template <Field F>
MatrixOver<F> inverse(const F& k, const MatrixOver<F>& a) {
  return solve(k, a, identity_matrix(k, a.rows()));
}

template <Field F>
std::string to_string(const F& k, const MatrixOver<F>& a) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? "," : "") << k.str(a(i, j));
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace gvtk
