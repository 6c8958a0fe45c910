#pragma once

// Dense matrices and row-space machinery over an exact field.
// Vectors are rows; a matrix acts on the right: v -> v * A.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hecke/field.hpp"
#include "hecke/fp_kernels.hpp"

namespace hecke {

template <ExactField F>
using Vec = std::vector<typename F::Elem>;

template <ExactField F>
class Matrix {
 public:
  using Elem = typename F::Elem;

  explicit Matrix(const F& field) : field_(field) {}
  Matrix(const F& field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }
  static Matrix scalar(const F& field, std::size_t n, const Elem& c) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
  }
  static Matrix from_rows(const F& field, const std::vector<Vec<F>>& rows,
                          std::size_t cols) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  std::span<Elem> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Elem> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  Elem* data() { return data_.data(); }
  const Elem* data() const { return data_.data(); }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [&](const Elem& a) { return field_.is_zero(a); });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  F field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

// ------------------------------------------------------------ row kernels

/// y <- y + c * x
template <ExactField F>
void axpy(const F& f, std::span<typename F::Elem> y,
          std::span<const typename F::Elem> x, const typename F::Elem& c) {
  if constexpr (std::is_same_v<F, PrimeField>) {
    kernels::axpy_mod(y.data(), x.data(), c, f.characteristic(), y.size());
  } else {
    if (f.is_zero(c)) return;
    for (std::size_t i = 0; i < y.size(); ++i)
      if (!f.is_zero(x[i])) y[i] = f.add(y[i], f.mul(c, x[i]));
  }
}

template <ExactField F>
void scale(const F& f, std::span<typename F::Elem> y, const typename F::Elem& c) {
  if constexpr (std::is_same_v<F, PrimeField>) {
    kernels::scale_mod(y.data(), c, f.characteristic(), y.size());
  } else {
    for (auto& a : y) a = f.mul(a, c);
  }
}

/// v * M
template <ExactField F>
Vec<F> vec_mat(std::span<const typename F::Elem> v, const Matrix<F>& m) {
  const F& f = m.field();
  Vec<F> out(m.cols(), f.zero());
  if constexpr (std::is_same_v<F, PrimeField>) {
    kernels::vec_mat_mod(out.data(), v.data(), m.data(), m.rows(), m.cols(),
                         f.characteristic());
  } else {
    for (std::size_t k = 0; k < m.rows(); ++k)
      if (!f.is_zero(v[k])) axpy(f, std::span(out), m.row(k), v[k]);
  }
  return out;
}

// ---------------------------------------------------------- matrix algebra

template <ExactField F>
Matrix<F> operator*(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  const F& f = a.field();
  Matrix<F> c(f, a.rows(), b.cols());
  if constexpr (std::is_same_v<F, PrimeField>) {
    kernels::mat_mul_mod(c.data(), a.data(), b.data(), a.rows(), a.cols(),
                         b.cols(), f.characteristic());
  } else {
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < a.cols(); ++k)
        if (!f.is_zero(a(i, k))) axpy(f, c.row(i), b.row(k), a(i, k));
  }
  return c;
}

template <ExactField F>
Matrix<F> operator+(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix shape mismatch");
  Matrix<F> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    axpy(a.field(), c.row(i), b.row(i), a.field().one());
  return c;
}

template <ExactField F>
Matrix<F> operator-(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix shape mismatch");
  Matrix<F> c = a;
  const auto minus_one = a.field().neg(a.field().one());
  for (std::size_t i = 0; i < a.rows(); ++i) axpy(a.field(), c.row(i), b.row(i), minus_one);
  return c;
}

template <ExactField F>
Matrix<F> scaled(const Matrix<F>& a, const typename F::Elem& c) {
  Matrix<F> r = a;
  for (std::size_t i = 0; i < a.rows(); ++i) scale(a.field(), r.row(i), c);
  return r;
}

/// a + c * I
template <ExactField F>
Matrix<F> plus_scalar(const Matrix<F>& a, const typename F::Elem& c) {
  Matrix<F> r = a;
  for (std::size_t i = 0; i < a.rows(); ++i) r(i, i) = a.field().add(r(i, i), c);
  return r;
}

template <ExactField F>
Matrix<F> transpose(const Matrix<F>& a) {
  Matrix<F> t(a.field(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

template <ExactField F>
typename F::Elem trace(const Matrix<F>& a) {
  auto t = a.field().zero();
  for (std::size_t i = 0; i < a.rows(); ++i) t = a.field().add(t, a(i, i));
  return t;
}

/// Kronecker product a (x) b.
template <ExactField F>
Matrix<F> kron(const Matrix<F>& a, const Matrix<F>& b) {
  const F& f = a.field();
  Matrix<F> k(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (f.is_zero(a(i, j))) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
          k(i * b.rows() + r, j * b.cols() + c) = f.mul(a(i, j), b(r, c));
    }
  return k;
}

template <ExactField F>
Matrix<F> power(const Matrix<F>& a, unsigned e) {
  Matrix<F> r = Matrix<F>::identity(a.field(), a.rows());
  Matrix<F> b = a;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

// ------------------------------------------------------------- row spaces

/// Incrementally built basis of a row space in semi-echelon form: every
/// stored row has a pivot equal to one, and each row vanishes at the pivots
/// of all rows stored before it.
template <ExactField F>
class SemiEchelon {
 public:
  using Elem = typename F::Elem;

  SemiEchelon(const F& field, std::size_t dim) : field_(field), dim_(dim) {}

  const F& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return rows_.size(); }
  bool full() const { return rows_.size() == dim_; }
  const std::vector<Vec<F>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduces v in place against the stored rows; returns the coefficients
  /// used (v_original = v_reduced + sum coeff[i] * row[i]) when requested.
  void reduce(Vec<F>& v, Vec<F>* coeffs = nullptr) const {
    if (coeffs) coeffs->assign(rows_.size(), field_.zero());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Elem c = v[pivots_[i]];
      if (field_.is_zero(c)) continue;
      if (coeffs) (*coeffs)[i] = c;
      axpy(field_, std::span(v), std::span<const Elem>(rows_[i]), field_.neg(c));
    }
  }

  /// Inserts an already reduced vector; returns false if it is zero.
  bool insert_reduced(Vec<F> v) {
    auto it = std::find_if(v.begin(), v.end(),
                           [&](const Elem& a) { return !field_.is_zero(a); });
    if (it == v.end()) return false;
    std::size_t piv = static_cast<std::size_t>(it - v.begin());
    scale(field_, std::span(v), field_.inv(v[piv]));
    pivots_.push_back(piv);
    rows_.push_back(std::move(v));
    return true;
  }

  bool insert(Vec<F> v) {
    reduce(v);
    return insert_reduced(std::move(v));
  }

  bool contains(Vec<F> v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(), [&](const Elem& a) { return field_.is_zero(a); });
  }

  Matrix<F> basis() const { return Matrix<F>::from_rows(field_, rows_, dim_); }

 private:
  F field_;
  std::size_t dim_;
  std::vector<Vec<F>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Basis of {x : r . x = 0 for every stored row r}, as rows.
template <ExactField F>
Matrix<F> null_space(const SemiEchelon<F>& se) {
  const F& f = se.field();
  std::vector<Vec<F>> rows = se.rows();
  const auto& piv = se.pivots();
  // back-substitute into reduced row echelon form
  for (std::size_t j = rows.size(); j-- > 0;)
    for (std::size_t i = j + 1; i < rows.size(); ++i) {
      auto c = rows[j][piv[i]];
      if (!f.is_zero(c))
        axpy(f, std::span(rows[j]), std::span<const typename F::Elem>(rows[i]), f.neg(c));
    }
  std::vector<char> is_pivot(se.dim(), 0);
  for (auto p : piv) is_pivot[p] = 1;
  Matrix<F> k(f, se.dim() - rows.size(), se.dim());
  std::size_t out = 0;
  for (std::size_t col = 0; col < se.dim(); ++col) {
    if (is_pivot[col]) continue;
    k(out, col) = f.one();
    for (std::size_t i = 0; i < rows.size(); ++i) k(out, piv[i]) = f.neg(rows[i][col]);
    ++out;
  }
  return k;
}

/// Basis of {x : x * A = 0}, one vector per row of the result.
template <ExactField F>
Matrix<F> left_kernel(const Matrix<F>& a) {
  const F& f = a.field();
  const std::size_t n = a.rows(), m = a.cols();
  // Eliminate on [A | I]; rows whose A-part dies carry kernel vectors.
  std::vector<Vec<F>> work(n, Vec<F>(m + n, f.zero()));
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), work[i].begin());
    work[i][m + i] = f.one();
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m && rank < n; ++col) {
    std::size_t piv = rank;
    while (piv < n && f.is_zero(work[piv][col])) ++piv;
    if (piv == n) continue;
    std::swap(work[piv], work[rank]);
    scale(f, std::span(work[rank]), f.inv(work[rank][col]));
    for (std::size_t r = rank + 1; r < n; ++r) {
      auto c = work[r][col];
      if (!f.is_zero(c))
        axpy(f, std::span(work[r]), std::span<const typename F::Elem>(work[rank]), f.neg(c));
    }
    ++rank;
  }
  Matrix<F> k(f, n - rank, n);
  for (std::size_t r = rank; r < n; ++r)
    std::copy(work[r].begin() + m, work[r].end(), k.row(r - rank).begin());
  return k;
}

/// Basis of {x : A * x^T = 0}, as rows.
template <ExactField F>
Matrix<F> right_kernel(const Matrix<F>& a) {
  return left_kernel(transpose(a));
}

template <ExactField F>
std::size_t rank(const Matrix<F>& a) {
  SemiEchelon<F> se(a.field(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    se.insert(Vec<F>(a.row(i).begin(), a.row(i).end()));
  return se.size();
}

/// Inverse of a square matrix, or nullopt when singular.
template <ExactField F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  if (!a.square()) throw std::invalid_argument("inverse of non-square matrix");
  const F& f = a.field();
  const std::size_t n = a.rows();
  std::vector<Vec<F>> work(n, Vec<F>(2 * n, f.zero()));
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), work[i].begin());
    work[i][n + i] = f.one();
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && f.is_zero(work[piv][col])) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(work[piv], work[col]);
    scale(f, std::span(work[col]), f.inv(work[col][col]));
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      auto c = work[r][col];
      if (!f.is_zero(c))
        axpy(f, std::span(work[r]), std::span<const typename F::Elem>(work[col]), f.neg(c));
    }
  }
  Matrix<F> inv(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    std::copy(work[i].begin() + n, work[i].end(), inv.row(i).begin());
  return inv;
}

template <ExactField F>
Matrix<F> random_matrix(const F& f, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix<F> m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = f.random(rng);
  return m;
}

/// A random invertible matrix (rejection sampling).
template <ExactField F>
std::pair<Matrix<F>, Matrix<F>> random_invertible(const F& f, std::size_t n, Rng& rng) {
  for (;;) {
    Matrix<F> m = random_matrix(f, n, n, rng);
    if (auto inv = inverse(m)) return {std::move(m), std::move(*inv)};
  }
}

}  // namespace hecke
