#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "drazinlab/errors.hpp"
#include "drazinlab/field.hpp"

namespace drazinlab {

/// Dense row-major matrix over a field descriptor F. Square matrices of a
/// common size play the role of ring elements.
template <class F>
class Matrix {
 public:
  using Field = F;
  using Scalar = typename F::Element;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  /// Builds a matrix from small integer rows, mapped into the field.
  static Matrix from_ints(const F& field, std::initializer_list<std::initializer_list<long long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(field, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw DimensionMismatch("ragged initializer rows");
      std::size_t j = 0;
      for (long long v : row) m(i, j++) = field.from_int(v);
      ++i;
    }
    return m;
  }

  static Matrix diagonal(const F& field, std::span<const Scalar> diag) {
    Matrix m(field, diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  const F& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const Scalar> entries() const noexcept { return entries_; }
  std::span<Scalar> entries() noexcept { return entries_; }

  bool is_zero() const {
    for (const auto& x : entries_) {
      if (!field_.is_zero(x)) return false;
    }
    return true;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix out(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }

  Matrix column(std::size_t j) const { return block(0, j, rows_, 1); }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& src) {
    for (std::size_t i = 0; i < src.rows(); ++i)
      for (std::size_t j = 0; j < src.cols(); ++j) (*this)(r0 + i, c0 + j) = src(i, j);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

 private:
  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> entries_;
};

namespace detail {

template <class F>
void require_same_field(const Matrix<F>& lhs, const Matrix<F>& rhs) {
  if (!(lhs.field() == rhs.field())) {
    throw FieldMismatch("operands live over different fields (" + lhs.field().name() + " vs " +
                        rhs.field().name() + ")");
  }
}

inline std::string shape(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

template <class F>
void require_same_shape(const Matrix<F>& lhs, const Matrix<F>& rhs, const char* op) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
    throw DimensionMismatch(std::string(op) + ": " + shape(lhs.rows(), lhs.cols()) + " vs " +
                            shape(rhs.rows(), rhs.cols()));
  }
}

}  // namespace detail

template <class F>
Matrix<F> operator+(const Matrix<F>& lhs, const Matrix<F>& rhs) {
  detail::require_same_field(lhs, rhs);
  detail::require_same_shape(lhs, rhs, "add");
  Matrix<F> out = lhs;
  auto dst = out.entries();
  auto src = rhs.entries();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
  return out;
}

template <class F>
Matrix<F> operator-(const Matrix<F>& lhs, const Matrix<F>& rhs) {
  detail::require_same_field(lhs, rhs);
  detail::require_same_shape(lhs, rhs, "sub");
  Matrix<F> out = lhs;
  auto dst = out.entries();
  auto src = rhs.entries();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] -= src[k];
  return out;
}

template <class F>
Matrix<F> operator-(const Matrix<F>& m) {
  Matrix<F> out = m;
  for (auto& x : out.entries()) x = -x;
  return out;
}

template <class F>
Matrix<F> operator*(const Matrix<F>& lhs, const Matrix<F>& rhs) {
  detail::require_same_field(lhs, rhs);
  if (lhs.cols() != rhs.rows()) {
    throw DimensionMismatch("mul: " + detail::shape(lhs.rows(), lhs.cols()) + " times " +
                            detail::shape(rhs.rows(), rhs.cols()));
  }
  Matrix<F> out(lhs.field(), lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const auto& lik = lhs(i, k);
      if (lhs.field().is_zero(lik)) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += lik * rhs(k, j);
    }
  }
  return out;
}

template <class F>
Matrix<F> operator*(const typename F::Element& s, const Matrix<F>& m) {
  Matrix<F> out = m;
  for (auto& x : out.entries()) x = s * x;
  return out;
}

/// Frobenius norm; see entry_weight for the GF(p) convention.
template <class F>
double frobenius_norm(const Matrix<F>& m) {
  double sum = 0.0;
  for (const auto& x : m.entries()) sum += entry_weight(x);
  return std::sqrt(sum);
}

/// Relative Frobenius distance ||lhs - rhs|| / max(1, ||lhs||, ||rhs||).
template <class F>
double relative_residual(const Matrix<F>& lhs, const Matrix<F>& rhs) {
  double diff = frobenius_norm(lhs - rhs);
  double scale = std::max({1.0, frobenius_norm(lhs), frobenius_norm(rhs)});
  return diff / scale;
}

/// Exact entrywise equality over exact fields; tolerance-relative
/// Frobenius comparison over ComplexField.
template <class F>
bool mat_equal(const Matrix<F>& lhs, const Matrix<F>& rhs) {
  detail::require_same_shape(lhs, rhs, "equal");
  detail::require_same_field(lhs, rhs);
  if constexpr (F::exact) {
    auto l = lhs.entries();
    auto r = rhs.entries();
    for (std::size_t k = 0; k < l.size(); ++k) {
      if (!(l[k] == r[k])) return false;
    }
    return true;
  } else {
    return relative_residual(lhs, rhs) <= lhs.field().eps();
  }
}

}  // namespace drazinlab
