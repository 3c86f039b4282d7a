#pragma once

// Elimination-based kernels: rank, general solve, inverse, powers,
// nilpotency and polynomial-span membership.
//
// Rational matrices go through fraction-free (Bareiss) elimination on
// integer rows; GF(p) uses plain Gauss-Jordan; complex matrices use
// partial pivoting with a pivot threshold of eps * scale * ||M||_F.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <type_traits>
#include <vector>

#include "drazinlab/matrix.hpp"

namespace drazinlab {

template <class F>
struct RowEchelon {
  Matrix<F> reduced;                // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  std::size_t rank() const noexcept { return pivots.size(); }
};

template <class F>
struct GeneralSolution {
  Matrix<F> particular;
  std::vector<Matrix<F>> nullspace_basis;  // column vectors
};

namespace detail {

struct IntegerEchelon {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Integer> entries;
  std::vector<std::size_t> pivots;
  Integer& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
};

// Clears denominators row by row and runs Bareiss forward elimination.
// Every intermediate entry is a minor of the integer matrix, so the
// division by the previous pivot is exact.
inline IntegerEchelon bareiss_forward(const Matrix<RationalField>& m) {
  IntegerEchelon e;
  e.rows = m.rows();
  e.cols = m.cols();
  e.entries.resize(e.rows * e.cols);
  for (std::size_t i = 0; i < e.rows; ++i) {
    Integer scale = 1;
    for (std::size_t j = 0; j < e.cols; ++j) {
      scale = boost::multiprecision::lcm(scale, Integer(denominator(m(i, j))));
    }
    for (std::size_t j = 0; j < e.cols; ++j) {
      const Rational& x = m(i, j);
      e.at(i, j) = Integer(numerator(x)) * (scale / Integer(denominator(x)));
    }
  }

  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t col = 0; col < e.cols && r < e.rows; ++col) {
    std::size_t piv = r;
    while (piv < e.rows && e.at(piv, col) == 0) ++piv;
    if (piv == e.rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < e.cols; ++j) std::swap(e.at(piv, j), e.at(r, j));
    }
    const Integer p = e.at(r, col);
    for (std::size_t i = r + 1; i < e.rows; ++i) {
      const Integer lead = e.at(i, col);
      for (std::size_t j = col + 1; j < e.cols; ++j) {
        Integer num = p * e.at(i, j) - lead * e.at(r, j);
        e.at(i, j) = num / prev;
      }
      e.at(i, col) = 0;
    }
    prev = p;
    e.pivots.push_back(col);
    ++r;
  }
  return e;
}

inline RowEchelon<RationalField> rational_rref(const Matrix<RationalField>& m) {
  IntegerEchelon e = bareiss_forward(m);
  Matrix<RationalField> q(m.field(), m.rows(), m.cols());
  const std::size_t rank = e.pivots.size();
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rational(e.at(i, j));

  for (std::size_t k = rank; k-- > 0;) {
    const std::size_t pc = e.pivots[k];
    const Rational p = q(k, pc);
    for (std::size_t j = pc; j < m.cols(); ++j) q(k, j) /= p;
    for (std::size_t i = 0; i < k; ++i) {
      const Rational f = q(i, pc);
      if (f == 0) continue;
      for (std::size_t j = pc; j < m.cols(); ++j) q(i, j) -= f * q(k, j);
    }
  }
  return {std::move(q), std::move(e.pivots)};
}

template <class F>
RowEchelon<F> gauss_jordan(Matrix<F> m, double tolerance_scale) {
  const F& field = m.field();
  double tau = 0.0;
  if constexpr (!F::exact) tau = field.eps() * tolerance_scale * frobenius_norm(m);

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t piv = m.rows();
    if constexpr (F::exact) {
      for (std::size_t i = r; i < m.rows(); ++i) {
        if (!field.is_zero(m(i, col))) {
          piv = i;
          break;
        }
      }
    } else {
      double best = tau;
      for (std::size_t i = r; i < m.rows(); ++i) {
        double mag = std::abs(m(i, col));
        if (mag > best) {
          best = mag;
          piv = i;
        }
      }
      if (piv == m.rows()) {
        // Below threshold: the column is numerically zero under the pivot row.
        for (std::size_t i = r; i < m.rows(); ++i) m(i, col) = field.zero();
      }
    }
    if (piv == m.rows()) continue;

    m.swap_rows(piv, r);
    const auto inv = field.one() / m(r, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    m(r, col) = field.one();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const auto f = m(i, col);
      if (field.is_zero(f)) continue;
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
      m(i, col) = field.zero();
    }
    pivots.push_back(col);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class F>
Matrix<F> hstack(const Matrix<F>& lhs, const Matrix<F>& rhs) {
  require_same_field(lhs, rhs);
  if (lhs.rows() != rhs.rows()) {
    throw DimensionMismatch("hstack: row counts " + std::to_string(lhs.rows()) + " and " +
                            std::to_string(rhs.rows()));
  }
  Matrix<F> out(lhs.field(), lhs.rows(), lhs.cols() + rhs.cols());
  out.set_block(0, 0, lhs);
  out.set_block(0, lhs.cols(), rhs);
  return out;
}

template <class F>
void require_square(const Matrix<F>& m, const char* op) {
  if (!m.is_square()) {
    throw DimensionMismatch(std::string(op) + " needs a square matrix, got " +
                            shape(m.rows(), m.cols()));
  }
}

}  // namespace detail

/// Reduced row echelon form. tolerance_scale multiplies the complex pivot
/// threshold and is ignored over exact fields.
template <class F>
RowEchelon<F> row_reduce(const Matrix<F>& m, double tolerance_scale = 1.0) {
  if constexpr (std::is_same_v<F, RationalField>) {
    return detail::rational_rref(m);
  } else {
    return detail::gauss_jordan(m, tolerance_scale);
  }
}

template <class F>
std::size_t rank(const Matrix<F>& m, double tolerance_scale = 1.0) {
  if constexpr (std::is_same_v<F, RationalField>) {
    return detail::bareiss_forward(m).pivots.size();
  } else {
    return detail::gauss_jordan(m, tolerance_scale).rank();
  }
}

/// Full solution set of A X = B: a particular solution and a nullspace
/// basis of A, or nullopt when the system is inconsistent.
template <class F>
std::optional<GeneralSolution<F>> solve_general(const Matrix<F>& a, const Matrix<F>& b) {
  detail::require_same_field(a, b);
  if (a.rows() != b.rows()) {
    throw DimensionMismatch("solve_general: A has " + std::to_string(a.rows()) +
                            " rows, B has " + std::to_string(b.rows()));
  }
  const std::size_t n = a.cols();
  const std::size_t m = b.cols();
  const RowEchelon<F> e = row_reduce(detail::hstack(a, b));

  std::vector<bool> is_pivot(n, false);
  for (std::size_t pc : e.pivots) {
    if (pc >= n) return std::nullopt;
    is_pivot[pc] = true;
  }

  GeneralSolution<F> sol{Matrix<F>(a.field(), n, m), {}};
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) sol.particular(e.pivots[i], j) = e.reduced(i, n + j);
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Matrix<F> v(a.field(), n, 1);
    v(f, 0) = a.field().one();
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v(e.pivots[i], 0) = -e.reduced(i, f);
    sol.nullspace_basis.push_back(std::move(v));
  }
  return sol;
}

template <class F>
std::vector<Matrix<F>> nullspace_basis(const Matrix<F>& a) {
  return solve_general(a, Matrix<F>(a.field(), a.rows(), 1))->nullspace_basis;
}

/// Columns of A at its pivot positions; a basis of the column space.
template <class F>
Matrix<F> column_space_basis(const Matrix<F>& a) {
  const RowEchelon<F> e = row_reduce(a);
  Matrix<F> out(a.field(), a.rows(), e.rank());
  for (std::size_t k = 0; k < e.rank(); ++k) out.set_block(0, k, a.column(e.pivots[k]));
  return out;
}

/// Throws Singular when A is not a unit of M_n(F).
template <class F>
Matrix<F> mat_inverse(const Matrix<F>& a) {
  detail::require_square(a, "mat_inverse");
  const std::size_t n = a.rows();
  if (n == 0) return a;
  const RowEchelon<F> e = row_reduce(detail::hstack(a, Matrix<F>::identity(a.field(), n)));
  if (e.rank() < n || e.pivots[n - 1] != n - 1) {
    throw Singular("matrix is singular (rank " + std::to_string(std::min(e.rank(), n)) +
                   " < " + std::to_string(n) + ")");
  }
  return e.reduced.block(0, n, n, n);
}

template <class F>
Matrix<F> mat_power(const Matrix<F>& a, std::size_t k) {
  detail::require_square(a, "mat_power");
  Matrix<F> result = Matrix<F>::identity(a.field(), a.rows());
  Matrix<F> base = a;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

/// A^n = 0. Over ComplexField: ||A^n|| <= eps * max(1, ||A||^n).
template <class F>
bool is_nilpotent(const Matrix<F>& a) {
  detail::require_square(a, "is_nilpotent");
  const Matrix<F> top = mat_power(a, a.rows());
  if constexpr (F::exact) {
    return top.is_zero();
  } else {
    const double scale = std::max(1.0, std::pow(frobenius_norm(a), static_cast<double>(a.rows())));
    return frobenius_norm(top) <= a.field().eps() * scale;
  }
}

/// Whether X lies in span{I, A, ..., A^(n-1)}, i.e. X is a polynomial in A.
/// Over a field this is exactly membership in the double commutant.
template <class F>
bool poly_span_membership(const Matrix<F>& a, const Matrix<F>& x) {
  detail::require_square(a, "poly_span_membership");
  detail::require_same_shape(a, x, "poly_span_membership");
  const std::size_t n = a.rows();
  Matrix<F> system(a.field(), n * n, n);
  Matrix<F> rhs(a.field(), n * n, 1);
  Matrix<F> power = Matrix<F>::identity(a.field(), n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n * n; ++k) system(k, j) = power.entries()[k];
    if (j + 1 < n) power = power * a;
  }
  for (std::size_t k = 0; k < n * n; ++k) rhs(k, 0) = x.entries()[k];
  return solve_general(system, rhs).has_value();
}

}  // namespace drazinlab
