#pragma once

// Drazin inverse through the core-nilpotent (Fitting) decomposition.
//
// With k the index of A, the column space U of A^k and the null space V of
// A^k are complementary and A-invariant. In the basis S = [U | V]
//     S^{-1} A S = diag(C, N),  C invertible, N nilpotent,
// and A^D = S diag(C^{-1}, 0) S^{-1}.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "drazinlab/linalg.hpp"

namespace drazinlab {

template <class F>
struct DrazinDecomposition {
  std::size_t index = 0;
  Matrix<F> inverse;     // A^D
  Matrix<F> idempotent;  // A^pi = I - A A^D
  std::size_t core_rank = 0;
  // Largest relative residual of XAX=X, AX=XA, A^{k+1}X=A^k. Only
  // computed over ComplexField; zero over exact fields.
  double residual = 0.0;
};

namespace axiom {
inline constexpr const char* kReflexive = "XAX=X";
inline constexpr const char* kCommutes = "AX=XA";
inline constexpr const char* kNilpotentDefect = "A-A^2X nilpotent";
inline constexpr const char* kPolynomial = "X polynomial in A";
inline constexpr const char* kInner = "AXA=A";
}  // namespace axiom

struct AxiomReport {
  bool ok = true;
  std::vector<std::string> failed;
  std::map<std::string, double> residuals;

  void record(const std::string& name, bool holds, double residual) {
    residuals[name] = residual;
    if (!holds) {
      ok = false;
      failed.push_back(name);
    }
  }
};

namespace detail {

// Ratio between the two pivot thresholds used to decide whether a
// floating-point rank is unambiguous.
inline constexpr double kRankAmbiguityScale = 1e3;

template <class F>
std::size_t checked_rank(const Matrix<F>& m) {
  const std::size_t r = rank(m);
  if constexpr (!F::exact) {
    if (rank(m, kRankAmbiguityScale) != r) {
      throw NumericalRankAmbiguous("rank changes between pivot thresholds " +
                                   std::to_string(m.field().eps()) + " and " +
                                   std::to_string(m.field().eps() * kRankAmbiguityScale));
    }
  }
  return r;
}

template <class F>
struct IndexScan {
  std::size_t index;
  Matrix<F> power;  // A^index
  std::size_t rank;
};

// Smallest k with rank(A^k) = rank(A^{k+1}); at most n steps since the
// rank sequence strictly decreases before the plateau.
template <class F>
IndexScan<F> scan_index(const Matrix<F>& a, bool checked) {
  require_square(a, "index_of");
  const std::size_t n = a.rows();
  Matrix<F> power = Matrix<F>::identity(a.field(), n);
  std::size_t prev = n;
  for (std::size_t k = 0; k <= n; ++k) {
    Matrix<F> next = power * a;
    const std::size_t r = checked ? checked_rank(next) : rank(next);
    if (r == prev) return {k, std::move(power), prev};
    prev = r;
    power = std::move(next);
  }
  // Unreachable over a field: the rank cannot drop more than n times.
  throw NumericalRankAmbiguous("rank sequence did not stabilise within n steps");
}

template <class F>
double relative_nilpotency_residual(const Matrix<F>& m) {
  const double scale =
      std::max(1.0, std::pow(frobenius_norm(m), static_cast<double>(m.rows())));
  return frobenius_norm(mat_power(m, m.rows())) / scale;
}

}  // namespace detail

template <class F>
std::size_t index_of(const Matrix<F>& a) {
  return detail::scan_index(a, false).index;
}

/// Drazin inverse, index and spectral idempotent of a square matrix.
/// Throws NumericalRankAmbiguous over ComplexField when the rank plateau
/// cannot be resolved at the field tolerance.
template <class F>
DrazinDecomposition<F> drazin_inverse(const Matrix<F>& a) {
  detail::IndexScan<F> scan = detail::scan_index(a, true);
  const std::size_t n = a.rows();
  const F& field = a.field();
  const Matrix<F> identity = Matrix<F>::identity(field, n);

  DrazinDecomposition<F> out{scan.index, Matrix<F>(field, n, n), identity, scan.rank, 0.0};
  if (scan.rank == 0) return out;  // nilpotent: A^D = 0, A^pi = I
  if (scan.index == 0) {
    out.inverse = mat_inverse(a);
    out.idempotent = Matrix<F>(field, n, n);
  } else {
    const Matrix<F> core_basis = column_space_basis(scan.power);
    const std::vector<Matrix<F>> null_basis = nullspace_basis(scan.power);
    if (core_basis.cols() != scan.rank || core_basis.cols() + null_basis.size() != n) {
      throw NumericalRankAmbiguous("column space and null space of A^k do not split F^n");
    }
    Matrix<F> s(field, n, n);
    s.set_block(0, 0, core_basis);
    for (std::size_t j = 0; j < null_basis.size(); ++j) s.set_block(0, scan.rank + j, null_basis[j]);

    const Matrix<F> s_inv = mat_inverse(s);
    const Matrix<F> core = (s_inv * a * s).block(0, 0, scan.rank, scan.rank);
    Matrix<F> padded(field, n, n);
    padded.set_block(0, 0, mat_inverse(core));
    out.inverse = s * padded * s_inv;
    out.idempotent = identity - a * out.inverse;
  }

  if constexpr (!F::exact) {
    const Matrix<F>& x = out.inverse;
    const Matrix<F> ak = mat_power(a, out.index);
    out.residual = std::max({relative_residual(x * a * x, x), relative_residual(a * x, x * a),
                             relative_residual(ak * a * x, ak)});
  }
  return out;
}

/// A^# for matrices of index at most one.
template <class F>
Matrix<F> group_inverse(const Matrix<F>& a) {
  DrazinDecomposition<F> dec = drazin_inverse(a);
  if (dec.index > 1) {
    throw NotGroupInvertible("index " + std::to_string(dec.index) + " exceeds 1");
  }
  return std::move(dec.inverse);
}

template <class F>
Matrix<F> spectral_idempotent(const Matrix<F>& a) {
  return drazin_inverse(a).idempotent;
}

/// Independent oracle: X is the Drazin inverse of A iff XAX = X, AX = XA,
/// A - A^2 X is nilpotent and X is a polynomial in A. Uniqueness of the
/// inverse makes this a complete certificate.
template <class F>
AxiomReport verify_drazin_axioms(const Matrix<F>& a, const Matrix<F>& x) {
  detail::require_square(a, "verify_drazin_axioms");
  detail::require_same_shape(a, x, "verify_drazin_axioms");
  AxiomReport report;
  const Matrix<F> xa = x * a;
  const Matrix<F> ax = a * x;
  const Matrix<F> xax = xa * x;
  report.record(axiom::kReflexive, mat_equal(xax, x), relative_residual(xax, x));
  report.record(axiom::kCommutes, mat_equal(ax, xa), relative_residual(ax, xa));
  const Matrix<F> defect = a - a * ax;
  report.record(axiom::kNilpotentDefect, is_nilpotent(defect),
                detail::relative_nilpotency_residual(defect));
  const bool poly = poly_span_membership(a, x);
  report.record(axiom::kPolynomial, poly, poly ? 0.0 : 1.0);
  return report;
}

/// Group inverse axioms: XAX = X, AX = XA, AXA = A.
template <class F>
AxiomReport verify_group_axioms(const Matrix<F>& a, const Matrix<F>& x) {
  detail::require_square(a, "verify_group_axioms");
  detail::require_same_shape(a, x, "verify_group_axioms");
  AxiomReport report;
  const Matrix<F> ax = a * x;
  const Matrix<F> xa = x * a;
  const Matrix<F> xax = xa * x;
  const Matrix<F> axa = ax * a;
  report.record(axiom::kReflexive, mat_equal(xax, x), relative_residual(xax, x));
  report.record(axiom::kCommutes, mat_equal(ax, xa), relative_residual(ax, xa));
  report.record(axiom::kInner, mat_equal(axa, a), relative_residual(axa, a));
  return report;
}

}  // namespace drazinlab
