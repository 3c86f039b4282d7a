#pragma once

// Entwining conditions on (a, b, c, d) and the closed-form Cline and
// Jacobson formulas they license. Every formula evaluation carries the
// oracle verdict of verify_drazin_axioms against its target element and a
// comparison with the constructive Drazin inverse of that target.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "drazinlab/drazin.hpp"

namespace drazinlab {

enum class ConditionId { C1, C2, C3, C4, C5, C6 };

std::string to_string(ConditionId id);
/// Throws ParseError for anything other than "C1".."C6".
ConditionId parse_condition(std::string_view text);
/// C4..C6 only read the triple (a, b, c).
inline bool is_triple_condition(ConditionId id) {
  return id == ConditionId::C4 || id == ConditionId::C5 || id == ConditionId::C6;
}

template <class F>
struct Quadruple {
  Matrix<F> a, b, c, d;
  std::string provenance = "user";

  std::size_t dim() const noexcept { return a.rows(); }
  const F& field() const noexcept { return a.field(); }
};

/// Throws DimensionMismatch / FieldMismatch unless a, b, c, d are square of
/// one size over one field.
template <class F>
void validate(const Quadruple<F>& q) {
  const std::size_t n = q.a.rows();
  for (const Matrix<F>* m : {&q.a, &q.b, &q.c, &q.d}) {
    if (m->rows() != n || m->cols() != n) {
      throw DimensionMismatch("quadruple entries must be square matrices of one size " +
                              std::to_string(n));
    }
    detail::require_same_field(q.a, *m);
  }
}

/// The triple (a, b, c) viewed as a quadruple with d := a.
template <class F>
Quadruple<F> embed_triple(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c,
                          std::string provenance = "triple") {
  Quadruple<F> q{a, b, c, a, std::move(provenance)};
  validate(q);
  return q;
}

struct Equality {
  std::string name;
  bool holds = false;
  double residual = 0.0;  // relative Frobenius distance of the two sides
};

struct ConditionReport {
  ConditionId id = ConditionId::C1;
  std::vector<Equality> equalities;
  bool all_hold = true;
};

enum class Enforcement { kStrict, kForce };

template <class F>
struct FormulaResult {
  std::string formula;
  Matrix<F> value;
  Matrix<F> target;
  ConditionReport precondition;
  bool oracle_ok = false;
  AxiomReport oracle;
  bool matches_constructive = false;  // value == drazin_inverse(target).inverse
  double constructive_residual = 0.0;
};

struct HierarchyReport {
  bool strong = false;  // C3 (quadruple) or C5 (triple)
  bool middle = false;  // C1 or C4
  bool weak = false;    // C2 or C6
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

struct TransferReport {
  ConditionReport lemma_conditions;  // reported under id C1, two equalities
  bool ac_nilpotent = false;
  bool bd_nilpotent = false;
  bool consistent = true;
};

struct ObligationReport {
  bool y_beta_y = false;        // y beta y = y
  bool commutes = false;        // beta y = y beta
  bool defect_nilpotent = false;  // beta - beta y beta nilpotent
  bool polynomial = false;      // y in span{beta^j}
  bool all() const noexcept { return y_beta_y && commutes && defect_nilpotent && polynomial; }
};

struct VersionReport {
  std::size_t index_ac = 0, index_bd = 0, index_alpha = 0, index_beta = 0;
  std::optional<bool> cline_drazin;     // evaluated when C2 holds
  std::optional<bool> jacobson_drazin;  // evaluated when C1 holds
  bool ok() const noexcept { return cline_drazin.value_or(true) && jacobson_drazin.value_or(true); }
};

namespace detail {

template <class F>
Equality equality(std::string name, const Matrix<F>& lhs, const Matrix<F>& rhs) {
  return {std::move(name), mat_equal(lhs, rhs), relative_residual(lhs, rhs)};
}

inline ConditionReport finish(ConditionId id, std::vector<Equality> eqs) {
  ConditionReport r{id, std::move(eqs), true};
  for (const auto& e : r.equalities) r.all_hold = r.all_hold && e.holds;
  return r;
}

inline void enforce(const ConditionReport& report, Enforcement mode) {
  if (mode == Enforcement::kStrict && !report.all_hold) {
    std::string failed;
    for (const auto& e : report.equalities) {
      if (!e.holds) failed += (failed.empty() ? "" : ", ") + e.name;
    }
    throw PreconditionFailed(to_string(report.id),
                             "condition " + to_string(report.id) + " fails: " + failed);
  }
}

template <class F>
FormulaResult<F> certify(std::string formula, Matrix<F> value, Matrix<F> target,
                         ConditionReport precondition) {
  FormulaResult<F> r{std::move(formula), std::move(value), std::move(target),
                     std::move(precondition), false, {}};
  r.oracle = verify_drazin_axioms(r.target, r.value);
  r.oracle_ok = r.oracle.ok;
  const Matrix<F> constructive = drazin_inverse(r.target).inverse;
  r.matches_constructive = mat_equal(r.value, constructive);
  r.constructive_residual = relative_residual(r.value, constructive);
  return r;
}

// [1 - acd p M^{-1} bac](1 + ac + (ac)^2) + acd x bac with
// M = 1 - alpha p (1 + bd + (bd)^2); p and x come from alpha = 1 - bd.
template <class F>
Matrix<F> jacobson_value(const Quadruple<F>& q, const Matrix<F>& x, const Matrix<F>& p,
                         bool with_resolvent) {
  const Matrix<F> id = Matrix<F>::identity(q.field(), q.dim());
  const Matrix<F> ac = q.a * q.c;
  const Matrix<F> bd = q.b * q.d;
  const Matrix<F> alpha = id - bd;
  const Matrix<F> acd = ac * q.d;
  const Matrix<F> bac = q.b * ac;

  Matrix<F> middle = p;
  if (with_resolvent) {
    const Matrix<F> resolvent = id - alpha * p * (id + bd + bd * bd);
    try {
      middle = p * mat_inverse(resolvent);
    } catch (const Singular&) {
      throw ResolventSingular("1 - alpha*alpha^pi*(1 + bd + (bd)^2) is singular");
    }
  }
  return (id - acd * middle * bac) * (id + ac + ac * ac) + acd * x * bac;
}

}  // namespace detail

template <class F>
ConditionReport check_condition(const Quadruple<F>& q, ConditionId id) {
  validate(q);
  const Matrix<F>& a = q.a;
  const Matrix<F>& b = q.b;
  const Matrix<F>& c = q.c;
  const Matrix<F>& d = q.d;
  using detail::equality;
  switch (id) {
    case ConditionId::C1: {
      const Matrix<F> ac = a * c, db = d * b;
      const Matrix<F> acac = ac * ac, acdb = ac * db, dbac = db * ac, dbdb = db * db;
      return detail::finish(id, {
          equality("b(ac)^2=b(ac)(db)", b * acac, b * acdb),
          equality("b(ac)(db)=b(db)(ac)", b * acdb, b * dbac),
          equality("b(db)(ac)=b(db)^2", b * dbac, b * dbdb),
          equality("c(ac)^2=c(ac)(db)", c * acac, c * acdb),
          equality("c(ac)(db)=c(db)(ac)", c * acdb, c * dbac),
          equality("c(db)(ac)=c(db)^2", c * dbac, c * dbdb),
      });
    }
    case ConditionId::C2: {
      const Matrix<F> ac = a * c, db = d * b;
      const Matrix<F> acac = ac * ac, dbdb = db * db;
      return detail::finish(id, {
          equality("b(ac)^2=b(db)^2", b * acac, b * dbdb),
          equality("c(ac)^2=c(db)^2", c * acac, c * dbdb),
      });
    }
    case ConditionId::C3: {
      const Matrix<F> ac = a * c, db = d * b;
      return detail::finish(id, {
          equality("bac=bdb", b * ac, b * db),
          equality("cac=cdb", c * ac, c * db),
      });
    }
    case ConditionId::C4: {
      const Matrix<F> ac = a * c, ab = a * b;
      const Matrix<F> aca = ac * a, aba = ab * a;
      const Matrix<F> acaca = ac * aca, acaba = ac * aba, abaca = ab * aca, ababa = ab * aba;
      return detail::finish(id, {
          equality("(ac)^2a=acaba", acaca, acaba),
          equality("acaba=abaca", acaba, abaca),
          equality("abaca=a(ba)^2", abaca, ababa),
      });
    }
    case ConditionId::C5:
      return detail::finish(id, {equality("aba=aca", a * b * a, a * c * a)});
    case ConditionId::C6: {
      const Matrix<F> ca = c * a, ab = a * b;
      return detail::finish(id, {equality("a(ca)^2=(ab)^2a", a * ca * ca, ab * ab * a)});
    }
  }
  throw ParseError("unknown condition");
}

template <class F>
ConditionReport check_condition(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c,
                                ConditionId id) {
  return check_condition(embed_triple(a, b, c), id);
}

/// C3 => C1 => C2 on the quadruple.
template <class F>
HierarchyReport condition_hierarchy_check(const Quadruple<F>& q) {
  HierarchyReport r;
  r.strong = check_condition(q, ConditionId::C3).all_hold;
  r.middle = check_condition(q, ConditionId::C1).all_hold;
  r.weak = check_condition(q, ConditionId::C2).all_hold;
  if (r.strong && !r.middle) r.violations.push_back("C3 holds but C1 fails");
  if (r.middle && !r.weak) r.violations.push_back("C1 holds but C2 fails");
  return r;
}

/// C5 => C4 => C6 on the triple.
template <class F>
HierarchyReport triple_hierarchy_check(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c) {
  const Quadruple<F> q = embed_triple(a, b, c);
  HierarchyReport r;
  r.strong = check_condition(q, ConditionId::C5).all_hold;
  r.middle = check_condition(q, ConditionId::C4).all_hold;
  r.weak = check_condition(q, ConditionId::C6).all_hold;
  if (r.strong && !r.middle) r.violations.push_back("C5 holds but C4 fails");
  if (r.middle && !r.weak) r.violations.push_back("C4 holds but C6 fails");
  return r;
}

/// (bd)^d = b ((ac)^d)^2 d under C1.
template <class F>
FormulaResult<F> cline_full(const Quadruple<F>& q, Enforcement mode = Enforcement::kStrict) {
  ConditionReport pre = check_condition(q, ConditionId::C1);
  detail::enforce(pre, mode);
  const Matrix<F> h = drazin_inverse(q.a * q.c).inverse;
  return detail::certify("cline_full", q.b * h * h * q.d, q.b * q.d, std::move(pre));
}

/// Same formula under the two-equality hypothesis C2.
template <class F>
FormulaResult<F> cline_two_condition(const Quadruple<F>& q, Enforcement mode = Enforcement::kStrict) {
  ConditionReport pre = check_condition(q, ConditionId::C2);
  detail::enforce(pre, mode);
  const Matrix<F> h = drazin_inverse(q.a * q.c).inverse;
  return detail::certify("cline_two_condition", q.b * h * h * q.d, q.b * q.d, std::move(pre));
}

/// (ba)^d = b ((ac)^d)^2 a under C4.
template <class F>
FormulaResult<F> cline_triple(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c,
                              Enforcement mode = Enforcement::kStrict) {
  ConditionReport pre = check_condition(a, b, c, ConditionId::C4);
  detail::enforce(pre, mode);
  const Matrix<F> h = drazin_inverse(a * c).inverse;
  return detail::certify("cline_triple", b * h * h * a, b * a, std::move(pre));
}

/// (ba)^D = b ((ac)^D)^2 a under C6: a(ca)^2 = (ab)^2 a.
template <class F>
FormulaResult<F> cline_triple_c6(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c,
                                 Enforcement mode = Enforcement::kStrict) {
  ConditionReport pre = check_condition(a, b, c, ConditionId::C6);
  detail::enforce(pre, mode);
  const Matrix<F> h = drazin_inverse(a * c).inverse;
  return detail::certify("cline_triple_c6", b * h * h * a, b * a, std::move(pre));
}

/// Lemma conditions b(db)(ac) = b(db)^2 and c(ac)(db) = c(db)^2, then the
/// implication "ac nilpotent => bd nilpotent".
template <class F>
TransferReport nilpotent_transfer(const Quadruple<F>& q, Enforcement mode = Enforcement::kStrict) {
  validate(q);
  const Matrix<F> ac = q.a * q.c, db = q.d * q.b;
  TransferReport r;
  r.lemma_conditions = detail::finish(
      ConditionId::C1, {detail::equality("b(db)(ac)=b(db)^2", q.b * db * ac, q.b * db * db),
                        detail::equality("c(ac)(db)=c(db)^2", q.c * ac * db, q.c * db * db)});
  if (mode == Enforcement::kStrict && !r.lemma_conditions.all_hold) {
    throw PreconditionFailed("nilpotent transfer", "nilpotent transfer conditions fail");
  }
  r.ac_nilpotent = is_nilpotent(ac);
  r.bd_nilpotent = is_nilpotent(q.b * q.d);
  r.consistent = !r.ac_nilpotent || r.bd_nilpotent;
  return r;
}

/// beta^d for beta = 1 - ac from alpha = 1 - bd under C1.
template <class F>
FormulaResult<F> jacobson_gdrazin(const Quadruple<F>& q, Enforcement mode = Enforcement::kStrict) {
  ConditionReport pre = check_condition(q, ConditionId::C1);
  detail::enforce(pre, mode);
  const Matrix<F> id = Matrix<F>::identity(q.field(), q.dim());
  const DrazinDecomposition<F> alpha = drazin_inverse(id - q.b * q.d);
  return detail::certify("jacobson_gdrazin",
                         detail::jacobson_value(q, alpha.inverse, alpha.idempotent, true),
                         id - q.a * q.c, std::move(pre));
}

/// Triple form: C4 on (a, b, c), evaluated as the quadruple (a, b, c, a),
/// i.e. beta = 1 - ac from alpha = 1 - ba.
template <class F>
FormulaResult<F> jacobson_triple(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c,
                                 Enforcement mode = Enforcement::kStrict) {
  ConditionReport pre = check_condition(a, b, c, ConditionId::C4);
  detail::enforce(pre, mode);
  const Quadruple<F> q = embed_triple(a, b, c);
  const Matrix<F> id = Matrix<F>::identity(q.field(), q.dim());
  const DrazinDecomposition<F> alpha = drazin_inverse(id - b * a);
  return detail::certify("jacobson_triple",
                         detail::jacobson_value(q, alpha.inverse, alpha.idempotent, true),
                         id - a * c, std::move(pre));
}

/// beta^# = [1 - acd alpha^pi bac](1 + ac + (ac)^2) + acd alpha^# bac.
/// Throws NotGroupInvertible when index(1 - bd) >= 2. The oracle verdict
/// covers the group inverse axioms and index(1 - ac) <= 1.
template <class F>
FormulaResult<F> jacobson_group(const Quadruple<F>& q, Enforcement mode = Enforcement::kStrict) {
  ConditionReport pre = check_condition(q, ConditionId::C1);
  detail::enforce(pre, mode);
  const Matrix<F> id = Matrix<F>::identity(q.field(), q.dim());
  const Matrix<F> alpha = id - q.b * q.d;
  const DrazinDecomposition<F> dec = drazin_inverse(alpha);
  if (dec.index > 1) {
    throw NotGroupInvertible("alpha = 1 - bd has index " + std::to_string(dec.index));
  }
  Matrix<F> beta = id - q.a * q.c;
  FormulaResult<F> r{"jacobson_group", detail::jacobson_value(q, dec.inverse, dec.idempotent, false),
                     beta, std::move(pre), false, {}};
  r.oracle = verify_group_axioms(r.target, r.value);
  const std::size_t beta_index = index_of(beta);
  r.oracle.record("index(1-ac)<=1", beta_index <= 1, static_cast<double>(beta_index));
  r.oracle_ok = r.oracle.ok;
  const Matrix<F> constructive = drazin_inverse(beta).inverse;
  r.matches_constructive = mat_equal(r.value, constructive);
  r.constructive_residual = relative_residual(r.value, constructive);
  return r;
}

/// The three proof steps of the Jacobson formula, restated for the matrix
/// model: y beta y = y, beta y = y beta, beta - beta y beta nilpotent and y
/// a polynomial in beta.
template <class F>
ObligationReport jacobson_proof_obligations(const Quadruple<F>& q,
                                            Enforcement mode = Enforcement::kStrict) {
  const FormulaResult<F> r = jacobson_gdrazin(q, mode);
  const Matrix<F>& y = r.value;
  const Matrix<F>& beta = r.target;
  ObligationReport o;
  const Matrix<F> by = beta * y;
  o.y_beta_y = mat_equal(y * by, y);
  o.commutes = mat_equal(by, y * beta);
  o.defect_nilpotent = is_nilpotent(beta - by * beta);
  o.polynomial = poly_span_membership(beta, y);
  return o;
}

/// Index bookkeeping for ac, bd, alpha, beta plus the Drazin-inverse
/// versions of the Cline (C2) and Jacobson (C1) formulas where they apply.
template <class F>
VersionReport drazin_version_check(const Quadruple<F>& q) {
  validate(q);
  const Matrix<F> id = Matrix<F>::identity(q.field(), q.dim());
  const Matrix<F> ac = q.a * q.c, bd = q.b * q.d;
  VersionReport r;
  r.index_ac = index_of(ac);
  r.index_bd = index_of(bd);
  r.index_alpha = index_of(id - bd);
  r.index_beta = index_of(id - ac);
  if (check_condition(q, ConditionId::C2).all_hold) {
    r.cline_drazin = cline_two_condition(q).matches_constructive;
  }
  if (check_condition(q, ConditionId::C1).all_hold) {
    r.jacobson_drazin = jacobson_gdrazin(q).matches_constructive;
  }
  return r;
}

}  // namespace drazinlab
