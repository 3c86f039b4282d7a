#pragma once

// JSON encodings shared by the CLI and the campaign reports.
//
//   matrix:    {"field":"rational"|"gfp"|"complex", "p":<gfp only>,
//               "eps":<complex only, optional>, "rows":[[entry,...],...]}
//   quadruple: {"a":<matrix>, "b":..., "c":..., "d":...}   (d optional)
//   GenSpec:   {"strategy":"mosic", "field":"gfp", "p":5, "dim":3,
//               "seed":42, "entry_bound":3}
//
// Rational entries are integers or "num/den" strings, GF(p) entries are
// integers, complex entries are [re, im] pairs.

#include <variant>

#include <json.hpp>

#include "drazinlab/quadgen.hpp"

namespace drazinlab {

using json = nlohmann::json;

using AnyMatrix = std::variant<Matrix<RationalField>, Matrix<PrimeField>, Matrix<ComplexField>>;
using AnyQuadruple =
    std::variant<Quadruple<RationalField>, Quadruple<PrimeField>, Quadruple<ComplexField>>;

json scalar_to_json(const Rational& x);
json scalar_to_json(const Zp& x);
json scalar_to_json(const Complex& x);

/// Parses "num/den" or an integer string; throws ParseError.
Rational parse_rational(const std::string& text);

json field_to_json(const FieldSpec& field);
/// Reads "field", "p" and "eps" from obj. default_eps applies to complex
/// fields without an explicit "eps".
FieldSpec field_from_json(const json& obj, double default_eps = kDefaultComplexEps);

template <class F>
json to_json(const Matrix<F>& m) {
  json out = field_to_json(m.field());
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  out["rows"] = std::move(rows);
  return out;
}

AnyMatrix matrix_from_json(const json& obj, double default_eps = kDefaultComplexEps);

struct ParsedQuadruple {
  AnyQuadruple quadruple;
  bool has_d = true;  // false: "d" was absent and has been set to a
};

/// All matrices must share one field and one square size; otherwise
/// ParseError, DimensionMismatch or FieldMismatch.
ParsedQuadruple quadruple_from_json(const json& obj, double default_eps = kDefaultComplexEps);

template <class F>
json to_json(const Quadruple<F>& q) {
  return {{"a", to_json(q.a)}, {"b", to_json(q.b)}, {"c", to_json(q.c)}, {"d", to_json(q.d)},
          {"provenance", q.provenance}};
}

json to_json(const ConditionReport& r);
json to_json(const AxiomReport& r);
json to_json(const HierarchyReport& r);
json to_json(const TransferReport& r);
json to_json(const ObligationReport& r);
json to_json(const VersionReport& r);

template <class F>
json to_json(const DrazinDecomposition<F>& d) {
  json out = {{"index", d.index},
              {"inverse", to_json(d.inverse)},
              {"idempotent", to_json(d.idempotent)},
              {"core_rank", d.core_rank}};
  if constexpr (!F::exact) out["residual"] = d.residual;
  return out;
}

template <class F>
json to_json(const FormulaResult<F>& r) {
  json residuals = to_json(r.oracle)["residuals"];
  residuals["vs_constructive"] = r.constructive_residual;
  return {{"formula", r.formula},
          {"value", to_json(r.value)},
          {"target", to_json(r.target)},
          {"oracle_ok", r.oracle_ok},
          {"failed_axioms", r.oracle.failed},
          {"matches_constructive", r.matches_constructive},
          {"precondition", to_json(r.precondition)},
          {"residuals", std::move(residuals)}};
}

json to_json(const GenSpec& spec);
GenSpec genspec_from_json(const json& obj, double default_eps = kDefaultComplexEps);

}  // namespace drazinlab
