#include "drazinlab/json_io.hpp"

#include <array>
#include <cctype>
#include <limits>

namespace drazinlab {

namespace {

bool is_integer_text(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string s) {
  if (!is_integer_text(s)) throw ParseError("not an integer: '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s);
}

const json& member(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(std::string("missing key \"") + key + "\"");
  }
  return obj.at(key);
}

long long entry_as_integer(const json& e) {
  if (!e.is_number_integer()) throw ParseError("GF(p) entries must be integers, got " + e.dump());
  if (e.is_number_unsigned()) {
    auto u = e.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(std::numeric_limits<long long>::max())) {
      throw ParseError("integer entry out of range: " + e.dump());
    }
    return static_cast<long long>(u);
  }
  return e.get<long long>();
}

Rational rational_entry(const json& e) {
  if (e.is_number_integer()) {
    return e.is_number_unsigned() ? Rational(e.get<std::uint64_t>()) : Rational(e.get<long long>());
  }
  if (e.is_string()) return parse_rational(e.get<std::string>());
  throw ParseError("rational entries must be integers or \"num/den\" strings, got " + e.dump());
}

Complex complex_entry(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw ParseError("complex entries must be [re, im] pairs, got " + e.dump());
}

template <class F, class Convert>
Matrix<F> build(const F& field, const json& rows, Convert convert) {
  if (!rows.is_array() || rows.empty()) throw ParseError("\"rows\" must be a non-empty array");
  const std::size_t r = rows.size();
  if (!rows[0].is_array() || rows[0].empty()) throw ParseError("each row must be a non-empty array");
  const std::size_t c = rows[0].size();
  Matrix<F> m(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!rows[i].is_array() || rows[i].size() != c) throw ParseError("ragged \"rows\"");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = convert(rows[i][j]);
  }
  return m;
}

template <class F>
Quadruple<F> assemble(const std::array<AnyMatrix, 4>& parts) {
  for (const auto& p : parts) {
    if (!std::holds_alternative<Matrix<F>>(p)) throw FieldMismatch("quadruple mixes fields");
  }
  Quadruple<F> q{std::get<Matrix<F>>(parts[0]), std::get<Matrix<F>>(parts[1]),
                 std::get<Matrix<F>>(parts[2]), std::get<Matrix<F>>(parts[3]), "user"};
  validate(q);
  return q;
}

}  // namespace

json scalar_to_json(const Rational& x) {
  if (denominator(x) == 1) {
    const Integer num = numerator(x);
    if (num >= std::numeric_limits<long long>::min() && num <= std::numeric_limits<long long>::max()) {
      return num.convert_to<long long>();
    }
    return num.str();
  }
  return numerator(x).str() + "/" + denominator(x).str();
}

json scalar_to_json(const Zp& x) { return x.value(); }

json scalar_to_json(const Complex& x) { return json::array({x.real(), x.imag()}); }

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  std::string den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw ParseError("denominator must be unsigned: '" + text + "'");
  }
  Integer den = parse_integer(den_text);
  if (den == 0) throw ParseError("zero denominator: '" + text + "'");
  return Rational(num, den);
}

json field_to_json(const FieldSpec& field) {
  return std::visit(
      [](const auto& f) -> json {
        using F = std::decay_t<decltype(f)>;
        json out = {{"field", f.name()}};
        if constexpr (std::is_same_v<F, PrimeField>) out["p"] = f.p();
        if constexpr (std::is_same_v<F, ComplexField>) out["eps"] = f.eps();
        return out;
      },
      field);
}

FieldSpec field_from_json(const json& obj, double default_eps) {
  const json& kind = member(obj, "field");
  if (!kind.is_string()) throw ParseError("\"field\" must be a string");
  const std::string name = kind.get<std::string>();
  if (name == "rational") return RationalField{};
  if (name == "gfp") {
    const json& p = member(obj, "p");
    if (!p.is_number_integer() || p.get<long long>() < 2 ||
        p.get<long long>() > std::numeric_limits<std::uint32_t>::max()) {
      throw ParseError("\"p\" must be an integer modulus >= 2");
    }
    try {
      return PrimeField(p.get<std::uint32_t>());
    } catch (const InvalidField& e) {
      throw ParseError(e.what());
    }
  }
  if (name == "complex") {
    double eps = default_eps;
    if (obj.contains("eps")) {
      if (!obj["eps"].is_number()) throw ParseError("\"eps\" must be a number");
      eps = obj["eps"].get<double>();
    }
    try {
      return ComplexField(eps);
    } catch (const InvalidField& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("unknown field '" + name + "' (expected rational, gfp or complex)");
}

AnyMatrix matrix_from_json(const json& obj, double default_eps) {
  if (!obj.is_object()) throw ParseError("matrix must be a JSON object");
  const FieldSpec field = field_from_json(obj, default_eps);
  const json& rows = member(obj, "rows");
  return std::visit(
      [&](const auto& f) -> AnyMatrix {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, RationalField>) {
          return build(f, rows, rational_entry);
        } else if constexpr (std::is_same_v<F, PrimeField>) {
          return build(f, rows, [&](const json& e) { return f.from_int(entry_as_integer(e)); });
        } else {
          return build(f, rows, complex_entry);
        }
      },
      field);
}

ParsedQuadruple quadruple_from_json(const json& obj, double default_eps) {
  if (!obj.is_object()) throw ParseError("quadruple must be a JSON object");
  const bool has_d = obj.contains("d");
  std::array<AnyMatrix, 4> parts{matrix_from_json(member(obj, "a"), default_eps),
                                 matrix_from_json(member(obj, "b"), default_eps),
                                 matrix_from_json(member(obj, "c"), default_eps),
                                 matrix_from_json(has_d ? obj.at("d") : obj.at("a"), default_eps)};
  ParsedQuadruple out{std::visit(
                          [&](const auto& first) -> AnyQuadruple {
                            using F = typename std::decay_t<decltype(first)>::Field;
                            return assemble<F>(parts);
                          },
                          parts[0]),
                      has_d};
  if (obj.contains("provenance") && obj["provenance"].is_string()) {
    std::visit([&](auto& q) { q.provenance = obj["provenance"].get<std::string>(); }, out.quadruple);
  }
  return out;
}

json to_json(const ConditionReport& r) {
  json eqs = json::array();
  for (const auto& e : r.equalities) {
    eqs.push_back({{"name", e.name}, {"holds", e.holds}, {"residual", e.residual}});
  }
  return {{"condition", to_string(r.id)}, {"all_hold", r.all_hold}, {"equalities", std::move(eqs)}};
}

json to_json(const AxiomReport& r) {
  return {{"ok", r.ok}, {"failed", r.failed}, {"residuals", r.residuals}};
}

json to_json(const HierarchyReport& r) {
  return {{"strong", r.strong}, {"middle", r.middle}, {"weak", r.weak},
          {"violations", r.violations}, {"ok", r.ok()}};
}

json to_json(const TransferReport& r) {
  return {{"lemma_conditions", to_json(r.lemma_conditions)},
          {"ac_nilpotent", r.ac_nilpotent},
          {"bd_nilpotent", r.bd_nilpotent},
          {"consistent", r.consistent}};
}

json to_json(const ObligationReport& r) {
  return {{"y_beta_y", r.y_beta_y},
          {"commutes", r.commutes},
          {"defect_nilpotent", r.defect_nilpotent},
          {"polynomial", r.polynomial},
          {"all", r.all()}};
}

json to_json(const VersionReport& r) {
  json out = {{"index_ac", r.index_ac},
              {"index_bd", r.index_bd},
              {"index_alpha", r.index_alpha},
              {"index_beta", r.index_beta},
              {"ok", r.ok()}};
  if (r.cline_drazin) out["cline_drazin"] = *r.cline_drazin;
  if (r.jacobson_drazin) out["jacobson_drazin"] = *r.jacobson_drazin;
  return out;
}

json to_json(const GenSpec& spec) {
  json out = field_to_json(spec.field);
  out["strategy"] = to_string(spec.strategy);
  out["dim"] = spec.dim;
  out["seed"] = spec.seed;
  out["entry_bound"] = spec.entry_bound;
  if (spec.strategy == Strategy::kRejection) {
    out["condition"] = to_string(spec.target);
    if (spec.exclude) out["exclude"] = to_string(*spec.exclude);
    out["budget"] = spec.budget;
  }
  return out;
}

GenSpec genspec_from_json(const json& obj, double default_eps) {
  if (!obj.is_object()) throw ParseError("GenSpec must be a JSON object");
  GenSpec spec;
  const json& strategy = member(obj, "strategy");
  if (!strategy.is_string()) throw ParseError("\"strategy\" must be a string");
  spec.strategy = parse_strategy(strategy.get<std::string>());
  spec.field = field_from_json(obj, default_eps);
  auto unsigned_member = [&](const char* key, std::uint64_t fallback) -> std::uint64_t {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)) {
      throw ParseError(std::string("\"") + key + "\" must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
  };
  spec.dim = unsigned_member("dim", spec.dim);
  if (spec.dim == 0) throw ParseError("\"dim\" must be at least 1");
  spec.seed = unsigned_member("seed", spec.seed);
  spec.entry_bound = static_cast<int>(unsigned_member("entry_bound", spec.entry_bound));
  spec.budget = unsigned_member("budget", spec.budget);
  if (obj.contains("condition")) spec.target = parse_condition(obj.at("condition").get<std::string>());
  if (obj.contains("exclude")) spec.exclude = parse_condition(obj.at("exclude").get<std::string>());
  return spec;
}

}  // namespace drazinlab
