#include "drazinlab/example34.hpp"

namespace drazinlab {

namespace {

using Q = RationalField;
using M = Matrix<Q>;

M zero2() { return M(Q{}, 2, 2); }

}  // namespace

Example34Report example34_report() {
  const Triple<Q> t = example34_triple();
  const M& a = t.a;
  const M& b = t.b;
  const M& c = t.c;
  const M ac = a * c;
  const M ca = c * a;
  const M ab = a * b;
  const M ba = b * a;
  const M ac_d = drazin_inverse(ac).inverse;
  const M ca_d = drazin_inverse(ca).inverse;
  const M ba_d = drazin_inverse(ba).inverse;
  const M ab_d = drazin_inverse(ab).inverse;

  Example34Report report;
  report.table = json::array();
  auto row = [&](const std::string& quantity, const std::optional<M>& claimed, const M& computed) {
    json entry = {{"quantity", quantity}, {"computed", to_json(computed)}};
    if (claimed) {
      entry["claimed"] = to_json(*claimed);
      entry["agrees"] = mat_equal(*claimed, computed);
    } else {
      entry["claimed"] = nullptr;
      entry["agrees"] = nullptr;
    }
    report.table.push_back(std::move(entry));
  };
  const M upper = M::from_ints(Q{}, {{0, 1}, {0, 0}});
  const M right_column = M::from_ints(Q{}, {{0, 1}, {0, 1}});
  row("a(ca)^2", zero2(), a * ca * ca);
  row("(ab)^2a", zero2(), ab * ab * a);
  row("aca", upper, a * ca);
  row("aba", zero2(), ab * a);
  row("ac", std::nullopt, ac);
  row("ca", std::nullopt, ca);
  row("(ac)^D", right_column, ac_d);
  row("(ca)^D", std::nullopt, ca_d);
  row("(ba)^D", zero2(), ba_d);
  row("(ab)^D", std::nullopt, ab_d);

  report.conditions = json::array({to_json(check_condition(a, b, c, ConditionId::C5)),
                                   to_json(check_condition(a, b, c, ConditionId::C6))});

  const bool ba_d_zero = ba_d.is_zero();
  const bool ca_idempotent = mat_equal(ca * ca, ca);
  const bool ca_d_fixed = mat_equal(ca_d, ca);
  const bool ca_d_value = mat_equal(ca_d, right_column);
  report.verified = {{"(ba)^D = 0", ba_d_zero},
                     {"ca idempotent", ca_idempotent},
                     {"(ca)^D = ca", ca_d_fixed},
                     {"(ca)^D = [[0,1],[0,1]]", ca_d_value}};
  report.pass = ba_d_zero && ca_idempotent && ca_d_fixed && ca_d_value;
  return report;
}

json to_json(const Example34Report& report) {
  return {{"table", report.table},
          {"conditions", report.conditions},
          {"verified", report.verified},
          {"pass", report.pass}};
}

}  // namespace drazinlab
