#include "drazinlab/campaign.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

namespace drazinlab {

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <class F>
double residual_of(const FormulaResult<F>& r) {
  double worst = r.constructive_residual;
  for (const auto& [name, value] : r.oracle.residuals) {
    if (name == axiom::kPolynomial || name == "index(1-ac)<=1") continue;
    worst = std::max(worst, value);
  }
  return worst;
}

class TrialRecorder {
 public:
  explicit TrialRecorder(TrialReport& report) : report_(report) {}

  template <class F>
  void formula(const FormulaResult<F>& r, bool asserted) {
    FormulaSummary s{r.oracle_ok, r.matches_constructive, residual_of(r), asserted, r.oracle.failed};
    const bool ok = s.oracle_ok && s.matches_constructive;
    if constexpr (!F::exact) report_.max_residual = std::max(report_.max_residual, s.residual);
    if (asserted && !ok) report_.failures.push_back(r.formula + ": oracle rejected the closed form");
    if (!asserted) {
      report_.notes.push_back(r.formula + (ok ? ": exploratory, agrees" : ": exploratory, disagrees"));
      ++report_.tallies[ok ? "exploratory_agree" : "exploratory_disagree"];
    }
    report_.formulas[r.formula] = std::move(s);
  }

  void check(const std::string& name, bool ok) {
    report_.checks[name] = ok;
    if (!ok) report_.failures.push_back(name + " failed");
  }

  void tally(const std::string& name) { ++report_.tallies[name]; }

 private:
  TrialReport& report_;
};

template <class F>
void evaluate_quadruple(const Quadruple<F>& q, TrialReport& report) {
  TrialRecorder rec(report);
  const ConditionReport c1 = check_condition(q, ConditionId::C1);
  const ConditionReport c2 = check_condition(q, ConditionId::C2);
  const ConditionReport c3 = check_condition(q, ConditionId::C3);
  report.conditions = {c1, c2, c3};
  if (c1.all_hold) rec.tally("c1_held");
  if (c2.all_hold) rec.tally("c2_held");
  if (c3.all_hold) rec.tally("c3_held");

  const HierarchyReport hierarchy = condition_hierarchy_check(q);
  rec.check("hierarchy C3=>C1=>C2", hierarchy.ok());
  for (const auto& v : hierarchy.violations) report.notes.push_back(v);

  const Matrix<F> id = Matrix<F>::identity(q.field(), q.dim());
  report.indices["ac"] = index_of(q.a * q.c);
  report.indices["alpha"] = index_of(id - q.b * q.d);
  if (report.indices["ac"] >= 2) rec.tally("index_ac_ge2");
  if (report.indices["alpha"] >= 2) rec.tally("index_alpha_ge2");

  if (c1.all_hold) {
    rec.formula(cline_full(q), true);
    rec.formula(jacobson_gdrazin(q), true);
    const ObligationReport ob = jacobson_proof_obligations(q);
    rec.check("jacobson obligations", ob.all());
    if (report.indices["alpha"] <= 1) {
      rec.tally("group_subpopulation");
      rec.formula(jacobson_group(q), true);
    }
    rec.check("drazin version", drazin_version_check(q).ok());
  }
  if (c2.all_hold) {
    // Proven for Banach algebras; over GF(p) without C1 it is only probed.
    const bool asserted = c1.all_hold || !std::is_same_v<F, PrimeField>;
    if (!c1.all_hold) rec.tally("c2_only");
    rec.formula(cline_two_condition(q), asserted);
  }

  const TransferReport transfer = nilpotent_transfer(q, Enforcement::kForce);
  if (transfer.lemma_conditions.all_hold) {
    rec.tally("transfer_checked");
    if (transfer.ac_nilpotent) rec.tally("transfer_ac_nilpotent");
    rec.check("nilpotent transfer", transfer.consistent);
  }
}

template <class F>
void evaluate_triple(const Quadruple<F>& q, TrialReport& report) {
  TrialRecorder rec(report);
  const ConditionReport c4 = check_condition(q, ConditionId::C4);
  const ConditionReport c5 = check_condition(q, ConditionId::C5);
  const ConditionReport c6 = check_condition(q, ConditionId::C6);
  report.conditions = {c4, c5, c6};
  if (c4.all_hold) rec.tally("c4_held");
  if (c5.all_hold) rec.tally("c5_held");
  if (c6.all_hold) rec.tally("c6_held");

  const HierarchyReport hierarchy = triple_hierarchy_check(q.a, q.b, q.c);
  rec.check("hierarchy C5=>C4=>C6", hierarchy.ok());
  for (const auto& v : hierarchy.violations) report.notes.push_back(v);

  report.indices["ac"] = index_of(q.a * q.c);
  if (report.indices["ac"] >= 2) rec.tally("index_ac_ge2");

  if (c4.all_hold) {
    rec.formula(cline_triple(q.a, q.b, q.c), true);
    rec.formula(jacobson_triple(q.a, q.b, q.c), true);
  }
  if (c6.all_hold) {
    const bool asserted = c4.all_hold || !std::is_same_v<F, PrimeField>;
    if (!c4.all_hold) rec.tally("c6_only");
    rec.formula(cline_triple_c6(q.a, q.b, q.c), asserted);
  }
}

template <class F>
void evaluate(const GenSpec& spec, const F& field, TrialReport& report) {
  const Quadruple<F> q = generate(spec, field);
  report.quadruple = to_json(q);
  if (is_triple_strategy(spec)) {
    evaluate_triple(q, report);
  } else {
    evaluate_quadruple(q, report);
  }
}

}  // namespace

GenSpec CampaignConfig::spec_for(std::uint64_t seed) const {
  GenSpec spec;
  spec.strategy = strategy;
  spec.field = field;
  const std::size_t span = dim_hi >= dim_lo ? dim_hi - dim_lo + 1 : 1;
  spec.dim = dim_lo + static_cast<std::size_t>(seed % span);
  spec.seed = seed;
  spec.entry_bound = entry_bound;
  spec.target = target;
  spec.exclude = exclude;
  spec.budget = budget;
  return spec;
}

TrialReport run_trial(const GenSpec& spec) {
  const auto start = Clock::now();
  TrialReport report;
  report.gen_spec = spec;
  try {
    std::visit([&](const auto& field) { evaluate(spec, field, report); }, spec.field);
  } catch (const Infeasible& e) {
    report.tallies["generation_failed"] = 1;
    report.failures.push_back(std::string("generation: ") + e.what());
  } catch (const Exhausted& e) {
    report.tallies["generation_failed"] = 1;
    report.failures.push_back(std::string("generation: ") + e.what());
  } catch (const Error& e) {
    report.failures.push_back(std::string("error: ") + e.what());
  }
  report.elapsed_ms = millis_since(start);
  return report;
}

CampaignReport run_campaign(const CampaignConfig& config, const std::atomic<bool>* stop) {
  const auto start = Clock::now();
  std::vector<std::optional<TrialReport>> results(config.trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      if (stop != nullptr && stop->load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= config.trials) return;
      results[i] = run_trial(config.spec_for(config.seed0 + i));
    }
  };
  const unsigned jobs = std::max(1U, std::min<unsigned>(config.jobs, std::max<std::size_t>(config.trials, 1)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  CampaignReport report;
  report.config = config;
  for (auto& slot : results) {
    if (!slot) {
      report.interrupted = true;
      continue;
    }
    ++report.trials;
    report.max_residual = std::max(report.max_residual, slot->max_residual);
    for (const auto& [name, count] : slot->tallies) report.tallies[name] += count;
    if (!slot->pass()) {
      ++report.failures;
      if (report.failure_details.size() < kFailureDetailCap) report.failure_details.push_back(std::move(*slot));
    }
  }
  if (!report.interrupted && config.strategy != Strategy::kExample34) {
    if (report.tallies["index_ac_ge2"] == 0) {
      report.coverage_warnings.push_back("no instance with index(ac) >= 2");
    }
    const GenSpec probe = config.spec_for(config.seed0);
    if (!is_triple_strategy(probe) && report.tallies["index_alpha_ge2"] == 0) {
      report.coverage_warnings.push_back("no instance with index(1 - bd) >= 2");
    }
  }
  report.elapsed_ms = millis_since(start);
  return report;
}

json to_json(const CampaignConfig& config) {
  json out = field_to_json(config.field);
  out["strategy"] = to_string(config.strategy);
  out["dim_range"] = {config.dim_lo, config.dim_hi};
  out["trials"] = config.trials;
  out["seed0"] = config.seed0;
  out["entry_bound"] = config.entry_bound;
  if (config.strategy == Strategy::kRejection) {
    out["condition"] = to_string(config.target);
    if (config.exclude) out["exclude"] = to_string(*config.exclude);
    out["budget"] = config.budget;
  }
  return out;
}

json to_json(const TrialReport& trial) {
  json conditions = json::array();
  for (const auto& c : trial.conditions) conditions.push_back(to_json(c));
  json formulas = json::object();
  for (const auto& [name, s] : trial.formulas) {
    formulas[name] = {{"oracle_ok", s.oracle_ok},
                      {"matches_constructive", s.matches_constructive},
                      {"residual", s.residual},
                      {"asserted", s.asserted},
                      {"failed_axioms", s.failed_axioms}};
  }
  return {{"gen_spec", to_json(trial.gen_spec)},
          {"conditions", std::move(conditions)},
          {"formula_results", std::move(formulas)},
          {"checks", trial.checks},
          {"indices", trial.indices},
          {"failures", trial.failures},
          {"notes", trial.notes},
          {"pass", trial.pass()},
          {"max_residual", trial.max_residual},
          {"elapsed_ms", trial.elapsed_ms},
          {"quadruple", trial.quadruple}};
}

json to_json(const CampaignReport& report) {
  json details = json::array();
  for (const auto& t : report.failure_details) details.push_back(to_json(t));
  return {{"config", to_json(report.config)},
          {"trials", report.trials},
          {"failures", report.failures},
          {"failure_details", std::move(details)},
          {"max_residual", report.max_residual},
          {"tallies", report.tallies},
          {"coverage_warnings", report.coverage_warnings},
          {"interrupted", report.interrupted},
          {"elapsed_ms", report.elapsed_ms}};
}

}  // namespace drazinlab
