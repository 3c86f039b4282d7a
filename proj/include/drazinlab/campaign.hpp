#pragma once

// Bulk verification: generate instances from seeds seed0 .. seed0+trials-1,
// evaluate every applicable condition, formula and proof obligation, and
// aggregate the verdicts into a CampaignReport.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drazinlab/json_io.hpp"

namespace drazinlab {

inline constexpr std::size_t kFailureDetailCap = 100;

struct CampaignConfig {
  Strategy strategy = Strategy::kMosic;
  FieldSpec field = PrimeField(5);
  std::size_t dim_lo = 2;
  std::size_t dim_hi = 4;
  std::size_t trials = 100;
  std::uint64_t seed0 = 0;
  int entry_bound = kDefaultEntryBound;
  ConditionId target = ConditionId::C1;  // rejection only
  std::optional<ConditionId> exclude;    // rejection only
  std::uint64_t budget = kDefaultRejectionBudget;
  unsigned jobs = 1;

  /// GenSpec of the trial with the given seed; the dimension cycles
  /// through [dim_lo, dim_hi] keyed by the seed.
  GenSpec spec_for(std::uint64_t seed) const;
};

struct FormulaSummary {
  bool oracle_ok = false;
  bool matches_constructive = false;
  double residual = 0.0;
  // Asserted summaries count towards pass/fail; the others are recorded
  // as exploratory observations only.
  bool asserted = true;
  std::vector<std::string> failed_axioms;
};

struct TrialReport {
  GenSpec gen_spec;
  std::vector<ConditionReport> conditions;
  std::map<std::string, FormulaSummary> formulas;
  std::map<std::string, bool> checks;
  std::map<std::string, std::size_t> indices;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  std::map<std::string, std::size_t> tallies;
  double max_residual = 0.0;
  double elapsed_ms = 0.0;
  json quadruple;  // replayable instance
  bool pass() const noexcept { return failures.empty(); }
};

struct CampaignReport {
  CampaignConfig config;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::vector<TrialReport> failure_details;  // capped at kFailureDetailCap
  double max_residual = 0.0;
  std::map<std::string, std::size_t> tallies;
  std::vector<std::string> coverage_warnings;
  bool interrupted = false;
  double elapsed_ms = 0.0;
};

TrialReport run_trial(const GenSpec& spec);

/// Runs config.trials trials on config.jobs threads. Aggregation is keyed
/// by seed, so the report does not depend on the thread count. When *stop
/// becomes true no further trials start and the partial report is returned
/// with interrupted = true.
CampaignReport run_campaign(const CampaignConfig& config, const std::atomic<bool>* stop = nullptr);

json to_json(const CampaignConfig& config);
json to_json(const TrialReport& trial);
json to_json(const CampaignReport& report);

}  // namespace drazinlab
