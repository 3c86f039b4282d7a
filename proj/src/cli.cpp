#include "drazinlab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "drazinlab/campaign.hpp"
#include "drazinlab/example34.hpp"

namespace drazinlab {

namespace {

struct Outcome {
  json document;
  int code = kExitPass;
};

json error_document(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

// Exit code for each library error; anything else is an internal failure.
int classify(const Error& e, std::string& kind) {
  if (dynamic_cast<const NumericalRankAmbiguous*>(&e)) {
    kind = "NumericalRankAmbiguous";
    return kExitNumerical;
  }
  if (dynamic_cast<const PreconditionFailed*>(&e)) {
    kind = "PreconditionFailed";
    return kExitPrecondition;
  }
  if (dynamic_cast<const NotGroupInvertible*>(&e)) {
    kind = "NotGroupInvertible";
    return kExitPrecondition;
  }
  if (dynamic_cast<const ParseError*>(&e)) {
    kind = "ParseError";
    return kExitInput;
  }
  if (dynamic_cast<const DimensionMismatch*>(&e)) {
    kind = "DimensionMismatch";
    return kExitInput;
  }
  if (dynamic_cast<const FieldMismatch*>(&e)) {
    kind = "FieldMismatch";
    return kExitInput;
  }
  if (dynamic_cast<const InvalidField*>(&e)) {
    kind = "InvalidField";
    return kExitInput;
  }
  if (dynamic_cast<const ResolventSingular*>(&e)) {
    kind = "ResolventSingular";
  } else if (dynamic_cast<const Singular*>(&e)) {
    kind = "Singular";
  } else if (dynamic_cast<const Infeasible*>(&e)) {
    kind = "Infeasible";
  } else if (dynamic_cast<const Exhausted*>(&e)) {
    kind = "Exhausted";
  } else {
    kind = "Error";
  }
  return kExitFailure;
}

double default_eps() {
  const char* env = std::getenv("DRAZINLAB_EPS");
  if (env == nullptr || *env == '\0') return kDefaultComplexEps;
  char* end = nullptr;
  const double eps = std::strtod(env, &end);
  if (*end != '\0' || !std::isfinite(eps) || eps <= 0) {
    throw ParseError(std::string("DRAZINLAB_EPS must be a positive number, got '") + env + "'");
  }
  return eps;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
  if (!out) throw ParseError("failed writing '" + path + "'");
}

Enforcement enforcement(bool force) { return force ? Enforcement::kForce : Enforcement::kStrict; }

Outcome formula_outcome(json result) {
  const bool ok = result.at("oracle_ok").get<bool>();
  return {std::move(result), ok ? kExitPass : kExitFailure};
}

Outcome cmd_drazin(const std::string& path) {
  const AnyMatrix m = matrix_from_json(read_json_file(path), default_eps());
  return std::visit([](const auto& a) { return Outcome{to_json(drazin_inverse(a))}; }, m);
}

Outcome cmd_check(const std::string& path, const std::string& condition) {
  const ConditionId id = parse_condition(condition);
  const ParsedQuadruple parsed = quadruple_from_json(read_json_file(path), default_eps());
  return std::visit(
      [&](const auto& q) {
        const ConditionReport r = check_condition(q, id);
        return Outcome{to_json(r), r.all_hold ? kExitPass : kExitFailure};
      },
      parsed.quadruple);
}

Outcome cmd_cline(const std::string& path, const std::string& variant, bool force) {
  const ParsedQuadruple parsed = quadruple_from_json(read_json_file(path), default_eps());
  const Enforcement mode = enforcement(force);
  return std::visit(
      [&](const auto& q) {
        if (variant == "full") return formula_outcome(to_json(cline_full(q, mode)));
        if (variant == "two-condition") return formula_outcome(to_json(cline_two_condition(q, mode)));
        if (variant == "triple") return formula_outcome(to_json(cline_triple(q.a, q.b, q.c, mode)));
        return formula_outcome(to_json(cline_triple_c6(q.a, q.b, q.c, mode)));
      },
      parsed.quadruple);
}

Outcome cmd_jacobson(const std::string& path, const std::string& variant, bool force) {
  const ParsedQuadruple parsed = quadruple_from_json(read_json_file(path), default_eps());
  const Enforcement mode = enforcement(force);
  return std::visit(
      [&](const auto& q) {
        if (variant == "triple") return formula_outcome(to_json(jacobson_triple(q.a, q.b, q.c, mode)));
        if (variant == "group") return formula_outcome(to_json(jacobson_group(q, mode)));
        json result = to_json(jacobson_gdrazin(q, mode));
        result["obligations"] = to_json(jacobson_proof_obligations(q, mode));
        return formula_outcome(std::move(result));
      },
      parsed.quadruple);
}

struct FieldOptions {
  std::string field = "gfp";
  long long p = 5;
  std::optional<double> eps;

  FieldSpec resolve() const {
    json obj = {{"field", field}, {"p", p}};
    if (eps) obj["eps"] = *eps;
    return field_from_json(obj, default_eps());
  }
};

struct CampaignOptions {
  std::string strategy = "mosic";
  FieldOptions field;
  std::string dim_range = "2..4";
  std::size_t trials = 100;
  std::uint64_t seed0 = 0;
  int entry_bound = kDefaultEntryBound;
  std::optional<std::string> condition;
  std::optional<std::string> exclude;
  std::uint64_t budget = kDefaultRejectionBudget;
  unsigned jobs = 1;
  std::optional<std::string> out;
};

std::pair<std::size_t, std::size_t> parse_dim_range(const std::string& text) {
  auto parse_dim = [&](const std::string& s) -> std::size_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("bad --dim-range '" + text + "' (expected N or LO..HI)");
    }
    const std::size_t v = std::stoul(s);
    if (v == 0) throw ParseError("dimensions must be at least 1");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const std::size_t n = parse_dim(text);
    return {n, n};
  }
  const std::size_t lo = parse_dim(text.substr(0, dots));
  const std::size_t hi = parse_dim(text.substr(dots + 2));
  if (lo > hi) throw ParseError("empty --dim-range '" + text + "'");
  return {lo, hi};
}

Outcome cmd_campaign(const CampaignOptions& o) {
  CampaignConfig config;
  config.strategy = parse_strategy(o.strategy);
  config.field = o.field.resolve();
  std::tie(config.dim_lo, config.dim_hi) = parse_dim_range(o.dim_range);
  config.trials = o.trials;
  config.seed0 = o.seed0;
  config.entry_bound = o.entry_bound;
  if (o.condition) config.target = parse_condition(*o.condition);
  if (o.exclude) config.exclude = parse_condition(*o.exclude);
  config.budget = o.budget;
  config.jobs = std::max(1U, o.jobs);
  if (config.strategy == Strategy::kRejection && !o.condition) {
    throw ParseError("--strategy rejection needs --condition");
  }

  const CampaignReport report = run_campaign(config, &interrupt_flag());
  json doc = to_json(report);
  const int code = (report.failures == 0 && !report.interrupted) ? kExitPass : kExitFailure;
  if (!o.out) return {std::move(doc), code};
  write_json_file(*o.out, doc);
  return {{{"report", *o.out},
           {"trials", report.trials},
           {"failures", report.failures},
           {"max_residual", report.max_residual},
           {"interrupted", report.interrupted},
           {"coverage_warnings", report.coverage_warnings}},
          code};
}

struct GenerateOptions {
  std::optional<std::string> spec_path;
  std::string strategy = "mosic";
  FieldOptions field;
  std::size_t dim = 3;
  std::uint64_t seed = 0;
  int entry_bound = kDefaultEntryBound;
  std::optional<std::string> condition;
  std::optional<std::string> exclude;
  std::uint64_t budget = kDefaultRejectionBudget;
  std::optional<std::string> out;
};

Outcome cmd_generate(const GenerateOptions& o) {
  GenSpec spec;
  if (o.spec_path) {
    spec = genspec_from_json(read_json_file(*o.spec_path), default_eps());
  } else {
    spec.strategy = parse_strategy(o.strategy);
    spec.field = o.field.resolve();
    if (o.dim == 0) throw ParseError("--dim must be at least 1");
    spec.dim = o.dim;
    spec.seed = o.seed;
    spec.entry_bound = o.entry_bound;
    if (o.condition) spec.target = parse_condition(*o.condition);
    if (o.exclude) spec.exclude = parse_condition(*o.exclude);
    spec.budget = o.budget;
  }
  json doc = std::visit([&](const auto& f) { return to_json(generate(spec, f)); }, spec.field);
  doc["gen_spec"] = to_json(spec);
  if (o.out) {
    write_json_file(*o.out, doc);
    return {{{"written", *o.out}, {"gen_spec", to_json(spec)}}};
  }
  return {std::move(doc)};
}

Outcome cmd_example34() {
  const Example34Report r = example34_report();
  return {to_json(r), r.pass ? kExitPass : kExitFailure};
}

void add_field_options(CLI::App* cmd, FieldOptions& f) {
  cmd->add_option("--field", f.field, "rational, gfp or complex")
      ->check(CLI::IsMember({"rational", "gfp", "complex"}));
  cmd->add_option("--p", f.p, "prime modulus for gfp");
  cmd->add_option("--eps", f.eps, "relative tolerance for complex");
}

}  // namespace

std::atomic<bool>& interrupt_flag() {
  static std::atomic<bool> flag{false};
  return flag;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Drazin inverse toolkit: entwined Cline and Jacobson formulas checked against an oracle"};
  app.name("drazinlab");
  app.require_subcommand(1);

  std::string path;
  std::string condition;
  std::string variant = "full";
  bool force = false;
  CampaignOptions campaign;
  GenerateOptions generate_opts;

  auto* drazin = app.add_subcommand("drazin", "Drazin inverse, index and spectral idempotent of a matrix");
  drazin->add_option("input", path, "matrix JSON file")->required();

  auto* check = app.add_subcommand("check", "evaluate one condition C1..C6 on a quadruple");
  check->add_option("input", path, "quadruple JSON file")->required();
  check->add_option("--condition", condition, "C1..C6")->required();

  auto* cline = app.add_subcommand("cline", "Cline-type formula for (bd)^D or (ba)^D");
  cline->add_option("input", path, "quadruple JSON file")->required();
  cline->add_option("--variant", variant, "full, two-condition, triple or triple-c6")
      ->check(CLI::IsMember({"full", "two-condition", "triple", "triple-c6"}));
  cline->add_flag("--force", force, "evaluate even when the hypothesis fails");

  auto* jacobson = app.add_subcommand("jacobson", "Jacobson-type formula for (1-ac)^D");
  jacobson->add_option("input", path, "quadruple JSON file")->required();
  jacobson->add_option("--variant", variant, "full, triple or group")
      ->check(CLI::IsMember({"full", "triple", "group"}));
  jacobson->add_flag("--force", force, "evaluate even when the hypothesis fails");

  auto* camp = app.add_subcommand("campaign", "bulk verification over generated instances");
  camp->add_option("--strategy", campaign.strategy, "classic, mosic, aba_aca, nilpotent_ac, rejection, example34");
  add_field_options(camp, campaign.field);
  camp->add_option("--dim-range", campaign.dim_range, "N or LO..HI");
  camp->add_option("--trials", campaign.trials);
  camp->add_option("--seed0", campaign.seed0);
  camp->add_option("--entry-bound", campaign.entry_bound)->check(CLI::Range(1, 1 << 20));
  camp->add_option("--condition", campaign.condition, "rejection target C1..C6");
  camp->add_option("--exclude", campaign.exclude, "rejection: condition that must fail");
  camp->add_option("--budget", campaign.budget, "rejection sample budget");
  camp->add_option("--jobs", campaign.jobs, "worker threads");
  camp->add_option("--out", campaign.out, "report file");

  auto* ex34 = app.add_subcommand("example34", "claimed vs computed values for the fixed 2x2 triple");

  auto* gen = app.add_subcommand("generate", "emit a generated quadruple as JSON");
  gen->add_option("--spec", generate_opts.spec_path, "GenSpec JSON file");
  gen->add_option("--strategy", generate_opts.strategy);
  add_field_options(gen, generate_opts.field);
  gen->add_option("--dim", generate_opts.dim);
  gen->add_option("--seed", generate_opts.seed);
  gen->add_option("--entry-bound", generate_opts.entry_bound)->check(CLI::Range(1, 1 << 20));
  gen->add_option("--condition", generate_opts.condition);
  gen->add_option("--exclude", generate_opts.exclude);
  gen->add_option("--budget", generate_opts.budget);
  gen->add_option("--out", generate_opts.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInput;
  }

  Outcome outcome;
  try {
    if (*drazin) outcome = cmd_drazin(path);
    else if (*check) outcome = cmd_check(path, condition);
    else if (*cline) outcome = cmd_cline(path, variant, force);
    else if (*jacobson) outcome = cmd_jacobson(path, variant, force);
    else if (*camp) outcome = cmd_campaign(campaign);
    else if (*ex34) outcome = cmd_example34();
    else if (*gen) outcome = cmd_generate(generate_opts);
  } catch (const Error& e) {
    std::string kind;
    outcome.code = classify(e, kind);
    outcome.document = error_document(kind, e.what());
    err << "drazinlab: " << e.what() << '\n';
  } catch (const json::exception& e) {
    outcome.code = kExitInput;
    outcome.document = error_document("ParseError", e.what());
    err << "drazinlab: " << e.what() << '\n';
  } catch (const std::exception& e) {
    outcome.code = kExitFailure;
    outcome.document = error_document("InternalError", e.what());
    err << "drazinlab: " << e.what() << '\n';
  }
  out << outcome.document.dump(2) << '\n';
  return outcome.code;
}

}  // namespace drazinlab
