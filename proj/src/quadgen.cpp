#include "drazinlab/quadgen.hpp"

namespace drazinlab {

namespace {
constexpr std::pair<Strategy, const char*> kStrategyNames[] = {
    {Strategy::kClassic, "classic"},         {Strategy::kMosic, "mosic"},
    {Strategy::kAbaAca, "aba_aca"},          {Strategy::kNilpotentAC, "nilpotent_ac"},
    {Strategy::kRejection, "rejection"},     {Strategy::kExample34, "example34"},
};
}  // namespace

std::string to_string(Strategy s) {
  for (const auto& [id, name] : kStrategyNames) {
    if (id == s) return name;
  }
  return "?";
}

Strategy parse_strategy(std::string_view text) {
  for (const auto& [id, name] : kStrategyNames) {
    if (text == name) return id;
  }
  throw ParseError("unknown strategy '" + std::string(text) + "'");
}

bool is_triple_strategy(const GenSpec& spec) {
  switch (spec.strategy) {
    case Strategy::kAbaAca:
    case Strategy::kExample34:
      return true;
    case Strategy::kRejection:
      return is_triple_condition(spec.target);
    default:
      return false;
  }
}

}  // namespace drazinlab
