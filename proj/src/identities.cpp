#include "drazinlab/identities.hpp"

namespace drazinlab {

std::string to_string(ConditionId id) {
  switch (id) {
    case ConditionId::C1: return "C1";
    case ConditionId::C2: return "C2";
    case ConditionId::C3: return "C3";
    case ConditionId::C4: return "C4";
    case ConditionId::C5: return "C5";
    case ConditionId::C6: return "C6";
  }
  return "?";
}

ConditionId parse_condition(std::string_view text) {
  for (ConditionId id : {ConditionId::C1, ConditionId::C2, ConditionId::C3, ConditionId::C4,
                         ConditionId::C5, ConditionId::C6}) {
    if (text == to_string(id)) return id;
  }
  throw ParseError("unknown condition '" + std::string(text) + "' (expected C1..C6)");
}

}  // namespace drazinlab
