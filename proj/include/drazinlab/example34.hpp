#pragma once

// Regression report for the fixed 2x2 triple
//   a = [[0,1],[0,0]], b = [[1,0],[0,0]], c = [[1,0],[1,1]]
// over the rationals. Every quantity is computed and printed next to the
// value claimed for it in the literature; only the machine-verifiable
// subset decides the verdict.

#include "drazinlab/json_io.hpp"

namespace drazinlab {

struct Example34Report {
  json table;       // [{quantity, claimed, computed, agrees}]
  json conditions;  // C5 and C6 reports
  json verified;    // checks that decide `pass`
  bool pass = false;
};

Example34Report example34_report();
json to_json(const Example34Report& report);

}  // namespace drazinlab
