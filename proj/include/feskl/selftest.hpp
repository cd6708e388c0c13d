// SPDX-License-Identifier: Apache-2.0
//
// The acceptance checklist: ten self-contained checks covering functional
// correctness, statistical behavior, linearity enforcement, and the security
// game suite. The CLI `selftest` command and the acceptance test binary both
// run through here so there is exactly one definition of "done".
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace feskl {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs one criterion (1..10); ParameterError for anything else.
CriterionResult run_criterion(int id);

// Runs all ten, streaming one PASS/FAIL line per criterion to `os`.
std::vector<CriterionResult> run_all_criteria(std::ostream& os);

}  // namespace feskl
