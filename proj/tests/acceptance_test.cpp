// SPDX-License-Identifier: Apache-2.0
//
// The acceptance gate: one line and one assertion per criterion.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <iostream>

#include "feskl/selftest.hpp"

TEST_CASE("acceptance criteria") {
  std::vector<feskl::CriterionResult> results =
      feskl::run_all_criteria(std::cout);
  REQUIRE(results.size() == 10);
  for (const feskl::CriterionResult& r : results) {
    CAPTURE(r.id);
    CAPTURE(r.name);
    CAPTURE(r.detail);
    CHECK(r.pass);
  }
}
