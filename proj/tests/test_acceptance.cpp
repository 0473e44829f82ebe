#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <iostream>

#include "thinfb/acceptance.hpp"

using namespace thinfb;

TEST_CASE("acceptance suite") {
  std::vector<CriterionOutcome> outcomes = run_acceptance("", std::cout);
  REQUIRE(outcomes.size() == 12);
  for (const CriterionOutcome& oc : outcomes) {
    CHECK_MESSAGE(oc.pass, "criterion ", oc.id, " (", oc.name, ")");
  }
}
