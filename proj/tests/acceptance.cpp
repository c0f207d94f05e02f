#include <doctest.h>

#include <cstdio>

#include "pwave/selftest.hpp"

TEST_CASE("acceptance criteria") {
  const std::vector<pwave::CriterionResult> results = pwave::run_acceptance();
  for (const pwave::CriterionResult& r : results) {
    std::printf("%-4d %-28s %s  %s\n", r.id, r.name.c_str(), r.pass ? "PASS" : "FAIL",
                r.detail.c_str());
    std::fflush(stdout);
    CHECK_MESSAGE(r.pass, r.name, ": ", r.detail);
  }
}
