#pragma once

#include <string>
#include <vector>

namespace pwave {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs every acceptance criterion and reports one line each.  Also backs the
// command-line selftest.
std::vector<CriterionResult> run_acceptance();

}  // namespace pwave
