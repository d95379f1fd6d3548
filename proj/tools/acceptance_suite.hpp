#pragma once

// The eight acceptance criteria, each reported as one pass/fail line with its tolerance.

#include <ostream>
#include <string>
#include <vector>

namespace flagnest::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  std::string tolerance;
  bool passed = false;
  bool documented_failure = false;  ///< listed as unattainable; does not affect the exit status
  std::string detail;
  double seconds = 0;
  std::vector<std::string> diagnostics;
};

/// Criteria whose failure is analysed in the README and does not fail the run.
const std::vector<int>& documented_failures();

std::vector<CriterionResult> run_all(unsigned threads = 0);

/// "criterion N [tolerance] PASS|FAIL name: detail (t s)" plus diagnostic lines.
void print(std::ostream& os, const std::vector<CriterionResult>& results, bool timings = true);

/// 0 when every failure is documented, 1 otherwise.
int exit_status(const std::vector<CriterionResult>& results);

}  // namespace flagnest::acceptance
