#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dgforge/report.hpp"

namespace dgforge {

/** One line of the acceptance corpus. report is deterministic; detail is for people. */
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  Json report;
  double seconds = 0;
};

/** Criteria 1 to 9 on the builtin corpus, then 10: a rerun compared byte for byte. */
std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result = {});

/** Runs a single criterion 1..9. */
CriterionResult run_criterion(int id);

}  // namespace dgforge
