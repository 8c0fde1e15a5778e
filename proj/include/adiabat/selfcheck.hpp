#pragma once

// Acceptance criteria as runnable checks, shared by the `check` subcommand and
// the acceptance test binary.

#include <string>
#include <vector>

namespace adiabat::selfcheck {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 12;

/// Criteria run by `check`: 1, 5, 6, 7 (bounce chain only), 8, 10.
std::vector<int> fast_subset();

/// With `fast`, criterion 7 skips the wavepacket. Never throws: failures and
/// exceptions both come back as pass = false with the reason in `detail`.
CriterionResult run_criterion(int id, bool fast, unsigned jobs);

std::vector<CriterionResult> run_criteria(const std::vector<int> &ids, bool fast, unsigned jobs);

/// "PASS [ 7] title (1.23 s): detail"
std::string format_line(const CriterionResult &r);

} // namespace adiabat::selfcheck
