// One pass/fail line per acceptance criterion; exit status 0 iff all pass.

#include <iostream>

#include "adiabat/selfcheck.hpp"

int main() {
  using namespace adiabat::selfcheck;
  bool all = true;
  for (int id = 1; id <= kCriterionCount; ++id) {
    const auto r = run_criterion(id, false, 1);
    std::cout << format_line(r) << std::endl;
    all = all && r.pass;
  }
  std::cout << (all ? "ALL PASS" : "SOME CRITERIA FAILED") << std::endl;
  return all ? 0 : 1;
}
