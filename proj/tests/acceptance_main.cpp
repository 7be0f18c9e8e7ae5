// Acceptance suite: runs every criterion at its stated exact tolerance and
// prints one pass/fail line per criterion. Exit status 0 iff all pass.

#include <chrono>
#include <iostream>

#include "tvlab/verify.hpp"

int main() {
  auto start = std::chrono::steady_clock::now();
  std::vector<tvlab::CheckResult> results =
      tvlab::run_checks(tvlab::acceptance_criteria(), false, &std::cout);
  double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (tvlab::all_passed(results) ? "ALL CRITERIA PASSED" : "CRITERIA FAILED")
            << " in " << total << "s" << std::endl;
  return tvlab::all_passed(results) ? 0 : 1;
}
