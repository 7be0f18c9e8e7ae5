#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace tvlab {

/// One named verification: run() returns a detail string on success and
/// throws on failure. Checks marked quick form the --quick subset.
struct Check {
  std::string name;
  bool quick = false;
  std::function<std::string()> run;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// The acceptance criteria (exact, zero tolerance).
std::vector<Check> acceptance_criteria();

/// Condensed per-module property suites.
std::vector<Check> property_suites();

/// Runs checks (optionally only the quick subset), printing one pass/fail
/// line per check to `log` when non-null.
std::vector<CheckResult> run_checks(const std::vector<Check>& checks, bool quick_only,
                                    std::ostream* log);

bool all_passed(const std::vector<CheckResult>& results);
std::string results_json(const std::vector<CheckResult>& results);

}  // namespace tvlab
