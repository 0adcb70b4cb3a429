#pragma once

#include <string>
#include <vector>

namespace heunsc::verify {

struct CaseResult {
  std::string key;
  double diff = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string name;
  std::vector<CaseResult> cases;

  bool pass() const;
  const CaseResult* worst() const;  // largest diff/tol ratio, null if empty
};

// Sweep grids mirroring the library's cross-checks.  jobs > 1 fans the
// independent cells over a worker pool; output order is always the sorted
// case-key order.
SuiteResult closed_forms_suite(int jobs = 1);
SuiteResult transforms_suite(int jobs = 1);
SuiteResult stieltjes_suite(int jobs = 1);
SuiteResult birthdeath_suite(int jobs = 1, bool quick = false);

SuiteResult run_suite(const std::string& name, int jobs = 1);
std::vector<std::string> suite_names();

}  // namespace heunsc::verify
