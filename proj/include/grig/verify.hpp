#pragma once

// Table-verification suites shared by the CLI ("grig verify ...") and tests.

#include <string>
#include <utility>
#include <vector>

namespace grig {

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string summary;
  std::vector<std::string> problems;
};

SuiteResult verify_lift_suite();
/// Embedded Schreier table vs the quotient oracle, plus coset_of on words.
SuiteResult verify_schreier_suite();
/// Q^K on {1,a,b,c,d}^2 against the known base table.
SuiteResult verify_base_cong_suite();
/// Stabilization by depth 6 for generators and by depth 10 for length <= 2.
SuiteResult verify_q_agreement_suite();
/// Centralizer formulas on A wr B for each (A, B) name pair, e.g. {"C2","C3"}.
SuiteResult
verify_wreath_suite(const std::vector<std::pair<std::string, std::string>> &groups,
                    unsigned threads = 1);
/// The default group list for the wreath suite.
std::vector<std::pair<std::string, std::string>> default_wreath_groups();

} // namespace grig
