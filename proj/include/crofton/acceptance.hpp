#pragma once

#include <string>
#include <vector>

namespace crofton::acceptance {

struct CheckResult {
  std::string id;
  std::string name;
  bool pass = false;
  std::string detail;
  double wall_seconds = 0.0;
};

/// Named suites: coeffs, normalization, riemannian, desitter, flat,
/// properties, all.  Every check prints nothing; the caller renders results.
std::vector<CheckResult> run_suite(const std::string& suite, int workers = 0);

}  // namespace crofton::acceptance
