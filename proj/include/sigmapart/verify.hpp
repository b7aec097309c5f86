#pragma once

#include <string>
#include <vector>

#include "sigmapart/report.hpp"

namespace sigmapart {

struct CheckResult {
  std::string module;
  std::string name;
  bool ok = false;
  /// hard checks fail the run; soft ones are reported findings
  bool hard = true;
  Json detail;
};

struct VerifyReport {
  bool quick = false;
  std::vector<CheckResult> checks;
  std::size_t hard_failures() const;
  std::size_t soft_failures() const;
  Json to_json() const;
};

/// Invariant suite over every module. `quick` shrinks the sweeps.
VerifyReport run_verify(bool quick);

}  // namespace sigmapart
