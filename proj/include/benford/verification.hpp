#pragma once

#include <string>
#include <vector>

namespace benford {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct VerificationOptions {
  int max_depth = 3;
  /// Slack allowed on the sandwich lower <= E[S_p] <= upper.
  double tolerance = 1e-9;
  std::vector<double> eps = {0.1, 0.01, 0.001};
};

/// Numerical checks of the digit law, family membership, the expected-sum
/// quadrature against its closed form, the bounds sandwich, and the bound gap
/// identity, for every depth up to max_depth (at most 4).
std::vector<CheckResult> run_verification(const VerificationOptions& options);

}  // namespace benford
