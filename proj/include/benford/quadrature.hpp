#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace benford {

struct QuadratureOptions {
  double abs_tolerance = 1e-10;
  /// Applies to each piece between breakpoints separately.
  std::size_t max_evaluations = 1'000'000;
  int max_depth = 50;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

/// Adaptive Simpson integration of f over [a, b].
///
/// The interval is first split at every breakpoint strictly inside (a, b);
/// breakpoints must be sorted ascending. Each piece receives a share of the
/// tolerance proportional to its width.
/// Endpoints of each piece are sampled one ulp inward so that a piecewise
/// density is read from the side that belongs to the piece.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints = {},
                           const QuadratureOptions& options = {});

}  // namespace benford
