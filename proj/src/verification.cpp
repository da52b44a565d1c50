#include "benford/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "benford/distributions.hpp"
#include "benford/errors.hpp"
#include "benford/sum_invariance.hpp"
#include "benford/summation.hpp"

namespace benford {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

CheckResult max_error_check(std::string name, double max_error, double tolerance) {
  return {std::move(name), max_error <= tolerance,
          "max error " + sci(max_error) + " (tolerance " + sci(tolerance) + ")"};
}

}  // namespace

std::vector<CheckResult> run_verification(const VerificationOptions& options) {
  if (options.max_depth < 1 || options.max_depth > kMaxFamilyDepth) {
    throw DomainError("verification depth must be in [1, " + std::to_string(kMaxFamilyDepth) + "]");
  }
  std::vector<CheckResult> out;
  const auto rows = convergence_report(options.max_depth);
  const auto benford = wrapped_density(benford_reference());

  for (int n = 1; n <= options.max_depth; ++n) {
    const std::string at = " n=" + std::to_string(n);
    const auto prefixes = all_prefixes(n);

    // Digit law: normalisation and marginalisation.
    CompensatedSum total;
    double marginal_error = 0.0;
    for (const auto& p : prefixes) {
      total.add(benford_prefix_prob(p));
      if (n < kMaxPrefixLength) {
        CompensatedSum children;
        for (int d = 0; d <= 9; ++d) children.add(benford_prefix_prob(p.extended(d)));
        marginal_error = std::max(marginal_error, std::abs(children.value() - benford_prefix_prob(p)));
      }
    }
    out.push_back(max_error_check("digit-law normalisation" + at, std::abs(total.value() - 1.0), 1e-12));
    out.push_back(max_error_check("digit-law marginalisation" + at, marginal_error, 1e-12));

    // With g-dagger = 1 every prefix has the same expected significand sum.
    const double reference = expected_sum_theoretical(n);
    double benford_error = 0.0;
    for (const auto& p : prefixes) {
      benford_error = std::max(benford_error, std::abs(expected_sum_quadrature(benford, p) - reference));
    }
    out.push_back(max_error_check("benford expected sum = 10^(1-n)/ln10" + at, benford_error, 1e-10));

    // Constructed members of the n-digit Benford class.
    std::vector<Distribution> families{benford_reference(), SineBenfordDist(n)};
    for (double eps : options.eps) {
      families.emplace_back(edge_concentrated(n, eps, Side::lower));
      families.emplace_back(edge_concentrated(n, eps, Side::upper));
    }
    std::vector<std::vector<double>> sums(families.size());
    for (std::size_t f = 0; f < families.size(); ++f) {
      const auto g = wrapped_density(families[f]);
      double mass_error = 0.0;
      for (int k = 1; k <= n; ++k) {
        for (const auto& p : all_prefixes(k)) {
          mass_error = std::max(mass_error, std::abs(prefix_mass(g, p) - benford_prefix_prob(p)));
        }
      }
      out.push_back(max_error_check("membership " + name(families[f]) + " depths 1.." + std::to_string(n),
                                    mass_error, 1e-9));

      double violation = 0.0;
      for (const auto& p : prefixes) {
        const double e = expected_sum_quadrature(g, p);
        const auto b = theorem_bounds(p);
        violation = std::max({violation, b.lower - e, e - b.upper});
        sums[f].push_back(e);
      }
      out.push_back({"sandwich " + name(families[f]) + at, violation <= options.tolerance,
                     "worst excursion outside bounds " + sci(std::max(violation, 0.0)) +
                         " (tolerance " + sci(options.tolerance) + ")"});
    }

    // Edge members approach their bound as eps shrinks.
    for (Side side : {Side::lower, Side::upper}) {
      bool ok = true;
      double worst_ratio = 0.0;
      for (std::size_t i = 0; i < prefixes.size(); ++i) {
        const auto b = theorem_bounds(prefixes[i]);
        double previous = INFINITY;
        for (std::size_t j = 0; j < options.eps.size(); ++j) {
          const std::size_t f = 2 + 2 * j + (side == Side::lower ? 0 : 1);
          const double distance =
              side == Side::lower ? sums[f][i] - b.lower : b.upper - sums[f][i];
          const double allowed = 2.0 * options.eps[j] * (b.upper - b.lower);
          worst_ratio = std::max(worst_ratio, distance / allowed);
          if (distance > allowed || distance >= previous) ok = false;
          previous = distance;
        }
      }
      out.push_back({std::string("edge convergence to ") + (side == Side::lower ? "lower" : "upper") +
                         " bound" + at,
                     ok, "max distance / (2 eps gap) = " + sci(worst_ratio)});
    }

    // Worst relative gap (upper - lower) / lower is 10^(1-n), at x = 10^(n-1).
    const auto& row = rows[static_cast<std::size_t>(n - 1)];
    const double expected_gap = std::pow(10.0, 1 - n);
    double identity_error = 0.0;
    for (const auto& p : prefixes) {
      identity_error = std::max(identity_error, std::abs(theorem_bounds(p).relative_gap() -
                                                         1.0 / static_cast<double>(p.value())));
    }
    out.push_back(max_error_check("gap identity (upper-lower)/lower = 1/x" + at, identity_error, 1e-12));
    out.push_back({"worst gap" + at, std::abs(row.worst_gap - expected_gap) <= 1e-12,
                   "worst gap " + sci(row.worst_gap) + " at prefix " + row.worst_prefix.to_string() +
                       ", bounds within " + sci(std::max(row.max_lower_deviation, row.max_upper_deviation)) +
                       " of the Benford value"});
  }
  return out;
}

}  // namespace benford
