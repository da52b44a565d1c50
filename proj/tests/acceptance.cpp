// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../tools/cli.hpp"
#include "benford/digits.hpp"
#include "benford/distributions.hpp"
#include "benford/sequences.hpp"
#include "benford/sum_invariance.hpp"
#include "benford/summation.hpp"

using namespace benford;

namespace {

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void fibonacci_table() {
  constexpr std::array<double, 9> published{21714.0, 21712.2, 21717.8, 21707.4, 21713.2,
                                            21725.0, 21702.7, 21717.4, 21715.5};
  const auto start = std::chrono::steady_clock::now();
  const auto stream = fib_significands_logspace(50000);
  const auto table = empirical_sum_table(stream.values, 1);
  const double elapsed = seconds_since(start);
  double worst = 0.0;
  for (int d = 1; d <= 9; ++d) {
    worst = std::max(worst, std::abs(table.sum(DigitPrefix::from_value(d, 1)) - published[d - 1]));
  }
  report(worst <= 0.1 && elapsed < 1.0, "fibonacci-table",
         fmt("N=50000 log-space, max |S_d - table| = %.4f (tol 0.1), %.3f s (limit 1 s)", worst, elapsed));
}

void fibonacci_reference() {
  const double reference = 50000 * expected_sum_theoretical(1);
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run({"fibonacci", "-N", "50000"}, out, err);
  const bool printed = out.str().find("reference 21714.7") != std::string::npos;
  report(code == 0 && printed && std::abs(reference - 21714.7) <= 0.05, "expected-sum-reference",
         fmt("50000/ln10 = %.6f, cli prints 21714.7: %s", reference, printed ? "yes" : "no"));
}

void oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  const auto exact = fib_significands_exact(50000);
  const double elapsed = seconds_since(start);
  const auto log = fib_significands_logspace(5000);
  double worst = 0.0;
  for (std::size_t k = 1; k <= 5000; ++k) {
    worst = std::max(worst, std::abs(log.values[k - 1] - exact.values[k - 1]));
  }
  report(worst <= 1e-6 && elapsed < 30.0, "oracle-equivalence",
         fmt("max |log-space - exact| for k<=5000 = %.3g (tol 1e-6), exact N=50000 in %.3f s (limit 30 s)",
             worst, elapsed));
}

void digit_law_discrepancy() {
  const auto p111 = DigitPrefix::parse("111");
  const double sine = prefix_mass(wrapped_density(SineBenfordDist(2)), p111);
  const double benford = benford_prefix_prob(p111);
  report(std::abs(sine - 2.86e-3) <= 0.005e-3 && std::abs(benford - 3.89e-3) <= 0.01e-3,
         "third-digit-discrepancy", fmt("P_sine(111) = %.6e, Benford = %.6e", sine, benford));
}

void uniform_quadrature() {
  const auto g = wrapped_density(benford_reference());
  double worst = 0.0;
  std::size_t checked = 0;
  auto check = [&](const DigitPrefix& p) {
    worst = std::max(worst, std::abs(expected_sum_quadrature(g, p) - expected_sum_theoretical(p.length())));
    ++checked;
  };
  for (int n = 1; n <= 3; ++n) {
    for (const auto& p : all_prefixes(n)) check(p);
  }
  std::mt19937_64 rng(20131);
  for (int i = 0; i < 100; ++i) check(DigitPrefix::from_value(1000 + rng() % 9000, 4));
  report(worst <= 1e-10, "uniform-expected-sum",
         fmt("%zu prefixes, max |quadrature - 10^(1-n)/ln10| = %.3g (tol 1e-10)", checked, worst));
}

void sandwich() {
  constexpr std::array<double, 3> eps{0.1, 0.01, 0.001};
  double worst_violation = 0.0;
  std::size_t checked = 0;
  bool edges_ok = true;
  double worst_ratio = 0.0;
  for (int n = 1; n <= 3; ++n) {
    std::vector<Distribution> families{benford_reference(), SineBenfordDist(n)};
    for (double e : eps) {
      families.emplace_back(edge_concentrated(n, e, Side::lower));
      families.emplace_back(edge_concentrated(n, e, Side::upper));
    }
    std::vector<std::vector<double>> sums;
    for (const auto& f : families) {
      const auto g = wrapped_density(f);
      auto& row = sums.emplace_back();
      for (const auto& p : all_prefixes(n)) {
        const auto b = theorem_bounds(p);
        const double s = expected_sum_quadrature(g, p);
        worst_violation = std::max({worst_violation, b.lower - s, s - b.upper});
        row.push_back(s);
        ++checked;
      }
    }
    const auto prefixes = all_prefixes(n);
    for (std::size_t i = 0; i < prefixes.size(); ++i) {
      const auto b = theorem_bounds(prefixes[i]);
      const double gap = b.upper - b.lower;
      double prev_lower = INFINITY;
      double prev_upper = INFINITY;
      for (std::size_t k = 0; k < eps.size(); ++k) {
        const double to_lower = sums[2 + 2 * k][i] - b.lower;
        const double to_upper = b.upper - sums[3 + 2 * k][i];
        edges_ok = edges_ok && to_lower < prev_lower && to_upper < prev_upper &&
                   to_lower <= 2 * eps[k] * gap && to_upper <= 2 * eps[k] * gap;
        worst_ratio = std::max({worst_ratio, to_lower / (eps[k] * gap), to_upper / (eps[k] * gap)});
        prev_lower = to_lower;
        prev_upper = to_upper;
      }
    }
  }
  report(worst_violation <= 1e-9, "bounds-sandwich",
         fmt("%zu (family, prefix) pairs at depths 1-3, max violation %.3g (tol 1e-9)", checked,
             std::max(worst_violation, 0.0)));
  report(edges_ok, "edge-convergence",
         fmt("monotone in eps, max distance/(eps*gap) = %.4f (limit 2)", worst_ratio));
}

void convergence() {
  const auto rows = convergence_report(5);
  double worst_gap_error = 0.0;
  for (const auto& r : rows) {
    worst_gap_error = std::max(worst_gap_error, std::abs(r.worst_gap - std::pow(10.0, 1 - r.depth)));
  }
  double worst_identity = 0.0;
  for (int n = 1; n <= 5; ++n) {
    for (const auto& p : all_prefixes(n)) {
      const auto b = theorem_bounds(p);
      worst_identity = std::max(worst_identity, std::abs(b.relative_gap() - 1.0 / static_cast<double>(p.value())));
    }
  }
  report(worst_gap_error <= 1e-12 && worst_identity <= 1e-12, "bound-gap-convergence",
         fmt("n=1..5 worst gaps %.1g %.1g %.1g %.1g %.1g, |gap - 10^(1-n)| <= %.2g, identity error %.2g (tol 1e-12)",
             rows[0].worst_gap, rows[1].worst_gap, rows[2].worst_gap, rows[3].worst_gap, rows[4].worst_gap,
             worst_gap_error, worst_identity));
}

void property_suites() {
  double worst_marginal = 0.0;
  for (int m = 1; m <= 4; ++m) {
    for (const auto& p : all_prefixes(m)) {
      CompensatedSum children;
      for (int d = 0; d <= 9; ++d) children.add(benford_prefix_prob(p.extended(d)));
      worst_marginal = std::max(worst_marginal, std::abs(children.value() - benford_prefix_prob(p)));
    }
  }
  report(worst_marginal <= 1e-12, "digit-law-marginalisation",
         fmt("depths 1-4, max |sum of children - parent| = %.3g (tol 1e-12)", worst_marginal));

  double worst_norm = 0.0;
  for (int m = 1; m <= 5; ++m) {
    CompensatedSum total;
    for (const auto& p : all_prefixes(m)) total.add(benford_prefix_prob(p));
    worst_norm = std::max(worst_norm, std::abs(total.value() - 1.0));
  }
  for (int n = 1; n <= 3; ++n) {
    CompensatedSum total;
    for (const auto& p : all_prefixes(n)) total.add(bucket_mass(SineBenfordDist(n), p));
    worst_norm = std::max(worst_norm, std::abs(total.value() - 1.0));
  }
  report(worst_norm <= 1e-12, "probability-normalisation",
         fmt("digit law depths 1-5 and sine buckets depths 1-3, max |total - 1| = %.3g (tol 1e-12)", worst_norm));

  double worst_trip = 0.0;
  const auto benford = benford_reference();
  for (int i = 0; i < 10000; ++i) {
    const double u = i / 10000.0;
    worst_trip = std::max(worst_trip, std::abs(benford.cdf(benford.sample(u)) - u));
    for (int n = 1; n <= kMaxFamilyDepth; ++n) {
      const SineBenfordDist d(n);
      worst_trip = std::max(worst_trip, std::abs(d.cdf(d.sample(u)) - u));
    }
  }
  report(worst_trip <= 1e-10, "sampler-round-trip",
         fmt("10^4-point grid, Benford and sine depths 1-4, max |cdf(sample(u)) - u| = %.3g (tol 1e-10)",
             worst_trip));

  // Same seed and variate construction as the sample command's default.
  constexpr int samples = 1'000'000;
  const SineBenfordDist d(2);
  std::mt19937_64 rng(20131);
  std::vector<int> counts(90, 0);
  for (int i = 0; i < samples; ++i) {
    ++counts[prefix_of(d.sample(static_cast<double>(rng() >> 11) * 0x1.0p-53), 2).value() - 10];
  }
  double worst_z = 0.0;
  std::uint64_t worst_prefix = 0;
  for (const auto& p : all_prefixes(2)) {
    const double prob = bucket_mass(d, p);
    const double se = std::sqrt(prob * (1 - prob) / samples);
    const double z = std::abs(counts[p.value() - 10] / static_cast<double>(samples) - prob) / se;
    if (z > worst_z) {
      worst_z = z;
      worst_prefix = p.value();
    }
  }
  report(worst_z <= 3.0, "sine-monte-carlo",
         fmt("10^6 depth-2 samples (seed 20131), max |z| = %.3f at prefix %llu (limit 3)", worst_z,
             static_cast<unsigned long long>(worst_prefix)));
}

}  // namespace

int main() {
  fibonacci_table();
  fibonacci_reference();
  oracle_equivalence();
  digit_law_discrepancy();
  uniform_quadrature();
  sandwich();
  convergence();
  property_suites();
  std::printf("%d failed\n", failures);
  return failures == 0 ? 0 : 1;
}
