#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "benford/digits.hpp"
#include "benford/distributions.hpp"
#include "benford/summation.hpp"

namespace benford {

/// Sum of significands and item count for one digit prefix.
struct SumEntry {
  CompensatedSum sum;
  std::uint64_t count = 0;

  double value() const { return sum.value(); }
};

/// Empirical significand sums S_p over a dataset, keyed by depth-n prefix.
class SignificandSumTable {
 public:
  explicit SignificandSumTable(int depth);

  int depth() const { return depth_; }
  std::uint64_t total_count() const { return total_count_; }
  std::uint64_t rejects() const { return rejects_; }
  const std::map<DigitPrefix, SumEntry>& entries() const { return entries_; }

  /// Adds one item. Non-positive or non-finite items are counted as rejects
  /// and false is returned.
  bool add(double x);
  void merge(const SignificandSumTable& other);

  double sum(const DigitPrefix& p) const;
  std::uint64_t count(const DigitPrefix& p) const;

  /// Re-keys the table by the first `depth` digits; depth <= this->depth().
  SignificandSumTable aggregate_to(int depth) const;

 private:
  int depth_;
  std::map<DigitPrefix, SumEntry> entries_;
  std::uint64_t total_count_ = 0;
  std::uint64_t rejects_ = 0;
};

/// Builds the table in fixed-size chunks that are merged in chunk order, so
/// the result does not depend on `threads`.
SignificandSumTable empirical_sum_table(std::span<const double> data, int depth,
                                        unsigned threads = 1);

/// Expected significand sum shared by every depth-n prefix under Benford's
/// law: 10^(1-n) / ln 10.
double expected_sum_theoretical(int depth);

/// E[S_p Y] = integral of 10^t g(t) over the log-space bucket of p.
/// Throws ValidationError if g does not integrate to one within 1e-8.
double expected_sum_quadrature(const WrappedDensity& g, const DigitPrefix& p,
                               double abs_tolerance = 1e-10);

struct BoundsResult {
  DigitPrefix prefix;
  double lower;
  double upper;

  double relative_gap() const { return (upper - lower) / lower; }
};

/// Range of E[S_p Y] over all variables that are Benford in their first n
/// digits, n = p.length(): [10^(1-n) x log10(1+1/x)^x, ... ^(x+1)].
BoundsResult theorem_bounds(const DigitPrefix& p);

struct ConvergenceRow {
  int depth;
  double worst_gap;  // max over prefixes of (upper - lower) / lower
  DigitPrefix worst_prefix;
  double min_gap;
  DigitPrefix min_prefix;
  double reference;            // 10^(1-n) / ln 10
  double max_lower_deviation;  // max |lower / reference - 1|
  double max_upper_deviation;  // max |upper / reference - 1|
};

/// One row per depth 1..max_depth (max_depth <= 6).
std::vector<ConvergenceRow> convergence_report(int max_depth);

}  // namespace benford
