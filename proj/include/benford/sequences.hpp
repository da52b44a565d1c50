#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace benford {

/// Unsigned integer stored as little-endian base-10^18 limbs, so the leading
/// decimal digits can be read without any division of the full number.
class DecimalBigInt {
 public:
  static constexpr std::uint64_t kBase = 1'000'000'000'000'000'000ULL;
  static constexpr int kLimbDigits = 18;

  explicit DecimalBigInt(std::uint64_t value = 0);

  DecimalBigInt& operator+=(const DecimalBigInt& other);
  std::size_t digit_count() const;
  /// First `count` (<= 18) decimal digits as an integer; padded with zeros
  /// if the number is shorter.
  std::uint64_t leading_digits(int count) const;
  /// Significand in [1, 10) built from the leading 17 digits.
  double significand() const;
  std::string to_string() const;

 private:
  std::vector<std::uint64_t> limbs_;
};

/// Exact Fibonacci recurrence F_1 = F_2 = 1 holding only two terms at a time.
class FibonacciExact {
 public:
  /// Index of the term returned by current().
  std::uint64_t index() const { return index_; }
  const DecimalBigInt& current() const { return current_; }
  void advance();

 private:
  std::uint64_t index_ = 1;
  DecimalBigInt previous_{0};
  DecimalBigInt current_{1};
};

/// Integer and fractional parts of log10 F_k from Binet's formula, evaluated
/// in double-double arithmetic.
struct FibonacciLog10 {
  std::int64_t integer_part;
  double fraction;  // in [0, 1)
};

FibonacciLog10 fib_log10(std::uint64_t k);

/// Significand of F_k via 10^frac(log10 F_k).
double fib_significand_logspace(std::uint64_t k);

enum class SequenceSource { fib_logspace, fib_exact };

std::string_view to_string(SequenceSource source);

/// Significands of F_1 .. F_N; values[k - 1] belongs to F_k.
struct SignificandStream {
  SequenceSource source;
  std::vector<double> values;
};

inline constexpr std::size_t kMaxLogspaceTerms = 1'000'000;
inline constexpr std::size_t kMaxExactTerms = 100'000;

SignificandStream fib_significands_logspace(std::size_t count);
SignificandStream fib_significands_exact(std::size_t count);

}  // namespace benford
