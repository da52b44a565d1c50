#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace benford {

/// Longest digit prefix that double precision can resolve.
inline constexpr int kMaxPrefixLength = 15;

/// Exact powers of ten for 0 <= k <= 18.
std::uint64_t pow10_u64(int k);

/// Leading significant digits d1...dm of a positive number, stored as the
/// integer x_m = sum 10^(m-j) d_j together with m.
///
/// Every constructor validates, so 10^(m-1) <= value() < 10^m always holds.
class DigitPrefix {
 public:
  static DigitPrefix from_digits(std::span<const int> digits);
  static DigitPrefix from_value(std::uint64_t value, int length);
  /// Parses a digit string such as "111".
  static DigitPrefix parse(std::string_view text);

  int length() const { return length_; }
  std::uint64_t value() const { return value_; }
  std::vector<int> digits() const;
  std::string to_string() const;

  /// Appends one digit (0..9).
  DigitPrefix extended(int digit) const;
  /// Keeps the first m digits.
  DigitPrefix truncated(int m) const;

  /// Significand bucket [x/10^(m-1), (x+1)/10^(m-1)).
  double lower_edge() const;
  double upper_edge() const;
  /// The same bucket in log10 space; these are the canonical boundaries used
  /// by every density and quadrature routine in the library.
  double log_lower() const;
  double log_upper() const;

  friend auto operator<=>(const DigitPrefix&, const DigitPrefix&) = default;

 private:
  DigitPrefix(std::uint64_t value, int length) : value_(value), length_(length) {}

  std::uint64_t value_;
  int length_;
};

/// All 9 * 10^(m-1) prefixes of length m in increasing order.
std::vector<DigitPrefix> all_prefixes(int length);

/// log10(x / 10^(m-1)) for an integer x in [10^(m-1), 10^m].
double bucket_log_boundary(std::uint64_t x, int length);

/// A value in [1, 10).
class Significand {
 public:
  explicit Significand(double value);
  double value() const { return value_; }
  operator double() const { return value_; }

 private:
  double value_;
};

/// Significand of x rounded to 15 significant digits, as an integer mantissa
/// in [10^14, 10^15) and the decimal exponent of x.
struct DecimalDecomposition {
  std::uint64_t mantissa;
  int exponent;
};

DecimalDecomposition decompose(double x);

Significand significand(double x);
int digit_at(double x, int index);
DigitPrefix prefix_of(double x, int length);

/// log10(1 + 1/x_m): probability that a Benford variable starts with p.
double benford_prefix_prob(const DigitPrefix& p);

}  // namespace benford
