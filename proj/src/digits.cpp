#include "benford/digits.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "benford/errors.hpp"

namespace benford {

namespace {

constexpr std::array<std::uint64_t, 19> kPow10 = {
    1ULL,
    10ULL,
    100ULL,
    1000ULL,
    10000ULL,
    100000ULL,
    1000000ULL,
    10000000ULL,
    100000000ULL,
    1000000000ULL,
    10000000000ULL,
    100000000000ULL,
    1000000000000ULL,
    10000000000000ULL,
    100000000000000ULL,
    1000000000000000ULL,
    10000000000000000ULL,
    100000000000000000ULL,
    1000000000000000000ULL,
};

void check_length(int length) {
  if (length < 1 || length > kMaxPrefixLength) {
    throw DomainError("prefix length must be in [1, " + std::to_string(kMaxPrefixLength) +
                      "], got " + std::to_string(length));
  }
}

void check_positive(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("expected a positive finite number");
  }
}

}  // namespace

std::uint64_t pow10_u64(int k) {
  if (k < 0 || k >= static_cast<int>(kPow10.size())) {
    throw DomainError("pow10_u64 exponent out of range");
  }
  return kPow10[static_cast<std::size_t>(k)];
}

DigitPrefix DigitPrefix::from_digits(std::span<const int> digits) {
  check_length(static_cast<int>(digits.size()));
  if (digits[0] < 1 || digits[0] > 9) {
    throw DomainError("leading digit must be in 1..9");
  }
  std::uint64_t value = 0;
  for (int d : digits) {
    if (d < 0 || d > 9) throw DomainError("digits must be in 0..9");
    value = value * 10 + static_cast<std::uint64_t>(d);
  }
  return DigitPrefix(value, static_cast<int>(digits.size()));
}

DigitPrefix DigitPrefix::from_value(std::uint64_t value, int length) {
  check_length(length);
  if (value < kPow10[length - 1] || value >= kPow10[length]) {
    throw DomainError("prefix value " + std::to_string(value) + " does not have " +
                      std::to_string(length) + " digits");
  }
  return DigitPrefix(value, length);
}

DigitPrefix DigitPrefix::parse(std::string_view text) {
  std::vector<int> digits;
  digits.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw DomainError("prefix must consist of decimal digits: '" + std::string(text) + "'");
    }
    digits.push_back(c - '0');
  }
  if (digits.empty()) throw DomainError("empty prefix");
  return from_digits(digits);
}

std::vector<int> DigitPrefix::digits() const {
  std::vector<int> out(static_cast<std::size_t>(length_));
  std::uint64_t v = value_;
  for (int i = length_ - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<int>(v % 10);
    v /= 10;
  }
  return out;
}

std::string DigitPrefix::to_string() const { return std::to_string(value_); }

DigitPrefix DigitPrefix::extended(int digit) const {
  if (digit < 0 || digit > 9) throw DomainError("digits must be in 0..9");
  check_length(length_ + 1);
  return DigitPrefix(value_ * 10 + static_cast<std::uint64_t>(digit), length_ + 1);
}

DigitPrefix DigitPrefix::truncated(int m) const {
  if (m < 1 || m > length_) throw DomainError("cannot truncate prefix to that length");
  return DigitPrefix(value_ / kPow10[length_ - m], m);
}

double DigitPrefix::lower_edge() const {
  return static_cast<double>(value_) / static_cast<double>(kPow10[length_ - 1]);
}

double DigitPrefix::upper_edge() const {
  return static_cast<double>(value_ + 1) / static_cast<double>(kPow10[length_ - 1]);
}

double DigitPrefix::log_lower() const { return bucket_log_boundary(value_, length_); }

double DigitPrefix::log_upper() const { return bucket_log_boundary(value_ + 1, length_); }

std::vector<DigitPrefix> all_prefixes(int length) {
  check_length(length);
  if (length > 7) throw DomainError("refusing to enumerate more than 9e6 prefixes");
  std::vector<DigitPrefix> out;
  const std::uint64_t lo = kPow10[length - 1];
  const std::uint64_t hi = kPow10[length];
  out.reserve(hi - lo);
  for (std::uint64_t x = lo; x < hi; ++x) out.push_back(DigitPrefix::from_value(x, length));
  return out;
}

double bucket_log_boundary(std::uint64_t x, int length) {
  // log10(x) lies in [m-1, m], so the subtraction is exact.
  return std::log10(static_cast<double>(x)) - static_cast<double>(length - 1);
}

Significand::Significand(double value) : value_(value) {
  if (!(value >= 1.0 && value < 10.0)) throw DomainError("significand must lie in [1, 10)");
}

DecimalDecomposition decompose(double x) {
  check_positive(x);
  // "d.dddddddddddddde+XXX": correctly rounded to 15 significant digits.
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, 14);
  if (ec != std::errc{}) throw DomainError("failed to format number");
  std::uint64_t mantissa = static_cast<std::uint64_t>(buf[0] - '0');
  const char* p = buf + 2;
  for (; *p != 'e'; ++p) mantissa = mantissa * 10 + static_cast<std::uint64_t>(*p - '0');
  int exponent = 0;
  std::from_chars(*(p + 1) == '+' ? p + 2 : p + 1, end, exponent);
  return {mantissa, exponent};
}

Significand significand(double x) {
  const auto d = decompose(x);
  return Significand(static_cast<double>(d.mantissa) / 1e14);
}

int digit_at(double x, int index) {
  if (index < 1 || index > kMaxPrefixLength) {
    throw DomainError("digit index must be in [1, " + std::to_string(kMaxPrefixLength) + "]");
  }
  const auto d = decompose(x);
  return static_cast<int>((d.mantissa / kPow10[kMaxPrefixLength - index]) % 10);
}

DigitPrefix prefix_of(double x, int length) {
  check_length(length);
  const auto d = decompose(x);
  return DigitPrefix::from_value(d.mantissa / kPow10[kMaxPrefixLength - length], length);
}

double benford_prefix_prob(const DigitPrefix& p) {
  return std::log1p(1.0 / static_cast<double>(p.value())) / std::numbers::ln10;
}

}  // namespace benford
