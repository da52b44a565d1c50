#include "benford/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "benford/digits.hpp"
#include "benford/errors.hpp"

namespace benford {

namespace {

// log10(phi) and log10(sqrt 5) split into high and low doubles; together they
// carry ~32 significant digits:
//   log10(phi)     = 0.2089876402499787337692720892375554168225
//   log10(sqrt(5)) = 0.3494850021680094023931305526377534866159
constexpr double kLog10PhiHi = 0.20898764024997873;
constexpr double kLog10PhiLo = -6.831685870127068e-19;
constexpr double kLog10Sqrt5Hi = 0.34948500216800943;
constexpr double kLog10Sqrt5Lo = -2.635371155173633e-17;

// Below this index the psi^k term of Binet's formula is still visible in
// double precision.
constexpr std::uint64_t kBinetCorrectionLimit = 40;

constexpr double kBelowTen = 9.999999999999998;

struct DoubleDouble {
  double hi;
  double lo;
};

DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace

DecimalBigInt::DecimalBigInt(std::uint64_t value) {
  do {
    limbs_.push_back(value % kBase);
    value /= kBase;
  } while (value != 0);
}

DecimalBigInt& DecimalBigInt::operator+=(const DecimalBigInt& other) {
  if (other.limbs_.size() > limbs_.size()) limbs_.resize(other.limbs_.size(), 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t v = limbs_[i] + carry + (i < other.limbs_.size() ? other.limbs_[i] : 0);
    carry = v >= kBase ? 1 : 0;
    limbs_[i] = v - carry * kBase;
    if (carry == 0 && i >= other.limbs_.size()) break;
  }
  if (carry != 0) limbs_.push_back(carry);
  return *this;
}

namespace {

int digits_of(std::uint64_t v) {
  int d = 1;
  while (v >= 10) {
    v /= 10;
    ++d;
  }
  return d;
}

}  // namespace

std::size_t DecimalBigInt::digit_count() const {
  return (limbs_.size() - 1) * kLimbDigits + static_cast<std::size_t>(digits_of(limbs_.back()));
}

std::uint64_t DecimalBigInt::leading_digits(int count) const {
  if (count < 1 || count > kLimbDigits) throw DomainError("leading_digits count must be in [1, 18]");
  const std::uint64_t top = limbs_.back();
  const int top_digits = digits_of(top);
  if (top_digits >= count) return top / pow10_u64(top_digits - count);
  const int missing = count - top_digits;
  std::uint64_t lead = top * pow10_u64(missing);
  if (limbs_.size() >= 2) lead += limbs_[limbs_.size() - 2] / pow10_u64(kLimbDigits - missing);
  return lead;
}

double DecimalBigInt::significand() const {
  if (limbs_.size() == 1 && limbs_[0] == 0) throw DomainError("zero has no significand");
  const double s = static_cast<double>(leading_digits(17)) / 1e16;
  return std::clamp(s, 1.0, kBelowTen);
}

std::string DecimalBigInt::to_string() const {
  std::string out = std::to_string(limbs_.back());
  for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
    const std::string limb = std::to_string(limbs_[i]);
    out.append(static_cast<std::size_t>(kLimbDigits) - limb.size(), '0');
    out += limb;
  }
  return out;
}

void FibonacciExact::advance() {
  previous_ += current_;
  std::swap(previous_, current_);
  ++index_;
}

FibonacciLog10 fib_log10(std::uint64_t k) {
  if (k == 0) throw DomainError("F_0 = 0 has no logarithm");
  // F_1 = F_2 = 1 sit exactly on a decade boundary that rounding can miss.
  if (k <= 2) return {0, 0.0};
  const double kd = static_cast<double>(k);
  // k log10(phi) - log10(sqrt 5) in double-double.
  const DoubleDouble prod = two_prod(kd, kLog10PhiHi);
  const DoubleDouble diff = two_sum(prod.hi, -kLog10Sqrt5Hi);
  const double low = prod.lo + kd * kLog10PhiLo + diff.lo - kLog10Sqrt5Lo;

  auto integer_part = static_cast<std::int64_t>(std::floor(diff.hi));
  double fraction = (diff.hi - static_cast<double>(integer_part)) + low;

  if (k < kBinetCorrectionLimit) {
    // F_k = phi^k / sqrt 5 * (1 - (-1)^k phi^(-2k)).
    const double ratio = std::pow(std::numbers::phi, -2.0 * kd);
    fraction += std::log1p(k % 2 == 0 ? -ratio : ratio) / std::numbers::ln10;
  }
  const double whole = std::floor(fraction);
  fraction -= whole;
  integer_part += static_cast<std::int64_t>(whole);
  if (fraction >= 1.0) {
    fraction = 0.0;
    ++integer_part;
  }
  return {integer_part, fraction};
}

double fib_significand_logspace(std::uint64_t k) {
  if (k == 0) throw DomainError("F_0 = 0 has no significand");
  if (k <= 2) return 1.0;
  return std::clamp(std::pow(10.0, fib_log10(k).fraction), 1.0, kBelowTen);
}

std::string_view to_string(SequenceSource source) {
  return source == SequenceSource::fib_logspace ? "fib-logspace" : "fib-exact";
}

SignificandStream fib_significands_logspace(std::size_t count) {
  if (count < 1 || count > kMaxLogspaceTerms) {
    throw DomainError("log-space Fibonacci count must be in [1, " +
                      std::to_string(kMaxLogspaceTerms) + "]");
  }
  SignificandStream out{SequenceSource::fib_logspace, {}};
  out.values.reserve(count);
  for (std::uint64_t k = 1; k <= count; ++k) out.values.push_back(fib_significand_logspace(k));
  return out;
}

SignificandStream fib_significands_exact(std::size_t count) {
  if (count < 1 || count > kMaxExactTerms) {
    throw DomainError("exact Fibonacci count must be in [1, " + std::to_string(kMaxExactTerms) +
                      "]");
  }
  SignificandStream out{SequenceSource::fib_exact, {}};
  out.values.reserve(count);
  FibonacciExact fib;
  for (std::size_t k = 1; k <= count; ++k, fib.advance()) {
    out.values.push_back(fib.current().significand());
  }
  return out;
}

}  // namespace benford
