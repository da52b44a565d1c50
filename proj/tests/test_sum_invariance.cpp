#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "benford/digits.hpp"
#include "benford/distributions.hpp"
#include "benford/errors.hpp"
#include "benford/sum_invariance.hpp"

using namespace benford;
using std::numbers::ln10;

namespace {

// Closed-form E[S_p] for a depth-n edge pulse: the integral of 10^t / eps over
// the first (lower) or last (upper) eps * L of the log bucket.
double edge_expected_sum(std::uint64_t x, int n, double eps, Side side) {
  const double a = std::log10(static_cast<double>(x)) - (n - 1);
  const double b = std::log10(static_cast<double>(x + 1)) - (n - 1);
  const double w = eps * (b - a);
  const double lo = side == Side::lower ? a : b - w;
  return (std::pow(10.0, lo + w) - std::pow(10.0, lo)) / (eps * ln10);
}

// Independent y-space route: composite Simpson of y * pdf(y) over every
// family bucket inside [lo, hi), 400 panels per bucket.
double linear_expected_sum(const SineBenfordDist& d, const DigitPrefix& p) {
  const int n = d.depth();
  const int extra = n - p.length();
  const std::uint64_t first = p.value() * pow10_u64(extra);
  const std::uint64_t last = (p.value() + 1) * pow10_u64(extra);
  const double scale = static_cast<double>(pow10_u64(n - 1));
  double total = 0.0;
  for (std::uint64_t x = first; x < last; ++x) {
    const double a = x / scale;
    const double b = (x + 1) / scale;
    const int panels = 400;
    const double h = (b - a) / panels;
    auto f = [&](double y) { return y * d.pdf(y); };
    double s = f(std::nextafter(a, b)) + f(std::nextafter(b, a));
    for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    total += s * h / 3.0;
  }
  return total;
}

}  // namespace

TEST_CASE("theoretical expected sum") {
  CHECK(expected_sum_theoretical(1) == doctest::Approx(0.4342945).epsilon(1e-7));
  CHECK(std::abs(50000 * expected_sum_theoretical(1) - 21714.7) <= 0.05);
  CHECK(expected_sum_theoretical(2) == doctest::Approx(0.04342945).epsilon(1e-7));
  CHECK_THROWS_AS(expected_sum_theoretical(0), DomainError);
}

TEST_CASE("quadrature expected sum with a uniform wrapped density") {
  const auto g = wrapped_density(benford_reference());
  CHECK(expected_sum_quadrature(g, DigitPrefix::parse("2")) == doctest::Approx(1.0 / ln10).epsilon(1e-12));
  for (int n = 1; n <= 3; ++n) {
    for (const auto& p : all_prefixes(n)) {
      REQUIRE(std::abs(expected_sum_quadrature(g, p) - expected_sum_theoretical(n)) <= 1e-10);
    }
  }
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto p = DigitPrefix::from_value(1000 + rng() % 9000, 4);
    REQUIRE(std::abs(expected_sum_quadrature(g, p) - expected_sum_theoretical(4)) <= 1e-10);
  }
}

TEST_CASE("quadrature expected sum of the one-digit sine family") {
  const auto g = wrapped_density(SineBenfordDist(1));
  const double e = expected_sum_quadrature(g, DigitPrefix::parse("1"));
  CHECK(e == doctest::Approx(0.43058412880257957).epsilon(1e-10));
  CHECK(e > 0.3010300);
  CHECK(e < 0.6020600);
}

TEST_CASE("expected sums agree between log-space and y-space integration") {
  for (int n = 1; n <= 3; ++n) {
    const SineBenfordDist d(n);
    const auto g = wrapped_density(d);
    for (int m = 1; m <= n; ++m) {
      for (const auto& p : all_prefixes(m)) {
        if (m == 3 && p.value() % 37 != 0) continue;
        REQUIRE(std::abs(expected_sum_quadrature(g, p) - linear_expected_sum(d, p)) <= 1e-8);
      }
    }
  }
  CHECK(expected_sum_quadrature(wrapped_density(SineBenfordDist(2)), DigitPrefix::parse("47")) ==
        doctest::Approx(0.043429101929150213).epsilon(1e-10));
}

TEST_CASE("unnormalised wrapped density is rejected") {
  const WrappedDensity twice([](double) { return 2.0; }, {}, "twice uniform");
  CHECK(twice.total_mass() == doctest::Approx(2.0));
  CHECK_THROWS_AS(expected_sum_quadrature(twice, DigitPrefix::parse("1")), ValidationError);
}

TEST_CASE("theorem bounds examples") {
  const auto b1 = theorem_bounds(DigitPrefix::parse("1"));
  CHECK(b1.lower == doctest::Approx(0.3010300).epsilon(1e-7));
  CHECK(b1.upper == doctest::Approx(0.6020600).epsilon(1e-7));
  CHECK(b1.relative_gap() == doctest::Approx(1.0).epsilon(1e-14));

  const auto b99 = theorem_bounds(DigitPrefix::parse("99"));
  CHECK(std::abs(b99.lower - 0.0432116) <= 1e-7);
  CHECK(std::abs(b99.upper - 0.0436481) <= 1e-7);
  CHECK(b99.lower < expected_sum_theoretical(2));
  CHECK(expected_sum_theoretical(2) < b99.upper);
}

TEST_CASE("bounds gap identity (property)") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 5000; ++i) {
    const int n = 1 + static_cast<int>(rng() % 7);
    const auto p = DigitPrefix::from_value(pow10_u64(n - 1) + rng() % (9 * pow10_u64(n - 1)), n);
    const auto b = theorem_bounds(p);
    REQUIRE(b.lower < b.upper);
    REQUIRE(std::abs(b.relative_gap() - 1.0 / static_cast<double>(p.value())) <= 1e-12);
    // x log10(1 + 1/x)^x form, directly.
    const double x = static_cast<double>(p.value());
    REQUIRE(b.lower == doctest::Approx(std::pow(10.0, 1 - n) * x * std::log10(1.0 + 1.0 / x)).epsilon(1e-9));
  }
}

TEST_CASE("every constructed member lies between the bounds") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<Distribution> families{benford_reference(), SineBenfordDist(n)};
    for (double eps : {0.1, 0.01, 0.001}) {
      families.emplace_back(edge_concentrated(n, eps, Side::lower));
      families.emplace_back(edge_concentrated(n, eps, Side::upper));
    }
    for (const auto& f : families) {
      const auto g = wrapped_density(f);
      CAPTURE(name(f));
      for (const auto& p : all_prefixes(n)) {
        const auto b = theorem_bounds(p);
        const double e = expected_sum_quadrature(g, p);
        REQUIRE(e >= b.lower - 1e-9);
        REQUIRE(e <= b.upper + 1e-9);
      }
    }
  }
}

TEST_CASE("edge pulses match their closed form and approach the bounds") {
  for (int n = 1; n <= 2; ++n) {
    for (Side side : {Side::lower, Side::upper}) {
      for (double eps : {0.1, 0.01, 0.001}) {
        const auto g = wrapped_density(edge_concentrated(n, eps, side));
        for (const auto& p : all_prefixes(n)) {
          REQUIRE(std::abs(expected_sum_quadrature(g, p) - edge_expected_sum(p.value(), n, eps, side)) <= 1e-12);
        }
      }
    }
  }

  // The distance to the bound is linear in eps to leading order, so one
  // Richardson step from eps = 0.01 and 0.001 removes it.
  const auto p = DigitPrefix::parse("1");
  const auto e = [&](double eps, Side side) {
    return expected_sum_quadrature(wrapped_density(edge_concentrated(1, eps, side)), p);
  };
  const double lower_limit = (10 * e(0.001, Side::lower) - e(0.01, Side::lower)) / 9;
  const double upper_limit = (10 * e(0.001, Side::upper) - e(0.01, Side::upper)) / 9;
  CHECK(std::abs(lower_limit - 0.3010300) <= 1e-6);
  CHECK(std::abs(upper_limit - 0.6020600) <= 1e-6);
}

TEST_CASE("empirical table of 1..9") {
  std::vector<double> data{1, 2, 3, 4, 5, 6, 7, 8, 9};
  const auto t = empirical_sum_table(data, 1);
  CHECK(t.total_count() == 9);
  for (int d = 1; d <= 9; ++d) {
    const auto p = DigitPrefix::from_value(d, 1);
    CHECK(t.sum(p) == d);
    CHECK(t.count(p) == 1);
  }
}

TEST_CASE("empirical table rejects invalid items") {
  std::vector<double> data{1.5, -2.0, 0.0, NAN, INFINITY, 250.0};
  const auto t = empirical_sum_table(data, 2);
  CHECK(t.total_count() == 2);
  CHECK(t.rejects() == 4);
  CHECK(t.sum(DigitPrefix::parse("15")) == 1.5);
  CHECK(t.sum(DigitPrefix::parse("25")) == 2.5);
  CHECK(t.count(DigitPrefix::parse("99")) == 0);
  CHECK_THROWS_AS(SignificandSumTable(16), DomainError);
}

TEST_CASE("empirical table invariants (property)") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> expo(-20, 20);
  std::vector<double> data(300000);
  for (auto& x : data) x = std::pow(10.0, expo(rng));

  const auto t3 = empirical_sum_table(data, 3);
  std::uint64_t counted = 0;
  for (const auto& [p, e] : t3.entries()) {
    counted += e.count;
    REQUIRE(e.value() >= e.count * p.lower_edge() * (1 - 1e-15));
    REQUIRE(e.value() < e.count * p.upper_edge());
  }
  CHECK(counted == t3.total_count());

  const auto direct = empirical_sum_table(data, 2);
  const auto folded = t3.aggregate_to(2);
  for (const auto& [p, e] : direct.entries()) {
    REQUIRE(folded.count(p) == e.count);
    REQUIRE(std::abs(folded.sum(p) - e.value()) <= 1e-9);
  }
  CHECK_THROWS_AS(t3.aggregate_to(4), DomainError);

  // Chunked accumulation is independent of the thread count.
  const auto parallel = empirical_sum_table(data, 3, 4);
  for (const auto& [p, e] : t3.entries()) REQUIRE(parallel.sum(p) == e.value());
}

TEST_CASE("Benford samples have the expected significand sums") {
  const int items = 100000;
  std::mt19937_64 rng(1234);
  std::vector<double> data(items);
  const auto b = benford_reference();
  for (auto& x : data) x = b.sample(static_cast<double>(rng() >> 11) * 0x1.0p-53) * std::pow(10.0, rng() % 9);
  const auto t = empirical_sum_table(data, 1);
  const double mean = items * expected_sum_theoretical(1);
  for (int d = 1; d <= 9; ++d) {
    // Per item: E[Y 1{D1=d}] = 1/ln10, E[Y^2 1{D1=d}] = (2d+1) / (2 ln10).
    const double var = (2.0 * d + 1.0) / (2.0 * ln10) - 1.0 / (ln10 * ln10);
    const double sd = std::sqrt(items * var);
    CAPTURE(d);
    CHECK(std::abs(t.sum(DigitPrefix::from_value(d, 1)) - mean) <= 5 * sd);
  }
}

TEST_CASE("convergence report") {
  const auto rows = convergence_report(5);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].worst_gap == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rows[0].worst_prefix.value() == 1);
  CHECK(rows[1].worst_gap == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(rows[1].worst_prefix.value() == 10);
  CHECK(rows[2].worst_gap == doctest::Approx(0.01).epsilon(1e-12));
  for (const auto& r : rows) {
    CAPTURE(r.depth);
    CHECK(std::abs(r.worst_gap - std::pow(10.0, 1 - r.depth)) <= 1e-12);
    CHECK(r.min_gap == doctest::Approx(1.0 / (std::pow(10.0, r.depth) - 1)).epsilon(1e-9));
    CHECK(r.min_prefix.value() == pow10_u64(r.depth) - 1);
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].max_lower_deviation < rows[i - 1].max_lower_deviation);
    CHECK(rows[i].max_upper_deviation < rows[i - 1].max_upper_deviation);
  }
  CHECK(rows.back().max_upper_deviation < 1e-4);
  CHECK_THROWS_AS(convergence_report(7), DomainError);
}
