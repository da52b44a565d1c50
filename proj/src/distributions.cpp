#include "benford/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "benford/errors.hpp"
#include "benford/quadrature.hpp"

namespace benford {

namespace {

using std::numbers::ln10;
using std::numbers::pi;

constexpr double kBelowTen = 9.999999999999998;  // nextafter(10, 0)

void check_depth(int depth) {
  if (depth < 1 || depth > kMaxFamilyDepth) {
    throw DomainError("family depth must be in [1, " + std::to_string(kMaxFamilyDepth) + "]");
  }
}

void check_uniform(double u) {
  if (!(u >= 0.0 && u < 1.0)) throw DomainError("uniform variate must lie in [0, 1)");
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

template <class Dist>
double pdf_from_log_density(const Dist& d, double y) {
  if (!(y >= 1.0 && y < 10.0)) return 0.0;
  return d.log_density(std::log10(y)) / (y * ln10);
}

}  // namespace

std::uint64_t locate_bucket(double t, int depth) {
  const std::uint64_t base = pow10_u64(depth - 1);
  const std::uint64_t top = pow10_u64(depth) - 1;
  const double guess = std::floor(std::pow(10.0, t + static_cast<double>(depth - 1)));
  std::uint64_t x = std::clamp(static_cast<std::uint64_t>(std::max(guess, 0.0)), base, top);
  while (x > base && t < bucket_log_boundary(x, depth)) --x;
  while (x < top && t >= bucket_log_boundary(x + 1, depth)) ++x;
  return x;
}

// ---------------------------------------------------------------------------

WrappedDensity::WrappedDensity(std::function<double(double)> evaluate,
                               std::vector<double> breakpoints, std::string description)
    : evaluate_(std::move(evaluate)),
      breakpoints_(std::move(breakpoints)),
      description_(std::move(description)) {
  std::sort(breakpoints_.begin(), breakpoints_.end());
  QuadratureOptions opts;
  opts.abs_tolerance = 1e-10;
  total_mass_ = integrate(evaluate_, 0.0, 1.0, breakpoints_, opts).value;
}

double WrappedDensity::operator()(double t) const {
  if (!(t >= 0.0 && t < 1.0)) return 0.0;
  return evaluate_(t);
}

// ---------------------------------------------------------------------------

double BenfordDist::pdf(double y) const {
  if (!(y >= 1.0 && y < 10.0)) return 0.0;
  return 1.0 / (y * ln10);
}

double BenfordDist::log_density(double t) const { return (t >= 0.0 && t < 1.0) ? 1.0 : 0.0; }

double BenfordDist::cdf(double y) const {
  if (y < 1.0) return 0.0;
  if (y >= 10.0) return 1.0;
  return std::log10(y);
}

double BenfordDist::sample(double u) const {
  check_uniform(u);
  return std::min(std::pow(10.0, u), kBelowTen);
}

// ---------------------------------------------------------------------------

SineBenfordDist::SineBenfordDist(int depth) : depth_(depth) {
  check_depth(depth);
  const std::uint64_t base = pow10_u64(depth - 1);
  const std::uint64_t end = pow10_u64(depth);
  auto cumulative = std::make_shared<std::vector<double>>();
  cumulative->reserve(end - base + 1);
  for (std::uint64_t x = base; x <= end; ++x) {
    cumulative->push_back(bucket_log_boundary(x, depth));
  }
  cumulative_ = std::move(cumulative);
}

std::size_t SineBenfordDist::bucket_index(double t) const {
  const auto& cum = *cumulative_;
  auto it = std::upper_bound(cum.begin(), cum.end() - 1, t);
  if (it == cum.begin()) return 0;
  return static_cast<std::size_t>(it - cum.begin()) - 1;
}

double SineBenfordDist::pdf(double y) const {
  if (!(y >= 1.0 && y < 10.0)) return 0.0;
  const std::uint64_t base = pow10_u64(depth_ - 1);
  const std::uint64_t top = pow10_u64(depth_) - 1;
  const double scale = static_cast<double>(base);
  auto x = std::clamp(static_cast<std::uint64_t>(y * scale), base, top);
  while (x > base && y < static_cast<double>(x) / scale) --x;
  while (x < top && y >= static_cast<double>(x + 1) / scale) ++x;
  const double xd = static_cast<double>(x);
  const double beta = clamp01(std::log(y * scale / xd) / std::log1p(1.0 / xd));
  return pi / (2.0 * y * ln10) * std::sin(pi * beta);
}

double SineBenfordDist::log_density(double t) const {
  if (!(t >= 0.0 && t < 1.0)) return 0.0;
  const auto& cum = *cumulative_;
  const std::size_t i = bucket_index(t);
  const double beta = clamp01((t - cum[i]) / (cum[i + 1] - cum[i]));
  return 0.5 * pi * std::sin(pi * beta);
}

double SineBenfordDist::cdf(double y) const {
  if (y < 1.0) return 0.0;
  if (y >= 10.0) return 1.0;
  const auto& cum = *cumulative_;
  const double t = std::log10(y);
  const std::size_t i = bucket_index(t);
  const double width = cum[i + 1] - cum[i];
  const double beta = clamp01((t - cum[i]) / width);
  // (1 - cos(pi beta)) / 2 written without cancellation near beta = 0.
  const double s = std::sin(0.5 * pi * beta);
  return cum[i] + width * s * s;
}

double SineBenfordDist::sample(double u) const {
  check_uniform(u);
  const auto& cum = *cumulative_;
  // Ties at a bucket boundary go to the right-hand bucket.
  const std::size_t i = bucket_index(u);
  const double width = cum[i + 1] - cum[i];
  const double v = clamp01((u - cum[i]) / width);
  const double beta = 2.0 / pi * std::asin(std::sqrt(v));
  const double y = std::pow(10.0, cum[i] + beta * width);
  return std::clamp(y, 1.0, kBelowTen);
}

double SineBenfordDist::bucket_mass(const DigitPrefix& p) const {
  if (p.length() != depth_) {
    throw DomainError("prefix length " + std::to_string(p.length()) +
                      " does not match family depth " + std::to_string(depth_));
  }
  return benford_prefix_prob(p);
}

std::vector<double> SineBenfordDist::breakpoints() const {
  const auto& cum = *cumulative_;
  return {cum.begin() + 1, cum.end() - 1};
}

// ---------------------------------------------------------------------------

EdgeConcentratedDist::EdgeConcentratedDist(int depth, double eps, Side side)
    : depth_(depth), eps_(eps), side_(side) {
  check_depth(depth);
  if (!(eps > 0.0 && eps <= 0.5)) throw DomainError("edge pulse width eps must lie in (0, 1/2]");
}

double EdgeConcentratedDist::pdf(double y) const { return pdf_from_log_density(*this, y); }

double EdgeConcentratedDist::log_density(double t) const {
  if (!(t >= 0.0 && t < 1.0)) return 0.0;
  const std::uint64_t x = locate_bucket(t, depth_);
  const double lo = bucket_log_boundary(x, depth_);
  const double hi = bucket_log_boundary(x + 1, depth_);
  const double pulse = eps_ * (hi - lo);
  const bool inside = side_ == Side::lower ? t < lo + pulse : t >= hi - pulse;
  return inside ? 1.0 / eps_ : 0.0;
}

std::vector<double> EdgeConcentratedDist::breakpoints() const {
  const std::uint64_t base = pow10_u64(depth_ - 1);
  const std::uint64_t end = pow10_u64(depth_);
  std::vector<double> out;
  out.reserve(2 * (end - base));
  for (std::uint64_t x = base; x < end; ++x) {
    const double lo = bucket_log_boundary(x, depth_);
    const double hi = bucket_log_boundary(x + 1, depth_);
    if (x > base) out.push_back(lo);
    out.push_back(side_ == Side::lower ? lo + eps_ * (hi - lo) : hi - eps_ * (hi - lo));
  }
  return out;
}

std::string EdgeConcentratedDist::name() const {
  char eps[32];
  std::snprintf(eps, sizeof eps, "%g", eps_);
  return "edge(n=" + std::to_string(depth_) + ", eps=" + eps +
         ", side=" + (side_ == Side::lower ? "lower" : "upper") + ")";
}

// ---------------------------------------------------------------------------

BenfordDist benford_reference() { return {}; }

double sine_pdf(const SineBenfordDist& dist, double y) { return dist.pdf(y); }

double bucket_mass(const SineBenfordDist& dist, const DigitPrefix& p) {
  return dist.bucket_mass(p);
}

double sample(const SineBenfordDist& dist, double u) { return dist.sample(u); }

EdgeConcentratedDist edge_concentrated(int depth, double eps, Side side) {
  return EdgeConcentratedDist(depth, eps, side);
}

double pdf(const Distribution& dist, double y) {
  return std::visit([y](const auto& d) { return d.pdf(y); }, dist);
}

std::string name(const Distribution& dist) {
  return std::visit([](const auto& d) { return d.name(); }, dist);
}

WrappedDensity wrapped_density(const Distribution& dist) {
  // Every family lives on [1, 10), so only the k = 0 term of the
  // periodisation sum is nonzero and g-dagger coincides with g on [0, 1).
  return std::visit(
      [](const auto& d) {
        return WrappedDensity([d](double t) { return d.log_density(t); }, d.breakpoints(),
                              d.name());
      },
      dist);
}

double prefix_mass(const WrappedDensity& g, const DigitPrefix& p, double abs_tolerance) {
  QuadratureOptions opts;
  opts.abs_tolerance = abs_tolerance;
  return integrate([&g](double t) { return g(t); }, p.log_lower(), p.log_upper(), g.breakpoints(),
                   opts)
      .value;
}

double prefix_mass_linear(const Distribution& dist, const DigitPrefix& p, double abs_tolerance) {
  std::vector<double> cuts = std::visit([](const auto& d) { return d.breakpoints(); }, dist);
  for (double& c : cuts) c = std::pow(10.0, c);
  if (const auto* sine = std::get_if<SineBenfordDist>(&dist)) {
    // Use the same y-space bucket edges as SineBenfordDist::pdf.
    const double scale = static_cast<double>(pow10_u64(sine->depth() - 1));
    std::uint64_t x = pow10_u64(sine->depth() - 1);
    for (double& c : cuts) c = static_cast<double>(++x) / scale;
  }
  QuadratureOptions opts;
  opts.abs_tolerance = abs_tolerance;
  return integrate([&dist](double y) { return pdf(dist, y); }, p.lower_edge(), p.upper_edge(),
                   cuts, opts)
      .value;
}

std::vector<std::pair<double, double>> tabulate_density(const Distribution& dist, int resolution) {
  if (resolution < 1) throw DomainError("resolution must be positive");
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(resolution));
  for (int i = 0; i < resolution; ++i) {
    const double y = 1.0 + 9.0 * static_cast<double>(i) / static_cast<double>(resolution);
    out.emplace_back(y, pdf(dist, y));
  }
  return out;
}

}  // namespace benford
