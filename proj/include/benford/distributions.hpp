#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "benford/digits.hpp"

namespace benford {

/// Deepest digit level for which the constructive families are built. The
/// sine family precomputes 9 * 10^(n-1) cumulative masses.
inline constexpr int kMaxFamilyDepth = 4;

/// Density of (log10 Y) mod 1 on [0, 1), i.e. the periodised log-density.
///
/// Values can be arbitrarily large; only the domain is the unit interval. The
/// total mass is integrated once at construction and is available through
/// total_mass().
class WrappedDensity {
 public:
  WrappedDensity(std::function<double(double)> evaluate, std::vector<double> breakpoints,
                 std::string description);

  /// Density at t; zero outside [0, 1).
  double operator()(double t) const;
  /// Points in (0, 1) where the density may be discontinuous or kinked.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::string& description() const { return description_; }
  double total_mass() const { return total_mass_; }

 private:
  std::function<double(double)> evaluate_;
  std::vector<double> breakpoints_;
  std::string description_;
  double total_mass_ = 0.0;
};

/// Exact Benford law on [1, 10): pdf 1/(y ln 10), wrapped log-density 1.
class BenfordDist {
 public:
  double pdf(double y) const;
  double log_density(double t) const;
  double cdf(double y) const;
  double sample(double u) const;
  std::vector<double> breakpoints() const { return {}; }
  std::string name() const { return "benford"; }
};

/// n-digit Benford variable whose log-density is a half sine arch over every
/// depth-n bucket. For n = 2 it is the classic example whose third digit is
/// not Benford.
class SineBenfordDist {
 public:
  explicit SineBenfordDist(int depth);

  int depth() const { return depth_; }
  double pdf(double y) const;
  double log_density(double t) const;
  double cdf(double y) const;
  /// Inverse-CDF transform of a uniform variate u in [0, 1).
  double sample(double u) const;
  /// Closed form log10(1 + 1/x_n); p must have length depth().
  double bucket_mass(const DigitPrefix& p) const;
  std::vector<double> breakpoints() const;
  std::string name() const { return "sine(n=" + std::to_string(depth_) + ")"; }

 private:
  std::size_t bucket_index(double t) const;

  int depth_;
  // cumulative_[i] = mass of all buckets before bucket 10^(n-1)+i, i.e. the
  // log10 lower boundary of that bucket; the last entry is 1.
  std::shared_ptr<const std::vector<double>> cumulative_;
};

enum class Side { lower, upper };

/// Member of the n-digit Benford class whose log-mass in every depth-n bucket
/// is a uniform pulse occupying a fraction eps of the bucket at one end.
class EdgeConcentratedDist {
 public:
  EdgeConcentratedDist(int depth, double eps, Side side);

  int depth() const { return depth_; }
  double eps() const { return eps_; }
  Side side() const { return side_; }
  double pdf(double y) const;
  double log_density(double t) const;
  std::vector<double> breakpoints() const;
  std::string name() const;

 private:
  int depth_;
  double eps_;
  Side side_;
};

using Distribution = std::variant<BenfordDist, SineBenfordDist, EdgeConcentratedDist>;

BenfordDist benford_reference();
double sine_pdf(const SineBenfordDist& dist, double y);
double bucket_mass(const SineBenfordDist& dist, const DigitPrefix& p);
double sample(const SineBenfordDist& dist, double u);
EdgeConcentratedDist edge_concentrated(int depth, double eps, Side side);

double pdf(const Distribution& dist, double y);
std::string name(const Distribution& dist);
WrappedDensity wrapped_density(const Distribution& dist);

/// Probability that Y starts with p, by log-space quadrature of the density.
/// Works for prefixes of any length, including lengths beyond the family depth.
double prefix_mass(const WrappedDensity& g, const DigitPrefix& p, double abs_tolerance = 1e-12);

/// Same probability by integrating the pdf in y-space over the bucket.
double prefix_mass_linear(const Distribution& dist, const DigitPrefix& p,
                          double abs_tolerance = 1e-12);

/// (y, pdf(y)) on the grid y_i = 1 + 9 i / resolution, i < resolution.
std::vector<std::pair<double, double>> tabulate_density(const Distribution& dist, int resolution);

/// Depth-n bucket (as prefix value) containing log10 significand t in [0, 1).
std::uint64_t locate_bucket(double t, int depth);

}  // namespace benford
