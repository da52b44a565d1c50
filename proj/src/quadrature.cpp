#include "benford/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "benford/errors.hpp"
#include "benford/summation.hpp"

namespace benford {

namespace {

struct Simpson {
  const std::function<double(double)>& f;
  const QuadratureOptions& options;
  std::size_t evaluations = 0;
  std::size_t piece_start = 0;
  bool converged = true;
  CompensatedSum error;

  double eval(double x) {
    ++evaluations;
    return f(x);
  }

  static double rule(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  double recurse(double a, double m, double b, double fa, double fm, double fb, double whole,
                 double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = rule(a, m, fa, flm, fm);
    const double right = rule(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth >= options.max_depth ||
        evaluations - piece_start >= options.max_evaluations || lm <= a || rm >= b) {
      if (std::abs(delta) > 15.0 * tol) converged = false;
      error.add(std::abs(delta) / 15.0);
      return left + right + delta / 15.0;
    }
    return recurse(a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }

  double piece(double a, double b, double tol) {
    piece_start = evaluations;
    const double ia = std::nextafter(a, b);
    const double ib = std::nextafter(b, a);
    const double m = 0.5 * (a + b);
    const double fa = eval(ia);
    const double fm = eval(m);
    const double fb = eval(ib);
    return recurse(a, m, b, fa, fm, fb, rule(a, b, fa, fm, fb), tol, 0);
  }
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints, const QuadratureOptions& options) {
  if (!(a <= b)) throw DomainError("integrate: expected a <= b");
  QuadratureResult result;
  if (a == b) return result;

  std::vector<double> cuts{a};
  const auto first = std::upper_bound(breakpoints.begin(), breakpoints.end(), a);
  const auto last = std::lower_bound(first, breakpoints.end(), b);
  cuts.insert(cuts.end(), first, last);
  cuts.push_back(b);
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  Simpson s{f, options, 0, 0, true, {}};
  CompensatedSum total;
  const double width = b - a;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    total.add(s.piece(lo, hi, options.abs_tolerance * (hi - lo) / width));
  }
  result.value = total.value();
  result.error_estimate = s.error.value();
  result.evaluations = s.evaluations;
  result.converged = s.converged;
  return result;
}

}  // namespace benford
