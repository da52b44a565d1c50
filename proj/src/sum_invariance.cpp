#include "benford/sum_invariance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "benford/errors.hpp"
#include "benford/quadrature.hpp"

namespace benford {

namespace {

constexpr std::size_t kChunkSize = 1 << 16;

double inverse_pow10(int k) { return 1.0 / static_cast<double>(pow10_u64(k)); }

}  // namespace

SignificandSumTable::SignificandSumTable(int depth) : depth_(depth) {
  if (depth < 1 || depth > kMaxPrefixLength) {
    throw DomainError("sum table depth must be in [1, " + std::to_string(kMaxPrefixLength) + "]");
  }
}

bool SignificandSumTable::add(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    ++rejects_;
    return false;
  }
  const auto d = decompose(x);
  const auto p = DigitPrefix::from_value(d.mantissa / pow10_u64(kMaxPrefixLength - depth_), depth_);
  auto& e = entries_[p];
  e.sum.add(static_cast<double>(d.mantissa) / 1e14);
  ++e.count;
  ++total_count_;
  return true;
}

void SignificandSumTable::merge(const SignificandSumTable& other) {
  if (other.depth_ != depth_) throw DomainError("cannot merge sum tables of different depth");
  for (const auto& [p, e] : other.entries_) {
    auto& mine = entries_[p];
    mine.sum.merge(e.sum);
    mine.count += e.count;
  }
  total_count_ += other.total_count_;
  rejects_ += other.rejects_;
}

double SignificandSumTable::sum(const DigitPrefix& p) const {
  auto it = entries_.find(p);
  return it == entries_.end() ? 0.0 : it->second.value();
}

std::uint64_t SignificandSumTable::count(const DigitPrefix& p) const {
  auto it = entries_.find(p);
  return it == entries_.end() ? 0 : it->second.count;
}

SignificandSumTable SignificandSumTable::aggregate_to(int depth) const {
  if (depth < 1 || depth > depth_) throw DomainError("can only aggregate to a shallower depth");
  SignificandSumTable out(depth);
  for (const auto& [p, e] : entries_) {
    auto& target = out.entries_[p.truncated(depth)];
    target.sum.merge(e.sum);
    target.count += e.count;
  }
  out.total_count_ = total_count_;
  out.rejects_ = rejects_;
  return out;
}

SignificandSumTable empirical_sum_table(std::span<const double> data, int depth,
                                        unsigned threads) {
  const std::size_t chunks = (data.size() + kChunkSize - 1) / kChunkSize;
  std::vector<SignificandSumTable> partial(chunks, SignificandSumTable(depth));
  auto work = [&](std::size_t first) {
    for (std::size_t c = first; c < chunks; c += threads) {
      const auto piece = data.subspan(c * kChunkSize, std::min(kChunkSize, data.size() - c * kChunkSize));
      for (double x : piece) partial[c].add(x);
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(chunks, 1))));
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  SignificandSumTable out(depth);
  for (const auto& t : partial) out.merge(t);
  return out;
}

double expected_sum_theoretical(int depth) {
  if (depth < 1 || depth > kMaxPrefixLength) throw DomainError("depth must be in [1, 15]");
  return inverse_pow10(depth - 1) / std::numbers::ln10;
}

double expected_sum_quadrature(const WrappedDensity& g, const DigitPrefix& p,
                               double abs_tolerance) {
  if (std::abs(g.total_mass() - 1.0) > 1e-8) {
    throw ValidationError("wrapped density '" + g.description() + "' integrates to " +
                          std::to_string(g.total_mass()) + ", not 1");
  }
  QuadratureOptions opts;
  opts.abs_tolerance = abs_tolerance;
  return integrate([&g](double t) { return std::pow(10.0, t) * g(t); }, p.log_lower(),
                   p.log_upper(), g.breakpoints(), opts)
      .value;
}

BoundsResult theorem_bounds(const DigitPrefix& p) {
  const double x = static_cast<double>(p.value());
  // 10^(1-n) log10(1 + 1/x), via log1p to keep precision for large x.
  const double width = inverse_pow10(p.length() - 1) * std::log1p(1.0 / x) / std::numbers::ln10;
  const double lower = x * width;
  return {p, lower, lower + width};
}

std::vector<ConvergenceRow> convergence_report(int max_depth) {
  if (max_depth < 1 || max_depth > 6) throw DomainError("convergence report depth must be in [1, 6]");
  std::vector<ConvergenceRow> rows;
  for (int n = 1; n <= max_depth; ++n) {
    const double reference = expected_sum_theoretical(n);
    const auto first = DigitPrefix::from_value(pow10_u64(n - 1), n);
    ConvergenceRow row{n, 0.0, first, 1.0, first, reference, 0.0, 0.0};
    for (std::uint64_t x = pow10_u64(n - 1); x < pow10_u64(n); ++x) {
      const auto b = theorem_bounds(DigitPrefix::from_value(x, n));
      const double gap = b.relative_gap();
      if (gap > row.worst_gap) {
        row.worst_gap = gap;
        row.worst_prefix = b.prefix;
      }
      if (gap < row.min_gap) {
        row.min_gap = gap;
        row.min_prefix = b.prefix;
      }
      row.max_lower_deviation = std::max(row.max_lower_deviation, std::abs(b.lower / reference - 1.0));
      row.max_upper_deviation = std::max(row.max_upper_deviation, std::abs(b.upper / reference - 1.0));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace benford
