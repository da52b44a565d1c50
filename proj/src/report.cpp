#include "benford/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "benford/errors.hpp"

namespace benford::report {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delimiter, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string num(double x, int precision = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

}  // namespace

std::optional<double> parse_positive(std::string_view token) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  if (token.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  if (!(value > 0.0) || !std::isfinite(value)) return std::nullopt;
  return value;
}

Dataset load_dataset(std::istream& in, const std::string& source, const IngestOptions& options) {
  Dataset data;
  data.source = source;
  std::string line;
  std::optional<std::size_t> column;
  if (options.column) {
    if (!std::getline(in, line)) throw IngestError("missing CSV header in " + source);
    const auto header = split(line, options.delimiter);
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == *options.column) column = i;
    }
    if (!column) throw IngestError("column '" + *options.column + "' not found in " + source);
  }
  while (std::getline(in, line)) {
    std::string_view field = trim(line);
    if (field.empty()) continue;
    ++data.rows;
    if (column) {
      const auto fields = split(field, options.delimiter);
      field = *column < fields.size() ? fields[*column] : std::string_view{};
    }
    if (auto v = parse_positive(field)) {
      data.values.push_back(*v);
    } else {
      ++data.rejects;
    }
  }
  if (in.bad()) throw IngestError("read error on " + source);
  return data;
}

Dataset load_dataset_file(const std::string& path, const IngestOptions& options) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open " + path);
  return load_dataset(in, path, options);
}

double round10(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return std::strtod(buf, nullptr);
}

AnalysisReport analyze(const Dataset& data, int depth, const Thresholds& thresholds) {
  if (depth < 1 || depth > kMaxAnalysisDepth) {
    throw DomainError("analysis depth must be in [1, " + std::to_string(kMaxAnalysisDepth) + "]");
  }
  if (data.values.empty()) throw ValidationError("dataset " + data.source + " has no valid items");
  AnalysisReport r{data.source, 0, data.rows, data.rejects, depth, {}, empirical_sum_table(data.values, depth), 0.0, {}, {}};
  r.items = r.sums.total_count();
  r.rejects += r.sums.rejects();
  const double n_items = static_cast<double>(r.items);
  r.sum_reference = n_items * expected_sum_theoretical(depth);

  for (int k = 1; k <= depth; ++k) {
    const auto table = r.sums.aggregate_to(k);
    DepthFrequencies f{k, {}, 0.0, 9 * pow10_u64(k - 1) - 1, 0.0, std::nullopt, false};
    CompensatedSum chi;
    CompensatedSum abs_dev;
    for (const auto& p : all_prefixes(k)) {
      const std::uint64_t count = table.count(p);
      const double expected = benford_prefix_prob(p);
      const double observed = n_items > 0 ? static_cast<double>(count) / n_items : 0.0;
      const double se = std::sqrt(expected * (1.0 - expected) / n_items);
      const double z = (observed - expected) / se;
      const double e_count = expected * n_items;
      const double diff = static_cast<double>(count) - e_count;
      chi.add(diff * diff / e_count);
      abs_dev.add(std::abs(observed - expected));
      f.rows.push_back({p, count, observed, expected, z});
      if (std::abs(z) > thresholds.z) {
        r.flags.push_back({k, p, "prefix-z", observed, expected, z});
      }
    }
    f.chi_square = chi.value();
    f.mad = abs_dev.value() / static_cast<double>(f.rows.size());
    if (static_cast<std::size_t>(k) <= thresholds.mad.size()) {
      f.mad_threshold = thresholds.mad[static_cast<std::size_t>(k - 1)];
      f.nonconforming = f.mad > *f.mad_threshold;
      if (f.nonconforming) {
        r.flags.push_back({k, std::nullopt, "depth-mad", f.mad, *f.mad_threshold, f.mad});
      }
    }
    r.frequencies.push_back(std::move(f));
  }

  for (const auto& p : all_prefixes(depth)) r.bounds.push_back(theorem_bounds(p));
  return r;
}

nlohmann::json sums_to_json(const SignificandSumTable& table) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [p, e] : table.entries()) {
    entries.push_back({{"prefix", p.to_string()}, {"count", e.count}, {"sum", round10(e.value())}});
  }
  const double reference =
      static_cast<double>(table.total_count()) * expected_sum_theoretical(table.depth());
  return {{"depth", table.depth()},
          {"items", table.total_count()},
          {"reference", round10(reference)},
          {"reference_per_item", round10(expected_sum_theoretical(table.depth()))},
          {"entries", std::move(entries)}};
}

nlohmann::json to_json(const AnalysisReport& r) {
  using nlohmann::json;
  json frequencies = json::array();
  for (const auto& f : r.frequencies) {
    json rows = json::array();
    for (const auto& row : f.rows) {
      rows.push_back({{"prefix", row.prefix.to_string()},
                      {"count", row.count},
                      {"observed", round10(row.observed)},
                      {"expected", round10(row.expected)},
                      {"z", round10(row.z)}});
    }
    frequencies.push_back({{"depth", f.depth},
                           {"chi_square", round10(f.chi_square)},
                           {"degrees_of_freedom", f.degrees_of_freedom},
                           {"mad", round10(f.mad)},
                           {"mad_threshold", f.mad_threshold ? json(round10(*f.mad_threshold)) : json(nullptr)},
                           {"nonconforming", f.nonconforming},
                           {"rows", std::move(rows)}});
  }
  json bounds = json::array();
  const double n_items = static_cast<double>(r.items);
  for (const auto& b : r.bounds) {
    bounds.push_back({{"prefix", b.prefix.to_string()},
                      {"lower", round10(b.lower)},
                      {"upper", round10(b.upper)},
                      {"lower_total", round10(b.lower * n_items)},
                      {"upper_total", round10(b.upper * n_items)}});
  }
  json flags = json::array();
  for (const auto& f : r.flags) {
    flags.push_back({{"depth", f.depth},
                     {"kind", f.kind},
                     {"prefix", f.prefix ? json(f.prefix->to_string()) : json(nullptr)},
                     {"observed", round10(f.observed)},
                     {"expected", round10(f.expected)},
                     {"statistic", round10(f.statistic)}});
  }
  return {{"dataset", {{"source", r.source}, {"items", r.items}, {"rows", r.rows}, {"rejects", r.rejects}}},
          {"depth", r.depth},
          {"frequencies", std::move(frequencies)},
          {"sums", sums_to_json(r.sums)},
          {"bounds", std::move(bounds)},
          {"flags", std::move(flags)}};
}

void write_text(std::ostream& out, const AnalysisReport& r) {
  out << "dataset " << r.source << ": " << r.items << " items, " << r.rows << " rows, " << r.rejects
      << " rejects\n";
  for (const auto& f : r.frequencies) {
    out << "\ndepth " << f.depth << ": chi-square " << num(f.chi_square, 6) << " (df "
        << f.degrees_of_freedom << "), MAD " << num(f.mad, 6);
    if (f.mad_threshold) {
      out << " vs " << num(*f.mad_threshold, 6) << (f.nonconforming ? " NONCONFORMING" : " ok");
    }
    out << "\n";
    if (f.depth > 2) continue;
    out << "  prefix      count    observed    expected         z\n";
    for (const auto& row : f.rows) {
      char line[128];
      std::snprintf(line, sizeof line, "  %6s %10llu %11.6f %11.6f %9.3f\n",
                    row.prefix.to_string().c_str(), static_cast<unsigned long long>(row.count),
                    row.observed, row.expected, row.z);
      out << line;
    }
  }
  out << "\nsignificand sums at depth " << r.depth << " (reference " << num(r.sum_reference)
      << " per prefix)\n";
  out << "  prefix      count             sum      lower total      upper total\n";
  for (const auto& b : r.bounds) {
    const auto count = r.sums.count(b.prefix);
    if (count == 0) continue;
    char line[160];
    std::snprintf(line, sizeof line, "  %6s %10llu %15.4f %16.4f %16.4f\n",
                  b.prefix.to_string().c_str(), static_cast<unsigned long long>(count),
                  r.sums.sum(b.prefix), b.lower * static_cast<double>(r.items),
                  b.upper * static_cast<double>(r.items));
    out << line;
  }
  out << "\nflags: " << r.flags.size() << "\n";
  for (const auto& f : r.flags) {
    out << "  depth " << f.depth << " " << f.kind;
    if (f.prefix) out << " prefix " << f.prefix->to_string();
    out << ": observed " << num(f.observed, 6) << ", expected " << num(f.expected, 6)
        << ", statistic " << num(f.statistic, 4) << "\n";
  }
}

void write_sums_csv(std::ostream& out, const SignificandSumTable& table) {
  const double reference =
      static_cast<double>(table.total_count()) * expected_sum_theoretical(table.depth());
  out << "prefix,count,sum,reference\n";
  for (const auto& [p, e] : table.entries()) {
    out << p.to_string() << ',' << e.count << ',' << num(e.value()) << ',' << num(reference) << '\n';
  }
}

}  // namespace benford::report
