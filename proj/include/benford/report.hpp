#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "benford/digits.hpp"
#include "benford/sum_invariance.hpp"

namespace benford::report {

/// The input could not be read as a dataset at all (unreadable, missing column).
class IngestError : public std::runtime_error {
 public:
  explicit IngestError(const std::string& what) : std::runtime_error(what) {}
};

struct IngestOptions {
  /// When set, the first line is a CSV header and values come from this column.
  std::optional<std::string> column;
  char delimiter = ',';
};

struct Dataset {
  std::string source;
  std::vector<double> values;
  std::uint64_t rows = 0;     // non-blank data rows seen
  std::uint64_t rejects = 0;  // non-numeric or non-positive rows
};

/// Parses one positive real; returns nullopt for non-numeric or non-positive text.
std::optional<double> parse_positive(std::string_view token);

Dataset load_dataset(std::istream& in, const std::string& source, const IngestOptions& options = {});
Dataset load_dataset_file(const std::string& path, const IngestOptions& options = {});

/// Conventional mean-absolute-deviation cutoffs for "nonconformity" at depths
/// 1, 2 and 3 (Nigrini's first, first-two and first-three digit tests). Deeper
/// levels have no accepted cutoff and are only checked prefix by prefix.
struct Thresholds {
  std::vector<double> mad = {0.015, 0.0022, 0.0005};
  /// |z| above which a single prefix is flagged.
  double z = 3.29;
};

struct PrefixFrequency {
  DigitPrefix prefix;
  std::uint64_t count;
  double observed;
  double expected;
  double z;
};

struct DepthFrequencies {
  int depth;
  std::vector<PrefixFrequency> rows;
  double chi_square;
  std::uint64_t degrees_of_freedom;
  double mad;
  std::optional<double> mad_threshold;
  bool nonconforming;
};

struct Flag {
  int depth;
  std::optional<DigitPrefix> prefix;  // empty for whole-depth MAD flags
  std::string kind;                   // "prefix-z" or "depth-mad"
  double observed;
  double expected;
  double statistic;
};

struct AnalysisReport {
  std::string source;
  std::uint64_t items;
  std::uint64_t rows;
  std::uint64_t rejects;
  int depth;
  std::vector<DepthFrequencies> frequencies;  // depths 1..depth
  SignificandSumTable sums;
  double sum_reference;  // items * 10^(1-n) / ln 10
  std::vector<BoundsResult> bounds;
  std::vector<Flag> flags;
};

inline constexpr int kMaxAnalysisDepth = 4;

AnalysisReport analyze(const Dataset& data, int depth, const Thresholds& thresholds = {});

/// Rounds to 10 significant digits, the precision of every number we emit.
double round10(double x);

nlohmann::json to_json(const AnalysisReport& report);
void write_text(std::ostream& out, const AnalysisReport& report);

/// prefix,count,sum,reference rows for a sum table.
void write_sums_csv(std::ostream& out, const SignificandSumTable& table);
nlohmann::json sums_to_json(const SignificandSumTable& table);

}  // namespace benford::report
