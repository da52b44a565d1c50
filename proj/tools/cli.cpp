#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <random>

#include "benford/digits.hpp"
#include "benford/distributions.hpp"
#include "benford/errors.hpp"
#include "benford/report.hpp"
#include "benford/sequences.hpp"
#include "benford/sum_invariance.hpp"
#include "benford/verification.hpp"

namespace benford::cli {

namespace {

using nlohmann::json;

std::string fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

std::string general(double x, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

/// Writes to `path`, or to `fallback` when path is empty.
void with_output(const std::string& path, std::ostream& fallback,
                 const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw report::IngestError("cannot write " + path);
  write(file);
}

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Globals {
  std::string format = "text";
  std::uint64_t seed = 20131;
  double tolerance = 1e-9;
};

Distribution make_family(const std::string& family, int depth, double eps, const std::string& side) {
  if (family == "benford") return benford_reference();
  if (family == "sine") return SineBenfordDist(depth);
  return edge_concentrated(depth, eps, side == "upper" ? Side::upper : Side::lower);
}

int cmd_analyze(const Globals& g, const std::string& input, int depth,
                const std::optional<std::string>& column, double z_threshold, std::ostream& out,
                std::ostream& err) {
  report::IngestOptions opts;
  opts.column = column;
  const auto data = report::load_dataset_file(input, opts);
  if (data.values.empty()) {
    err << "error: " << input << " contains no valid items (" << data.rejects << " rejected rows)\n";
    return kExitEmpty;
  }
  report::Thresholds thresholds;
  thresholds.z = z_threshold;
  const auto r = report::analyze(data, depth, thresholds);
  if (g.format == "json") {
    out << report::to_json(r).dump(2) << "\n";
  } else if (g.format == "csv") {
    report::write_sums_csv(out, r.sums);
  } else {
    report::write_text(out, r);
  }
  return kExitOk;
}

int cmd_fibonacci(const Globals& g, std::size_t count, const std::string& mode, int depth,
                  const std::string& output, std::ostream& out) {
  const auto stream =
      mode == "exact" ? fib_significands_exact(count) : fib_significands_logspace(count);
  if (!output.empty()) {
    with_output(output, out, [&](std::ostream& os) {
      for (double v : stream.values) os << general(v, 17) << '\n';
    });
  }
  const auto table = empirical_sum_table(stream.values, depth);
  const double reference = static_cast<double>(count) * expected_sum_theoretical(depth);
  const std::string note =
      "sequence starts at F_1 = F_2 = 1; starting at F_0 or F_2 instead moves one term, "
      "changing a single S_d by less than 10";
  if (g.format == "json") {
    json j = report::sums_to_json(table);
    j["source"] = std::string(to_string(stream.source));
    j["terms"] = count;
    j["note"] = note;
    out << j.dump(2) << "\n";
  } else if (g.format == "csv") {
    report::write_sums_csv(out, table);
  } else {
    out << "significand sums of F_1..F_" << count << " (" << to_string(stream.source)
        << "), depth " << depth << "\n";
    out << "  prefix      count           sum\n";
    for (const auto& [p, e] : table.entries()) {
      char line[96];
      std::snprintf(line, sizeof line, "  %6s %10llu %13.4f\n", p.to_string().c_str(),
                    static_cast<unsigned long long>(e.count), e.value());
      out << line;
    }
    out << "reference " << fixed(reference, 1) << " (" << general(reference) << ")\n";
    out << "note: " << note << "\n";
  }
  return kExitOk;
}

int cmd_bounds(const Globals& g, const std::vector<std::string>& prefixes, std::ostream& out) {
  json rows = json::array();
  for (const auto& text : prefixes) {
    const auto b = theorem_bounds(DigitPrefix::parse(text));
    const double reference = expected_sum_theoretical(b.prefix.length());
    if (g.format == "json") {
      rows.push_back({{"prefix", text},
                      {"lower", report::round10(b.lower)},
                      {"upper", report::round10(b.upper)},
                      {"gap_ratio", report::round10(b.relative_gap())},
                      {"benford", report::round10(reference)}});
    } else {
      out << "prefix " << text << ": lower " << fixed(b.lower, 7) << ", upper " << fixed(b.upper, 7)
          << ", gap ratio " << general(b.relative_gap(), 6) << ", benford " << fixed(reference, 7)
          << "\n";
    }
  }
  if (g.format == "json") out << rows.dump(2) << "\n";
  return kExitOk;
}

int cmd_density(const Distribution& dist, int resolution, const std::string& output,
                std::ostream& out) {
  const auto curve = tabulate_density(dist, resolution);
  with_output(output, out, [&](std::ostream& os) {
    os << "y,pdf\n";
    for (const auto& [y, f] : curve) os << general(y, 12) << ',' << general(f, 12) << '\n';
  });
  return kExitOk;
}

int cmd_sample(const Globals& g, const Distribution& dist, std::size_t count,
               const std::string& output, std::ostream& out) {
  std::mt19937_64 rng(g.seed);
  with_output(output, out, [&](std::ostream& os) {
    for (std::size_t i = 0; i < count; ++i) {
      const double u = uniform01(rng);
      const double y = std::holds_alternative<SineBenfordDist>(dist)
                           ? std::get<SineBenfordDist>(dist).sample(u)
                           : std::get<BenfordDist>(dist).sample(u);
      os << general(y, 17) << '\n';
    }
  });
  return kExitOk;
}

int cmd_verify(const Globals& g, int max_depth, std::ostream& out) {
  VerificationOptions opts;
  opts.max_depth = max_depth;
  opts.tolerance = g.tolerance;
  const auto checks = run_verification(opts);
  const auto rows = convergence_report(max_depth);
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  if (g.format == "json") {
    json j = {{"passed", ok}, {"checks", json::array()}, {"convergence", json::array()}};
    for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    for (const auto& r : rows) {
      j["convergence"].push_back({{"depth", r.depth},
                                  {"worst_gap", report::round10(r.worst_gap)},
                                  {"min_gap", report::round10(r.min_gap)},
                                  {"reference", report::round10(r.reference)}});
    }
    out << j.dump(2) << "\n";
  } else {
    for (const auto& c : checks) {
      out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
    }
    out << "\n  n   worst gap     min gap   10^(1-n)/ln10\n";
    for (const auto& r : rows) {
      char line[96];
      std::snprintf(line, sizeof line, "  %d %11.6g %11.6g %15.10f\n", r.depth, r.worst_gap,
                    r.min_gap, r.reference);
      out << line;
    }
    out << (ok ? "all checks passed\n" : "some checks FAILED\n");
  }
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Benford and n-digit Benford toolkit", "benford-cli"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--seed", g.seed, "Seed for sampling");
  app.add_option("--tolerance", g.tolerance, "Slack for the bounds checks in verify")
      ->check(CLI::PositiveNumber);

  std::function<int()> action;

  auto* analyze = app.add_subcommand("analyze", "Digit conformity and significand sums of a dataset");
  std::string input;
  int analyze_depth = 2;
  std::optional<std::string> column;
  double z_threshold = report::Thresholds{}.z;
  analyze->add_option("input", input, "Newline-delimited numbers, or CSV with --column")->required();
  analyze->add_option("-n,--depth", analyze_depth, "Prefix depth")
      ->check(CLI::Range(1, report::kMaxAnalysisDepth));
  analyze->add_option("--column", column, "CSV column name (first line is a header)");
  analyze->add_option("--z-threshold", z_threshold, "Flag prefixes with |z| above this");
  analyze->callback([&] {
    action = [&] { return cmd_analyze(g, input, analyze_depth, column, z_threshold, out, err); };
  });

  auto* fibonacci = app.add_subcommand("fibonacci", "Significand sums of the first N Fibonacci numbers");
  std::size_t fib_count = 50000;
  std::string fib_mode = "logspace";
  int fib_depth = 1;
  std::string fib_output;
  fibonacci->add_option("-N,--count", fib_count, "Number of terms, starting at F_1");
  fibonacci->add_option("--mode", fib_mode)->check(CLI::IsMember({"logspace", "exact"}));
  fibonacci->add_option("-n,--depth", fib_depth)->check(CLI::Range(1, 6));
  fibonacci->add_option("-o,--output", fib_output, "Dump one significand per line to this file");
  fibonacci->callback([&] {
    action = [&] { return cmd_fibonacci(g, fib_count, fib_mode, fib_depth, fib_output, out); };
  });

  auto* bounds = app.add_subcommand("bounds", "Expected-significand-sum bounds for digit prefixes");
  std::vector<std::string> prefixes;
  bounds->add_option("prefix", prefixes, "Leading digits, e.g. 99")->required();
  bounds->callback([&] { action = [&] { return cmd_bounds(g, prefixes, out); }; });

  std::string family = "sine";
  int family_depth = 2;
  double eps = 0.01;
  std::string side = "lower";
  std::string output;
  auto add_family = [&](CLI::App* cmd, std::vector<std::string> families) {
    cmd->add_option("--family", family)->check(CLI::IsMember(std::move(families)));
    cmd->add_option("-n,--depth", family_depth)->check(CLI::Range(1, kMaxFamilyDepth));
    cmd->add_option("-o,--output", output, "Output file (default stdout)");
  };

  auto* density = app.add_subcommand("density", "Tabulate a density on [1, 10) as CSV");
  int resolution = 9000;
  add_family(density, {"benford", "sine", "edge"});
  density->add_option("--resolution", resolution)->check(CLI::PositiveNumber);
  density->add_option("--eps", eps, "Edge pulse width")->check(CLI::Range(1e-12, 0.5));
  density->add_option("--side", side)->check(CLI::IsMember({"lower", "upper"}));
  density->callback([&] {
    action = [&] {
      return cmd_density(make_family(family, family_depth, eps, side), resolution, output, out);
    };
  });

  auto* sample_cmd = app.add_subcommand("sample", "Draw seeded samples by inverse CDF");
  std::size_t sample_count = 1000;
  add_family(sample_cmd, {"benford", "sine"});
  sample_cmd->add_option("-c,--count", sample_count);
  sample_cmd->callback([&] {
    action = [&] {
      return cmd_sample(g, make_family(family, family_depth, eps, side), sample_count, output, out);
    };
  });

  auto* verify = app.add_subcommand("verify", "Run the numerical checks up to a digit depth");
  int max_depth = 3;
  verify->add_option("--max-n", max_depth)->check(CLI::Range(1, kMaxFamilyDepth));
  verify->callback([&] { action = [&] { return cmd_verify(g, max_depth, out); }; });

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParse;
  }

  try {
    return action();
  } catch (const report::IngestError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace benford::cli
