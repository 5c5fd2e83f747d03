#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace patdens::cli {

/// Raised on malformed flags, config files or ranges (exit status 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything that determines the output of one `experiment` run.
///
/// Keys of the config file are the long flag names. The worker count is
/// deliberately absent: it never changes the output.
struct ExperimentConfig {
  std::string kind;
  std::string pattern;
  int q = 2;
  std::string n;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  int pmax = 2;
  std::string moment = "central";
  double tol = 1e-7;
  std::string format = "csv";
  std::optional<std::uint64_t> budget;
  bool exploratory = false;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Ordered (key, value) pairs, one per config field.
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg);

/// Assigns one field from its text form.
void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Flat "key=value" lines.
std::string write_config(const ExperimentConfig& cfg);

/// Accepts a plain config file, a CSV result (its "# config: " lines) or a
/// JSON result (its "config" object).
ExperimentConfig read_config(std::string_view text);

/// Checks field ranges and the pattern/kind combination.
void validate(const ExperimentConfig& cfg);

/// "N", "a:b", "a:b:xk" (geometric) or "a:b:+k" (arithmetic), inclusive.
std::vector<std::size_t> parse_n_range(std::string_view text);

/// Shortest text that parses back to the same double.
std::string format_double(double v);

}  // namespace patdens::cli
