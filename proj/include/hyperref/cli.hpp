#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperref::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;  // witness | constants | findim | cvp
  std::map<std::string, std::string> parameters;
  std::uint64_t seed = 0;
  std::string output_path;  // empty: stdout
  std::string format = "json";
};

// Keys accepted by each command (besides seed / format / output).
const std::vector<std::string>& command_keys(const std::string& command);

// Throws ConfigError on unknown commands, unknown keys or a bad format.
void validate(const RunConfig& config);

// Flat `key = value` lines; '#' starts a comment.
std::map<std::string, std::string> parse_config_text(const std::string& text);

// Command line parsing. Returns nullopt when help was printed (exit 0).
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out);

enum class EntryStatus { pass, fail, inconclusive };
const char* to_string(EntryStatus s);

struct ReportEntry {
  std::string name;
  std::string formula;
  double bound = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  EntryStatus status = EntryStatus::pass;
  std::vector<std::pair<std::string, std::string>> details;  // rendered in JSON only
};

struct Report {
  RunConfig config;
  std::string header;  // definitions the numbers depend on
  std::vector<ReportEntry> entries;
  std::vector<std::string> diagnostics;

  std::size_t count(EntryStatus s) const;
};

std::string render_json(const Report& report);
std::string render_csv(const Report& report);

// Builds the report for a validated config. Lets GuardExceeded and
// std::invalid_argument escape.
Report execute(const RunConfig& config);

// Full pipeline with exit codes: 0 no fail, 1 some fail, 2 config error,
// 3 numeric guard exceeded.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);
int main(int argc, const char* const* argv);

}  // namespace hyperref::cli
