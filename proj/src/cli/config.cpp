#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hyperref/cli.hpp"

namespace hyperref::cli {

namespace {

const std::map<std::string, std::vector<std::string>>& key_table() {
  static const std::map<std::string, std::vector<std::string>> table{
      {"witness", {"epsilon", "delta", "truncation", "grid"}},
      {"constants", {"n", "M", "C", "K", "r", "alpha", "gamma", "pi_norm"}},
      {"findim", {"algebra", "degree", "samples", "budget", "p"}},
      {"cvp", {"group", "p", "samples"}},
  };
  return table;
}

const std::map<std::string, std::string>& key_help() {
  static const std::map<std::string, std::string> help{
      {"epsilon", "comma-separated epsilon values in (0, 3)"},
      {"delta", "delta in (0, epsilon); defaults to epsilon / 100"},
      {"truncation", "Fourier truncation N"},
      {"grid", "grid resolution for support checks"},
      {"n", "cochain degree"},
      {"M", "local unit bound"},
      {"C", "open mapping constant"},
      {"K", "approximate identity bound"},
      {"r", "strong-(B) constant (0: the C*/group-algebra constant)"},
      {"alpha", "zero-product smallness"},
      {"gamma", "zero-product chain bound"},
      {"pi_norm", "representation norm"},
      {"algebra", "ck:<k> | m2 | l1z:<k> | scalars | file:<path>"},
      {"degree", "cochain degree"},
      {"samples", "number of random maps"},
      {"budget", "enumeration budget"},
      {"p", "norm index (1, 2, inf or any p >= 1)"},
      {"group", "cyclic:<k> | file:<path>"},
  };
  return help;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used);
    if (used != text.size() || text.front() == '-') throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("seed must be a nonnegative integer, got '" + text + "'");
  }
}

// Applies one key; common keys go to their RunConfig fields.
void assign(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "seed")
    config.seed = parse_seed(value);
  else if (key == "format")
    config.format = value;
  else if (key == "output")
    config.output_path = value;
  else
    config.parameters[key] = value;
}

}  // namespace

const std::vector<std::string>& command_keys(const std::string& command) {
  const auto it = key_table().find(command);
  if (it == key_table().end()) throw ConfigError("unknown command '" + command + "'");
  return it->second;
}

void validate(const RunConfig& config) {
  const auto& keys = command_keys(config.command);
  for (const auto& [key, value] : config.parameters)
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError("unknown key '" + key + "' for command " + config.command);
  if (config.format != "json" && config.format != "csv")
    throw ConfigError("format must be json or csv, got '" + config.format + "'");
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(number) + ": empty key or value");
    out[key] = value;
  }
  return out;
}

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Certified numerics for strong property (B) and hyperreflexivity constants", "hyperref"};
  app.require_subcommand(1);
  app.set_version_flag("--version", HYPERREF_VERSION);

  struct Slot {
    std::map<std::string, std::string> values;
    std::string config_path;
  };
  std::map<std::string, Slot> slots;
  std::map<std::string, CLI::App*> subs;
  const std::vector<std::string> common{"seed", "format", "output"};
  const std::map<std::string, std::string> descriptions{
      {"witness", "verify the circle-lemma witness inequalities"},
      {"constants", "evaluate the closed-form constant pipeline"},
      {"findim", "finite-dimensional hyperreflexivity experiments"},
      {"cvp", "convolution operators: commutant of the regular representation"},
  };
  for (const auto& [command, keys] : key_table()) {
    auto* sub = app.add_subcommand(command, descriptions.at(command));
    auto& slot = slots[command];
    for (const auto& key : keys) sub->add_option("--" + key, slot.values[key], key_help().at(key));
    sub->add_option("--seed", slot.values["seed"], "random seed (default 0)");
    sub->add_option("--format", slot.values["format"], "json or csv");
    sub->add_option("--output", slot.values["output"], "report path (default stdout)");
    sub->add_option("--config", slot.config_path, "flat key = value file; flags override it");
    subs[command] = sub;
  }

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForVersion&) {
    out << HYPERREF_VERSION << '\n';
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  RunConfig config;
  for (const auto& [command, sub] : subs) {
    if (!sub->parsed()) continue;
    config.command = command;
    const auto& slot = slots[command];
    if (!slot.config_path.empty()) {
      std::ifstream file(slot.config_path);
      if (!file) throw ConfigError("cannot read config file " + slot.config_path);
      std::stringstream text;
      text << file.rdbuf();
      for (const auto& [key, value] : parse_config_text(text.str())) {
        const auto& keys = key_table().at(command);
        if (std::find(keys.begin(), keys.end(), key) == keys.end() &&
            std::find(common.begin(), common.end(), key) == common.end())
          throw ConfigError("unknown key '" + key + "' in " + slot.config_path);
        assign(config, key, value);
      }
    }
    for (const auto& [key, value] : slot.values) {
      if (sub->count("--" + key) == 0) continue;
      assign(config, key, value);
    }
  }
  validate(config);
  return config;
}

}  // namespace hyperref::cli
