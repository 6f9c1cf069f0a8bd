#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hyperref/cli.hpp"

namespace hyperref::cli {

namespace {

using Json = nlohmann::ordered_json;

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const char* to_string(EntryStatus s) {
  switch (s) {
    case EntryStatus::pass: return "pass";
    case EntryStatus::fail: return "fail";
    case EntryStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

std::size_t Report::count(EntryStatus s) const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.status == s;
  return n;
}

std::string render_json(const Report& report) {
  Json doc;
  doc["schema"] = 1;
  doc["tool"] = "hyperref";
  doc["version"] = HYPERREF_VERSION;
  doc["command"] = report.config.command;
  doc["seed"] = report.config.seed;
  Json config = Json::object();
  for (const auto& [k, v] : report.config.parameters) config[k] = v;
  config["format"] = report.config.format;
  doc["config"] = config;
  if (!report.header.empty()) doc["header"] = report.header;

  Json entries = Json::array();
  for (const auto& e : report.entries) {
    Json j;
    j["name"] = e.name;
    j["status"] = to_string(e.status);
    j["bound"] = number(e.bound);
    j["bracket"] = Json::array({number(e.bracket_lo), number(e.bracket_hi)});
    j["formula"] = e.formula;
    if (!e.details.empty()) {
      Json d = Json::object();
      for (const auto& [k, v] : e.details) d[k] = v;
      j["details"] = d;
    }
    entries.push_back(std::move(j));
  }
  doc["entries"] = entries;
  if (!report.diagnostics.empty()) doc["diagnostics"] = report.diagnostics;
  doc["summary"] = {{"pass", report.count(EntryStatus::pass)},
                    {"fail", report.count(EntryStatus::fail)},
                    {"inconclusive", report.count(EntryStatus::inconclusive)}};
  return doc.dump(2) + "\n";
}

std::string render_csv(const Report& report) {
  std::ostringstream out;
  out << "name,bound,bracket_lo,bracket_hi,status,formula\n";
  for (const auto& e : report.entries)
    out << csv_field(e.name) << ',' << csv_number(e.bound) << ',' << csv_number(e.bracket_lo) << ','
        << csv_number(e.bracket_hi) << ',' << to_string(e.status) << ',' << csv_field(e.formula) << '\n';
  return out.str();
}

}  // namespace hyperref::cli
