#include <fstream>
#include <limits>
#include <sstream>

#include "hyperref/findim/algebra.hpp"

namespace hyperref::findim {

namespace {

double parse_number(const std::string& tok, int line) {
  if (tok == "inf" || tok == "Inf" || tok == "INF") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used == tok.size()) return v;
  } catch (const std::exception&) {
  }
  throw AlgebraError("line " + std::to_string(line) + ": expected a number, got '" + tok + "'");
}

int parse_index(const std::string& tok, int line) {
  const double v = parse_number(tok, line);
  if (v != static_cast<int>(v)) throw AlgebraError("line " + std::to_string(line) + ": expected an integer index");
  return static_cast<int>(v);
}

}  // namespace

AlgebraSpec parse_algebra(std::istream& in, const std::string& name) {
  int dim = -1;
  std::vector<StructureEntry> entries;
  std::optional<Norm> norm;
  std::optional<Vec> unit;

  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (dim < 0) {
      if (tok.size() == 2 && tok[0] == "dim")
        dim = parse_index(tok[1], line);
      else if (tok.size() == 1)
        dim = parse_index(tok[0], line);
      else
        throw AlgebraError("line " + std::to_string(line) + ": expected the dimension first");
      if (dim < 1) throw AlgebraError("dimension must be positive");
      continue;
    }
    if (tok[0] == "norm") {
      if (tok.size() == 2 && tok[1] == "sup")
        norm = Norm::sup();
      else if (tok.size() == 2 && tok[1] == "group_l1")
        norm = Norm::l1();
      else if (tok.size() == 4 && tok[1] == "matrix_p") {
        const int m = parse_index(tok[3], line);
        if (m * m != dim) throw AlgebraError("matrix_p: m^2 must equal the dimension");
        norm = Norm::matrix_op(m, parse_number(tok[2], line));
      } else if (tok.size() == 3 && tok[1] == "grid_custom")
        norm = Norm::lp(parse_number(tok[2], line));
      else
        throw AlgebraError("line " + std::to_string(line) + ": unknown norm designator");
      continue;
    }
    if (tok[0] == "unit") {
      if (static_cast<int>(tok.size()) != dim + 1) throw AlgebraError("unit needs exactly dim coordinates");
      Vec u(dim);
      for (int i = 0; i < dim; ++i) u[i] = parse_number(tok[static_cast<std::size_t>(i + 1)], line);
      unit = u;
      continue;
    }
    if (tok.size() != 4) throw AlgebraError("line " + std::to_string(line) + ": expected 'i j k value'");
    entries.push_back({parse_index(tok[0], line), parse_index(tok[1], line), parse_index(tok[2], line),
                       parse_number(tok[3], line)});
  }
  if (dim < 0) throw AlgebraError("algebra file has no dimension line");
  if (!norm) throw AlgebraError("algebra file has no norm line");
  return from_structure(name, dim, entries, *norm, unit);
}

AlgebraSpec load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AlgebraError("cannot open algebra file " + path);
  return parse_algebra(in, path);
}

}  // namespace hyperref::findim
