#include <fstream>
#include <sstream>

#include "hyperref/findim/algebra.hpp"

namespace hyperref::findim {

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table) {
  const auto n = static_cast<int>(table.size());
  if (n < 1 || n > 64) throw AlgebraError("group order must lie in [1, 64]");
  FiniteGroup g;
  g.order_ = n;
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw AlgebraError("Cayley table must be square");
    for (int v : row) {
      if (v < 0 || v >= n) throw AlgebraError("Cayley table entry out of range");
      g.table_.push_back(v);
    }
  }
  g.identity_ = -1;
  for (int e = 0; e < n && g.identity_ < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = g.multiply(e, x) == x && g.multiply(x, e) == x;
    if (ok) g.identity_ = e;
  }
  if (g.identity_ < 0) throw AlgebraError("Cayley table has no identity");
  g.inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (g.multiply(x, y) == g.identity_ && g.multiply(y, x) == g.identity_) g.inverse_[static_cast<std::size_t>(x)] = y;
  for (int x = 0; x < n; ++x)
    if (g.inverse(x) < 0) throw AlgebraError("Cayley table element without inverse");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (g.multiply(g.multiply(x, y), z) != g.multiply(x, g.multiply(y, z)))
          throw AlgebraError("Cayley table is not associative");
  return g;
}

FiniteGroup FiniteGroup::cyclic(int k) {
  if (k < 1) throw AlgebraError("cyclic group order must be positive");
  std::vector<std::vector<int>> table(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k)));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % k;
  return from_table(std::move(table));
}

bool FiniteGroup::is_abelian() const {
  for (int x = 0; x < order_; ++x)
    for (int y = 0; y < order_; ++y)
      if (multiply(x, y) != multiply(y, x)) return false;
  return true;
}

FiniteGroup parse_cayley_table(std::istream& in) {
  std::vector<int> values;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      try {
        std::size_t used = 0;
        values.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw AlgebraError("Cayley table: expected an integer, got '" + tok + "'");
      }
    }
  }
  if (values.empty()) throw AlgebraError("Cayley table: empty input");
  const int n = values.front();
  if (n < 1 || values.size() != static_cast<std::size_t>(1 + n * n))
    throw AlgebraError("Cayley table: expected the order followed by order^2 entries");
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r)
    table[static_cast<std::size_t>(r)].assign(values.begin() + 1 + r * n, values.begin() + 1 + (r + 1) * n);
  return FiniteGroup::from_table(std::move(table));
}

FiniteGroup load_cayley_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AlgebraError("cannot open Cayley table file " + path);
  return parse_cayley_table(in);
}

}  // namespace hyperref::findim
