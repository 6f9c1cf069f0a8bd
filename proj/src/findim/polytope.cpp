#include "hyperref/findim/polytope.hpp"

#include <cmath>
#include <map>

namespace hyperref::findim {

namespace {

std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    if (r > static_cast<double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(std::llround(r));
}

std::vector<long long> key_of(const Vec& y) {
  std::vector<long long> k(static_cast<std::size_t>(y.size()));
  for (Eigen::Index i = 0; i < y.size(); ++i) k[static_cast<std::size_t>(i)] = std::llround(y[i] * 1e9);
  return k;
}

}  // namespace

std::optional<std::vector<Vec>> section_vertices(const std::vector<Vec>& vertices, const Mat& constraints,
                                                 std::size_t budget) {
  const std::size_t nv = vertices.size();
  if (nv == 0) return std::vector<Vec>{};
  const auto k = static_cast<std::size_t>(constraints.rows());
  const std::size_t max_size = std::min(k + 1, nv);
  std::size_t total = 0;
  for (std::size_t s = 1; s <= max_size; ++s) {
    total += binomial_capped(nv, s, budget);
    if (total > budget) return std::nullopt;
  }

  std::vector<Vec> images;
  images.reserve(nv);
  for (const auto& v : vertices) images.push_back(k ? Vec(constraints * v) : Vec());

  std::map<std::vector<long long>, Vec> found;
  std::vector<std::size_t> pick;
  for (std::size_t s = 1; s <= max_size; ++s) {
    pick.resize(s);
    for (std::size_t i = 0; i < s; ++i) pick[i] = i;
    Mat sys(static_cast<Eigen::Index>(k + 1), static_cast<Eigen::Index>(s));
    Vec rhs = Vec::Zero(static_cast<Eigen::Index>(k + 1));
    rhs[static_cast<Eigen::Index>(k)] = 1.0;
    while (true) {
      for (std::size_t i = 0; i < s; ++i) {
        const auto col = static_cast<Eigen::Index>(i);
        if (k) sys.col(col).head(static_cast<Eigen::Index>(k)) = images[pick[i]];
        sys(static_cast<Eigen::Index>(k), col) = 1.0;
      }
      Eigen::ColPivHouseholderQR<Mat> qr(sys);
      qr.setThreshold(1e-10);
      if (qr.rank() == static_cast<Eigen::Index>(s)) {
        const Vec t = qr.solve(rhs);
        const double residual = (sys * t - rhs).norm();
        if (residual <= 1e-9 && t.minCoeff() >= -1e-12) {
          Vec y = Vec::Zero(vertices.front().size());
          for (std::size_t i = 0; i < s; ++i) y += std::max(0.0, t[static_cast<Eigen::Index>(i)]) * vertices[pick[i]];
          found.emplace(key_of(y), std::move(y));
        }
      }
      // Next combination in lexicographic order.
      std::size_t i = s;
      while (i > 0 && pick[i - 1] == nv - s + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  std::vector<Vec> out;
  out.reserve(found.size());
  for (auto& [key, y] : found) out.push_back(std::move(y));
  return out;
}

}  // namespace hyperref::findim
