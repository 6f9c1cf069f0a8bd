#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hyperref/findim/algebra.hpp"

namespace hyperref::findim {

// Zero-product strata of a commutative semisimple algebra with a sup or
// group_l1 norm. A generic multiplication operator splits A into minimal
// ideals ("blocks"); for a block set S, L_S is the sum of those ideals and
// a b = 0 exactly when a in L_S, b in L_T with S, T disjoint. Each L_S meets
// the unit ball in a polytope whose vertices are enumerated once.
class ZeroProductStructure {
 public:
  // Throws AlgebraError for unsupported norms or non-semisimple input,
  // GuardExceeded when a stratum polytope is too large to enumerate.
  // `seed` picks the generic element.
  static ZeroProductStructure build(const AlgebraSpec& a, std::uint64_t seed = 0, std::size_t budget = 400'000);

  int dim() const { return dim_; }
  int blocks() const { return blocks_; }
  std::uint32_t full_mask() const { return (std::uint32_t{1} << blocks_) - 1; }
  // Unit-norm vertices of ball(A) intersected with L_S.
  const std::vector<Vec>& vertices(std::uint32_t mask) const { return vertices_[mask]; }
  // Orthonormal basis of L_S.
  const Mat& stratum_basis(std::uint32_t mask) const { return bases_[mask]; }

  // Columns vec(a b^T) (column-major) over all maximal vertex pairs
  // a in L_S, b in L_{S^c}; alpha(phi) = max |G^T vec(phi)|.
  const Mat& pair_matrix() const { return pairs_; }
  const std::vector<std::pair<Vec, Vec>>& pairs() const { return pair_list_; }

 private:
  int dim_ = 0;
  int blocks_ = 0;
  std::vector<std::vector<Vec>> vertices_;
  std::vector<Mat> bases_;
  Mat pairs_;
  std::vector<std::pair<Vec, Vec>> pair_list_;
};

// Unit-norm pairs with ||a b|| <= 1e-12, at most `budget` of them, in a
// deterministic order.
std::vector<std::pair<Vec, Vec>> zero_product_pairs(const AlgebraSpec& a, std::size_t budget, std::uint64_t seed = 0);

struct AlphaEstimate {
  double value = 0.0;
  Vec a;
  Vec b;
};

// alpha(phi) = sup |phi(a, b)| over unit zero-product pairs, phi(a, b) = a^T Phi b.
// Maximizing a bilinear form over a product of polytopes picks vertices, so
// on these strata the value is attained and exact.
AlphaEstimate alpha_of_phi(const Mat& phi, const ZeroProductStructure& z);

struct StrongBEstimate {
  double value = 0.0;  // lower bound on the best constant r
  Mat phi;
  Vec a, b, c;
  double alpha = 0.0;
};

// Alternating ascent of |phi(ab, c) - phi(a, bc)| / alpha(phi) over bilinear
// forms and unit triples.
StrongBEstimate strong_b_estimate(const AlgebraSpec& a, std::size_t budget, std::uint64_t seed, int restarts = 32);

}  // namespace hyperref::findim
