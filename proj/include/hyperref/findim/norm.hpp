#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hyperref::findim {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class NormKind { sup, group_l1, matrix_p, grid_custom, unitized };

// A norm on R^d together with the convex-analysis primitives the estimators
// need. Value type; cheap to copy.
class Norm {
 public:
  static Norm sup();
  static Norm l1();
  // grid_custom: the l^p norm on coordinates, 1 <= p <= inf.
  static Norm lp(double p);
  // Operator p-norm on m x m matrices stored row-major; p in {1, 2, inf}.
  static Norm matrix_op(int m, double p);
  // ||(a, lambda)|| = ||a|| + |lambda|, lambda the last coordinate.
  static Norm unitized(const Norm& base);

  NormKind kind() const { return kind_; }
  double p() const { return p_; }
  int matrix_dim() const { return m_; }
  const Norm& base() const;
  bool is_euclidean() const;
  std::string describe() const;

  double value(const Vec& x) const;
  double dual_value(const Vec& g) const;
  // y with dual norm <= 1 and <y, x> = ||x||.
  Vec subgradient(const Vec& x) const;
  // An extreme point a of the unit ball with <g, a> = ||g||_*.
  Vec lmo(const Vec& g) const;

  // Extreme points of the unit ball / dual unit ball when the ball is a
  // polytope with at most `limit` vertices.
  std::optional<std::vector<Vec>> primal_vertices(int dim, std::size_t limit = 1u << 16) const;
  std::optional<std::vector<Vec>> dual_vertices(int dim, std::size_t limit = 1u << 16) const;

  // max |x_i| over the unit ball.
  double coordinate_bound(int dim) const;
  // max ||x||_2 over the unit ball.
  double euclidean_radius(int dim) const;
  // max ||x|| over the Euclidean unit ball.
  double euclidean_factor(int dim) const;

 private:
  NormKind kind_ = NormKind::sup;
  double p_ = 0.0;
  int m_ = 0;
  std::shared_ptr<const Norm> base_;
};

}  // namespace hyperref::findim
