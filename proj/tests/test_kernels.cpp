#include <doctest.h>

#include <random>
#include <stdexcept>

#include "hyperref/findim/algebra.hpp"
#include "hyperref/findim/multilinear.hpp"
#include "hyperref/kernels.hpp"

using namespace hyperref;

TEST_CASE("grid evaluation: parallel matches serial") {
  std::mt19937_64 rng(61);
  std::normal_distribution<double> g;
  for (std::int64_t grid : {1, 7, 64, 1000}) {
    std::vector<kernels::Term> terms;
    for (std::int64_t n = -40; n <= 40; n += 3) terms.push_back({n * 17, {g(rng), g(rng)}});
    const auto s = kernels::serial::evaluate_on_grid(terms, grid);
    const auto p = kernels::parallel::evaluate_on_grid(terms, grid);
    REQUIRE(s.size() == p.size());
    double worst = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) worst = std::max(worst, std::abs(s[j] - p[j]));
    CHECK(worst <= 1e-9);
  }
  CHECK_THROWS_AS(kernels::serial::evaluate_on_grid({}, 0), std::invalid_argument);
}

TEST_CASE("coboundary: parallel matches serial") {
  std::mt19937_64 rng(67);
  for (const auto& a : {findim::pointwise(3), findim::matrix_algebra(2),
                        findim::group_algebra(findim::FiniteGroup::cyclic(4))}) {
    const auto x = findim::regular_bimodule(a);
    for (int n = 0; n <= 3; ++n) {
      const auto t = findim::MultilinearMap::random(n, a.dim, x.dim, rng);
      const kernels::CoboundaryOperands ops{n, a.left_mult, x.left, x.right};
      const auto s = kernels::serial::apply_coboundary(ops, t.tensor);
      const auto p = kernels::parallel::apply_coboundary(ops, t.tensor);
      CHECK((s - p).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("coboundary rejects mismatched shapes") {
  const auto a = findim::pointwise(2);
  const auto x = findim::regular_bimodule(a);
  const kernels::CoboundaryOperands ops{2, a.left_mult, x.left, x.right};
  CHECK_THROWS_AS(kernels::parallel::apply_coboundary(ops, Eigen::MatrixXd::Zero(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(kernels::serial::apply_coboundary(ops, Eigen::MatrixXd::Zero(3, 4)), std::invalid_argument);
}

TEST_CASE("grid points") {
  CHECK(kernels::grid_point(0, 8) == doctest::Approx(-3.141592653589793));
  CHECK(kernels::grid_point(4, 8) == doctest::Approx(0.0));
}
