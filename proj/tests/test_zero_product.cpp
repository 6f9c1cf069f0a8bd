#include <doctest.h>

#include <random>

#include "hyperref/findim/multilinear.hpp"
#include "hyperref/findim/zero_product.hpp"

using namespace hyperref::findim;

TEST_CASE("pairs in C^2") {
  const auto pairs = zero_product_pairs(pointwise(2), 1000);
  REQUIRE_FALSE(pairs.empty());
  bool found = false;
  for (const auto& [a, b] : pairs) {
    CHECK(a.norm() > 0);
    CHECK(b.norm() > 0);
    if (std::abs(a[0]) == 1.0 && a[1] == 0.0 && b[0] == 0.0 && std::abs(b[1]) == 1.0) found = true;
  }
  CHECK(found);
}

TEST_CASE("pairs in l1(Z_2) come from disjoint Fourier supports") {
  const auto a = group_algebra(FiniteGroup::cyclic(2));
  const auto pairs = zero_product_pairs(a, 1000);
  REQUIRE_FALSE(pairs.empty());
  for (const auto& [f, g] : pairs) {
    CHECK(a.norm.value(f) == doctest::Approx(1.0));
    CHECK(a.norm.value(g) == doctest::Approx(1.0));
  }
  const Vec f = (Vec(2) << 0.5, 0.5).finished();
  const Vec g = (Vec(2) << 0.5, -0.5).finished();
  CHECK(a.multiply(f, g).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("every emitted pair multiplies to zero") {
  for (const auto& a : {pointwise(3), pointwise(4), group_algebra(FiniteGroup::cyclic(3)),
                        group_algebra(FiniteGroup::cyclic(4))}) {
    const auto pairs = zero_product_pairs(a, 100000);
    CHECK_FALSE(pairs.empty());
    for (const auto& [x, y] : pairs) {
      CHECK(a.norm.value(a.multiply(x, y)) <= 1e-12);
      CHECK(x.norm() > 0);
      CHECK(y.norm() > 0);
    }
  }
  CHECK_THROWS_AS(zero_product_pairs(matrix_algebra(2), 1000), AlgebraError);
}

TEST_CASE("alpha of bilinear forms") {
  const auto c2 = pointwise(2);
  const auto z = ZeroProductStructure::build(c2);
  CHECK(z.blocks() == 2);
  Mat phi = Mat::Zero(2, 2);
  CHECK(alpha_of_phi(phi, z).value == 0.0);
  phi(0, 1) = 1.0;
  const auto est = alpha_of_phi(phi, z);
  CHECK(est.value == doctest::Approx(1.0));
  CHECK(std::abs(est.a.dot(phi * est.b)) == doctest::Approx(1.0));
  CHECK(c2.multiply(est.a, est.b).norm() == 0.0);

  // phi(a, b) = tau(ab) vanishes on zero-product pairs.
  std::mt19937_64 rng(71);
  for (const auto& a : {pointwise(3), group_algebra(FiniteGroup::cyclic(3))}) {
    const auto s = ZeroProductStructure::build(a);
    const Vec tau = Vec::Random(a.dim);
    Mat form(a.dim, a.dim);
    for (int i = 0; i < a.dim; ++i)
      for (int j = 0; j < a.dim; ++j) form(i, j) = tau.dot(a.left_mult[i].col(j));
    CHECK(alpha_of_phi(form, s).value <= 1e-12);
  }
}

TEST_CASE("alpha is attained and bounds random zero-product pairs") {
  std::mt19937_64 rng(73);
  std::normal_distribution<double> g;
  const auto a = pointwise(3);
  const auto z = ZeroProductStructure::build(a);
  Mat phi(3, 3);
  for (int i = 0; i < 9; ++i) phi(i / 3, i % 3) = g(rng);
  const double alpha = alpha_of_phi(phi, z).value;
  for (int trial = 0; trial < 200; ++trial) {
    // Disjoint random supports.
    Vec x = Vec::Zero(3), y = Vec::Zero(3);
    const int split = trial % 3;
    for (int i = 0; i < 3; ++i) (i <= split ? x : y)[i] = g(rng);
    if (y.norm() == 0) continue;
    x /= a.norm.value(x);
    y /= a.norm.value(y);
    CHECK(std::abs(x.dot(phi * y)) <= alpha + 1e-12);
  }
}

TEST_CASE("strong (B) estimates") {
  CHECK(strong_b_estimate(scalars(), 100000, 0).value == 0.0);
  const auto c2 = strong_b_estimate(pointwise(2), 100000, 0);
  CHECK(c2.value >= 2.0 - 1e-9);
  CHECK(c2.value <= 2184.33);
  CHECK(c2.alpha == doctest::Approx(1.0));
  const auto again = strong_b_estimate(pointwise(2), 100000, 0);
  CHECK(again.value == c2.value);
  CHECK_THROWS_AS(strong_b_estimate(pointwise(4), 10, 0), GuardExceeded);
}
