#include <doctest.h>

#include <random>

#include "hyperref/constants.hpp"
#include "hyperref/findim/distance.hpp"
#include "hyperref/findim/experiments.hpp"

using namespace hyperref::findim;

TEST_CASE("regular representation of Z_3") {
  const auto rep = regular_representation(FiniteGroup::cyclic(3), 2.0);
  CHECK(rep.space_dim == 3);
  CHECK(rep.algebra.dim == 3);
  for (const auto& m : rep.action) {
    CHECK((m.transpose() * m - Mat::Identity(3, 3)).norm() <= 1e-15);
    auto t = MultilinearMap::zero(1, 3, 3);
    t.tensor = m;
    CHECK(op_norm(t, rep.space_norm, rep.space_norm).upper == doctest::Approx(1.0));
  }
  // pi is a homomorphism.
  std::mt19937_64 rng(103);
  const Vec a = Vec::Random(3), b = Vec::Random(3);
  CHECK((rep.apply(rep.algebra.multiply(a, b)) - rep.apply(a) * rep.apply(b)).norm() <= 1e-12);
  CHECK(associativity_defect(rep.algebra) <= 1e-12);
}

TEST_CASE("commutants") {
  const auto rep = regular_representation(FiniteGroup::cyclic(3), 2.0);
  const auto c = commutant(rep.action, 3);
  CHECK(c.size() == 3);
  for (int k = 0; k < c.size(); ++k) {
    const Mat l = c.element(k).tensor;
    for (int trial = 0; trial < 5; ++trial) {
      const Mat p = rep.apply(Vec::Random(3));
      CHECK((p * l - l * p).norm() <= 1e-10);
    }
  }
  const std::vector<Mat> scalar_action{2.0 * Mat::Identity(3, 3)};
  CHECK(commutant(scalar_action, 3).size() == 9);
  CHECK(commutant(regular_representation(FiniteGroup::cyclic(4), 2.0).action, 4).size() == 4);
}

TEST_CASE("local unit bounds") {
  CHECK(local_unit_bound(pointwise(3)).value == doctest::Approx(1.0));
  CHECK(local_unit_bound(group_algebra(FiniteGroup::cyclic(4))).value == doctest::Approx(1.0));
  CHECK(local_unit_bound(matrix_algebra(2)).value == doctest::Approx(1.0));
  CHECK_FALSE(local_unit_bound(matrix_algebra(2)).heuristic);
  auto no_flag = pointwise(2);
  no_flag.unit.reset();
  const auto h = local_unit_bound(no_flag);
  CHECK(h.heuristic);
  CHECK(h.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(local_unit_bound(scalars(false)).heuristic);
  const auto null = from_structure("null", 2, {}, Norm::sup(), std::nullopt);
  CHECK_THROWS_AS(local_unit_bound(null), AlgebraError);
}

TEST_CASE("hyperreflexivity ratios on C^2") {
  const auto a = pointwise(2);
  const auto r = hyperref_ratio(a, regular_bimodule(a), 1, 30, 42);
  CHECK(r.bound == doctest::Approx(hyperref::constants::hyperref_bound(1, 1, 2184.329, 1).value).epsilon(1e-6));
  CHECK(r.samples.size() == 30);
  CHECK(r.max_ratio <= r.bound);
  for (const auto& s : r.samples) CHECK(s.dist_r_lower <= s.dist_upper * (1 + 1e-9) + 1e-12);
  const auto again = hyperref_ratio(a, regular_bimodule(a), 1, 30, 42);
  for (std::size_t i = 0; i < r.samples.size(); ++i) CHECK(again.samples[i].ratio == r.samples[i].ratio);
}

TEST_CASE("cocycles are skipped") {
  const auto m2 = matrix_algebra(2);
  const auto x = regular_bimodule(m2);
  const auto z = cocycle_space(m2, x, 1);
  const auto s = ratio_sample(z.element(0), z, m2.norm, x.norm, 10.0, 0);
  CHECK(s.status == SampleStatus::skipped);
  CHECK(s.dist_upper <= 1e-6);
}

TEST_CASE("cocycle bound check") {
  const auto a = pointwise(3);
  const auto x = regular_bimodule(a);
  const auto zero = MultilinearMap::zero(2, 3, 3);
  CHECK(cocycle_bound_check(zero, a, x, 2184.33, 100000, 0).status == "consistent");
  std::mt19937_64 rng(107);
  const auto t = MultilinearMap::random(2, 3, 3, rng);
  const auto rep = cocycle_bound_check(t, a, x, 2184.33, 100000, 1);
  CHECK(rep.status == "consistent");
  CHECK(rep.delta_norm_lower <= rep.bound_from_gamma);
}

TEST_CASE("commutant check on Z_3") {
  const auto rep = commutant_hyperref_check(FiniteGroup::cyclic(3), 2.0, 20, 7);
  CHECK(rep.ratios.subspace_dim == 3);
  CHECK(rep.ratios.max_ratio <= hyperref::constants::convolution_operator_bound().value);
  CHECK(rep.intermediate_checked > 0);
  CHECK(rep.intermediate_violations == 0);
}
