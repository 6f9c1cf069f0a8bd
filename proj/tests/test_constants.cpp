#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "hyperref/constants.hpp"

using namespace hyperref::constants;
using std::numbers::pi;

namespace {
const double kRoot2 = std::sqrt(2.0);
}

TEST_CASE("circle lemma bound") {
  CHECK(circle_lemma_bound(0).value == 0.0);
  CHECK(circle_lemma_bound(1).value == doctest::Approx(33.0479).epsilon(1e-5));
  CHECK(circle_lemma_bound(0.25).value == doctest::Approx(16.5240).epsilon(1e-5));
  CHECK(circle_lemma_bound(1).value == doctest::Approx(12 * std::sqrt(pi * (1 + kRoot2))));
  CHECK_FALSE(circle_lemma_bound(1).formula.empty());
}

TEST_CASE("strong (B) constants for the circle") {
  const auto one = circle_strong_b(1);
  CHECK(one.restricted.value == doctest::Approx(1092.16).epsilon(1e-5));
  CHECK(one.general.value == doctest::Approx(2184.33).epsilon(1e-5));
  CHECK(one.restricted.value / one.general.value == 0.5);
  CHECK(circle_strong_b(0).general.value == 0.0);
  CHECK(circle_strong_b(0).restricted.value == 0.0);
  CHECK(cstar_group_constant().value == doctest::Approx(2184.329).epsilon(1e-6));
  CHECK(cstar_group_constant().value == one.general.value);
  CHECK(cstar_group_constant().value / (pi * (1 + kRoot2)) == doctest::Approx(288.0).epsilon(1e-12));
}

TEST_CASE("unitization and cocycle bounds") {
  CHECK(unitization_constant(1, 2184.329).value == doctest::Approx(2188.329).epsilon(1e-9));
  CHECK(unitization_constant(1, 0).value == 4.0);
  CHECK(unitization_constant(2, 1).value == 13.0);
  CHECK(cocycle_norm_bound(1, 3.0, 0.5).value == doctest::Approx(9 * 0.5));
  CHECK(cocycle_norm_bound(3, 3.0, 0.0).value == 0.0);
  CHECK(cocycle_norm_bound(2, 2.0, 1.0).value == 16.0);
}

TEST_CASE("hyperreflexivity bound") {
  CHECK(hyperref_bound(1, 1, 2184.329, 1).value == doctest::Approx(2188.329 * 2188.329).epsilon(1e-9));
  CHECK(hyperref_bound(1, 1, 2184.329, 1).value == doctest::Approx(4.78878e6).epsilon(1e-5));
  CHECK(hyperref_bound(1, 1, 0, 1).value == 16.0);
  for (int n = 1; n <= 3; ++n)
    for (double m : {1.0, 1.5, 3.0}) {
      const double direct = 2.5 * std::pow(2.0, n - 1) * std::pow(288 * pi * m * m * (1 + kRoot2) + (m + 1) * (m + 1), n + 1);
      CHECK(hyperref_bound(n, m, cstar_group_constant().value, 2.5).value == doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("commutant bounds and presets") {
  CHECK(commutant_bound(1, 1, 1, 1).value == 1.0);
  CHECK(commutant_bound(1, 1, 2, 1).value == 4.0);
  CHECK(convolution_operator_bound().value == doctest::Approx(2184.329).epsilon(1e-6));
  for (const char* kind : {"amenable_group_algebra", "amenable_cstar"}) {
    const auto p = amenability_presets(kind);
    CHECK(p.amenability == 1.0);
    CHECK(p.open_mapping == 1.0);
    CHECK(p.open_mapping <= p.amenability);
  }
  CHECK_THROWS_AS(amenability_presets("banach"), std::invalid_argument);
}

TEST_CASE("input validation") {
  ConstantInputs in;
  CHECK_NOTHROW(in.validate());
  CHECK(in.strong_b() == doctest::Approx(cstar_group_constant().value));
  in.r = 5.0;
  CHECK(in.strong_b() == 5.0);
  in.M = 0.5;
  CHECK_THROWS_AS(in.validate(), std::invalid_argument);
  in = {};
  in.n = 0;
  CHECK_THROWS_AS(in.validate(), std::invalid_argument);
  in = {};
  in.alpha = -1;
  CHECK_THROWS_AS(in.validate(), std::invalid_argument);
}

TEST_CASE("monotone in every input") {
  const std::vector<double> grid{0.0, 0.5, 1.0, 2.0, 10.0};
  const auto nondecreasing = [&](const std::function<double(double)>& f, double lo) {
    double prev = -1.0;
    for (double x : grid) {
      if (x < lo) continue;
      const double v = f(x);
      if (v < prev) return false;
      prev = v;
    }
    return true;
  };
  CHECK(nondecreasing([](double a) { return circle_lemma_bound(a).value; }, 0));
  CHECK(nondecreasing([](double a) { return circle_strong_b(a).general.value; }, 0));
  CHECK(nondecreasing([](double m) { return unitization_constant(m, 3).value; }, 1));
  CHECK(nondecreasing([](double r) { return unitization_constant(2, r).value; }, 0));
  CHECK(nondecreasing([](double r) { return cocycle_norm_bound(2, r, 1).value; }, 0));
  CHECK(nondecreasing([](double g) { return cocycle_norm_bound(2, 3, g).value; }, 0));
  CHECK(nondecreasing([](double m) { return hyperref_bound(2, m, 3, 1).value; }, 1));
  CHECK(nondecreasing([](double r) { return hyperref_bound(2, 1, r, 1).value; }, 0));
  CHECK(nondecreasing([](double c) { return hyperref_bound(2, 1, 3, c).value; }, 0.5));
  CHECK(nondecreasing([](double k) { return commutant_bound(1, 1, k, 1).value; }, 1));
  CHECK(nondecreasing([](double p) { return commutant_bound(1, 1, 1, p).value; }, 0.5));
  CHECK(hyperref_bound(3, 1, 3, 1).value >= hyperref_bound(2, 1, 3, 1).value);
}

TEST_CASE("homogeneity in alpha") {
  for (double a : {0.01, 0.3, 2.0}) {
    CHECK(circle_lemma_bound(4 * a).value == doctest::Approx(2 * circle_lemma_bound(a).value));
    CHECK(circle_strong_b(3 * a).general.value == doctest::Approx(3 * circle_strong_b(a).general.value));
    CHECK(circle_strong_b(3 * a).restricted.value == doctest::Approx(3 * circle_strong_b(a).restricted.value));
  }
}
