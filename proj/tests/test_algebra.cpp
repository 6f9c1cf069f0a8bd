#include <doctest.h>

#include <sstream>

#include "hyperref/findim/algebra.hpp"

using namespace hyperref::findim;

TEST_CASE("finite groups") {
  const auto z3 = FiniteGroup::cyclic(3);
  CHECK(z3.order() == 3);
  CHECK(z3.identity() == 0);
  CHECK(z3.multiply(2, 2) == 1);
  CHECK(z3.inverse(1) == 2);
  CHECK(z3.is_abelian());
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), AlgebraError);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1}}), AlgebraError);

  // S_3 as permutations, composed left to right via a Cayley table.
  std::istringstream s3(
      "6\n"
      "0 1 2 3 4 5\n"
      "1 2 0 4 5 3\n"
      "2 0 1 5 3 4\n"
      "3 5 4 0 2 1\n"
      "4 3 5 1 0 2\n"
      "5 4 3 2 1 0\n");
  const auto g = parse_cayley_table(s3);
  CHECK(g.order() == 6);
  CHECK_FALSE(g.is_abelian());
  std::istringstream bad("2\n0 1\n1 x\n");
  CHECK_THROWS_AS(parse_cayley_table(bad), AlgebraError);
}

TEST_CASE("group algebra structure constants follow the group table") {
  const auto z2 = FiniteGroup::cyclic(2);
  const auto a = group_algebra(z2);
  CHECK(a.dim == 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) CHECK(a.structure(i, j, k) == (z2.multiply(i, j) == k ? 1.0 : 0.0));
  CHECK(associativity_defect(group_algebra(FiniteGroup::cyclic(5))) <= 1e-12);
  REQUIRE(a.unit);
  CHECK((*a.unit)[0] == 1.0);
  CHECK(a.norm.kind() == NormKind::group_l1);
}

TEST_CASE("standard algebras are valid") {
  for (const auto& a : {scalars(), pointwise(3), matrix_algebra(2), group_algebra(FiniteGroup::cyclic(3))}) {
    CHECK_NOTHROW(validate(a));
    CHECK_NOTHROW(validate(a, regular_bimodule(a)));
  }
  CHECK(pointwise(3).is_commutative());
  CHECK_FALSE(matrix_algebra(2).is_commutative());
  const auto m2 = matrix_algebra(2);
  Vec a(4), b(4);
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 0;
  const Vec ab = m2.multiply(a, b);
  CHECK(ab[0] == 2);
  CHECK(ab[1] == 1);
  CHECK(ab[2] == 4);
  CHECK(ab[3] == 3);
}

TEST_CASE("validation rejects broken structure constants") {
  CHECK_THROWS_AS(from_structure("bad", 2, {{0, 0, 1, 1.0}, {1, 0, 0, 1.0}}, Norm::sup(), std::nullopt),
                  AlgebraError);
  auto wrong_unit = pointwise(2);
  wrong_unit.unit = (Vec(2) << 1.0, 0.0).finished();
  CHECK_THROWS_AS(validate(wrong_unit), AlgebraError);
}

TEST_CASE("unitization") {
  const auto s = unitize(scalars(false));
  CHECK(s.dim == 2);
  REQUIRE(s.unit);
  CHECK((*s.unit)[0] == 0.0);
  CHECK((*s.unit)[1] == 1.0);
  CHECK_NOTHROW(validate(s));

  const auto c2 = unitize(pointwise(2));
  CHECK(c2.dim == 3);
  for (int i = 0; i < 3; ++i) {
    Vec e = Vec::Zero(3);
    e[i] = 1.0;
    CHECK((c2.multiply(*c2.unit, e) - e).norm() == 0.0);
    CHECK((c2.multiply(e, *c2.unit) - e).norm() == 0.0);
  }
  CHECK(associativity_defect(c2) <= 1e-12);
  CHECK(associativity_defect(unitize(matrix_algebra(2))) <= 1e-12);
  const Vec x = (Vec(3) << 0.5, -2.0, 1.5).finished();
  CHECK(c2.norm.value(x) == 3.5);

  const auto m = unitize_module(regular_bimodule(pointwise(2)), pointwise(2));
  CHECK(m.left.size() == 3);
  CHECK_NOTHROW(validate(c2, m));
}

TEST_CASE("hom module satisfies the bimodule axioms") {
  const auto a = matrix_algebra(2);
  const auto h = hom_module(a, regular_bimodule(a));
  CHECK(h.dim == 16);
  CHECK(module_defect(a, h) <= 1e-12);
}

TEST_CASE("text format") {
  std::istringstream in(
      "# C^2 with pointwise product\n"
      "dim 2\n"
      "0 0 0 1\n"
      "1 1 1 1\n"
      "norm sup\n"
      "unit 1 1\n");
  const auto a = parse_algebra(in);
  CHECK(a.dim == 2);
  CHECK(a.structure(1, 1, 1) == 1.0);
  CHECK(a.structure(0, 1, 0) == 0.0);
  CHECK_NOTHROW(validate(a));

  std::istringstream m("4\n0 0 0 1\nnorm matrix_p 2 2\n");
  CHECK(parse_algebra(m).norm.kind() == NormKind::matrix_p);
  std::istringstream g("1\n0 0 0 1\nnorm grid_custom 3\n");
  CHECK(parse_algebra(g).norm.p() == 3.0);
  std::istringstream no_norm("2\n0 0 0 1\n");
  CHECK_THROWS_AS(parse_algebra(no_norm), AlgebraError);
  std::istringstream bad_norm("2\nnorm frobenius\n");
  CHECK_THROWS_AS(parse_algebra(bad_norm), AlgebraError);
  std::istringstream bad_line("2\n0 0 1\nnorm sup\n");
  CHECK_THROWS_AS(parse_algebra(bad_line), AlgebraError);
  CHECK_THROWS_AS(load_algebra("/nonexistent/algebra.txt"), AlgebraError);
}
