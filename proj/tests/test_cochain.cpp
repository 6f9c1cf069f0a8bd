#include <doctest.h>

#include <random>

#include "hyperref/findim/experiments.hpp"
#include "hyperref/findim/multilinear.hpp"

using namespace hyperref::findim;

namespace {

Vec gaussian(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = g(rng);
  return v;
}

std::vector<Vec> random_args(std::mt19937_64& rng, int n, int d) {
  std::vector<Vec> args;
  for (int i = 0; i < n; ++i) args.push_back(gaussian(rng, d));
  return args;
}

// The coboundary evaluated from its defining formula on explicit arguments.
Vec coboundary_at(const MultilinearMap& t, const AlgebraSpec& a, const BimoduleSpec& x, const std::vector<Vec>& args) {
  const int n = t.degree;
  if (n == 0) return x.left_operator(args[0]) * t.tensor.col(0) - x.right_operator(args[0]) * t.tensor.col(0);
  std::vector<Vec> tail(args.begin() + 1, args.end());
  Vec out = x.left_operator(args[0]) * t(tail);
  for (int j = 0; j < n; ++j) {
    std::vector<Vec> merged;
    for (int k = 0; k < j; ++k) merged.push_back(args[k]);
    merged.push_back(a.multiply(args[j], args[j + 1]));
    for (int k = j + 2; k <= n; ++k) merged.push_back(args[k]);
    out += ((j + 1) % 2 ? -1.0 : 1.0) * t(merged);
  }
  std::vector<Vec> head(args.begin(), args.end() - 1);
  out += ((n + 1) % 2 ? -1.0 : 1.0) * (x.right_operator(args[n]) * t(head));
  return out;
}

struct Case {
  AlgebraSpec a;
  BimoduleSpec x;
};

std::vector<Case> cases() {
  std::vector<Case> out;
  for (auto a : {pointwise(2), pointwise(3), matrix_algebra(2), group_algebra(FiniteGroup::cyclic(3))})
    out.push_back({a, regular_bimodule(a)});
  return out;
}

}  // namespace

TEST_CASE("scalar coboundary of the identity is the product") {
  const auto s = scalars();
  auto t = MultilinearMap::zero(1, 1, 1);
  t.tensor(0, 0) = 1.0;
  const auto d = delta_n(t, s, regular_bimodule(s));
  CHECK(d.degree == 2);
  CHECK(d.tensor(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("coboundary agrees with the defining formula") {
  std::mt19937_64 rng(31);
  for (const auto& c : cases())
    for (int n = 1; n <= 3; ++n) {
      const auto t = MultilinearMap::random(n, c.a.dim, c.x.dim, rng);
      const auto d = delta_n(t, c.a, c.x);
      const auto args = random_args(rng, n + 1, c.a.dim);
      CHECK((d(args) - coboundary_at(t, c.a, c.x, args)).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("chain complex and Lambda intertwining") {
  std::mt19937_64 rng(37);
  for (const auto& c : cases())
    for (int n = 1; n <= 3; ++n) {
      const auto t = MultilinearMap::random(n, c.a.dim, c.x.dim, rng);
      const auto dd = delta_n(delta_n(t, c.a, c.x), c.a, c.x);
      CHECK(dd.tensor.cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(lambda_check(t, c.a, c.x) <= 1e-10);
    }
  const auto s = scalars();
  auto t = MultilinearMap::zero(1, 1, 1);
  t.tensor(0, 0) = 3.0;
  CHECK(lambda_check(t, s, regular_bimodule(s)) == 0.0);
}

TEST_CASE("Lambda is a reshape") {
  std::mt19937_64 rng(41);
  const auto a = pointwise(2);
  const auto t = MultilinearMap::random(2, 2, 2, rng);
  const auto l = lambda_identify(t);
  CHECK(l.degree == 1);
  CHECK(l.out_dim == 4);
  const auto args = random_args(rng, 2, 2);
  const Vec inner = l(std::span<const Vec>(args.data(), 1));
  Vec applied = Vec::Zero(2);
  for (int j = 0; j < 2; ++j) applied += args[1][j] * inner.segment(2 * j, 2);
  CHECK((applied - t(args)).norm() <= 1e-12);
}

TEST_CASE("star actions") {
  std::mt19937_64 rng(43);
  const auto s = scalars();
  auto id = MultilinearMap::zero(1, 1, 1);
  id.tensor(0, 0) = 1.0;
  const Vec two = Vec::Constant(1, 2.0);
  CHECK(star_actions(two, id, s, regular_bimodule(s)).right.tensor.cwiseAbs().maxCoeff() == 0.0);

  const auto m2 = matrix_algebra(2);
  const auto x = regular_bimodule(m2);
  for (int n = 1; n <= 3; ++n) {
    const auto t = MultilinearMap::random(n, 4, 4, rng);
    const auto unit = star_actions(*m2.unit, t, m2, x);
    CHECK((unit.left.tensor - t.tensor).cwiseAbs().maxCoeff() <= 1e-12);
    const Vec a = gaussian(rng, 4), b = gaussian(rng, 4);
    const Vec ab = m2.multiply(a, b);
    const auto sb = star_actions(b, t, m2, x);
    const auto sab = star_actions(ab, t, m2, x);
    // a(bT) = (ab)T
    CHECK((star_actions(a, sb.left, m2, x).left.tensor - sab.left.tensor).cwiseAbs().maxCoeff() <= 1e-10);
    // (Ta)b = T(ab)
    const auto ta = star_actions(a, t, m2, x).right;
    CHECK((star_actions(b, ta, m2, x).right.tensor - sab.right.tensor).cwiseAbs().maxCoeff() <= 1e-10);
    // (aT)b = a(Tb)
    const auto at = star_actions(a, t, m2, x).left;
    CHECK((star_actions(b, at, m2, x).right.tensor - star_actions(a, sb.right, m2, x).left.tensor)
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
  }
}

TEST_CASE("first cocycle spaces") {
  const auto m2 = matrix_algebra(2);
  CHECK(cocycle_space(m2, regular_bimodule(m2), 1).size() == 3);
  const auto c2 = pointwise(2);
  CHECK(cocycle_space(c2, regular_bimodule(c2), 1).size() == 0);
  const auto s = scalars();
  CHECK(cocycle_space(s, regular_bimodule(s), 1).size() == 0);
  CHECK_THROWS_AS(cocycle_space(m2, regular_bimodule(m2), 3, 100), GuardExceeded);
}

TEST_CASE("cocycles lie in the kernel and inner derivations are cocycles") {
  std::mt19937_64 rng(47);
  for (const auto& c : cases()) {
    const auto z = cocycle_space(c.a, c.x, 1);
    for (int k = 0; k < z.size(); ++k)
      CHECK(delta_n(z.element(k), c.a, c.x).tensor.cwiseAbs().maxCoeff() <= 1e-9);
    const auto ad = inner_derivation(gaussian(rng, c.x.dim), c.a, c.x);
    CHECK(delta_n(ad, c.a, c.x).tensor.cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(z.frobenius_distance(ad) <= 1e-9 * std::max(1.0, ad.tensor.norm()));
  }
}

TEST_CASE("unitization extension") {
  std::mt19937_64 rng(53);
  const auto t = MultilinearMap::random(2, 2, 2, rng);
  const auto e = sigma_extend(t);
  CHECK(e.in_dim == 3);
  CHECK(vanish_on_unit(e) == 0.0);
  const auto args = random_args(rng, 2, 2);
  std::vector<Vec> padded;
  for (const auto& v : args) {
    Vec p = Vec::Zero(3);
    p.head(2) = v;
    padded.push_back(p);
  }
  CHECK((e(padded) - t(args)).norm() <= 1e-12);
}

TEST_CASE("flatten round trip and projections") {
  std::mt19937_64 rng(59);
  const auto t = MultilinearMap::random(2, 3, 2, rng);
  const auto back = unflatten(flatten(t), 2, 3, 2);
  CHECK((back.tensor - t.tensor).norm() == 0.0);
  const auto m2 = matrix_algebra(2);
  const auto z = cocycle_space(m2, regular_bimodule(m2), 1);
  const auto d = z.element(0);
  CHECK(z.frobenius_distance(d) <= 1e-12);
  CHECK(null_space(Mat::Identity(3, 3)).cols() == 0);
  CHECK(null_space(Mat::Zero(2, 3)).cols() == 3);
}
