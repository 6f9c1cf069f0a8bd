#include <cmath>
#include <limits>

#include "hyperref/findim/algebra.hpp"

namespace hyperref::findim {

namespace {

constexpr double kStructureTol = 1e-12;

Vec basis(int dim, int i) {
  Vec e = Vec::Zero(dim);
  e[i] = 1.0;
  return e;
}

}  // namespace

Vec AlgebraSpec::multiply(const Vec& a, const Vec& b) const { return left_operator(a) * b; }

Mat AlgebraSpec::left_operator(const Vec& a) const {
  Mat out = Mat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    if (a[i] != 0.0) out += a[i] * left_mult[static_cast<std::size_t>(i)];
  return out;
}

Mat AlgebraSpec::right_operator(const Vec& b) const {
  Mat out(dim, dim);
  for (int i = 0; i < dim; ++i) out.col(i) = left_mult[static_cast<std::size_t>(i)] * b;
  return out;
}

bool AlgebraSpec::is_commutative(double tol) const {
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if ((left_mult[static_cast<std::size_t>(i)].col(j) - left_mult[static_cast<std::size_t>(j)].col(i))
              .cwiseAbs()
              .maxCoeff() > tol)
        return false;
  return true;
}

double associativity_defect(const AlgebraSpec& a) {
  double worst = 0.0;
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      const Vec ij = a.left_mult[static_cast<std::size_t>(i)].col(j);
      const Mat lhs = a.left_operator(ij);  // (e_i e_j) e_k as columns
      const Mat rhs = a.left_mult[static_cast<std::size_t>(i)] * a.left_mult[static_cast<std::size_t>(j)];
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst;
}

void validate(const AlgebraSpec& a) {
  if (a.dim < 1 || static_cast<int>(a.left_mult.size()) != a.dim) throw AlgebraError(a.name + ": inconsistent dimension");
  for (const auto& m : a.left_mult)
    if (m.rows() != a.dim || m.cols() != a.dim) throw AlgebraError(a.name + ": structure block has the wrong shape");
  if (const double d = associativity_defect(a); d > kStructureTol)
    throw AlgebraError(a.name + ": associativity fails (defect " + std::to_string(d) + ")");
  if (a.unit) {
    if (a.unit->size() != a.dim) throw AlgebraError(a.name + ": unit has the wrong dimension");
    const Mat id = Mat::Identity(a.dim, a.dim);
    if ((a.left_operator(*a.unit) - id).cwiseAbs().maxCoeff() > kStructureTol ||
        (a.right_operator(*a.unit) - id).cwiseAbs().maxCoeff() > kStructureTol)
      throw AlgebraError(a.name + ": declared unit is not a two-sided identity");
  }
}

Mat BimoduleSpec::left_operator(const Vec& a) const {
  Mat out = Mat::Zero(dim, dim);
  for (std::size_t i = 0; i < left.size(); ++i)
    if (a[static_cast<Eigen::Index>(i)] != 0.0) out += a[static_cast<Eigen::Index>(i)] * left[i];
  return out;
}

Mat BimoduleSpec::right_operator(const Vec& a) const {
  Mat out = Mat::Zero(dim, dim);
  for (std::size_t i = 0; i < right.size(); ++i)
    if (a[static_cast<Eigen::Index>(i)] != 0.0) out += a[static_cast<Eigen::Index>(i)] * right[i];
  return out;
}

double module_defect(const AlgebraSpec& a, const BimoduleSpec& x) {
  double worst = 0.0;
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      const Vec ij = a.left_mult[static_cast<std::size_t>(i)].col(j);
      const auto& li = x.left[static_cast<std::size_t>(i)];
      const auto& lj = x.left[static_cast<std::size_t>(j)];
      const auto& ri = x.right[static_cast<std::size_t>(i)];
      const auto& rj = x.right[static_cast<std::size_t>(j)];
      worst = std::max(worst, (li * lj - x.left_operator(ij)).cwiseAbs().maxCoeff());
      worst = std::max(worst, (rj * ri - x.right_operator(ij)).cwiseAbs().maxCoeff());
      worst = std::max(worst, (rj * li - li * rj).cwiseAbs().maxCoeff());
    }
  return worst;
}

void validate(const AlgebraSpec& a, const BimoduleSpec& x) {
  if (static_cast<int>(x.left.size()) != a.dim || static_cast<int>(x.right.size()) != a.dim)
    throw AlgebraError(x.name + ": action count differs from the algebra dimension");
  for (const auto* side : {&x.left, &x.right})
    for (const auto& m : *side)
      if (m.rows() != x.dim || m.cols() != x.dim) throw AlgebraError(x.name + ": action block has the wrong shape");
  if (const double d = module_defect(a, x); d > kStructureTol)
    throw AlgebraError(x.name + ": bimodule axioms fail (defect " + std::to_string(d) + ")");
}

AlgebraSpec from_structure(std::string name, int dim, const std::vector<StructureEntry>& entries, Norm norm,
                           std::optional<Vec> unit) {
  if (dim < 1) throw AlgebraError(name + ": dimension must be positive");
  AlgebraSpec a{std::move(name), dim, std::vector<Mat>(static_cast<std::size_t>(dim), Mat::Zero(dim, dim)),
                std::move(norm), std::move(unit)};
  for (const auto& e : entries) {
    if (e.i < 0 || e.i >= dim || e.j < 0 || e.j >= dim || e.k < 0 || e.k >= dim)
      throw AlgebraError(a.name + ": structure index out of range");
    a.left_mult[static_cast<std::size_t>(e.i)](e.k, e.j) += e.value;
  }
  validate(a);
  return a;
}

AlgebraSpec scalars(bool with_unit) {
  std::optional<Vec> unit;
  if (with_unit) unit = Vec::Ones(1);
  return from_structure("scalars", 1, {{0, 0, 0, 1.0}}, Norm::sup(), unit);
}

AlgebraSpec pointwise(int k) {
  std::vector<StructureEntry> entries;
  for (int i = 0; i < k; ++i) entries.push_back({i, i, i, 1.0});
  return from_structure("C^" + std::to_string(k), k, entries, Norm::sup(), Vec::Ones(k));
}

AlgebraSpec matrix_algebra(int m, double p) {
  std::vector<StructureEntry> entries;
  // E_ab E_bd = E_ad with E_ab stored at a*m + b.
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int d = 0; d < m; ++d) entries.push_back({a * m + b, b * m + d, a * m + d, 1.0});
  Vec unit = Vec::Zero(m * m);
  for (int a = 0; a < m; ++a) unit[a * m + a] = 1.0;
  return from_structure("M_" + std::to_string(m), m * m, entries, Norm::matrix_op(m, p), unit);
}

AlgebraSpec group_algebra(const FiniteGroup& g) {
  std::vector<StructureEntry> entries;
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y) entries.push_back({x, y, g.multiply(x, y), 1.0});
  return from_structure("l1(G|" + std::to_string(g.order()) + ")", g.order(), entries, Norm::l1(),
                        basis(g.order(), g.identity()));
}

BimoduleSpec regular_bimodule(const AlgebraSpec& a) {
  BimoduleSpec x{a.name, a.dim, a.left_mult, {}, a.norm};
  for (int i = 0; i < a.dim; ++i) x.right.push_back(a.right_operator(basis(a.dim, i)));
  return x;
}

AlgebraSpec unitize(const AlgebraSpec& a) {
  const int d = a.dim;
  std::vector<StructureEntry> entries;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        if (const double c = a.structure(i, j, k); c != 0.0) entries.push_back({i, j, k, c});
  for (int i = 0; i <= d; ++i) {
    entries.push_back({d, i, i, 1.0});
    if (i < d) entries.push_back({i, d, i, 1.0});
  }
  return from_structure(a.name + "#", d + 1, entries, Norm::unitized(a.norm), basis(d + 1, d));
}

BimoduleSpec unitize_module(const BimoduleSpec& x, const AlgebraSpec& a) {
  BimoduleSpec out = x;
  out.name = x.name + "#";
  out.left.push_back(Mat::Identity(x.dim, x.dim));
  out.right.push_back(Mat::Identity(x.dim, x.dim));
  validate(unitize(a), out);
  return out;
}

BimoduleSpec hom_module(const AlgebraSpec& a, const BimoduleSpec& x) {
  const int d = a.dim;
  const int m = x.dim;
  BimoduleSpec y{"B(" + a.name + "," + x.name + ")", m * d, {}, {}, Norm::lp(2.0)};
  for (int i = 0; i < d; ++i) {
    Mat l = Mat::Zero(m * d, m * d);
    Mat r = Mat::Zero(m * d, m * d);
    for (int j = 0; j < d; ++j) {
      l.block(j * m, j * m, m, m) = x.left[static_cast<std::size_t>(i)];
      for (int k = 0; k < d; ++k) {
        auto blk = r.block(j * m, k * m, m, m);
        blk += a.structure(i, j, k) * Mat::Identity(m, m);
        if (k == i) blk -= x.right[static_cast<std::size_t>(j)];
      }
    }
    y.left.push_back(std::move(l));
    y.right.push_back(std::move(r));
  }
  return y;
}

}  // namespace hyperref::findim
