#include "hyperref/findim/zero_product.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "hyperref/findim/multilinear.hpp"
#include "hyperref/findim/polytope.hpp"
#include "hyperref/rng.hpp"

namespace hyperref::findim {

namespace {

constexpr double kZeroProductTol = 1e-12;
constexpr int kMaxBlocks = 16;

// Real invariant subspaces of L_w: one per real eigenvalue, one per
// conjugate pair. Empty when the eigenvalues are not well separated.
std::vector<Mat> eigen_blocks(const Mat& l) {
  Eigen::EigenSolver<Mat> es(l);
  if (es.info() != Eigen::Success) return {};
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  const Eigen::Index d = l.rows();
  const double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j)
      if (std::abs(vals[i] - vals[j]) < 1e-6 * scale) return {};

  std::vector<Mat> blocks;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double im = vals[i].imag();
    if (std::abs(im) <= 1e-9 * scale) {
      Mat b = vecs.col(i).real();
      b /= b.norm();
      blocks.push_back(std::move(b));
    } else if (im > 0.0) {
      Mat b(d, 2);
      b.col(0) = vecs.col(i).real();
      b.col(1) = vecs.col(i).imag();
      blocks.push_back(std::move(b));
    }
  }
  return blocks;
}

bool positive_leading(const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] > 1e-12) return true;
    if (v[i] < -1e-12) return false;
  }
  return false;
}

}  // namespace

ZeroProductStructure ZeroProductStructure::build(const AlgebraSpec& a, std::uint64_t seed, std::size_t budget) {
  if (a.norm.kind() != NormKind::sup && a.norm.kind() != NormKind::group_l1)
    throw AlgebraError("zero-product strata need a sup or group_l1 norm, got " + a.norm.describe());
  if (!a.is_commutative()) throw AlgebraError("zero-product strata need a commutative algebra");
  const int d = a.dim;

  std::vector<Mat> blocks;
  for (std::uint64_t attempt = 0; attempt < 8 && blocks.empty(); ++attempt) {
    auto rng = make_rng(seed, attempt);
    std::normal_distribution<double> normal;
    Vec w(d);
    for (int i = 0; i < d; ++i) w[i] = normal(rng);
    blocks = eigen_blocks(a.left_operator(w));
  }
  if (blocks.empty()) throw AlgebraError("no generic element separates the algebra; it is not semisimple");
  if (static_cast<int>(blocks.size()) > kMaxBlocks) throw GuardExceeded("too many minimal ideals to enumerate strata");

  // Each block must be an ideal: e_i * block stays inside it.
  for (const auto& b : blocks) {
    const Mat proj = b * b.completeOrthogonalDecomposition().pseudoInverse();
    for (int i = 0; i < d; ++i) {
      const Mat img = a.left_mult[static_cast<std::size_t>(i)] * b;
      if ((img - proj * img).norm() > 1e-8 * std::max(1.0, img.norm()))
        throw AlgebraError("eigenspaces of a generic element are not ideals; the algebra is not semisimple");
    }
  }

  ZeroProductStructure z;
  z.dim_ = d;
  z.blocks_ = static_cast<int>(blocks.size());
  const auto ball = a.norm.primal_vertices(d, budget);
  if (!ball) throw GuardExceeded("unit ball has too many vertices");

  const std::uint32_t masks = std::uint32_t{1} << z.blocks_;
  z.vertices_.resize(masks);
  z.bases_.resize(masks);
  for (std::uint32_t mask = 1; mask < masks; ++mask) {
    Mat span(d, 0);
    for (int k = 0; k < z.blocks_; ++k) {
      if (!((mask >> k) & 1U)) continue;
      const auto& b = blocks[static_cast<std::size_t>(k)];
      span.conservativeResize(Eigen::NoChange, span.cols() + b.cols());
      span.rightCols(b.cols()) = b;
    }
    Eigen::HouseholderQR<Mat> qr(span);
    const Mat q = qr.householderQ();
    z.bases_[mask] = q.leftCols(span.cols());
    const Mat constraints = q.rightCols(d - span.cols()).transpose();
    auto verts = section_vertices(*ball, constraints, budget);
    if (!verts) throw GuardExceeded("zero-product stratum polytope exceeds the enumeration budget");
    for (auto& v : *verts) {
      const double n = a.norm.value(v);
      if (n <= 0.0 || !positive_leading(v)) continue;
      Vec clean = v / n;
      for (auto& c : clean) c = std::abs(c) < 1e-13 ? 0.0 : c;
      z.vertices_[mask].push_back(std::move(clean));
    }
  }

  const std::uint32_t full = masks - 1;
  std::vector<Vec> cols;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    for (const auto& x : z.vertices_[mask])
      for (const auto& y : z.vertices_[full ^ mask]) {
        if (a.norm.value(a.multiply(x, y)) > kZeroProductTol) continue;
        z.pair_list_.emplace_back(x, y);
        Vec g(d * d);
        for (int j = 0; j < d; ++j) g.segment(j * d, d) = y[j] * x;
        cols.push_back(std::move(g));
      }
  }
  z.pairs_.resize(d * d, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) z.pairs_.col(static_cast<Eigen::Index>(c)) = cols[c];
  return z;
}

std::vector<std::pair<Vec, Vec>> zero_product_pairs(const AlgebraSpec& a, std::size_t budget, std::uint64_t seed) {
  const auto z = ZeroProductStructure::build(a, seed);
  auto pairs = z.pairs();
  if (pairs.size() > budget) pairs.resize(budget);
  return pairs;
}

AlphaEstimate alpha_of_phi(const Mat& phi, const ZeroProductStructure& z) {
  AlphaEstimate out;
  if (z.pair_matrix().cols() == 0) return out;
  const Vec vals = z.pair_matrix().transpose() * Eigen::Map<const Vec>(phi.data(), phi.size());
  Eigen::Index k = 0;
  out.value = vals.cwiseAbs().maxCoeff(&k);
  out.a = z.pairs()[static_cast<std::size_t>(k)].first;
  out.b = z.pairs()[static_cast<std::size_t>(k)].second;
  return out;
}

namespace {

struct Triple {
  Vec a, b, c;
};

// phi(ab, c) - phi(a, bc), phi(x, y) = x^T Phi y.
double defect(const AlgebraSpec& alg, const Mat& phi, const Triple& t) {
  return alg.multiply(t.a, t.b).dot(phi * t.c) - t.a.dot(phi * alg.multiply(t.b, t.c));
}

// Linear functional c -> defect, for fixed a, b.
Vec defect_in_c(const AlgebraSpec& alg, const Mat& phi, const Vec& a, const Vec& b) {
  return phi.transpose() * alg.multiply(a, b) - alg.left_operator(b).transpose() * (phi.transpose() * a);
}

// M with <Phi, M> = defect.
Mat defect_matrix(const AlgebraSpec& alg, const Triple& t) {
  return alg.multiply(t.a, t.b) * t.c.transpose() - t.a * alg.multiply(t.b, t.c).transpose();
}

// Best triple for a fixed form: exhaustive over vertex pairs (a, b), c from the
// dual norm.
Triple best_triple(const AlgebraSpec& alg, const Mat& phi, const std::vector<Vec>& ball) {
  Triple best{ball.front(), ball.front(), ball.front()};
  double value = -1.0;
  for (const auto& a : ball)
    for (const auto& b : ball) {
      const Vec u = defect_in_c(alg, phi, a, b);
      const double v = alg.norm.dual_value(u);
      if (v > value) {
        value = v;
        best = {a, b, alg.norm.lmo(u)};
      }
    }
  return best;
}

// Ascent of <m, x> / alpha(x) over coordinates x of the span of zero-product
// pair matrices, alpha(x) = max |H x|.
Vec form_step(const Vec& m, const Mat& h, Vec x) {
  auto alpha = [&](const Vec& v, Eigen::Index* k) {
    const Vec hv = h * v;
    Eigen::Index arg = 0;
    const double a = hv.cwiseAbs().maxCoeff(&arg);
    if (k) *k = arg;
    return a;
  };
  auto ratio = [&](const Vec& v) {
    const double a = alpha(v, nullptr);
    return a > 0.0 ? std::abs(m.dot(v)) / a : 0.0;
  };
  if (m.dot(x) < 0.0) x = -x;
  {
    const double a = alpha(x, nullptr);
    if (a <= 0.0) return x;
    x /= a;
  }
  double best = ratio(x);
  Vec best_x = x;
  double step = 0.5;
  int stall = 0;
  for (int it = 0; it < 300 && step > 1e-9; ++it) {
    Eigen::Index k = 0;
    const double a = alpha(x, &k);
    if (a <= 0.0) break;
    const double num = m.dot(x);
    const double s = (h.row(k).dot(x) >= 0.0) ? 1.0 : -1.0;
    const Vec g = m / a - (num / (a * a)) * s * h.row(k).transpose();
    const double gn = g.norm();
    if (gn == 0.0) break;
    x += (step * x.norm() / gn) * g;
    x /= alpha(x, nullptr);
    const double r = ratio(x);
    if (r > best * (1.0 + 1e-12)) {
      best = r;
      best_x = x;
      stall = 0;
    } else if (++stall >= 6) {
      step *= 0.5;
      x = best_x;
      stall = 0;
    }
  }
  return best_x;
}

}  // namespace

StrongBEstimate strong_b_estimate(const AlgebraSpec& alg, std::size_t budget, std::uint64_t seed, int restarts) {
  StrongBEstimate out;
  const int d = alg.dim;
  out.phi = Mat::Zero(d, d);
  const auto z = ZeroProductStructure::build(alg, seed, std::max<std::size_t>(budget, 1));
  if (z.pair_matrix().cols() == 0) return out;

  const auto ball = alg.norm.primal_vertices(d, budget);
  if (!ball || ball->size() * ball->size() > budget) throw GuardExceeded("unit ball too large for the triple step");

  // Forms vanishing on every zero-product pair contribute nothing; work in
  // the span of the pair matrices.
  Eigen::JacobiSVD<Mat> svd(z.pair_matrix(), Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] > kRankTol * std::max(1.0, sv[0])) ++rank;
  const Mat basis = svd.matrixU().leftCols(rank);
  const Mat h = z.pair_matrix().transpose() * basis;

  auto to_phi = [&](const Vec& x) {
    const Vec flat = basis * x;
    return Mat(Eigen::Map<const Mat>(flat.data(), d, d));
  };
  auto coords = [&](const Mat& m) { return Vec(basis.transpose() * Eigen::Map<const Vec>(m.data(), m.size())); };

  std::normal_distribution<double> normal;
  for (int r = 0; r < std::max(1, restarts); ++r) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(r) + 1);
    std::uniform_int_distribution<std::size_t> pick(0, ball->size() - 1);
    Triple t{(*ball)[pick(rng)], (*ball)[pick(rng)], (*ball)[pick(rng)]};
    Vec x(rank);
    if (r == 0) {
      x = coords(defect_matrix(alg, t));
    } else {
      for (Eigen::Index i = 0; i < rank; ++i) x[i] = normal(rng);
    }
    double value = 0.0;
    for (int round = 0; round < 40; ++round) {
      x = form_step(coords(defect_matrix(alg, t)), h, x);
      Mat phi = to_phi(x);
      t = best_triple(alg, phi, *ball);
      const double alpha = alpha_of_phi(phi, z).value;
      if (alpha <= 0.0) break;
      const double v = std::abs(defect(alg, phi, t)) / alpha;
      if (v > out.value) {
        out.value = v;
        out.phi = phi / alpha;
        out.alpha = 1.0;
        out.a = t.a;
        out.b = t.b;
        out.c = t.c;
      }
      if (v <= value * (1.0 + 1e-8)) break;
      value = v;
    }
  }
  return out;
}

}  // namespace hyperref::findim
