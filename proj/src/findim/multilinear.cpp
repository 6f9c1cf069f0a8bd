#include "hyperref/findim/multilinear.hpp"

#include <algorithm>

#include "hyperref/kernels.hpp"

namespace hyperref::findim {

namespace {

void require_shape(const MultilinearMap& t, const AlgebraSpec& a, const BimoduleSpec& x) {
  if (t.in_dim != a.dim || t.out_dim != x.dim || t.tensor.rows() != x.dim || t.tensor.cols() != int_pow(a.dim, t.degree))
    throw std::invalid_argument("multilinear map shape does not match (A, X)");
  if (static_cast<int>(x.left.size()) != a.dim) throw std::invalid_argument("bimodule does not match the algebra");
}

// Contracts the last slot: out x d^r -> out x d^(r-1).
Mat contract_last(const Mat& m, const Vec& a) {
  const auto d = a.size();
  const auto cols = m.cols() / d;
  Mat out(m.rows(), cols);
  for (Eigen::Index q = 0; q < cols; ++q) out.col(q) = m.middleCols(q * d, d) * a;
  return out;
}

Vec unit_vector(int dim, int i) {
  Vec e = Vec::Zero(dim);
  e[i] = 1.0;
  return e;
}

}  // namespace

std::int64_t int_pow(int base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

MultilinearMap MultilinearMap::zero(int degree, int in_dim, int out_dim) {
  return {degree, in_dim, out_dim, Mat::Zero(out_dim, int_pow(in_dim, degree))};
}

MultilinearMap MultilinearMap::random(int degree, int in_dim, int out_dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  auto t = zero(degree, in_dim, out_dim);
  for (Eigen::Index c = 0; c < t.tensor.cols(); ++c)
    for (Eigen::Index r = 0; r < t.tensor.rows(); ++r) t.tensor(r, c) = normal(rng);
  return t;
}

Mat contract_first(const Mat& tensor, const Vec& a) {
  const auto d = a.size();
  const auto cols = tensor.cols() / d;
  Mat out = Mat::Zero(tensor.rows(), cols);
  for (Eigen::Index i = 0; i < d; ++i)
    if (a[i] != 0.0) out += a[i] * tensor.middleCols(i * cols, cols);
  return out;
}

Vec MultilinearMap::operator()(std::span<const Vec> args) const {
  if (static_cast<int>(args.size()) != degree) throw std::invalid_argument("wrong number of arguments");
  if (degree == 0) return tensor.col(0);
  Mat m = tensor;
  for (const auto& a : args) m = contract_first(m, a);
  return m.col(0);
}

Mat MultilinearMap::slot_matrix(std::span<const Vec> args, int slot) const {
  Mat m = tensor;
  for (int k = 0; k < slot; ++k) m = contract_first(m, args[static_cast<std::size_t>(k)]);
  for (int k = degree - 1; k > slot; --k) m = contract_last(m, args[static_cast<std::size_t>(k)]);
  return m;
}

MultilinearMap& MultilinearMap::operator+=(const MultilinearMap& o) {
  tensor += o.tensor;
  return *this;
}
MultilinearMap& MultilinearMap::operator-=(const MultilinearMap& o) {
  tensor -= o.tensor;
  return *this;
}
MultilinearMap& MultilinearMap::operator*=(double s) {
  tensor *= s;
  return *this;
}
MultilinearMap operator+(MultilinearMap a, const MultilinearMap& b) { return a += b; }
MultilinearMap operator-(MultilinearMap a, const MultilinearMap& b) { return a -= b; }
MultilinearMap operator*(double s, MultilinearMap a) { return a *= s; }

Vec flatten(const MultilinearMap& t) { return Eigen::Map<const Vec>(t.tensor.data(), t.tensor.size()); }

MultilinearMap unflatten(const Vec& v, int degree, int in_dim, int out_dim) {
  return {degree, in_dim, out_dim, Eigen::Map<const Mat>(v.data(), out_dim, int_pow(in_dim, degree))};
}

MultilinearMap SubspaceBasis::element(int k) const { return unflatten(columns.col(k), degree, in_dim, out_dim); }

Vec SubspaceBasis::project(const MultilinearMap& t) const { return columns.transpose() * flatten(t); }

double SubspaceBasis::frobenius_distance(const MultilinearMap& t) const {
  const Vec v = flatten(t);
  return (v - columns * (columns.transpose() * v)).norm();
}

MultilinearMap delta_n(const MultilinearMap& t, const AlgebraSpec& a, const BimoduleSpec& x) {
  require_shape(t, a, x);
  const kernels::CoboundaryOperands ops{t.degree, a.left_mult, x.left, x.right};
  return {t.degree + 1, a.dim, x.dim, kernels::parallel::apply_coboundary(ops, t.tensor)};
}

StarPair star_actions(const Vec& a, const MultilinearMap& t, const AlgebraSpec& alg, const BimoduleSpec& x) {
  require_shape(t, alg, x);
  if (t.degree < 1) throw std::invalid_argument("star actions need degree >= 1");
  if (a.size() != alg.dim) throw std::invalid_argument("algebra element has the wrong dimension");
  const int n = t.degree;
  const int d = alg.dim;

  MultilinearMap left = t;
  left.tensor = x.left_operator(a) * t.tensor;

  MultilinearMap right = MultilinearMap::zero(n, d, x.dim);
  std::vector<int> idx(n, 0);
  for (Eigen::Index c = 0; c < right.tensor.cols(); ++c) {
    std::vector<Vec> e;
    for (int k = 0; k < n; ++k) e.push_back(unit_vector(d, idx[k]));

    std::vector<Vec> args = e;
    args[0] = alg.multiply(a, e[0]);
    Vec col = t(args);
    for (int j = 1; j < n; ++j) {
      std::vector<Vec> merged{a};
      for (int k = 0; k < n; ++k) {
        if (k == j - 1) {
          merged.push_back(alg.multiply(e[k], e[k + 1]));
          ++k;
        } else {
          merged.push_back(e[k]);
        }
      }
      col += ((j % 2) ? -1.0 : 1.0) * t(merged);
    }
    std::vector<Vec> head{a};
    head.insert(head.end(), e.begin(), e.end() - 1);
    col += ((n % 2) ? -1.0 : 1.0) * (x.right[static_cast<std::size_t>(idx[n - 1])] * t(head));
    right.tensor.col(c) = col;

    for (int k = n - 1; k >= 0; --k) {
      if (++idx[k] < d) break;
      idx[k] = 0;
    }
  }
  return {std::move(left), std::move(right)};
}

MultilinearMap lambda_identify(const MultilinearMap& t) {
  if (t.degree < 1) throw std::invalid_argument("identification needs degree >= 1");
  const int d = t.in_dim;
  // Column-major storage makes the identification a pure reshape.
  return {t.degree - 1, d, t.out_dim * d,
          Eigen::Map<const Mat>(t.tensor.data(), t.out_dim * d, t.tensor.cols() / d)};
}

double lambda_check(const MultilinearMap& t, const AlgebraSpec& a, const BimoduleSpec& x) {
  const auto y = hom_module(a, x);
  const auto lhs = lambda_identify(delta_n(t, a, x));
  const auto rhs = delta_n(lambda_identify(t), a, y);
  return (lhs.tensor - rhs.tensor).cwiseAbs().maxCoeff();
}

MultilinearMap inner_derivation(const Vec& x_elem, const AlgebraSpec& a, const BimoduleSpec& x) {
  if (x_elem.size() != x.dim) throw std::invalid_argument("module element has the wrong dimension");
  return delta_n({0, a.dim, x.dim, x_elem}, a, x);
}

MultilinearMap sigma_extend(const MultilinearMap& t) {
  const int d = t.in_dim;
  auto out = MultilinearMap::zero(t.degree, d + 1, t.out_dim);
  std::vector<int> idx(t.degree, 0);
  for (Eigen::Index c = 0; c < out.tensor.cols(); ++c) {
    if (std::none_of(idx.begin(), idx.end(), [d](int i) { return i == d; })) {
      std::int64_t src = 0;
      for (int i : idx) src = src * d + i;
      out.tensor.col(c) = t.tensor.col(src);
    }
    for (int k = t.degree - 1; k >= 0; --k) {
      if (++idx[k] < d + 1) break;
      idx[k] = 0;
    }
  }
  return out;
}

Mat null_space(const Mat& m) {
  if (m.cols() == 0) return Mat(0, 0);
  if (m.rows() == 0) return Mat::Identity(m.cols(), m.cols());
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double tol = kRankTol * std::max(1.0, s.size() ? s[0] : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s[rank] > tol) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

SubspaceBasis cocycle_space(const AlgebraSpec& a, const BimoduleSpec& x, int n, std::int64_t guard) {
  if (n < 0) throw std::invalid_argument("degree must be nonnegative");
  const std::int64_t cols = x.dim * int_pow(a.dim, n);
  const std::int64_t rows = x.dim * int_pow(a.dim, n + 1);
  if (rows * cols > guard)
    throw GuardExceeded("coboundary matrix has " + std::to_string(rows * cols) + " entries (guard " +
                        std::to_string(guard) + ")");
  Mat d(rows, cols);
  for (std::int64_t c = 0; c < cols; ++c) {
    Vec e = Vec::Zero(cols);
    e[c] = 1.0;
    d.col(c) = flatten(delta_n(unflatten(e, n, a.dim, x.dim), a, x));
  }
  return {n, a.dim, x.dim, null_space(d)};
}

SubspaceBasis commutant(std::span<const Mat> action, int space_dim, std::int64_t guard) {
  const int m = space_dim;
  const std::int64_t unknowns = static_cast<std::int64_t>(m) * m;
  const std::int64_t rows = unknowns * static_cast<std::int64_t>(action.size());
  if (rows * unknowns > guard) throw GuardExceeded("commutant system exceeds the size guard");
  // vec(P L - L P) = (I (x) P - P^T (x) I) vec(L), column-major vec.
  Mat sys = Mat::Zero(rows, unknowns);
  for (std::size_t i = 0; i < action.size(); ++i) {
    const Mat& p = action[i];
    if (p.rows() != m || p.cols() != m) throw std::invalid_argument("action matrix has the wrong shape");
    auto blk = sys.middleRows(static_cast<Eigen::Index>(i) * unknowns, unknowns);
    for (int b = 0; b < m; ++b)
      for (int a = 0; a < m; ++a) {
        blk.block(b * m, b * m, m, m).col(a) += p.col(a);  // I (x) P
        blk.block(b * m, a * m, m, m).diagonal().array() -= p(a, b);  // P^T (x) I
      }
  }
  return {1, m, m, null_space(sys)};
}

}  // namespace hyperref::findim
