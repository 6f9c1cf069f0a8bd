#include "hyperref/findim/norm.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hyperref::findim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

bool coordinate_family(NormKind k) { return k == NormKind::sup || k == NormKind::group_l1 || k == NormKind::grid_custom; }

double sign_or_one(double v) { return v < 0.0 ? -1.0 : 1.0; }
double sign_or_zero(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

double conjugate(double p) {
  if (p == 1.0) return kInf;
  if (p == kInf) return 1.0;
  return p / (p - 1.0);
}

double lp_value(const Vec& x, double p) {
  if (x.size() == 0) return 0.0;
  if (p == kInf) return x.cwiseAbs().maxCoeff();
  if (p == 1.0) return x.cwiseAbs().sum();
  if (p == 2.0) return x.norm();
  const double scale = x.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return scale * std::pow((x.cwiseAbs() / scale).array().pow(p).sum(), 1.0 / p);
}

// Maximizer of <g, a> over the l^p unit ball.
Vec lp_lmo(const Vec& g, double p) {
  Vec a = Vec::Zero(g.size());
  if (g.size() == 0) return a;
  if (p == kInf) {
    for (Eigen::Index i = 0; i < g.size(); ++i) a[i] = sign_or_one(g[i]);
    return a;
  }
  Eigen::Index best = 0;
  const double gmax = g.cwiseAbs().maxCoeff(&best);
  if (p == 1.0 || gmax == 0.0) {
    a[best] = sign_or_one(g[best]);
    return a;
  }
  const double q = conjugate(p);
  for (Eigen::Index i = 0; i < g.size(); ++i) a[i] = sign_or_zero(g[i]) * std::pow(std::abs(g[i]) / gmax, q - 1.0);
  return a / lp_value(a, p);
}

Vec lp_subgradient(const Vec& x, double p) {
  Vec y = Vec::Zero(x.size());
  if (x.size() == 0) return y;
  if (p == 1.0) {
    for (Eigen::Index i = 0; i < x.size(); ++i) y[i] = sign_or_zero(x[i]);
    return y;
  }
  Eigen::Index best = 0;
  const double xmax = x.cwiseAbs().maxCoeff(&best);
  if (xmax == 0.0) return y;
  if (p == kInf) {
    y[best] = sign_or_zero(x[best]);
    return y;
  }
  for (Eigen::Index i = 0; i < x.size(); ++i) y[i] = sign_or_zero(x[i]) * std::pow(std::abs(x[i]) / xmax, p - 1.0);
  return y / lp_value(y, conjugate(p));
}

std::vector<Vec> sign_vectors(int dim) {
  std::vector<Vec> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = (mask >> i & 1u) ? -1.0 : 1.0;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vec> signed_basis(int dim) {
  std::vector<Vec> out;
  for (int i = 0; i < dim; ++i)
    for (double s : {1.0, -1.0}) {
      Vec v = Vec::Zero(dim);
      v[i] = s;
      out.push_back(std::move(v));
    }
  return out;
}

std::size_t checked_pow(std::size_t base, int exp, std::size_t limit) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > limit / std::max<std::size_t>(base, 1)) return limit + 1;
    r *= base;
  }
  return r;
}

Vec flatten(const RowMajor& a) { return Eigen::Map<const Vec>(a.data(), a.size()); }

}  // namespace

Norm Norm::sup() {
  Norm n;
  n.kind_ = NormKind::sup;
  n.p_ = kInf;
  return n;
}

Norm Norm::l1() {
  Norm n;
  n.kind_ = NormKind::group_l1;
  n.p_ = 1.0;
  return n;
}

Norm Norm::lp(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("l^p norm needs p >= 1");
  Norm n;
  n.kind_ = NormKind::grid_custom;
  n.p_ = p;
  return n;
}

Norm Norm::matrix_op(int m, double p) {
  if (m < 1) throw std::invalid_argument("matrix size must be positive");
  if (p != 1.0 && p != 2.0 && p != kInf) throw std::invalid_argument("matrix operator norm supports p in {1, 2, inf}");
  Norm n;
  n.kind_ = NormKind::matrix_p;
  n.p_ = p;
  n.m_ = m;
  return n;
}

Norm Norm::unitized(const Norm& base) {
  Norm n;
  n.kind_ = NormKind::unitized;
  n.base_ = std::make_shared<const Norm>(base);
  return n;
}

const Norm& Norm::base() const {
  if (!base_) throw std::logic_error("norm has no base");
  return *base_;
}

bool Norm::is_euclidean() const { return coordinate_family(kind_) && p_ == 2.0; }

std::string Norm::describe() const {
  std::ostringstream s;
  switch (kind_) {
    case NormKind::sup: s << "sup"; break;
    case NormKind::group_l1: s << "group_l1"; break;
    case NormKind::grid_custom: s << "l^" << p_; break;
    case NormKind::matrix_p: s << "matrix_op(m=" << m_ << ",p=" << p_ << ")"; break;
    case NormKind::unitized: s << "unitized(" << base_->describe() << ")"; break;
  }
  return s.str();
}

double Norm::value(const Vec& x) const {
  if (coordinate_family(kind_)) return lp_value(x, p_);
  if (kind_ == NormKind::unitized) return base_->value(x.head(x.size() - 1)) + std::abs(x[x.size() - 1]);
  const RowMajor a = Eigen::Map<const RowMajor>(x.data(), m_, m_);
  if (p_ == 1.0) return a.cwiseAbs().colwise().sum().maxCoeff();
  if (p_ == kInf) return a.cwiseAbs().rowwise().sum().maxCoeff();
  return Eigen::JacobiSVD<Mat>(Mat(a)).singularValues()[0];
}

double Norm::dual_value(const Vec& g) const {
  if (coordinate_family(kind_)) return lp_value(g, conjugate(p_));
  if (kind_ == NormKind::unitized)
    return std::max(base_->dual_value(g.head(g.size() - 1)), std::abs(g[g.size() - 1]));
  const RowMajor a = Eigen::Map<const RowMajor>(g.data(), m_, m_);
  if (p_ == 1.0) return a.cwiseAbs().colwise().maxCoeff().sum();
  if (p_ == kInf) return a.cwiseAbs().rowwise().maxCoeff().sum();
  return Eigen::JacobiSVD<Mat>(Mat(a)).singularValues().sum();
}

Vec Norm::subgradient(const Vec& x) const {
  if (coordinate_family(kind_)) return lp_subgradient(x, p_);
  if (kind_ == NormKind::unitized) {
    Vec y(x.size());
    y.head(x.size() - 1) = base_->subgradient(x.head(x.size() - 1));
    y[x.size() - 1] = sign_or_zero(x[x.size() - 1]);
    return y;
  }
  const RowMajor a = Eigen::Map<const RowMajor>(x.data(), m_, m_);
  RowMajor y = RowMajor::Zero(m_, m_);
  if (a.isZero(0.0)) return flatten(y);
  if (p_ == 2.0) {
    Eigen::JacobiSVD<Mat> svd(Mat(a), Eigen::ComputeFullU | Eigen::ComputeFullV);
    y = svd.matrixU().col(0) * svd.matrixV().col(0).transpose();
  } else if (p_ == 1.0) {
    Eigen::Index j = 0;
    a.cwiseAbs().colwise().sum().maxCoeff(&j);
    for (int i = 0; i < m_; ++i) y(i, j) = sign_or_zero(a(i, j));
  } else {
    Eigen::Index i = 0;
    a.cwiseAbs().rowwise().sum().maxCoeff(&i);
    for (int j = 0; j < m_; ++j) y(i, j) = sign_or_zero(a(i, j));
  }
  return flatten(y);
}

Vec Norm::lmo(const Vec& g) const {
  if (coordinate_family(kind_)) return lp_lmo(g, p_);
  if (kind_ == NormKind::unitized) {
    const Eigen::Index d = g.size() - 1;
    Vec a = Vec::Zero(g.size());
    const Vec head = g.head(d);
    if (d > 0 && base_->dual_value(head) >= std::abs(g[d]))
      a.head(d) = base_->lmo(head);
    else
      a[d] = sign_or_one(g[d]);
    return a;
  }
  const RowMajor gm = Eigen::Map<const RowMajor>(g.data(), m_, m_);
  RowMajor a = RowMajor::Zero(m_, m_);
  if (p_ == 2.0) {
    Eigen::JacobiSVD<Mat> svd(Mat(gm), Eigen::ComputeFullU | Eigen::ComputeFullV);
    a = svd.matrixU() * svd.matrixV().transpose();
  } else if (p_ == 1.0) {
    for (int j = 0; j < m_; ++j) {
      Eigen::Index i = 0;
      gm.col(j).cwiseAbs().maxCoeff(&i);
      a(i, j) = sign_or_one(gm(i, j));
    }
  } else {
    for (int i = 0; i < m_; ++i) {
      Eigen::Index j = 0;
      gm.row(i).cwiseAbs().maxCoeff(&j);
      a(i, j) = sign_or_one(gm(i, j));
    }
  }
  return flatten(a);
}

std::optional<std::vector<Vec>> Norm::primal_vertices(int dim, std::size_t limit) const {
  if (coordinate_family(kind_)) {
    if (p_ == 1.0) return signed_basis(dim);
    if (p_ == kInf && checked_pow(2, dim, limit) <= limit) return sign_vectors(dim);
    return std::nullopt;
  }
  if (kind_ == NormKind::unitized) {
    auto base = base_->primal_vertices(dim - 1, limit);
    if (!base) return std::nullopt;
    std::vector<Vec> out;
    for (const auto& v : *base) {
      Vec w = Vec::Zero(dim);
      w.head(dim - 1) = v;
      out.push_back(std::move(w));
    }
    for (double s : {1.0, -1.0}) {
      Vec w = Vec::Zero(dim);
      w[dim - 1] = s;
      out.push_back(std::move(w));
    }
    return out;
  }
  if (p_ == 2.0 || checked_pow(2 * m_, m_, limit) > limit) return std::nullopt;
  // Operator 1-norm: every column is a signed basis vector; inf-norm: every row.
  const auto choices = signed_basis(m_);
  std::vector<Vec> out;
  std::vector<std::size_t> pick(m_, 0);
  while (true) {
    RowMajor a(m_, m_);
    for (int k = 0; k < m_; ++k) {
      if (p_ == 1.0)
        a.col(k) = choices[pick[k]];
      else
        a.row(k) = choices[pick[k]].transpose();
    }
    out.push_back(flatten(a));
    int k = 0;
    while (k < m_ && ++pick[k] == choices.size()) pick[k++] = 0;
    if (k == m_) break;
  }
  return out;
}

std::optional<std::vector<Vec>> Norm::dual_vertices(int dim, std::size_t limit) const {
  if (coordinate_family(kind_)) {
    if (p_ == kInf) return signed_basis(dim);
    if (p_ == 1.0 && checked_pow(2, dim, limit) <= limit) return sign_vectors(dim);
    return std::nullopt;
  }
  if (kind_ == NormKind::unitized) {
    auto base = base_->dual_vertices(dim - 1, limit);
    if (!base || 2 * base->size() > limit) return std::nullopt;
    std::vector<Vec> out;
    for (const auto& v : *base)
      for (double s : {1.0, -1.0}) {
        Vec w(dim);
        w.head(dim - 1) = v;
        w[dim - 1] = s;
        out.push_back(std::move(w));
      }
    return out;
  }
  if (p_ == 2.0 || static_cast<std::size_t>(m_) * checked_pow(2, m_, limit) > limit) return std::nullopt;
  std::vector<Vec> out;
  for (int k = 0; k < m_; ++k)
    for (const auto& s : sign_vectors(m_)) {
      RowMajor y = RowMajor::Zero(m_, m_);
      if (p_ == 1.0)
        y.col(k) = s;
      else
        y.row(k) = s.transpose();
      out.push_back(flatten(y));
    }
  return out;
}

double Norm::coordinate_bound(int) const { return 1.0; }

double Norm::euclidean_radius(int dim) const {
  if (coordinate_family(kind_)) {
    if (p_ <= 2.0) return 1.0;
    return std::pow(static_cast<double>(dim), 0.5 - (p_ == kInf ? 0.0 : 1.0 / p_));
  }
  if (kind_ == NormKind::unitized) return std::max(base_->euclidean_radius(dim - 1), 1.0);
  return std::sqrt(static_cast<double>(m_));
}

double Norm::euclidean_factor(int dim) const {
  if (coordinate_family(kind_)) {
    if (p_ >= 2.0) return 1.0;
    return std::pow(static_cast<double>(dim), 1.0 / p_ - 0.5);
  }
  if (kind_ == NormKind::unitized) return std::hypot(base_->euclidean_factor(dim - 1), 1.0);
  return p_ == 2.0 ? 1.0 : std::sqrt(static_cast<double>(m_));
}

}  // namespace hyperref::findim
