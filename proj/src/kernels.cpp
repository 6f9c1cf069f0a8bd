#include "hyperref/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hyperref::kernels {

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void check_operands(const CoboundaryOperands& ops, const Eigen::MatrixXd& tensor) {
  const auto d = static_cast<std::int64_t>(ops.products.size());
  if (d == 0 || ops.left.size() != ops.products.size() || ops.right.size() != ops.products.size())
    throw std::invalid_argument("coboundary: operand sizes disagree");
  if (tensor.cols() != ipow(d, ops.degree) || tensor.rows() != ops.left[0].rows())
    throw std::invalid_argument("coboundary: tensor shape does not match operands");
}

// Full contraction of a flattened tensor against explicit argument vectors.
Eigen::VectorXd contract(const Eigen::MatrixXd& tensor, const std::vector<Eigen::VectorXd>& args, int d) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(tensor.rows());
  const auto n = static_cast<int>(args.size());
  std::vector<int> idx(n, 0);
  for (Eigen::Index c = 0; c < tensor.cols(); ++c) {
    double w = 1.0;
    for (int k = 0; k < n && w != 0.0; ++k) w *= args[k][idx[k]];
    if (w != 0.0) out += w * tensor.col(c);
    for (int k = n - 1; k >= 0; --k) {
      if (++idx[k] < d) break;
      idx[k] = 0;
    }
  }
  return out;
}

}  // namespace

double grid_point(std::int64_t j, std::int64_t grid) {
  return -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid);
}

namespace serial {

std::vector<Complex> evaluate_on_grid(std::span<const Term> terms, std::int64_t grid) {
  if (grid < 1) throw std::invalid_argument("grid must be positive");
  std::vector<Complex> out(static_cast<std::size_t>(grid));
  for (std::int64_t j = 0; j < grid; ++j) {
    const double s = grid_point(j, grid);
    Complex acc{};
    for (const auto& t : terms) acc += t.coefficient * std::polar(1.0, static_cast<double>(t.frequency) * s);
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

Eigen::MatrixXd apply_coboundary(const CoboundaryOperands& ops, const Eigen::MatrixXd& tensor) {
  check_operands(ops, tensor);
  const int d = static_cast<int>(ops.products.size());
  const int n = ops.degree;
  const Eigen::Index m = tensor.rows();
  Eigen::MatrixXd out(m, ipow(d, n + 1));

  std::vector<int> idx(n + 1, 0);
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    std::vector<Eigen::VectorXd> a(n + 1, Eigen::VectorXd::Zero(d));
    for (int k = 0; k <= n; ++k) a[k][idx[k]] = 1.0;

    std::vector<Eigen::VectorXd> tail(a.begin() + 1, a.end());
    Eigen::VectorXd col = ops.left[idx[0]] * contract(tensor, tail, d);
    for (int j = 1; j <= n; ++j) {
      std::vector<Eigen::VectorXd> args;
      for (int k = 0; k < j - 1; ++k) args.push_back(a[k]);
      args.push_back(ops.products[idx[j - 1]] * a[j]);
      for (int k = j + 1; k <= n; ++k) args.push_back(a[k]);
      col += ((j % 2) ? -1.0 : 1.0) * contract(tensor, args, d);
    }
    std::vector<Eigen::VectorXd> head(a.begin(), a.end() - 1);
    col += (((n + 1) % 2) ? -1.0 : 1.0) * (ops.right[idx[n]] * contract(tensor, head, d));
    out.col(c) = col;

    for (int k = n; k >= 0; --k) {
      if (++idx[k] < d) break;
      idx[k] = 0;
    }
  }
  return out;
}

}  // namespace serial

namespace parallel {

std::vector<Complex> evaluate_on_grid(std::span<const Term> terms, std::int64_t grid) {
  if (grid < 1) throw std::invalid_argument("grid must be positive");
  const auto g = static_cast<std::size_t>(grid);

  // e^{i n s_j} = (-1)^n w^{n j} with w = e^{2 pi i / grid}.
  std::vector<Complex> folded(g);
  for (const auto& t : terms) {
    const auto r = static_cast<std::size_t>(((t.frequency % grid) + grid) % grid);
    folded[r] += (t.frequency % 2 == 0) ? t.coefficient : -t.coefficient;
  }
  std::vector<Complex> twiddle(g);
  for (std::size_t t = 0; t < g; ++t)
    twiddle[t] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(grid));

  std::vector<std::size_t> active;
  for (std::size_t r = 0; r < g; ++r)
    if (folded[r] != Complex{}) active.push_back(r);

  std::vector<Complex> out(g);
  const auto count = static_cast<std::int64_t>(g);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < count; ++j) {
    Complex acc{};
    const auto uj = static_cast<std::size_t>(j);
    for (const auto r : active) acc += folded[r] * twiddle[(r * uj) % g];
    out[uj] = acc;
  }
  return out;
}

Eigen::MatrixXd apply_coboundary(const CoboundaryOperands& ops, const Eigen::MatrixXd& tensor) {
  check_operands(ops, tensor);
  const int d = static_cast<int>(ops.products.size());
  const int n = ops.degree;
  const Eigen::Index m = tensor.rows();
  const std::int64_t in_cols = ipow(d, n);
  const std::int64_t out_cols = in_cols * d;
  std::vector<std::int64_t> stride(n + 2, 1);  // stride[s] = d^s
  for (int s = 1; s <= n + 1; ++s) stride[s] = stride[s - 1] * d;

  Eigen::MatrixXd out(m, out_cols);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < out_cols; ++c) {
    std::vector<int> idx(n + 1);
    for (int k = n, rem = 0; k >= 0; --k, ++rem) idx[k] = static_cast<int>((c / stride[rem]) % d);

    Eigen::VectorXd col = ops.left[idx[0]] * tensor.col(c % in_cols);
    for (int j = 1; j <= n; ++j) {
      // Input multi-index (idx[0..j-2], k, idx[j+1..n]); k sits at position j-1.
      const std::int64_t prefix = c / stride[n + 2 - j];
      const std::int64_t suffix = c % stride[n - j];
      const double sign = (j % 2) ? -1.0 : 1.0;
      const auto& prod = ops.products[idx[j - 1]];
      for (int k = 0; k < d; ++k) {
        const double w = prod(k, idx[j]);
        if (w == 0.0) continue;
        col += (sign * w) * tensor.col((prefix * d + k) * stride[n - j] + suffix);
      }
    }
    col += (((n + 1) % 2) ? -1.0 : 1.0) * (ops.right[idx[n]] * tensor.col(c / d));
    out.col(c) = col;
  }
  return out;
}

}  // namespace parallel

}  // namespace hyperref::kernels
