#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

// Data-parallel inner loops. Each kernel has a serial reference written
// independently of the OpenMP version; tests compare the two.
namespace hyperref::kernels {

using Complex = std::complex<double>;

struct Term {
  std::int64_t frequency = 0;
  Complex coefficient{};
};

// Grid abscissae s_j = -pi + 2 pi j / grid.
double grid_point(std::int64_t j, std::int64_t grid);

// Everything the coboundary needs about A and X, in basis form.
//   products[i](k, j)  coefficient of e_k in e_i e_j
//   left[i]            matrix of x -> e_i x
//   right[i]           matrix of x -> x e_i
struct CoboundaryOperands {
  int degree = 0;  // degree n of the input map
  std::span<const Eigen::MatrixXd> products;
  std::span<const Eigen::MatrixXd> left;
  std::span<const Eigen::MatrixXd> right;
};

namespace serial {

// Direct summation, O(grid * terms).
std::vector<Complex> evaluate_on_grid(std::span<const Term> terms, std::int64_t grid);

// Evaluates the coboundary formula on basis tuples with explicit vectors.
Eigen::MatrixXd apply_coboundary(const CoboundaryOperands& ops, const Eigen::MatrixXd& tensor);

}  // namespace serial

namespace parallel {

// Folds frequencies modulo the grid size, then a direct DFT: O(terms + grid^2).
std::vector<Complex> evaluate_on_grid(std::span<const Term> terms, std::int64_t grid);

// Index arithmetic on the flattened tensor, one output column per iteration.
Eigen::MatrixXd apply_coboundary(const CoboundaryOperands& ops, const Eigen::MatrixXd& tensor);

}  // namespace parallel

}  // namespace hyperref::kernels
