#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "hyperref/findim/algebra.hpp"

namespace hyperref::findim {

class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::int64_t int_pow(int base, int exp);

// T : A^n -> X. Column c of `tensor` is T(e_{i_1}, ..., e_{i_n}) with
// c = ((i_1 d + i_2) d + ...) d + i_n.
struct MultilinearMap {
  int degree = 0;
  int in_dim = 0;
  int out_dim = 0;
  Mat tensor;

  static MultilinearMap zero(int degree, int in_dim, int out_dim);
  static MultilinearMap random(int degree, int in_dim, int out_dim, std::mt19937_64& rng);

  Vec operator()(std::span<const Vec> args) const;
  // Matrix L with T(a_1, ..., x, ..., a_n) = L x, x in the given slot.
  Mat slot_matrix(std::span<const Vec> args, int slot) const;

  MultilinearMap& operator+=(const MultilinearMap& o);
  MultilinearMap& operator-=(const MultilinearMap& o);
  MultilinearMap& operator*=(double s);
};

MultilinearMap operator+(MultilinearMap a, const MultilinearMap& b);
MultilinearMap operator-(MultilinearMap a, const MultilinearMap& b);
MultilinearMap operator*(double s, MultilinearMap a);

// Contracts the first slot against a: out_dim x d^n  ->  out_dim x d^(n-1).
Mat contract_first(const Mat& tensor, const Vec& a);

// Orthonormal (Frobenius) basis of a subspace of maps with common shape.
struct SubspaceBasis {
  int degree = 0;
  int in_dim = 0;
  int out_dim = 0;
  Mat columns;  // each column a flattened tensor

  int size() const { return static_cast<int>(columns.cols()); }
  MultilinearMap element(int k) const;
  // Frobenius projection coefficients and distance.
  Vec project(const MultilinearMap& t) const;
  double frobenius_distance(const MultilinearMap& t) const;
};

Vec flatten(const MultilinearMap& t);
MultilinearMap unflatten(const Vec& v, int degree, int in_dim, int out_dim);

// Hochschild coboundary; degree 0 maps are elements of X.
MultilinearMap delta_n(const MultilinearMap& t, const AlgebraSpec& a, const BimoduleSpec& x);

struct StarPair {
  MultilinearMap left;   // a * T
  MultilinearMap right;  // T * a
};
// (a*T)(a_1..a_n) = a T(a_1..a_n);
// (T*a)(a_1..a_n) = T(a a_1, a_2..a_n) + sum_{j<n} (-1)^j T(a, a_1, .., a_j a_{j+1}, .., a_n)
//                   + (-1)^n T(a, a_1..a_{n-1}) a_n.
StarPair star_actions(const Vec& a, const MultilinearMap& t, const AlgebraSpec& alg, const BimoduleSpec& x);

// Lambda(T)(a_1..a_n)(a_{n+1}) = T(a_1..a_{n+1}); a reshape of the tensor.
MultilinearMap lambda_identify(const MultilinearMap& t);
// Max entrywise gap between Lambda(delta T) and Delta(Lambda T).
double lambda_check(const MultilinearMap& t, const AlgebraSpec& a, const BimoduleSpec& x);

MultilinearMap inner_derivation(const Vec& x_elem, const AlgebraSpec& a, const BimoduleSpec& x);

// Extension to the unitization that vanishes whenever an argument is the
// adjoined identity.
MultilinearMap sigma_extend(const MultilinearMap& t);

// Kernel of delta^n at singular-value threshold 1e-9 (relative to max(1, s_max)).
// Throws GuardExceeded when the coboundary matrix exceeds `guard` entries.
SubspaceBasis cocycle_space(const AlgebraSpec& a, const BimoduleSpec& x, int n, std::int64_t guard = 1'000'000);

// Maps L : X -> X with pi_i L = L pi_i for every given action matrix.
SubspaceBasis commutant(std::span<const Mat> action, int space_dim, std::int64_t guard = 1'000'000);

// Orthonormal basis of the null space of m (columns), same threshold.
Mat null_space(const Mat& m);

inline constexpr double kRankTol = 1e-9;

}  // namespace hyperref::findim
