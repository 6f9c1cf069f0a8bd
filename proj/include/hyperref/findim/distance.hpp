#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperref/findim/multilinear.hpp"

// Norm and distance oracles for multilinear maps between normed spaces.
// Upper and lower bounds are kept separate; every returned upper bound is
// attained by an explicit certificate and every lower bound by an explicit
// argument tuple.
namespace hyperref::findim {

struct EstimatorOptions {
  int restarts = 32;
  double rel_tol = 1e-8;
  int max_sweeps = 200;
  std::size_t tuple_budget = 1u << 12;  // exhaustive vertex / candidate tuples
  int descent_iterations = 400;
  std::size_t random_candidates = 48;
  int refine_steps = 24;
};

struct NormEstimate {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
};

struct AscentResult {
  double value = 0.0;
  std::vector<Vec> args;
};

// Alternating linear-minimization ascent over unit tuples; a lower bound.
AscentResult op_norm_ascent(const MultilinearMap& t, const Norm& domain, const Norm& codomain, std::uint64_t seed,
                            const EstimatorOptions& opts = {});

// sum over basis tuples of ||T(e_idx)|| times the coordinate bound^n.
double op_norm_crude_upper(const MultilinearMap& t, const Norm& domain, const Norm& codomain);

// Exact when the domain ball is a polytope small enough to enumerate, or for
// Euclidean-to-Euclidean linear maps; otherwise an ascent/upper-bound pair.
NormEstimate op_norm(const MultilinearMap& t, const Norm& domain, const Norm& codomain, std::uint64_t seed = 0,
                     const EstimatorOptions& opts = {});

struct DistanceBracket {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;
};

// inf over lambda of ||b - W lambda||. Exact for Euclidean norms and for
// norms with an enumerable polyhedral dual ball (dual vertices of the section
// by range(W)^perp); a primal/dual subgradient bracket otherwise.
DistanceBracket least_distance(const Vec& b, const Mat& w, const Norm& norm);

struct DistUpperResult {
  double value = 0.0;
  Vec coefficients;  // in the orthonormal basis of S
  std::string surrogate;
};

// Upper bound on inf_{S in span} ||T - S|| by descent on a convex upper
// surrogate of the operator norm.
DistUpperResult dist_upper(const MultilinearMap& t, const SubspaceBasis& s, const Norm& domain, const Norm& codomain,
                           const EstimatorOptions& opts = {});

struct DistRResult {
  double value = 0.0;
  std::vector<Vec> argmax;
};

// Lower bound on sup over unit tuples of inf_{S in span} ||T(a) - S(a)||.
DistRResult dist_r_lower(const MultilinearMap& t, const SubspaceBasis& s, const Norm& domain, const Norm& codomain,
                         std::uint64_t seed, const EstimatorOptions& opts = {});

// Certified bracket on the pointwise distance at one tuple.
DistanceBracket pointwise_distance(const MultilinearMap& t, const SubspaceBasis& s, std::span<const Vec> args,
                                   const Norm& codomain);

// kron(a_1, ..., a_n) with a_1 most significant.
Vec tuple_kron(std::span<const Vec> args);

}  // namespace hyperref::findim
