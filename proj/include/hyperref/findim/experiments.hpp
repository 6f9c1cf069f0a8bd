#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperref/findim/distance.hpp"
#include "hyperref/findim/multilinear.hpp"

// Numerical probes of the hyperreflexivity statements on finite-dimensional
// inputs. Distances are one-sided: dist is an upper bound, dist_r a lower
// bound, so a ratio above a proven bound is "inconclusive", never a failure.
namespace hyperref::findim {

inline constexpr const char* kDistRDefinition =
    "dist_r(T,S) = sup over unit tuples (a_1..a_n) of inf_{S in S} ||T(a_1..a_n) - S(a_1..a_n)||";

enum class SampleStatus { within_bound, inconclusive, skipped };
const char* to_string(SampleStatus s);

struct RatioSample {
  std::size_t index = 0;
  double dist_upper = 0.0;
  double dist_r_lower = 0.0;
  double ratio = 0.0;  // +inf when dist_r_lower vanishes
  SampleStatus status = SampleStatus::skipped;
};

// One T against a subspace; `bound` is the theorem constant to compare with.
RatioSample ratio_sample(const MultilinearMap& t, const SubspaceBasis& s, const Norm& domain, const Norm& codomain,
                         double bound, std::uint64_t seed, const EstimatorOptions& opts = {});

struct RatioReport {
  double bound = 0.0;
  std::string bound_formula;
  int subspace_dim = 0;
  double max_ratio = 0.0;  // over conclusive samples
  std::size_t inconclusive = 0;
  std::size_t skipped = 0;
  std::vector<RatioSample> samples;
};

// Random Gaussian T in B^n(A, X) against Z^n(A, X), bound with M = local
// unit bound, C = 1 and the C*/group-algebra strong-(B) constant.
RatioReport hyperref_ratio(const AlgebraSpec& a, const BimoduleSpec& x, int n, std::size_t samples,
                           std::uint64_t seed, const EstimatorOptions& opts = {});

struct CocycleBoundReport {
  double gamma_lower = 0.0;
  double delta_norm_lower = 0.0;
  double bound_from_gamma = 0.0;  // 2^(n-1) r^(n+1) gamma_lower
  std::string status;             // "consistent" or "inconclusive"
  std::string note;
};

// Compares a lower estimate of ||delta^n T|| with the bound evaluated at a
// lower estimate of gamma (zero-product chains a_0 a_1 = ... = a_n a_{n+1} = 0).
CocycleBoundReport cocycle_bound_check(const MultilinearMap& t, const AlgebraSpec& a, const BimoduleSpec& x,
                                       double r, std::size_t budget, std::uint64_t seed);

// Max entry of sigma(T) over argument tuples containing the adjoined unit.
double vanish_on_unit(const MultilinearMap& extended);

struct Representation {
  AlgebraSpec algebra;     // l^1(G)
  std::vector<Mat> action;  // pi(delta_g): e_h -> e_{gh}
  Norm space_norm;          // l^p(G)
  int space_dim = 0;

  Mat apply(const Vec& a) const;  // pi(a)
};

Representation regular_representation(const FiniteGroup& g, double p);

struct CommutantReport {
  RatioReport ratios;
  std::size_t intermediate_checked = 0;
  std::size_t intermediate_violations = 0;
  double worst_intermediate_slack = 0.0;  // max of lhs - rhs (<= 0 when holding)
  std::string note;
};

// Random T on l^p(G) against the commutant of the regular representation,
// plus the pointwise inequality ||pi(a) T pi(b) x|| <= ||pi(a)|| dist(T pi(b)x)
// on zero-product pairs a b = 0 (abelian G only).
CommutantReport commutant_hyperref_check(const FiniteGroup& g, double p, std::size_t samples, std::uint64_t seed,
                                         const EstimatorOptions& opts = {});

struct LocalUnitBound {
  double value = 1.0;
  bool heuristic = false;
  Vec unit;
};

// ||1|| for unital algebras; otherwise the smallest-norm e with e a = a e = a
// on the basis (to 1e-6), flagged heuristic. Throws AlgebraError if none.
LocalUnitBound local_unit_bound(const AlgebraSpec& a);

}  // namespace hyperref::findim
