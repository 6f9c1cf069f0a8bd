#include "hyperref/findim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperref/constants.hpp"
#include "hyperref/findim/zero_product.hpp"
#include "hyperref/rng.hpp"

namespace hyperref::findim {

namespace {

constexpr double kSkipUpper = 1e-6;
constexpr double kVanishingLower = 1e-9;

RatioReport run_ratios(const std::vector<MultilinearMap>& maps, const SubspaceBasis& s, const Norm& domain,
                       const Norm& codomain, double bound, std::uint64_t seed, const EstimatorOptions& opts) {
  RatioReport report;
  report.bound = bound;
  report.subspace_dim = s.size();
  report.samples.resize(maps.size());
  const auto count = static_cast<std::int64_t>(maps.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    report.samples[k] = ratio_sample(maps[k], s, domain, codomain, bound, derive_seed(seed, k), opts);
    report.samples[k].index = k;
  }
  for (const auto& r : report.samples) {
    if (r.status == SampleStatus::skipped) ++report.skipped;
    if (r.status == SampleStatus::inconclusive) ++report.inconclusive;
    if (r.status == SampleStatus::within_bound) report.max_ratio = std::max(report.max_ratio, r.ratio);
  }
  return report;
}

std::vector<MultilinearMap> random_maps(int degree, int in_dim, int out_dim, std::size_t samples, std::uint64_t seed) {
  std::vector<MultilinearMap> maps;
  maps.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    auto rng = make_rng(seed, i);
    maps.push_back(MultilinearMap::random(degree, in_dim, out_dim, rng));
  }
  return maps;
}

// Nonempty block sets S_1..S_n with consecutive ones disjoint and proper ends.
void chain_masks(int n, std::uint32_t full, std::size_t budget, std::vector<std::vector<std::uint32_t>>& out) {
  std::vector<std::uint32_t> cur(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int pos) -> void {
    if (out.size() >= budget) return;
    if (pos == n) {
      if (cur.front() != full && cur.back() != full) out.push_back(cur);
      return;
    }
    for (std::uint32_t m = 1; m <= full; ++m) {
      if (pos > 0 && (m & cur[static_cast<std::size_t>(pos - 1)])) continue;
      cur[static_cast<std::size_t>(pos)] = m;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
}

}  // namespace

const char* to_string(SampleStatus s) {
  switch (s) {
    case SampleStatus::within_bound: return "within_bound";
    case SampleStatus::inconclusive: return "inconclusive";
    case SampleStatus::skipped: return "skipped";
  }
  return "?";
}

RatioSample ratio_sample(const MultilinearMap& t, const SubspaceBasis& s, const Norm& domain, const Norm& codomain,
                         double bound, std::uint64_t seed, const EstimatorOptions& opts) {
  RatioSample r;
  r.dist_upper = dist_upper(t, s, domain, codomain, opts).value;
  r.dist_r_lower = dist_r_lower(t, s, domain, codomain, seed, opts).value;
  if (r.dist_upper <= kSkipUpper) {
    r.status = SampleStatus::skipped;
  } else if (r.dist_r_lower < kVanishingLower) {
    r.ratio = std::numeric_limits<double>::infinity();
    r.status = SampleStatus::inconclusive;
  } else {
    r.ratio = r.dist_upper / r.dist_r_lower;
    r.status = r.ratio <= bound ? SampleStatus::within_bound : SampleStatus::inconclusive;
  }
  return r;
}

RatioReport hyperref_ratio(const AlgebraSpec& a, const BimoduleSpec& x, int n, std::size_t samples,
                           std::uint64_t seed, const EstimatorOptions& opts) {
  const auto z = cocycle_space(a, x, n);
  const double m = local_unit_bound(a).value;
  const auto bound = constants::hyperref_bound(n, m, constants::cstar_group_constant().value, 1.0);
  auto report = run_ratios(random_maps(n, a.dim, x.dim, samples, seed), z, a.norm, x.norm, bound.value, seed, opts);
  report.bound_formula = bound.formula;
  return report;
}

CocycleBoundReport cocycle_bound_check(const MultilinearMap& t, const AlgebraSpec& a, const BimoduleSpec& x,
                                       double r, std::size_t budget, std::uint64_t seed) {
  if (!a.unit) throw AlgebraError("cocycle bound check needs a unital algebra");
  const int n = t.degree;
  if (n < 1) throw std::invalid_argument("cocycle bound check needs degree >= 1");
  const auto z = ZeroProductStructure::build(a, seed);
  const std::uint32_t full = z.full_mask();

  std::vector<std::vector<std::uint32_t>> chains;
  chain_masks(n, full, std::max<std::size_t>(budget, 1), chains);

  auto value_of = [&](const std::vector<Vec>& args) {
    const std::vector<Vec> inner(args.begin() + 1, args.end() - 1);
    return x.norm.value(x.left_operator(args.front()) * (x.right_operator(args.back()) * t(inner)));
  };

  CocycleBoundReport report;
  auto rng = make_rng(seed, 0);
  for (const auto& chain : chains) {
    std::vector<const std::vector<Vec>*> pools;
    pools.push_back(&z.vertices(full ^ chain.front()));
    for (auto m : chain) pools.push_back(&z.vertices(m));
    pools.push_back(&z.vertices(full ^ chain.back()));
    if (std::any_of(pools.begin(), pools.end(), [](auto* p) { return p->empty(); })) continue;

    for (int start = 0; start < 4; ++start) {
      std::vector<Vec> args;
      for (auto* p : pools) {
        std::uniform_int_distribution<std::size_t> pick(0, p->size() - 1);
        args.push_back(start == 0 ? p->front() : (*p)[pick(rng)]);
      }
      double value = value_of(args);
      for (int sweep = 0; sweep < 20; ++sweep) {
        bool improved = false;
        for (std::size_t slot = 0; slot < pools.size(); ++slot)
          for (const auto& v : *pools[slot]) {
            auto trial = args;
            trial[slot] = v;
            const double tv = value_of(trial);
            if (tv > value * (1.0 + 1e-12)) {
              value = tv;
              args = std::move(trial);
              improved = true;
            }
          }
        if (!improved) break;
      }
      report.gamma_lower = std::max(report.gamma_lower, value);
    }
  }

  report.delta_norm_lower = op_norm(delta_n(t, a, x), a.norm, x.norm, seed).lower;
  report.bound_from_gamma = constants::cocycle_norm_bound(n, r, report.gamma_lower).value;
  const bool ok = report.delta_norm_lower <= report.bound_from_gamma * (1.0 + 1e-9) + 1e-12;
  report.status = ok ? "consistent" : "inconclusive";
  report.note = "both sides are lower estimates; this is a consistency probe";
  return report;
}

double vanish_on_unit(const MultilinearMap& extended) {
  const int d = extended.in_dim;
  double worst = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(extended.degree), 0);
  for (Eigen::Index c = 0; c < extended.tensor.cols(); ++c) {
    if (std::find(idx.begin(), idx.end(), d - 1) != idx.end())
      worst = std::max(worst, extended.tensor.col(c).cwiseAbs().maxCoeff());
    for (int k = extended.degree - 1; k >= 0; --k) {
      if (++idx[static_cast<std::size_t>(k)] < d) break;
      idx[static_cast<std::size_t>(k)] = 0;
    }
  }
  return worst;
}

Mat Representation::apply(const Vec& a) const {
  Mat out = Mat::Zero(space_dim, space_dim);
  for (std::size_t g = 0; g < action.size(); ++g) out += a[static_cast<Eigen::Index>(g)] * action[g];
  return out;
}

Representation regular_representation(const FiniteGroup& g, double p) {
  Representation rep{group_algebra(g), {}, Norm::lp(p), g.order()};
  for (int s = 0; s < g.order(); ++s) {
    Mat m = Mat::Zero(g.order(), g.order());
    for (int h = 0; h < g.order(); ++h) m(g.multiply(s, h), h) = 1.0;
    rep.action.push_back(std::move(m));
  }
  return rep;
}

CommutantReport commutant_hyperref_check(const FiniteGroup& g, double p, std::size_t samples, std::uint64_t seed,
                                         const EstimatorOptions& opts) {
  const auto rep = regular_representation(g, p);
  const int m = rep.space_dim;
  const auto s = commutant(rep.action, m);
  const auto bound = constants::convolution_operator_bound();
  const auto maps = random_maps(1, m, m, samples, seed);

  CommutantReport report;
  report.ratios = run_ratios(maps, s, rep.space_norm, rep.space_norm, bound.value, seed, opts);
  report.ratios.bound_formula = bound.formula;
  report.worst_intermediate_slack = -std::numeric_limits<double>::infinity();

  if (!g.is_abelian()) {
    report.note = "zero-product strata need an abelian group; intermediate inequality not sampled";
    return report;
  }
  const auto z = ZeroProductStructure::build(rep.algebra, seed);
  const auto& pairs = z.pairs();
  const std::size_t checked_maps = std::min<std::size_t>(maps.size(), 16);
  for (std::size_t i = 0; i < checked_maps; ++i) {
    const auto& t = maps[i];
    const double alpha_up = dist_upper(t, s, rep.space_norm, rep.space_norm, opts).value;
    auto rng = make_rng(seed, 1000 + i);
    std::normal_distribution<double> normal;
    Vec xv(m);
    for (int k = 0; k < m; ++k) xv[k] = normal(rng);
    xv /= rep.space_norm.value(xv);
    for (const auto& [a, b] : pairs) {
      const Mat pa = rep.apply(a);
      const Vec y = rep.apply(b) * xv;
      const double lhs = rep.space_norm.value(pa * t.tensor * y);
      const MultilinearMap pa_map{1, m, m, pa};
      const double pa_norm = op_norm(pa_map, rep.space_norm, rep.space_norm, seed, opts).upper;
      const std::vector<Vec> arg{y};
      const double pointwise = pa_norm * pointwise_distance(t, s, arg, rep.space_norm).upper;
      // alpha ||pi||^2 ||x|| ||a|| ||b|| with ||pi|| = ||x|| = ||a|| = ||b|| = 1.
      const double rhs = std::min(pointwise, alpha_up);
      const double slack = lhs - rhs;
      ++report.intermediate_checked;
      report.worst_intermediate_slack = std::max(report.worst_intermediate_slack, slack);
      if (slack > 1e-9 * std::max(1.0, rhs)) ++report.intermediate_violations;
    }
  }
  return report;
}

LocalUnitBound local_unit_bound(const AlgebraSpec& a) {
  LocalUnitBound out;
  if (a.unit) {
    out.unit = *a.unit;
    out.value = a.norm.value(*a.unit);
    return out;
  }
  out.heuristic = true;
  const int d = a.dim;
  // e e_j = e_j and e_j e = e_j for every basis element.
  Mat sys(2 * d * d, d);
  Vec rhs = Vec::Zero(2 * d * d);
  for (int j = 0; j < d; ++j) {
    Vec ej = Vec::Zero(d);
    ej[j] = 1.0;
    sys.middleRows(2 * j * d, d) = a.right_operator(ej);
    sys.middleRows((2 * j + 1) * d, d) = a.left_operator(ej);
    rhs.segment(2 * j * d, d) = ej;
    rhs.segment((2 * j + 1) * d, d) = ej;
  }
  const Eigen::CompleteOrthogonalDecomposition<Mat> cod(sys);
  Vec e = cod.solve(rhs);
  if ((sys * e - rhs).cwiseAbs().maxCoeff() > 1e-6) throw AlgebraError("no approximate local unit on the basis");

  const Mat free = null_space(sys);
  double best = a.norm.value(e);
  if (free.cols() > 0) {
    Vec coef = Vec::Zero(free.cols());
    Vec best_coef = coef;
    double step = 0.5 * std::max(best, 1e-12);
    int stall = 0;
    for (int it = 0; it < 400 && step > 1e-12; ++it) {
      const Vec g = free.transpose() * a.norm.subgradient(e + free * coef);
      const double gn = g.norm();
      if (gn == 0.0) break;
      coef -= (step / gn) * g;
      const double v = a.norm.value(e + free * coef);
      if (v < best) {
        best = v;
        best_coef = coef;
        stall = 0;
      } else if (++stall >= 6) {
        step *= 0.5;
        coef = best_coef;
        stall = 0;
      }
    }
    e += free * best_coef;
  }
  out.unit = e;
  out.value = best;
  return out;
}

}  // namespace hyperref::findim
