#include "hyperref/findim/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hyperref/findim/polytope.hpp"
#include "hyperref/rng.hpp"

namespace hyperref::findim {

namespace {

enum class Mode { vertex, cube, l2, crude };

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::vertex: return "vertex";
    case Mode::cube: return "cube";
    case Mode::l2: return "l2";
    case Mode::crude: return "crude";
  }
  return "?";
}

std::size_t capped_power(std::size_t base, int exp, std::size_t cap) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

std::vector<Vec> sign_vectors(int d, double scale) {
  std::vector<Vec> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << d); ++bits) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = ((bits >> i) & 1U) ? -scale : scale;
    out.push_back(std::move(v));
  }
  return out;
}

// Columns kron(v_{i_1}, ..., v_{i_n}) over every tuple from the pool.
Mat tuple_matrix(const std::vector<Vec>& pool, int degree, int dim) {
  const auto tuples = capped_power(pool.size(), degree, std::numeric_limits<std::size_t>::max() / 2);
  Mat k(int_pow(dim, degree), static_cast<Eigen::Index>(tuples));
  std::vector<std::size_t> idx(static_cast<std::size_t>(degree), 0);
  std::vector<Vec> args(static_cast<std::size_t>(degree));
  for (std::size_t c = 0; c < tuples; ++c) {
    for (int s = 0; s < degree; ++s) args[static_cast<std::size_t>(s)] = pool[idx[static_cast<std::size_t>(s)]];
    k.col(static_cast<Eigen::Index>(c)) = tuple_kron(args);
    for (int s = degree - 1; s >= 0; --s) {
      if (++idx[static_cast<std::size_t>(s)] < pool.size()) break;
      idx[static_cast<std::size_t>(s)] = 0;
    }
  }
  return k;
}

// Convex upper surrogate for ||R|| over out x d^n tensors R.
class Surrogate {
 public:
  Surrogate(Mode mode, int degree, int in_dim, const Norm& domain, const Norm& codomain, int out_dim,
            std::vector<Vec> pool = {})
      : mode_(mode), codomain_(codomain), out_dim_(out_dim) {
    switch (mode) {
      case Mode::vertex:
      case Mode::cube:
        kron_ = tuple_matrix(pool, degree, in_dim);
        break;
      case Mode::l2:
        scale_ = codomain.euclidean_factor(out_dim) * std::pow(domain.euclidean_radius(in_dim), degree);
        break;
      case Mode::crude:
        scale_ = std::pow(domain.coordinate_bound(in_dim), degree);
        break;
    }
  }

  Mode mode() const { return mode_; }

  double eval(const Mat& r, Mat* grad) const {
    switch (mode_) {
      case Mode::vertex:
      case Mode::cube: {
        const Mat images = r * kron_;
        double best = -1.0;
        Eigen::Index arg = 0;
        for (Eigen::Index c = 0; c < images.cols(); ++c) {
          const double v = codomain_.value(images.col(c));
          if (v > best) {
            best = v;
            arg = c;
          }
        }
        if (grad) *grad = codomain_.subgradient(images.col(arg)) * kron_.col(arg).transpose();
        return std::max(best, 0.0);
      }
      case Mode::l2: {
        if (r.size() == 0) return 0.0;
        if (grad) {
          Eigen::JacobiSVD<Mat> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
          *grad = scale_ * svd.matrixU().col(0) * svd.matrixV().col(0).transpose();
          return scale_ * svd.singularValues()[0];
        }
        return scale_ * Eigen::JacobiSVD<Mat>(r).singularValues()[0];
      }
      case Mode::crude: {
        double s = 0.0;
        if (grad) *grad = Mat::Zero(r.rows(), r.cols());
        for (Eigen::Index c = 0; c < r.cols(); ++c) {
          s += codomain_.value(r.col(c));
          if (grad) grad->col(c) = scale_ * codomain_.subgradient(r.col(c));
        }
        return scale_ * s;
      }
    }
    return 0.0;
  }

 private:
  Mode mode_;
  Norm codomain_;
  int out_dim_;
  Mat kron_;
  double scale_ = 1.0;
};

struct SurrogateSet {
  std::vector<Surrogate> items;
  bool exact = false;  // items[0] is the exact vertex evaluation
};

SurrogateSet build_surrogates(int degree, int in_dim, int out_dim, const Norm& domain, const Norm& codomain,
                              std::size_t budget) {
  SurrogateSet set;
  if (auto v = domain.primal_vertices(in_dim, budget)) {
    if (capped_power(v->size(), degree, budget) <= budget) {
      set.items.emplace_back(Mode::vertex, degree, in_dim, domain, codomain, out_dim, std::move(*v));
      set.exact = true;
      return set;
    }
  }
  if (in_dim < 31 && capped_power(std::size_t{1} << in_dim, degree, budget) <= budget)
    set.items.emplace_back(Mode::cube, degree, in_dim, domain, codomain, out_dim,
                           sign_vectors(in_dim, domain.coordinate_bound(in_dim)));
  set.items.emplace_back(Mode::l2, degree, in_dim, domain, codomain, out_dim);
  set.items.emplace_back(Mode::crude, degree, in_dim, domain, codomain, out_dim);
  return set;
}

double best_upper(const SurrogateSet& set, const Mat& r) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : set.items) best = std::min(best, s.eval(r, nullptr));
  return best;
}

Vec gaussian(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vec g(d);
  for (int i = 0; i < d; ++i) g[i] = normal(rng);
  return g;
}

Vec unit_in(const Norm& norm, Vec v) {
  const double n = norm.value(v);
  if (n > 0.0) v /= n;
  return v;
}

// Image of the tuple under every basis element, as columns.
Mat basis_images(const SubspaceBasis& s, const Vec& kron) {
  Mat w(s.out_dim, s.size());
  const auto cols = static_cast<Eigen::Index>(kron.size());
  for (int k = 0; k < s.size(); ++k)
    w.col(k) = Eigen::Map<const Mat>(s.columns.col(k).data(), s.out_dim, cols) * kron;
  return w;
}

DistanceBracket bracket_at(const MultilinearMap& t, const SubspaceBasis& s, const Vec& kron, const Norm& codomain) {
  const Vec b = t.tensor * kron;
  if (s.size() == 0) {
    const double v = codomain.value(b);
    return {v, v, true};
  }
  return least_distance(b, basis_images(s, kron), codomain);
}

// Normalized {-1, 0, 1} vectors up to sign.
std::vector<Vec> ternary_pool(int d, const Norm& domain, std::size_t limit) {
  std::vector<Vec> out;
  if (capped_power(3, d, limit) > limit) return out;
  const auto total = static_cast<std::size_t>(int_pow(3, d));
  for (std::size_t code = 1; code < total; ++code) {
    Vec v(d);
    std::size_t c = code;
    for (int i = 0; i < d; ++i) {
      v[i] = static_cast<double>(static_cast<int>(c % 3) - 1);
      c /= 3;
    }
    Eigen::Index first = 0;
    while (first < d && v[first] == 0.0) ++first;
    if (first == d || v[first] < 0.0) continue;
    out.push_back(unit_in(domain, std::move(v)));
  }
  return out;
}

}  // namespace

Vec tuple_kron(std::span<const Vec> args) {
  Vec k = Vec::Ones(1);
  for (const auto& a : args) {
    Vec next(k.size() * a.size());
    for (Eigen::Index i = 0; i < k.size(); ++i) next.segment(i * a.size(), a.size()) = k[i] * a;
    k = std::move(next);
  }
  return k;
}

AscentResult op_norm_ascent(const MultilinearMap& t, const Norm& domain, const Norm& codomain, std::uint64_t seed,
                            const EstimatorOptions& opts) {
  const int n = t.degree;
  const int d = t.in_dim;
  AscentResult best;
  if (n == 0) {
    best.value = codomain.value(t.tensor.col(0));
    return best;
  }
  for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
    auto rng = make_rng(seed, static_cast<std::uint64_t>(restart));
    std::vector<Vec> args;
    for (int s = 0; s < n; ++s) args.push_back(domain.lmo(gaussian(d, rng)));
    double value = codomain.value(t(args));
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
      const double before = value;
      for (int s = 0; s < n; ++s) {
        const Mat l = t.slot_matrix(args, s);
        const Vec image = l * args[static_cast<std::size_t>(s)];
        Vec y = codomain.subgradient(image);
        if (y.isZero(0.0)) y = codomain.subgradient(gaussian(t.out_dim, rng));
        const Vec candidate = domain.lmo(l.transpose() * y);
        const double v = codomain.value(l * candidate);
        if (v > value) {
          args[static_cast<std::size_t>(s)] = candidate;
          value = v;
        }
      }
      if (value - before <= opts.rel_tol * std::max(value, 1e-300)) break;
    }
    if (value > best.value || best.args.empty()) {
      best.value = value;
      best.args = args;
    }
  }
  return best;
}

double op_norm_crude_upper(const MultilinearMap& t, const Norm& domain, const Norm& codomain) {
  double s = 0.0;
  for (Eigen::Index c = 0; c < t.tensor.cols(); ++c) s += codomain.value(t.tensor.col(c));
  return s * std::pow(domain.coordinate_bound(t.in_dim), t.degree);
}

NormEstimate op_norm(const MultilinearMap& t, const Norm& domain, const Norm& codomain, std::uint64_t seed,
                     const EstimatorOptions& opts) {
  if (t.degree == 0) {
    const double v = codomain.value(t.tensor.col(0));
    return {v, v, true};
  }
  if (t.degree == 1 && domain.is_euclidean() && codomain.is_euclidean()) {
    const double v = t.tensor.size() ? Eigen::JacobiSVD<Mat>(t.tensor).singularValues()[0] : 0.0;
    return {v, v, true};
  }
  const auto set = build_surrogates(t.degree, t.in_dim, t.out_dim, domain, codomain, opts.tuple_budget);
  if (set.exact) {
    const double v = set.items.front().eval(t.tensor, nullptr);
    return {v, v, true};
  }
  const double upper = best_upper(set, t.tensor);
  const double lower = op_norm_ascent(t, domain, codomain, seed, opts).value;
  return {std::min(lower, upper), upper, false};
}

DistanceBracket least_distance(const Vec& b, const Mat& w, const Norm& norm) {
  const Eigen::Index dim = b.size();
  Mat q(dim, 0);
  if (w.cols() > 0 && w.size() > 0) {
    Eigen::JacobiSVD<Mat> svd(w, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double tol = kRankTol * std::max(1.0, sv.size() ? sv[0] : 0.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv[rank] > tol) ++rank;
    q = svd.matrixU().leftCols(rank);
  }
  const Vec residual = b - q * (q.transpose() * b);
  if (q.cols() == 0) {
    const double v = norm.value(b);
    return {v, v, true};
  }
  if (norm.is_euclidean()) {
    const double v = residual.norm();
    return {v, v, true};
  }
  if (auto dual = norm.dual_vertices(static_cast<int>(dim), 4096)) {
    if (auto section = section_vertices(*dual, q.transpose(), 200'000)) {
      double v = 0.0;
      for (const auto& y : *section) v = std::max(v, y.dot(b));
      return {v, v, true};
    }
  }

  // Primal subgradient descent with dual certificates from projected subgradients.
  Vec lambda = q.transpose() * b;
  auto objective = [&](const Vec& l) { return norm.value(b - q * l); };
  double upper = objective(lambda);
  double lower = 0.0;
  auto certify = [&](const Vec& y) {
    const Vec perp = y - q * (q.transpose() * y);
    const double dn = norm.dual_value(perp);
    if (dn > 0.0) lower = std::max(lower, perp.dot(b) / dn);
  };
  Vec avg = Vec::Zero(dim);
  Vec best_lambda = lambda;
  double step = 0.5 * residual.norm() + 1e-300;
  const double min_step = step * 1e-9;
  int stall = 0;
  for (int it = 0; it < 600 && step > min_step; ++it) {
    const Vec y = norm.subgradient(b - q * lambda);
    certify(y);
    avg = 0.85 * avg + 0.15 * y;
    certify(avg);
    if (upper - lower <= 1e-12 * std::max(1.0, upper)) break;
    const Vec g = -(q.transpose() * y);
    const double gn = g.norm();
    if (gn == 0.0) {
      lower = std::max(lower, upper);
      break;
    }
    lambda -= (step / gn) * g;
    const double f = objective(lambda);
    if (f < upper - 1e-15 * upper) {
      upper = f;
      best_lambda = lambda;
      stall = 0;
    } else if (++stall >= 6) {
      step *= 0.5;
      lambda = best_lambda;
      stall = 0;
    }
  }
  return {std::min(lower, upper), upper, false};
}

DistUpperResult dist_upper(const MultilinearMap& t, const SubspaceBasis& s, const Norm& domain, const Norm& codomain,
                           const EstimatorOptions& opts) {
  const auto set = build_surrogates(t.degree, t.in_dim, t.out_dim, domain, codomain, opts.tuple_budget);
  DistUpperResult out;
  if (s.size() == 0) {
    out.value = best_upper(set, t.tensor);
    out.coefficients = Vec();
    out.surrogate = mode_name(set.items.front().mode());
    return out;
  }
  const Vec tv = flatten(t);
  const Mat& q = s.columns;
  auto residual_of = [&](const Vec& lambda) {
    const Vec r = tv - q * lambda;
    return Mat(Eigen::Map<const Mat>(r.data(), t.out_dim, t.tensor.cols()));
  };

  Vec lambda = q.transpose() * tv;
  const Mat r0 = residual_of(lambda);

  // Descend on the single tightest surrogate at the starting point.
  std::size_t pick = 0;
  double pick_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < set.items.size(); ++i) {
    const double v = set.items[i].eval(r0, nullptr);
    if (v < pick_value) {
      pick_value = v;
      pick = i;
    }
  }
  const auto& sur = set.items[pick];

  Vec best_lambda = lambda;
  double best = pick_value;
  double step = 0.5 * (r0.norm() + 1e-300);
  const double min_step = step * 1e-9;
  int stall = 0;
  Mat grad;
  for (int it = 0; it < opts.descent_iterations && step > min_step && best > 0.0; ++it) {
    sur.eval(residual_of(lambda), &grad);
    const Vec g = -(q.transpose() * Eigen::Map<const Vec>(grad.data(), grad.size()));
    const double gn = g.norm();
    if (gn == 0.0) break;
    lambda -= (step / gn) * g;
    const double v = sur.eval(residual_of(lambda), nullptr);
    if (v < best - 1e-15 * best) {
      best = v;
      best_lambda = lambda;
      stall = 0;
    } else if (++stall >= 6) {
      step *= 0.5;
      lambda = best_lambda;
      stall = 0;
    }
  }
  out.value = std::min(best, best_upper(set, residual_of(best_lambda)));
  out.coefficients = best_lambda;
  out.surrogate = mode_name(sur.mode());
  return out;
}

DistanceBracket pointwise_distance(const MultilinearMap& t, const SubspaceBasis& s, std::span<const Vec> args,
                                   const Norm& codomain) {
  return bracket_at(t, s, tuple_kron(args), codomain);
}

DistRResult dist_r_lower(const MultilinearMap& t, const SubspaceBasis& s, const Norm& domain, const Norm& codomain,
                         std::uint64_t seed, const EstimatorOptions& opts) {
  const int n = t.degree;
  const int d = t.in_dim;
  DistRResult best;
  if (n == 0) {
    best.value = bracket_at(t, s, Vec::Ones(1), codomain).lower;
    return best;
  }

  std::vector<Vec> pool;
  if (auto v = domain.primal_vertices(d, opts.tuple_budget)) pool = std::move(*v);
  for (auto& v : ternary_pool(d, domain, opts.tuple_budget)) pool.push_back(std::move(v));

  std::vector<std::vector<Vec>> candidates;
  auto rng = make_rng(seed, 0);
  if (!pool.empty()) {
    const std::size_t tuples = capped_power(pool.size(), n, opts.tuple_budget);
    if (tuples <= opts.tuple_budget) {
      std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
      for (std::size_t c = 0; c < tuples; ++c) {
        std::vector<Vec> args;
        for (auto i : idx) args.push_back(pool[i]);
        candidates.push_back(std::move(args));
        for (int k = n - 1; k >= 0; --k) {
          if (++idx[static_cast<std::size_t>(k)] < pool.size()) break;
          idx[static_cast<std::size_t>(k)] = 0;
        }
      }
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      for (std::size_t c = 0; c < opts.tuple_budget; ++c) {
        std::vector<Vec> args;
        for (int k = 0; k < n; ++k) args.push_back(pool[pick(rng)]);
        candidates.push_back(std::move(args));
      }
    }
  }
  for (std::size_t c = 0; c < opts.random_candidates; ++c) {
    std::vector<Vec> args;
    for (int k = 0; k < n; ++k) args.push_back(domain.lmo(gaussian(d, rng)));
    candidates.push_back(std::move(args));
  }

  std::vector<double> values(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c)
    values[c] = pointwise_distance(t, s, candidates[c], codomain).lower;

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] > values[b]; });
  if (!order.empty()) {
    best.value = values[order.front()];
    best.argmax = candidates[order.front()];
  }

  // Local random search from the strongest candidates.
  std::normal_distribution<double> normal;
  const std::size_t seeds = std::min<std::size_t>(4, order.size());
  for (std::size_t r = 0; r < seeds; ++r) {
    auto args = candidates[order[r]];
    double value = values[order[r]];
    double sigma = 0.3;
    for (int step = 0; step < opts.refine_steps; ++step) {
      auto trial = args;
      for (auto& a : trial) {
        for (Eigen::Index i = 0; i < a.size(); ++i) a[i] += sigma * normal(rng);
        a = unit_in(domain, std::move(a));
      }
      const double v = pointwise_distance(t, s, trial, codomain).lower;
      if (v > value) {
        value = v;
        args = std::move(trial);
      } else {
        sigma *= 0.7;
      }
    }
    if (value > best.value) {
      best.value = value;
      best.argmax = args;
    }
  }
  return best;
}

}  // namespace hyperref::findim
