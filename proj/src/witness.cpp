#include "hyperref/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hyperref::witness {

namespace {

using circle::Complex;
using circle::kComparisonSlack;
constexpr double kPi = std::numbers::pi;

// Grid tests: threshold on |value| and the widening of the reference set.
constexpr double kGridThreshold = 1e-7;
constexpr double kGridWidening = 1e-3;

double circle_distance(double s) {
  double r = std::remainder(s, 2.0 * kPi);
  return std::abs(r);
}

// Normalized measure of [-a, a] intersected with s + [-b, b]; exact while a + b <= pi.
double overlap(double a, double b, double s) {
  const double d = circle_distance(s);
  const double len = std::min(a, d + b) - std::max(-a, d - b);
  return len > 0.0 ? len / (2.0 * kPi) : 0.0;
}

Status classify(const Bracket& b, double bound, bool strict) {
  if (strict ? b.hi < bound : b.hi <= bound + kComparisonSlack) return Status::pass;
  if (b.lo > bound + kComparisonSlack) return Status::fail;
  return Status::inconclusive;
}

CheckEntry inequality(std::string name, std::string formula, double bound, Bracket b, std::int64_t truncation,
                      bool strict = false) {
  CheckEntry e{std::move(name), std::move(formula), bound, b, classify(b, bound, strict), bound - b.hi, {}, {}};
  if (e.status == Status::inconclusive && bound > b.lo && std::isfinite(b.hi)) {
    // Residuals of the witness elements decay like 1/N.
    const double factor = (b.hi - b.lo) / (bound - b.lo);
    e.required_truncation = static_cast<std::int64_t>(std::ceil(static_cast<double>(truncation) * std::max(1.0, factor)));
  }
  return e;
}

CheckEntry equality(std::string name, std::string formula, double target, Bracket b) {
  CheckEntry e{std::move(name), std::move(formula), target, b, Status::inconclusive, 0.0, {}, {}};
  if (b.lo >= target - kComparisonSlack && b.hi <= target + kComparisonSlack)
    e.status = Status::pass;
  else if (b.hi < target - kComparisonSlack || b.lo > target + kComparisonSlack)
    e.status = Status::fail;
  e.margin = kComparisonSlack - std::max(std::abs(b.lo - target), std::abs(b.hi - target));
  return e;
}

// Largest gap between partial sums and exact values over the grid.
template <class Exact>
double partial_sum_deviation(const FourierElement& x, std::int64_t grid, Exact exact) {
  const auto values = circle::evaluate_on_grid(x, grid);
  double worst = 0.0;
  for (std::int64_t j = 0; j < grid; ++j)
    worst = std::max(worst, std::abs(values[static_cast<std::size_t>(j)] - exact(kernels::grid_point(j, grid))));
  return worst;
}

// Grid test of "|g| < threshold on region", tied to the Fourier element by
// requiring partial sums to agree with g within the certified l1 residual.
template <class Tested, class Exact, class Region>
CheckEntry grid_vanishing(std::string name, std::string formula, Tested tested_fn, const FourierElement& element,
                          Exact element_exact, std::int64_t grid, Region in_region) {
  double worst = 0.0;
  std::int64_t tested = 0;
  for (std::int64_t j = 0; j < grid; ++j) {
    const double s = kernels::grid_point(j, grid);
    if (!in_region(s)) continue;
    ++tested;
    worst = std::max(worst, std::abs(tested_fn(s)));
  }
  const double deviation = partial_sum_deviation(element, grid, element_exact);
  const double allowed = element.residual().l1 + kComparisonSlack;

  CheckEntry e{std::move(name), std::move(formula), kGridThreshold, {worst, worst}, Status::pass,
               kGridThreshold - worst, {}, {}};
  std::ostringstream note;
  note << tested << " grid points; partial-sum deviation " << deviation << " vs certified " << allowed;
  e.note = note.str();
  if (deviation > allowed || worst >= kGridThreshold) e.status = Status::fail;
  return e;
}

}  // namespace

WitnessParams WitnessParams::with_default_delta(double epsilon, std::int64_t truncation, std::int64_t grid) {
  return {epsilon, epsilon / 100.0, truncation, grid};
}

void WitnessParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 3.0)) throw std::invalid_argument("epsilon must lie in (0, 3)");
  if (!(delta > 0.0 && delta < epsilon)) throw std::invalid_argument("delta must lie in (0, epsilon)");
  if (truncation < 1) throw std::invalid_argument("truncation must be positive");
  if (grid < 1) throw std::invalid_argument("grid must be positive");
}

WitnessBundle build(const WitnessParams& params) {
  params.validate();
  const double width = params.epsilon - params.delta;
  WitnessBundle b{params, Interval(width / 6.0), Interval(width / 3.0), {}, {}, {}, {}, {}, {}};
  const auto n = params.truncation;

  const auto iu = FourierElement::from_indicator(b.U, n);
  b.u = (1.0 / (b.U.measure() * b.U.measure())) * circle::convolve(iu, iu);

  const auto iv = FourierElement::from_indicator(b.V, n);
  const auto ivv = FourierElement::from_indicator(Interval(2.0 * b.V.half_width()), n);
  b.plateau = (1.0 / b.V.measure()) * circle::convolve(ivv, iv);

  b.f = FourierElement::from_pairs({{1, 1.0}, {0, -1.0}});
  b.v = circle::pointwise_mul(b.f, b.plateau);
  b.a = circle::convolve(b.f - b.v, circle::reflect(b.u));

  if (static_cast<double>(n) * b.U.half_width() < 1.0) {
    std::ostringstream msg;
    msg << "truncation " << n << " does not resolve U (N * h_U = " << static_cast<double>(n) * b.U.half_width()
        << " < 1); expect inconclusive entries";
    b.diagnostics.push_back(msg.str());
  }
  return b;
}

double ExactProfiles::u(double s) const {
  const double lambda = hu / kPi;
  return overlap(hu, hu, s) / (lambda * lambda);
}

double ExactProfiles::plateau(double s) const { return overlap(2.0 * hv, hv, s) / (hv / kPi); }

Complex ExactProfiles::f(double s) const { return std::polar(1.0, s) - 1.0; }

Complex ExactProfiles::v(double s) const { return f(s) * plateau(s); }

ExactProfiles exact_profiles(const WitnessParams& params) {
  params.validate();
  const double width = params.epsilon - params.delta;
  return {width / 6.0, width / 3.0};
}

const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::size_t WitnessReport::count(Status s) const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [s](const auto& e) { return e.status == s; }));
}

const CheckEntry& WitnessReport::at(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw std::out_of_range("no witness check named " + name);
}

WitnessReport verify(const WitnessParams& params) {
  const auto b = build(params);
  const auto p = exact_profiles(params);
  const double eps = params.epsilon;
  const double width = eps - params.delta;
  const auto n = params.truncation;
  const auto grid = params.grid;

  WitnessReport r{params, {}, b.diagnostics};
  auto& out = r.entries;

  out.push_back(inequality("u_fourier_norm", "6*pi/(eps-delta)", 6.0 * kPi / width, circle::norm_a(b.u), n));
  out.push_back(inequality("u_l2_norm", "sqrt(6*pi/(eps-delta))", std::sqrt(6.0 * kPi / width), circle::norm_l2(b.u), n));

  // u >= 0 pointwise, so ||u||_1 is the zero coefficient.
  const double u0 = b.u.coefficient(0).real();
  const double u0_err = b.u.residual().off_support ? 0.0 : b.u.residual().sup;
  out.push_back(equality("u_l1_norm", "1", 1.0, {u0 - u0_err, u0 + u0_err}));

  const auto u_exact = [&](double s) { return p.u(s); };
  out.push_back(grid_vanishing("u_support", "|u| < 1e-7 outside U+U widened by 1e-3", u_exact, b.u, u_exact, grid,
                               [&](double s) { return circle_distance(s) > 2.0 * p.hu + kGridWidening; }));

  out.push_back(inequality("v_fourier_norm", "2*sqrt(2)", 2.0 * std::numbers::sqrt2, circle::norm_a(b.v), n));
  out.push_back(inequality("f_minus_v_fourier_norm", "2*(1+sqrt(2))", 2.0 * (1.0 + std::numbers::sqrt2),
                           circle::norm_a(b.f - b.v), n));

  const auto inside_v = [&](double s) { return circle_distance(s) < p.hv - kGridWidening; };
  const auto gap = [&](double s) { return p.f(s) - p.v(s); };
  out.push_back(grid_vanishing("f_equals_v_on_V", "|f - v| < 1e-7 on V shrunk by 1e-3", gap, b.v,
                               [&](double s) { return p.v(s); }, grid, inside_v));
  // Same region, tied to the Fourier element f - v itself.
  out.push_back(grid_vanishing("f_minus_v_support", "|f - v| < 1e-7 on V shrunk by 1e-3", gap, b.f - b.v, gap, grid,
                               inside_v));

  out.push_back(inequality("v_l2_norm", "2*eps*sqrt((eps-delta)/(6*pi))", 2.0 * eps * std::sqrt(width / (6.0 * kPi)),
                           circle::norm_l2(b.v), n));

  const auto u_check = circle::reflect(b.u);
  out.push_back(inequality("f_minus_f_conv_u_fourier_norm", "eps", eps, circle::norm_a(b.f - circle::convolve(b.f, u_check)), n));
  out.push_back(inequality("v_conv_u_fourier_norm", "2*eps", 2.0 * eps, circle::norm_a(circle::convolve(b.v, u_check)), n));
  out.push_back(inequality("f_minus_a_fourier_norm", "3*eps (strict)", 3.0 * eps, circle::norm_a(b.f - b.a), n, true));

  if (r.count(Status::inconclusive) > 0 && r.diagnostics.empty())
    r.diagnostics.push_back("some brackets straddle their bounds; raise the truncation");
  return r;
}

double curve_b() { return 12.0 * kPi * (1.0 + std::numbers::sqrt2); }

BoundCurve bound_curve(double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be nonnegative");
  const double a = kCurveA;
  const double b = curve_b();
  BoundCurve c;
  c.alpha = alpha;
  c.unclamped_bound = 2.0 * std::sqrt(a * b * alpha);
  const double e = std::sqrt(alpha * b / a);
  c.clamped = e >= 3.0;
  c.epsilon_star = std::min(e, 3.0 - kCurveEta);
  if (alpha == 0.0)
    c.bound = 0.0;
  else
    c.bound = c.clamped ? a * c.epsilon_star + alpha * b / c.epsilon_star : c.unclamped_bound;
  return c;
}

}  // namespace hyperref::witness
