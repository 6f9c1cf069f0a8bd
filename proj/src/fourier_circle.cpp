#include "hyperref/fourier_circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hyperref::circle {

namespace {

constexpr double kPi = std::numbers::pi;

// 0 * inf = 0: a vanishing factor kills an unbounded one.
double mul(double a, double b) { return (a == 0.0 || b == 0.0) ? 0.0 : a * b; }

struct Moments {
  double l1 = 0.0;
  double l2 = 0.0;
  double sup = 0.0;
};

Moments moments_of(const Residual& r) { return {r.l1, r.l2, r.sup}; }

// Moments of the stored coefficients, skipping positions flagged in `skip`.
Moments stored_moments(std::span<const Term> terms, const std::vector<bool>* skip = nullptr) {
  long double l1 = 0.0L, l2 = 0.0L;
  double sup = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (skip && (*skip)[i]) continue;
    const double a = std::abs(terms[i].coefficient);
    l1 += a;
    l2 += static_cast<long double>(a) * a;
    sup = std::max(sup, a);
  }
  return {static_cast<double>(l1), std::sqrt(static_cast<double>(l2)), sup};
}

// Bounds for the coefficient sequence s_n r_n.
double hadamard_l1(const Moments& s, const Moments& r) {
  return std::min({mul(s.sup, r.l1), mul(s.l2, r.l2), mul(s.l1, r.sup)});
}
double hadamard_l2(const Moments& s, const Moments& r) { return std::min(mul(s.sup, r.l2), mul(s.l2, r.sup)); }
double hadamard_sup(const Moments& s, const Moments& r) { return mul(s.sup, r.sup); }

bool residual_absent_on(const Residual& r) { return r.is_zero() || r.off_support; }

// True if every frequency of `a` is stored in `b`.
bool stored_subset(std::span<const Term> a, std::span<const Term> b) {
  std::size_t j = 0;
  for (const auto& t : a) {
    while (j < b.size() && b[j].frequency < t.frequency) ++j;
    if (j == b.size() || b[j].frequency != t.frequency) return false;
  }
  return true;
}

FourierElement add_scaled(const FourierElement& x, const FourierElement& y, double sign) {
  const auto xs = x.terms();
  const auto ys = y.terms();
  std::vector<Term> out;
  out.reserve(xs.size() + ys.size());
  std::size_t i = 0, j = 0;
  while (i < xs.size() || j < ys.size()) {
    if (j == ys.size() || (i < xs.size() && xs[i].frequency < ys[j].frequency)) {
      out.push_back(xs[i++]);
    } else if (i == xs.size() || ys[j].frequency < xs[i].frequency) {
      out.push_back({ys[j].frequency, sign * ys[j].coefficient});
      ++j;
    } else {
      out.push_back({xs[i].frequency, xs[i].coefficient + sign * ys[j].coefficient});
      ++i;
      ++j;
    }
  }
  const auto& rx = x.residual();
  const auto& ry = y.residual();
  Residual r;
  r.l1 = rx.l1 + ry.l1;
  r.l2 = rx.l2 + ry.l2;
  r.sup = rx.sup + ry.sup;
  r.off_support = (rx.is_zero() || (rx.off_support && stored_subset(ys, xs))) &&
                  (ry.is_zero() || (ry.off_support && stored_subset(xs, ys)));
  return FourierElement::from_sorted(std::move(out), r);
}

}  // namespace

Interval::Interval(double half_width) : half_width_(half_width) {
  if (!(half_width > 0.0 && half_width <= kPi)) throw std::invalid_argument("interval half-width must lie in (0, pi]");
}

double Interval::measure() const { return half_width_ / kPi; }

FourierElement FourierElement::from_pairs(std::vector<std::pair<Frequency, Complex>> pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Term> terms;
  terms.reserve(pairs.size());
  for (const auto& [n, c] : pairs) {
    if (!terms.empty() && terms.back().frequency == n) throw std::invalid_argument("duplicate frequency");
    terms.push_back({n, c});
  }
  return from_sorted(std::move(terms), Residual{});
}

FourierElement FourierElement::monomial(Frequency n, Complex c) { return from_sorted({{n, c}}, Residual{}); }

FourierElement FourierElement::from_sorted(std::vector<Term> terms, Residual residual) {
  for (std::size_t i = 1; i < terms.size(); ++i)
    if (terms[i - 1].frequency >= terms[i].frequency) throw std::invalid_argument("terms must be strictly increasing");
  FourierElement e;
  e.terms_ = std::move(terms);
  e.residual_ = residual;
  return e;
}

IndicatorEnergy indicator_energy(double h, Frequency truncation) {
  if (truncation < 0) throw std::invalid_argument("truncation must be nonnegative");
  // sum_{n>=1} sin^2(n h)/n^2 = h (pi - h) / 2 on [0, pi].
  long double partial = 0.0L;
  for (Frequency n = truncation; n >= 1; --n) {
    const long double s = std::sin(static_cast<long double>(n) * h) / static_cast<long double>(n);
    partial += s * s;
  }
  const long double pi2 = static_cast<long double>(kPi) * kPi;
  const long double total = static_cast<long double>(h) * (static_cast<long double>(kPi) - h) / 2.0L;
  const long double c0 = static_cast<long double>(h) / kPi;
  IndicatorEnergy e;
  e.stored = static_cast<double>(c0 * c0 + 2.0L * partial / pi2);
  // Float noise in the difference is far below the comparison slack; the
  // crude bound sum_{n>N} 1/n^2 < 1/N caps it.
  const long double exact_tail = std::max(0.0L, 2.0L * (total - partial) / pi2);
  const long double crude_tail = truncation > 0 ? 2.0L / (pi2 * truncation) : exact_tail;
  e.tail = static_cast<double>(std::min(exact_tail, crude_tail));
  return e;
}

FourierElement FourierElement::from_indicator(const Interval& iv, Frequency truncation) {
  if (truncation < 1) throw std::invalid_argument("truncation must be at least 1");
  const double h = iv.half_width();
  std::vector<Term> terms;
  terms.reserve(static_cast<std::size_t>(2 * truncation + 1));
  for (Frequency n = -truncation; n <= truncation; ++n) {
    const double c = (n == 0) ? h / kPi : std::sin(static_cast<double>(n) * h) / (kPi * static_cast<double>(n));
    terms.push_back({n, c});
  }
  Residual r;
  r.l1 = kInfinity;
  r.l2 = std::sqrt(indicator_energy(h, truncation).tail);
  r.sup = 1.0 / (kPi * static_cast<double>(truncation + 1));
  r.off_support = true;
  return from_sorted(std::move(terms), r);
}

bool FourierElement::is_stored(Frequency n) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), n, [](const Term& t, Frequency f) { return t.frequency < f; });
  return it != terms_.end() && it->frequency == n;
}

Complex FourierElement::coefficient(Frequency n) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), n, [](const Term& t, Frequency f) { return t.frequency < f; });
  return (it != terms_.end() && it->frequency == n) ? it->coefficient : Complex{};
}

FourierElement operator+(const FourierElement& x, const FourierElement& y) { return add_scaled(x, y, 1.0); }
FourierElement operator-(const FourierElement& x, const FourierElement& y) { return add_scaled(x, y, -1.0); }
FourierElement operator-(const FourierElement& x) { return Complex(-1.0) * x; }

FourierElement operator*(Complex c, const FourierElement& x) {
  std::vector<Term> terms(x.terms().begin(), x.terms().end());
  for (auto& t : terms) t.coefficient *= c;
  Residual r = x.residual();
  const double a = std::abs(c);
  r.l1 = mul(a, r.l1);
  r.l2 = mul(a, r.l2);
  r.sup = mul(a, r.sup);
  return FourierElement::from_sorted(std::move(terms), r);
}

FourierElement convolve(const FourierElement& x, const FourierElement& y) {
  const auto xs = x.terms();
  const auto ys = y.terms();
  std::vector<Term> out;
  std::vector<bool> x_shared(xs.size(), false), y_shared(ys.size(), false);
  for (std::size_t i = 0, j = 0; i < xs.size() && j < ys.size();) {
    if (xs[i].frequency < ys[j].frequency) {
      ++i;
    } else if (ys[j].frequency < xs[i].frequency) {
      ++j;
    } else {
      out.push_back({xs[i].frequency, xs[i].coefficient * ys[j].coefficient});
      x_shared[i++] = true;
      y_shared[j++] = true;
    }
  }

  const auto& rx = x.residual();
  const auto& ry = y.residual();
  // When a residual is off-support it only meets the other operand's stored
  // coefficients at frequencies the first one does not store.
  const Moments x_part = stored_moments(xs, ry.off_support ? &x_shared : nullptr);
  const Moments y_part = stored_moments(ys, rx.off_support ? &y_shared : nullptr);
  const Moments mx = moments_of(rx), my = moments_of(ry);

  Residual r;
  r.l1 = hadamard_l1(x_part, my) + hadamard_l1(y_part, mx) + hadamard_l1(mx, my);
  r.l2 = hadamard_l2(x_part, my) + hadamard_l2(y_part, mx) + hadamard_l2(mx, my);
  r.sup = hadamard_sup(x_part, my) + hadamard_sup(y_part, mx) + hadamard_sup(mx, my);
  r.off_support = residual_absent_on(rx) && residual_absent_on(ry);
  return FourierElement::from_sorted(std::move(out), r);
}

FourierElement pointwise_mul(const FourierElement& x, const FourierElement& y) {
  const auto xs = x.terms();
  const auto ys = y.terms();
  std::vector<Term> out;
  if (!xs.empty() && !ys.empty()) {
    const Frequency lo = xs.front().frequency + ys.front().frequency;
    const Frequency hi = xs.back().frequency + ys.back().frequency;
    const auto span = static_cast<std::size_t>(hi - lo + 1);
    if (span <= 8 * (xs.size() * ys.size()) + 1024) {
      std::vector<Complex> acc(span);
      std::vector<bool> hit(span, false);
      for (const auto& a : xs)
        for (const auto& b : ys) {
          const auto idx = static_cast<std::size_t>(a.frequency + b.frequency - lo);
          acc[idx] += a.coefficient * b.coefficient;
          hit[idx] = true;
        }
      for (std::size_t i = 0; i < span; ++i)
        if (hit[i]) out.push_back({lo + static_cast<Frequency>(i), acc[i]});
    } else {
      std::map<Frequency, Complex> acc;
      for (const auto& a : xs)
        for (const auto& b : ys) acc[a.frequency + b.frequency] += a.coefficient * b.coefficient;
      for (const auto& [n, c] : acc) out.push_back({n, c});
    }
  }

  const auto& rx = x.residual();
  const auto& ry = y.residual();
  const double ax = stored_moments(xs).l1;
  const double ay = stored_moments(ys).l1;
  // Young: ||s * r||_p <= ||s||_1 ||r||_p; residual x residual by Cauchy-Schwarz.
  Residual r;
  r.l1 = mul(ax, ry.l1) + mul(rx.l1, ay) + mul(rx.l1, ry.l1);
  r.l2 = mul(ax, ry.l2) + mul(rx.l2, ay) + std::min(mul(rx.l1, ry.l2), mul(rx.l2, ry.l1));
  r.sup = std::min(r.l2, mul(ax, ry.sup) + mul(rx.sup, ay) +
                             std::min({mul(rx.l1, ry.sup), mul(rx.sup, ry.l1), mul(rx.l2, ry.l2)}));
  r.off_support = rx.is_zero() && ry.is_zero();
  return FourierElement::from_sorted(std::move(out), r);
}

FourierElement translate(const FourierElement& x, double t) {
  std::vector<Term> terms(x.terms().begin(), x.terms().end());
  for (auto& term : terms) term.coefficient *= std::polar(1.0, static_cast<double>(term.frequency) * t);
  return FourierElement::from_sorted(std::move(terms), x.residual());
}

FourierElement dilate(const FourierElement& x, Frequency n) {
  if (n < 1) throw std::invalid_argument("dilation factor must be positive");
  std::vector<Term> terms(x.terms().begin(), x.terms().end());
  for (auto& term : terms) term.frequency *= n;
  return FourierElement::from_sorted(std::move(terms), x.residual());
}

FourierElement reflect(const FourierElement& x) {
  std::vector<Term> terms(x.terms().rbegin(), x.terms().rend());
  for (auto& term : terms) term.frequency = -term.frequency;
  return FourierElement::from_sorted(std::move(terms), x.residual());
}

Bracket norm_a(const FourierElement& x) {
  const double s = stored_moments(x.terms()).l1;
  const auto& r = x.residual();
  if (r.is_zero()) return {s, s};
  const double lo = r.off_support ? s : std::max(0.0, s - r.l1);
  return {lo, s + r.l1};
}

Bracket norm_l2(const FourierElement& x) {
  const double s = stored_moments(x.terms()).l2;
  const auto& r = x.residual();
  if (r.is_zero()) return {s, s};
  if (r.off_support) return {s, std::hypot(s, r.l2)};
  return {std::max(0.0, s - r.l2), s + r.l2};
}

std::vector<Complex> evaluate_on_grid(const FourierElement& x, std::int64_t grid) {
  return kernels::parallel::evaluate_on_grid(x.terms(), grid);
}

Complex evaluate(const FourierElement& x, double s) {
  Complex acc{};
  for (const auto& t : x.terms()) acc += t.coefficient * std::polar(1.0, static_cast<double>(t.frequency) * s);
  return acc;
}

double sup_norm_lower(const FourierElement& x, std::int64_t grid) {
  if (grid < 1) throw std::invalid_argument("grid must be positive");
  if (!x.in_algebra()) return 0.0;
  double best = 0.0;
  for (const auto& v : evaluate_on_grid(x, grid)) best = std::max(best, std::abs(v));
  return std::max(0.0, best - x.residual().l1);
}

TensorSeries TensorSeries::tensor(const FourierElement& x, const FourierElement& y) {
  TensorSeries out;
  for (const auto& a : x.terms())
    for (const auto& b : y.terms()) out.coeffs_[{a.frequency, b.frequency}] += a.coefficient * b.coefficient;
  return out;
}

TensorSeries TensorSeries::diagonal_lift(const FourierElement& k) {
  TensorSeries out;
  for (const auto& t : k.terms()) out.coeffs_[{t.frequency, -t.frequency}] += t.coefficient;
  return out;
}

TensorSeries TensorSeries::translation_average(const FourierElement& phi, const FourierElement& psi) {
  Frequency reach = 0;
  for (const auto& t : phi.terms()) reach = std::max(reach, std::abs(t.frequency));
  Frequency reach_psi = 0;
  for (const auto& t : psi.terms()) reach_psi = std::max(reach_psi, std::abs(t.frequency));
  // The integrand has frequencies in x of modulus <= reach + reach_psi; the
  // uniform rule with more nodes than that integrates it exactly.
  const Frequency nodes = reach + reach_psi + 1;
  TensorSeries out;
  for (Frequency q = 0; q < nodes; ++q) {
    const double x = 2.0 * kPi * static_cast<double>(q) / static_cast<double>(nodes);
    const auto term = tensor(translate(phi, x), translate(psi, x));
    for (const auto& [idx, c] : term.coeffs_) out.coeffs_[idx] += c / static_cast<double>(nodes);
  }
  return out;
}

Complex TensorSeries::coefficient(Frequency n, Frequency m) const {
  auto it = coeffs_.find({n, m});
  return it == coeffs_.end() ? Complex{} : it->second;
}

TensorSeries TensorSeries::operator+(const TensorSeries& other) const {
  TensorSeries out = *this;
  for (const auto& [idx, c] : other.coeffs_) out.coeffs_[idx] += c;
  return out;
}

TensorSeries TensorSeries::operator-(const TensorSeries& other) const {
  TensorSeries out = *this;
  for (const auto& [idx, c] : other.coeffs_) out.coeffs_[idx] -= c;
  return out;
}

TensorSeries TensorSeries::operator*(const TensorSeries& other) const {
  TensorSeries out;
  for (const auto& [a, ca] : coeffs_)
    for (const auto& [b, cb] : other.coeffs_) out.coeffs_[{a.first + b.first, a.second + b.second}] += ca * cb;
  return out;
}

double TensorSeries::max_abs_difference(const TensorSeries& other) const {
  double worst = 0.0;
  for (const auto& [idx, c] : coeffs_) worst = std::max(worst, std::abs(c - other.coefficient(idx.first, idx.second)));
  for (const auto& [idx, c] : other.coeffs_) worst = std::max(worst, std::abs(c - coefficient(idx.first, idx.second)));
  return worst;
}

TensorSeries twisted_lift(const FourierElement& k, const FourierElement& f, const FourierElement& h) {
  return TensorSeries::diagonal_lift(k) * TensorSeries::tensor(f, pointwise_mul(FourierElement::monomial(1), h));
}

}  // namespace hyperref::circle
