#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "hyperref/kernels.hpp"

// Certified arithmetic in the Fourier algebra A(T) of the circle.
//
// An element is a finite set of stored coefficients plus bounds on the
// residual, i.e. the difference between the true element and the stored part.
// Haar measure is normalized (dt / 2pi), so convolution multiplies
// coefficients without extra factors.
namespace hyperref::circle {

using Complex = std::complex<double>;
using Frequency = std::int64_t;
using kernels::Term;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Slack on top of certified tails when comparing against closed forms.
inline constexpr double kComparisonSlack = 1e-9;

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x, double slack = 0.0) const { return lo - slack <= x && x <= hi + slack; }
  double width() const { return hi - lo; }
};

// The arc [-h, h] of T = [-pi, pi).
class Interval {
 public:
  explicit Interval(double half_width);

  double half_width() const { return half_width_; }
  double measure() const;

 private:
  double half_width_;
};

struct Residual {
  double l1 = 0.0;  // infinite outside A(T)
  double l2 = 0.0;
  double sup = 0.0;
  bool off_support = true;  // the residual vanishes at every stored frequency

  bool is_zero() const { return l1 == 0.0 && l2 == 0.0 && sup == 0.0; }
};

class FourierElement {
 public:
  FourierElement() = default;

  // Throws std::invalid_argument on a repeated frequency.
  static FourierElement from_pairs(std::vector<std::pair<Frequency, Complex>> pairs);
  static FourierElement monomial(Frequency n, Complex c = 1.0);
  static FourierElement constant(Complex c) { return monomial(0, c); }
  // Coefficients of the indicator of [-h, h] for |n| <= truncation. The l1
  // residual is infinite: indicators are not in A(T).
  static FourierElement from_indicator(const Interval& iv, Frequency truncation);
  // Terms must be strictly increasing in frequency.
  static FourierElement from_sorted(std::vector<Term> terms, Residual residual);

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_stored(Frequency n) const;
  Complex coefficient(Frequency n) const;
  const Residual& residual() const { return residual_; }
  double tail_bound() const { return residual_.l1; }
  bool in_algebra() const { return residual_.l1 < kInfinity; }

 private:
  std::vector<Term> terms_;
  Residual residual_;
};

FourierElement operator+(const FourierElement& x, const FourierElement& y);
FourierElement operator-(const FourierElement& x, const FourierElement& y);
FourierElement operator-(const FourierElement& x);
FourierElement operator*(Complex c, const FourierElement& x);

// Normalized convolution: coefficients multiply. Only frequencies stored in
// both operands are kept.
FourierElement convolve(const FourierElement& x, const FourierElement& y);
// Pointwise product: coefficients convolve.
FourierElement pointwise_mul(const FourierElement& x, const FourierElement& y);
// (R_t x)(s) = x(s + t).
FourierElement translate(const FourierElement& x, double t);
// x_n(s) = x(n s).
FourierElement dilate(const FourierElement& x, Frequency n);
// x(-s).
FourierElement reflect(const FourierElement& x);

Bracket norm_a(const FourierElement& x);
Bracket norm_l2(const FourierElement& x);
// Max of |partial sum| over the grid minus the l1 residual, clamped at 0.
double sup_norm_lower(const FourierElement& x, std::int64_t grid);

// Partial sums at s_j = -pi + 2 pi j / grid.
std::vector<Complex> evaluate_on_grid(const FourierElement& x, std::int64_t grid);
Complex evaluate(const FourierElement& x, double s);

// Exact sum_{|n| <= N} (sin(n h) / (pi n))^2 and the matching Parseval tail.
struct IndicatorEnergy {
  double stored = 0.0;
  double tail = 0.0;
};
IndicatorEnergy indicator_energy(double half_width, Frequency truncation);

// Trigonometric polynomials on T x T: (n, m) -> coefficient of e_n (x) e_m.
class TensorSeries {
 public:
  using Index = std::pair<Frequency, Frequency>;

  static TensorSeries tensor(const FourierElement& x, const FourierElement& y);
  // N k(s, t) = k(s - t) = sum k(n) e_n (x) e_{-n}.
  static TensorSeries diagonal_lift(const FourierElement& k);
  // Integral over x of R_x phi (x) R_x psi, by a quadrature rule that is exact
  // for trigonometric polynomials of the given degrees.
  static TensorSeries translation_average(const FourierElement& phi, const FourierElement& psi);

  const std::map<Index, Complex>& coefficients() const { return coeffs_; }
  Complex coefficient(Frequency n, Frequency m) const;

  TensorSeries operator+(const TensorSeries& other) const;
  TensorSeries operator-(const TensorSeries& other) const;
  // Pointwise product on T x T.
  TensorSeries operator*(const TensorSeries& other) const;

  // Largest entrywise difference over the union of supports.
  double max_abs_difference(const TensorSeries& other) const;

 private:
  std::map<Index, Complex> coeffs_;
};

// N_{f,h} k = N k (f (x) e_1 h).
TensorSeries twisted_lift(const FourierElement& k, const FourierElement& f, const FourierElement& h);

}  // namespace hyperref::circle
