#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperref/fourier_circle.hpp"

// Witness functions for the circle lemma and certified checks of every
// inequality they satisfy.
namespace hyperref::witness {

using circle::Bracket;
using circle::FourierElement;
using circle::Interval;

struct WitnessParams {
  double epsilon = 0.6;
  double delta = 0.006;
  std::int64_t truncation = 100000;
  std::int64_t grid = 4096;

  // delta defaults to epsilon / 100.
  static WitnessParams with_default_delta(double epsilon, std::int64_t truncation = 100000, std::int64_t grid = 4096);
  // Throws std::invalid_argument unless 0 < delta < epsilon < 3, truncation >= 1, grid >= 1.
  void validate() const;
};

struct WitnessBundle {
  WitnessParams params;
  Interval U{1.0};
  Interval V{1.0};
  FourierElement f;        // e_1 - 1
  FourierElement u;        // 1_U * 1_U / lambda(U)^2
  FourierElement plateau;  // 1_{V+V} * 1_V / lambda(V), equal to 1 on V
  FourierElement v;        // f * plateau
  FourierElement a;        // (f - v) * reflect(u)
  std::vector<std::string> diagnostics;
};

WitnessBundle build(const WitnessParams& params);

// Exact values of the witness functions at s, from the interval-overlap form
// of the defining convolutions.
struct ExactProfiles {
  double hu = 0.0;
  double hv = 0.0;

  double u(double s) const;
  double plateau(double s) const;
  circle::Complex f(double s) const;
  circle::Complex v(double s) const;
};
ExactProfiles exact_profiles(const WitnessParams& params);

enum class Status { pass, fail, inconclusive };
const char* to_string(Status s);

struct CheckEntry {
  std::string name;
  std::string formula;  // closed form of the bound
  double bound = 0.0;
  Bracket bracket;
  Status status = Status::inconclusive;
  double margin = 0.0;  // bound - bracket.hi
  std::optional<std::int64_t> required_truncation;
  std::string note;
};

struct WitnessReport {
  WitnessParams params;
  std::vector<CheckEntry> entries;
  std::vector<std::string> diagnostics;

  std::size_t count(Status s) const;
  const CheckEntry& at(const std::string& name) const;
};

WitnessReport verify(const WitnessParams& params);

// Optimizing k(eps) = A eps + B alpha / eps over eps in (0, 3).
struct BoundCurve {
  double alpha = 0.0;
  double epsilon_star = 0.0;
  double bound = 0.0;
  bool clamped = false;
  double unclamped_bound = 0.0;  // 2 sqrt(A B alpha)
  double trivial_bound = 2.0;    // ||F|| ||f|| with ||e_1 - 1|| = 2
};

inline constexpr double kCurveA = 3.0;
double curve_b();  // 12 pi (1 + sqrt 2)
inline constexpr double kCurveEta = 1e-6;

BoundCurve bound_curve(double alpha);

}  // namespace hyperref::witness
