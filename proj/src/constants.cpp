#include "hyperref/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hyperref::constants {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void ConstantInputs::validate() const {
  require(alpha >= 0.0, "alpha must be nonnegative");
  require(gamma >= 0.0, "gamma must be nonnegative");
  require(r >= 0.0, "r must be nonnegative");
  require(M >= 1.0, "M must be at least 1");
  require(C > 0.0, "C must be positive");
  require(K >= 1.0, "K must be at least 1");
  require(pi_norm > 0.0, "pi_norm must be positive");
  require(n >= 1, "n must be at least 1");
}

double ConstantInputs::strong_b() const { return r > 0.0 ? r : cstar_group_constant().value; }

ConstantValue circle_lemma_bound(double alpha) {
  require(alpha >= 0.0, "alpha must be nonnegative");
  return {12.0 * std::sqrt(kPi * (1.0 + kSqrt2)) * std::sqrt(alpha), "12*sqrt(pi*(1+sqrt(2)))*sqrt(alpha)"};
}

StrongBPair circle_strong_b(double alpha) {
  require(alpha >= 0.0, "alpha must be nonnegative");
  return {{144.0 * kPi * (1.0 + kSqrt2) * alpha, "144*pi*(1+sqrt(2))*alpha"},
          {288.0 * kPi * (1.0 + kSqrt2) * alpha, "288*pi*(1+sqrt(2))*alpha"}};
}

ConstantValue cstar_group_constant() { return {288.0 * kPi * (1.0 + kSqrt2), "288*pi*(1+sqrt(2))"}; }

ConstantValue unitization_constant(double M, double r) {
  require(M >= 1.0, "M must be at least 1");
  require(r >= 0.0, "r must be nonnegative");
  return {M * M * r + (M + 1.0) * (M + 1.0), "M^2*r+(M+1)^2"};
}

ConstantValue cocycle_norm_bound(int n, double r, double gamma) {
  require(n >= 1, "n must be at least 1");
  require(r >= 0.0, "r must be nonnegative");
  require(gamma >= 0.0, "gamma must be nonnegative");
  return {std::ldexp(std::pow(r, n + 1) * gamma, n - 1), "2^(n-1)*r^(n+1)*gamma"};
}

ConstantValue hyperref_bound(int n, double M, double r, double C) {
  require(n >= 1, "n must be at least 1");
  require(C > 0.0, "C must be positive");
  const double base = unitization_constant(M, r).value;
  return {C * std::ldexp(std::pow(base, n + 1), n - 1), "C*2^(n-1)*(M^2*r+(M+1)^2)^(n+1)"};
}

ConstantValue commutant_bound(double M, double C, double K, double pi_norm) {
  require(M >= 1.0, "M must be at least 1");
  require(C > 0.0, "C must be positive");
  require(K >= 1.0, "K must be at least 1");
  require(pi_norm > 0.0, "pi_norm must be positive");
  return {M * C * K * K * pi_norm * pi_norm, "M*C*K^2*||pi||^2"};
}

ConstantValue convolution_operator_bound() {
  const auto c = commutant_bound(1.0, cstar_group_constant().value, 1.0, 1.0);
  return {c.value, "M*C*K^2*||pi||^2 with M=1, C=288*pi*(1+sqrt(2)), K=||pi||=1"};
}

AmenabilityPreset amenability_presets(std::string_view kind) {
  if (kind == "amenable_group_algebra" || kind == "amenable_cstar") return {1.0, 1.0};
  throw std::invalid_argument("unknown amenability preset: " + std::string(kind));
}

}  // namespace hyperref::constants
