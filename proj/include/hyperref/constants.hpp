#pragma once

#include <string>
#include <string_view>

// Closed-form bounds. Every value travels with the formula that produced it.
namespace hyperref::constants {

struct ConstantValue {
  double value = 0.0;
  std::string formula;
};

struct ConstantInputs {
  double alpha = 1.0;
  double gamma = 1.0;
  double r = 0.0;  // 0 selects the C*-algebra / group-algebra constant
  double M = 1.0;
  double C = 1.0;
  double K = 1.0;
  double pi_norm = 1.0;
  int n = 1;

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;
  double strong_b() const;
};

ConstantValue circle_lemma_bound(double alpha);

struct StrongBPair {
  ConstantValue restricted;  // functional restricted to the ideal
  ConstantValue general;
};
StrongBPair circle_strong_b(double alpha);

ConstantValue cstar_group_constant();
ConstantValue unitization_constant(double M, double r);
ConstantValue cocycle_norm_bound(int n, double r, double gamma);
ConstantValue hyperref_bound(int n, double M, double r, double C);
ConstantValue commutant_bound(double M, double C, double K, double pi_norm);
// Commutant bound for convolution operators on l^p(G), G amenable:
// K = ||pi|| = 1 and M * C folded into the group-algebra constant.
ConstantValue convolution_operator_bound();

struct AmenabilityPreset {
  double amenability = 1.0;
  double open_mapping = 1.0;
};
// kind: "amenable_group_algebra" or "amenable_cstar". Throws on anything else.
AmenabilityPreset amenability_presets(std::string_view kind);

}  // namespace hyperref::constants
