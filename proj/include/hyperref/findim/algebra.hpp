#pragma once

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperref/findim/norm.hpp"

namespace hyperref::findim {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finite group from a Cayley table on {0, ..., order-1}.
class FiniteGroup {
 public:
  // Validates closure, identity, inverses and associativity. |G| <= 64.
  static FiniteGroup from_table(std::vector<std::vector<int>> table);
  static FiniteGroup cyclic(int k);

  int order() const { return order_; }
  int identity() const { return identity_; }
  int multiply(int g, int h) const { return table_[static_cast<std::size_t>(g * order_ + h)]; }
  int inverse(int g) const { return inverse_[static_cast<std::size_t>(g)]; }
  bool is_abelian() const;

 private:
  int order_ = 0;
  int identity_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
};

FiniteGroup parse_cayley_table(std::istream& in);
FiniteGroup load_cayley_table(const std::string& path);

struct AlgebraSpec {
  std::string name;
  int dim = 0;
  // left_mult[i](k, j): coefficient of e_k in e_i e_j.
  std::vector<Mat> left_mult;
  Norm norm = Norm::sup();
  std::optional<Vec> unit;

  double structure(int i, int j, int k) const { return left_mult[static_cast<std::size_t>(i)](k, j); }
  Vec multiply(const Vec& a, const Vec& b) const;
  Mat left_operator(const Vec& a) const;   // b -> a b
  Mat right_operator(const Vec& b) const;  // a -> a b
  bool is_commutative(double tol = 1e-12) const;
};

// Max over basis triples of |(e_i e_j) e_k - e_i (e_j e_k)|.
double associativity_defect(const AlgebraSpec& a);
// Throws AlgebraError if associativity or the unit law fails at 1e-12.
void validate(const AlgebraSpec& a);

struct BimoduleSpec {
  std::string name;
  int dim = 0;
  std::vector<Mat> left;   // left[i]: x -> e_i x
  std::vector<Mat> right;  // right[i]: x -> x e_i
  Norm norm = Norm::sup();

  Mat left_operator(const Vec& a) const;
  Mat right_operator(const Vec& a) const;
};

// Max deviation in a(bx) = (ab)x, (xa)b = x(ab), (ax)b = a(xb) on basis triples.
double module_defect(const AlgebraSpec& a, const BimoduleSpec& x);
void validate(const AlgebraSpec& a, const BimoduleSpec& x);

AlgebraSpec scalars(bool with_unit = true);
// C^k with pointwise product and sup norm.
AlgebraSpec pointwise(int k);
// M_m with the operator p-norm, p in {1, 2, inf}.
AlgebraSpec matrix_algebra(int m, double p = 2.0);
// l^1(G) with convolution.
AlgebraSpec group_algebra(const FiniteGroup& g);
// Structure constants given as (i, j, k, value) quadruples.
struct StructureEntry {
  int i, j, k;
  double value;
};
AlgebraSpec from_structure(std::string name, int dim, const std::vector<StructureEntry>& entries, Norm norm,
                           std::optional<Vec> unit);

BimoduleSpec regular_bimodule(const AlgebraSpec& a);
// Adjoins an identity as the last basis vector; norm ||a|| + |lambda|.
AlgebraSpec unitize(const AlgebraSpec& a);
// The adjoined identity acts as the identity on both sides.
BimoduleSpec unitize_module(const BimoduleSpec& x, const AlgebraSpec& a);
// B(A, X) with (a S)(b) = a S(b) and (S a)(b) = S(a b) - S(a) b. Coordinates
// stack the columns S(e_0), ..., S(e_{d-1}). The norm is the Frobenius norm of
// that stack; this module exists for algebraic identities only.
BimoduleSpec hom_module(const AlgebraSpec& a, const BimoduleSpec& x);

// Text format:
//   dim <d>                      (or a bare integer)
//   <i> <j> <k> <value>          repeated; unspecified constants are 0
//   norm sup | group_l1 | matrix_p <p> <m> | grid_custom <p>
//   unit <u_0> ... <u_{d-1}>     optional
// '#' starts a comment.
AlgebraSpec parse_algebra(std::istream& in, const std::string& name = "file");
AlgebraSpec load_algebra(const std::string& path);

}  // namespace hyperref::findim
