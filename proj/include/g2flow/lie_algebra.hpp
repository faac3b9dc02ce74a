#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "g2flow/kform.hpp"

namespace g2flow {

/// A finite-dimensional real Lie algebra presented through the differentials
/// of its dual basis: d e^k is a 2-form for each k, and d extends to all
/// degrees as a graded derivation.  The squared differential vanishes exactly
/// when the Jacobi identity holds; this is checked at construction.
class LieAlgebra {
 public:
  LieAlgebra(std::vector<KForm> dual_differentials, std::string name = "");

  int dim() const { return static_cast<int>(duals_.size()); }
  const std::string& name() const { return name_; }

  /// d e^k, 1-based.
  const KForm& dual_differential(int k) const;

  /// Chevalley-Eilenberg differential of an arbitrary form on this algebra.
  KForm d(const KForm& a) const;

  /// [e_i, e_j] in basis coordinates, 1-based.  Recovered from the dual
  /// differentials via d a (x, y) = -a([x, y]) for 1-forms a.
  Eigen::VectorXd bracket(int i, int j) const;
  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  /// max_k |coefficient| of d(d e^k); zero for a genuine Lie algebra.
  double jacobi_residual() const;

  bool is_unimodular() const;  // tr(ad_x) = 0 for all x
  bool is_solvable() const;    // derived series terminates
  bool is_nilpotent() const;   // lower central series terminates

  /// Direct sum with a line: same structure equations, one extra closed dual
  /// generator.
  LieAlgebra extend_by_line(const std::string& name = "") const;

 private:
  std::vector<KForm> duals_;
  std::string name_;
};

/// Parses a tuple of structure equations such as
///   "(e15, -e25, -e35, e45, 0, 0)"
/// where entry k gives d e^k.  Coefficients may be decimals, fractions p/q,
/// sqrt(N), or named parameters bound through `params`; `*` between a
/// coefficient and the basis 2-form is optional.  The tuple length fixes the
/// dimension.  Errors carry the offending position.
LieAlgebra parse_structure_equations(const std::string& text,
                                     const std::map<std::string, double>& params = {},
                                     const std::string& name = "");

/// Canonical rendering; parsing the result reproduces the algebra.
std::string print_structure_equations(const LieAlgebra& L);

}  // namespace g2flow
