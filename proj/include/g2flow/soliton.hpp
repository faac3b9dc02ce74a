#pragma once

#include <Eigen/Dense>
#include <string>

#include "g2flow/g2warp.hpp"
#include "g2flow/kform.hpp"
#include "g2flow/lie_algebra.hpp"

namespace g2flow {

/// Max deviation of D from being a bracket derivation:
/// max over basis pairs of |D[e_i, e_j] - [D e_i, e_j] - [e_i, D e_j]|.
double derivation_residual(const LieAlgebra& L, const Eigen::MatrixXd& D);

/// Relative residual of the self-similarity equation
///   Laplacian phi = lambda phi + D . phi,
/// where (D . phi)(x, y, z) = phi(Dx, y, z) + phi(x, Dy, z) + phi(x, y, Dz);
/// normalized by the coefficient norm of phi.  The sign with which the
/// derivation action enters is fixed once by the diagonal catalog examples
/// and shared by every structure.
double soliton_residual(const G2Structure& G, double lambda, const Eigen::MatrixXd& D);

/// |2 lambda - (6 c - n2)| where c is the Laplace eigenvalue of the torsion
/// form of the symplectic half-flat structure S and n2 its squared norm.
/// Throws if the torsion form is not an eigenform.
double soliton_relation_residual(const SU3Structure& S, double lambda);

/// Classification by the sign of lambda.
std::string soliton_type(double lambda);

/// Basis of the symmetric derivations of L (as dim x dim matrices).
std::vector<Eigen::MatrixXd> symmetric_derivations(const LieAlgebra& L);

struct SolitonSearch {
  double lambda = 0.0;
  Eigen::MatrixXd D;
  double residual = 0.0;            // relative, as in soliton_residual
  int derivation_space_dim = 0;     // symmetric derivations available
};

/// Least-squares best (lambda, D) over the symmetric derivations such that
/// Laplacian phi = lambda phi + D . phi; a large residual certifies that no
/// algebraic soliton of this type exists for the given structure.
SolitonSearch best_soliton_fit(const G2Structure& G);

}  // namespace g2flow
