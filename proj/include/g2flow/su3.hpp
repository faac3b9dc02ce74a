#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "g2flow/kform.hpp"
#include "g2flow/lie_algebra.hpp"
#include "g2flow/metric_ops.hpp"
#include "g2flow/stability.hpp"

namespace g2flow {

/// An SU(3)-structure (omega, psi_plus) on a 6-dimensional Lie algebra.
/// Construction validates, in order: non-degeneracy of omega, stability of
/// psi_plus (complex orbit), the compatibility omega ^ psi_plus = 0, the
/// normalization psi_plus ^ psi_minus = (2/3) omega^3, and positivity of
/// the induced inner product h = omega(., J.).  The orientation is the one
/// of omega^3, which may be opposite to the coordinate basis.
class SU3Structure {
 public:
  SU3Structure(LieAlgebra L, KForm omega, KForm psi_plus);

  const LieAlgebra& algebra() const { return metric_->algebra(); }
  const KForm& omega() const { return omega_; }
  const KForm& psi_plus() const { return psi_plus_; }
  const KForm& psi_minus() const { return psi_minus_; }
  const Endomorphism& J() const { return J_; }
  const Eigen::MatrixXd& h() const { return metric_->metric(); }
  const KForm& nu() const { return nu_; }              // omega^3 / 6
  double vol_coeff() const { return nu_.coeff(full_mask(6)); }
  const MetricData& metric_data() const { return *metric_; }

 private:
  struct Built;
  static Built build(LieAlgebra L, KForm omega, KForm psi_plus);
  explicit SU3Structure(Built&& b);

  KForm omega_;
  KForm psi_plus_;
  KForm psi_minus_;
  KForm nu_;
  Endomorphism J_;
  std::shared_ptr<const MetricData> metric_;
};

/// The omega(e_i, e_j) matrix of a 2-form (antisymmetric).
Eigen::MatrixXd two_form_matrix(const KForm& omega);

/// Basis of the primitive J-invariant 2-forms, i.e. the solutions of
/// beta ^ omega^2 = 0 and J beta = beta (an 8-dimensional space).
std::vector<KForm> primitive_11_basis(const SU3Structure& S);

struct SU3Torsion {
  KForm theta;      // Lee form: d omega = theta ^ omega
  KForm w2_minus;   // primitive J-invariant part of the intrinsic torsion
  KForm gamma;      // component of d w2_minus orthogonal to psi+-, omega
  bool symplectic_half_flat = false;  // d omega = 0 and d psi_plus = 0
  double w2_norm_sq = 0.0;
};

/// Torsion forms of a structure with d psi_plus = 0 and d omega = theta ^
/// omega.  Throws ValidationError("unsupported torsion class ...") when the
/// structure does not satisfy those two equations.
SU3Torsion torsion_forms(const SU3Structure& S);

struct ThreeFormSplit {
  double k_plus = 0.0;
  double k_minus = 0.0;
  KForm gamma;   // primitive part: gamma ^ omega = 0, gamma ^ psi+- = 0
  KForm beta;    // 1-form, contributing beta ^ omega
};

/// h-orthogonal splitting rho = k+ psi_plus + k- psi_minus + gamma + beta ^ omega.
ThreeFormSplit decompose_3form(const SU3Structure& S, const KForm& rho);

/// h-orthogonal projection of a 2-form onto the primitive J-invariant space.
KForm project_omega8(const SU3Structure& S, const KForm& beta);

/// Residual battery of the co-volume identities tying a 1-form beta to the
/// structure: star(beta ^ psi-) = i_{beta#} psi+ and the wedge identities
///   star(beta^psi-)^omega = Jbeta^psi+ = beta^psi-,  star(beta^psi-)^omega^2 = 0,
///   star(beta^psi-)^psi+ = -star(beta^psi+)^psi- = beta^omega^2 = 2 star(Jbeta),
///   star(beta^psi-)^psi- =  star(beta^psi+)^psi+ = -Jbeta^omega^2 = 2 star(beta).
/// Returns the maximum coefficient deviation over all of them.
double one_form_identity_residual(const SU3Structure& S, const KForm& beta);

}  // namespace g2flow
