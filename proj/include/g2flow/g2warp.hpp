#pragma once

#include <Eigen/Dense>
#include <memory>

#include "g2flow/kform.hpp"
#include "g2flow/lie_algebra.hpp"
#include "g2flow/metric_ops.hpp"
#include "g2flow/stability.hpp"
#include "g2flow/su3.hpp"

namespace g2flow {

/// A G2-structure: a stable positive 3-form phi on a 7-dimensional Lie
/// algebra, together with the inner product, orientation, and Hodge dual it
/// induces.
class G2Structure {
 public:
  G2Structure(LieAlgebra L, KForm phi);

  const LieAlgebra& algebra() const { return metric_->algebra(); }
  const KForm& phi() const { return phi_; }
  const KForm& star_phi() const { return star_phi_; }
  const Eigen::MatrixXd& metric() const { return metric_->metric(); }
  double vol_coeff() const { return metric_->volume_coeff(); }
  const MetricData& metric_data() const { return *metric_; }

  bool is_closed() const;  // d phi = 0

 private:
  struct Built;
  static Built build(LieAlgebra L, KForm phi);
  explicit G2Structure(Built&& b);

  KForm phi_;
  KForm star_phi_;
  std::shared_ptr<const MetricData> metric_;
};

/// The warped product of an SU(3)-structure with a line of width a > 0:
///   phi = a omega ^ e7 + psi_plus  on the extended algebra,
/// whose induced metric is h + a^2 e7 (x) e7.  phi is closed exactly when
/// the input is symplectic half-flat.
G2Structure build_warped(const SU3Structure& S, double a);

/// Torsion data of a closed G2-structure.  The torsion 2-form tau is the
/// codifferential of phi; it satisfies d(star phi) = tau ^ phi and lies in
/// the 14-dimensional module (tau ^ star phi = 0); both facts are verified.
struct G2Torsion {
  KForm tau;                  // 2-form
  double norm_sq = 0.0;       // |tau|^2 in the induced metric
  Eigen::MatrixXd tau_tilde;  // quadratic matrix T g^{-1} T, T = tau(e_i, e_j)
  KForm laplacian_phi;        // d tau, the Hodge Laplacian of phi
};

/// Throws ValidationError if phi is not closed.
G2Torsion g2_torsion(const G2Structure& G);

/// Velocity of the metric under the flow moving phi by its Laplacian:
///   -2 Ric - (1/3)|tau|^2 g - tau~.
Eigen::MatrixXd metric_flow_rhs(const G2Structure& G);

/// The torsion 2-form of the warped structure expressed through the torsion
/// of the underlying 6-dimensional structure:
///   w2 + star_h(theta ^ psi_minus) + 2 a (J theta) ^ e7.
/// Matches the codifferential of phi when the warped form is closed, and
/// stays in the 14-dimensional module for any Lee form.
KForm warped_torsion_2form(const SU3Structure& S, const SU3Torsion& T, double a);

}  // namespace g2flow
