#pragma once

#include <Eigen/Dense>

#include "g2flow/kform.hpp"
#include "g2flow/lie_algebra.hpp"

namespace g2flow {

/// An inner product on a Lie algebra together with an orientation.  The
/// volume form is orientation * sqrt(det g) * e^{1...n}; left-invariant
/// structures coming from a compatible almost-complex pair carry their own
/// orientation, which need not be the one of the coordinate basis.
class MetricData {
 public:
  MetricData(LieAlgebra L, Eigen::MatrixXd g, double orientation = +1.0);

  const LieAlgebra& algebra() const { return L_; }
  int dim() const { return L_.dim(); }
  const Eigen::MatrixXd& metric() const { return g_; }
  const Eigen::MatrixXd& inverse_metric() const { return g_inv_; }
  const KForm& volume_form() const { return vol_; }
  double volume_coeff() const { return vol_coeff_; }
  double orientation() const { return vol_coeff_ >= 0 ? +1.0 : -1.0; }

  /// Inner product induced on degree-k forms (Gram determinants of the
  /// inverse metric).
  double lambda_inner(const KForm& a, const KForm& b) const;

 private:
  LieAlgebra L_;
  Eigen::MatrixXd g_;
  Eigen::MatrixXd g_inv_;
  double vol_coeff_;
  KForm vol_;
};

double form_norm_sq(const MetricData& M, const KForm& a);

/// Hodge star: a ^ star(b) = <a, b> vol.
KForm hodge_star(const MetricData& M, const KForm& a);

/// Codifferential on degree-k forms in dimension m:
/// (-1)^{m(k+1)+1} star d star.
KForm codifferential(const MetricData& M, const KForm& a);

/// Hodge Laplacian d delta + delta d.
KForm hodge_laplacian(const MetricData& M, const KForm& a);

struct EigenformFit {
  double c;                  // <Laplacian a, a> / <a, a>
  double relative_residual;  // |Laplacian a - c a| / |a|
  bool is_eigenform;         // residual below 1e-8
};

/// Least-squares eigenvalue fit of the Laplacian on a nonzero form.
EigenformFit eigenform_fit(const MetricData& M, const KForm& a);

/// Ricci tensor of the left-invariant metric, as a bilinear form on the
/// coordinate basis.  Computed from the Koszul formula in an orthonormal
/// frame and transported back.
Eigen::MatrixXd ricci(const MetricData& M);

double scalar_curvature(const MetricData& M);

}  // namespace g2flow
