#pragma once

#include <Eigen/Dense>
#include <optional>

#include "g2flow/kform.hpp"

namespace g2flow {

/// K(v) for a 3-form psi on a 6-dimensional space, relative to a chosen
/// volume form nu:  (i_v psi ^ psi) ^ alpha = alpha(K v) nu  for 1-forms
/// alpha.  Linear in psi squared, so quadratic overall.
Endomorphism k_map(const KForm& psi, const KForm& nu);

/// The quartic invariant P(psi) = tr(K^2)/6.  Stable negative orbit
/// (complex type) <=> P < 0.
double hitchin_quartic(const KForm& psi, const KForm& nu);

struct StabilityReport6 {
  double P = 0.0;
  bool stable = false;              // |P| above threshold
  std::optional<Endomorphism> J;    // set iff P < 0 (complex orbit)
};

StabilityReport6 stability_report(const KForm& psi, const KForm& nu);

/// J = K / sqrt(|P|); requires P < -1e-9.  Satisfies J^2 = -Id.
Endomorphism induced_complex_structure(const KForm& psi, const KForm& nu);

/// Metric data of a stable positive 3-form phi in dimension 7, from the
/// Hitchin bilinear form b(v, w) = (i_v phi ^ i_w phi ^ phi) / 6 valued in
/// top forms:  g = det(b)^{-1/9} b  with the signed ninth root, so both
/// orientations of the coordinate basis are admitted.
struct G2MetricData {
  Eigen::MatrixXd g;   // positive definite 7x7
  double vol;          // top-form coefficient, sign carries the orientation
  KForm star_phi;      // Hodge dual of phi for (g, vol)
};

/// Throws ValidationError("not in the positive orbit...") when the form is
/// unstable (|det b| below 1e-12) or the induced symmetric form is not
/// positive definite.
G2MetricData g2_metric(const KForm& phi);

}  // namespace g2flow
