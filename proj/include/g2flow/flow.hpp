#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "g2flow/g2warp.hpp"
#include "g2flow/kform.hpp"
#include "g2flow/ode.hpp"
#include "g2flow/su3.hpp"

namespace g2flow {

/// Scalars of the closed-form solution of the warped Laplacian flow with
/// initial width a, torsion eigenvalue c and squared torsion norm n2:
///   f(t) = a ((6c - n2)/3 t + 1)^{n2/(2 n2 - 12 c)},
///   k(t) = (1/c) ((a/f(t))^{6c/n2} - 1),
/// together with their analytic t-derivatives.  When 6c = n2 the exponent
/// degenerates; the continuous limit f = a exp(-n2 t/6), k = (exp(ct)-1)/c
/// is returned with `extrapolated` set (no geometric example reaches it:
/// the eigenvalue bound c >= n2/4 forces 6c > n2).
struct FlowScalars {
  double f = 0.0;
  double df = 0.0;
  double k = 0.0;
  double dk = 0.0;
  bool extrapolated = false;
};

FlowScalars flow_scalars(double a, double c, double n2, double t);

/// Residual of (f, k) from flow_scalars in the governing ODE pair
///   df/dt = -(n2/6)(a^2/f)(1 + c k)^{-2},
///   dk/dt = (a^2/f^2)(1 + c k)^{-1}.
double scalar_ode_residual(double a, double c, double n2, double t);

/// Lower end T = 3/(n2 - 6c) of the existence interval (T, +inf); negative
/// for every admissible pair, -inf when 6c = n2.
double maximal_existence_time(double c, double n2);

/// The closed-form Laplacian flow of a warped structure built from a
/// symplectic half-flat SU(3)-structure whose torsion form w2 is an
/// eigenform of the Hodge Laplacian:
///   phi(t) = a omega ^ e7 + psi_plus + k(t) d w2
/// with the underlying data evolving as omega(t) = (a/f) omega and
/// psi_plus(t) = psi_plus + k(t) d w2 at warping width f(t).
class ClosedFormFlow {
 public:
  ClosedFormFlow(SU3Structure S, double a);

  const SU3Structure& initial() const { return S_; }
  double width() const { return a_; }
  double eigenvalue() const { return c_; }
  double torsion_norm_sq() const { return n2_; }
  double existence_time() const;  // T < 0

  FlowScalars scalars(double t) const;
  KForm omega_t(double t) const;     // (a/f) omega, dimension 6
  KForm psi_plus_t(double t) const;  // psi_plus + k d w2, dimension 6
  KForm phi(double t) const;         // dimension 7
  SU3Structure su3(double t) const;
  G2Structure structure(double t) const;

  /// Max coefficient of d/dt phi(t) - Laplacian_{phi(t)} phi(t), using the
  /// analytic derivative k'(t) d w2.
  double flow_residual(double t) const;

 private:
  SU3Structure S_;
  LieAlgebra L7_;
  double a_;
  double c_;
  double n2_;
  KForm dw2_;    // d w2 on the 6-dimensional algebra
  KForm dw2_7_;  // the same form on the extended algebra
};

/// One sampled state of a numeric flow trajectory.
struct FlowSample {
  double t = 0.0;
  KForm phi;
  double closedness_residual = 0.0;
  double det_g = 0.0;
  double tau_norm_sq = 0.0;
};

struct FlowIntegration {
  OdeStatus status = OdeStatus::Completed;
  std::string message;
  double t_end = 0.0;  // last accepted time
  KForm phi_end;
  long steps_accepted = 0;
  long steps_rejected = 0;
  std::vector<FlowSample> samples;
};

/// Numeric Laplacian flow d/dt phi = Laplacian_phi phi on the 35-dimensional
/// space of 3-forms of a 7-dimensional algebra, integrated by adaptive
/// RK4(5).  The initial form must be stable and closed.  Every accepted step
/// re-verifies stability and monitors the closedness residual (bound 1e-7);
/// violation halts the trajectory with a status instead of throwing.
FlowIntegration integrate_flow(const LieAlgebra& L7, const KForm& phi0, double t_end,
                               const std::vector<double>& sample_times = {},
                               const OdeOptions& opts = {});

/// Bundles a state with its diagnostics (closedness residual, metric
/// determinant, squared torsion norm); the latter two are NaN if the form
/// has left the open orbit.
FlowSample flow_sample(const LieAlgebra& L7, double t, KForm phi);

/// Scale factor rho(t) = (1 + (2/3) lambda t)^{3/2} of the self-similar
/// solution generated by a soliton with constant lambda; defined while
/// 1 + (2/3) lambda t > 0.
double selfsimilar_scale(double lambda, double t);

/// A two-parameter diagonal family on the algebra
///   (e16 + e35, -e26 + e45, e36, -e46, 0, 0) extended by a line:
///   phi(v) = e147 + e237 + e567 + e125 - v1^4 v4^2 e136 + v1^4 v4^2 e246
///            + (v4/v1)^2 e345,
/// preserved by the Laplacian flow, which reduces on it to
///   dv1/dt = (2 - v1^12)/(3 v1^5 v4^2),
///   dv4/dt = (2/3)(1 + v1^12)/(v1^6 v4).
Eigen::Vector2d diagonal_family_rhs(const Eigen::Vector2d& v);
KForm diagonal_family_phi(const Eigen::Vector2d& v);
LieAlgebra diagonal_family_algebra();

/// Integrates the reduced system from v(0) = (1, 1).
OdeResult integrate_diagonal_family(double t_end,
                                    const std::vector<double>& sample_times = {},
                                    const OdeOptions& opts = {});

}  // namespace g2flow
