#include "g2flow/g2warp.hpp"

#include <cmath>

#include "g2flow/errors.hpp"
#include "g2flow/tolerance.hpp"

namespace g2flow {

struct G2Structure::Built {
  KForm phi;
  KForm star_phi;
  std::shared_ptr<const MetricData> metric;
};

G2Structure::G2Structure(Built&& b)
    : phi_(std::move(b.phi)),
      star_phi_(std::move(b.star_phi)),
      metric_(std::move(b.metric)) {}

G2Structure::Built G2Structure::build(LieAlgebra L, KForm phi) {
  if (L.dim() != 7)
    throw ValidationError("a G2-structure needs a 7-dimensional algebra");
  if (phi.dim() != 7 || phi.degree() != 3)
    throw ValidationError("phi must be a 3-form in dimension 7");
  G2MetricData md = g2_metric(phi);
  auto metric = std::make_shared<const MetricData>(std::move(L), md.g,
                                                   md.vol >= 0 ? +1.0 : -1.0);
  return Built{std::move(phi), std::move(md.star_phi), std::move(metric)};
}

G2Structure::G2Structure(LieAlgebra L, KForm phi)
    : G2Structure(build(std::move(L), std::move(phi))) {}

bool G2Structure::is_closed() const {
  return algebra().d(phi_).max_abs_coeff() <= global_tolerance();
}

G2Structure build_warped(const SU3Structure& S, double a) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw ValidationError("the warping width must be positive");
  LieAlgebra L7 = S.algebra().extend_by_line();
  const KForm e7 = KForm::term(7, {7});
  const KForm phi = wedge(embed(a * S.omega(), 7), e7) + embed(S.psi_plus(), 7);
  G2Structure G(std::move(L7), phi);

  // The Hitchin metric of phi must be the warped product h + a^2 e7 (x) e7.
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(7, 7);
  expected.topLeftCorner(6, 6) = S.h();
  expected(6, 6) = a * a;
  if ((G.metric() - expected).cwiseAbs().maxCoeff() >
      1e3 * global_tolerance() * std::max(1.0, a * a))
    throw NumericError("warped structure does not induce the product metric");
  return G;
}

G2Torsion g2_torsion(const G2Structure& G) {
  const double tol = global_tolerance();
  const LieAlgebra& L = G.algebra();
  const MetricData& M = G.metric_data();
  if (L.d(G.phi()).max_abs_coeff() > tol)
    throw ValidationError("torsion 2-form requires a closed structure");

  const KForm tau = codifferential(M, G.phi());
  const double scale = std::max(1.0, tau.max_abs_coeff());

  // tau must reproduce the exterior derivative of the dual 4-form ...
  if (max_abs_diff(L.d(G.star_phi()), wedge(tau, G.phi())) > 1e3 * tol * scale)
    throw NumericError("torsion cross-check failed: d(star phi) != tau ^ phi");
  // ... and be primitive in the 14-dimensional sense.
  if (wedge(tau, G.star_phi()).max_abs_coeff() > 1e3 * tol * scale)
    throw NumericError("torsion cross-check failed: tau ^ star phi != 0");

  G2Torsion out{tau, form_norm_sq(M, tau), Eigen::MatrixXd(), L.d(tau)};
  const Eigen::MatrixXd T = two_form_matrix(tau);
  out.tau_tilde = T * M.inverse_metric() * T;
  return out;
}

Eigen::MatrixXd metric_flow_rhs(const G2Structure& G) {
  const G2Torsion T = g2_torsion(G);
  const Eigen::MatrixXd Ric = ricci(G.metric_data());
  return -2.0 * Ric - (T.norm_sq / 3.0) * G.metric() - T.tau_tilde;
}

KForm warped_torsion_2form(const SU3Structure& S, const SU3Torsion& T, double a) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw ValidationError("the warping width must be positive");
  const KForm e7 = KForm::term(7, {7});
  const KForm star_tp = hodge_star(S.metric_data(), wedge(T.theta, S.psi_minus()));
  const KForm jtheta = full_action(S.J(), T.theta);
  return embed(T.w2_minus + star_tp, 7) + wedge(embed(2.0 * a * jtheta, 7), e7);
}

}  // namespace g2flow
