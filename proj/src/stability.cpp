#include "g2flow/stability.hpp"

#include <cmath>

#include "g2flow/errors.hpp"
#include "g2flow/lie_algebra.hpp"
#include "g2flow/metric_ops.hpp"
#include "g2flow/tolerance.hpp"

namespace g2flow {

namespace {

constexpr double kStabilityThreshold = 1e-9;   // on |P|
constexpr double kDetThreshold = 1e-12;        // on |det b|

void check_psi_nu(const KForm& psi, const KForm& nu) {
  if (psi.dim() != 6 || psi.degree() != 3)
    throw ValidationError("stability analysis needs a 3-form in dimension 6");
  if (nu.dim() != 6 || nu.degree() != 6)
    throw ValidationError("the reference volume must be a 6-form");
  if (std::abs(nu.coeff(full_mask(6))) <= global_tolerance())
    throw ValidationError("the reference volume form vanishes");
}

}  // namespace

Endomorphism k_map(const KForm& psi, const KForm& nu) {
  check_psi_nu(psi, nu);
  const double nu_coeff = nu.coeff(full_mask(6));
  Eigen::MatrixXd K(6, 6);
  for (int i = 0; i < 6; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(6);
    v[i] = 1.0;
    const KForm rho = wedge(contract(v, psi), psi);  // 5-form
    for (int j = 0; j < 6; ++j) {
      // rho ^ e^j = K(e_i)^j nu
      const Mask mj = 1u << j;
      const Mask rest = full_mask(6) & ~mj;
      K(j, i) = rho.coeff(rest) * merge_sign(rest, mj) / nu_coeff;
    }
  }
  return Endomorphism(std::move(K));
}

double hitchin_quartic(const KForm& psi, const KForm& nu) {
  const Eigen::MatrixXd K = k_map(psi, nu).matrix();
  return (K * K).trace() / 6.0;
}

StabilityReport6 stability_report(const KForm& psi, const KForm& nu) {
  StabilityReport6 rep;
  const Eigen::MatrixXd K = k_map(psi, nu).matrix();
  rep.P = (K * K).trace() / 6.0;
  rep.stable = std::abs(rep.P) > kStabilityThreshold;
  if (rep.P < -kStabilityThreshold)
    rep.J = Endomorphism(K / std::sqrt(-rep.P));
  return rep;
}

Endomorphism induced_complex_structure(const KForm& psi, const KForm& nu) {
  StabilityReport6 rep = stability_report(psi, nu);
  if (!rep.J)
    throw ValidationError(
        "3-form is not stable of complex type: P(psi) = " + std::to_string(rep.P));
  return *std::move(rep.J);
}

G2MetricData g2_metric(const KForm& phi) {
  if (phi.dim() != 7 || phi.degree() != 3)
    throw ValidationError("the metric construction needs a 3-form in dimension 7");
  const Mask top = full_mask(7);
  Eigen::MatrixXd B(7, 7);
  std::vector<KForm> contractions;
  contractions.reserve(7);
  for (int i = 0; i < 7; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(7);
    v[i] = 1.0;
    contractions.push_back(contract(v, phi));
  }
  for (int i = 0; i < 7; ++i)
    for (int j = i; j < 7; ++j) {
      const double c = wedge(wedge(contractions[i], contractions[j]), phi).coeff(top) / 6.0;
      B(i, j) = c;
      B(j, i) = c;
    }
  const double det = B.determinant();
  if (std::abs(det) < kDetThreshold)
    throw ValidationError("not in the positive orbit: the 3-form is unstable");
  const double root = std::cbrt(std::cbrt(det));  // signed ninth root
  Eigen::MatrixXd g = B / root;
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success)
    throw ValidationError("not in the positive orbit: induced form is not positive definite");
  // Hodge dual through a throwaway abelian algebra: the star is metric-only.
  std::vector<KForm> zero_duals(7, KForm(7, 2));
  MetricData M(LieAlgebra(std::move(zero_duals)), g, root >= 0 ? +1.0 : -1.0);
  return G2MetricData{std::move(g), root, hodge_star(M, phi)};
}

}  // namespace g2flow
