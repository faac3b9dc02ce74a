#include "g2flow/su3.hpp"

#include <cmath>

#include "g2flow/errors.hpp"
#include "g2flow/tolerance.hpp"

namespace g2flow {

struct SU3Structure::Built {
  KForm omega;
  KForm psi_plus;
  KForm psi_minus;
  KForm nu;
  Endomorphism J;
  std::shared_ptr<const MetricData> metric;
};

SU3Structure::SU3Structure(Built&& b)
    : omega_(std::move(b.omega)),
      psi_plus_(std::move(b.psi_plus)),
      psi_minus_(std::move(b.psi_minus)),
      nu_(std::move(b.nu)),
      J_(std::move(b.J)),
      metric_(std::move(b.metric)) {}

SU3Structure::Built SU3Structure::build(LieAlgebra L, KForm omega, KForm psi_plus) {
  const double tol = global_tolerance();
  if (L.dim() != 6)
    throw ValidationError("an SU(3)-structure needs a 6-dimensional algebra");
  if (omega.dim() != 6 || omega.degree() != 2)
    throw ValidationError("omega must be a 2-form in dimension 6");
  if (psi_plus.dim() != 6 || psi_plus.degree() != 3)
    throw ValidationError("psi_plus must be a 3-form in dimension 6");

  const KForm omega2 = wedge(omega, omega);
  const KForm omega3 = wedge(omega2, omega);
  const double vol6 = omega3.coeff(full_mask(6)) / 6.0;
  if (std::abs(vol6) <= tol)
    throw ValidationError("stability failure: omega^3 = 0 (omega is degenerate)");
  const KForm nu = (1.0 / 6.0) * omega3;

  const StabilityReport6 rep = stability_report(psi_plus, nu);
  if (!rep.J)
    throw ValidationError("stability failure: psi_plus is not stable of complex type (P = " +
                          std::to_string(rep.P) + ")");
  const Endomorphism J = *rep.J;

  const Eigen::MatrixXd J2 = J.matrix() * J.matrix() + Eigen::MatrixXd::Identity(6, 6);
  if (J2.cwiseAbs().maxCoeff() > 1e3 * tol)
    throw ValidationError("stability failure: induced J does not square to -Id");

  if (wedge(omega, psi_plus).max_abs_coeff() > tol * std::max(1.0, psi_plus.max_abs_coeff()))
    throw ValidationError("compatibility failure: omega ^ psi_plus != 0");

  const KForm psi_minus = full_action(J, psi_plus);
  const KForm norm_err = wedge(psi_plus, psi_minus) - (2.0 / 3.0) * omega3;
  if (norm_err.max_abs_coeff() > tol * std::max(1.0, std::abs(vol6)) * 10.0)
    throw ValidationError("normalization failure: psi_plus ^ psi_minus != (2/3) omega^3");

  // h = omega(., J.)
  const Eigen::MatrixXd Om = two_form_matrix(omega);
  Eigen::MatrixXd h = Om * J.matrix();
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e3 * tol)
    throw ValidationError("positivity failure: omega(., J.) is not symmetric");
  h = 0.5 * (h + h.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(h);
  if (llt.info() != Eigen::Success)
    throw ValidationError("positivity failure: omega(., J.) is not positive definite");

  auto metric = std::make_shared<const MetricData>(std::move(L), h, vol6 >= 0 ? +1.0 : -1.0);
  // The metric volume must agree with omega^3/6 up to tolerance.
  if (std::abs(metric->volume_coeff() - vol6) > 1e3 * tol * std::max(1.0, std::abs(vol6)))
    throw ValidationError("normalization failure: omega^3/6 differs from the metric volume");

  // Consistency of the Hodge duals fixed by the structure.
  if (max_abs_diff(hodge_star(*metric, omega), 0.5 * omega2) > 1e3 * tol)
    throw ValidationError("inconsistent structure: star(omega) != omega^2/2");
  if (max_abs_diff(hodge_star(*metric, psi_plus), psi_minus) > 1e3 * tol)
    throw ValidationError("inconsistent structure: star(psi_plus) != psi_minus");

  return Built{std::move(omega), std::move(psi_plus), psi_minus,
               nu, J, std::move(metric)};
}

SU3Structure::SU3Structure(LieAlgebra L, KForm omega, KForm psi_plus)
    : SU3Structure(build(std::move(L), std::move(omega), std::move(psi_plus))) {}

Eigen::MatrixXd two_form_matrix(const KForm& omega) {
  if (omega.degree() != 2)
    throw ValidationError("two_form_matrix needs a 2-form");
  const int n = omega.dim();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [mask, c] : omega.terms()) {
    const std::vector<int> ij = mask_to_indices(mask);
    M(ij[0] - 1, ij[1] - 1) = c;
    M(ij[1] - 1, ij[0] - 1) = -c;
  }
  return M;
}

std::vector<KForm> primitive_11_basis(const SU3Structure& S) {
  const std::vector<Mask> basis2 = masks_of_degree(6, 2);
  const int N = static_cast<int>(basis2.size());  // 15
  Eigen::MatrixXd C(N + 1, N);
  const KForm omega2 = wedge(S.omega(), S.omega());
  for (int c = 0; c < N; ++c) {
    const KForm e = KForm::from_vector(6, 2, basis2, Eigen::VectorXd::Unit(N, c));
    const KForm je = full_action(S.J(), e);
    for (int r = 0; r < N; ++r) C(r, c) = je.coeff(basis2[r]) - (r == c ? 1.0 : 0.0);
    C(N, c) = wedge(e, omega2).coeff(full_mask(6));
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(C);
  lu.setThreshold(1e-10);
  const Eigen::MatrixXd kernel = lu.kernel();
  if (kernel.cols() != 8)
    throw NumericError("primitive J-invariant 2-form space has unexpected dimension " +
                       std::to_string(kernel.cols()));
  std::vector<KForm> out;
  out.reserve(8);
  for (int c = 0; c < 8; ++c)
    out.push_back(KForm::from_vector(6, 2, basis2, kernel.col(c)));
  return out;
}

SU3Torsion torsion_forms(const SU3Structure& S) {
  const double tol = global_tolerance();
  const LieAlgebra& L = S.algebra();
  const MetricData& M = S.metric_data();

  const KForm dpsi = L.d(S.psi_plus());
  if (dpsi.max_abs_coeff() > tol)
    throw ValidationError("unsupported torsion class: d psi_plus != 0");

  const KForm domega = L.d(S.omega());
  KForm theta(6, 1);
  if (domega.max_abs_coeff() > tol) {
    theta = -0.5 * full_action(S.J(), codifferential(M, S.omega()));
    const double resid = max_abs_diff(domega, wedge(theta, S.omega()));
    if (resid > tol * std::max(1.0, domega.max_abs_coeff()) * 10.0)
      throw ValidationError("unsupported torsion class: d omega is not theta ^ omega");
  }

  // w2 from d psi_minus = w2 ^ omega over the primitive J-invariant space.
  const KForm dpsim = L.d(S.psi_minus());
  const std::vector<KForm> basis8 = primitive_11_basis(S);
  const std::vector<Mask> basis4 = masks_of_degree(6, 4);
  Eigen::MatrixXd A(static_cast<int>(basis4.size()), 8);
  for (int c = 0; c < 8; ++c)
    A.col(c) = wedge(basis8[c], S.omega()).to_vector(basis4);
  const Eigen::VectorXd b = dpsim.to_vector(basis4);
  const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
  const double resid = (A * x - b).cwiseAbs().maxCoeff();
  if (resid > tol * std::max(1.0, dpsim.max_abs_coeff()) * 10.0)
    throw ValidationError("unsupported torsion class: d psi_minus has no primitive solution");
  KForm w2(6, 2);
  for (int c = 0; c < 8; ++c) w2 = w2 + x[c] * basis8[c];

  SU3Torsion out{theta, w2, KForm(6, 3), false, form_norm_sq(M, w2)};
  out.symplectic_half_flat = domega.max_abs_coeff() <= tol;

  if (out.symplectic_half_flat) {
    // Cross-check: the codifferential of psi_plus recovers w2 directly.
    const KForm delta_psi = codifferential(M, S.psi_plus());
    if (max_abs_diff(delta_psi, w2) > 1e-8 * std::max(1.0, w2.max_abs_coeff()))
      throw NumericError("torsion cross-check failed: codifferential(psi_plus) != w2");
  }

  if (!w2.is_zero()) out.gamma = decompose_3form(S, L.d(w2)).gamma;
  return out;
}

ThreeFormSplit decompose_3form(const SU3Structure& S, const KForm& rho) {
  if (rho.dim() != 6 || rho.degree() != 3)
    throw ValidationError("decompose_3form needs a 3-form in dimension 6");
  const MetricData& M = S.metric_data();
  const double psi_sq = form_norm_sq(M, S.psi_plus());  // = 4 for normalized input
  ThreeFormSplit out{0.0, 0.0, KForm(6, 3), KForm(6, 1)};
  out.k_plus = M.lambda_inner(rho, S.psi_plus()) / psi_sq;
  out.k_minus = M.lambda_inner(rho, S.psi_minus()) / psi_sq;
  const KForm rest = rho - out.k_plus * S.psi_plus() - out.k_minus * S.psi_minus();

  // Least squares for the 1-form part in the h-inner product.
  Eigen::MatrixXd G(6, 6);
  Eigen::VectorXd rhs(6);
  std::vector<KForm> wedges;
  wedges.reserve(6);
  for (int i = 1; i <= 6; ++i)
    wedges.push_back(wedge(KForm::term(6, {i}), S.omega()));
  for (int i = 0; i < 6; ++i) {
    rhs[i] = M.lambda_inner(wedges[i], rest);
    for (int j = 0; j < 6; ++j) G(i, j) = M.lambda_inner(wedges[i], wedges[j]);
  }
  const Eigen::VectorXd beta = G.ldlt().solve(rhs);
  KForm beta_form(6, 1);
  {
    KForm::Terms t;
    for (int i = 0; i < 6; ++i)
      if (beta[i] != 0.0) t[1u << i] = beta[i];
    beta_form = KForm(6, 1, std::move(t));
  }
  out.beta = beta_form;
  out.gamma = rest - wedge(beta_form, S.omega());

  // The split must reproduce rho and gamma must be primitive.
  const double tol = 1e3 * global_tolerance() * std::max(1.0, rho.max_abs_coeff());
  if (wedge(out.gamma, S.omega()).max_abs_coeff() > tol ||
      wedge(out.gamma, S.psi_plus()).max_abs_coeff() > tol ||
      wedge(out.gamma, S.psi_minus()).max_abs_coeff() > tol)
    throw NumericError("3-form splitting left a non-primitive remainder");
  return out;
}

KForm project_omega8(const SU3Structure& S, const KForm& beta) {
  if (beta.dim() != 6 || beta.degree() != 2)
    throw ValidationError("project_omega8 needs a 2-form in dimension 6");
  const MetricData& M = S.metric_data();
  const std::vector<KForm> basis8 = primitive_11_basis(S);
  Eigen::MatrixXd G(8, 8);
  Eigen::VectorXd rhs(8);
  for (int i = 0; i < 8; ++i) {
    rhs[i] = M.lambda_inner(basis8[i], beta);
    for (int j = 0; j < 8; ++j) G(i, j) = M.lambda_inner(basis8[i], basis8[j]);
  }
  const Eigen::VectorXd x = G.ldlt().solve(rhs);
  KForm out(6, 2);
  for (int i = 0; i < 8; ++i) out = out + x[i] * basis8[i];
  return out;
}

double one_form_identity_residual(const SU3Structure& S, const KForm& beta) {
  if (beta.dim() != 6 || beta.degree() != 1)
    throw ValidationError("the 1-form identity battery needs a 1-form");
  const MetricData& M = S.metric_data();
  const KForm jbeta = full_action(S.J(), beta);
  const KForm omega2 = wedge(S.omega(), S.omega());
  const KForm s = hodge_star(M, wedge(beta, S.psi_minus()));
  const KForm t = hodge_star(M, wedge(beta, S.psi_plus()));

  Eigen::VectorXd sharp = Eigen::VectorXd::Zero(6);
  for (const auto& [mask, c] : beta.terms())
    sharp[std::countr_zero(mask)] = c;
  sharp = M.inverse_metric() * sharp;

  double r = 0.0;
  r = std::max(r, max_abs_diff(s, contract(sharp, S.psi_plus())));
  r = std::max(r, max_abs_diff(wedge(s, S.omega()), wedge(jbeta, S.psi_plus())));
  r = std::max(r, max_abs_diff(wedge(jbeta, S.psi_plus()), wedge(beta, S.psi_minus())));
  r = std::max(r, wedge(s, omega2).max_abs_coeff());
  r = std::max(r, max_abs_diff(wedge(s, S.psi_plus()), -wedge(t, S.psi_minus())));
  r = std::max(r, max_abs_diff(wedge(s, S.psi_plus()), wedge(beta, omega2)));
  r = std::max(r, max_abs_diff(wedge(beta, omega2), 2.0 * hodge_star(M, jbeta)));
  r = std::max(r, max_abs_diff(wedge(s, S.psi_minus()), wedge(t, S.psi_plus())));
  r = std::max(r, max_abs_diff(wedge(s, S.psi_minus()), -wedge(jbeta, omega2)));
  r = std::max(r, max_abs_diff(wedge(s, S.psi_minus()), 2.0 * hodge_star(M, beta)));
  return r;
}

}  // namespace g2flow
