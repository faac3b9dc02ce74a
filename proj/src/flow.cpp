#include "g2flow/flow.hpp"

#include <cmath>
#include <limits>

#include "g2flow/errors.hpp"
#include "g2flow/tolerance.hpp"

namespace g2flow {

namespace {

void check_flow_parameters(double a, double c, double n2) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw ValidationError("flow parameter a must be positive");
  if (!(c > 0.0) || !std::isfinite(c))
    throw ValidationError("flow parameter c must be positive");
  if (!(n2 > 0.0) || !std::isfinite(n2))
    throw ValidationError("flow parameter n2 must be positive");
}

constexpr double kDegenerateRel = 1e-12;

bool degenerate_exponent(double c, double n2) {
  return std::abs(6.0 * c - n2) <= kDegenerateRel * std::max(6.0 * c, n2);
}

}  // namespace

FlowScalars flow_scalars(double a, double c, double n2, double t) {
  check_flow_parameters(a, c, n2);
  FlowScalars out;
  if (degenerate_exponent(c, n2)) {
    // Continuous limit of the general formulas as 6c -> n2.
    out.extrapolated = true;
    out.f = a * std::exp(-n2 / 6.0 * t);
    out.df = -n2 / 6.0 * out.f;
    const double e = std::exp(c * t);
    out.k = (e - 1.0) / c;
    out.dk = e;
    return out;
  }
  const double q = (6.0 * c - n2) / 3.0;
  const double base = q * t + 1.0;
  if (!(base > 0.0))
    throw ValidationError("time outside the existence interval (t <= T)");
  const double p = n2 / (2.0 * n2 - 12.0 * c);  // = -n2 / (6 q)
  out.f = a * std::pow(base, p);
  out.df = a * p * q * std::pow(base, p - 1.0);
  const double r = 6.0 * c / n2;
  const double af = a / out.f;  // = base^{-p}
  const double afr = std::pow(af, r);
  out.k = (afr - 1.0) / c;
  out.dk = (r / c) * std::pow(af, r - 1.0) * (-a * out.df / (out.f * out.f));
  return out;
}

double scalar_ode_residual(double a, double c, double n2, double t) {
  const FlowScalars s = flow_scalars(a, c, n2, t);
  const double u = 1.0 + c * s.k;
  const double rf = s.df + (n2 / 6.0) * (a * a / s.f) / (u * u);
  const double rk = s.dk - (a * a / (s.f * s.f)) / u;
  return std::max(std::abs(rf), std::abs(rk));
}

double maximal_existence_time(double c, double n2) {
  check_flow_parameters(1.0, c, n2);
  if (degenerate_exponent(c, n2)) return -std::numeric_limits<double>::infinity();
  return 3.0 / (n2 - 6.0 * c);
}

ClosedFormFlow::ClosedFormFlow(SU3Structure S, double a)
    : S_(std::move(S)),
      L7_(S_.algebra().extend_by_line()),
      a_(a),
      c_(0.0),
      n2_(0.0),
      dw2_(6, 3),
      dw2_7_(7, 3) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw ValidationError("the warping width must be positive");
  const SU3Torsion T = torsion_forms(S_);
  if (!T.symplectic_half_flat)
    throw ValidationError("closed-form flow requires a symplectic half-flat structure");
  if (T.w2_minus.is_zero())
    throw ValidationError("torsion-free structure: the flow is stationary");
  const EigenformFit fit = eigenform_fit(S_.metric_data(), T.w2_minus);
  if (!fit.is_eigenform)
    throw ValidationError(
        "closed-form flow requires the torsion form to be a Laplace eigenform "
        "(relative residual " + std::to_string(fit.relative_residual) + ")");
  c_ = fit.c;
  n2_ = T.w2_norm_sq;
  if (c_ < n2_ / 4.0 - 1e-8 * std::max(1.0, n2_))
    throw NumericError("eigenvalue bound violated: c < n2/4");
  dw2_ = S_.algebra().d(T.w2_minus);
  dw2_7_ = embed(dw2_, 7);
}

double ClosedFormFlow::existence_time() const { return maximal_existence_time(c_, n2_); }

FlowScalars ClosedFormFlow::scalars(double t) const {
  return flow_scalars(a_, c_, n2_, t);
}

KForm ClosedFormFlow::omega_t(double t) const {
  return (a_ / scalars(t).f) * S_.omega();
}

KForm ClosedFormFlow::psi_plus_t(double t) const {
  return S_.psi_plus() + scalars(t).k * dw2_;
}

KForm ClosedFormFlow::phi(double t) const {
  const KForm e7 = KForm::term(7, {7});
  return wedge(embed(a_ * S_.omega(), 7), e7) + embed(psi_plus_t(t), 7);
}

SU3Structure ClosedFormFlow::su3(double t) const {
  return SU3Structure(S_.algebra(), omega_t(t), psi_plus_t(t));
}

G2Structure ClosedFormFlow::structure(double t) const {
  return G2Structure(L7_, phi(t));
}

double ClosedFormFlow::flow_residual(double t) const {
  const G2Structure G = structure(t);
  const G2Torsion T = g2_torsion(G);
  return max_abs_diff(scalars(t).dk * dw2_7_, T.laplacian_phi);
}

namespace {

Eigen::VectorXd laplacian_rhs(const LieAlgebra& L7, const std::vector<Mask>& basis,
                              const Eigen::VectorXd& y) {
  const KForm phi = KForm::from_vector(7, 3, basis, y);
  const G2MetricData md = g2_metric(phi);
  const MetricData M(L7, md.g, md.vol >= 0 ? +1.0 : -1.0);
  return L7.d(codifferential(M, phi)).to_vector(basis);
}

}  // namespace

FlowIntegration integrate_flow(const LieAlgebra& L7, const KForm& phi0, double t_end,
                               const std::vector<double>& sample_times,
                               const OdeOptions& opts) {
  if (L7.dim() != 7 || phi0.dim() != 7 || phi0.degree() != 3)
    throw ValidationError("the flow needs a 3-form on a 7-dimensional algebra");
  g2_metric(phi0);  // throws if the initial form is not stable
  if (L7.d(phi0).max_abs_coeff() > 1e-7)
    throw ValidationError("the flow needs a closed initial form");

  const std::vector<Mask> basis = masks_of_degree(7, 3);
  const Eigen::VectorXd y0 = phi0.to_vector(basis);

  auto rhs = [&](double, const Eigen::VectorXd& y) -> Eigen::VectorXd {
    try {
      return laplacian_rhs(L7, basis, y);
    } catch (const Error&) {
      // A trial stage left the open orbit; report a non-finite slope so the
      // integrator shrinks the step instead of aborting.
      return Eigen::VectorXd::Constant(y.size(),
                                       std::numeric_limits<double>::quiet_NaN());
    }
  };

  auto check = [&](double, const Eigen::VectorXd& y, std::string* why) -> bool {
    const KForm phi = KForm::from_vector(7, 3, basis, y);
    try {
      g2_metric(phi);
    } catch (const Error& e) {
      if (why) *why = std::string("stability lost: ") + e.what();
      return false;
    }
    const double closed = L7.d(phi).max_abs_coeff();
    if (closed > 1e-7) {
      if (why)
        *why = "closedness residual " + std::to_string(closed) + " exceeds 1e-7";
      return false;
    }
    return true;
  };

  const OdeResult r = integrate_rk45(rhs, 0.0, y0, t_end, opts, check, sample_times);

  FlowIntegration out{r.status, r.message, r.t, KForm::from_vector(7, 3, basis, r.y),
                      r.steps_accepted, r.steps_rejected, {}};
  out.samples.reserve(r.samples.size());
  for (const auto& s : r.samples)
    out.samples.push_back(flow_sample(L7, s.t, KForm::from_vector(7, 3, basis, s.y)));
  return out;
}

FlowSample flow_sample(const LieAlgebra& L7, double t, KForm phi) {
  FlowSample fs{t, std::move(phi), 0.0, 0.0, 0.0};
  fs.closedness_residual = L7.d(fs.phi).max_abs_coeff();
  try {
    const G2Structure G(L7, fs.phi);
    fs.det_g = G.metric().determinant();
    fs.tau_norm_sq = g2_torsion(G).norm_sq;
  } catch (const Error&) {
    fs.det_g = std::numeric_limits<double>::quiet_NaN();
    fs.tau_norm_sq = std::numeric_limits<double>::quiet_NaN();
  }
  return fs;
}

double selfsimilar_scale(double lambda, double t) {
  const double base = 1.0 + (2.0 / 3.0) * lambda * t;
  if (!(base > 0.0))
    throw ValidationError("time outside the self-similar existence interval");
  return std::pow(base, 1.5);
}

Eigen::Vector2d diagonal_family_rhs(const Eigen::Vector2d& v) {
  const double v1 = v[0], v4 = v[1];
  const double v1_6 = std::pow(v1, 6.0);
  const double v1_12 = v1_6 * v1_6;
  Eigen::Vector2d out;
  out[0] = (2.0 - v1_12) / (3.0 * std::pow(v1, 5.0) * v4 * v4);
  out[1] = (2.0 / 3.0) * (1.0 + v1_12) / (v1_6 * v4);
  return out;
}

KForm diagonal_family_phi(const Eigen::Vector2d& v) {
  const double v1 = v[0], v4 = v[1];
  const double u = std::pow(v1, 4.0) * v4 * v4;
  const double w = (v4 / v1) * (v4 / v1);
  KForm::Terms t;
  t[mask_from_indices({1, 4, 7}, 7)] = 1.0;
  t[mask_from_indices({2, 3, 7}, 7)] = 1.0;
  t[mask_from_indices({5, 6, 7}, 7)] = 1.0;
  t[mask_from_indices({1, 2, 5}, 7)] = 1.0;
  t[mask_from_indices({1, 3, 6}, 7)] = -u;
  t[mask_from_indices({2, 4, 6}, 7)] = u;
  t[mask_from_indices({3, 4, 5}, 7)] = w;
  return KForm(7, 3, std::move(t));
}

LieAlgebra diagonal_family_algebra() {
  return parse_structure_equations("(e16+e35,-e26+e45,e36,-e46,0,0)")
      .extend_by_line();
}

OdeResult integrate_diagonal_family(double t_end, const std::vector<double>& sample_times,
                                    const OdeOptions& opts) {
  auto rhs = [](double, const Eigen::VectorXd& y) -> Eigen::VectorXd {
    return diagonal_family_rhs(Eigen::Vector2d(y[0], y[1]));
  };
  return integrate_rk45(rhs, 0.0, Eigen::Vector2d(1.0, 1.0), t_end, opts, {},
                        sample_times);
}

}  // namespace g2flow
