#include "g2flow/metric_ops.hpp"

#include <cmath>

#include "g2flow/errors.hpp"
#include "g2flow/tolerance.hpp"

namespace g2flow {

namespace {

/// det of the submatrix of A with rows/cols given by two index masks.
double masked_det(const Eigen::MatrixXd& A, Mask rows, Mask cols) {
  const std::vector<int> I = mask_to_indices(rows);
  const std::vector<int> J = mask_to_indices(cols);
  const int k = static_cast<int>(I.size());
  switch (k) {
    case 0:
      return 1.0;
    case 1:
      return A(I[0] - 1, J[0] - 1);
    case 2:
      return A(I[0] - 1, J[0] - 1) * A(I[1] - 1, J[1] - 1) -
             A(I[0] - 1, J[1] - 1) * A(I[1] - 1, J[0] - 1);
    default: {
      Eigen::MatrixXd sub(k, k);
      for (int r = 0; r < k; ++r)
        for (int s = 0; s < k; ++s) sub(r, s) = A(I[r] - 1, J[s] - 1);
      return sub.determinant();
    }
  }
}

}  // namespace

MetricData::MetricData(LieAlgebra L, Eigen::MatrixXd g, double orientation)
    : L_(std::move(L)), g_(std::move(g)), vol_(L_.dim(), L_.dim()) {
  const int n = L_.dim();
  if (g_.rows() != n || g_.cols() != n)
    throw ValidationError("metric matrix does not match algebra dimension");
  if ((g_ - g_.transpose()).cwiseAbs().maxCoeff() > global_tolerance())
    throw ValidationError("metric matrix must be symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(g_);
  if (llt.info() != Eigen::Success)
    throw ValidationError("metric matrix must be positive definite");
  g_inv_ = llt.solve(Eigen::MatrixXd::Identity(n, n));
  const double sign = (orientation >= 0.0) ? +1.0 : -1.0;
  vol_coeff_ = sign * std::sqrt(g_.determinant());
  KForm::Terms t;
  t[full_mask(n)] = vol_coeff_;
  vol_ = KForm(n, n, std::move(t));
}

double MetricData::lambda_inner(const KForm& a, const KForm& b) const {
  if (a.dim() != dim() || b.dim() != dim() || a.degree() != b.degree())
    throw ValidationError("inner product needs forms of equal dimension and degree");
  double acc = 0.0;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      acc += ca * cb * masked_det(g_inv_, ma, mb);
  return acc;
}

double form_norm_sq(const MetricData& M, const KForm& a) {
  return M.lambda_inner(a, a);
}

KForm hodge_star(const MetricData& M, const KForm& a) {
  const int n = M.dim();
  if (a.dim() != n) throw ValidationError("form does not live on this metric's algebra");
  const int k = a.degree();
  if (k > n) return KForm(n, 0);  // zero form of complementary (clamped) degree
  const double v = M.volume_coeff();
  const std::vector<Mask> all = masks_of_degree(n, k);
  KForm::Terms t;
  for (Mask mj : all) {
    double inner = 0.0;
    for (const auto& [mi, ci] : a.terms())
      inner += ci * masked_det(M.inverse_metric(), mi, mj);
    if (inner == 0.0) continue;
    t[full_mask(n) & ~mj] += v * inner * complement_sign(mj, n);
  }
  return KForm(n, n - k, std::move(t));
}

KForm codifferential(const MetricData& M, const KForm& a) {
  const int m = M.dim();
  const int k = a.degree();
  if (k == 0) return KForm(m, 0);
  const int exponent = m * (k + 1) + 1;
  const double sign = (exponent % 2 == 0) ? 1.0 : -1.0;
  return sign * hodge_star(M, M.algebra().d(hodge_star(M, a)));
}

KForm hodge_laplacian(const MetricData& M, const KForm& a) {
  const LieAlgebra& L = M.algebra();
  KForm out = codifferential(M, L.d(a));
  if (a.degree() > 0) out = out + L.d(codifferential(M, a));
  return out;
}

EigenformFit eigenform_fit(const MetricData& M, const KForm& a) {
  const double denom = form_norm_sq(M, a);
  if (denom <= global_tolerance())
    throw NumericError("eigenform fit requires a nonzero form");
  const KForm lap = hodge_laplacian(M, a);
  const double c = M.lambda_inner(lap, a) / denom;
  const KForm resid = lap - c * a;
  const double rel = std::sqrt(std::max(0.0, form_norm_sq(M, resid)) / denom);
  return EigenformFit{c, rel, rel < 1e-8};
}

Eigen::MatrixXd ricci(const MetricData& M) {
  const int n = M.dim();
  const LieAlgebra& L = M.algebra();

  // Orthonormal frame f_a = T e_a with T^t g T = Id (T from Cholesky).
  const Eigen::LLT<Eigen::MatrixXd> llt(M.metric());
  const Eigen::MatrixXd Lc = llt.matrixL();
  const Eigen::MatrixXd T =
      Lc.transpose().triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(n, n));
  const Eigen::MatrixXd T_inv = Lc.transpose();

  // Structure constants in the orthonormal frame.
  std::vector<Eigen::MatrixXd> cbar(n, Eigen::MatrixXd::Zero(n, n));  // cbar[c](a,b)
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const Eigen::VectorXd w = T_inv * L.bracket(T.col(a), T.col(b));
      for (int c = 0; c < n; ++c) {
        cbar[c](a, b) = w[c];
        cbar[c](b, a) = -w[c];
      }
    }

  // Koszul formula with constant inner products:
  // 2 <grad_{f_a} f_b, f_c> = <[f_a,f_b],f_c> - <[f_b,f_c],f_a> + <[f_c,f_a],f_b>.
  std::vector<Eigen::MatrixXd> gamma(n, Eigen::MatrixXd::Zero(n, n));  // gamma[c](a,b)
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        gamma[c](a, b) =
            0.5 * (cbar[c](a, b) - cbar[a](b, c) + cbar[b](c, a));

  // Ric(f_b, f_c) = sum_a <R(f_a, f_b) f_c, f_a>.
  Eigen::MatrixXd ric_f = Eigen::MatrixXd::Zero(n, n);
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      double acc = 0.0;
      for (int a = 0; a < n; ++a)
        for (int e = 0; e < n; ++e)
          acc += gamma[e](b, c) * gamma[a](a, e) - gamma[e](a, c) * gamma[a](b, e) -
                 cbar[e](a, b) * gamma[a](e, c);
      ric_f(b, c) = acc;
    }

  // Transport back to the coordinate basis as a bilinear form.
  return T_inv.transpose() * ric_f * T_inv;
}

double scalar_curvature(const MetricData& M) {
  return (M.inverse_metric() * ricci(M)).trace();
}

}  // namespace g2flow
