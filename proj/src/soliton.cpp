#include "g2flow/soliton.hpp"

#include <cmath>

#include "g2flow/errors.hpp"
#include "g2flow/metric_ops.hpp"
#include "g2flow/su3.hpp"

namespace g2flow {

double derivation_residual(const LieAlgebra& L, const Eigen::MatrixXd& D) {
  const int n = L.dim();
  if (D.rows() != n || D.cols() != n)
    throw ValidationError("derivation candidate has the wrong dimensions");
  double worst = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const Eigen::VectorXd lhs = D * L.bracket(i, j);
      const Eigen::VectorXd rhs =
          L.bracket(Eigen::VectorXd(D.col(i - 1)), Eigen::VectorXd::Unit(n, j - 1)) +
          L.bracket(Eigen::VectorXd::Unit(n, i - 1), Eigen::VectorXd(D.col(j - 1)));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double soliton_residual(const G2Structure& G, double lambda, const Eigen::MatrixXd& D) {
  const KForm lap = g2_torsion(G).laplacian_phi;
  const KForm resid =
      lap - lambda * G.phi() - derivation_action(Endomorphism(D), G.phi());
  return resid.coeff_norm() / G.phi().coeff_norm();
}

double soliton_relation_residual(const SU3Structure& S, double lambda) {
  const SU3Torsion T = torsion_forms(S);
  const EigenformFit fit = eigenform_fit(S.metric_data(), T.w2_minus);
  if (!fit.is_eigenform)
    throw ValidationError("the torsion form is not a Laplace eigenform");
  return std::abs(2.0 * lambda - (6.0 * fit.c - T.w2_norm_sq));
}

std::string soliton_type(double lambda) {
  if (lambda > 0.0) return "expanding";
  if (lambda < 0.0) return "shrinking";
  return "steady";
}

std::vector<Eigen::MatrixXd> symmetric_derivations(const LieAlgebra& L) {
  const int n = L.dim();
  const int nn = n * n;
  // Unknown D as a flattened n x n matrix (column major): rows for the
  // derivation equations on all basis pairs, plus symmetry D = D^T.
  const int pairs = n * (n - 1) / 2;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(pairs * n + pairs, nn);
  int row = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Eigen::VectorXd bij = L.bracket(i + 1, j + 1);
      // component k of: D [e_i, e_j] - [D e_i, e_j] - [e_i, D e_j]
      for (int k = 0; k < n; ++k, ++row) {
        for (int m = 0; m < n; ++m) {
          A(row, k + n * m) += bij[m];  // (D bij)_k picks D(k, m)
          // -[D e_i, e_j]_k = -sum_m D(m, i) [e_m, e_j]_k
          A(row, m + n * i) -= L.bracket(m + 1, j + 1)[k];
          // -[e_i, D e_j]_k = -sum_m D(m, j) [e_i, e_m]_k
          A(row, m + n * j) -= L.bracket(i + 1, m + 1)[k];
        }
      }
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++row) {
      A(row, i + n * j) = 1.0;
      A(row, j + n * i) = -1.0;
    }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  lu.setThreshold(1e-10);
  const Eigen::MatrixXd kernel = lu.kernel();
  std::vector<Eigen::MatrixXd> out;
  if (lu.dimensionOfKernel() == 0) return out;
  out.reserve(kernel.cols());
  for (int c = 0; c < kernel.cols(); ++c) {
    Eigen::MatrixXd D = Eigen::Map<const Eigen::MatrixXd>(kernel.col(c).data(), n, n);
    D = 0.5 * (D + D.transpose());  // kill roundoff asymmetry
    out.push_back(D);
  }
  return out;
}

SolitonSearch best_soliton_fit(const G2Structure& G) {
  const KForm lap = g2_torsion(G).laplacian_phi;
  const std::vector<Eigen::MatrixXd> ders = symmetric_derivations(G.algebra());
  const std::vector<Mask> basis = masks_of_degree(7, 3);

  const int cols = static_cast<int>(ders.size()) + 1;
  Eigen::MatrixXd A(static_cast<int>(basis.size()), cols);
  A.col(0) = G.phi().to_vector(basis);
  for (std::size_t j = 0; j < ders.size(); ++j)
    A.col(static_cast<int>(j) + 1) =
        derivation_action(Endomorphism(ders[j]), G.phi()).to_vector(basis);
  const Eigen::VectorXd b = lap.to_vector(basis);
  const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);

  SolitonSearch out;
  out.derivation_space_dim = static_cast<int>(ders.size());
  out.lambda = x[0];
  out.D = Eigen::MatrixXd::Zero(7, 7);
  for (std::size_t j = 0; j < ders.size(); ++j)
    out.D += x[static_cast<int>(j) + 1] * ders[j];
  out.residual = (A * x - b).norm() / G.phi().coeff_norm();
  return out;
}

}  // namespace g2flow
