#pragma once

#include <Eigen/Dense>
#include <initializer_list>
#include <map>
#include <string>

#include "g2flow/multi_index.hpp"

namespace g2flow {

/// A linear endomorphism of R^n, n <= 8; columns are images of basis vectors.
class Endomorphism {
 public:
  explicit Endomorphism(Eigen::MatrixXd m);
  static Endomorphism identity(int dim);
  static Endomorphism diagonal(const Eigen::VectorXd& d);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXd& matrix() const { return mat_; }

 private:
  Eigen::MatrixXd mat_;
};

/// Alternating k-form on R^n (n <= 8) with real coefficients over strictly
/// increasing multi-indices.  Values are immutable once constructed; all
/// arithmetic produces new forms and prunes coefficients below the global
/// tolerance.  A degree larger than the dimension is permitted only for the
/// identically zero form (it arises from wedge products that overflow the
/// top degree).
class KForm {
 public:
  using Terms = std::map<Mask, double, MaskLexLess>;

  KForm(int dim, int degree);                // zero form
  KForm(int dim, int degree, Terms terms);   // canonicalizes and prunes

  /// c * e^{i1...ik} with strictly increasing 1-based indices.
  static KForm term(int dim, std::initializer_list<int> indices, double c = 1.0);
  static KForm constant(int dim, double value);  // degree 0

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  double coeff(Mask m) const;
  double coeff(std::initializer_list<int> indices) const;

  double max_abs_coeff() const;
  /// Euclidean norm of the coefficient vector (no metric involved).
  double coeff_norm() const;

  Eigen::VectorXd to_vector(const std::vector<Mask>& basis) const;
  static KForm from_vector(int dim, int degree, const std::vector<Mask>& basis,
                           const Eigen::VectorXd& coeffs);

  /// Human-readable rendering, e.g. "2*e14 - e23"; "0" for the zero form.
  std::string str() const;

  KForm operator-() const;

 private:
  int dim_;
  int degree_;
  Terms terms_;
};

KForm operator+(const KForm& a, const KForm& b);
KForm operator-(const KForm& a, const KForm& b);
KForm operator*(double s, const KForm& a);
KForm operator*(const KForm& a, double s);

/// Exterior product.  Degrees add; if they exceed the dimension the result
/// is the zero form of that (overflowing) degree.
KForm wedge(const KForm& a, const KForm& b);

/// Interior product i_v a: insertion of the vector v into the first slot.
/// Requires deg(a) >= 1.
KForm contract(const Eigen::VectorXd& v, const KForm& a);

/// Pullback a(A., ..., A.): every slot composed with A.
KForm full_action(const Endomorphism& A, const KForm& a);

/// Derivation action sum_i a(., ..., A., ..., .): A applied to one slot at
/// a time.  For A = c*Id this is (c*k)*a on degree-k forms.
KForm derivation_action(const Endomorphism& A, const KForm& a);

double max_abs_diff(const KForm& a, const KForm& b);
bool approx_equal(const KForm& a, const KForm& b, double tol = -1.0);

/// The same form viewed on a larger space (new_dim >= dim): coefficients and
/// multi-indices carry over unchanged.
KForm embed(const KForm& a, int new_dim);

}  // namespace g2flow
