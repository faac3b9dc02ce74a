#include "g2flow/kform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "g2flow/errors.hpp"
#include "g2flow/tolerance.hpp"

namespace g2flow {

namespace {

constexpr int kMaxDim = 8;

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim)
    throw ValidationError("form dimension must be in 1.." + std::to_string(kMaxDim) +
                          ", got " + std::to_string(dim));
}

/// Formats a double with enough digits to round-trip.
std::string format_number(double x) {
  if (x == std::floor(x) && std::abs(x) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", x);
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::vector<int> mask_to_indices(Mask m) {
  std::vector<int> out;
  while (m != 0) {
    out.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return out;
}

Mask mask_from_indices(const std::vector<int>& idx, int dim) {
  check_dim(dim);
  Mask m = 0;
  int prev = 0;
  for (int i : idx) {
    if (i <= prev)
      throw ValidationError("multi-index must be strictly increasing");
    if (i < 1 || i > dim)
      throw ValidationError("index " + std::to_string(i) + " out of range 1.." +
                            std::to_string(dim));
    m |= 1u << (i - 1);
    prev = i;
  }
  return m;
}

std::vector<Mask> masks_of_degree(int dim, int k) {
  check_dim(dim);
  std::vector<Mask> out;
  if (k < 0 || k > dim) return out;
  // Walk increasing tuples in lexicographic order.
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i + 1;
  while (true) {
    Mask m = 0;
    for (int i : idx) m |= 1u << (i - 1);
    out.push_back(m);
    if (k == 0) break;
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == dim - (k - 1 - pos)) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

Endomorphism::Endomorphism(Eigen::MatrixXd m) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols())
    throw ValidationError("endomorphism matrix must be square");
  if (mat_.rows() < 1 || mat_.rows() > kMaxDim)
    throw ValidationError("endomorphism dimension must be in 1..8");
  if (!mat_.allFinite())
    throw ValidationError("endomorphism matrix has non-finite entries");
}

Endomorphism Endomorphism::identity(int dim) {
  return Endomorphism(Eigen::MatrixXd::Identity(dim, dim));
}

Endomorphism Endomorphism::diagonal(const Eigen::VectorXd& d) {
  return Endomorphism(Eigen::MatrixXd(d.asDiagonal()));
}

KForm::KForm(int dim, int degree) : dim_(dim), degree_(degree) {
  check_dim(dim);
  if (degree < 0 || degree > 2 * kMaxDim)
    throw ValidationError("form degree out of range");
}

KForm::KForm(int dim, int degree, Terms terms) : KForm(dim, degree) {
  const double tol = global_tolerance();
  for (auto it = terms.begin(); it != terms.end();) {
    if (mask_degree(it->first) != degree)
      throw ValidationError("term degree does not match form degree");
    if ((it->first & ~full_mask(dim)) != 0)
      throw ValidationError("term index exceeds form dimension");
    if (!std::isfinite(it->second))
      throw ValidationError("non-finite form coefficient");
    if (std::abs(it->second) < tol)
      it = terms.erase(it);
    else
      ++it;
  }
  if (degree > dim && !terms.empty())
    throw ValidationError("forms of degree above the dimension must vanish");
  terms_ = std::move(terms);
}

KForm KForm::term(int dim, std::initializer_list<int> indices, double c) {
  const std::vector<int> idx(indices);
  Terms t;
  t[mask_from_indices(idx, dim)] = c;
  return KForm(dim, static_cast<int>(idx.size()), std::move(t));
}

KForm KForm::constant(int dim, double value) {
  Terms t;
  t[0u] = value;
  return KForm(dim, 0, std::move(t));
}

double KForm::coeff(Mask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

double KForm::coeff(std::initializer_list<int> indices) const {
  return coeff(mask_from_indices(std::vector<int>(indices), dim_));
}

double KForm::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [mask, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

double KForm::coeff_norm() const {
  double s = 0.0;
  for (const auto& [mask, c] : terms_) s += c * c;
  return std::sqrt(s);
}

Eigen::VectorXd KForm::to_vector(const std::vector<Mask>& basis) const {
  Eigen::VectorXd v(static_cast<int>(basis.size()));
  for (int i = 0; i < v.size(); ++i) v[i] = coeff(basis[i]);
  return v;
}

KForm KForm::from_vector(int dim, int degree, const std::vector<Mask>& basis,
                         const Eigen::VectorXd& coeffs) {
  if (static_cast<int>(basis.size()) != coeffs.size())
    throw ValidationError("coefficient vector does not match basis size");
  Terms t;
  for (int i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0.0) t[basis[i]] += coeffs[i];
  return KForm(dim, degree, std::move(t));
}

std::string KForm::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [mask, c] : terms_) {
    const bool first = out.empty();
    double mag = std::abs(c);
    if (c < 0.0)
      out += first ? "-" : " - ";
    else if (!first)
      out += " + ";
    std::string idx;
    for (int i : mask_to_indices(mask)) idx += std::to_string(i);
    if (degree_ == 0) {
      out += format_number(c < 0 ? mag : c);
    } else if (mag == 1.0) {
      out += "e" + idx;
    } else {
      out += format_number(mag) + "*e" + idx;
    }
  }
  return out;
}

KForm KForm::operator-() const {
  Terms t;
  for (const auto& [mask, c] : terms_) t[mask] = -c;
  return KForm(dim_, degree_, std::move(t));
}

namespace {

void check_same_shape(const KForm& a, const KForm& b) {
  if (a.dim() != b.dim())
    throw ValidationError("form dimensions differ");
  if (a.degree() != b.degree())
    throw ValidationError("form degrees differ");
}

}  // namespace

KForm operator+(const KForm& a, const KForm& b) {
  check_same_shape(a, b);
  KForm::Terms t = a.terms();
  for (const auto& [mask, c] : b.terms()) t[mask] += c;
  return KForm(a.dim(), a.degree(), std::move(t));
}

KForm operator-(const KForm& a, const KForm& b) { return a + (-b); }

KForm operator*(double s, const KForm& a) {
  KForm::Terms t;
  for (const auto& [mask, c] : a.terms()) t[mask] = s * c;
  return KForm(a.dim(), a.degree(), std::move(t));
}

KForm operator*(const KForm& a, double s) { return s * a; }

KForm wedge(const KForm& a, const KForm& b) {
  if (a.dim() != b.dim()) throw ValidationError("form dimensions differ");
  const int deg = a.degree() + b.degree();
  KForm::Terms t;
  if (deg <= a.dim()) {
    for (const auto& [ma, ca] : a.terms()) {
      for (const auto& [mb, cb] : b.terms()) {
        const int s = merge_sign(ma, mb);
        if (s != 0) t[ma | mb] += s * ca * cb;
      }
    }
  }
  return KForm(a.dim(), deg, std::move(t));
}

KForm contract(const Eigen::VectorXd& v, const KForm& a) {
  if (v.size() != a.dim())
    throw ValidationError("vector dimension does not match form dimension");
  if (a.degree() < 1)
    throw ValidationError("cannot contract a degree-0 form");
  KForm::Terms t;
  for (const auto& [mask, c] : a.terms()) {
    Mask rest = mask;
    while (rest != 0) {
      const int bit = std::countr_zero(rest);
      rest &= rest - 1;
      const double vp = v[bit];
      if (vp == 0.0) continue;
      // Position of this index inside the increasing tuple fixes the sign.
      const int pos = std::popcount(mask & ((1u << bit) - 1u));
      const double sign = (pos % 2 == 0) ? 1.0 : -1.0;
      t[mask & ~(1u << bit)] += sign * vp * c;
    }
  }
  return KForm(a.dim(), a.degree() - 1, std::move(t));
}

KForm full_action(const Endomorphism& A, const KForm& a) {
  if (A.dim() != a.dim())
    throw ValidationError("endomorphism dimension does not match form");
  const int k = a.degree();
  if (k == 0) return a;
  if (k > a.dim()) return KForm(a.dim(), k);
  const Eigen::MatrixXd& M = A.matrix();
  // Coefficient at e^J of the pullback is sum_I a_I det M[I, J].
  const std::vector<Mask> targets = masks_of_degree(a.dim(), k);
  KForm::Terms t;
  Eigen::MatrixXd sub(k, k);
  for (Mask mj : targets) {
    const std::vector<int> J = mask_to_indices(mj);
    double acc = 0.0;
    for (const auto& [mi, c] : a.terms()) {
      const std::vector<int> I = mask_to_indices(mi);
      for (int r = 0; r < k; ++r)
        for (int s = 0; s < k; ++s) sub(r, s) = M(I[r] - 1, J[s] - 1);
      acc += c * sub.determinant();
    }
    if (acc != 0.0) t[mj] = acc;
  }
  return KForm(a.dim(), k, std::move(t));
}

KForm derivation_action(const Endomorphism& A, const KForm& a) {
  if (A.dim() != a.dim())
    throw ValidationError("endomorphism dimension does not match form");
  const int k = a.degree();
  if (k == 0 || k > a.dim()) return KForm(a.dim(), k);
  const Eigen::MatrixXd& M = A.matrix();
  const int n = a.dim();
  KForm::Terms t;
  for (const auto& [mask, c] : a.terms()) {
    Mask rest = mask;
    while (rest != 0) {
      const int p = std::countr_zero(rest);  // 0-based index occupying one slot
      rest &= rest - 1;
      const Mask prefix = mask & ((1u << p) - 1u);
      const Mask suffix = mask & ~((1u << (p + 1)) - 1u);
      // Substitute row p of A (as a 1-form) into that slot.
      for (int q = 0; q < n; ++q) {
        const double coeff = M(p, q);
        if (coeff == 0.0) continue;
        const Mask qm = 1u << q;
        const int s1 = merge_sign(prefix, qm);
        if (s1 == 0) continue;
        const int s2 = merge_sign(prefix | qm, suffix);
        if (s2 == 0) continue;
        t[prefix | qm | suffix] += s1 * s2 * coeff * c;
      }
    }
  }
  return KForm(a.dim(), k, std::move(t));
}

double max_abs_diff(const KForm& a, const KForm& b) {
  check_same_shape(a, b);
  double m = 0.0;
  for (const auto& [mask, c] : a.terms())
    m = std::max(m, std::abs(c - b.coeff(mask)));
  for (const auto& [mask, c] : b.terms())
    m = std::max(m, std::abs(c - a.coeff(mask)));
  return m;
}

bool approx_equal(const KForm& a, const KForm& b, double tol) {
  if (tol < 0.0) tol = global_tolerance();
  return max_abs_diff(a, b) <= tol;
}

KForm embed(const KForm& a, int new_dim) {
  if (new_dim < a.dim())
    throw ValidationError("embed cannot shrink the dimension");
  return KForm(new_dim, a.degree(), KForm::Terms(a.terms().begin(), a.terms().end()));
}

}  // namespace g2flow
