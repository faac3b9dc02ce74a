#pragma once

// Brute-force reference implementations for alternating forms, written
// against index tuples and determinants instead of bitmasks, so the two
// code paths share nothing but the definition.

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "g2flow/kform.hpp"
#include "g2flow/multi_index.hpp"

namespace oracle {

/// All strictly increasing k-tuples from {1, ..., n}.
inline std::vector<std::vector<int>> tuples(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i <= n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

/// Evaluates a k-form on k vectors as a sum of k x k minors:
/// e^{i1...ik}(v1, ..., vk) = det [ v_s[i_r] ].
inline double evaluate(const g2flow::KForm& a, const std::vector<Eigen::VectorXd>& v) {
  if (a.degree() == 0) return a.is_zero() ? 0.0 : a.terms().begin()->second;
  double total = 0.0;
  for (const auto& [mask, c] : a.terms()) {
    const std::vector<int> idx = g2flow::mask_to_indices(mask);
    Eigen::MatrixXd minor(a.degree(), a.degree());
    for (int r = 0; r < a.degree(); ++r)
      for (int s = 0; s < a.degree(); ++s) minor(r, s) = v[s](idx[r] - 1);
    total += c * minor.determinant();
  }
  return total;
}

/// Wedge product through shuffle sums over subsets, with the permutation
/// sign computed by explicit inversion counting.
inline g2flow::KForm wedge(const g2flow::KForm& a, const g2flow::KForm& b) {
  const int n = a.dim();
  const int k = a.degree(), l = b.degree();
  g2flow::KForm::Terms terms;
  for (const auto& idx : tuples(n, k + l)) {
    double total = 0.0;
    // Choose which k of the k+l indices go to `a`.
    for (unsigned choice = 0; choice < (1u << (k + l)); ++choice) {
      if (__builtin_popcount(choice) != k) continue;
      std::vector<int> left, right;
      for (int p = 0; p < k + l; ++p)
        ((choice >> p) & 1u ? left : right).push_back(idx[p]);
      int inversions = 0;
      for (int x : right)
        for (int y : left)
          if (y > x) ++inversions;
      const double sign = (inversions % 2 == 0) ? 1.0 : -1.0;
      double ca = 0.0, cb = 0.0;
      for (const auto& [m, c] : a.terms())
        if (g2flow::mask_to_indices(m) == left) ca = c;
      for (const auto& [m, c] : b.terms())
        if (g2flow::mask_to_indices(m) == right) cb = c;
      total += sign * ca * cb;
    }
    if (total != 0.0) terms[g2flow::mask_from_indices(idx, n)] = total;
  }
  return g2flow::KForm(n, k + l, std::move(terms));
}

inline g2flow::KForm random_form(std::mt19937& rng, int dim, int degree) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  g2flow::KForm::Terms t;
  for (g2flow::Mask m : g2flow::masks_of_degree(dim, degree)) t[m] = U(rng);
  return g2flow::KForm(dim, degree, std::move(t));
}

inline Eigen::VectorXd random_vector(std::mt19937& rng, int dim) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = U(rng);
  return v;
}

}  // namespace oracle
