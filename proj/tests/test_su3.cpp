#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "g2flow/catalog.hpp"
#include "g2flow/errors.hpp"
#include "g2flow/metric_ops.hpp"
#include "g2flow/su3.hpp"
#include "form_oracle.hpp"

using namespace g2flow;

namespace {

SU3Structure flat_model() {
  const LieAlgebra L = parse_structure_equations("(0,0,0,0,0,0)");
  const KForm omega =
      KForm::term(6, {1, 2}) + KForm::term(6, {3, 4}) + KForm::term(6, {5, 6});
  const KForm psi = KForm::term(6, {1, 3, 5}) - KForm::term(6, {1, 4, 6}) -
                    KForm::term(6, {2, 3, 6}) - KForm::term(6, {2, 4, 5});
  return SU3Structure(L, omega, psi);
}

/// Lee-form example: d omega = theta ^ omega with theta = -e6, psi_plus closed.
SU3Structure lee_form_model() {
  const LieAlgebra L = parse_structure_equations("(-e16,0,e36,e46,0,0)");
  const KForm omega =
      KForm::term(6, {1, 6}) + KForm::term(6, {2, 4}) + KForm::term(6, {3, 5});
  const KForm psi = KForm::term(6, {1, 2, 3}) - KForm::term(6, {1, 4, 5}) -
                    KForm::term(6, {2, 5, 6}) + KForm::term(6, {3, 4, 6});
  return SU3Structure(L, omega, psi);
}

}  // namespace

TEST_CASE("flat model structure data", "[su3]") {
  const SU3Structure S = flat_model();
  const KForm expected_minus = KForm::term(6, {1, 3, 6}) + KForm::term(6, {1, 4, 5}) +
                               KForm::term(6, {2, 3, 5}) - KForm::term(6, {2, 4, 6});
  CHECK(max_abs_diff(S.psi_minus(), expected_minus) < 1e-14);
  CHECK((S.h() - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(S.vol_coeff() == 1.0);
  CHECK(S.J().matrix()(1, 0) == 1.0);  // J e1 = e2

  // psi_minus is the image of psi_plus under J on every slot.
  CHECK(max_abs_diff(full_action(S.J(), S.psi_plus()), S.psi_minus()) < 1e-14);

  // Defining volume relations.
  const KForm om3 = wedge(wedge(S.omega(), S.omega()), S.omega());
  CHECK(max_abs_diff((1.0 / 6.0) * om3, S.nu()) < 1e-14);
  CHECK(max_abs_diff(wedge(S.psi_plus(), S.psi_minus()), (2.0 / 3.0) * om3) < 1e-14);
  CHECK(wedge(S.omega(), S.psi_plus()).is_zero());

  // Star relations of a compatible pair.
  const MetricData& M = S.metric_data();
  CHECK(max_abs_diff(hodge_star(M, S.omega()),
                     0.5 * wedge(S.omega(), S.omega())) < 1e-13);
  CHECK(max_abs_diff(hodge_star(M, S.psi_plus()), S.psi_minus()) < 1e-13);
  CHECK(max_abs_diff(hodge_star(M, S.psi_minus()), -S.psi_plus()) < 1e-13);
}

TEST_CASE("construction rejects invalid data", "[su3]") {
  const LieAlgebra L = parse_structure_equations("(0,0,0,0,0,0)");
  const KForm omega =
      KForm::term(6, {1, 2}) + KForm::term(6, {3, 4}) + KForm::term(6, {5, 6});
  const KForm psi = KForm::term(6, {1, 3, 5}) - KForm::term(6, {1, 4, 6}) -
                    KForm::term(6, {2, 3, 6}) - KForm::term(6, {2, 4, 5});

  // Degenerate omega.
  const KForm degenerate = KForm::term(6, {1, 2}) + KForm::term(6, {3, 4});
  CHECK_THROWS_WITH(SU3Structure(L, degenerate, psi),
                    Catch::Matchers::ContainsSubstring("omega^3"));

  // Wrong stable orbit.
  const KForm real_orbit = KForm::term(6, {1, 3, 5}) + KForm::term(6, {2, 4, 6});
  CHECK_THROWS_WITH(SU3Structure(L, omega, real_orbit),
                    Catch::Matchers::ContainsSubstring("complex type"));

  // Incompatible pair.
  const KForm incompatible = KForm::term(6, {1, 2, 3}) - KForm::term(6, {1, 5, 6}) -
                             KForm::term(6, {2, 4, 6}) - KForm::term(6, {3, 4, 5});
  CHECK_THROWS_AS(SU3Structure(L, omega, incompatible), ValidationError);

  // Broken normalization.
  CHECK_THROWS_WITH(SU3Structure(L, omega, 2.0 * psi),
                    Catch::Matchers::ContainsSubstring("normalization"));
}

TEST_CASE("catalog rows build with the expected invariants", "[su3][catalog]") {
  for (const auto& name : catalog_names()) {
    INFO("entry " << name);
    const CatalogEntry e = catalog_entry(name);
    const SU3Structure S = catalog_su3(e);
    CHECK((S.h() - e.expect_h).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(S.algebra().is_nilpotent() == e.expect_nilpotent);
    CHECK(S.algebra().is_unimodular());

    const SU3Torsion T = torsion_forms(S);
    CHECK(T.symplectic_half_flat);
    CHECK(T.theta.is_zero());
    CHECK(max_abs_diff(T.w2_minus, e.expect_w2) < 1e-10);
    CHECK(std::abs(T.w2_norm_sq - e.expect_n2) < 1e-10);

    // d w2 always decomposes as (n2/4) psi_plus + gamma with gamma primitive.
    const ThreeFormSplit split = decompose_3form(S, S.algebra().d(T.w2_minus));
    CHECK(std::abs(split.k_plus - T.w2_norm_sq / 4.0) < 1e-10);
    CHECK(std::abs(split.k_minus) < 1e-10);
    CHECK(split.beta.max_abs_coeff() < 1e-10);
    CHECK(max_abs_diff(split.gamma, T.gamma) < 1e-10);

    const EigenformFit fit = eigenform_fit(S.metric_data(), T.w2_minus);
    CHECK(fit.is_eigenform == e.expect_eigenform);
    if (e.expect_eigenform) CHECK(std::abs(fit.c - e.expect_c) < 1e-8);

    CHECK(std::abs(scalar_curvature(S.metric_data()) - e.expect_scal) < 1e-8);
  }
}

TEST_CASE("lee form torsion", "[su3][torsion]") {
  const SU3Structure S = lee_form_model();
  CHECK_FALSE(S.algebra().is_unimodular());
  const KForm expected_minus = KForm::term(6, {1, 2, 5}) - KForm::term(6, {1, 3, 4}) +
                               KForm::term(6, {2, 3, 6}) - KForm::term(6, {4, 5, 6});
  CHECK(max_abs_diff(S.psi_minus(), expected_minus) < 1e-13);

  const SU3Torsion T = torsion_forms(S);
  CHECK_FALSE(T.symplectic_half_flat);
  CHECK(max_abs_diff(T.theta, -KForm::term(6, {6})) < 1e-13);
  CHECK(max_abs_diff(T.w2_minus, -KForm::term(6, {2, 5}) - KForm::term(6, {3, 4})) < 1e-13);

  // d omega = theta ^ omega exactly.
  CHECK(max_abs_diff(S.algebra().d(S.omega()), wedge(T.theta, S.omega())) < 1e-13);
}

TEST_CASE("unsupported torsion classes are rejected", "[su3][torsion]") {
  // (omega, psi_minus) of a half-flat structure is again a valid structure,
  // but its own psi_plus is no longer closed.
  const SU3Structure A = catalog_su3(catalog_entry("a57"));
  const SU3Structure rotated(A.algebra(), A.omega(), A.psi_minus());
  CHECK_THROWS_WITH(torsion_forms(rotated),
                    Catch::Matchers::ContainsSubstring("unsupported torsion class"));
}

TEST_CASE("primitive (1,1) forms", "[su3]") {
  const SU3Structure S = catalog_su3(catalog_entry("a57"));
  const std::vector<KForm> basis = primitive_11_basis(S);
  REQUIRE(basis.size() == 8);
  const KForm om2 = wedge(S.omega(), S.omega());
  for (const KForm& b : basis) {
    CHECK(wedge(b, om2).max_abs_coeff() < 1e-12);            // primitive
    CHECK(max_abs_diff(full_action(S.J(), b), b) < 1e-12);   // J-invariant
  }

  // The torsion form lies in that space and projection fixes it.
  const SU3Torsion T = torsion_forms(S);
  CHECK(max_abs_diff(project_omega8(S, T.w2_minus), T.w2_minus) < 1e-12);
  CHECK(project_omega8(S, S.omega()).max_abs_coeff() < 1e-12);
}

TEST_CASE("three-form decomposition is an orthogonal splitting", "[su3]") {
  std::mt19937 rng(37);
  const SU3Structure S = catalog_su3(catalog_entry("g654"));
  for (int trial = 0; trial < 10; ++trial) {
    const KForm rho = oracle::random_form(rng, 6, 3);
    const ThreeFormSplit split = decompose_3form(S, rho);
    const KForm rebuilt = split.k_plus * S.psi_plus() + split.k_minus * S.psi_minus() +
                          split.gamma + wedge(split.beta, S.omega());
    CHECK(max_abs_diff(rebuilt, rho) < 1e-10);
    CHECK(wedge(split.gamma, S.omega()).max_abs_coeff() < 1e-10);
    CHECK(wedge(split.gamma, S.psi_plus()).max_abs_coeff() < 1e-10);
    CHECK(wedge(split.gamma, S.psi_minus()).max_abs_coeff() < 1e-10);
    CHECK(split.beta.degree() == 1);
  }

  // Pure components come back pure.
  const ThreeFormSplit pure = decompose_3form(S, S.psi_plus());
  CHECK(std::abs(pure.k_plus - 1.0) < 1e-12);
  CHECK(std::abs(pure.k_minus) < 1e-12);
  CHECK(pure.gamma.max_abs_coeff() < 1e-12);
  CHECK(pure.beta.max_abs_coeff() < 1e-12);

  const ThreeFormSplit wedge_part = decompose_3form(S, wedge(KForm::term(6, {1}), S.omega()));
  CHECK(max_abs_diff(wedge_part.beta, KForm::term(6, {1})) < 1e-12);
  CHECK(std::abs(wedge_part.k_plus) + std::abs(wedge_part.k_minus) < 1e-12);
}

TEST_CASE("one-form identity battery", "[su3][identities]") {
  std::mt19937 rng(41);
  for (const auto& name : {"a57", "g51", "g654-alt"}) {
    const SU3Structure S = catalog_su3(catalog_entry(name));
    for (int trial = 0; trial < 25; ++trial) {
      const KForm beta = oracle::random_form(rng, 6, 1);
      CHECK(one_form_identity_residual(S, beta) < 1e-8);
    }
  }
  // Also on a structure with nonzero Lee form.
  const SU3Structure W = lee_form_model();
  for (int trial = 0; trial < 25; ++trial)
    CHECK(one_form_identity_residual(W, oracle::random_form(rng, 6, 1)) < 1e-8);
}

TEST_CASE("two-form matrix", "[su3]") {
  const KForm omega = KForm::term(6, {1, 4}, 2.0) - KForm::term(6, {2, 3});
  const Eigen::MatrixXd m = two_form_matrix(omega);
  CHECK(m(0, 3) == 2.0);
  CHECK(m(3, 0) == -2.0);
  CHECK(m(1, 2) == -1.0);
  CHECK((m + m.transpose()).cwiseAbs().maxCoeff() == 0.0);
}
