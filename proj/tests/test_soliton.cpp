#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "g2flow/catalog.hpp"
#include "g2flow/errors.hpp"
#include "g2flow/flow.hpp"
#include "g2flow/g2warp.hpp"
#include "g2flow/soliton.hpp"

using namespace g2flow;

TEST_CASE("catalog soliton data solves the self-similarity equation", "[soliton]") {
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = catalog_entry(name);
    if (!e.expect_soliton) continue;
    INFO("entry " << name);
    const SU3Structure S = catalog_su3(e);
    const G2Structure G = build_warped(S, 1.0);

    CHECK(derivation_residual(G.algebra(), e.soliton_D) < 1e-12);
    CHECK(soliton_residual(G, e.soliton_lambda, e.soliton_D) < 1e-8);
    CHECK(soliton_type(e.soliton_lambda) == "expanding");

    // 2 lambda = 6c - n2 ties the soliton constant to the torsion data.
    CHECK(soliton_relation_residual(S, e.soliton_lambda) < 1e-12);
    CHECK(std::abs(2.0 * e.soliton_lambda - (6.0 * e.expect_c - e.expect_n2)) < 1e-12);
  }
}

TEST_CASE("soliton equation fails for wrong data", "[soliton]") {
  const CatalogEntry e = catalog_entry("a57");
  const SU3Structure S = catalog_su3(e);
  const G2Structure G = build_warped(S, 1.0);
  CHECK(soliton_residual(G, e.soliton_lambda + 1.0, e.soliton_D) > 1e-3);
  CHECK(soliton_residual(G, e.soliton_lambda, Eigen::MatrixXd::Zero(7, 7)) > 1e-3);

  // A random symmetric matrix is not a derivation.
  std::mt19937 rng(51);
  Eigen::MatrixXd R(7, 7);
  for (int i = 0; i < 49; ++i)
    R(i / 7, i % 7) = std::uniform_real_distribution<double>(-1, 1)(rng);
  const Eigen::MatrixXd sym = 0.5 * (R + R.transpose());
  CHECK(derivation_residual(G.algebra(), sym) > 1e-3);
}

TEST_CASE("symmetric derivations form the expected spaces", "[soliton]") {
  const std::map<std::string, int> expected_dim = {
      {"e11e11", 5}, {"g51", 7}, {"a57", 9}, {"a517", 5},  {"g6n3", 7},
      {"g638", 2},   {"g654", 4}, {"g6118", 3}, {"g654-alt", 4}};
  for (const auto& [name, dim] : expected_dim) {
    INFO("entry " << name);
    const CatalogEntry e = catalog_entry(name);
    const LieAlgebra L7 = e.algebra.extend_by_line();
    const std::vector<Eigen::MatrixXd> basis = symmetric_derivations(L7);
    CHECK(static_cast<int>(basis.size()) == dim);
    for (const Eigen::MatrixXd& D : basis) {
      CHECK(derivation_residual(L7, D) < 1e-9);
      CHECK((D - D.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("least-squares search recovers the catalog solitons", "[soliton]") {
  for (const auto& name : {"e11e11", "g51", "a57", "g6n3", "g654"}) {
    INFO("entry " << name);
    const CatalogEntry e = catalog_entry(name);
    const G2Structure G = build_warped(catalog_su3(e), 1.0);
    const SolitonSearch best = best_soliton_fit(G);
    CHECK(best.residual < 1e-8);
    CHECK(std::abs(best.lambda - e.soliton_lambda) < 1e-6);
    CHECK(soliton_residual(G, best.lambda, best.D) < 1e-8);
  }
}

TEST_CASE("least-squares search rejects the non-soliton rows", "[soliton]") {
  for (const auto& name : {"g638", "g6118"}) {
    INFO("entry " << name);
    const G2Structure G = build_warped(catalog_su3(catalog_entry(name)), 1.0);
    const SolitonSearch best = best_soliton_fit(G);
    CHECK(best.residual > 1e-3);
  }
}

TEST_CASE("torsion-free structures are steady solitons", "[soliton]") {
  const LieAlgebra L = parse_structure_equations("(0,0,0,0,0,0)");
  const KForm omega =
      KForm::term(6, {1, 2}) + KForm::term(6, {3, 4}) + KForm::term(6, {5, 6});
  const KForm psi = KForm::term(6, {1, 3, 5}) - KForm::term(6, {1, 4, 6}) -
                    KForm::term(6, {2, 3, 6}) - KForm::term(6, {2, 4, 5});
  const G2Structure G = build_warped(SU3Structure(L, omega, psi), 1.0);
  CHECK(soliton_residual(G, 0.0, Eigen::MatrixXd::Zero(7, 7)) < 1e-14);
  CHECK(soliton_type(0.0) == "steady");
  CHECK(soliton_type(-1.0) == "shrinking");

  const SolitonSearch best = best_soliton_fit(G);
  CHECK(best.residual < 1e-10);
  CHECK(std::abs(best.lambda) < 1e-10);
}

TEST_CASE("soliton relation residual needs an eigenform", "[soliton]") {
  const SU3Structure S = catalog_su3(catalog_entry("g654-alt"));
  CHECK_THROWS_AS(soliton_relation_residual(S, 1.0), ValidationError);
}

TEST_CASE("derivation scaling of the soliton trajectory", "[soliton][flow]") {
  // Along the closed-form flow of a soliton row, tau norm and scale factor
  // are tied: |tau(t)|^2 (1 + (2/3) lambda t) is conserved.
  const CatalogEntry e = catalog_entry("g51");
  const SU3Structure S = catalog_su3(e);
  const ClosedFormFlow F(S, 1.0);
  const double lambda = e.soliton_lambda;
  for (double t : {0.0, 0.2, 0.8}) {
    const G2Torsion T = g2_torsion(F.structure(t));
    CHECK(std::abs(T.norm_sq * (1.0 + 2.0 / 3.0 * lambda * t) - e.expect_n2) < 1e-8);
    CHECK(selfsimilar_scale(lambda, t) >= 1.0);
  }
}
