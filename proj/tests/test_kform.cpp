#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "g2flow/errors.hpp"
#include "g2flow/kform.hpp"
#include "g2flow/tolerance.hpp"
#include "form_oracle.hpp"

using namespace g2flow;

TEST_CASE("term construction and coefficient lookup", "[kform]") {
  const KForm a = KForm::term(6, {1, 4}, 2.5);
  CHECK(a.dim() == 6);
  CHECK(a.degree() == 2);
  CHECK(a.coeff({1, 4}) == 2.5);
  CHECK(a.coeff({2, 3}) == 0.0);
  CHECK(a.str() == "2.5*e14");
  CHECK_FALSE(a.is_zero());

  const KForm z(7, 3);
  CHECK(z.is_zero());
  CHECK(z.str() == "0");
}

TEST_CASE("term indices must be strictly increasing", "[kform]") {
  CHECK_THROWS_AS(KForm::term(6, {4, 1}), Error);
  CHECK_THROWS_AS(KForm::term(6, {1, 1}), Error);
  CHECK_THROWS_AS(KForm::term(6, {0, 1}), Error);
  CHECK_THROWS_AS(KForm::term(6, {5, 7}), Error);
}

TEST_CASE("degree above dimension only for the zero form", "[kform]") {
  const KForm z(6, 7);  // result degree of an overflowing wedge
  CHECK(z.is_zero());
  CHECK_THROWS_AS(KForm(9, 1), Error);  // dimension cap

  std::mt19937 rng(0);
  const KForm a = oracle::random_form(rng, 6, 4);
  const KForm b = KForm::term(6, {1, 2, 3, 4});
  const KForm w = wedge(a, b);
  CHECK(w.degree() == 8);
  CHECK(w.is_zero());
}

TEST_CASE("addition groups terms and prunes cancellations", "[kform]") {
  const KForm a = KForm::term(6, {1, 2}) + KForm::term(6, {3, 4}, 2.0);
  const KForm b = KForm::term(6, {1, 2}, -1.0);
  const KForm s = a + b;
  CHECK(s.coeff({1, 2}) == 0.0);
  CHECK(s.terms().size() == 1);
  CHECK((a - a).is_zero());
}

TEST_CASE("coefficients below the global tolerance are pruned", "[kform]") {
  ToleranceGuard guard(1e-6);
  const KForm tiny = KForm::term(6, {1, 2}, 1e-9) + KForm::term(6, {3, 4});
  CHECK(tiny.coeff({1, 2}) == 0.0);
  CHECK(tiny.coeff({3, 4}) == 1.0);
}

TEST_CASE("wedge agrees with the shuffle-sum oracle", "[kform][oracle]") {
  std::mt19937 rng(42);
  for (int dim : {4, 6, 7}) {
    for (int k = 1; k <= 3; ++k) {
      for (int l = 1; l + k <= dim && l <= 3; ++l) {
        const KForm a = oracle::random_form(rng, dim, k);
        const KForm b = oracle::random_form(rng, dim, l);
        CHECK(max_abs_diff(wedge(a, b), oracle::wedge(a, b)) < 1e-13);
      }
    }
  }
}

TEST_CASE("wedge is graded-commutative and bilinear", "[kform]") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const KForm a = oracle::random_form(rng, 6, 2);
    const KForm b = oracle::random_form(rng, 6, 3);
    const KForm c = oracle::random_form(rng, 6, 3);
    CHECK(max_abs_diff(wedge(a, b), wedge(b, a)) < 1e-13);  // (-1)^{2*3} = +1

    const KForm odd1 = oracle::random_form(rng, 6, 1);
    const KForm odd2 = oracle::random_form(rng, 6, 3);
    CHECK(max_abs_diff(wedge(odd1, odd2), -wedge(odd2, odd1)) < 1e-13);

    CHECK(max_abs_diff(wedge(a, b + c), wedge(a, b) + wedge(a, c)) < 1e-13);
    CHECK(max_abs_diff(wedge(a, 2.0 * b), 2.0 * wedge(a, b)) < 1e-13);
  }
}

TEST_CASE("wedge is associative", "[kform]") {
  std::mt19937 rng(3);
  const KForm a = oracle::random_form(rng, 7, 1);
  const KForm b = oracle::random_form(rng, 7, 2);
  const KForm c = oracle::random_form(rng, 7, 2);
  CHECK(max_abs_diff(wedge(wedge(a, b), c), wedge(a, wedge(b, c))) < 1e-13);
}

TEST_CASE("contraction inserts the vector into the first slot", "[kform][oracle]") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const KForm a = oracle::random_form(rng, 6, 3);
    const Eigen::VectorXd v = oracle::random_vector(rng, 6);
    const Eigen::VectorXd w1 = oracle::random_vector(rng, 6);
    const Eigen::VectorXd w2 = oracle::random_vector(rng, 6);
    const double lhs = oracle::evaluate(contract(v, a), {w1, w2});
    const double rhs = oracle::evaluate(a, {v, w1, w2});
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("contraction is an antiderivation", "[kform]") {
  std::mt19937 rng(19);
  const KForm a = oracle::random_form(rng, 6, 2);
  const KForm b = oracle::random_form(rng, 6, 2);
  const Eigen::VectorXd v = oracle::random_vector(rng, 6);
  const KForm lhs = contract(v, wedge(a, b));
  const KForm rhs = wedge(contract(v, a), b) + wedge(a, contract(v, b));
  CHECK(max_abs_diff(lhs, rhs) < 1e-13);
}

TEST_CASE("full action composes every slot with the map", "[kform][oracle]") {
  std::mt19937 rng(23);
  Eigen::MatrixXd m(6, 6);
  for (int i = 0; i < 36; ++i) m(i / 6, i % 6) = std::uniform_real_distribution<double>(-1, 1)(rng);
  const Endomorphism A(m);
  const KForm a = oracle::random_form(rng, 6, 2);
  const Eigen::VectorXd v = oracle::random_vector(rng, 6);
  const Eigen::VectorXd w = oracle::random_vector(rng, 6);
  const double lhs = oracle::evaluate(full_action(A, a), {v, w});
  const double rhs = oracle::evaluate(a, {m * v, m * w});
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("derivation action applies the map one slot at a time", "[kform][oracle]") {
  std::mt19937 rng(29);
  Eigen::MatrixXd m(6, 6);
  for (int i = 0; i < 36; ++i) m(i / 6, i % 6) = std::uniform_real_distribution<double>(-1, 1)(rng);
  const Endomorphism A(m);
  const KForm a = oracle::random_form(rng, 6, 3);
  const Eigen::VectorXd v1 = oracle::random_vector(rng, 6);
  const Eigen::VectorXd v2 = oracle::random_vector(rng, 6);
  const Eigen::VectorXd v3 = oracle::random_vector(rng, 6);
  const double lhs = oracle::evaluate(derivation_action(A, a), {v1, v2, v3});
  const double rhs = oracle::evaluate(a, {m * v1, v2, v3}) +
                     oracle::evaluate(a, {v1, m * v2, v3}) +
                     oracle::evaluate(a, {v1, v2, m * v3});
  CHECK(std::abs(lhs - rhs) < 1e-12);

  // c * Id acts on degree-k forms as multiplication by c k.
  const KForm scaled = derivation_action(Endomorphism::diagonal(Eigen::VectorXd::Constant(6, 2.0)), a);
  CHECK(max_abs_diff(scaled, 6.0 * a) < 1e-13);
}

TEST_CASE("vector round-trip over a mask basis", "[kform]") {
  std::mt19937 rng(31);
  const KForm a = oracle::random_form(rng, 7, 3);
  const std::vector<Mask> basis = masks_of_degree(7, 3);
  REQUIRE(basis.size() == 35);
  const Eigen::VectorXd v = a.to_vector(basis);
  CHECK(max_abs_diff(KForm::from_vector(7, 3, basis, v), a) == 0.0);
}

TEST_CASE("embed keeps indices and coefficients", "[kform]") {
  const KForm a = KForm::term(6, {1, 4}, 3.0) - KForm::term(6, {2, 3});
  const KForm b = embed(a, 7);
  CHECK(b.dim() == 7);
  CHECK(b.coeff({1, 4}) == 3.0);
  CHECK(b.coeff({2, 3}) == -1.0);
  CHECK_FALSE(wedge(b, KForm::term(7, {7})).is_zero());
  CHECK_THROWS_AS(embed(b, 6), Error);  // no shrinking
}

TEST_CASE("mask helpers", "[kform]") {
  CHECK(mask_degree(full_mask(6)) == 6);
  CHECK(mask_from_indices({1, 3, 5}, 6) == 0b10101u);
  CHECK(mask_to_indices(0b10101u) == std::vector<int>{1, 3, 5});
  CHECK(merge_sign(0b1u, 0b10u) == +1);   // e1 ^ e2 -> +e12
  CHECK(merge_sign(0b10u, 0b1u) == -1);   // e2 ^ e1 -> -e12
  CHECK(merge_sign(0b1u, 0b1u) == 0);     // overlap
  CHECK(masks_of_degree(6, 2).size() == 15);

  // Canonical order matches the lexicographic order of index tuples.
  const auto ms = masks_of_degree(4, 2);
  REQUIRE(ms.size() == 6);
  CHECK(mask_to_indices(ms.front()) == std::vector<int>{1, 2});
  CHECK(mask_to_indices(ms[1]) == std::vector<int>{1, 3});
  CHECK(mask_to_indices(ms.back()) == std::vector<int>{3, 4});
}

TEST_CASE("printed rendering is stable", "[kform]") {
  const KForm a = KForm::term(6, {1, 2}, -1.0) + KForm::term(6, {1, 3}, 0.5);
  CHECK(a.str() == "-e12 + 0.5*e13");
}
