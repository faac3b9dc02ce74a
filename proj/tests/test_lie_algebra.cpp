#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "g2flow/errors.hpp"
#include "g2flow/lie_algebra.hpp"
#include "form_oracle.hpp"

using namespace g2flow;

TEST_CASE("structure equation parsing", "[liealg]") {
  const LieAlgebra L = parse_structure_equations("(e15,-e25,-e35,e45,0,0)");
  CHECK(L.dim() == 6);
  CHECK(L.dual_differential(1).coeff({1, 5}) == 1.0);
  CHECK(L.dual_differential(2).coeff({2, 5}) == -1.0);
  CHECK(L.dual_differential(5).is_zero());
  CHECK(L.jacobi_residual() == 0.0);
}

TEST_CASE("parser accepts decimals, fractions, roots, and optional *", "[liealg]") {
  const LieAlgebra L =
      parse_structure_equations("(0.5e23 + 1/4*e24, 0, -sqrt(9)e12, 0)");
  CHECK(L.dual_differential(1).coeff({2, 3}) == 0.5);
  CHECK(L.dual_differential(1).coeff({2, 4}) == 0.25);
  CHECK(L.dual_differential(3).coeff({1, 2}) == -3.0);

  const LieAlgebra aff = parse_structure_equations("(sqrt(2) e12, 0)");
  CHECK(aff.dual_differential(1).coeff({1, 2}) == std::sqrt(2.0));
}

TEST_CASE("reversed index pairs pick up a sign", "[liealg]") {
  const LieAlgebra L = parse_structure_equations("(e51,0,0,0,0)");
  CHECK(L.dual_differential(1).coeff({1, 5}) == -1.0);
}

TEST_CASE("named parameters bind through the parameter map", "[liealg]") {
  const LieAlgebra L = parse_structure_equations("(alpha*e15+e25,-e15+alpha*e25,0,0,0)",
                                                 {{"alpha", 2.0}});
  CHECK(L.dual_differential(1).coeff({1, 5}) == 2.0);
  CHECK(L.dual_differential(2).coeff({1, 5}) == -1.0);
  CHECK_THROWS_AS(parse_structure_equations("(alpha*e12,0,0)"), ParseError);
  CHECK_THROWS_AS(parse_structure_equations("(e12,0"), ParseError);
  CHECK_THROWS_AS(parse_structure_equations("(e12+q,0,0)"), ParseError);
  CHECK_THROWS_AS(parse_structure_equations("(e19,0,0)"), ParseError);
}

TEST_CASE("jacobi identity is enforced at construction", "[liealg]") {
  CHECK_THROWS_AS(parse_structure_equations("(e23,e12,0)"), ValidationError);
  CHECK_NOTHROW(parse_structure_equations("(e23,e31,e12)"));  // so(3)
}

TEST_CASE("brackets are recovered from the dual differentials", "[liealg]") {
  // d e1 = e15 encodes [e1, e5] = -e1 via  d a (x, y) = -a([x, y]).
  const LieAlgebra L = parse_structure_equations("(e15,-e25,-e35,e45,0,0)");
  CHECK(L.bracket(1, 5)(0) == -1.0);
  CHECK(L.bracket(5, 1)(0) == 1.0);
  CHECK(L.bracket(2, 5)(1) == 1.0);
  CHECK(L.bracket(1, 2).isZero());

  const Eigen::VectorXd x = Eigen::VectorXd::Unit(6, 0) + Eigen::VectorXd::Unit(6, 1);
  const Eigen::VectorXd y = Eigen::VectorXd::Unit(6, 4);
  const Eigen::VectorXd b = L.bracket(x, y);
  CHECK(b(0) == -1.0);
  CHECK(b(1) == 1.0);
}

TEST_CASE("d is a graded derivation with d^2 = 0", "[liealg]") {
  std::mt19937 rng(5);
  for (const char* text : {"(e15,-e25,-e35,e45,0,0)", "(0,0,0,e12,e13,e23)",
                           "(e23,e31,e12)", "(-e16,0,e36,e46,0,0)"}) {
    const LieAlgebra L = parse_structure_equations(text);
    for (int k = 1; k + 1 < L.dim(); ++k) {
      const KForm a = oracle::random_form(rng, L.dim(), k);
      const KForm b = oracle::random_form(rng, L.dim(), 1);
      CHECK(L.d(L.d(a)).max_abs_coeff() < 1e-12);
      const KForm lhs = L.d(wedge(a, b));
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      const KForm rhs = wedge(L.d(a), b) + sign * wedge(a, L.d(b));
      CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    }
  }
}

TEST_CASE("unimodularity, solvability, nilpotency", "[liealg]") {
  const LieAlgebra heis = parse_structure_equations("(0,0,e12)");
  CHECK(heis.is_unimodular());
  CHECK(heis.is_solvable());
  CHECK(heis.is_nilpotent());

  const LieAlgebra aff = parse_structure_equations("(e12,0)");
  CHECK_FALSE(aff.is_unimodular());
  CHECK(aff.is_solvable());
  CHECK_FALSE(aff.is_nilpotent());

  const LieAlgebra so3 = parse_structure_equations("(e23,e31,e12)");
  CHECK(so3.is_unimodular());
  CHECK_FALSE(so3.is_solvable());
  CHECK_FALSE(so3.is_nilpotent());

  const LieAlgebra a57 = parse_structure_equations("(e15,-e25,-e35,e45,0,0)");
  CHECK(a57.is_unimodular());
  CHECK(a57.is_solvable());
  CHECK_FALSE(a57.is_nilpotent());
}

TEST_CASE("extension by a line preserves the structure", "[liealg]") {
  const LieAlgebra L = parse_structure_equations("(e15,-e25,-e35,e45,0,0)");
  const LieAlgebra L7 = L.extend_by_line();
  CHECK(L7.dim() == 7);
  CHECK(L7.dual_differential(7).is_zero());
  CHECK(L7.dual_differential(1).coeff({1, 5}) == 1.0);
  CHECK(L7.is_unimodular() == L.is_unimodular());
  CHECK(L7.is_solvable());

  // d on an embedded form agrees with the embedding of d.
  const KForm a = KForm::term(6, {1, 4}) - KForm::term(6, {2, 3});
  CHECK(max_abs_diff(L7.d(embed(a, 7)), embed(L.d(a), 7)) == 0.0);
}

TEST_CASE("print / parse round-trip", "[liealg]") {
  for (const char* text :
       {"(e15,-e25,-e35,e45,0,0)", "(0,0,0,e12,e13,e23)", "(e16+e35,-e26+e45,e36,-e46,0,0)",
        "(-e16+e25,-e15-e26,e36-e45,e35+e46,0,0)", "(0,-e13,-e12,0,-e46,-e45)"}) {
    const LieAlgebra L = parse_structure_equations(text);
    const LieAlgebra back = parse_structure_equations(print_structure_equations(L));
    REQUIRE(back.dim() == L.dim());
    for (int k = 1; k <= L.dim(); ++k)
      CHECK(max_abs_diff(back.dual_differential(k), L.dual_differential(k)) == 0.0);
  }
}

TEST_CASE("jacobi residual reports the worst violation", "[liealg]") {
  const LieAlgebra ok = parse_structure_equations("(0,0,0,e12,e13,e23)");
  CHECK(ok.jacobi_residual() == 0.0);
}
