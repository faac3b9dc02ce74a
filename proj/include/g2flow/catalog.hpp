#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "g2flow/kform.hpp"
#include "g2flow/lie_algebra.hpp"
#include "g2flow/su3.hpp"

namespace g2flow {

/// A built-in example: a solvable Lie algebra carrying a symplectic
/// half-flat SU(3)-structure, together with its known invariants (torsion
/// form, Laplace eigenvalue, curvature, soliton data) used by the test
/// suite and the report command.
struct CatalogEntry {
  LieAlgebra algebra;
  KForm omega;
  KForm psi_plus;
  KForm expect_w2;            // torsion 2-form
  Eigen::MatrixXd expect_h;   // induced inner product

  std::string name;           // canonical key, e.g. "a57"
  std::string display;        // e.g. "A5.7 + R"
  std::string structure;      // structure-equation tuple
  std::map<std::string, double> params;  // bound parameter values

  bool table_row = false;         // one of the eight standard rows
  bool expect_nilpotent = false;
  bool expect_eigenform = true;   // w2 is a Laplace eigenform
  double expect_c = 0.0;          // its eigenvalue
  double expect_n2 = 0.0;         // |w2|^2
  double expect_scal = 0.0;       // scalar curvature of h

  bool expect_soliton = false;    // (D, lambda) below solve the soliton equation
  double soliton_lambda = 0.0;
  Eigen::MatrixXd soliton_D;      // 7x7, on the extended algebra
};

/// Canonical entry names: the eight standard rows in order, then the
/// alternate structure "g654-alt" on the same algebra as "g654".
const std::vector<std::string>& catalog_names();

/// Lowercases and strips separators, so "A5.7+R" finds "a57".
std::string normalize_catalog_name(const std::string& s);

bool catalog_has(const std::string& name);

/// Throws ValidationError for unknown names or unknown parameter overrides.
CatalogEntry catalog_entry(const std::string& name,
                           const std::map<std::string, double>& params = {});

SU3Structure catalog_su3(const CatalogEntry& e);

/// Scalar flow parameters of the twistor-space instance (no Lie algebra
/// attached): squared torsion norm 96 with eigenvalue 24, sitting on the
/// borderline c = n2/4 of self-similar solutions.
struct ScalarFlowParameters {
  double c = 0.0;
  double n2 = 0.0;
};

ScalarFlowParameters twistor_flow_parameters();

}  // namespace g2flow
