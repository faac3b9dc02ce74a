#include "g2flow/catalog.hpp"

#include <cctype>
#include <cmath>

#include "g2flow/errors.hpp"

namespace g2flow {

namespace {

KForm t2(int i, int j, double c = 1.0) { return KForm::term(6, {i, j}, c); }
KForm t3(int i, int j, int k, double c = 1.0) { return KForm::term(6, {i, j, k}, c); }

Eigen::MatrixXd diag6(double a, double b, double c, double d, double e, double f) {
  Eigen::VectorXd v(6);
  v << a, b, c, d, e, f;
  return v.asDiagonal();
}

Eigen::MatrixXd diag7(double a, double b, double c, double d, double e, double f,
                      double g) {
  Eigen::VectorXd v(7);
  v << a, b, c, d, e, f, g;
  return v.asDiagonal();
}

std::map<std::string, double> merge_params(const std::map<std::string, double>& defaults,
                                           const std::map<std::string, double>& overrides) {
  std::map<std::string, double> out = defaults;
  for (const auto& [key, value] : overrides) {
    if (defaults.find(key) == defaults.end())
      throw ValidationError("unknown parameter '" + key + "' for this catalog entry");
    out[key] = value;
  }
  return out;
}

struct EntryDef {
  std::string name;
  std::string display;
  std::string structure;
  std::map<std::string, double> defaults;
  std::vector<std::string> aliases;
};

const std::vector<EntryDef>& entry_defs() {
  static const std::vector<EntryDef> defs = {
      {"e11e11", "e(1,1) + e(1,1)", "(0,-e13,-e12,0,-e46,-e45)", {}, {"e11+e11"}},
      {"g51", "g5.1 + R", "(0,0,0,0,e12,e13)", {}, {"g5.1+r", "g51r"}},
      {"a57", "A5.7 + R", "(e15,-e25,-e35,e45,0,0)", {}, {"a5.7+r", "a57r"}},
      {"a517", "A5.17 + R",
       "(alpha*e15+e25,-e15+alpha*e25,-alpha*e35+e45,-e35-alpha*e45,0,0)",
       {{"alpha", 1.0}},
       {"a5.17+r", "a517r"}},
      {"g6n3", "g6.N3", "(0,0,0,e12,e13,e23)", {}, {"g6.n3"}},
      {"g638", "g6.38", "(e23,-e36,e26,e26-e56,e36+e46,0)", {}, {"g6.38", "g6380"}},
      {"g654", "g6.54", "(e16+e35,-e26+e45,e36,-e46,0,0)", {}, {"g6.54"}},
      {"g6118", "g6.118", "(-e16+e25,-e15-e26,e36-e45,e35+e46,0,0)", {}, {"g6.118"}},
      {"g654-alt", "g6.54 (second structure)", "(e16+e35,-e26+e45,e36,-e46,0,0)",
       {},
       {"g654b", "g654alt"}},
  };
  return defs;
}

CatalogEntry build_entry(const EntryDef& def, const std::map<std::string, double>& params) {
  LieAlgebra L = parse_structure_equations(def.structure, params, def.display);
  const double r2 = std::sqrt(2.0);

  if (def.name == "e11e11") {
    CatalogEntry e{std::move(L),
                   t2(1, 4) + t2(2, 3) + t2(5, 6, 2),
                   t3(1, 2, 5) - t3(1, 2, 6) - t3(1, 3, 5) - t3(1, 3, 6) +
                       t3(2, 4, 5) + t3(2, 4, 6) + t3(3, 4, 5) - t3(3, 4, 6),
                   t2(2, 5, 2) + t2(2, 6, 2) - t2(3, 5, 2) + t2(3, 6, 2),
                   diag6(1, 1, 1, 1, 2, 2)};
    e.table_row = true;
    e.expect_c = 2;
    e.expect_n2 = 8;
    e.expect_scal = -4;
    e.expect_soliton = true;
    e.soliton_lambda = 2;
    e.soliton_D = diag7(0, 0, 0, 0, 0, 0, -2);
    return e;
  }
  if (def.name == "g51") {
    CatalogEntry e{std::move(L), t2(1, 4) + t2(2, 6) + t2(3, 5),
                   t3(1, 2, 3) + t3(1, 5, 6) + t3(2, 4, 5) - t3(3, 4, 6),
                   t2(2, 6) - t2(3, 5), Eigen::MatrixXd::Identity(6, 6)};
    e.table_row = true;
    e.expect_nilpotent = true;
    e.expect_c = 2;
    e.expect_n2 = 2;
    e.expect_scal = -1;
    e.expect_soliton = true;
    e.soliton_lambda = 5;
    e.soliton_D = diag7(-1, -1, -1, -2, -2, -2, -2);
    return e;
  }
  if (def.name == "a57") {
    CatalogEntry e{std::move(L), -t2(1, 3) + t2(2, 4) + t2(5, 6),
                   -t3(1, 2, 6) - t3(1, 4, 5) - t3(2, 3, 5) - t3(3, 4, 6),
                   t2(1, 4, 2) - t2(2, 3, 2), Eigen::MatrixXd::Identity(6, 6)};
    e.table_row = true;
    e.expect_c = 4;
    e.expect_n2 = 8;
    e.expect_scal = -4;
    e.expect_soliton = true;
    e.soliton_lambda = 8;
    e.soliton_D = diag7(-2, -2, -2, -2, 0, -4, -4);
    return e;
  }
  if (def.name == "a517") {
    const double al = params.at("alpha");
    const double a2 = al * al;
    CatalogEntry e{std::move(L), t2(1, 3) + t2(2, 4) + t2(5, 6),
                   t3(1, 2, 5) - t3(1, 4, 6) + t3(2, 3, 6) - t3(3, 4, 5),
                   t2(1, 2, -2 * al) + t2(3, 4, -2 * al),
                   Eigen::MatrixXd::Identity(6, 6)};
    e.table_row = true;
    e.expect_c = 4 * a2;
    e.expect_n2 = 8 * a2;
    e.expect_scal = -4 * a2;
    e.expect_soliton = true;
    e.soliton_lambda = 8 * a2;
    e.soliton_D = a2 * diag7(-2, -2, -2, -2, 0, -4, -4);
    return e;
  }
  if (def.name == "g6n3") {
    CatalogEntry e{std::move(L), t2(1, 6, 2) + t2(2, 5) - t2(3, 4),
                   -t3(1, 2, 3) + t3(1, 4, 5) - t3(2, 4, 6, 2) - t3(3, 5, 6, 2),
                   t2(1, 6, 4) - t2(2, 5) + t2(3, 4), diag6(1, 1, 1, 1, 1, 4)};
    e.table_row = true;
    e.expect_nilpotent = true;
    e.expect_c = 6;
    e.expect_n2 = 6;
    e.expect_scal = -3;
    e.expect_soliton = true;
    e.soliton_lambda = 15;
    e.soliton_D = diag7(-3, -3, -3, -6, -6, -6, -6);
    return e;
  }
  if (def.name == "g638") {
    CatalogEntry e{std::move(L), -t2(1, 6, 2) + t2(3, 4) - t2(2, 5),
                   -t3(1, 3, 5, 2) - t3(1, 2, 4, 2) + t3(2, 3, 6) - t3(4, 5, 6),
                   t2(1, 6, 4) - t2(2, 5) + t2(3, 4), diag6(4, 1, 1, 1, 1, 1)};
    e.table_row = true;
    e.expect_c = 6;
    e.expect_n2 = 6;
    e.expect_scal = -3;
    return e;
  }
  if (def.name == "g654") {
    CatalogEntry e{std::move(L), t2(1, 4) + t2(2, 3) + t2(5, 6, r2),
                   t3(1, 2, 5) - t3(1, 3, 6, r2) + t3(2, 4, 6, r2) + t3(3, 4, 5),
                   t2(1, 3, r2) - t2(1, 4) + t2(2, 3) + t2(2, 4, r2),
                   diag6(1, 1, 1, 1, 1, 2)};
    e.table_row = true;
    e.expect_c = 2;
    e.expect_n2 = 6;
    e.expect_scal = -3;
    e.expect_soliton = true;
    e.soliton_lambda = 3;
    e.soliton_D = diag7(-1, -1, 0, 0, -1, 0, -2);
    return e;
  }
  if (def.name == "g6118") {
    CatalogEntry e{std::move(L), t2(1, 4) + t2(2, 3) - t2(5, 6),
                   t3(1, 2, 6) - t3(1, 3, 5) + t3(2, 4, 5) + t3(3, 4, 6),
                   t2(1, 2, 2) - t2(3, 4, 2), Eigen::MatrixXd::Identity(6, 6)};
    e.table_row = true;
    e.expect_c = 4;
    e.expect_n2 = 8;
    e.expect_scal = -4;
    return e;
  }
  if (def.name == "g654-alt") {
    CatalogEntry e{std::move(L), t2(1, 4) + t2(2, 3) + t2(5, 6),
                   t3(1, 2, 5) - t3(1, 3, 6) + t3(2, 4, 6) + t3(3, 4, 5),
                   t2(1, 3, 2) - t2(1, 4) + t2(2, 3) + t2(2, 4, 2),
                   Eigen::MatrixXd::Identity(6, 6)};
    e.expect_eigenform = false;
    e.expect_n2 = 10;
    e.expect_scal = -5;
    return e;
  }
  throw ValidationError("unknown catalog entry '" + def.name + "'");
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& d : entry_defs()) out.push_back(d.name);
    return out;
  }();
  return names;
}

std::string normalize_catalog_name(const std::string& s) {
  std::string out;
  for (char c : s)
    if (std::isalnum(static_cast<unsigned char>(c)))
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

namespace {

const EntryDef* find_def(const std::string& name) {
  const std::string key = normalize_catalog_name(name);
  for (const auto& d : entry_defs()) {
    if (normalize_catalog_name(d.name) == key) return &d;
    for (const auto& a : d.aliases)
      if (normalize_catalog_name(a) == key) return &d;
  }
  return nullptr;
}

}  // namespace

bool catalog_has(const std::string& name) { return find_def(name) != nullptr; }

CatalogEntry catalog_entry(const std::string& name,
                           const std::map<std::string, double>& params) {
  const EntryDef* def = find_def(name);
  if (def == nullptr)
    throw ValidationError("unknown catalog entry '" + name + "'");
  const auto bound = merge_params(def->defaults, params);
  CatalogEntry e = build_entry(*def, bound);
  e.name = def->name;
  e.display = def->display;
  e.structure = def->structure;
  e.params = bound;
  return e;
}

SU3Structure catalog_su3(const CatalogEntry& e) {
  return SU3Structure(e.algebra, e.omega, e.psi_plus);
}

ScalarFlowParameters twistor_flow_parameters() { return {24.0, 96.0}; }

}  // namespace g2flow
