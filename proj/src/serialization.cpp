#include "g2flow/serialization.hpp"

#include <cstdio>
#include <fstream>

#include "g2flow/catalog.hpp"
#include "g2flow/errors.hpp"

namespace g2flow {

namespace {

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void bad_field(const std::string& what) {
  throw ParseError("malformed JSON input: " + what);
}

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    bad_field(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

Json kform_to_json(const KForm& f) {
  Json terms = Json::array();
  for (const auto& [mask, c] : f.terms())
    terms.push_back(Json{{"idx", mask_to_indices(mask)}, {"c", c}});
  return Json{{"dim", f.dim()}, {"deg", f.degree()}, {"terms", std::move(terms)}};
}

KForm kform_from_json(const Json& j) {
  try {
    const int dim = need(j, "dim").get<int>();
    const int deg = need(j, "deg").get<int>();
    KForm::Terms terms;
    for (const auto& t : need(j, "terms")) {
      const std::vector<int> idx = need(t, "idx").get<std::vector<int>>();
      const double c = need(t, "c").get<double>();
      terms[mask_from_indices(idx, dim)] += c;
    }
    return KForm(dim, deg, std::move(terms));
  } catch (const Json::exception& e) {
    bad_field(e.what());
  }
}

Json algebra_to_json(const LieAlgebra& L) {
  return Json{{"name", L.name()},
              {"dim", L.dim()},
              {"structure", print_structure_equations(L)},
              {"params", Json::object()}};
}

LieAlgebra algebra_from_json(const Json& j) {
  try {
    const std::string structure = need(j, "structure").get<std::string>();
    std::map<std::string, double> params;
    if (j.contains("params") && !j.at("params").is_null())
      params = j.at("params").get<std::map<std::string, double>>();
    const std::string name = j.value("name", std::string());
    LieAlgebra L = parse_structure_equations(structure, params, name);
    if (j.contains("dim") && j.at("dim").get<int>() != L.dim())
      bad_field("declared dim does not match the structure tuple length");
    return L;
  } catch (const Json::exception& e) {
    bad_field(e.what());
  }
}

Json su3_to_json(const SU3Structure& S) {
  return Json{{"algebra", algebra_to_json(S.algebra())},
              {"omega", kform_to_json(S.omega())},
              {"psi_plus", kform_to_json(S.psi_plus())}};
}

SU3Structure su3_from_json(const Json& j) {
  const Json& alg = need(j, "algebra");
  const KForm omega = kform_from_json(need(j, "omega"));
  const KForm psi = kform_from_json(need(j, "psi_plus"));
  if (alg.is_string())
    return SU3Structure(catalog_entry(alg.get<std::string>()).algebra, omega, psi);
  return SU3Structure(algebra_from_json(alg), omega, psi);
}

Json torsion_report_json(const G2Torsion& T, bool closed) {
  return Json{{"tau", kform_to_json(T.tau)},
              {"tau_norm_sq", T.norm_sq},
              {"closed", closed},
              {"laplacian_phi", kform_to_json(T.laplacian_phi)}};
}

Json soliton_report_json(double derivation_residual, double soliton_residual,
                         double lambda) {
  return Json{{"derivation_residual", derivation_residual},
              {"soliton_residual", soliton_residual},
              {"lambda", lambda},
              {"type", lambda > 0 ? "expanding" : (lambda < 0 ? "shrinking" : "steady")}};
}

Json flow_samples_to_json(const std::vector<FlowSample>& samples) {
  Json out = Json::array();
  for (const auto& s : samples)
    out.push_back(Json{{"t", s.t},
                       {"phi", kform_to_json(s.phi)},
                       {"closedness_residual", s.closedness_residual},
                       {"det_g", s.det_g},
                       {"tau_norm_sq", s.tau_norm_sq}});
  return out;
}

std::string flow_samples_to_csv(const std::vector<FlowSample>& samples) {
  const std::vector<Mask> basis = masks_of_degree(7, 3);
  std::string out = "t";
  for (const Mask m : basis) {
    out += ",phi_";
    for (int i : mask_to_indices(m)) out += static_cast<char>('0' + i);
  }
  out += ",closedness_residual,det_g,tau_norm_sq\n";
  for (const auto& s : samples) {
    out += csv_number(s.t);
    for (const Mask m : basis) {
      out += ',';
      out += csv_number(s.phi.coeff(m));
    }
    out += ',';
    out += csv_number(s.closedness_residual);
    out += ',';
    out += csv_number(s.det_g);
    out += ',';
    out += csv_number(s.tau_norm_sq);
    out += '\n';
  }
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace g2flow
