#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "g2flow/flow.hpp"
#include "g2flow/g2warp.hpp"
#include "g2flow/kform.hpp"
#include "g2flow/lie_algebra.hpp"
#include "g2flow/su3.hpp"

namespace g2flow {

using Json = nlohmann::json;

/// {"dim": n, "deg": k, "terms": [{"idx": [i1,...,ik], "c": value}, ...]}
/// with terms in the canonical multi-index order.
Json kform_to_json(const KForm& f);
KForm kform_from_json(const Json& j);

/// {"name": str, "dim": n, "structure": "<tuple>", "params": {...}}.
/// Writing resolves parameters into the coefficients, so "params" is empty
/// on output but honored on input.
Json algebra_to_json(const LieAlgebra& L);
LieAlgebra algebra_from_json(const Json& j);

/// {"algebra": <object or catalog name>, "omega": ..., "psi_plus": ...}.
Json su3_to_json(const SU3Structure& S);
SU3Structure su3_from_json(const Json& j);

/// {"tau": ..., "tau_norm_sq": x, "closed": bool, "laplacian_phi": ...}.
Json torsion_report_json(const G2Torsion& T, bool closed);

/// {"derivation_residual": x, "soliton_residual": x, "lambda": x,
///  "type": "expanding|steady|shrinking"}.
Json soliton_report_json(double derivation_residual, double soliton_residual,
                         double lambda);

Json flow_samples_to_json(const std::vector<FlowSample>& samples);

/// CSV with header: t, one column per 3-form coefficient (phi_ijk in
/// canonical order), closedness_residual, det_g, tau_norm_sq.
std::string flow_samples_to_csv(const std::vector<FlowSample>& samples);

/// Reads and parses a JSON file; throws ParseError with the filename on
/// malformed input, ValidationError if the file cannot be read.
Json load_json_file(const std::string& path);

}  // namespace g2flow
