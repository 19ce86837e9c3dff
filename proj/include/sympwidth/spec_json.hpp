#pragma once

#include <json.hpp>

#include "sympwidth/bodies.hpp"
#include "sympwidth/flows.hpp"

namespace sympwidth {

/// Builds a body from its JSON spec. Errors are SpecError carrying the JSON
/// pointer of the offending element (rooted at `path`).
Body parse_body(const nlohmann::json& spec, const std::string& path = "");

/// Builds a Hamiltonian on R^{2n} from its JSON spec.
HamiltonianSystem parse_hamiltonian(const nlohmann::json& spec, int n,
                                    const std::string& path = "");

/// Parses text as JSON, mapping syntax errors to SpecError.
nlohmann::json parse_json_text(const std::string& text, const std::string& what);

/// Quadratic-form matrix A of {x^T A x <= 1} for ellipsoids and linear
/// images of ellipsoids; SpecError otherwise.
Mat ellipsoid_form(const Body& body);

}  // namespace sympwidth
