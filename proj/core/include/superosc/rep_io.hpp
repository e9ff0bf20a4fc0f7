#pragma once

#include <nlohmann/json.hpp>

#include "superosc/rep.hpp"

namespace superosc {

// {"rows": d, "data": [[re, im], ...]} in row-major order.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

// {"q", "dims", "parity", "bindings", "headroom"} plus "factors" and "letters",
// which carry the factor kinds and the letter table needed to reload the
// representation losslessly.
nlohmann::json to_json(const Representation& rep);
Representation representation_from_json(const nlohmann::json& j);

}  // namespace superosc
