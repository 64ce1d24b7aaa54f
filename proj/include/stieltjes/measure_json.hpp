#pragma once

#include <string>

#include <json.hpp>

#include "stieltjes/measure.hpp"

namespace stieltjes {

// JSON measure format:
//   {"atom_zero": r, "atom_infinity": r,
//    "atoms": [[u, m], ...],
//    "pieces": [{"interval": [a, b], "form": "constant", "c": r},
//               {"interval": [a, b], "form": "power", "c": r, "p": r, "q": r},
//               {"interval": [a, b], "form": "powersum", "terms": [...]}]}
// "inf" is accepted (and emitted) for an infinite right endpoint.  The
// "power" form is c * u^p * (b-u)^q; "powersum" terms carry
// {"c", "p", "a", "qa", "b", "qb"} for c * u^p * (u-a)^qa * (b-u)^qb.
nlohmann::json measure_to_json(const Measure& mu);
Measure measure_from_json(const nlohmann::json& j);

Measure load_measure(const std::string& path);
void save_measure(const Measure& mu, const std::string& path);

}  // namespace stieltjes
