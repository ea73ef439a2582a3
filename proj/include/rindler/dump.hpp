// Shared state-dump JSON schema and the CSV number format used by every
// data-emitting command.

#pragma once

#include <string>

#include <json.hpp>

#include "rindler/fock.hpp"

namespace rindler {

// {"register": [labels...], "amplitudes": [{"bits": "01...", "re": x, "im": y}]}
// with bits ordered register-first-to-last and entries sorted by basis index.
nlohmann::json state_dump(const StateVector& state);
StateVector state_from_dump(const nlohmann::json& dump);

// 9 significant digits; lowercase scientific when 0 < |x| < 1e-3.
std::string format_csv_number(double x);

}  // namespace rindler
