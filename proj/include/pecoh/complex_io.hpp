#pragma once

#include "pecoh/approximant.hpp"

#include <json.hpp>

#include <filesystem>

namespace pecoh {

/// {"rows": r, "cols": c, "entries": [[i, j, "v"], ...]}; values are decimal
/// strings so that arbitrary precision survives.
nlohmann::json matrix_to_json(const IntegerMatrix& m);
IntegerMatrix matrix_from_json(const nlohmann::json& doc);

/// Complex dump: dimension, optional level, and per dimension the cells with
/// labels and signed boundary lists [[cell, +-1], ...].
nlohmann::json complex_to_json(const ApproximantComplex& complex);
/// Throws InputError on schema violations.
ApproximantComplex complex_from_json(const nlohmann::json& doc);
ApproximantComplex load_complex(const std::filesystem::path& path);

nlohmann::json map_to_json(const CellularMap& map);

} // namespace pecoh
