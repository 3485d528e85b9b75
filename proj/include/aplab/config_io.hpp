#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "aplab/transport_model.hpp"

namespace aplab {

/// Keys accepted in a config document, in canonical order.
const std::vector<std::string>& config_keys();

/// Reads the flat key-value config. "tau": "auto" resolves to 0.9 times the
/// largest CFL-admissible step. Missing h is derived from the domain; if
/// both are present they must satisfy x_right - x_left = (Nx+1) h.
/// Unknown keys throw std::invalid_argument listing the valid ones.
GridConfig config_from_json(const nlohmann::json& doc);
GridConfig load_config(const std::filesystem::path& path);

/// All fields materialized, tau as a number.
nlohmann::json config_to_json(const GridConfig& cfg);

/// Applies `key=value` on top of a raw config document. The value is parsed
/// as JSON when possible and kept as a string otherwise.
void apply_override(nlohmann::json& doc, const std::string& key,
                    const std::string& value);

}  // namespace aplab
