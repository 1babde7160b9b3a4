#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "bloch/registry.hpp"

namespace bloch {

/// {"dim", "bands", "hoppings": [{"a", "re", "im"?}], "trs"?: {"u_re", "u_im"?}}
ModelDocument model_from_json(const nlohmann::json& doc);
nlohmann::ordered_json model_to_json(const ModelDocument& doc);

ModelDocument load_model_file(const std::filesystem::path& path);

/// Row-major nested arrays; missing imaginary part means zero.
Matrix matrix_from_json(const nlohmann::json& re, const nlohmann::json* im, const std::string& what);

} // namespace bloch
