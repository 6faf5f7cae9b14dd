#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "modeshape/dae_model.hpp"

namespace modeshape {

/// Reads a linear model file: {"nu", "mu", "f_x", "f_y", "g_x", "g_y", "name"?, "x0"?, "y0"?}.
/// The f_y, g_x, g_y blocks may be omitted when mu == 0.
[[nodiscard]] JacobianSet load_linear_model(const std::filesystem::path& path);
[[nodiscard]] JacobianSet parse_linear_model(const nlohmann::json& doc);

/// Inverse of parse_linear_model. Doubles are written in shortest round-trip form.
[[nodiscard]] nlohmann::json linear_model_json(const JacobianSet& jac);

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// "%.12g"; non-finite values become "nan", "inf" and "-inf".
[[nodiscard]] std::string format_number(double value);

/// Rounds to 12 significant digits, so JSON output matches the CSV formatting.
[[nodiscard]] double round12(double value);

}  // namespace modeshape
