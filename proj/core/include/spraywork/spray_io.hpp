#pragma once

#include <string>

#include "spraywork/expr.hpp"

namespace spraywork {

/// Reads a spray model from a file holding either
///   * a TOML-style table:  dimension = 3, label = "...",
///     coeffs = ["expr1", "expr2", "expr3"]   (comments with #), or
///   * a JSON object with the same keys (detected by a leading '{').
/// Expressions are parsed immediately; all parser errors carry positions.
SprayModel load_spray(const std::string& path);
SprayModel parse_spray_text(const std::string& text, const std::string& name);

/// Writes the TOML-style form; `load_spray` accepts the output verbatim.
void save_spray(const SprayModel& model, const std::string& path);
std::string spray_to_text(const SprayModel& model);

}  // namespace spraywork
