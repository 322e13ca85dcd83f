#pragma once

#include <string>

#include "ufg/types.hpp"

namespace ufg {

/// Wire format: {"dim": n, "entries": [[re, im], ...]} with exactly dim^2
/// row-major pairs. Parse failures raise ConfigError carrying a line/column
/// diagnostic; the writer emits shortest round-trip decimals.
Matrix parse_matrix_json(const std::string& text);
std::string matrix_to_json(const Matrix& m);

Matrix read_matrix_json(const std::string& path);
void write_matrix_json(const std::string& path, const Matrix& m);

}  // namespace ufg
