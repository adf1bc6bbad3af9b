#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "polyprime/grid.hpp"

namespace polyprime {

/// Parse failure with a 1-based source position (0 when not applicable).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Text grid: rows of '#' (cell) and '.' (empty); the last row is the lowest
// y. An optional first line "offset X Y" places the lower-left character of
// the grid at cell (X, Y). Trailing '.' may be omitted.
Polyomino parse_grid(std::string_view text);
std::string to_grid(const Polyomino& p);

// JSON: {"cells": [[x, y], ...]}
Polyomino parse_json(std::string_view text);
nlohmann::json cells_json(std::span<const Cell> cells);
nlohmann::json points_json(std::span<const Point> points);
std::string to_json(const Polyomino& p);
std::vector<Cell> cells_from_json(const nlohmann::json& j);

enum class ShapeFormat { Grid, Json };

/// Reads a shape file; format guessed from the extension when not given.
Polyomino load_shape(const std::string& path, std::optional<ShapeFormat> format = std::nullopt);

}  // namespace polyprime
