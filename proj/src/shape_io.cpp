#include "polyprime/shape_io.hpp"

#include <fstream>
#include <sstream>

namespace polyprime {

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) +
                                        ": " + what
                                  : what),
      line_(line),
      column_(column) {}

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string::npos) lines.pop_back();
  return lines;
}

Polyomino make_checked(std::vector<Cell> cells) {
  try {
    return Polyomino(std::move(cells));
  } catch (const GridError& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

}  // namespace

Polyomino parse_grid(std::string_view text) {
  std::vector<std::string> lines = split_lines(text);
  Coord ox = 0, oy = 0;
  std::size_t first = 0;
  if (!lines.empty() && lines[0].rfind("offset", 0) == 0) {
    std::istringstream in(lines[0].substr(6));
    long long x = 0, y = 0;
    std::string rest;
    if (!(in >> x >> y) || (in >> rest)) throw ParseError("malformed offset line, expected 'offset X Y'", 1, 1);
    ox = static_cast<Coord>(x);
    oy = static_cast<Coord>(y);
    first = 1;
  }
  if (first >= lines.size()) throw ParseError("grid has no rows", static_cast<int>(first) + 1, 1);
  const std::size_t rows = lines.size() - first;
  std::vector<Cell> cells;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string& row = lines[first + r];
    const Coord y = oy + static_cast<Coord>(rows - 1 - r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] == '#')
        cells.push_back({ox + static_cast<Coord>(c), y});
      else if (row[c] != '.')
        throw ParseError(std::string("unexpected character '") + row[c] + "'", static_cast<int>(first + r + 1),
                         static_cast<int>(c + 1));
    }
  }
  return make_checked(std::move(cells));
}

std::string to_grid(const Polyomino& p) {
  auto [lo, hi] = p.bounding_cells();
  std::string out;
  if (lo.x != 0 || lo.y != 0) out += "offset " + std::to_string(lo.x) + " " + std::to_string(lo.y) + "\n";
  for (Coord y = hi.y; y >= lo.y; --y) {
    std::string row;
    for (Coord x = lo.x; x <= hi.x; ++x) row.push_back(p.contains({x, y}) ? '#' : '.');
    out += row + "\n";
  }
  return out;
}

nlohmann::json cells_json(std::span<const Cell> cells) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Cell& c : cells) arr.push_back({c.x, c.y});
  return arr;
}

nlohmann::json points_json(std::span<const Point> points) {
  nlohmann::json arr = nlohmann::json::array();
  for (const Point& p : points) arr.push_back({p.x, p.y});
  return arr;
}

std::vector<Cell> cells_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("expected an array of [x, y] pairs", 0, 0);
  std::vector<Cell> cells;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() || !item[1].is_number_integer())
      throw ParseError("cell entries must be [x, y] integer pairs", 0, 0);
    cells.push_back({item[0].get<Coord>(), item[1].get<Coord>()});
  }
  return cells;
}

Polyomino parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte offset -> line/column
    std::size_t pos = std::min(e.byte, text.size());
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("invalid JSON", line, col);
  }
  if (!doc.is_object() || !doc.contains("cells")) throw ParseError("expected an object with a \"cells\" array", 0, 0);
  return make_checked(cells_from_json(doc["cells"]));
}

std::string to_json(const Polyomino& p) {
  nlohmann::json doc;
  doc["cells"] = cells_json(p.cells());
  return doc.dump() + "\n";
}

Polyomino load_shape(const std::string& path, std::optional<ShapeFormat> format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0, 0);
  std::stringstream buf;
  buf << in.rdbuf();
  if (!format) {
    format = path.size() >= 5 && path.substr(path.size() - 5) == ".json" ? ShapeFormat::Json : ShapeFormat::Grid;
  }
  return *format == ShapeFormat::Json ? parse_json(buf.str()) : parse_grid(buf.str());
}

}  // namespace polyprime
