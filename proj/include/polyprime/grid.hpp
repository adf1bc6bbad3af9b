#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyprime {

using Coord = std::int32_t;

/// Lattice point of Z^2. Ordered lexicographically by (x, y); the
/// componentwise partial order is available through `leq`.
struct Point {
  Coord x = 0;
  Coord y = 0;
  auto operator<=>(const Point&) const = default;
};

/// Componentwise order: p <= q iff p.x <= q.x and p.y <= q.y.
inline bool leq(Point p, Point q) { return p.x <= q.x && p.y <= q.y; }
inline bool comparable(Point p, Point q) { return leq(p, q) || leq(q, p); }

/// Unit square [(x,y),(x+1,y+1)], named by its lower-left corner.
struct Cell {
  Coord x = 0;
  Coord y = 0;
  auto operator<=>(const Cell&) const = default;

  Point lower_left() const { return {x, y}; }
  Point upper_right() const { return {x + 1, y + 1}; }
  /// (x,y), (x+1,y), (x,y+1), (x+1,y+1)
  std::array<Point, 4> vertices() const {
    return {Point{x, y}, Point{x + 1, y}, Point{x, y + 1}, Point{x + 1, y + 1}};
  }
  bool has_vertex(Point p) const {
    return (p.x == x || p.x == x + 1) && (p.y == y || p.y == y + 1);
  }
};

enum class Orientation { Horizontal, Vertical };

const char* to_string(Orientation o);

/// Unit segment between two lattice points at distance one, stored with
/// `from < to`.
struct Edge {
  Point from;
  Point to;
  auto operator<=>(const Edge&) const = default;
  Orientation orientation() const {
    return from.y == to.y ? Orientation::Horizontal : Orientation::Vertical;
  }
};

Edge make_edge(Point p, Point q);

/// The four edges of a cell: bottom, right, top, left.
std::array<Edge, 4> cell_edges(Cell c);

bool edge_adjacent(Cell a, Cell b);
bool vertex_touching(Cell a, Cell b);

/// Interval [a,b] of Z^2 with a <= b componentwise.
struct LatticeInterval {
  Point a;
  Point b;
  auto operator<=>(const LatticeInterval&) const = default;

  static LatticeInterval make(Point a, Point b);  // throws if a !<= b

  bool proper() const { return a.x < b.x && a.y < b.y; }
  std::array<Point, 2> diagonal() const { return {a, b}; }
  /// (a.x, b.y) and (b.x, a.y)
  std::array<Point, 2> anti_diagonal() const {
    return {Point{a.x, b.y}, Point{b.x, a.y}};
  }
  std::array<Point, 4> corners() const {
    return {a, Point{a.x, b.y}, Point{b.x, a.y}, b};
  }
  bool is_corner(Point p) const {
    return (p.x == a.x || p.x == b.x) && (p.y == a.y || p.y == b.y);
  }
  bool contains(Point p) const { return leq(a, p) && leq(p, b); }
  Coord width() const { return b.x - a.x; }
  Coord height() const { return b.y - a.y; }
  /// Cells [A,B] spanned by the interval, lexicographic.
  std::vector<Cell> cells() const;
};

/// Lattice-point intersection of two intervals (empty if disjoint).
std::optional<LatticeInterval> intersect(const LatticeInterval& i, const LatticeInterval& j);

/// Maximal run of unit edges of a polyomino on one grid line. `line` is the
/// fixed coordinate; the interval covers lo..hi of the varying coordinate.
struct EdgeInterval {
  Orientation orientation = Orientation::Horizontal;
  Coord line = 0;
  Coord lo = 0;
  Coord hi = 0;
  auto operator<=>(const EdgeInterval&) const = default;

  bool contains(Point p) const;
  Point start() const;
  Point end() const;
  Coord length() const { return hi - lo; }
};

/// Consecutive collinear cells.
struct Block {
  Orientation orientation = Orientation::Horizontal;
  std::vector<Cell> cells;  // ascending along the run
  auto operator<=>(const Block&) const = default;
  bool operator==(const Block&) const = default;
  std::size_t length() const { return cells.size(); }
  std::vector<Point> vertices() const;
};

class GridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class EmptyPolyominoError : public GridError {
 public:
  EmptyPolyominoError() : GridError("polyomino has no cells") {}
};
class DisconnectedError : public GridError {
 public:
  DisconnectedError() : GridError("cells are not edge-connected") {}
};

/// One of the eight symmetries of the square lattice, acting on points as
/// p -> (m00*x + m01*y, m10*x + m11*y).
struct Symmetry {
  int m00 = 1, m01 = 0, m10 = 0, m11 = 1;
  auto operator<=>(const Symmetry&) const = default;

  static const std::array<Symmetry, 8>& all();
  Point apply(Point p) const;
  Cell apply(Cell c) const;
  Symmetry inverse() const;
  bool swaps_axes() const { return m00 == 0; }
};

/// Finite, nonempty, edge-connected set of cells. Immutable.
class Polyomino {
 public:
  /// Throws EmptyPolyominoError / DisconnectedError.
  explicit Polyomino(std::vector<Cell> cells);

  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t rank() const { return cells_.size(); }
  bool contains(Cell c) const;
  bool operator==(const Polyomino& other) const { return cells_ == other.cells_; }

  /// Number of edge-neighbours of c inside the polyomino.
  int degree(Cell c) const;
  std::vector<Cell> neighbours(Cell c) const;

  /// Lower-left and upper-right cell of the bounding box.
  std::pair<Cell, Cell> bounding_cells() const;

  Polyomino translated(Coord dx, Coord dy) const;
  Polyomino transformed(const Symmetry& s) const;

 private:
  std::vector<Cell> cells_;  // sorted, unique
};

bool is_connected(std::span<const Cell> cells);

std::vector<Point> vertices(const Polyomino& p);
std::vector<Edge> edges(const Polyomino& p);
/// Edges that belong to exactly one cell.
std::vector<Edge> border_edges(const Polyomino& p);
bool has_vertex(const Polyomino& p, Point v);
bool has_edge(const Polyomino& p, const Edge& e);

/// Splices out every closed sub-walk; the result is a path with the same
/// endpoints whose cells all occur in the walk. Throws GridError when two
/// consecutive cells are not edge-adjacent.
std::vector<Cell> walk_to_path(std::span<const Cell> walk);

/// Bounded complement components, lexicographic by least cell.
std::vector<Polyomino> holes(const Polyomino& p);
bool is_simple(const Polyomino& p);

std::vector<EdgeInterval> maximal_edge_intervals(const Polyomino& p, Orientation o);

/// All proper intervals whose cells lie in p, sorted by (a, b).
std::vector<LatticeInterval> inner_intervals(const Polyomino& p);
bool is_inner(const Polyomino& p, const LatticeInterval& i);

std::vector<Block> maximal_blocks(const Polyomino& p, Orientation o);

}  // namespace polyprime
