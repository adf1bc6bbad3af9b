#include "polyprime/grid.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace polyprime {

const char* to_string(Orientation o) {
  return o == Orientation::Horizontal ? "horizontal" : "vertical";
}

Edge make_edge(Point p, Point q) {
  int d = std::abs(p.x - q.x) + std::abs(p.y - q.y);
  if (d != 1) throw GridError("edge endpoints must be at unit distance");
  return p < q ? Edge{p, q} : Edge{q, p};
}

std::array<Edge, 4> cell_edges(Cell c) {
  Point a{c.x, c.y}, b{c.x + 1, c.y}, d{c.x, c.y + 1}, e{c.x + 1, c.y + 1};
  return {Edge{a, b}, Edge{b, e}, Edge{d, e}, Edge{a, d}};
}

bool edge_adjacent(Cell a, Cell b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y) == 1;
}

bool vertex_touching(Cell a, Cell b) {
  return std::abs(a.x - b.x) <= 1 && std::abs(a.y - b.y) <= 1;
}

LatticeInterval LatticeInterval::make(Point a, Point b) {
  if (!leq(a, b)) throw GridError("interval corners must satisfy a <= b");
  return {a, b};
}

std::vector<Cell> LatticeInterval::cells() const {
  std::vector<Cell> out;
  for (Coord x = a.x; x < b.x; ++x)
    for (Coord y = a.y; y < b.y; ++y) out.push_back({x, y});
  return out;
}

std::optional<LatticeInterval> intersect(const LatticeInterval& i, const LatticeInterval& j) {
  Point lo{std::max(i.a.x, j.a.x), std::max(i.a.y, j.a.y)};
  Point hi{std::min(i.b.x, j.b.x), std::min(i.b.y, j.b.y)};
  if (!leq(lo, hi)) return std::nullopt;
  return LatticeInterval{lo, hi};
}

bool EdgeInterval::contains(Point p) const {
  if (orientation == Orientation::Horizontal) return p.y == line && lo <= p.x && p.x <= hi;
  return p.x == line && lo <= p.y && p.y <= hi;
}

Point EdgeInterval::start() const {
  return orientation == Orientation::Horizontal ? Point{lo, line} : Point{line, lo};
}

Point EdgeInterval::end() const {
  return orientation == Orientation::Horizontal ? Point{hi, line} : Point{line, hi};
}

std::vector<Point> Block::vertices() const {
  std::set<Point> pts;
  for (const Cell& c : cells)
    for (Point v : c.vertices()) pts.insert(v);
  return {pts.begin(), pts.end()};
}

const std::array<Symmetry, 8>& Symmetry::all() {
  static const std::array<Symmetry, 8> syms = {{
      {1, 0, 0, 1},    // identity
      {0, -1, 1, 0},   // rotate 90
      {-1, 0, 0, -1},  // rotate 180
      {0, 1, -1, 0},   // rotate 270
      {-1, 0, 0, 1},   // mirror x
      {1, 0, 0, -1},   // mirror y
      {0, 1, 1, 0},    // transpose
      {0, -1, -1, 0},  // anti-transpose
  }};
  return syms;
}

Point Symmetry::apply(Point p) const {
  return {m00 * p.x + m01 * p.y, m10 * p.x + m11 * p.y};
}

Cell Symmetry::apply(Cell c) const {
  Point p = apply(c.lower_left());
  Point q = apply(c.upper_right());
  return {std::min(p.x, q.x), std::min(p.y, q.y)};
}

Symmetry Symmetry::inverse() const {
  // Orthogonal matrix: inverse is the transpose.
  return {m00, m10, m01, m11};
}

Polyomino::Polyomino(std::vector<Cell> cells) : cells_(std::move(cells)) {
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
  if (cells_.empty()) throw EmptyPolyominoError();
  if (!is_connected(cells_)) throw DisconnectedError();
}

bool Polyomino::contains(Cell c) const {
  return std::binary_search(cells_.begin(), cells_.end(), c);
}

int Polyomino::degree(Cell c) const {
  int d = 0;
  for (Cell n : {Cell{c.x + 1, c.y}, Cell{c.x - 1, c.y}, Cell{c.x, c.y + 1}, Cell{c.x, c.y - 1}})
    d += contains(n) ? 1 : 0;
  return d;
}

std::vector<Cell> Polyomino::neighbours(Cell c) const {
  std::vector<Cell> out;
  for (Cell n : {Cell{c.x - 1, c.y}, Cell{c.x, c.y - 1}, Cell{c.x, c.y + 1}, Cell{c.x + 1, c.y}})
    if (contains(n)) out.push_back(n);
  return out;
}

std::pair<Cell, Cell> Polyomino::bounding_cells() const {
  Cell lo = cells_.front(), hi = cells_.front();
  for (const Cell& c : cells_) {
    lo = {std::min(lo.x, c.x), std::min(lo.y, c.y)};
    hi = {std::max(hi.x, c.x), std::max(hi.y, c.y)};
  }
  return {lo, hi};
}

Polyomino Polyomino::translated(Coord dx, Coord dy) const {
  std::vector<Cell> out;
  out.reserve(cells_.size());
  for (const Cell& c : cells_) out.push_back({c.x + dx, c.y + dy});
  return Polyomino(std::move(out));
}

Polyomino Polyomino::transformed(const Symmetry& s) const {
  std::vector<Cell> out;
  out.reserve(cells_.size());
  for (const Cell& c : cells_) out.push_back(s.apply(c));
  return Polyomino(std::move(out));
}

bool is_connected(std::span<const Cell> cells) {
  if (cells.empty()) return false;
  std::set<Cell> pending(cells.begin(), cells.end());
  std::queue<Cell> frontier;
  frontier.push(*pending.begin());
  pending.erase(pending.begin());
  while (!frontier.empty()) {
    Cell c = frontier.front();
    frontier.pop();
    for (Cell n : {Cell{c.x + 1, c.y}, Cell{c.x - 1, c.y}, Cell{c.x, c.y + 1}, Cell{c.x, c.y - 1}}) {
      auto it = pending.find(n);
      if (it != pending.end()) {
        frontier.push(n);
        pending.erase(it);
      }
    }
  }
  return pending.empty();
}

std::vector<Point> vertices(const Polyomino& p) {
  std::vector<Point> out;
  out.reserve(p.rank() * 4);
  for (const Cell& c : p.cells())
    for (Point v : c.vertices()) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Edge> edges(const Polyomino& p) {
  std::vector<Edge> out;
  for (const Cell& c : p.cells())
    for (const Edge& e : cell_edges(c)) out.push_back(e);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Edge> border_edges(const Polyomino& p) {
  std::map<Edge, int> count;
  for (const Cell& c : p.cells())
    for (const Edge& e : cell_edges(c)) ++count[e];
  std::vector<Edge> out;
  for (const auto& [e, n] : count)
    if (n == 1) out.push_back(e);
  return out;
}

bool has_vertex(const Polyomino& p, Point v) {
  for (Coord dx : {-1, 0})
    for (Coord dy : {-1, 0})
      if (p.contains({v.x + dx, v.y + dy})) return true;
  return false;
}

bool has_edge(const Polyomino& p, const Edge& e) {
  if (e.orientation() == Orientation::Horizontal)
    return p.contains({e.from.x, e.from.y}) || p.contains({e.from.x, e.from.y - 1});
  return p.contains({e.from.x, e.from.y}) || p.contains({e.from.x - 1, e.from.y});
}

std::vector<Cell> walk_to_path(std::span<const Cell> walk) {
  for (std::size_t i = 1; i < walk.size(); ++i)
    if (!edge_adjacent(walk[i - 1], walk[i]))
      throw GridError("walk cells " + std::to_string(i - 1) + " and " + std::to_string(i) +
                      " do not share an edge");
  std::vector<Cell> path;
  std::map<Cell, std::size_t> position;
  for (const Cell& c : walk) {
    auto it = position.find(c);
    if (it != position.end()) {
      for (std::size_t k = it->second + 1; k < path.size(); ++k) position.erase(path[k]);
      path.resize(it->second + 1);
      continue;
    }
    position[c] = path.size();
    path.push_back(c);
  }
  return path;
}

std::vector<Polyomino> holes(const Polyomino& p) {
  auto [lo, hi] = p.bounding_cells();
  const Coord x0 = lo.x - 1, y0 = lo.y - 1;
  const Coord w = hi.x - lo.x + 3, h = hi.y - lo.y + 3;
  // 0 = free, 1 = cell of p, 2 = exterior, 3+ = hole label
  std::vector<int> mark(static_cast<std::size_t>(w) * h, 0);
  auto at = [&](Coord x, Coord y) -> int& { return mark[static_cast<std::size_t>(y - y0) * w + (x - x0)]; };
  for (const Cell& c : p.cells()) at(c.x, c.y) = 1;

  auto flood = [&](Coord sx, Coord sy, int label, std::vector<Cell>* collect) {
    std::queue<Cell> q;
    q.push({sx, sy});
    at(sx, sy) = label;
    while (!q.empty()) {
      Cell c = q.front();
      q.pop();
      if (collect) collect->push_back(c);
      for (Cell n : {Cell{c.x + 1, c.y}, Cell{c.x - 1, c.y}, Cell{c.x, c.y + 1}, Cell{c.x, c.y - 1}}) {
        if (n.x < x0 || n.y < y0 || n.x >= x0 + w || n.y >= y0 + h) continue;
        if (at(n.x, n.y) != 0) continue;
        at(n.x, n.y) = label;
        q.push(n);
      }
    }
  };
  flood(x0, y0, 2, nullptr);

  std::vector<Polyomino> out;
  int label = 3;
  for (Coord x = x0; x < x0 + w; ++x)
    for (Coord y = y0; y < y0 + h; ++y)
      if (at(x, y) == 0) {
        std::vector<Cell> comp;
        flood(x, y, label++, &comp);
        out.emplace_back(std::move(comp));
      }
  std::sort(out.begin(), out.end(),
            [](const Polyomino& a, const Polyomino& b) { return a.cells().front() < b.cells().front(); });
  return out;
}

bool is_simple(const Polyomino& p) { return holes(p).empty(); }

std::vector<EdgeInterval> maximal_edge_intervals(const Polyomino& p, Orientation o) {
  // line -> set of unit starts along the line
  std::map<Coord, std::set<Coord>> runs;
  for (const Edge& e : edges(p)) {
    if (e.orientation() != o) continue;
    if (o == Orientation::Horizontal)
      runs[e.from.y].insert(e.from.x);
    else
      runs[e.from.x].insert(e.from.y);
  }
  std::vector<EdgeInterval> out;
  for (const auto& [line, starts] : runs) {
    auto it = starts.begin();
    while (it != starts.end()) {
      Coord lo = *it, hi = *it + 1;
      ++it;
      while (it != starts.end() && *it == hi) {
        ++hi;
        ++it;
      }
      out.push_back({o, line, lo, hi});
    }
  }
  return out;
}

bool is_inner(const Polyomino& p, const LatticeInterval& i) {
  if (!i.proper()) return false;
  for (Coord x = i.a.x; x < i.b.x; ++x)
    for (Coord y = i.a.y; y < i.b.y; ++y)
      if (!p.contains({x, y})) return false;
  return true;
}

std::vector<LatticeInterval> inner_intervals(const Polyomino& p) {
  std::vector<LatticeInterval> out;
  for (const Cell& c : p.cells()) {
    // Grow width column by column, tracking the tallest feasible height.
    Coord max_h = 0;
    while (p.contains({c.x, c.y + max_h})) ++max_h;
    for (Coord w = 1; p.contains({c.x + w - 1, c.y}) && max_h > 0; ++w) {
      Coord h = 0;
      while (h < max_h && p.contains({c.x + w - 1, c.y + h})) ++h;
      max_h = h;
      for (Coord k = 1; k <= max_h; ++k)
        out.push_back({Point{c.x, c.y}, Point{c.x + w, c.y + k}});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Block> maximal_blocks(const Polyomino& p, Orientation o) {
  std::vector<Block> out;
  const Coord dx = o == Orientation::Horizontal ? 1 : 0;
  const Coord dy = o == Orientation::Horizontal ? 0 : 1;
  for (const Cell& c : p.cells()) {
    if (p.contains({c.x - dx, c.y - dy})) continue;  // not the start of a run
    Block b{o, {}};
    for (Cell cur = c; p.contains(cur); cur = {cur.x + dx, cur.y + dy}) b.cells.push_back(cur);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace polyprime
