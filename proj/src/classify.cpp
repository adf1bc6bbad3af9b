#include "polyprime/classify.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace polyprime {

bool is_closed_path_cycle(std::span<const Cell> cycle) {
  const std::size_t n = cycle.size();
  if (n <= 5) return false;
  std::set<Cell> distinct(cycle.begin(), cycle.end());
  if (distinct.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (!edge_adjacent(cycle[i], cycle[(i + 1) % n])) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t d = std::min(j - i, n - (j - i));
      if (d > 2 && vertex_touching(cycle[i], cycle[j])) return false;
    }
  return true;
}

std::optional<ClosedPathCert> closed_path_certificate(const Polyomino& p) {
  const auto& cells = p.cells();
  if (cells.size() <= 5) return std::nullopt;
  for (const Cell& c : cells)
    if (p.degree(c) != 2) return std::nullopt;
  std::vector<Cell> cycle{cells.front()};
  Cell prev = cells.front();
  Cell cur = p.neighbours(prev).front();  // neighbours() is sorted
  while (cur != cells.front()) {
    cycle.push_back(cur);
    auto nb = p.neighbours(cur);
    Cell next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
    if (cycle.size() > cells.size()) return std::nullopt;
  }
  // A union of several cycles leaves cells unvisited.
  if (cycle.size() != cells.size()) return std::nullopt;
  if (!is_closed_path_cycle(cycle)) return std::nullopt;
  return ClosedPathCert{std::move(cycle)};
}

bool is_l_configuration(const Polyomino& p, const LConfiguration& l) {
  for (const Cell& c : l.cells)
    if (!p.contains(c)) return false;
  const auto& a = l.cells;
  auto step = [](Cell u, Cell v) { return std::pair<Coord, Coord>{v.x - u.x, v.y - u.y}; };
  auto s1 = step(a[0], a[1]), s2 = step(a[1], a[2]), s3 = step(a[2], a[3]), s4 = step(a[3], a[4]);
  auto unit = [](std::pair<Coord, Coord> s) { return std::abs(s.first) + std::abs(s.second) == 1; };
  if (!unit(s1) || !unit(s2) || !unit(s3) || !unit(s4)) return false;
  if (s1 != s2 || s3 != s4) return false;
  return s1.first * s3.first + s1.second * s3.second == 0;  // orthogonal
}

std::vector<LConfiguration> find_l_configurations(const Polyomino& p) {
  std::vector<LConfiguration> out;
  for (const Cell& c : p.cells())
    for (Coord dx : {-1, 1})
      for (Coord dy : {-1, 1}) {
        Cell h1{c.x + dx, c.y}, h2{c.x + 2 * dx, c.y};
        Cell v1{c.x, c.y + dy}, v2{c.x, c.y + 2 * dy};
        if (p.contains(h1) && p.contains(h2) && p.contains(v1) && p.contains(v2))
          out.push_back({{h2, h1, c, v1, v2}});
      }
  return out;
}

bool has_block_of_length(const Polyomino& p, std::size_t k) {
  for (Orientation o : {Orientation::Horizontal, Orientation::Vertical})
    for (const Block& b : maximal_blocks(p, o))
      if (b.length() >= k) return true;
  return false;
}

namespace {

std::optional<Edge> block_contact(const Block& a, const Block& b) {
  auto va = a.vertices(), vb = b.vertices();
  std::vector<Point> common;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
  if (common.size() != 2) return std::nullopt;
  if (std::abs(common[0].x - common[1].x) + std::abs(common[0].y - common[1].y) != 1) return std::nullopt;
  return make_edge(common[0], common[1]);
}

bool same_edge_interval(const std::vector<EdgeInterval>& intervals, const Edge& e, const Edge& f) {
  for (const EdgeInterval& iv : intervals)
    if (iv.contains(e.from) && iv.contains(e.to)) return iv.contains(f.from) && iv.contains(f.to);
  return false;
}

struct LadderGraph {
  std::vector<Block> blocks;
  std::vector<std::vector<std::pair<std::size_t, Edge>>> adj;
  std::vector<EdgeInterval> intervals;
};

LadderGraph ladder_graph(const Polyomino& p, Orientation o) {
  LadderGraph g;
  for (Block& b : maximal_blocks(p, o))
    if (b.length() >= 2) g.blocks.push_back(std::move(b));
  g.adj.resize(g.blocks.size());
  for (std::size_t i = 0; i < g.blocks.size(); ++i)
    for (std::size_t j = 0; j < g.blocks.size(); ++j)
      if (i != j)
        if (auto e = block_contact(g.blocks[i], g.blocks[j])) g.adj[i].push_back({j, *e});
  g.intervals = maximal_edge_intervals(p, o);
  return g;
}

std::size_t block_index(const LadderGraph& g, const Block& b) {
  for (std::size_t i = 0; i < g.blocks.size(); ++i)
    if (g.blocks[i] == b) return i;
  return g.blocks.size();
}

// Whether chain (as block indices and contacts) can be extended past its last block.
bool extendable_forward(const LadderGraph& g, const std::vector<std::size_t>& chain,
                        const std::vector<Edge>& contacts) {
  for (const auto& [next, e] : g.adj[chain.back()]) {
    if (std::find(chain.begin(), chain.end(), next) != chain.end()) continue;
    if (!contacts.empty() && same_edge_interval(g.intervals, contacts.back(), e)) continue;
    return true;
  }
  return false;
}

void grow(const LadderGraph& g, std::vector<std::size_t>& chain, std::vector<Edge>& contacts,
          std::vector<std::pair<std::vector<std::size_t>, std::vector<Edge>>>& done) {
  bool extended = false;
  for (const auto& [next, e] : g.adj[chain.back()]) {
    if (std::find(chain.begin(), chain.end(), next) != chain.end()) continue;
    if (!contacts.empty() && same_edge_interval(g.intervals, contacts.back(), e)) continue;
    extended = true;
    chain.push_back(next);
    contacts.push_back(e);
    grow(g, chain, contacts, done);
    chain.pop_back();
    contacts.pop_back();
  }
  if (!extended) done.push_back({chain, contacts});
}

}  // namespace

bool is_ladder(const Polyomino& p, const Ladder& l) {
  if (l.blocks.size() < 2 || l.contacts.size() + 1 != l.blocks.size()) return false;
  auto maximal = maximal_blocks(p, l.orientation);
  for (const Block& b : l.blocks) {
    if (b.orientation != l.orientation || b.length() < 2) return false;
    if (std::find(maximal.begin(), maximal.end(), b) == maximal.end()) return false;
  }
  for (std::size_t i = 0; i < l.blocks.size(); ++i)
    for (std::size_t j = i + 1; j < l.blocks.size(); ++j)
      if (l.blocks[i] == l.blocks[j]) return false;
  for (std::size_t i = 0; i + 1 < l.blocks.size(); ++i) {
    auto e = block_contact(l.blocks[i], l.blocks[i + 1]);
    if (!e || *e != l.contacts[i]) return false;
  }
  auto intervals = maximal_edge_intervals(p, l.orientation);
  for (std::size_t i = 0; i + 1 < l.contacts.size(); ++i)
    if (same_edge_interval(intervals, l.contacts[i], l.contacts[i + 1])) return false;
  return true;
}

bool is_maximal_ladder(const Polyomino& p, const Ladder& l) {
  if (!is_ladder(p, l)) return false;
  LadderGraph g = ladder_graph(p, l.orientation);
  std::vector<std::size_t> chain;
  for (const Block& b : l.blocks) chain.push_back(block_index(g, b));
  std::vector<std::size_t> rev(chain.rbegin(), chain.rend());
  std::vector<Edge> rev_contacts(l.contacts.rbegin(), l.contacts.rend());
  return !extendable_forward(g, chain, l.contacts) && !extendable_forward(g, rev, rev_contacts);
}

std::vector<Ladder> find_ladders(const Polyomino& p, std::size_t min_steps) {
  std::vector<Ladder> out;
  for (Orientation o : {Orientation::Horizontal, Orientation::Vertical}) {
    LadderGraph g = ladder_graph(p, o);
    std::vector<std::pair<std::vector<std::size_t>, std::vector<Edge>>> done;
    for (std::size_t s = 0; s < g.blocks.size(); ++s) {
      std::vector<std::size_t> chain{s};
      std::vector<Edge> contacts;
      grow(g, chain, contacts, done);
    }
    for (auto& [chain, contacts] : done) {
      if (chain.size() < std::max<std::size_t>(min_steps, 2)) continue;
      // Keep one orientation of each chain, and only chains maximal at the front too.
      if (g.blocks[chain.front()].cells.front() > g.blocks[chain.back()].cells.front()) continue;
      std::vector<std::size_t> rev(chain.rbegin(), chain.rend());
      std::vector<Edge> rev_contacts(contacts.rbegin(), contacts.rend());
      if (extendable_forward(g, rev, rev_contacts)) continue;
      Ladder l{o, {}, contacts};
      for (std::size_t i : chain) l.blocks.push_back(g.blocks[i]);
      out.push_back(std::move(l));
    }
  }
  return out;
}

std::vector<Edge> OpenPath::free_edges_first() const {
  std::vector<Edge> out;
  if (cells.empty()) return out;
  for (const Edge& e : cell_edges(cells.front())) {
    bool shared = false;
    if (cells.size() > 1)
      for (const Edge& f : cell_edges(cells[1])) shared = shared || e == f;
    if (!shared) out.push_back(e);
  }
  return out;
}

std::vector<Edge> OpenPath::free_edges_last() const {
  OpenPath rev{{cells.rbegin(), cells.rend()}};
  return rev.free_edges_first();
}

bool is_open_path_sequence(std::span<const Cell> cells) {
  const std::size_t n = cells.size();
  if (n < 2) return false;
  std::set<Cell> distinct(cells.begin(), cells.end());
  if (distinct.size() != n) return false;
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!edge_adjacent(cells[i], cells[i + 1])) return false;
  // Read symmetrically: cells more than two steps apart share no vertex.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 3; j < n; ++j)
      if (vertex_touching(cells[i], cells[j])) return false;
  return true;
}

std::optional<OpenPath> open_path_certificate(const Polyomino& p) {
  const auto& cells = p.cells();
  if (cells.size() < 2) return std::nullopt;
  std::vector<Cell> ends;
  for (const Cell& c : cells) {
    int d = p.degree(c);
    if (d == 1)
      ends.push_back(c);
    else if (d != 2)
      return std::nullopt;
  }
  if (ends.size() != 2) return std::nullopt;
  std::vector<Cell> seq{ends.front()};
  Cell prev = ends.front();
  Cell cur = p.neighbours(prev).front();
  seq.push_back(cur);
  while (cur != ends.back()) {
    auto nb = p.neighbours(cur);
    Cell next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
    seq.push_back(cur);
    if (seq.size() > cells.size()) return std::nullopt;
  }
  if (seq.size() != cells.size() || !is_open_path_sequence(seq)) return std::nullopt;
  return OpenPath{std::move(seq)};
}

std::optional<Trimino> trimino_certificate(const Polyomino& p) {
  if (p.rank() != 3) return std::nullopt;
  const auto& c = p.cells();
  bool same_row = c[0].y == c[1].y && c[1].y == c[2].y;
  bool same_col = c[0].x == c[1].x && c[1].x == c[2].x;
  if (same_row || same_col) return std::nullopt;
  Cell middle{};
  std::vector<Cell> ends;
  for (const Cell& x : c) {
    if (p.degree(x) == 2)
      middle = x;
    else
      ends.push_back(x);
  }
  if (ends.size() != 2) return std::nullopt;
  // The vertex shared by all three cells.
  Point common{};
  for (Point v : middle.vertices())
    if (ends[0].has_vertex(v) && ends[1].has_vertex(v)) common = v;
  Trimino t{{ends[0], middle, ends[1]}, {}, {}};
  for (int k = 0; k < 2; ++k) {
    const Cell& e = ends[k];
    Point hook{2 * e.x + 1 - common.x, 2 * e.y + 1 - common.y};
    t.hooking_vertices[k] = hook;
    int m = 0;
    for (const Edge& edge : cell_edges(e))
      if (edge.from == hook || edge.to == hook) t.hooking_edges[k][m++] = edge;
  }
  return t;
}

}  // namespace polyprime
