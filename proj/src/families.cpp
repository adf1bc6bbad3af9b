#include "polyprime/families.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "polyprime/shape_io.hpp"

namespace polyprime {

namespace {

std::vector<Cell> normalized(std::vector<Cell> cells) {
  Coord mx = cells.front().x, my = cells.front().y;
  for (const Cell& c : cells) {
    mx = std::min(mx, c.x);
    my = std::min(my, c.y);
  }
  for (Cell& c : cells) c = {c.x - mx, c.y - my};
  std::sort(cells.begin(), cells.end());
  return cells;
}

}  // namespace

std::vector<Cell> canonical_form(const Polyomino& p) {
  std::vector<Cell> best;
  for (const Symmetry& s : Symmetry::all()) {
    std::vector<Cell> img;
    img.reserve(p.rank());
    for (const Cell& c : p.cells()) img.push_back(s.apply(c));
    img = normalized(std::move(img));
    if (best.empty() || img < best) best = std::move(img);
  }
  return best;
}

Polyomino canonical_polyomino(const Polyomino& p) { return Polyomino(canonical_form(p)); }

// ---- Enumeration -------------------------------------------------------------

namespace {

// Cycles A_1 = (0,0) (least cell), A_2 = (0,1), closing at A_n = (1,0).
// Every closed path has exactly one such cycle per translate with its least
// cell at the origin, so each cell set is produced once.
class CycleSearch {
 public:
  explicit CycleSearch(std::size_t max_rank) : max_rank_(max_rank) {}

  void run_from(std::vector<Cell> prefix, std::vector<std::vector<Cell>>& out) {
    path_ = std::move(prefix);
    out_ = &out;
    dfs();
  }

  // Prefixes of length `depth` (no cycle closes before six cells).
  std::vector<std::vector<Cell>> prefixes(std::size_t depth) {
    std::vector<std::vector<Cell>> res;
    path_ = {Cell{0, 0}, Cell{0, 1}};
    collect(depth, res);
    return res;
  }

 private:
  static constexpr Cell kClose{1, 0};

  static bool above_root(Cell c) { return c.x > 0 || (c.x == 0 && c.y > 0); }

  bool used(Cell c) const { return std::find(path_.begin(), path_.end(), c) != path_.end(); }

  // Whether c may be appended as A_k (1-based k = path_.size() + 1).
  bool admissible(Cell c) const {
    const std::size_t k = path_.size() + 1;
    if (!above_root(c) || used(c)) return false;
    const bool closing = c == kClose;
    if (closing) return k >= 6;
    if (k + 1 > max_rank_) return false;
    const std::size_t dist = static_cast<std::size_t>(std::abs(c.x - 1) + std::abs(c.y));
    if (dist > max_rank_ - k) return false;
    // Previous cell touching A_1 forces closure next.
    if (k >= 5 && vertex_touching(path_.back(), path_.front())) return false;
    for (std::size_t j = 1; j + 2 < k; ++j) {  // A_j with j <= k-3 (1-based)
      if (!vertex_touching(c, path_[j - 1])) continue;
      // Touching A_1 is fine only for A_{n-1}, which must sit next to A_n.
      if (j == 1 && edge_adjacent(c, kClose)) continue;
      return false;
    }
    return true;
  }

  template <typename F>
  void for_each_neighbour(Cell c, F&& f) const {
    const Cell nb[4] = {{c.x + 1, c.y}, {c.x - 1, c.y}, {c.x, c.y + 1}, {c.x, c.y - 1}};
    for (const Cell& d : nb) f(d);
  }

  void dfs() {
    for_each_neighbour(path_.back(), [&](Cell d) {
      if (!admissible(d)) return;
      path_.push_back(d);
      if (d == kClose) {
        if (is_closed_path_cycle(path_)) out_->push_back(path_);
      } else {
        dfs();
      }
      path_.pop_back();
    });
  }

  void collect(std::size_t depth, std::vector<std::vector<Cell>>& res) {
    if (path_.size() == depth) {
      res.push_back(path_);
      return;
    }
    for_each_neighbour(path_.back(), [&](Cell d) {
      if (!admissible(d) || d == kClose) return;
      path_.push_back(d);
      collect(depth, res);
      path_.pop_back();
    });
  }

  std::size_t max_rank_;
  std::vector<Cell> path_;
  std::vector<std::vector<Cell>>* out_ = nullptr;
};

template <typename F>
void parallel_for(std::size_t n, unsigned jobs, F&& f) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, n); ++t)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<Polyomino> enumerate_closed_paths(std::size_t max_rank, unsigned jobs) {
  if (max_rank < 6) return {};
  CycleSearch root(max_rank);
  const auto prefixes = root.prefixes(5);
  std::vector<std::vector<std::vector<Cell>>> found(prefixes.size());
  parallel_for(prefixes.size(), jobs, [&](std::size_t i) {
    CycleSearch s(max_rank);
    s.run_from(prefixes[i], found[i]);
  });

  std::vector<std::vector<Cell>> shapes;
  for (auto& bucket : found)
    for (auto& cycle : bucket) {
      std::vector<Cell> cells = normalized(cycle);
      if (canonical_form(Polyomino(cells)) == cells) shapes.push_back(std::move(cells));
    }
  std::sort(shapes.begin(), shapes.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  shapes.erase(std::unique(shapes.begin(), shapes.end()), shapes.end());
  std::vector<Polyomino> out;
  out.reserve(shapes.size());
  for (auto& s : shapes) out.emplace_back(std::move(s));
  return out;
}

// ---- Families ----------------------------------------------------------------

ConditionViolated::ConditionViolated(std::string family, int clause, const std::string& detail)
    : std::invalid_argument(family + ": condition " + std::to_string(clause) + " violated: " + detail),
      family_(std::move(family)),
      clause_(clause) {}

const char* to_string(FamilySpec::Kind k) {
  switch (k) {
    case FamilySpec::Kind::PSC: return "psc";
    case FamilySpec::Kind::RectangleLinked: return "rectangle-linked";
    case FamilySpec::Kind::GoodLRectangle: return "l-rectangle";
    case FamilySpec::Kind::LadderRectangle: return "ladder-rectangle";
  }
  return "?";
}

namespace {

std::set<Point> vertex_set(const std::vector<Cell>& cells) {
  std::set<Point> out;
  for (const Cell& c : cells)
    for (Point v : c.vertices()) out.insert(v);
  return out;
}

std::set<Edge> edge_set(const std::vector<Cell>& cells) {
  std::set<Edge> out;
  for (const Cell& c : cells)
    for (const Edge& e : cell_edges(c)) out.insert(e);
  return out;
}

template <typename T>
std::vector<T> meet(const std::set<T>& a, const std::set<T>& b) {
  std::vector<T> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains_edge(const std::vector<Edge>& es, const Edge& e) { return std::find(es.begin(), es.end(), e) != es.end(); }

std::string fmt(Point p) { return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")"; }

// Cells of the parts are pairwise distinct and their union is connected.
Polyomino union_of(const std::string& family, const std::vector<const std::vector<Cell>*>& parts) {
  std::vector<Cell> all;
  for (const auto* p : parts) all.insert(all.end(), p->begin(), p->end());
  std::vector<Cell> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ConditionViolated(family, 1, "parts share a cell");
  if (!is_connected(sorted)) throw ConditionViolated(family, 1, "union is not connected");
  return Polyomino(std::move(sorted));
}

void require_simple(const std::string& family, const std::vector<Cell>& cells, const char* name) {
  if (cells.empty() || !is_connected(cells)) throw ConditionViolated(family, 0, std::string(name) + " is not a polyomino");
  if (!is_simple(Polyomino(cells))) throw ConditionViolated(family, 0, std::string(name) + " is not simple");
}

// The single edge shared by a trimino end and another part must be a hooking
// edge; returns which hooking vertex it belongs to.
int hooking_side(const Trimino& t, const Edge& e) {
  for (int s = 0; s < 2; ++s)
    if (contains_edge({t.hooking_edges[s].begin(), t.hooking_edges[s].end()}, e)) return s;
  return -1;
}

}  // namespace

FamilyInstance build_psc(const std::vector<Cell>& s, const std::vector<Cell>& c_in, const std::vector<Cell>& t1,
                         const std::vector<Cell>& t2) {
  const std::string fam = "P(S,C)";
  require_simple(fam, s, "S");
  if (!is_open_path_sequence(c_in)) throw ConditionViolated(fam, 0, "C is not an open path");
  auto tr1 = t1.size() == 3 && is_connected(t1) ? trimino_certificate(Polyomino(t1)) : std::nullopt;
  auto tr2 = t2.size() == 3 && is_connected(t2) ? trimino_certificate(Polyomino(t2)) : std::nullopt;
  if (!tr1 || !tr2) throw ConditionViolated(fam, 0, "T1 and T2 must be triminoes");

  std::vector<Cell> c = c_in;
  {
    auto e1 = edge_set({c.front()});
    auto et1 = edge_set(t1);
    if (meet(e1, et1).empty()) std::reverse(c.begin(), c.end());
  }
  Polyomino p = union_of(fam, {&s, &c, &t1, &t2});

  const auto vs = vertex_set(s), vc = vertex_set(c), vt1 = vertex_set(t1), vt2 = vertex_set(t2);
  if (!meet(vs, vc).empty()) throw ConditionViolated(fam, 2, "V(S) and V(C) intersect");
  if (!meet(vt1, vt2).empty()) throw ConditionViolated(fam, 2, "V(T1) and V(T2) intersect");

  const auto es = edge_set(s);
  int side_s[2];
  const Trimino* trs[2] = {&*tr1, &*tr2};
  const std::vector<Cell>* ts[2] = {&t1, &t2};
  for (int k = 0; k < 2; ++k) {
    auto shared = meet(es, edge_set(*ts[k]));
    if (shared.size() != 1) throw ConditionViolated(fam, 3, "S must share exactly one edge with T" + std::to_string(k + 1));
    side_s[k] = hooking_side(*trs[k], shared.front());
    if (side_s[k] < 0) throw ConditionViolated(fam, 3, "edge shared by S and T" + std::to_string(k + 1) + " is not a hooking edge");
  }
  const Cell ends[2] = {c.front(), c.back()};
  for (int k = 0; k < 2; ++k) {
    auto shared = meet(edge_set(c), edge_set(*ts[k]));
    if (shared.size() != 1) throw ConditionViolated(fam, 4, "C must share exactly one edge with T" + std::to_string(k + 1));
    auto end_edges = cell_edges(ends[k]);
    if (!contains_edge({end_edges.begin(), end_edges.end()}, shared.front()))
      throw ConditionViolated(fam, 4, "T" + std::to_string(k + 1) + " does not meet the matching end of C");
    int side = hooking_side(*trs[k], shared.front());
    if (side < 0 || side == side_s[k])
      throw ConditionViolated(fam, 4, "edge shared by C and T" + std::to_string(k + 1) + " is not at the other hooking vertex");
  }
  if (meet(vs, vt1).size() != 2 || meet(vs, vt2).size() != 2 || meet(vc, vt1).size() != 2 || meet(vc, vt2).size() != 2)
    throw ConditionViolated(fam, 5, "each attachment must share exactly two vertices");

  FamilySpec spec;
  spec.kind = FamilySpec::Kind::PSC;
  spec.parts = {{"S", s}, {"C", c}, {"T1", t1}, {"T2", t2}};
  return {std::move(p), std::move(spec)};
}

namespace {

std::vector<Cell> rectangle_cells(Coord m, Coord n) {
  std::vector<Cell> r;
  for (Coord x = 1; x < m; ++x)
    for (Coord y = 1; y < n; ++y) r.push_back({x, y});
  return r;
}

// Edge shared by F_p and R (the attachment edge V).
Edge attachment_edge(const std::vector<Cell>& p2, Coord m, Coord n) {
  auto shared = meet(edge_set({p2.back()}), edge_set(rectangle_cells(m, n)));
  return shared.front();
}

}  // namespace

FamilyInstance build_rectangle_linked(Coord m, Coord n, const std::vector<Cell>& p1, const std::vector<Cell>& s,
                                      const std::vector<Cell>& p2) {
  const std::string fam = "rectangle-linked";
  if (m < 4 || n < 2) throw ConditionViolated(fam, 0, "requires m >= 4 and n >= 2");
  if (!is_open_path_sequence(p1) || !is_open_path_sequence(p2))
    throw ConditionViolated(fam, 0, "P1 and P2 must be open paths");
  require_simple(fam, s, "S");
  const std::vector<Cell> r = rectangle_cells(m, n);
  Polyomino p = union_of(fam, {&r, &p1, &s, &p2});

  const auto vr = vertex_set(r), vs = vertex_set(s), v1 = vertex_set(p1), v2 = vertex_set(p2);
  if (!meet(vs, vr).empty()) throw ConditionViolated(fam, 2, "V(S) and V(R) intersect");
  if (!meet(v1, v2).empty()) throw ConditionViolated(fam, 2, "V(P1) and V(P2) intersect");

  if (p1.front() != Cell{1, n}) throw ConditionViolated(fam, 3, "lower left corner of C_1 must be " + fmt({1, n}));
  if (meet(v1, vr) != std::vector<Point>{{1, n}, {2, n}})
    throw ConditionViolated(fam, 3, "V(P1) ∩ V(R) must be {(1,n),(2,n)}");

  const OpenPath op1{p1}, op2{p2};
  const auto es = edge_set(s);
  {
    auto shared = meet(edge_set({p1.back()}), es);
    if (shared.size() != 1 || !contains_edge(op1.free_edges_last(), shared.front()))
      throw ConditionViolated(fam, 4, "C_t must share exactly one free edge with S");
    if (meet(v1, vs).size() != 2) throw ConditionViolated(fam, 4, "|V(P1) ∩ V(S)| must be 2");
  }
  {
    auto shared = meet(edge_set({p2.front()}), es);
    if (shared.size() != 1 || !contains_edge(op2.free_edges_first(), shared.front()))
      throw ConditionViolated(fam, 5, "F_1 must share exactly one free edge with S");
    if (meet(v2, vs).size() != 2) throw ConditionViolated(fam, 5, "|V(P2) ∩ V(S)| must be 2");
  }
  {
    auto shared = meet(edge_set({p2.back()}), edge_set(r));
    if (shared.size() != 1 || !contains_edge(op2.free_edges_last(), shared.front()))
      throw ConditionViolated(fam, 6, "F_p must share exactly one free edge with R");
    if (meet(v2, vr).size() != 2) throw ConditionViolated(fam, 6, "|V(P2) ∩ V(R)| must be 2");
  }

  FamilySpec spec;
  spec.kind = FamilySpec::Kind::RectangleLinked;
  spec.parts = {{"R", r}, {"P1", p1}, {"S", s}, {"P2", p2}};
  spec.m = m;
  spec.n = n;
  return {std::move(p), std::move(spec)};
}

FamilyInstance build_l_rectangle(Coord m, Coord n, const std::vector<Cell>& p1, const std::vector<Cell>& s,
                                 const std::vector<Cell>& p2) {
  const std::string fam = "L-rectangle";
  FamilyInstance inst = build_rectangle_linked(m, n, p1, s, p2);
  if (p1.size() < 2 || p1[1] != Cell{1, n + 1})
    throw ConditionViolated(fam, 7, "lower left corner of C_2 must be " + fmt({1, n + 1}));
  const Edge v = attachment_edge(p2, m, n);
  bool ok = false;
  for (Coord k = 3; k <= m - 1; ++k) ok |= v == make_edge({k, n}, {k + 1, n}) || v == make_edge({k, 1}, {k + 1, 1});
  for (Coord l = 1; l <= n - 1; ++l) ok |= v == make_edge({m, l}, {m, l + 1});
  if (!ok) throw ConditionViolated(fam, 8, "attachment edge of P2 is not on the allowed border");
  inst.spec.kind = FamilySpec::Kind::GoodLRectangle;
  return inst;
}

namespace {

// s and q of the two leading horizontal blocks of P1, or nothing.
std::optional<std::pair<std::size_t, std::size_t>> leading_blocks(const std::vector<Cell>& p1) {
  auto run_end = [&](std::size_t i) {
    std::size_t j = i;
    while (j + 1 < p1.size() && p1[j + 1].y == p1[i].y) ++j;
    return j;
  };
  if (p1.empty()) return std::nullopt;
  const std::size_t s = run_end(0) + 1;
  if (s < 2 || s >= p1.size()) return std::nullopt;
  if (p1[s] != Cell{p1[s - 1].x, p1[s - 1].y + 1}) return std::nullopt;
  const std::size_t q = run_end(s) + 1;
  if (q < s + 2) return std::nullopt;
  return std::make_pair(s, q);
}

bool is_maximal_horizontal_block(const Polyomino& p1, std::vector<Cell> cells) {
  std::sort(cells.begin(), cells.end(), [](Cell a, Cell b) { return a.x < b.x; });
  for (const Block& b : maximal_blocks(p1, Orientation::Horizontal))
    if (b.cells == cells) return true;
  return false;
}

}  // namespace

FamilyInstance build_ladder_rectangle(Coord m, Coord n, const std::vector<Cell>& p1, const std::vector<Cell>& s,
                                      const std::vector<Cell>& p2) {
  const std::string fam = "ladder-rectangle";
  FamilyInstance inst = build_rectangle_linked(m, n, p1, s, p2);
  auto sq = leading_blocks(p1);
  if (!sq) throw ConditionViolated(fam, 7, "P1 must start with two horizontal blocks in ladder position");
  auto [bs, bq] = *sq;
  Polyomino pp1(p1);
  if (!is_maximal_horizontal_block(pp1, {p1.begin(), p1.begin() + bs}) ||
      !is_maximal_horizontal_block(pp1, {p1.begin() + bs, p1.begin() + bq}))
    throw ConditionViolated(fam, 7, "leading blocks of P1 are not maximal");
  const Edge v = attachment_edge(p2, m, n);
  bool ok = false;
  for (Coord k = 3; k <= m - 1; ++k) ok |= v == make_edge({k, n}, {k + 1, n});
  if (!ok) throw ConditionViolated(fam, 8, "attachment edge of P2 must lie on the top side of R");
  inst.spec.kind = FamilySpec::Kind::LadderRectangle;
  return inst;
}

bool check_good_l_rectangle(const Polyomino& p, const FamilySpec& spec) {
  const Coord n = spec.n;
  auto interval_through = [&](Orientation o, Point v) -> std::optional<EdgeInterval> {
    for (const EdgeInterval& e : maximal_edge_intervals(p, o))
      if (e.contains(v)) return e;
    return std::nullopt;
  };
  auto v1 = interval_through(Orientation::Vertical, {1, n});
  auto v2 = interval_through(Orientation::Vertical, {2, n});
  if (!v1 || !v2) return false;
  const EdgeInterval& e = v2->length() < v1->length() ? *v2 : *v1;
  for (Coord y = e.lo; y < e.hi; ++y)
    if (!p.contains({1, y})) return false;
  for (Coord k = 1; k <= n - 1; ++k) {
    auto h1 = interval_through(Orientation::Horizontal, {1, k});
    auto h2 = interval_through(Orientation::Horizontal, {1, k + 1});
    if (!h1 || !h2) return false;
    const EdgeInterval& f = h2->length() < h1->length() ? *h2 : *h1;
    for (Coord x = f.lo; x < f.hi; ++x)
      if (!p.contains({x, k})) return false;
  }
  return true;
}

std::size_t first_block_length(const FamilySpec& spec) {
  auto it = spec.parts.find("P1");
  if (it == spec.parts.end()) return 0;
  auto sq = leading_blocks(it->second);
  return sq ? sq->first : 0;
}

std::vector<Point> family_marked_set(const Polyomino& p, const FamilySpec& spec, PrimalityVerdict::Proof* proof) {
  using Proof = PrimalityVerdict::Proof;
  auto set_proof = [&](Proof pr) {
    if (proof) *proof = pr;
  };
  set_proof(Proof::None);
  std::vector<Point> marked;
  switch (spec.kind) {
    case FamilySpec::Kind::PSC: {
      Polyomino c(spec.parts.at("C"));
      auto ls = find_l_configurations(c);
      if (!ls.empty()) {
        auto vs = ls.front().corner().vertices();
        marked.assign(vs.begin(), vs.end());
        set_proof(Proof::LConfigToric);
        break;
      }
      auto ladders = find_ladders(c, 3);
      if (!ladders.empty()) {
        marked = ladder_marked_set(p, ladders.front());
        set_proof(Proof::LadderToric);
      }
      break;
    }
    case FamilySpec::Kind::GoodLRectangle:
      for (Coord x = 1; x <= 2; ++x)
        for (Coord y = 1; y <= spec.n; ++y) marked.push_back({x, y});
      set_proof(Proof::MarkedToric);
      break;
    case FamilySpec::Kind::LadderRectangle: {
      for (Coord x = 1; x <= 2; ++x)
        for (Coord y = 1; y <= spec.n; ++y) marked.push_back({x, y});
      const auto& p1 = spec.parts.at("P1");
      const std::size_t s = first_block_length(spec);
      for (std::size_t i = 1; i < s; ++i) marked.push_back(p1[i].lower_left());
      set_proof(Proof::MarkedToric);
      break;
    }
    case FamilySpec::Kind::RectangleLinked:
      break;
  }
  std::sort(marked.begin(), marked.end());
  marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
  return marked;
}

PrimalityVerdict certify_family(const Polyomino& p, const FamilySpec& spec, const CertifyOptions& options) {
  PrimalityVerdict v;
  v.generators = inner_minors(p).size();
  if (spec.kind == FamilySpec::Kind::GoodLRectangle && !check_good_l_rectangle(p, spec)) {
    v.reason = "NotCovered: L-rectangle is not good";
    return v;
  }
  PrimalityVerdict::Proof proof;
  std::vector<Point> marked = family_marked_set(p, spec, &proof);
  if (marked.empty()) {
    v.reason = std::string("NotCovered: no covered feature for ") + to_string(spec.kind);
    return v;
  }
  v.proof = proof;
  certify_with_map(p, toric_map_marked(p, marked), options, v);
  return v;
}

nlohmann::json to_json(const FamilySpec& spec) {
  nlohmann::json j;
  j["kind"] = to_string(spec.kind);
  if (spec.kind != FamilySpec::Kind::PSC) {
    j["m"] = spec.m;
    j["n"] = spec.n;
  }
  nlohmann::json parts = nlohmann::json::object();
  for (const auto& [name, cells] : spec.parts) {
    if (name == "R") continue;  // implied by m, n
    nlohmann::json a = nlohmann::json::array();
    for (const Cell& c : cells) a.push_back({c.x, c.y});
    parts[name] = a;
  }
  j["parts"] = parts;
  return j;
}

FamilySpec family_spec_from_json(const nlohmann::json& j) {
  FamilySpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  bool found = false;
  for (auto k : {FamilySpec::Kind::PSC, FamilySpec::Kind::RectangleLinked, FamilySpec::Kind::GoodLRectangle,
                 FamilySpec::Kind::LadderRectangle})
    if (kind == to_string(k)) {
      spec.kind = k;
      found = true;
    }
  if (!found) throw std::invalid_argument("unknown family kind: " + kind);
  if (j.contains("m")) spec.m = j.at("m").get<Coord>();
  if (j.contains("n")) spec.n = j.at("n").get<Coord>();
  for (const auto& [name, arr] : j.at("parts").items()) {
    std::vector<Cell> cells;
    for (const auto& c : arr) cells.push_back({c.at(0).get<Coord>(), c.at(1).get<Coord>()});
    spec.parts[name] = std::move(cells);
  }
  return spec;
}

FamilyInstance build_family(const FamilySpec& spec) {
  auto part = [&](const char* name) -> const std::vector<Cell>& {
    auto it = spec.parts.find(name);
    if (it == spec.parts.end()) throw std::invalid_argument(std::string("family spec lacks part ") + name);
    return it->second;
  };
  switch (spec.kind) {
    case FamilySpec::Kind::PSC: return build_psc(part("S"), part("C"), part("T1"), part("T2"));
    case FamilySpec::Kind::RectangleLinked: return build_rectangle_linked(spec.m, spec.n, part("P1"), part("S"), part("P2"));
    case FamilySpec::Kind::GoodLRectangle: return build_l_rectangle(spec.m, spec.n, part("P1"), part("S"), part("P2"));
    case FamilySpec::Kind::LadderRectangle:
      return build_ladder_rectangle(spec.m, spec.n, part("P1"), part("S"), part("P2"));
  }
  throw std::invalid_argument("unknown family kind");
}

// ---- Harness -----------------------------------------------------------------

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

nlohmann::json examine_closed_path(const Polyomino& p, const HarnessOptions& options) {
  nlohmann::json rec;
  nlohmann::json violations = nlohmann::json::array();
  auto violate = [&](const std::string& what) { violations.push_back(what); };

  rec["cells"] = cells_json(p.cells());
  rec["rank"] = p.rank();
  auto cert = closed_path_certificate(p);
  if (!cert) violate("not a closed path");

  const auto ls = find_l_configurations(p);
  const auto ladders = find_ladders(p, 3);
  std::size_t max_block = 0;
  for (Orientation o : {Orientation::Horizontal, Orientation::Vertical})
    for (const Block& b : maximal_blocks(p, o)) max_block = std::max(max_block, b.length());
  const std::size_t hole_count = holes(p).size();
  const bool simple = is_simple(p);
  const auto walk = find_zigzag_walk(p);

  nlohmann::json features;
  features["l_configurations"] = ls.size();
  features["ladders"] = ladders.size();
  std::size_t max_steps = 0;
  for (const Ladder& l : ladders) max_steps = std::max(max_steps, l.steps());
  features["max_ladder_steps"] = max_steps;
  features["max_block"] = max_block;
  features["holes"] = hole_count;
  features["simple"] = simple;
  rec["features"] = features;
  rec["zigzag"] = walk ? to_json(*walk) : nlohmann::json(nullptr);

  const bool covered = !ls.empty() || !ladders.empty();
  if (walk.has_value() == covered) violate("zig-zag walk exists iff no L-configuration and no ladder fails");
  if (walk && !verify_zigzag(p, *walk)) violate("zig-zag witness does not verify");
  if (max_block < 3) violate("no block of length 3");
  if (hole_count != 1) violate("hole count is not 1");
  if (simple) violate("closed path reported simple");

  if (cert) {
    const auto& cyc = cert->cycle;
    const std::size_t n = cyc.size();
    for (std::size_t start = 0; start < n; ++start)
      for (std::size_t k = 2; k < n; ++k) {  // A_i..A_{i+r} with 1 <= r < n-1
        std::vector<Cell> rest;
        for (std::size_t i = k; i < n; ++i) rest.push_back(cyc[(start + i) % n]);
        std::sort(rest.begin(), rest.end());
        if (!is_connected(rest) || !is_simple(Polyomino(rest))) {
          violate("removing " + std::to_string(k) + " consecutive cells does not leave a simple polyomino");
          start = n;
          break;
        }
      }
  }

  if (options.certify_shapes && cert) {
    try {
      PrimalityVerdict v = certify_primality(p, options.certify);
      rec["verdict"] = to_json(v);
      if (v.kind == PrimalityVerdict::Kind::NonPrime && !walk) violate("non-prime verdict without zig-zag walk");
      if (v.kind == PrimalityVerdict::Kind::Prime) {
        if (walk) violate("prime verdict despite a zig-zag walk");
        if (!v.containment) violate("prime verdict without containment");
      }
      if (v.kind == PrimalityVerdict::Kind::Inconclusive && v.reason.find("differs") != std::string::npos)
        violate("toric ideal differs from the inner-minor ideal");
      if (v.kind == PrimalityVerdict::Kind::Inconclusive && !walk && !v.containment)
        violate("containment fails for the chosen feature");
    } catch (const KernelSoundnessError& e) {
      violate(std::string("toric invariant: ") + e.what());
    } catch (const InvalidFeatureError& e) {
      violate(std::string("feature rejected: ") + e.what());
    }
  }
  rec["violations"] = violations;
  return rec;
}

std::string cache_key(const Polyomino& canonical, const HarnessOptions& options) {
  std::ostringstream s;
  s << "polyprime-harness-v1|" << cells_json(canonical.cells()).dump() << '|' << options.certify_shapes << '|'
    << options.certify.attempt_equality << '|' << options.certify.budget.max_pairs << '|'
    << options.certify.budget.max_degree << '|' << options.certify.budget.max_seconds << '|'
    << options.certify.toric.seed_quadrics << '|' << options.certify.feature_choice;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(s.str())));
  return buf;
}

namespace {

std::filesystem::path cache_path(const std::string& dir, const std::string& key) {
  return std::filesystem::path(dir) / key.substr(0, 2) / (key + ".json");
}

std::optional<nlohmann::json> cache_load(const std::string& dir, const std::string& key, const nlohmann::json& cells) {
  std::ifstream in(cache_path(dir, key));
  if (!in) return std::nullopt;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("cells") == cells) return j;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

void cache_store(const std::string& dir, const std::string& key, const nlohmann::json& rec) {
  auto path = cache_path(dir, key);
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  auto tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << rec.dump() << '\n';
  }
  std::filesystem::rename(tmp, path, ec);
}

}  // namespace

HarnessReport verify_main_theorem(const HarnessOptions& options,
                                  const std::function<void(const nlohmann::json&)>& on_record) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const std::vector<Polyomino> shapes = enumerate_closed_paths(options.max_rank, options.jobs);
  const double enum_seconds = std::chrono::duration<double>(clock::now() - t0).count();

  HarnessReport report;
  report.records.resize(shapes.size());
  std::vector<char> hit(shapes.size(), 0);
  parallel_for(shapes.size(), options.jobs, [&](std::size_t i) {
    const std::string key = options.cache_dir.empty() ? std::string() : cache_key(shapes[i], options);
    if (!key.empty()) {
      if (auto cached = cache_load(options.cache_dir, key, cells_json(shapes[i].cells()))) {
        report.records[i] = std::move(*cached);
        hit[i] = 1;
        return;
      }
    }
    const auto s0 = clock::now();
    nlohmann::json rec = examine_closed_path(shapes[i], options);
    if (!key.empty()) cache_store(options.cache_dir, key, rec);
    if (options.timings) rec["seconds"] = std::chrono::duration<double>(clock::now() - s0).count();
    report.records[i] = std::move(rec);
  });

  std::map<std::size_t, nlohmann::json> per_rank;
  std::optional<std::size_t> min_zigzag;
  std::size_t primes = 0, nonprimes = 0, inconclusive = 0, full = 0, containment_only = 0;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const nlohmann::json& rec = report.records[i];
    report.cache_hits += hit[i];
    const std::size_t rank = rec.at("rank").get<std::size_t>();
    nlohmann::json& bucket = per_rank[rank];
    if (bucket.is_null()) bucket["rank"] = rank;
    for (const char* k : {"shapes", "zigzag", "l_configuration", "ladder_only", "prime", "nonprime", "inconclusive"})
      if (!bucket.contains(k)) bucket[k] = 0;
    bucket["shapes"] = bucket["shapes"].get<std::size_t>() + 1;
    const bool zz = !rec.at("zigzag").is_null();
    auto bump = [&](const char* k) { bucket[k] = bucket[k].get<std::size_t>() + 1; };
    if (zz) {
      bump("zigzag");
      if (!min_zigzag || rank < *min_zigzag) min_zigzag = rank;
    }
    const auto& f = rec.at("features");
    if (f.at("l_configurations").get<std::size_t>() > 0)
      bump("l_configuration");
    else if (f.at("ladders").get<std::size_t>() > 0)
      bump("ladder_only");
    if (rec.contains("verdict")) {
      const auto& v = rec.at("verdict");
      const std::string kind = v.at("kind");
      if (kind == "Prime") {
        ++primes;
        bump("prime");
      } else if (kind == "NonPrime") {
        ++nonprimes;
        bump("nonprime");
      } else {
        ++inconclusive;
        bump("inconclusive");
      }
      const std::string c = v.at("certificate");
      if (c == "FullEquality") ++full;
      if (c == "ContainmentOnly") {
        ++containment_only;
        ++report.budget_exhausted;
      }
    }
    if (!rec.at("violations").empty()) ++report.counterexamples;
    if (on_record) on_record(rec);
  }

  nlohmann::json& sum = report.summary;
  sum["type"] = "summary";
  sum["max_rank"] = options.max_rank;
  sum["shapes"] = shapes.size();
  sum["per_rank"] = nlohmann::json::array();
  for (auto& [rank, bucket] : per_rank) sum["per_rank"].push_back(bucket);
  sum["minimal_zigzag_rank"] = min_zigzag ? nlohmann::json(*min_zigzag) : nlohmann::json(nullptr);
  sum["prime"] = primes;
  sum["nonprime"] = nonprimes;
  sum["inconclusive"] = inconclusive;
  sum["full_equality"] = full;
  sum["containment_only"] = containment_only;
  sum["budget_exhausted"] = report.budget_exhausted;
  sum["counterexamples"] = report.counterexamples;
  if (options.timings) {
    sum["enumeration_seconds"] = enum_seconds;
    sum["total_seconds"] = std::chrono::duration<double>(clock::now() - t0).count();
    sum["cache_hits"] = report.cache_hits;
  }
  return report;
}

}  // namespace polyprime
