#include "polyprime/ideals.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace polyprime {

Ring vertex_ring(const Polyomino& p) {
  std::vector<VariableId> vars;
  for (Point v : vertices(p)) vars.push_back(VariableId::vertex(v));
  return Ring(std::move(vars));
}

std::vector<Binomial> inner_minors(const Polyomino& p, const Ring& ring) {
  std::vector<Binomial> out;
  for (const LatticeInterval& iv : inner_intervals(p)) {
    Binomial f{Monomial(ring.size()), Monomial(ring.size())};
    auto [c, d] = iv.anti_diagonal();
    f.plus.exps[ring.index_of(VariableId::vertex(iv.a))] += 1;
    f.plus.exps[ring.index_of(VariableId::vertex(iv.b))] += 1;
    f.minus.exps[ring.index_of(VariableId::vertex(c))] += 1;
    f.minus.exps[ring.index_of(VariableId::vertex(d))] += 1;
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Binomial> inner_minors(const Polyomino& p) { return inner_minors(p, vertex_ring(p)); }

const Monomial& ToricMap::image(Point r) const { return images[source.index_of(VariableId::vertex(r))]; }

bool ToricMap::is_marked(Point r) const { return std::binary_search(marked.begin(), marked.end(), r); }

namespace {

int interval_index(const std::vector<EdgeInterval>& ivs, Point r) {
  for (std::size_t i = 0; i < ivs.size(); ++i)
    if (ivs[i].contains(r)) return static_cast<int>(i);
  return -1;
}

}  // namespace

ToricMap toric_map_marked(const Polyomino& p, const std::vector<Point>& marked) {
  ToricMap phi;
  phi.source = vertex_ring(p);
  phi.marked = marked;
  std::sort(phi.marked.begin(), phi.marked.end());
  phi.marked.erase(std::unique(phi.marked.begin(), phi.marked.end()), phi.marked.end());
  for (Point m : phi.marked)
    if (!has_vertex(p, m)) throw InvalidFeatureError("marked point is not a vertex of the polyomino");

  auto vertical = maximal_edge_intervals(p, Orientation::Vertical);
  auto horizontal = maximal_edge_intervals(p, Orientation::Horizontal);
  std::vector<VariableId> tvars;
  for (std::size_t i = 0; i < vertical.size(); ++i) tvars.push_back(VariableId::v_edge(static_cast<int>(i)));
  for (std::size_t j = 0; j < horizontal.size(); ++j) tvars.push_back(VariableId::h_edge(static_cast<int>(j)));
  const bool with_w = !phi.marked.empty();
  if (with_w) tvars.push_back(VariableId::w());
  phi.target = Ring(std::move(tvars));

  for (std::size_t k = 0; k < phi.source.size(); ++k) {
    Point r = phi.source.var(k).point;
    Monomial m(phi.target.size());
    // Every vertex of a polyomino lies on exactly one edge interval of each direction.
    int i = interval_index(vertical, r), j = interval_index(horizontal, r);
    m.exps[i] = 1;
    m.exps[vertical.size() + j] = 1;
    if (with_w && phi.is_marked(r)) m.exps.back() = 1;
    phi.images.push_back(std::move(m));
  }
  return phi;
}

ToricMap toric_map_lconfig(const Polyomino& p, const LConfiguration& l) {
  if (!is_l_configuration(p, l)) throw InvalidFeatureError("not an L-configuration of the polyomino");
  auto v = l.corner().vertices();
  return toric_map_marked(p, {v.begin(), v.end()});
}

namespace {

struct PosedBlock {
  Coord row;
  Coord min_x, max_x;
};

PosedBlock pose_block(const Block& b, const Symmetry& s) {
  PosedBlock out{0, 0, 0};
  bool first = true;
  for (const Cell& c : b.cells) {
    Cell t = s.apply(c);
    if (first) {
      out = {t.y, t.x, t.x};
      first = false;
    }
    if (t.y != out.row) return {0, 1, 0};  // not horizontal after the transform
    out.min_x = std::min(out.min_x, t.x);
    out.max_x = std::max(out.max_x, t.x);
  }
  return out;
}

}  // namespace

std::vector<LadderPose> ladder_poses(const Ladder& l) {
  std::vector<LadderPose> out;
  if (l.blocks.size() < 2) return out;
  for (bool reversed : {false, true}) {
    const Block& last = reversed ? l.blocks.front() : l.blocks.back();
    const Block& before = reversed ? l.blocks[1] : l.blocks[l.blocks.size() - 2];
    for (const Symmetry& s : Symmetry::all()) {
      PosedBlock m = pose_block(last, s), m1 = pose_block(before, s);
      if (m.min_x > m.max_x || m1.min_x > m1.max_x) continue;
      if (m.row == m1.row - 1 && m.min_x == m1.max_x) {
        out.push_back({s, reversed});
        break;  // at most one symmetry per end
      }
    }
  }
  return out;
}

std::optional<LadderPose> ladder_pose(const Ladder& l) {
  auto poses = ladder_poses(l);
  if (poses.empty()) return std::nullopt;
  return poses.front();
}

std::vector<Point> ladder_marked_set(const Ladder& l, const LadderPose& pose) {
  const Symmetry& s = pose.symmetry;
  const Block& last = pose.reversed ? l.blocks.front() : l.blocks.back();
  const Block& before = pose.reversed ? l.blocks[1] : l.blocks[l.blocks.size() - 2];

  std::vector<Point> posed;
  for (const Cell& c : before.cells) posed.push_back(s.apply(c).lower_left());  // a_1..a_n
  Cell a_cell{};
  bool first = true;
  for (const Cell& c : last.cells) {
    Cell t = s.apply(c);
    if (first || t.x < a_cell.x) a_cell = t;
    first = false;
  }
  for (Point v : a_cell.vertices()) posed.push_back(v);  // a, b, d and a_n again

  const Symmetry inv = s.inverse();
  std::set<Point> out;
  for (Point q : posed) out.insert(inv.apply(q));
  return {out.begin(), out.end()};
}

std::vector<Point> ladder_marked_set(const Polyomino& p, const Ladder& l) {
  auto poses = ladder_poses(l);
  if (poses.empty()) throw InvalidFeatureError("ladder has no canonical pose");
  // Either end of the chain may play B_m; use the first pose whose marking
  // kills every inner minor.
  for (const LadderPose& pose : poses) {
    auto marked = ladder_marked_set(l, pose);
    if (check_containment(p, toric_map_marked(p, marked))) return marked;
  }
  return ladder_marked_set(l, poses.front());
}

ToricMap toric_map_ladder(const Polyomino& p, const Ladder& l) {
  if (l.steps() < 3) throw InvalidFeatureError("ladder needs at least three steps");
  if (!is_maximal_ladder(p, l)) throw InvalidFeatureError("ladder is not a maximal ladder of the polyomino");
  return toric_map_marked(p, ladder_marked_set(p, l));
}

namespace {
Monomial image_of(const ToricMap& phi, const Monomial& m) {
  Monomial out(phi.target.size());
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m.exps[k] == 0) continue;
    for (std::size_t t = 0; t < out.size(); ++t) {
      std::uint64_t add = std::uint64_t{phi.images[k].exps[t]} * m.exps[k];
      std::uint64_t sum = out.exps[t] + add;
      if (sum > std::numeric_limits<Exponent>::max()) throw OverflowError("exponent overflow in evaluation");
      out.exps[t] = static_cast<Exponent>(sum);
    }
  }
  return out;
}
}  // namespace

Binomial evaluate(const ToricMap& phi, const Binomial& f) {
  if (f.plus.size() != phi.source.size()) throw std::invalid_argument("binomial is not over the map's source ring");
  return {image_of(phi, f.plus), image_of(phi, f.minus)};
}

bool in_kernel(const ToricMap& phi, const Binomial& f) { return evaluate(phi, f).is_zero(); }

bool check_containment(const Polyomino& p, const ToricMap& phi) {
  for (const Binomial& g : inner_minors(p, phi.source))
    if (!in_kernel(phi, g)) return false;
  return true;
}

std::string export_generators(const Ring& ring, const std::vector<Binomial>& gens) {
  std::ostringstream out;
  out << "ring";
  for (std::size_t i = 0; i < ring.size(); ++i) out << ' ' << ring.name(i);
  out << '\n';
  for (const Binomial& f : gens) out << format(ring, f) << '\n';
  return out.str();
}

}  // namespace polyprime
