#include "polyprime/zigzag.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace polyprime {

namespace {

// The corner of `i` paired with `p` on the same diagonal.
Point partner(const LatticeInterval& i, Point p) {
  return {p.x == i.a.x ? i.b.x : i.a.x, p.y == i.a.y ? i.b.y : i.a.y};
}

// The two corners of `i` on the other diagonal from `p`.
std::array<Point, 2> other_pair(const LatticeInterval& i, Point p) {
  return {Point{p.x, p.y == i.a.y ? i.b.y : i.a.y}, Point{p.x == i.a.x ? i.b.x : i.a.x, p.y}};
}

bool single_point(const LatticeInterval& i, const LatticeInterval& j, Point p) {
  auto m = intersect(i, j);
  return m && m->a == m->b && m->a == p;
}

class EdgeIntervalLookup {
 public:
  explicit EdgeIntervalLookup(const Polyomino& p)
      : horizontal_(maximal_edge_intervals(p, Orientation::Horizontal)),
        vertical_(maximal_edge_intervals(p, Orientation::Vertical)) {}

  bool same_interval(Point p, Point q) const {
    if (p == q) return false;
    if (p.y == q.y) return any_contains(horizontal_, p, q);
    if (p.x == q.x) return any_contains(vertical_, p, q);
    return false;
  }

 private:
  static bool any_contains(const std::vector<EdgeInterval>& ivs, Point p, Point q) {
    for (const EdgeInterval& iv : ivs)
      if (iv.contains(p) && iv.contains(q)) return true;
    return false;
  }
  std::vector<EdgeInterval> horizontal_;
  std::vector<EdgeInterval> vertical_;
};

}  // namespace

bool co_contained_naive(const std::vector<LatticeInterval>& inner, Point p, Point q) {
  for (const LatticeInterval& i : inner)
    if (i.contains(p) && i.contains(q)) return true;
  return false;
}

CoContainmentIndex::CoContainmentIndex(const std::vector<LatticeInterval>& inner) : inner_(inner) {
  std::set<Point> pts;
  for (const LatticeInterval& i : inner_)
    for (Coord x = i.a.x; x <= i.b.x; ++x)
      for (Coord y = i.a.y; y <= i.b.y; ++y) pts.insert({x, y});
  points_.assign(pts.begin(), pts.end());
  const std::size_t words = (inner_.size() + 63) / 64;
  masks_.assign(points_.size(), std::vector<std::uint64_t>(words, 0));
  for (std::size_t k = 0; k < inner_.size(); ++k) {
    const LatticeInterval& i = inner_[k];
    for (Coord x = i.a.x; x <= i.b.x; ++x)
      for (Coord y = i.a.y; y <= i.b.y; ++y) {
        auto it = std::lower_bound(points_.begin(), points_.end(), Point{x, y});
        masks_[it - points_.begin()][k / 64] |= std::uint64_t{1} << (k % 64);
      }
  }
}

const std::vector<std::uint64_t>* CoContainmentIndex::mask(Point p) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it == points_.end() || *it != p) return nullptr;
  return &masks_[it - points_.begin()];
}

bool CoContainmentIndex::co_contained(Point p, Point q) const {
  const auto* mp = mask(p);
  const auto* mq = mask(q);
  if (!mp || !mq) return false;
  for (std::size_t w = 0; w < mp->size(); ++w)
    if ((*mp)[w] & (*mq)[w]) return true;
  return false;
}

bool verify_zigzag(const Polyomino& p, const ZigZagWalk& w) {
  const std::size_t l = w.intervals.size();
  if (l < 2 || w.v.size() != l || w.z.size() != l || w.u.size() != l) return false;
  std::set<LatticeInterval> distinct(w.intervals.begin(), w.intervals.end());
  if (distinct.size() != l) return false;
  for (const LatticeInterval& i : w.intervals)
    if (!is_inner(p, i)) return false;

  EdgeIntervalLookup lookup(p);
  for (std::size_t i = 0; i < l; ++i) {
    const LatticeInterval& iv = w.intervals[i];
    const Point vi = w.v[i], zi = w.z[i], ui = w.u[i], vn = w.v[(i + 1) % l];
    if (!iv.is_corner(vi) || partner(iv, vi) != zi) return false;
    auto other = other_pair(iv, vi);
    bool labelled = (other[0] == ui && other[1] == vn) || (other[0] == vn && other[1] == ui);
    if (!labelled) return false;
    if (!single_point(iv, w.intervals[(i + 1) % l], vn)) return false;
    if (!lookup.same_interval(vi, vn)) return false;
  }
  auto inner = inner_intervals(p);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j)
      if (co_contained_naive(inner, w.z[i], w.z[j])) return false;
  return true;
}

namespace {

class ZigZagSearch {
 public:
  explicit ZigZagSearch(const Polyomino& p)
      : inner_(inner_intervals(p)), index_(inner_), lookup_(p), used_(inner_.size(), false) {
    for (std::size_t k = 0; k < inner_.size(); ++k)
      for (Point c : inner_[k].corners()) by_corner_[c].push_back(k);
  }

  std::optional<ZigZagWalk> run() {
    for (anchor_ = 0; anchor_ < inner_.size(); ++anchor_) {
      const LatticeInterval& first = inner_[anchor_];
      used_[anchor_] = true;
      for (Point v1 : first.corners()) {
        v1_ = v1;
        Point z1 = partner(first, v1);
        for (Point next : other_pair(first, v1)) {
          if (!lookup_.same_interval(v1, next)) continue;
          Point u1 = other_pair(first, v1)[0] == next ? other_pair(first, v1)[1] : other_pair(first, v1)[0];
          steps_.push_back({anchor_, v1, z1, u1, next});
          if (extend()) return witness();
          steps_.pop_back();
        }
      }
      used_[anchor_] = false;
    }
    return std::nullopt;
  }

 private:
  struct Step {
    std::size_t interval;
    Point v, z, u, next;
  };

  bool extend() {
    const std::size_t last = steps_.back().interval;  // steps_ grows below; keep copies
    const Point v = steps_.back().next;
    auto it = by_corner_.find(v);
    if (it == by_corner_.end()) return false;
    for (std::size_t k : it->second) {
      if (k <= anchor_ || used_[k]) continue;
      const LatticeInterval& iv = inner_[k];
      if (!single_point(inner_[last], iv, v)) continue;
      Point z = partner(iv, v);
      bool clash = false;
      for (const Step& s : steps_) clash = clash || index_.co_contained(s.z, z);
      if (clash) continue;
      auto other = other_pair(iv, v);
      for (int t = 0; t < 2; ++t) {
        Point next = other[t], u = other[1 - t];
        if (!lookup_.same_interval(v, next)) continue;
        steps_.push_back({k, v, z, u, next});
        used_[k] = true;
        if (next == v1_ && single_point(iv, inner_[anchor_], v1_)) return true;
        if (extend()) return true;
        used_[k] = false;
        steps_.pop_back();
      }
    }
    return false;
  }

  ZigZagWalk witness() const {
    ZigZagWalk w;
    for (const Step& s : steps_) {
      w.intervals.push_back(inner_[s.interval]);
      w.v.push_back(s.v);
      w.z.push_back(s.z);
      w.u.push_back(s.u);
    }
    return w;
  }

  std::vector<LatticeInterval> inner_;
  CoContainmentIndex index_;
  EdgeIntervalLookup lookup_;
  std::map<Point, std::vector<std::size_t>> by_corner_;
  std::vector<bool> used_;
  std::vector<Step> steps_;
  std::size_t anchor_ = 0;
  Point v1_{};
};

}  // namespace

std::optional<ZigZagWalk> find_zigzag_walk(const Polyomino& p) {
  ZigZagSearch search(p);
  return search.run();
}

}  // namespace polyprime
