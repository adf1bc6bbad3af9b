#pragma once

#include <optional>
#include <vector>

#include "polyprime/grid.hpp"

namespace polyprime {

/// Cyclic sequence of distinct inner intervals I_1..I_l with labelled
/// corners. For each i, {v_i, z_i} is one diagonal pair of I_i and
/// {u_i, v_{i+1}} the other; v_{l+1} = v_1 is not stored twice.
struct ZigZagWalk {
  std::vector<LatticeInterval> intervals;
  std::vector<Point> v;  // size l
  std::vector<Point> z;
  std::vector<Point> u;
  std::size_t length() const { return intervals.size(); }
};

bool verify_zigzag(const Polyomino& p, const ZigZagWalk& w);

/// Exhaustive backtracking search. Returns some witness, or nothing when the
/// polyomino admits no zig-zag walk.
std::optional<ZigZagWalk> find_zigzag_walk(const Polyomino& p);

/// Index answering "is there an inner interval containing both points".
class CoContainmentIndex {
 public:
  explicit CoContainmentIndex(const std::vector<LatticeInterval>& inner);
  bool co_contained(Point p, Point q) const;

 private:
  std::vector<LatticeInterval> inner_;
  std::vector<Point> points_;                       // sorted
  std::vector<std::vector<std::uint64_t>> masks_;   // per point, bitset over inner_
  const std::vector<std::uint64_t>* mask(Point p) const;
};

/// Direct scan over the inner intervals of p.
bool co_contained_naive(const std::vector<LatticeInterval>& inner, Point p, Point q);

}  // namespace polyprime
