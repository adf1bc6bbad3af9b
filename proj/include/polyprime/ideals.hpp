#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyprime/algebra.hpp"
#include "polyprime/classify.hpp"
#include "polyprime/grid.hpp"

namespace polyprime {

/// Polynomial ring K[x_r : r in V(P)], variables sorted by vertex.
Ring vertex_ring(const Polyomino& p);

/// x_a x_b - x_c x_d for every inner interval [a,b], in inner-interval order.
std::vector<Binomial> inner_minors(const Polyomino& p, const Ring& ring);
std::vector<Binomial> inner_minors(const Polyomino& p);

/// Monomial map x_r -> v_i h_j w^k. Source is the vertex ring of P; target
/// holds one variable per maximal vertical / horizontal edge interval, plus w
/// when `marked` is nonempty.
struct ToricMap {
  Ring source;
  Ring target;
  std::vector<Monomial> images;  // indexed like `source`
  std::vector<Point> marked;     // sorted

  const Monomial& image(Point r) const;
  bool is_marked(Point r) const;
};

class InvalidFeatureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws InvalidFeatureError when marked is not inside V(P).
ToricMap toric_map_marked(const Polyomino& p, const std::vector<Point>& marked);
/// Marks V(A) for the corner cell A of the L-configuration.
ToricMap toric_map_lconfig(const Polyomino& p, const LConfiguration& l);

/// Canonical pose of a ladder: a lattice symmetry putting its blocks in
/// horizontal position going down, with B_m starting below the last cell of
/// B_{m-1}. `reversed` tells whether B_1..B_m runs opposite to the input chain.
struct LadderPose {
  Symmetry symmetry;
  bool reversed = false;
};
/// Poses with either end of the chain as B_m (at most one each).
std::vector<LadderPose> ladder_poses(const Ladder& l);
std::optional<LadderPose> ladder_pose(const Ladder& l);

/// L_B = {a_1..a_n, d, a, b}, computed in the given pose and mapped back.
std::vector<Point> ladder_marked_set(const Ladder& l, const LadderPose& pose);
/// L_B for the first pose whose map contains I_P (the first pose when none does).
std::vector<Point> ladder_marked_set(const Polyomino& p, const Ladder& l);
/// Throws InvalidFeatureError for short, invalid or non-maximal ladders.
ToricMap toric_map_ladder(const Polyomino& p, const Ladder& l);

/// Image of f under the map, as a binomial over the target ring.
Binomial evaluate(const ToricMap& phi, const Binomial& f);
bool in_kernel(const ToricMap& phi, const Binomial& f);

/// Every inner 2-minor of P is killed by phi.
bool check_containment(const Polyomino& p, const ToricMap& phi);

/// Plain exchange text: a "ring" line listing variables, then one binomial per line.
std::string export_generators(const Ring& ring, const std::vector<Binomial>& gens);

}  // namespace polyprime
