#pragma once

#include <optional>
#include <span>
#include <vector>

#include "polyprime/grid.hpp"

namespace polyprime {

/// Cyclic cell sequence A_1..A_n of a closed path (A_{n+1} = A_1 implied).
struct ClosedPathCert {
  std::vector<Cell> cycle;
};

/// Checks the four closed-path conditions on an explicit cycle: n > 5,
/// consecutive cells share an edge, cells distinct, and cells further than
/// two steps apart (cyclically) share no vertex.
bool is_closed_path_cycle(std::span<const Cell> cycle);

/// The cycle starts at the least cell and continues to its lesser neighbour.
std::optional<ClosedPathCert> closed_path_certificate(const Polyomino& p);

/// Five cells A_1..A_5 with A_1,A_2,A_3 and A_3,A_4,A_5 collinear runs in
/// orthogonal directions. A_1..A_3 is the horizontal arm.
struct LConfiguration {
  std::array<Cell, 5> cells;
  Cell corner() const { return cells[2]; }
  bool operator==(const LConfiguration&) const = default;
};

std::vector<LConfiguration> find_l_configurations(const Polyomino& p);
bool is_l_configuration(const Polyomino& p, const LConfiguration& l);

/// Chain of maximal parallel blocks (length >= 2) where consecutive blocks
/// meet in exactly one unit edge {a_i, b_i}, and consecutive contact edges
/// lie on different maximal edge intervals.
struct Ladder {
  Orientation orientation = Orientation::Horizontal;
  std::vector<Block> blocks;
  std::vector<Edge> contacts;  // contacts[i] = V(B_i) ∩ V(B_{i+1})
  std::size_t steps() const { return blocks.size(); }
  bool operator==(const Ladder&) const = default;
};

/// Every ladder that cannot be extended at either end, with at least
/// `min_steps` blocks. Each chain is reported once, oriented so that its
/// first block is lexicographically smaller than its last.
std::vector<Ladder> find_ladders(const Polyomino& p, std::size_t min_steps);

/// Validates the ladder conditions against p (blocks maximal, contacts,
/// edge-interval separation). Does not require maximality of the chain.
bool is_ladder(const Polyomino& p, const Ladder& l);
/// True when no block can be added at either end of the chain.
bool is_maximal_ladder(const Polyomino& p, const Ladder& l);

bool has_block_of_length(const Polyomino& p, std::size_t k);

struct OpenPath {
  std::vector<Cell> cells;
  /// Edges of the first (last) cell not shared with its successor (predecessor).
  std::vector<Edge> free_edges_first() const;
  std::vector<Edge> free_edges_last() const;
};

bool is_open_path_sequence(std::span<const Cell> cells);
/// Ordered from the lesser endpoint.
std::optional<OpenPath> open_path_certificate(const Polyomino& p);

/// Three non-collinear cells. The hooking vertex of each end cell is its
/// corner diagonally opposite the vertex common to all three cells; the
/// hooking edges are the two edges of the end cell through that corner.
struct Trimino {
  std::array<Cell, 3> cells;  // end, middle, end; ends ordered lexicographically
  std::array<Point, 2> hooking_vertices;
  std::array<std::array<Edge, 2>, 2> hooking_edges;
};

std::optional<Trimino> trimino_certificate(const Polyomino& p);

}  // namespace polyprime
